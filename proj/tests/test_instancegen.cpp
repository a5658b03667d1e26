// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdint>

#include "corais/instance_io.hpp"
#include "corais/instancegen.hpp"
#include "corais/objective.hpp"
#include "support/generators.hpp"

using namespace corais;

TEST_CASE("generate is deterministic in the seed") {
  auto cfg = testgen::config(10, 5, 50, 1234);
  const std::string a = save_instance(generate(cfg));
  const std::string b = save_instance(generate(cfg));
  CHECK(a == b);
  cfg.seed = 1235;
  CHECK(save_instance(generate(cfg)) != a);
}

TEST_CASE("generate produces the configured shape") {
  auto inst = testgen::instance(10, 5, 50, 99);
  CHECK(inst.num_edges() == 10);
  CHECK(inst.region_size == 5);
  CHECK(inst.snapshots.size() == 5);
  CHECK(inst.num_requests() == 50);
  for (const auto& r : inst.requests) {
    CHECK(r.source_edge < 5);
    CHECK(r.predicted_edge < 10);
    CHECK(r.input_size > 0.0);
    CHECK(r.input_size < 1.0);
    CHECK(r.output_size > 0.0);
    CHECK(r.output_size < 0.1);
  }
  REQUIRE(inst.backlogs.has_value());
  for (const auto& eb : *inst.backlogs) {
    CHECK(eb.local.size() < 100);
    CHECK(eb.transfer_in.size() < 100);
  }
}

TEST_CASE("request input sizes average to one half") {
  // Law of large numbers over uniform(0,1) request input sizes.
  double sum = 0.0;
  std::int64_t count = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    auto cfg = testgen::config(4, 2, 5, seed, /*backlog_max=*/1);
    auto inst = generate(cfg);
    for (const auto& r : inst.requests) {
      sum += r.input_size;
      ++count;
    }
  }
  CHECK(sum / static_cast<double>(count) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("generate rejects invalid configs") {
  auto cfg = testgen::config(4, 5, 3, 0);
  CHECK_THROWS_AS(generate(cfg), Error);
  cfg = testgen::config(4, 2, 3, 0);
  cfg.replica_choices.clear();
  CHECK_THROWS_AS(generate(cfg), Error);
  cfg = testgen::config(4, 2, 3, 0);
  cfg.input_size_max = cfg.input_size_min;
  CHECK_THROWS_AS(generate(cfg), Error);
}

TEST_CASE("apply_decision with no requests only keeps the state") {
  auto inst = testgen::instance(5, 3, 0, 314);
  auto next = apply_decision(inst, Assignment{});
  CHECK(save_instance(next) == save_instance(inst));
  auto again = apply_decision(next, Assignment{});
  CHECK(save_instance(again) == save_instance(next));
}

TEST_CASE("apply_decision folds a single local request into c_le") {
  Instance inst;
  inst.region_size = 1;
  inst.transmission_constant = 3.0;
  inst.edges.push_back({0, {0.0, 0.0}, {0.0, 1.0}, 1});
  inst.snapshots.assign(1, WorkloadSnapshot{});
  inst.requests.push_back({0, 0, 0, 1.0, 0.0});
  auto next = apply_decision(inst, Assignment{{0}});
  CHECK(next.snapshots[0].c_le == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(next.num_requests() == 0);
}

TEST_CASE("apply_decision conserves requests across queues") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = testgen::instance(6, 3, 20, seed);
    auto asg = testgen::random_assignment(inst, seed + 1);
    std::size_t before = 0;
    for (const auto& eb : *inst.backlogs) {
      before += eb.local.size() + eb.transfer_in.size();
    }
    auto next = apply_decision(inst, asg);
    std::size_t after = 0;
    for (const auto& eb : *next.backlogs) {
      after += eb.local.size() + eb.transfer_in.size();
    }
    CHECK(after - before == static_cast<std::size_t>(inst.num_requests()));
    CHECK(next.num_requests() == 0);
    CHECK(!validate_instance(next).has_value());
  }
}

TEST_CASE("apply_decision matches direct evaluation on random instances") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = testgen::instance(5, 2, 6, seed);
    auto asg = testgen::random_assignment(inst, seed * 3 + 1);
    CHECK(evaluate(inst, asg).makespan ==
          evaluate(apply_decision(inst, asg), Assignment{}).makespan);
  }
}

TEST_CASE("instance documents round-trip bit-exactly") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = testgen::instance(7, 4, 12, seed);
    const std::string text = save_instance(inst);
    auto loaded = load_instance(text);
    CHECK(save_instance(loaded) == text);
    CHECK(loaded.num_edges() == inst.num_edges());
    CHECK(loaded.region_size == inst.region_size);
    REQUIRE(loaded.backlogs.has_value());
    for (int q = 0; q < inst.region_size; ++q) {
      CHECK((*loaded.backlogs)[q].local.size() ==
            (*inst.backlogs)[q].local.size());
    }
    for (int z = 0; z < inst.num_requests(); ++z) {
      CHECK(loaded.requests[z].input_size == inst.requests[z].input_size);
      CHECK(loaded.requests[z].output_size == inst.requests[z].output_size);
    }
  }
}

TEST_CASE("malformed documents raise parse errors") {
  auto inst = testgen::instance(4, 2, 3, 5);
  const std::string text = save_instance(inst);
  CHECK_THROWS_WITH_AS(load_instance(text.substr(0, text.size() / 2)),
                       doctest::Contains("parse error"), Error);
  CHECK_THROWS_WITH_AS(load_instance("{}"),
                       doctest::Contains("instance document"), Error);
}

TEST_CASE("unknown versions are rejected") {
  auto inst = testgen::instance(4, 2, 3, 5);
  std::string text = save_instance(inst);
  const std::string needle = "\"version\": 1";
  const auto pos = text.find(needle);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, needle.size(), "\"version\": 2");
  CHECK_THROWS_WITH_AS(load_instance(text),
                       doctest::Contains("unsupported instance format"), Error);
}
