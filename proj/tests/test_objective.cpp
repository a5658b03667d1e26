// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "corais/instancegen.hpp"
#include "corais/objective.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace corais;

namespace {

Instance single_edge_identity() {
  Instance inst;
  inst.region_size = 1;
  inst.transmission_constant = 3.0;
  inst.edges.push_back({0, {0.0, 0.0}, {0.0, 1.0}, 1});
  inst.snapshots.assign(1, WorkloadSnapshot{});
  inst.requests.push_back({0, 0, 0, 1.0, 0.0});
  return inst;
}

Instance two_edge_transfer() {
  // src edge 0 at distance 1 from edge 1; predicted edge 2 at distance 0.5
  // from edge 1.
  Instance inst;
  inst.region_size = 2;
  inst.transmission_constant = 3.0;
  inst.edges.push_back({0, {0.0, 0.0}, {0.0, 1.0}, 1});
  inst.edges.push_back({1, {1.0, 0.0}, {0.0, 1.0}, 1});
  inst.edges.push_back({2, {1.5, 0.0}, {0.0, 1.0}, 1});
  inst.snapshots.assign(2, WorkloadSnapshot{});
  inst.requests.push_back({0, 0, 2, 1.0, 0.1});
  return inst;
}

}  // namespace

TEST_CASE("evaluate: single-edge identity case") {
  auto inst = single_edge_identity();
  auto bd = evaluate(inst, Assignment{{0}});
  CHECK(bd.edges[0].mu == doctest::Approx(1.0));
  CHECK(bd.edges[0].kappa1 == 0.0);
  CHECK(bd.makespan == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("evaluate: transferred request with result shipping") {
  auto inst = two_edge_transfer();
  auto bd = evaluate(inst, Assignment{{1}});
  CHECK(bd.edges[1].kappa1 == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(bd.edges[1].mu == 0.0);
  CHECK(bd.edges[1].eta == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bd.edges[1].kappa2 == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(bd.edges[1].t == doctest::Approx(4.15).epsilon(1e-12));
  CHECK(bd.edges[0].t == 0.0);
  CHECK(bd.makespan == doctest::Approx(4.15).epsilon(1e-12));
}

TEST_CASE("evaluate: empty request list reduces to snapshot terms") {
  Instance inst;
  inst.region_size = 1;
  inst.transmission_constant = 3.0;
  inst.edges.push_back({0, {0.0, 0.0}, {0.0, 1.0}, 1});
  inst.snapshots.push_back({2.0, 1.0, 5.0, 0.2, 0.3});
  auto bd = evaluate(inst, Assignment{});
  CHECK(bd.makespan == doctest::Approx(6.3).epsilon(1e-12));
}

TEST_CASE("evaluate rejects invalid assignments") {
  auto inst = single_edge_identity();
  CHECK_THROWS_AS(evaluate(inst, Assignment{{0, 0}}), Error);
  CHECK_THROWS_AS(evaluate(inst, Assignment{{1}}), Error);
}

TEST_CASE("breakdown invariants hold on random instances") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = testgen::instance(6, 3, 8, seed);
    auto asg = testgen::random_assignment(inst, seed + 100);
    auto bd = evaluate(inst, asg);
    double worst = 0.0;
    for (const auto& e : bd.edges) {
      CHECK(e.t >= e.mu);
      CHECK(e.t >= e.kappa1);
      worst = std::max(worst, e.t);
    }
    CHECK(bd.makespan == worst);
  }
}

TEST_CASE("evaluate agrees with the straight-line transcription") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto inst = testgen::instance(5, 3, 6, seed);
    auto asg = testgen::random_assignment(inst, seed * 31 + 7);
    const double ours = evaluate(inst, asg).makespan;
    const double ref = oracle::makespan(inst, asg.exec_edge);
    CHECK(ours == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("scheduling then snapshotting commutes bit-exactly") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto inst = testgen::instance(5, 3, 8, seed, /*backlog_max=*/6);
    auto asg = testgen::random_assignment(inst, seed ^ 0xabcd);
    const double direct = evaluate(inst, asg).makespan;
    auto folded = apply_decision(inst, asg);
    const double after = evaluate(folded, Assignment{}).makespan;
    CHECK(direct == after);
  }
}

TEST_CASE("adding a request never decreases the makespan") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto inst = testgen::instance(5, 3, 9, seed);
    auto asg = testgen::random_assignment(inst, seed + 5);
    Instance shorter = inst;
    shorter.requests.pop_back();
    Assignment shorter_asg{{asg.exec_edge.begin(), asg.exec_edge.end() - 1}};
    CHECK(evaluate(shorter, shorter_asg).makespan <=
          evaluate(inst, asg).makespan + 1e-12);
  }
}

TEST_CASE("request permutation leaves the breakdown unchanged") {
  auto inst = testgen::instance(6, 3, 10, 77);
  auto asg = testgen::random_assignment(inst, 78);
  auto bd = evaluate(inst, asg);

  std::vector<int> perm(inst.num_requests());
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(79);
  for (int i = inst.num_requests() - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.next_index(i + 1)]);
  }
  Instance permuted = inst;
  Assignment permuted_asg = asg;
  for (int i = 0; i < inst.num_requests(); ++i) {
    permuted.requests[i] = inst.requests[perm[i]];
    permuted_asg.exec_edge[i] = asg.exec_edge[perm[i]];
  }
  auto bd2 = evaluate(permuted, permuted_asg);
  CHECK(bd.makespan == doctest::Approx(bd2.makespan).epsilon(1e-12));
  for (int q = 0; q < inst.region_size; ++q) {
    CHECK(bd.edges[q].t == doctest::Approx(bd2.edges[q].t).epsilon(1e-12));
  }
}

TEST_CASE("reward is the negated makespan") {
  auto inst = two_edge_transfer();
  CHECK(reward(inst, Assignment{{1}}) ==
        doctest::Approx(-4.15).epsilon(1e-12));
  Instance empty;
  empty.region_size = 1;
  empty.transmission_constant = 3.0;
  empty.edges.push_back({0, {0.0, 0.0}, {0.0, 1.0}, 1});
  empty.snapshots.assign(1, WorkloadSnapshot{});
  CHECK(reward(empty, Assignment{}) == 0.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst2 = testgen::instance(5, 2, 6, seed);
    auto asg = testgen::random_assignment(inst2, seed);
    CHECK(reward(inst2, asg) == -evaluate(inst2, asg).makespan);
  }
}

TEST_CASE("gap is the candidate/reference ratio") {
  CHECK(gap(4.15, 4.15) == doctest::Approx(1.0));
  CHECK(gap(5.0, 4.0) == doctest::Approx(1.25));
  CHECK_THROWS_AS(gap(1.0, 0.0), Error);
  CHECK_THROWS_AS(gap(1.0, -2.0), Error);
}

TEST_CASE("all_inbound form matches its own definition") {
  // The variant folds every assigned request's result shipping into the
  // inbound branch and closes with b_in rather than b_le.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = testgen::instance(5, 3, 6, seed, /*backlog_max=*/4);
    auto asg = testgen::random_assignment(inst, seed + 3);
    auto bd = evaluate(inst, asg, TqForm::all_inbound);
    for (int q = 0; q < inst.region_size; ++q) {
      const auto& s = inst.snapshots[q];
      const auto& e = bd.edges[q];
      const double expect =
          std::max(e.kappa1, e.mu) + std::max(e.eta + e.kappa2, s.b_in);
      CHECK(e.t == doctest::Approx(expect).epsilon(1e-12));
      CHECK(e.kappa2 >= e.out_local);
    }
  }
}
