// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "corais/model.hpp"
#include "corais/objective.hpp"

namespace corais {

/// Picks each request's most probable edge; ties resolve to the smallest
/// edge index.
Assignment decode_greedy(const PolicyMatrix& policy);

struct DecodeResult {
  Assignment assignment;
  double makespan = 0.0;
};

/// Draws n complete assignments column-independently from the policy and
/// returns the first one attaining the minimal evaluated makespan.
/// Deterministic in seed; sample s draws from substream(seed, s), so a
/// larger n never worsens the result for the same seed.
DecodeResult decode_sampling(const PolicyMatrix& policy, int n,
                             const Instance& inst, std::uint64_t seed,
                             TqForm form = TqForm::standard);

}  // namespace corais
