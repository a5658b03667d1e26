// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "corais/domain.hpp"

namespace corais {

inline constexpr int kInstanceFormatVersion = 1;

/// Serializes an instance to the versioned JSON document format. Reals keep
/// full round-trip precision; load(save(x)) == x bit-exactly.
std::string save_instance(const Instance& inst);

/// Parses an instance document. Throws Error with a location hint on
/// malformed input and on unsupported versions.
Instance load_instance(const std::string& text);

void save_instance_file(const Instance& inst, const std::string& path);
Instance load_instance_file(const std::string& path);

}  // namespace corais
