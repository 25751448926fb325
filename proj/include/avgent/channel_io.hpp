// Copyright 2026 The avgent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "avgent/channel.hpp"
#include "avgent/montecarlo.hpp"
#include "avgent/qmoments.hpp"

namespace avgent {

/// Builds a channel from its JSON description. Accepted shapes:
///   {"family": "depolarizing", "d": 2, "lambda": 0.5}
///   {"family": "two_rail", "mu": .., "nu": .., "lambda": .., "kappa": ..}
///   {"family": "bloch", "l1": .., "l2": .., "l3": ..}
///   {"family": "qc", "povm": [M, ...]}
///   {"kraus": [M, ...]}
///   {"choi": M}
///   {"holevo": {"sigmas": [M, ...], "povm": [M, ...]}}
/// where M is a list of rows and each entry is a number or [re, im].
/// Errors name the offending JSON path, e.g. "$.kraus[0][1][0]".
Channel channel_from_json(const nlohmann::json& j);

/// Reads and parses a channel description file.
Channel load_channel(const std::string& path);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& path);

/// {"r", "entries": {"(1 2)": [re, im], ...}, "q_max", "argmax": [...],
///  "N", "unique", "all_nonneg_real", "fingerprint"}
nlohmann::json qtable_to_json(const QTable& table, std::uint64_t fingerprint);

/// {"quantity", "mean", "stderr", "samples", "seed", "workers", "fingerprint"}
nlohmann::json estimate_to_json(const mc::McEstimate& est, const mc::McConfig& cfg,
                                std::uint64_t fingerprint);

/// Fingerprint as a fixed-width hexadecimal string.
std::string fingerprint_hex(std::uint64_t fingerprint);

}  // namespace avgent
