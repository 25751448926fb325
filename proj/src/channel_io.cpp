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

#include "avgent/channel_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "avgent/error.hpp"
#include "avgent/symgroup.hpp"

namespace avgent {

namespace {

using nlohmann::json;

Complex complex_from_json(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ArgumentError(path + ": expected a number or [re, im]");
}

double number_at(const json& obj, const char* key, const std::string& path) {
  const std::string where = path + "." + key;
  if (!obj.contains(key)) throw ArgumentError(where + ": missing");
  if (!obj[key].is_number()) throw ArgumentError(where + ": expected a number");
  return obj[key].get<double>();
}

std::vector<ComplexMatrix> matrix_list(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ArgumentError(path + ": expected a nonempty list of matrices");
  std::vector<ComplexMatrix> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(matrix_from_json(j[k], path + "[" + std::to_string(k) + "]"));
  }
  return out;
}

Channel family_from_json(const json& j) {
  if (!j["family"].is_string()) throw ArgumentError("$.family: expected a string");
  const std::string family = j["family"].get<std::string>();
  if (family == "depolarizing") {
    std::size_t d = 2;
    if (j.contains("d")) {
      if (!j["d"].is_number_integer() || j["d"].get<long long>() < 2) {
        throw ArgumentError("$.d: expected an integer >= 2");
      }
      d = j["d"].get<std::size_t>();
    }
    return build(FamilySpec{Depolarizing{d, number_at(j, "lambda", "$")}});
  }
  if (family == "two_rail") {
    return build(FamilySpec{TwoRail{number_at(j, "mu", "$"), number_at(j, "nu", "$"),
                                    number_at(j, "lambda", "$"), number_at(j, "kappa", "$")}});
  }
  if (family == "bloch") {
    return build(FamilySpec{BlochScaling{number_at(j, "l1", "$"), number_at(j, "l2", "$"),
                                         number_at(j, "l3", "$")}});
  }
  if (family == "qc") {
    if (!j.contains("povm")) throw ArgumentError("$.povm: missing");
    return build(FamilySpec{QCFamily{matrix_list(j["povm"], "$.povm")}});
  }
  throw ArgumentError("$.family: unknown family '" + family +
                      "' (expected depolarizing, two_rail, bloch or qc)");
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

ComplexMatrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ArgumentError(path + ": expected a nonempty list of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  std::vector<Complex> entries;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].empty()) throw ArgumentError(row_path + ": expected a nonempty row");
    if (i == 0) cols = j[i].size();
    if (j[i].size() != cols) {
      throw ArgumentError(row_path + ": row has " + std::to_string(j[i].size()) +
                          " entries, expected " + std::to_string(cols));
    }
    for (std::size_t k = 0; k < cols; ++k) {
      entries.push_back(complex_from_json(j[i][k], row_path + "[" + std::to_string(k) + "]"));
    }
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Channel channel_from_json(const json& j) {
  if (!j.is_object()) throw ArgumentError("$: expected an object");
  if (j.contains("family")) return family_from_json(j);
  if (j.contains("kraus")) return Channel::from_kraus(matrix_list(j["kraus"], "$.kraus"));
  if (j.contains("choi")) return Channel::from_choi(matrix_from_json(j["choi"], "$.choi"));
  if (j.contains("holevo")) {
    const json& h = j["holevo"];
    if (!h.is_object()) throw ArgumentError("$.holevo: expected an object");
    if (!h.contains("sigmas")) throw ArgumentError("$.holevo.sigmas: missing");
    if (!h.contains("povm")) throw ArgumentError("$.holevo.povm: missing");
    return build(HolevoForm{matrix_list(h["sigmas"], "$.holevo.sigmas"),
                            matrix_list(h["povm"], "$.holevo.povm")});
  }
  throw ArgumentError("$: expected one of the keys family, kraus, choi, holevo");
}

Channel load_channel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open channel file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ArgumentError("'" + path + "': invalid JSON: " + e.what());
  }
  return channel_from_json(j);
}

std::string fingerprint_hex(std::uint64_t fingerprint) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fingerprint));
  return buf;
}

json qtable_to_json(const QTable& table, std::uint64_t fingerprint) {
  json entries = json::object();
  for (const auto& e : table.entries) entries[to_cycle_notation(e.alpha)] = complex_to_json(e.value);
  json argmax = json::array();
  for (const auto& a : table.argmax_set) argmax.push_back(to_cycle_notation(a));
  return json{{"r", table.r},
              {"entries", std::move(entries)},
              {"q_max", table.q_max},
              {"argmax", std::move(argmax)},
              {"N", table.multiplicity},
              {"unique", table.unique},
              {"all_nonneg_real", table.all_nonneg_real},
              {"fingerprint", fingerprint_hex(fingerprint)}};
}

json estimate_to_json(const mc::McEstimate& est, const mc::McConfig& cfg,
                      std::uint64_t fingerprint) {
  return json{{"quantity", mc::to_string(est.quantity)},
              {"mean", est.mean},
              {"stderr", est.std_error},
              {"samples", est.samples},
              {"seed", cfg.seed},
              {"workers", cfg.workers},
              {"n", cfg.n},
              {"r", cfg.r},
              {"fingerprint", fingerprint_hex(fingerprint)}};
}

}  // namespace avgent
