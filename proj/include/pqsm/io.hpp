// Copyright 2026 The pqsm Authors
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

/// @file io.hpp
/// JSON state files and classification reports (format_version 1).
///
/// State file:
///   {
///     "format_version": 1,
///     "dims": [2, 2, 2],
///     "labels": {"A": [0], "B": [1], "C": [2]},      // optional
///     "matrix": [[re, im], ...],                      // D*D entries, row-major
///     "meta": {...}                                   // optional, echoed back
///   }
/// A pure state carries "amplitudes": [[re, im], ...] (D entries) in place of
/// "matrix".

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "pqsm/classify.hpp"
#include "pqsm/core.hpp"
#include "pqsm/tripartite.hpp"

namespace pqsm::io {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kToolVersion = "pqsm 1.0.0";

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Labels {
  IndexSet a, b, c;
  friend bool operator==(const Labels&, const Labels&) = default;
};

struct StateFile {
  Dims dims;
  std::optional<Labels> labels;
  std::variant<DensityMatrix, PureState> payload;
  json meta;  // null when absent

  bool is_pure() const { return std::holds_alternative<PureState>(payload); }

  DensityMatrix density() const {
    if (const auto* psi = std::get_if<PureState>(&payload)) return DensityMatrix::from_pure(*psi);
    return std::get<DensityMatrix>(payload);
  }

  std::optional<TripartiteState> tripartite() const {
    if (!labels) return std::nullopt;
    return TripartiteState(density(), labels->a, labels->b, labels->c);
  }

  static StateFile from(const TripartiteState& s, json meta = nullptr) {
    return {s.dims(), Labels{s.a(), s.b(), s.c()}, s.state(), std::move(meta)};
  }
  static StateFile from(const PureState& psi, json meta = nullptr) {
    return {psi.dims(), std::nullopt, psi, std::move(meta)};
  }
  static StateFile from(const DensityMatrix& rho, json meta = nullptr) {
    return {rho.dims(), std::nullopt, rho, std::move(meta)};
  }
};

namespace detail {

inline json complex_pair(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx read_pair(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw FormatError("expected a [re, im] pair of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline IndexSet read_indices(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string("labels.") + what + " must be an array");
  IndexSet out;
  for (const auto& v : j) {
    if (!v.is_number_unsigned()) throw FormatError(std::string("labels.") + what + " must hold indices");
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

}  // namespace detail

inline json to_json(const StateFile& file) {
  json j;
  j["format_version"] = kFormatVersion;
  j["dims"] = file.dims;
  if (file.labels) j["labels"] = {{"A", file.labels->a}, {"B", file.labels->b}, {"C", file.labels->c}};
  if (const auto* psi = std::get_if<PureState>(&file.payload)) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < psi->amplitudes().size(); ++i)
      amps.push_back(detail::complex_pair(psi->amplitudes()(i)));
    j["amplitudes"] = std::move(amps);
  } else {
    const Matrix& m = std::get<DensityMatrix>(file.payload).matrix();
    json entries = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(detail::complex_pair(m(r, c)));
    j["matrix"] = std::move(entries);
  }
  if (!file.meta.is_null()) j["meta"] = file.meta;
  return j;
}

inline std::string serialize(const StateFile& file) { return to_json(file).dump(1) + "\n"; }

/// Parses and validates a state file. Any schema or invariant violation is
/// reported as FormatError.
inline StateFile parse_state(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("state file must be a JSON object");
  if (!j.contains("format_version") || j["format_version"] != kFormatVersion)
    throw FormatError("unsupported or missing format_version");
  if (!j.contains("dims") || !j["dims"].is_array()) throw FormatError("missing dims");
  try {
    StateFile file{j["dims"].get<Dims>(), std::nullopt, PureState::basis({2}, 0), nullptr};
    const std::size_t d = total_dimension(file.dims);
    if (j.contains("labels")) {
      const json& l = j["labels"];
      if (!l.is_object() || !l.contains("A") || !l.contains("B") || !l.contains("C"))
        throw FormatError("labels must assign A, B and C");
      file.labels = Labels{detail::read_indices(l["A"], "A"), detail::read_indices(l["B"], "B"),
                           detail::read_indices(l["C"], "C")};
    }
    const bool has_matrix = j.contains("matrix"), has_amps = j.contains("amplitudes");
    if (has_matrix == has_amps) throw FormatError("exactly one of matrix or amplitudes is required");
    if (has_amps) {
      const json& a = j["amplitudes"];
      if (!a.is_array() || a.size() != d) throw FormatError("amplitudes must have length D");
      Vector v(static_cast<Eigen::Index>(d));
      for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i)) = detail::read_pair(a[i]);
      file.payload = PureState(file.dims, std::move(v));
    } else {
      const json& a = j["matrix"];
      if (!a.is_array() || a.size() != d * d) throw FormatError("matrix must have D*D entries");
      Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = detail::read_pair(a[r * d + c]);
      file.payload = DensityMatrix(file.dims, std::move(m));
    }
    if (j.contains("meta")) file.meta = j["meta"];
    if (file.labels) file.tripartite();  // validates the partition
    return file;
  } catch (const FormatError&) {
    throw;
  } catch (const json::exception& e) {
    throw FormatError(std::string("schema error: ") + e.what());
  } catch (const std::exception& e) {
    throw FormatError(std::string("invalid state: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// cuts

/// Parses `A:BC` (party labels, needs `labels`) or `0,1:2` (indices).
inline Bipartition parse_cut(const std::string& spec, std::size_t num_subsystems,
                             const std::optional<Labels>& labels = std::nullopt) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos || spec.find(':', colon + 1) != std::string::npos)
    throw std::invalid_argument("cut must have the form LEFT:RIGHT");
  auto side = [&](const std::string& text) {
    IndexSet out;
    if (text.empty()) throw std::invalid_argument("cut side must not be empty");
    if (text.find_first_of("ABC") != std::string::npos) {
      if (!labels) throw std::invalid_argument("cut uses party labels but the state has none");
      for (char ch : text) {
        const IndexSet* part = ch == 'A' ? &labels->a : ch == 'B' ? &labels->b : ch == 'C' ? &labels->c : nullptr;
        if (!part) throw std::invalid_argument(std::string("unknown party label '") + ch + "'");
        out.insert(out.end(), part->begin(), part->end());
      }
      return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("cut indices must be nonnegative integers");
      out.push_back(std::stoul(item));
    }
    return out;
  };
  return Bipartition(side(spec.substr(0, colon)), side(spec.substr(colon + 1)), num_subsystems);
}

// ---------------------------------------------------------------------------
// reports

/// 64-bit FNV-1a of the raw input bytes, as "fnv1a64:<16 hex digits>".
inline std::string content_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

struct ReportConfig {
  double tol = classify::kDefaultTolerance;
  std::uint64_t seed = 0;
};

inline json report_json(const classify::ClassificationReport& report, const std::string& input_bytes,
                        const ReportConfig& config, const std::string& timestamp) {
  json criteria = json::array();
  for (const auto& c : report.criteria) {
    criteria.push_back({{"name", c.name},
                        {"holds", classify::to_string(c.holds)},
                        {"witness", c.witness ? json(*c.witness) : json(nullptr)},
                        {"statement", c.statement}});
  }
  json witnesses = json::object();
  for (const auto& [k, v] : report.witnesses) witnesses[k] = v;
  return {{"format_version", kFormatVersion},
          {"tool_version", kToolVersion},
          {"input_digest", content_digest(input_bytes)},
          {"criteria", std::move(criteria)},
          {"verdict", classify::to_string(report.verdict)},
          {"consistency", report.consistency},
          {"fidelity_lower_bound", report.fidelity_lower_bound},
          {"witnesses", std::move(witnesses)},
          {"config", {{"tol", config.tol}, {"seed", config.seed}}},
          {"timestamp", timestamp}};
}

}  // namespace pqsm::io
