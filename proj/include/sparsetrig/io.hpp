// Copyright 2026 The SparseTrig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text serialization: the coefficient dump format (one line per frequency,
// lexicographically sorted, '#'-prefixed provenance header), the rates CSV,
// and JSON sidecars. All float formatting is fixed to %.17g so identical
// inputs produce byte-identical artifacts.

#ifndef SPARSETRIG_IO_HPP_
#define SPARSETRIG_IO_HPP_

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sparsetrig/approx.hpp"
#include "sparsetrig/ratelab.hpp"

namespace sparsetrig {

inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

// ---------------------------------------------------------------------------
// Coefficient dump: lines "k_1 ... k_d  re  im" sorted lexicographically by
// frequency vector. '#' lines carry provenance (config echo) and are skipped
// by the reader.
// ---------------------------------------------------------------------------

template <typename Real>
void write_dump(std::ostream& os, const TrigPoly<Real>& poly,
                const std::map<std::string, std::string>& meta = {}) {
  os << "# d = " << poly.dim() << "\n";
  for (const auto& [key, value] : meta) {
    if (key == "d") continue;
    os << "# " << key << " = " << value << "\n";
  }
  for (const auto& [f, c] : poly.terms()) {
    for (int j = 0; j < poly.dim(); ++j) os << f[j] << ' ';
    os << format_real(static_cast<double>(c.real())) << ' '
       << format_real(static_cast<double>(c.imag())) << "\n";
  }
}

template <typename Real>
void write_dump(std::ostream& os, const CoeffGrid<Real>& grid,
                const std::map<std::string, std::string>& meta = {}) {
  write_dump(os, to_poly(grid), meta);
}

template <typename Real = double>
TrigPoly<Real> read_dump(std::istream& is,
                         std::map<std::string, std::string>* meta = nullptr) {
  std::vector<std::string> lines;
  std::string line;
  int dim = 0;
  std::map<std::string, std::string> header;
  TrigPoly<Real> poly(1);
  bool have_poly = false;

  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        auto trim = [](std::string s) {
          const auto b = s.find_first_not_of(" \t#");
          const auto e = s.find_last_not_of(" \t\r");
          return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        header[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
      }
      continue;
    }
    std::istringstream ls(line);
    std::vector<double> fields;
    double v;
    while (ls >> v) fields.push_back(v);
    if (fields.size() < 3) throw std::invalid_argument("read_dump: malformed line: " + line);
    const int d = static_cast<int>(fields.size()) - 2;
    if (!have_poly) {
      dim = d;
      poly = TrigPoly<Real>(dim);
      have_poly = true;
    } else if (d != dim) {
      throw std::invalid_argument("read_dump: inconsistent dimension");
    }
    std::vector<int> k(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) k[static_cast<std::size_t>(j)] = static_cast<int>(fields[static_cast<std::size_t>(j)]);
    poly.set_term(FreqIndex(k),
                  std::complex<Real>(static_cast<Real>(fields[static_cast<std::size_t>(d)]),
                                     static_cast<Real>(fields[static_cast<std::size_t>(d + 1)])));
  }
  if (!have_poly) {
    const auto it = header.find("d");
    if (it == header.end()) throw std::invalid_argument("read_dump: empty dump without a # d line");
    poly = TrigPoly<Real>(std::stoi(it->second));
  }
  if (meta) *meta = header;
  return poly;
}

template <typename Real = double>
CoeffGrid<Real> read_dump_grid(std::istream& is,
                               std::map<std::string, std::string>* meta = nullptr) {
  return to_grid(read_dump<Real>(is, meta));
}

// ---------------------------------------------------------------------------
// Rates CSV: '#' provenance header, then "m,error,scheme,space,seed" rows.
// ---------------------------------------------------------------------------

struct RateCsvRow {
  Index m = 0;
  double error = 0.0;
  std::string scheme;
  std::string space;
  std::string seed;  // the generator seed, or "median"
};

inline void write_rates_csv(std::ostream& os, const std::vector<RateCsvRow>& rows,
                            const std::map<std::string, std::string>& config_echo) {
  for (const auto& [key, value] : config_echo) os << "# " << key << " = " << value << "\n";
  os << "m,error,scheme,space,seed\n";
  for (const auto& row : rows) {
    os << row.m << ',' << format_real(row.error) << ',' << row.scheme << ',' << row.space << ','
       << row.seed << "\n";
  }
}

// ---------------------------------------------------------------------------
// JSON views
// ---------------------------------------------------------------------------

inline std::string space_label(const SpaceParams& sp) {
  std::string q = std::isinf(sp.q) ? "inf" : format_real(sp.q);
  return (sp.mode == TargetMode::kBq1 ? "Bq1(q=" : "Lq(q=") + q + ")";
}

inline nlohmann::json plan_to_json(const BudgetPlan& plan) {
  nlohmann::json budgets = nlohmann::json::object();
  for (const auto& [s, ms] : plan.budgets) budgets[std::to_string(s)] = ms;
  return nlohmann::json{{"scheme", scheme_name(plan.scheme)},
                        {"m", plan.m},
                        {"l", plan.base_level},
                        {"gamma", plan.gamma},
                        {"cutoff", plan.cutoff_level},
                        {"kept_full", plan.kept_full},
                        {"shrink_factor", plan.shrink_factor},
                        {"budgets", budgets}};
}

template <typename Real>
nlohmann::json approximant_sidecar(const Approximant<Real>& a) {
  nlohmann::json j = plan_to_json(a.plan);
  j["terms"] = a.poly.term_count();
  return j;
}

inline nlohmann::json exponent_to_json(const ExponentQuery& q, const ExponentResult& res) {
  auto real_or_inf = [](double v) {
    return std::isinf(v) ? nlohmann::json("inf") : nlohmann::json(v);
  };
  nlohmann::json query{{"quantity", quantity_name(q.quantity)},
                       {"class", func_class_name(q.cls)},
                       {"target", target_name(q.target)},
                       {"d", q.d},
                       {"r", q.r},
                       {"p", real_or_inf(q.p)},
                       {"theta", real_or_inf(q.theta)},
                       {"q", real_or_inf(q.q)},
                       {"alpha", q.alpha}};
  nlohmann::json out{{"query", query}};
  switch (res.status) {
    case CoverageStatus::kCovered:
      out["status"] = "covered";
      out["exponent"] = res.exponent;
      out["clause"] = res.clause;
      break;
    case CoverageStatus::kOpenCase:
      out["status"] = "open_case";
      out["diagnostic"] = res.diagnostic;
      break;
    case CoverageStatus::kNotCovered:
      out["status"] = "not_covered";
      out["diagnostic"] = res.diagnostic;
      break;
  }
  return out;
}

inline nlohmann::json report_to_json(const RateReport& report,
                                     const std::map<std::string, std::string>& config_echo) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& pt : report.points) {
    points.push_back(nlohmann::json{
        {"m", pt.m}, {"error", pt.error}, {"used_in_fit", pt.used_in_fit}});
  }
  nlohmann::json j{{"scheme", scheme_name(report.scheme)},
                   {"space", space_label(report.space)},
                   {"seeds", report.seeds},
                   {"points", points},
                   {"fitted", report.fitted},
                   {"theoretical_exponent", report.theory.exponent},
                   {"clause", report.theory.clause},
                   {"verdict", verdict_name(report.verdict)},
                   {"warnings", report.warnings}};
  if (report.fitted) {
    j["fitted_slope"] = report.fit.slope;
    j["intercept"] = report.fit.intercept;
    j["residual_rms"] = report.fit.residual_rms;
  }
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [key, value] : config_echo) cfg[key] = value;
  j["config"] = cfg;
  return j;
}

}  // namespace sparsetrig

#endif  // SPARSETRIG_IO_HPP_
