// Copyright 2026 The vpic Authors
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

#include "vpic/report.hpp"

#include <chrono>
#include <cstdio>

namespace vpic {

RunReport sweep(const ProblemInstance& inst, const SweepOptions& options) {
  RunReport report;
  report.instance = instance_to_json(inst, Alphabet(std::max(2u, options.k_min)));
  report.instance.erase("k");
  for (std::uint32_t k = std::max(2u, options.k_min); k <= options.k_max; ++k) {
    SweepRow row;
    row.k = k;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Alphabet alphabet(k);
      const auto bounds = all_bounds(inst, alphabet);
      row.bound_t_lower = best_lower_bound(bounds);
      for (const auto& b : bounds) {
        if (b.applicable) row.bounds.push_back(b.name);
      }
      const auto vp = solve(inst, alphabet, options.solver.solve);
      row.t_vp = vp.codebook.t;
      row.alpha = vp.rate;
      row.vp_certified = vp.optimal;
      row.max_edge_size = vp.max_edge_size;
      const auto pl = pliable_min_t(inst, alphabet, options.solver);
      row.t_pliable = pl.t;
      row.beta = pl.rate;
      row.pliable_certified = pl.optimal;
    } catch (const std::exception& e) {
      row.status = e.what();
    }
    row.wall_seconds = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

std::string fixed4(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string joined(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ';';
    out += n;
  }
  return out;
}

}  // namespace

std::string report_csv(const RunReport& report, bool with_timing) {
  std::string out =
      "k,t_vp,alpha_k,vp_certified,t_pliable,beta_k,pliable_certified,"
      "bound_t_lower,bounds,max_edge_size,status";
  if (with_timing) out += ",wall_seconds";
  out += '\n';
  for (const auto& r : report.rows) {
    out += std::to_string(r.k) + ',' + std::to_string(r.t_vp) + ',' +
           fixed4(r.alpha) + ',' + (r.vp_certified ? "1" : "0") + ',' +
           std::to_string(r.t_pliable) + ',' + fixed4(r.beta) + ',' +
           (r.pliable_certified ? "1" : "0") + ',' +
           std::to_string(r.bound_t_lower) + ',' + csv_field(joined(r.bounds)) +
           ',' + std::to_string(r.max_edge_size) + ',' + csv_field(r.status);
    if (with_timing) out += ',' + fixed4(r.wall_seconds);
    out += '\n';
  }
  return out;
}

Json report_json(const RunReport& report, bool with_timing) {
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json row;
    row["k"] = r.k;
    row["status"] = r.status;
    row["t_vp"] = r.t_vp;
    row["alpha_k"] = round_rate(r.alpha);
    row["vp_certified"] = r.vp_certified;
    row["t_pliable"] = r.t_pliable;
    row["beta_k"] = round_rate(r.beta);
    row["pliable_certified"] = r.pliable_certified;
    row["bound_t_lower"] = r.bound_t_lower;
    row["bounds"] = r.bounds;
    row["max_edge_size"] = r.max_edge_size;
    if (with_timing) row["wall_seconds"] = r.wall_seconds;
    rows.push_back(std::move(row));
  }
  Json doc;
  doc["instance"] = report.instance;
  doc["rows"] = std::move(rows);
  return doc;
}

}  // namespace vpic
