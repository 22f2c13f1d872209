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

// vpic command-line front end.
//
// Exit codes: 0 success or certified optimum, 2 incumbent only (a budget
// stopped the search), 3 verification failure, 4 input error.

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vpic/bounds.hpp"
#include "vpic/constructions.hpp"
#include "vpic/core_model.hpp"
#include "vpic/cover_solver.hpp"
#include "vpic/decodability.hpp"
#include "vpic/linear_codes.hpp"
#include "vpic/pliable.hpp"
#include "vpic/report.hpp"

namespace {

using namespace vpic;

constexpr int kOk = 0;
constexpr int kIncumbent = 2;
constexpr int kVerifyFailed = 3;
constexpr int kInputError = 4;

struct Common {
  std::string instance;
  std::optional<std::uint32_t> k;
  std::string out;
  std::uint64_t edge_cap = 2'000'000;
  std::optional<double> time_limit;
  int threads = 1;
  std::string format = "json";
};

void add_instance(CLI::App* cmd, Common& c) {
  cmd->add_option("--instance", c.instance, "Instance JSON file")->required();
  cmd->add_option("--k", c.k, "Alphabet size (overrides the instance)");
}

void add_solver(CLI::App* cmd, Common& c) {
  cmd->add_option("--edge-cap", c.edge_cap,
                  "Maximal-edge count above which enumeration goes lazy");
  cmd->add_option("--time-limit", c.time_limit, "Search time limit in seconds");
  cmd->add_option("--threads", c.threads, "Worker threads (default: $VP_THREADS, else 1)")
      ->check(CLI::Range(1, 1024));
}

void add_format(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

ParsedInstance load_instance(const Common& c) {
  ParsedInstance p = instance_from_json(read_json_file(c.instance));
  if (c.k) p.alphabet = Alphabet(*c.k);
  return p;
}

SolveOptions solve_options(const Common& c) {
  SolveOptions o;
  o.enumerate.edge_cap = c.edge_cap;
  o.budget.time_limit_seconds = c.time_limit;
  o.budget.threads = c.threads;
  return o;
}

// Writes to --out when given, else stdout.
void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(c.out, text);
  }
}

int threads_from_env(const std::string& text) {
  int n = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc() || end != text.data() + text.size() || n < 1 || n > 1024) {
    throw InputError("VP_THREADS must be an integer in [1, 1024], got '" + text + "'");
  }
  return n;
}

std::string receiver_str(MessageMask h) {
  Json r = Json::array();
  for (int i : mask_indices(h)) r.push_back(i + 1);
  return r.dump();
}

int cmd_solve(const Common& c) {
  const auto p = load_instance(c);
  const auto r = solve(p.instance, p.alphabet, solve_options(c));
  Json summary;
  summary["k"] = p.alphabet.size();
  summary["t"] = r.codebook.t;
  summary["rate"] = round_rate(r.rate);
  summary["optimal"] = r.optimal;
  summary["lower_bound"] = r.root_lower_bound;
  summary["edges"] = r.edge_count;
  summary["max_edge_size"] = r.max_edge_size;
  summary["lazy"] = r.lazy;
  if (!c.out.empty()) write_text_file(c.out, codebook_to_json(r.codebook).dump(2) + "\n");
  std::cout << summary.dump() << "\n";
  return r.optimal ? kOk : kIncumbent;
}

int cmd_sweep(const Common& c, std::optional<std::uint32_t> k_max, bool timing) {
  const auto p = load_instance(c);
  SweepOptions o;
  o.k_min = c.k.value_or(2);
  o.k_max = k_max.value_or(p.alphabet.size());
  o.solver.solve = solve_options(c);
  const auto report = sweep(p.instance, o);
  emit(c, c.format == "csv" ? report_csv(report, timing)
                            : report_json(report, timing).dump() + "\n");
  for (const auto& row : report.rows) {
    if (row.status != "ok" || !row.vp_certified || !row.pliable_certified) return kIncumbent;
  }
  return kOk;
}

int cmd_verify(const Common& c, const std::string& codebook_path) {
  const auto cb = codebook_from_json(read_json_file(codebook_path));
  const auto p = load_instance(c);
  const auto r = verify_codebook(cb, p.instance, p.alphabet);
  Json doc;
  doc["ok"] = r.ok;
  doc["t"] = cb.t;
  if (!r.ok) {
    doc["message"] = r.message;
    doc["diagnostics"] = r.diagnostics();
  }
  std::cout << doc.dump() << "\n";
  return r.ok ? kOk : kVerifyFailed;
}

int cmd_bounds(const Common& c) {
  const auto p = load_instance(c);
  const auto reports = all_bounds(p.instance, p.alphabet);
  std::string text;
  if (c.format == "csv") {
    text = "name,applicable,fiber_cap,t_lower,t_lower_ceil\n";
    for (const auto& r : reports) {
      text += r.name + ',' + (r.applicable ? "1" : "0") + ',' +
              std::to_string(r.fiber_cap) + ',' + r.t_lower.str() + ',' +
              std::to_string(r.t_lower_ceil()) + '\n';
    }
  } else {
    Json doc;
    doc["k"] = p.alphabet.size();
    doc["bounds"] = Json::array();
    for (const auto& r : reports) doc["bounds"].push_back(r.to_json());
    doc["best_t_lower"] = best_lower_bound(reports);
    text = doc.dump() + "\n";
  }
  emit(c, text);
  return kOk;
}

int cmd_linear_check(const Common& c, std::uint32_t q, const std::string& matrix) {
  const auto p = load_instance(c);
  const PrimeField f(q);
  const auto enc = parse_encoder(matrix, f);
  const auto check = is_vp_linear(enc, p.instance, f);
  Json doc;
  doc["q"] = q;
  doc["matrix"] = enc.str();
  doc["decodable"] = check.decodable;
  Json per = Json::array();
  for (std::size_t h = 0; h < check.choice.size(); ++h) {
    Json row;
    row["receiver"] = Json::parse(receiver_str(p.instance.receivers()[h]));
    Json sets = Json::array();
    for (int i : mask_indices(check.decodable_sets[h])) sets.push_back(i + 1);
    row["decodable"] = sets;
    row["choice"] = check.choice[h] < 0 ? Json() : Json(check.choice[h] + 1);
    per.push_back(row);
  }
  doc["receivers"] = per;
  std::cout << doc.dump() << "\n";
  return check.decodable ? kOk : kVerifyFailed;
}

int cmd_linear_search(const Common& c, std::uint32_t q, std::optional<std::size_t> t_max) {
  const auto p = load_instance(c);
  const PrimeField f(q);
  const auto r = linear_min_length(
      p.instance, f, t_max.value_or(static_cast<std::size_t>(p.instance.message_count())));
  Json doc;
  doc["q"] = q;
  doc["found"] = r.length.has_value();
  doc["T"] = r.length ? Json(*r.length) : Json();
  doc["matrix"] = r.witness ? Json(r.witness->str()) : Json();
  doc["examined"] = r.examined;
  std::cout << doc.dump() << "\n";
  return r.length ? kOk : kVerifyFailed;
}

int cmd_concat(const Common& c, const std::string& codebook_path, const std::string& mode,
               int p, std::optional<std::uint32_t> field) {
  const auto cb = codebook_from_json(read_json_file(codebook_path));
  const ProblemInstance inst =
      c.instance.empty() ? instance_of_codebook(cb) : load_instance(c).instance;
  const auto r = mode == "double" ? concat_double(cb, inst) : concat_general(cb, inst, p, field);
  const auto check = verify_codebook(r.codebook, inst, r.codebook.alphabet());
  Json doc;
  doc["k"] = r.codebook.alphabet_size;
  doc["t"] = r.codebook.t;
  doc["raw_t"] = r.raw_t;
  doc["field_size"] = r.field_size;
  doc["rate"] = round_rate(rate_of(r.codebook.t, r.codebook.alphabet()));
  doc["verified"] = check.ok;
  if (!c.out.empty()) write_text_file(c.out, codebook_to_json(r.codebook).dump(2) + "\n");
  std::cout << doc.dump() << "\n";
  return check.ok ? kOk : kVerifyFailed;
}

int cmd_pliable(const Common& c, const std::optional<std::string>& choice) {
  const auto p = load_instance(c);
  PliableOptions o;
  o.solve = solve_options(c);
  const auto r = choice ? solve_with_choice(p.instance, p.alphabet,
                                            parse_choice(*choice, p.instance), o)
                        : pliable_min_t(p.instance, p.alphabet, o);
  Json doc;
  doc["k"] = p.alphabet.size();
  doc["t"] = r.t;
  doc["rate"] = round_rate(r.rate);
  doc["optimal"] = r.optimal;
  doc["choice"] = r.choice.str(p.instance);
  doc["assignments"] = r.assignments_examined;
  if (!c.out.empty()) write_text_file(c.out, codebook_to_json(r.codebook).dump(2) + "\n");
  std::cout << doc.dump() << "\n";
  return r.optimal ? kOk : kIncumbent;
}

int cmd_enumerate(const Common& c) {
  const auto p = load_instance(c);
  EnumerateOptions o;
  o.edge_cap = c.edge_cap;
  const auto hg = enumerate_maximal_edges(p.instance, p.alphabet, o);
  if (hg.is_lazy()) {
    throw CapacityError("more than " + std::to_string(c.edge_cap) +
                        " maximal edges; raise --edge-cap to list them");
  }
  const VertexSpace space(p.instance.message_count(), p.alphabet);
  std::string text;
  if (c.format == "csv") {
    text = "edge,size,realisation\n";
    for (std::size_t e = 0; e < hg.edges().size(); ++e) {
      for (VertexId v : hg.edges()[e]) {
        std::string digits;
        for (auto d : space.realisation(v)) {
          if (!digits.empty()) digits += ' ';
          digits += std::to_string(d);
        }
        text += std::to_string(e) + ',' + std::to_string(hg.edges()[e].size()) + ',' +
                digits + '\n';
      }
    }
  } else {
    Json doc;
    doc["k"] = p.alphabet.size();
    doc["count"] = hg.edges().size();
    doc["max_edge_size"] = hg.max_edge_size();
    Json edges = Json::array();
    for (const auto& e : hg.edges()) {
      Json members = Json::array();
      for (VertexId v : e) members.push_back(space.realisation(v));
      edges.push_back(members);
    }
    doc["edges"] = edges;
    text = doc.dump() + "\n";
  }
  emit(c, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Very-pliable index coding toolkit"};
  app.require_subcommand(1);
  Common c;

  auto* solve_cmd = app.add_subcommand("solve", "Minimum-length VP code by exact covering");
  add_instance(solve_cmd, c);
  add_solver(solve_cmd, c);
  solve_cmd->add_option("--out", c.out, "Write the codebook JSON here");

  std::optional<std::uint32_t> k_max;
  bool timing = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "VP and pliable optima for k = --k..--kmax");
  add_instance(sweep_cmd, c);
  add_solver(sweep_cmd, c);
  add_format(sweep_cmd, c);
  sweep_cmd->add_option("--kmax", k_max, "Largest alphabet size");
  sweep_cmd->add_flag("--timing", timing, "Include wall time per row");
  sweep_cmd->add_option("--out", c.out, "Report file");

  std::string codebook;
  auto* verify_cmd = app.add_subcommand("verify", "Check a codebook against an instance");
  add_instance(verify_cmd, c);
  verify_cmd->add_option("--codebook", codebook, "Codebook JSON file")->required();

  auto* bounds_cmd = app.add_subcommand("bounds", "Counting lower bounds on t");
  add_instance(bounds_cmd, c);
  add_format(bounds_cmd, c);
  bounds_cmd->add_option("--out", c.out, "Output file");

  std::uint32_t q = 2;
  std::string matrix;
  auto* lcheck_cmd = app.add_subcommand("linear-check", "Decodability of a linear encoder");
  add_instance(lcheck_cmd, c);
  lcheck_cmd->add_option("--q", q, "Prime field size")->required();
  lcheck_cmd->add_option("--matrix", matrix, "Rows separated by ';', entries by ','")
      ->required();

  std::optional<std::size_t> t_max;
  auto* lsearch_cmd = app.add_subcommand("linear-search", "Shortest decodable linear encoder");
  add_instance(lsearch_cmd, c);
  lsearch_cmd->add_option("--q", q, "Prime field size")->required();
  lsearch_cmd->add_option("--tmax", t_max, "Largest encoder length to try");

  std::string mode;
  int p = 1;
  std::optional<std::uint32_t> field;
  auto* concat_cmd = app.add_subcommand("concat", "Concatenate a VP code with an MDS code");
  concat_cmd->add_option("--codebook", codebook, "Codebook JSON file")->required();
  concat_cmd->add_option("--instance", c.instance,
                         "Instance JSON file (default: receivers of the codebook)");
  concat_cmd->add_option("--mode", mode, "Construction")
      ->required()
      ->check(CLI::IsMember({"double", "general"}));
  concat_cmd->add_option("--p", p, "Known messages used by the MDS layer");
  concat_cmd->add_option("--field", field, "Prime field of the MDS layer");
  concat_cmd->add_option("--out", c.out, "Write the codebook JSON here");

  std::optional<std::string> choice;
  auto* pliable_cmd = app.add_subcommand("pliable", "Pliable optimum, or one fixed choice");
  add_instance(pliable_cmd, c);
  add_solver(pliable_cmd, c);
  pliable_cmd->add_option("--choice", choice, "Fixed choice, e.g. \"1:2,2:1,3:1\"");
  pliable_cmd->add_option("--out", c.out, "Write the codebook JSON here");

  auto* enum_cmd = app.add_subcommand("enumerate-edges", "List the maximal valid fibers");
  add_instance(enum_cmd, c);
  add_format(enum_cmd, c);
  enum_cmd->add_option("--edge-cap", c.edge_cap, "Refuse to list more edges than this");
  enum_cmd->add_option("--out", c.out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    const CLI::Option* threads_opt =
        app.get_subcommands().front()->get_option_no_throw("--threads");
    if (threads_opt != nullptr && threads_opt->count() == 0) {
      if (const char* env = std::getenv("VP_THREADS"); env != nullptr && *env != '\0') {
        c.threads = threads_from_env(env);
      }
    }
    if (*solve_cmd) return cmd_solve(c);
    if (*sweep_cmd) return cmd_sweep(c, k_max, timing);
    if (*verify_cmd) return cmd_verify(c, codebook);
    if (*bounds_cmd) return cmd_bounds(c);
    if (*lcheck_cmd) return cmd_linear_check(c, q, matrix);
    if (*lsearch_cmd) return cmd_linear_search(c, q, t_max);
    if (*concat_cmd) return cmd_concat(c, codebook, mode, p, field);
    if (*pliable_cmd) return cmd_pliable(c, choice);
    if (*enum_cmd) return cmd_enumerate(c);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
