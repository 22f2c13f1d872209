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

// Python bindings. Instances and codebooks cross the boundary as JSON text;
// the vpic package converts them to and from dicts.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vpic/bounds.hpp"
#include "vpic/constructions.hpp"
#include "vpic/core_model.hpp"
#include "vpic/cover_solver.hpp"
#include "vpic/decodability.hpp"
#include "vpic/linear_codes.hpp"
#include "vpic/pliable.hpp"
#include "vpic/report.hpp"

namespace py = pybind11;
using namespace vpic;

namespace {

using Point = std::vector<std::uint32_t>;

ParsedInstance load(const std::string& text, std::optional<std::uint32_t> k) {
  auto p = parse_instance(text);
  if (k) p.alphabet = Alphabet(*k);
  return p;
}

SolveOptions options(std::uint64_t edge_cap, std::optional<double> time_limit, int threads) {
  SolveOptions o;
  o.enumerate.edge_cap = edge_cap;
  o.budget.time_limit_seconds = time_limit;
  o.budget.threads = threads;
  return o;
}

std::string solve_json(const std::string& inst_text, std::optional<std::uint32_t> k,
                       std::uint64_t edge_cap, std::optional<double> time_limit,
                       int threads) {
  const auto p = load(inst_text, k);
  const auto r = solve(p.instance, p.alphabet, options(edge_cap, time_limit, threads));
  Json doc;
  doc["t"] = r.codebook.t;
  doc["rate"] = r.rate;
  doc["optimal"] = r.optimal;
  doc["lower_bound"] = r.root_lower_bound;
  doc["edges"] = r.edge_count;
  doc["max_edge_size"] = r.max_edge_size;
  doc["lazy"] = r.lazy;
  doc["codebook"] = codebook_to_json(r.codebook);
  return doc.dump();
}

std::string pliable_json(const std::string& inst_text, std::optional<std::uint32_t> k,
                         std::optional<std::string> choice, std::uint64_t edge_cap,
                         std::optional<double> time_limit, int threads) {
  const auto p = load(inst_text, k);
  PliableOptions o;
  o.solve = options(edge_cap, time_limit, threads);
  const auto r = choice ? solve_with_choice(p.instance, p.alphabet,
                                            parse_choice(*choice, p.instance), o)
                        : pliable_min_t(p.instance, p.alphabet, o);
  Json doc;
  doc["t"] = r.t;
  doc["rate"] = r.rate;
  doc["optimal"] = r.optimal;
  doc["choice"] = r.choice.str(p.instance);
  doc["codebook"] = codebook_to_json(r.codebook);
  return doc.dump();
}

std::string verify_json(const std::string& cb_text, const std::string& inst_text,
                        std::optional<std::uint32_t> k) {
  const auto cb = parse_codebook(cb_text);
  const auto p = load(inst_text, k);
  const auto r = verify_codebook(cb, p.instance, p.alphabet);
  Json doc;
  doc["ok"] = r.ok;
  doc["message"] = r.message;
  doc["diagnostics"] = r.ok ? Json() : r.diagnostics();
  return doc.dump();
}

std::string bounds_json(const std::string& inst_text, std::optional<std::uint32_t> k) {
  const auto p = load(inst_text, k);
  Json doc = Json::array();
  for (const auto& r : all_bounds(p.instance, p.alphabet)) doc.push_back(r.to_json());
  return doc.dump();
}

std::vector<VertexId> to_ids(const std::vector<Point>& points, const VertexSpace& space) {
  std::vector<VertexId> ids;
  for (const auto& x : points) {
    if (static_cast<int>(x.size()) != space.message_count()) {
      throw InputError("realisation length does not match m");
    }
    for (auto v : x) {
      if (v >= space.alphabet_size()) throw InputError("realisation entry outside [0:k-1]");
    }
    ids.push_back(space.index_of(x));
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

bool valid_fiber(const std::string& inst_text, const std::vector<Point>& points,
                 std::optional<std::uint32_t> k) {
  const auto p = load(inst_text, k);
  const VertexSpace space(p.instance.message_count(), p.alphabet);
  return is_valid_fiber(to_ids(points, space), p.instance, space);
}

std::vector<std::vector<Point>> maximal_edges(const std::string& inst_text,
                                              std::optional<std::uint32_t> k,
                                              std::uint64_t edge_cap) {
  const auto p = load(inst_text, k);
  EnumerateOptions o;
  o.edge_cap = edge_cap;
  const auto hg = enumerate_maximal_edges(p.instance, p.alphabet, o);
  if (hg.is_lazy()) throw CapacityError("too many maximal edges to list");
  const VertexSpace space(p.instance.message_count(), p.alphabet);
  std::vector<std::vector<Point>> out;
  for (const auto& e : hg.edges()) {
    std::vector<Point> members;
    for (VertexId v : e) members.push_back(space.realisation(v));
    out.push_back(std::move(members));
  }
  return out;
}

std::string linear_check_json(const std::string& inst_text, std::uint32_t q,
                              const std::string& matrix) {
  const auto p = parse_instance(inst_text);
  const PrimeField f(q);
  const auto check = is_vp_linear(parse_encoder(matrix, f), p.instance, f);
  Json doc;
  doc["decodable"] = check.decodable;
  Json choice = Json::array();
  for (int i : check.choice) choice.push_back(i < 0 ? Json() : Json(i + 1));
  doc["choice"] = choice;
  return doc.dump();
}

std::string linear_search_json(const std::string& inst_text, std::uint32_t q,
                               std::optional<std::size_t> t_max) {
  const auto p = parse_instance(inst_text);
  const auto r = linear_min_length(
      p.instance, PrimeField(q),
      t_max.value_or(static_cast<std::size_t>(p.instance.message_count())));
  Json doc;
  doc["T"] = r.length ? Json(*r.length) : Json();
  doc["matrix"] = r.witness ? Json(r.witness->str()) : Json();
  doc["examined"] = r.examined;
  return doc.dump();
}

std::string concat_json(const std::string& cb_text, const std::string& mode, int p,
                        std::optional<std::uint32_t> field) {
  const auto cb = parse_codebook(cb_text);
  const auto inst = instance_of_codebook(cb);
  if (mode != "double" && mode != "general") throw InputError("mode must be double or general");
  const auto r = mode == "double" ? concat_double(cb, inst) : concat_general(cb, inst, p, field);
  Json doc;
  doc["t"] = r.codebook.t;
  doc["raw_t"] = r.raw_t;
  doc["field_size"] = r.field_size;
  doc["codebook"] = codebook_to_json(r.codebook);
  return doc.dump();
}

std::string sweep_text(const std::string& inst_text, std::uint32_t k_min,
                       std::uint32_t k_max, const std::string& format, int threads) {
  const auto p = parse_instance(inst_text);
  SweepOptions o;
  o.k_min = k_min;
  o.k_max = k_max;
  o.solver.solve.budget.threads = threads;
  const auto report = sweep(p.instance, o);
  if (format == "csv") return report_csv(report);
  if (format == "json") return report_json(report).dump();
  throw InputError("format must be csv or json");
}

}  // namespace

PYBIND11_MODULE(_vpic, m) {
  m.doc() = "Very-pliable index coding: exact solver, bounds and constructions";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);

  using release = py::call_guard<py::gil_scoped_release>;
  m.def("solve", &solve_json, py::arg("instance"), py::arg("k") = py::none(),
        py::arg("edge_cap") = 2'000'000, py::arg("time_limit") = py::none(),
        py::arg("threads") = 1, release());
  m.def("pliable", &pliable_json, py::arg("instance"), py::arg("k") = py::none(),
        py::arg("choice") = py::none(), py::arg("edge_cap") = 2'000'000,
        py::arg("time_limit") = py::none(), py::arg("threads") = 1, release());
  m.def("verify", &verify_json, py::arg("codebook"), py::arg("instance"),
        py::arg("k") = py::none(), release());
  m.def("bounds", &bounds_json, py::arg("instance"), py::arg("k") = py::none());
  m.def("is_valid_fiber", &valid_fiber, py::arg("instance"), py::arg("members"),
        py::arg("k") = py::none());
  m.def("maximal_edges", &maximal_edges, py::arg("instance"), py::arg("k") = py::none(),
        py::arg("edge_cap") = 2'000'000);
  m.def("linear_check", &linear_check_json, py::arg("instance"), py::arg("q"),
        py::arg("matrix"));
  m.def("linear_search", &linear_search_json, py::arg("instance"), py::arg("q"),
        py::arg("tmax") = py::none(), release());
  m.def("concat", &concat_json, py::arg("codebook"), py::arg("mode"), py::arg("p") = 1,
        py::arg("field") = py::none(), release());
  m.def("sweep", &sweep_text, py::arg("instance"), py::arg("k_min"), py::arg("k_max"),
        py::arg("format") = "json", py::arg("threads") = 1, release());
  m.def("rate", [](std::uint64_t t, std::uint32_t k) { return rate_of(t, Alphabet(k)); },
        py::arg("t"), py::arg("k"));
}
