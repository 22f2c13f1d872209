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

#include "vpic/pliable.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

namespace vpic {

DecodeChoices ChoiceAssignment::masks() const {
  DecodeChoices out;
  for (int i : index) out.push_back(MessageMask{1} << i);
  return out;
}

namespace {

std::string receiver_label(MessageMask h) {
  if (h == 0) return "-";
  std::string out;
  for (int i : mask_indices(h)) {
    if (!out.empty()) out += '+';
    out += std::to_string(i + 1);
  }
  return out;
}

std::vector<std::vector<int>> admissible(const ProblemInstance& inst) {
  std::vector<std::vector<int>> out;
  for (MessageMask h : inst.receivers()) {
    out.push_back(mask_indices(inst.full_mask() & ~h));
  }
  return out;
}

}  // namespace

std::string ChoiceAssignment::str(const ProblemInstance& inst) const {
  std::string out;
  for (std::size_t h = 0; h < index.size(); ++h) {
    if (h) out += ',';
    out += receiver_label(inst.receivers()[h]) + ":" + std::to_string(index[h] + 1);
  }
  return out;
}

void validate_choice(const ChoiceAssignment& choice, const ProblemInstance& inst) {
  if (choice.index.size() != inst.receiver_count()) {
    throw InputError("choice assignment must name one index per receiver");
  }
  for (std::size_t h = 0; h < choice.index.size(); ++h) {
    const int i = choice.index[h];
    if (i < 0 || i >= inst.message_count() || (inst.receivers()[h] >> i & 1u)) {
      throw InputError("receiver " + receiver_label(inst.receivers()[h]) +
                       " cannot be assigned message " + std::to_string(i + 1));
    }
  }
}

ChoiceAssignment parse_choice(std::string_view text, const ProblemInstance& inst) {
  ChoiceAssignment choice;
  for (const auto& options : admissible(inst)) choice.index.push_back(options.front());
  std::stringstream in{std::string(text)};
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw InputError("choice item needs ':' in '" + item + "'");
    const std::string lhs = item.substr(0, colon);
    MessageMask h = 0;
    if (lhs != "-") {
      std::stringstream parts{lhs};
      std::string part;
      while (std::getline(parts, part, '+')) {
        int i = 0;
        try {
          i = std::stoi(part);
        } catch (const std::exception&) {
          throw InputError("bad receiver in choice '" + item + "'");
        }
        if (i < 1 || i > inst.message_count()) throw InputError("receiver index out of range");
        h |= MessageMask{1} << (i - 1);
      }
    }
    const auto receivers = inst.receivers();
    const auto it = std::find(receivers.begin(), receivers.end(), h);
    if (it == receivers.end()) throw InputError("choice names an unknown receiver '" + lhs + "'");
    int target = 0;
    try {
      target = std::stoi(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw InputError("bad message index in choice '" + item + "'");
    }
    choice.index[it - receivers.begin()] = target - 1;
  }
  validate_choice(choice, inst);
  return choice;
}

bool pliable_valid_fiber(std::span<const VertexId> members,
                         const ProblemInstance& inst, const Alphabet& k,
                         const ChoiceAssignment& choice) {
  validate_choice(choice, inst);
  const VertexSpace space(inst.message_count(), k);
  return is_valid_fiber(members, inst, space, choice.masks());
}

PliableResult solve_with_choice(const ProblemInstance& inst, const Alphabet& k,
                                const ChoiceAssignment& choice,
                                const PliableOptions& options) {
  validate_choice(choice, inst);
  SolveOptions solve_opts = options.solve;
  solve_opts.enumerate.choices = choice.masks();
  auto solved = solve(inst, k, solve_opts);
  PliableResult r;
  r.t = solved.codebook.t;
  r.rate = solved.rate;
  r.choice = choice;
  r.codebook = std::move(solved.codebook);
  r.optimal = solved.optimal;
  r.assignments_examined = 1;
  return r;
}

PliableResult pliable_min_t(const ProblemInstance& inst, const Alphabet& k,
                            const PliableOptions& options) {
  require_exact_size(inst.message_count(), k);
  const auto choices = admissible(inst);
  std::uint64_t total = 1;
  for (const auto& c : choices) {
    if (total > options.assignment_cap / c.size()) {
      throw CapacityError(
          "choice-assignment space exceeds the cap; solve a fixed assignment "
          "with --choice instead");
    }
    total *= c.size();
  }
  auto assignment_at = [&](std::uint64_t n) {
    ChoiceAssignment a;
    a.index.resize(choices.size());
    for (std::size_t h = choices.size(); h-- > 0;) {
      a.index[h] = choices[h][n % choices[h].size()];
      n /= choices[h].size();
    }
    return a;
  };

  PliableOptions single = options;
  single.solve.budget.threads = 1;
  std::vector<std::optional<PliableResult>> results(total);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> cutoff{total};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto run = [&] {
    for (std::uint64_t n; (n = next.fetch_add(1)) < total;) {
      if (n > cutoff.load() || failed) break;
      try {
        results[n] = solve_with_choice(inst, k, assignment_at(n), single);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        failed = true;
        break;
      }
      if (results[n]->t == k.size()) {
        auto seen = cutoff.load();
        while (n < seen && !cutoff.compare_exchange_weak(seen, n)) {
        }
      }
    }
  };
  const int threads = std::max(1, options.solve.budget.threads);
  if (threads == 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(run);
  }
  if (error) std::rethrow_exception(error);

  PliableResult best;
  bool have = false;
  bool all_optimal = true;
  std::uint64_t examined = 0;
  for (std::uint64_t n = 0; n < total && n <= cutoff; ++n) {
    if (!results[n]) continue;
    ++examined;
    all_optimal = all_optimal && results[n]->optimal;
    if (!have || results[n]->t < best.t) {
      best = std::move(*results[n]);
      have = true;
    }
  }
  best.optimal = all_optimal;
  best.assignments_examined = examined;
  return best;
}

}  // namespace vpic
