//  Copyright 2026 The latclone Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef LATCLONE_CLONE_HPP_
#define LATCLONE_CLONE_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "latclone/decompose.hpp"
#include "latclone/error.hpp"
#include "latclone/functable.hpp"
#include "latclone/generators.hpp"
#include "latclone/lattice.hpp"
#include "latclone/terms.hpp"

namespace latclone {

struct ClosureOptions {
  /// Maximum number of attempted compositions.
  std::size_t budget = 1'000'000;
  /// Stop as soon as this many functions are reached. Only meaningful when
  /// the caller knows an upper bound on the closure (for an idempotent base
  /// the closure lies inside Id^n(L)).
  std::optional<std::size_t> saturation_bound;
};

struct ClosureReport {
  std::vector<FnTable> reached;  // insertion order, projections first
  std::unordered_set<std::string> keys;
  std::size_t rounds = 0;  // deepest composition layer reached
  std::size_t insertions = 0;
  std::size_t attempts = 0;
  bool budget_hit = false;
  bool saturated = false;
  std::chrono::steady_clock::duration elapsed{};

  bool contains(const FnTable& f) const { return keys.count(f.key()) != 0; }

  /// True when no further composition can add anything: a fixpoint was
  /// reached, or the saturation bound was met.
  bool complete() const { return !budget_hit; }
};

namespace detail {

inline bool is_symmetric(const FnTable& f) {
  const std::size_t m = f.lattice().size();
  Tuple x(f.arity(), 0);
  std::size_t k = 0;
  do {
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      std::swap(x[i], x[i + 1]);
      const bool same = f.at(tuple_index(x, m)) == f.at(k);
      std::swap(x[i], x[i + 1]);
      if (!same) return false;
    }
    ++k;
  } while (next_tuple(x, m));
  return true;
}

/// Visits every k-tuple of indices in [0, end) having at least one index in
/// [fresh, end). With `sorted`, only nondecreasing tuples are visited. The
/// visitor returns false to stop; so does this function.
template <class Visit>
bool for_each_fresh_tuple(std::size_t k, std::size_t fresh, std::size_t end, bool sorted,
                          Visit&& visit) {
  std::vector<std::size_t> idx(k, 0);
  if (sorted) {
    // Nondecreasing tuples whose last (largest) index is fresh.
    auto walk = [&](auto&& self, std::size_t pos, std::size_t lo) -> bool {
      if (pos + 1 == k) {
        for (std::size_t v = std::max(lo, fresh); v < end; ++v) {
          idx[pos] = v;
          if (!visit(std::span<const std::size_t>(idx))) return false;
        }
        return true;
      }
      for (std::size_t v = lo; v < end; ++v) {
        idx[pos] = v;
        if (!self(self, pos + 1, v)) return false;
      }
      return true;
    };
    return walk(walk, 0, 0);
  }
  // Partition by the first fresh position j: earlier positions are old,
  // later ones unrestricted.
  for (std::size_t j = 0; j < k; ++j) {
    auto walk = [&](auto&& self, std::size_t pos) -> bool {
      if (pos == k) return visit(std::span<const std::size_t>(idx));
      const std::size_t lo = pos == j ? fresh : 0;
      const std::size_t hi = pos < j ? fresh : end;
      for (std::size_t v = lo; v < hi; ++v) {
        idx[pos] = v;
        if (!self(self, pos + 1)) return false;
      }
      return true;
    };
    if (!walk(walk, 0)) return false;
  }
  return true;
}

}  // namespace detail

/// Closure of the n-ary projections under composition with the base
/// functions. Each base function keeps its own frontier over the reached
/// list; a step feeds it every argument tuple whose largest index is its
/// frontier element. The step with the fewest tuples runs next, so cheap
/// low-arity work runs well ahead of ternary work. Running out of budget is
/// reported, not thrown.
inline ClosureReport closure(const LatticeRef& lat, std::span<const FnTable> base, std::size_t n,
                             const ClosureOptions& options = {}) {
  if (options.budget == 0) throw Error(Errc::InvalidSize, "closure budget must be >= 1");
  if (n == 0) throw Error(Errc::InvalidSize, "closure arity must be >= 1");
  for (const auto& f : base)
    if (!same_lattice(lat, f.lattice_ref()))
      throw Error(Errc::LatticeMismatch, "base function on a different lattice");

  const auto start = std::chrono::steady_clock::now();
  ClosureReport report;
  std::vector<std::size_t> generation;
  auto insert = [&](FnTable f, std::size_t gen) {
    if (!report.keys.insert(f.key()).second) return false;
    report.reached.push_back(std::move(f));
    generation.push_back(gen);
    report.rounds = std::max(report.rounds, gen);
    return true;
  };
  for (std::size_t i = 1; i <= n; ++i) insert(projection(lat, n, i), 0);

  auto saturated = [&] {
    return options.saturation_bound && report.reached.size() >= *options.saturation_bound;
  };

  struct Worker {
    const FnTable* f;
    std::size_t position;
    bool symmetric;
    bool idempotent;
    std::size_t frontier = 0;
  };
  std::vector<Worker> workers;
  for (std::size_t b = 0; b < base.size(); ++b) {
    const FnTable& f = base[b];
    workers.push_back({&f, b, f.arity() > 1 && detail::is_symmetric(f), is_idempotent(f)});
  }
  // Tuples whose largest index is r.
  auto step_cost = [](const Worker& w) {
    const double r = static_cast<double>(w.frontier);
    const double k = static_cast<double>(w.f->arity());
    return w.symmetric ? std::pow(r + 1, k - 1) / std::tgamma(k) : std::pow(r + 1, k) - std::pow(r, k);
  };

  bool stop = saturated();
  std::vector<FnTable> args;
  while (!stop) {
    Worker* next = nullptr;
    for (auto& w : workers) {
      if (w.frontier >= report.reached.size()) continue;
      if (!next || step_cost(w) < step_cost(*next)) next = &w;
    }
    if (!next) break;
    Worker& w = *next;
    const std::size_t r = w.frontier;
    detail::for_each_fresh_tuple(
        w.f->arity(), r, r + 1, w.symmetric, [&](std::span<const std::size_t> idx) {
          if (w.idempotent &&
              std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return i == idx[0]; }))
            return true;
          if (report.attempts == options.budget) {
            report.budget_hit = true;
            stop = true;
            return false;
          }
          ++report.attempts;
          args.clear();
          std::size_t gen = 0;
          for (std::size_t i : idx) {
            args.push_back(report.reached[i]);
            gen = std::max(gen, generation[i]);
          }
          if (insert(compose(*w.f, args), gen + 1)) {
            ++report.insertions;
            if (saturated()) {
              report.saturated = true;
              stop = true;
              return false;
            }
          }
          return true;
        });
    if (!stop) ++w.frontier;
  }
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

inline std::string format_closure_summary(const ClosureReport& r) {
  return "reached=" + std::to_string(r.reached.size()) + " rounds=" + std::to_string(r.rounds) +
         " budget_hit=" + (r.budget_hit ? "true" : "false");
}

/// {meet, join} followed by the reduced iota generators.
inline std::vector<FnTable> reduced_generating_tables(const LatticeRef& lat) {
  std::vector<FnTable> base{meet_function(lat), join_function(lat)};
  for (const auto& spec : reduced_generator_set(*lat)) base.push_back(generator_table(lat, spec));
  return base;
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
  ClosureOptions closure;
  EnumerationBudget enumeration;
};

struct VerificationReport {
  enum class Status { pass, fail, budget };

  std::string lattice;
  std::size_t arity = 0;
  std::size_t id_count = 0;
  std::size_t generators = 0;
  ClosureReport closure;
  Status closure_status = Status::fail;
  bool decomposition_pass = false;
  std::vector<FnTable> missing;       // in Id^n(L), not reached
  std::vector<FnTable> extra;         // reached, not in Id^n(L)
  std::vector<FnTable> not_recovered; // decomposition disagrees with f

  bool agree() const {
    return closure_status == Status::budget ||
           (closure_status == Status::pass) == decomposition_pass;
  }
};

/// Checks in two independent ways that {meet, join} plus the reduced iota
/// generators produce exactly Id^n(L):
///   (A) their composition closure equals the enumerated class;
///   (B) every enumerated f is recovered by decompose_id_reduced.
inline VerificationReport verify_generation(const LatticeRef& lat, std::size_t n,
                                            const VerifyOptions& options = {}) {
  VerificationReport report;
  report.lattice = lat->name();
  report.arity = n;
  const auto id = enumerate_class(lat, n, FunctionClass::idempotent, options.enumeration);
  report.id_count = id.size();
  std::unordered_set<std::string> id_keys;
  for (const auto& f : id) id_keys.insert(f.key());

  const auto base = reduced_generating_tables(lat);
  report.generators = base.size();
  ClosureOptions copt = options.closure;
  copt.saturation_bound = id.size();
  report.closure = closure(lat, base, n, copt);
  for (const auto& g : report.closure.reached)
    if (!id_keys.count(g.key())) report.extra.push_back(g);
  for (const auto& f : id)
    if (!report.closure.contains(f)) report.missing.push_back(f);
  if (!report.extra.empty())
    report.closure_status = VerificationReport::Status::fail;
  else if (report.missing.empty())
    report.closure_status = VerificationReport::Status::pass;
  else if (report.closure.budget_hit)
    report.closure_status = VerificationReport::Status::budget;
  else
    report.closure_status = VerificationReport::Status::fail;

  for (const auto& f : id)
    if (to_table(decompose_id_reduced(f), lat) != f) report.not_recovered.push_back(f);
  report.decomposition_pass = report.not_recovered.empty();
  return report;
}

inline std::string format_verification(const VerificationReport& r) {
  auto status = [](VerificationReport::Status s) {
    switch (s) {
      case VerificationReport::Status::pass: return "pass";
      case VerificationReport::Status::fail: return "fail";
      case VerificationReport::Status::budget: return "budget";
    }
    return "fail";
  };
  std::string out = "lattice=" + r.lattice + " arity=" + std::to_string(r.arity) +
                    " id_count=" + std::to_string(r.id_count) +
                    " generators=" + std::to_string(r.generators) + "\n";
  out += format_closure_summary(r.closure) + "\n";
  out += std::string("A=") + status(r.closure_status) +
         " B=" + (r.decomposition_pass ? "pass" : "fail") + "\n";
  std::size_t k = 0;
  if (r.closure_status == VerificationReport::Status::fail)
    for (const auto& f : r.missing) out += format_function(f, "missing_" + std::to_string(++k));
  k = 0;
  for (const auto& f : r.extra) out += format_function(f, "extra_" + std::to_string(++k));
  k = 0;
  for (const auto& f : r.not_recovered)
    out += format_function(f, "not_recovered_" + std::to_string(++k));
  return out;
}

}  // namespace latclone

#endif  // LATCLONE_CLONE_HPP_
