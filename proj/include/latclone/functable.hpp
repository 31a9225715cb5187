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

#ifndef LATCLONE_FUNCTABLE_HPP_
#define LATCLONE_FUNCTABLE_HPP_

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "latclone/error.hpp"
#include "latclone/lattice.hpp"

namespace latclone {

/// A total n-ary function L^n -> L stored as m^n values in tuple-index order.
class FnTable {
 public:
  FnTable(LatticeRef lat, std::size_t arity, std::vector<Element> values)
      : lat_(std::move(lat)), arity_(arity), values_(std::move(values)) {
    if (!lat_) throw Error(Errc::InvalidInput, "function without a lattice");
    if (arity_ == 0) throw Error(Errc::InvalidSize, "function arity must be >= 1");
    if (values_.size() != checked_power(lat_->size(), arity_))
      throw Error(Errc::InvalidSize, "table has " + std::to_string(values_.size()) +
                                         " values, expected m^n");
    for (Element v : values_)
      if (!lat_->valid(v)) throw Error(Errc::IndexOutOfRange, "value outside the lattice");
  }

  /// Builds the table of `fn`, called once per tuple in index order.
  template <class Fn>
  static FnTable tabulate(LatticeRef lat, std::size_t arity, Fn&& fn) {
    if (arity == 0) throw Error(Errc::InvalidSize, "function arity must be >= 1");
    const std::size_t m = lat->size();
    std::vector<Element> values;
    values.reserve(checked_power(m, arity));
    Tuple x(arity, 0);
    do {
      values.push_back(static_cast<Element>(fn(std::span<const Element>(x))));
    } while (next_tuple(x, m));
    return FnTable(std::move(lat), arity, std::move(values));
  }

  const Lattice& lattice() const { return *lat_; }
  const LatticeRef& lattice_ref() const { return lat_; }
  std::size_t arity() const { return arity_; }
  std::size_t cells() const { return values_.size(); }
  std::span<const Element> values() const { return values_; }

  Element at(std::size_t index) const { return values_.at(index); }

  Element operator()(std::span<const Element> x) const {
    if (x.size() != arity_)
      throw Error(Errc::ArityMismatch, "evaluating an arity-" + std::to_string(arity_) +
                                           " function on " + std::to_string(x.size()) + " arguments");
    return values_[tuple_index(x, lat_->size())];
  }
  Element operator()(std::initializer_list<Element> x) const {
    return (*this)(std::span<const Element>(x.begin(), x.size()));
  }

  /// Canonical identity (arity, value vector) as a byte string.
  std::string key() const {
    std::string out;
    out.reserve(2 + 2 * values_.size());
    out.push_back(static_cast<char>(arity_ & 0xff));
    out.push_back(static_cast<char>((arity_ >> 8) & 0xff));
    for (Element v : values_) {
      out.push_back(static_cast<char>(v & 0xff));
      out.push_back(static_cast<char>(v >> 8));
    }
    return out;
  }

  friend bool operator==(const FnTable& a, const FnTable& b) {
    return a.arity_ == b.arity_ && a.values_ == b.values_ && same_lattice(a.lat_, b.lat_);
  }

 private:
  LatticeRef lat_;
  std::size_t arity_;
  std::vector<Element> values_;
};

namespace detail {

inline void require_same(const FnTable& f, const FnTable& g) {
  if (!same_lattice(f.lattice_ref(), g.lattice_ref()))
    throw Error(Errc::LatticeMismatch, "functions on different lattices");
  if (f.arity() != g.arity())
    throw Error(Errc::ArityMismatch, "arity " + std::to_string(f.arity()) + " vs " +
                                         std::to_string(g.arity()));
}

/// Immediate predecessors of every tuple in the product order.
inline std::vector<std::vector<std::size_t>> tuple_lower_covers(const Lattice& lat,
                                                                std::size_t n) {
  const std::size_t m = lat.size();
  const std::size_t cells = checked_power(m, n);
  std::vector<std::size_t> weight(n, 1);
  for (std::size_t i = n; i-- > 1;) weight[i - 1] = weight[i] * m;
  std::vector<std::vector<std::size_t>> preds(cells);
  Tuple x(n, 0);
  std::size_t k = 0;
  do {
    for (std::size_t i = 0; i < n; ++i)
      for (Element c : lat.lower_covers(x[i])) preds[k].push_back(k - (x[i] - c) * weight[i]);
    ++k;
  } while (next_tuple(x, m));
  return preds;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Named functions.

/// p_i^n with 1-based i.
inline FnTable projection(LatticeRef lat, std::size_t n, std::size_t i) {
  if (n == 0 || i == 0 || i > n)
    throw Error(Errc::IndexOutOfRange,
                "projection p_" + std::to_string(i) + "^" + std::to_string(n));
  return FnTable::tabulate(std::move(lat), n, [i](auto x) { return x[i - 1]; });
}

/// n-ary meet, the binary lattice operation by default.
inline FnTable meet_function(LatticeRef lat, std::size_t n = 2) {
  const Lattice& l = *lat;
  return FnTable::tabulate(std::move(lat), n, [&l](auto x) { return meet_all(l, x); });
}

inline FnTable join_function(LatticeRef lat, std::size_t n = 2) {
  const Lattice& l = *lat;
  return FnTable::tabulate(std::move(lat), n, [&l](auto x) { return join_all(l, x); });
}

inline FnTable constant_function(LatticeRef lat, std::size_t n, Element c) {
  if (!lat->valid(c)) throw Error(Errc::IndexOutOfRange, "constant outside the lattice");
  return FnTable::tabulate(std::move(lat), n, [c](auto) { return c; });
}

/// f(g_1, ..., g_k) as an n-ary function.
inline FnTable compose(const FnTable& f, std::span<const FnTable> gs) {
  if (gs.size() != f.arity())
    throw Error(Errc::ArityMismatch, "composing an arity-" + std::to_string(f.arity()) +
                                         " function with " + std::to_string(gs.size()) +
                                         " arguments");
  if (gs.empty()) throw Error(Errc::ArityMismatch, "empty argument list");
  for (const auto& g : gs) {
    if (!same_lattice(f.lattice_ref(), g.lattice_ref()))
      throw Error(Errc::LatticeMismatch, "composition across lattices");
    if (g.arity() != gs[0].arity())
      throw Error(Errc::ArityMismatch, "inner functions of different arities");
  }
  const std::size_t m = f.lattice().size();
  const std::size_t cells = gs[0].cells();
  std::vector<Element> out(cells);
  for (std::size_t k = 0; k < cells; ++k) {
    std::size_t idx = 0;
    for (const auto& g : gs) idx = idx * m + g.values()[k];
    out[k] = f.values()[idx];
  }
  return FnTable(f.lattice_ref(), gs[0].arity(), std::move(out));
}

inline FnTable compose(const FnTable& f, std::initializer_list<FnTable> gs) {
  return compose(f, std::span<const FnTable>(gs.begin(), gs.size()));
}

// ---------------------------------------------------------------------------
// Predicates. The *_violation functions return a witness, or nothing when the
// property holds.

/// A pair x <= y (covering in the product order) with f(x) not <= f(y).
inline std::optional<std::pair<Tuple, Tuple>> monotonicity_violation(const FnTable& f) {
  const Lattice& lat = f.lattice();
  const auto preds = detail::tuple_lower_covers(lat, f.arity());
  for (std::size_t k = 0; k < preds.size(); ++k)
    for (std::size_t p : preds[k])
      if (!lat.leq(f.at(p), f.at(k)))
        return std::pair{tuple_at(p, f.arity(), lat.size()), tuple_at(k, f.arity(), lat.size())};
  return std::nullopt;
}

inline std::optional<Tuple> boundary_violation(const FnTable& f) {
  const Lattice& lat = f.lattice();
  if (f.at(0) != lat.bottom()) return Tuple(f.arity(), lat.bottom());
  if (f.at(f.cells() - 1) != lat.top()) return Tuple(f.arity(), lat.top());
  return std::nullopt;
}

/// Some diagonal tuple (x,...,x) with f(x,...,x) != x.
inline std::optional<Tuple> diagonal_violation(const FnTable& f) {
  for (Element x = 0; x < f.lattice().size(); ++x) {
    Tuple d(f.arity(), x);
    if (f(d) != x) return d;
  }
  return std::nullopt;
}

/// Some tuple whose value escapes [meet_all(x), join_all(x)].
inline std::optional<Tuple> intermediate_violation(const FnTable& f) {
  const Lattice& lat = f.lattice();
  Tuple x(f.arity(), 0);
  std::size_t k = 0;
  do {
    const Element v = f.at(k++);
    if (!lat.leq(meet_all(lat, x), v) || !lat.leq(v, join_all(lat, x))) return x;
  } while (next_tuple(x, lat.size()));
  return std::nullopt;
}

inline bool is_monotone(const FnTable& f) { return !monotonicity_violation(f); }
inline bool is_boundary(const FnTable& f) { return !boundary_violation(f); }
inline bool is_aggregation(const FnTable& f) { return is_boundary(f) && is_monotone(f); }
inline bool is_idempotent(const FnTable& f) { return !diagonal_violation(f); }
inline bool is_intermediate(const FnTable& f) { return !intermediate_violation(f); }

/// The same predicates over raw value vectors of one lattice and arity, with
/// per-tuple data precomputed. For checking many tables in bulk.
class TableChecker {
 public:
  TableChecker(const Lattice& lat, std::size_t n)
      : lat_(lat), preds_(detail::tuple_lower_covers(lat, n)) {
    const std::size_t m = lat.size();
    lo_.resize(preds_.size());
    hi_.resize(preds_.size());
    Tuple x(n, 0);
    std::size_t k = 0;
    do {
      lo_[k] = meet_all(lat, x);
      hi_[k] = join_all(lat, x);
      ++k;
    } while (next_tuple(x, m));
    for (Element e = 0; e < m; ++e) diagonal_.push_back(tuple_index(Tuple(n, e), m));
  }

  std::size_t cells() const { return preds_.size(); }

  bool monotone(std::span<const Element> v) const {
    for (std::size_t k = 0; k < preds_.size(); ++k)
      for (std::size_t p : preds_[k])
        if (!lat_.leq(v[p], v[k])) return false;
    return true;
  }
  bool boundary(std::span<const Element> v) const {
    return v.front() == lat_.bottom() && v.back() == lat_.top();
  }
  bool aggregation(std::span<const Element> v) const { return boundary(v) && monotone(v); }
  bool idempotent(std::span<const Element> v) const {
    for (std::size_t e = 0; e < diagonal_.size(); ++e)
      if (v[diagonal_[e]] != e) return false;
    return true;
  }
  bool intermediate(std::span<const Element> v) const {
    for (std::size_t k = 0; k < v.size(); ++k)
      if (!lat_.leq(lo_[k], v[k]) || !lat_.leq(v[k], hi_[k])) return false;
    return true;
  }

 private:
  const Lattice& lat_;
  std::vector<std::vector<std::size_t>> preds_;
  std::vector<Element> lo_;
  std::vector<Element> hi_;
  std::vector<std::size_t> diagonal_;
};

// ---------------------------------------------------------------------------
// The pointwise lattice of n-ary functions.

inline FnTable pointwise_join(const FnTable& f, const FnTable& g) {
  detail::require_same(f, g);
  std::vector<Element> out(f.cells());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = f.lattice().join(f.at(k), g.at(k));
  return FnTable(f.lattice_ref(), f.arity(), std::move(out));
}

inline FnTable pointwise_meet(const FnTable& f, const FnTable& g) {
  detail::require_same(f, g);
  std::vector<Element> out(f.cells());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = f.lattice().meet(f.at(k), g.at(k));
  return FnTable(f.lattice_ref(), f.arity(), std::move(out));
}

inline bool leq_pointwise(const FnTable& f, const FnTable& g) {
  detail::require_same(f, g);
  for (std::size_t k = 0; k < f.cells(); ++k)
    if (!f.lattice().leq(f.at(k), g.at(k))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration of function classes.

enum class FunctionClass { aggregation, idempotent, monotone };

inline FunctionClass parse_function_class(std::string_view s) {
  if (s == "aggregation") return FunctionClass::aggregation;
  if (s == "idempotent") return FunctionClass::idempotent;
  if (s == "monotone") return FunctionClass::monotone;
  throw Error(Errc::InvalidInput, "unknown function class '" + std::string(s) + "'");
}

struct EnumerationBudget {
  std::size_t max_cells = 64;
  std::size_t max_results = 10'000'000;
};

namespace detail {

/// Per-tuple data shared by enumeration and sampling. Candidates at tuple k
/// are values v with f(p) <= v for every assigned predecessor p, clipped to
/// the intermediate interval for the idempotent class and pinned at the two
/// boundary tuples for the aggregation class.
class ClassSearch {
 public:
  ClassSearch(const Lattice& lat, std::size_t n, FunctionClass cls)
      : lat_(lat), cls_(cls), preds_(tuple_lower_covers(lat, n)) {
    const std::size_t m = lat.size();
    lo_.resize(preds_.size());
    hi_.resize(preds_.size());
    Tuple x(n, 0);
    std::size_t k = 0;
    do {
      lo_[k] = meet_all(lat, x);
      hi_[k] = join_all(lat, x);
      ++k;
    } while (next_tuple(x, m));
  }

  std::size_t cells() const { return preds_.size(); }

  bool admissible(std::size_t k, Element v, std::span<const Element> assigned) const {
    switch (cls_) {
      case FunctionClass::idempotent:
        if (!lat_.leq(lo_[k], v) || !lat_.leq(v, hi_[k])) return false;
        break;
      case FunctionClass::aggregation:
        if (k == 0 && v != lat_.bottom()) return false;
        if (k + 1 == cells() && v != lat_.top()) return false;
        break;
      case FunctionClass::monotone:
        break;
    }
    for (std::size_t p : preds_[k])
      if (!lat_.leq(assigned[p], v)) return false;
    return true;
  }

 private:
  const Lattice& lat_;
  FunctionClass cls_;
  std::vector<std::vector<std::size_t>> preds_;
  std::vector<Element> lo_;
  std::vector<Element> hi_;
};

}  // namespace detail

/// Calls `visit(values)` for every member of the class, in lexicographic
/// order of value vectors. Returns the number of members.
template <class Visitor>
std::size_t for_each_in_class(const LatticeRef& lat, std::size_t n, FunctionClass cls,
                              Visitor&& visit, EnumerationBudget budget = {}) {
  if (n == 0) throw Error(Errc::InvalidSize, "arity must be >= 1");
  std::size_t cells = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (cells > budget.max_cells / lat->size())
      throw Error(Errc::BudgetExceeded, std::to_string(lat->size()) + "^" + std::to_string(n) +
                                            " table cells exceed the limit of " +
                                            std::to_string(budget.max_cells));
    cells *= lat->size();
  }
  detail::ClassSearch search(*lat, n, cls);
  const std::size_t m = lat->size();
  std::vector<Element> values(cells, 0);
  std::size_t count = 0;

  // Iterative depth-first search; values[k] holds the candidate being tried.
  std::size_t k = 0;
  std::vector<int> next(cells, 0);
  while (true) {
    bool placed = false;
    while (next[k] < static_cast<int>(m)) {
      const auto v = static_cast<Element>(next[k]++);
      if (search.admissible(k, v, values)) {
        values[k] = v;
        placed = true;
        break;
      }
    }
    if (placed) {
      if (k + 1 == cells) {
        if (++count > budget.max_results)
          throw Error(Errc::BudgetExceeded, "more than " + std::to_string(budget.max_results) +
                                                " functions");
        visit(std::span<const Element>(values));
        continue;
      }
      ++k;
      next[k] = 0;
      continue;
    }
    if (k == 0) break;
    --k;
  }
  return count;
}

inline std::vector<FnTable> enumerate_class(const LatticeRef& lat, std::size_t n,
                                            FunctionClass cls, EnumerationBudget budget = {}) {
  std::vector<FnTable> out;
  for_each_in_class(
      lat, n, cls,
      [&](std::span<const Element> v) {
        out.emplace_back(lat, n, std::vector<Element>(v.begin(), v.end()));
      },
      budget);
  return out;
}

inline std::size_t count_class(const LatticeRef& lat, std::size_t n, FunctionClass cls,
                               EnumerationBudget budget = {}) {
  return for_each_in_class(lat, n, cls, [](std::span<const Element>) {}, budget);
}

/// One member of the class, choosing uniformly among admissible values at
/// each tuple. Every partial assignment extends (the top value, or the join
/// of the tuple for the idempotent class, is always admissible), so no
/// backtracking is needed. Not uniform over the class.
template <class Rng>
FnTable sample_class(const LatticeRef& lat, std::size_t n, FunctionClass cls, Rng& rng) {
  if (n == 0) throw Error(Errc::InvalidSize, "arity must be >= 1");
  detail::ClassSearch search(*lat, n, cls);
  std::vector<Element> values(search.cells(), 0);
  std::vector<Element> options;
  for (std::size_t k = 0; k < values.size(); ++k) {
    options.clear();
    for (Element v = 0; v < lat->size(); ++v)
      if (search.admissible(k, v, values)) options.push_back(v);
    if (options.empty()) throw Error(Errc::InvalidInput, "no admissible value while sampling");
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    values[k] = options[pick(rng)];
  }
  return FnTable(lat, n, std::move(values));
}

// ---------------------------------------------------------------------------
// Text format:
//
//   function <name> arity <n> lattice <lattice-name>
//   <label> ... <label> -> <label>      (m^n lines, any order)
//   end

struct NamedFunction {
  std::string name;
  FnTable table;
};

inline std::string format_function(const FnTable& f, const std::string& name) {
  const Lattice& lat = f.lattice();
  std::string out = "function " + name + " arity " + std::to_string(f.arity()) + " lattice " +
                    lat.name() + "\n";
  Tuple x(f.arity(), 0);
  std::size_t k = 0;
  do {
    out += format_tuple(lat, x, " ") + " -> " + lat.label(f.at(k++)) + "\n";
  } while (next_tuple(x, lat.size()));
  out += "end\n";
  return out;
}

namespace detail {

inline std::optional<NamedFunction> parse_function_block(std::istream& in, const LatticeRef& lat,
                                                         std::size_t& lineno) {
  const std::size_t m = lat->size();
  auto fail = [&](const std::string& what) -> void {
    throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": " + what);
  };
  std::string line;
  std::optional<std::string> name;
  std::size_t n = 0;
  std::vector<Element> values;
  std::vector<char> seen;
  std::size_t filled = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    if (!name) {
      if (tok.size() != 6 || tok[0] != "function" || tok[2] != "arity" || tok[4] != "lattice")
        fail("expected 'function <name> arity <n> lattice <lattice-name>'");
      try {
        std::size_t used = 0;
        const long parsed = std::stol(tok[3], &used);
        if (used != tok[3].size() || parsed < 1) throw std::invalid_argument("arity");
        n = static_cast<std::size_t>(parsed);
      } catch (const std::exception&) {
        fail("bad arity '" + tok[3] + "'");
      }
      if (tok[5] != lat->name())
        throw Error(Errc::LatticeMismatch, "function '" + tok[1] + "' is defined on lattice '" +
                                               tok[5] + "', not '" + lat->name() + "'");
      name = tok[1];
      const std::size_t cells = checked_power(m, n, std::size_t{1} << 24);
      values.assign(cells, 0);
      seen.assign(cells, 0);
      continue;
    }
    if (tok.size() == 1 && tok[0] == "end") {
      if (filled != values.size()) {
        for (std::size_t k = 0; k < seen.size(); ++k)
          if (!seen[k]) fail("missing tuple (" + format_tuple(*lat, tuple_at(k, n, m)) + ")");
      }
      return NamedFunction{*name, FnTable(lat, n, std::move(values))};
    }
    if (tok.size() != n + 2 || tok[n] != "->")
      fail("expected " + std::to_string(n) + " labels, '->' and a value");
    Tuple x(n);
    for (std::size_t i = 0; i <= n; ++i) {
      const std::string& label = tok[i == n ? n + 1 : i];
      auto e = lat->find(label);
      if (!e) fail("unknown label '" + label + "'");
      if (i < n) x[i] = *e;
      else {
        const std::size_t k = tuple_index(x, m);
        if (seen[k]) fail("duplicate tuple (" + format_tuple(*lat, x) + ")");
        seen[k] = 1;
        values[k] = *e;
        ++filled;
      }
    }
  }
  if (name) throw Error(Errc::ParseError, "missing 'end' for function '" + *name + "'");
  return std::nullopt;
}

}  // namespace detail

/// Reads exactly one function block.
inline NamedFunction parse_function(std::istream& in, const LatticeRef& lat) {
  std::size_t lineno = 0;
  auto f = detail::parse_function_block(in, lat, lineno);
  if (!f) throw Error(Errc::ParseError, "no function block");
  return std::move(*f);
}

inline NamedFunction parse_function(const std::string& text, const LatticeRef& lat) {
  std::istringstream in(text);
  return parse_function(in, lat);
}

/// Reads every function block until end of input.
inline std::vector<NamedFunction> parse_functions(std::istream& in, const LatticeRef& lat) {
  std::vector<NamedFunction> out;
  std::size_t lineno = 0;
  while (auto f = detail::parse_function_block(in, lat, lineno)) out.push_back(std::move(*f));
  return out;
}

inline NamedFunction load_function_file(const std::string& path, const LatticeRef& lat) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot open '" + path + "'");
  return parse_function(in, lat);
}

}  // namespace latclone

#endif  // LATCLONE_FUNCTABLE_HPP_
