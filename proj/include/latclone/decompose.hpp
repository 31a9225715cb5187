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

#ifndef LATCLONE_DECOMPOSE_HPP_
#define LATCLONE_DECOMPOSE_HPP_

#include <cstddef>
#include <vector>

#include "latclone/error.hpp"
#include "latclone/functable.hpp"
#include "latclone/generators.hpp"
#include "latclone/lattice.hpp"
#include "latclone/terms.hpp"

// Constructive decompositions of aggregation functions into terms over the
// lattice operations and generator applications.

namespace latclone {

/// Term for h_agg(f, a): the join of mu_{a_i}(x_i) over the coordinates
/// with a_i != top, joined with x1 (+) x2 (+) ... (+) xn for (+) = oplus_{f(a)}
/// nested to the left.
inline Term h_agg_term(const FnTable& f, const Tuple& a) {
  detail::require_aggregation(f);
  detail::require_point(f, a);
  const std::size_t n = f.arity();
  if (n < 2) throw Error(Errc::UnsupportedArity, "the mu/oplus form needs arity >= 2");
  const Lattice& lat = f.lattice();
  const Element fa = f(a);

  std::vector<Term> operands;
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != lat.top())
      operands.push_back(Term::apply(GeneratorSpec::mu(a[i]), {Term::var(i + 1, n)}));
  Term sum = Term::var(1, n);
  for (std::size_t i = 2; i <= n; ++i)
    sum = Term::apply(GeneratorSpec::oplus(fa), {sum, Term::var(i, n)});
  operands.push_back(sum);
  return Term::join_of(operands);
}

/// Join over i of iota_{(^a, a_i, va), f(a)}(^x, x_i, vx); its table is
/// h_id(f, a).
inline Term majorant_term(const FnTable& f, const Tuple& a) {
  detail::require_idempotent_aggregation(f);
  detail::require_point(f, a);
  const Lattice& lat = f.lattice();
  const std::size_t n = f.arity();
  const Element lo = meet_all(lat, a);
  const Element hi = join_all(lat, a);
  const Element fa = f(a);
  const Term mx = Term::meet_of_vars(n);
  const Term jx = Term::join_of_vars(n);
  std::vector<Term> parts;
  for (std::size_t i = 0; i < n; ++i)
    parts.push_back(
        Term::apply(GeneratorSpec::iota(lo, a[i], hi, fa), {mx, Term::var(i + 1, n), jx}));
  return Term::join_of(parts);
}

/// f as the meet, over every a in L^n (lexicographic), of majorant_term(f, a).
inline Term decompose_id(const FnTable& f) {
  detail::require_idempotent_aggregation(f);
  const std::size_t m = f.lattice().size();
  std::vector<Term> outer;
  outer.reserve(f.cells());
  Tuple a(f.arity(), 0);
  do outer.push_back(majorant_term(f, a));
  while (next_tuple(a, m));
  return Term::meet_of(outer);
}

/// As decompose_id, with every iota_{(p,q,r),d}(u, v, w) replaced by
///   iota_{(p,q,1),d}(u, v, w) v iota_{(p,r,1),d}(u, w, w),
/// which is exact because u = ^x <= v = x_i <= w = vx.
inline Term decompose_id_reduced(const FnTable& f) {
  detail::require_idempotent_aggregation(f);
  const Lattice& lat = f.lattice();
  const std::size_t n = f.arity();
  const std::size_t m = lat.size();
  const Term mx = Term::meet_of_vars(n);
  const Term jx = Term::join_of_vars(n);
  std::vector<Term> outer;
  Tuple a(n, 0);
  do {
    const Element lo = meet_all(lat, a);
    const Element hi = join_all(lat, a);
    const Element fa = f(a);
    const auto tail = Term::apply(GeneratorSpec::iota(lo, hi, lat.top(), fa), {mx, jx, jx});
    std::vector<Term> parts;
    for (std::size_t i = 0; i < n; ++i) {
      const auto head =
          Term::apply(GeneratorSpec::iota(lo, a[i], lat.top(), fa), {mx, Term::var(i + 1, n), jx});
      parts.push_back(Term::join(head, tail));
    }
    outer.push_back(Term::join_of(parts));
  } while (next_tuple(a, m));
  return Term::meet_of(outer);
}

/// Optional post-pass: flattens maximal meet (join) chains and drops every
/// operand whose table lies above (below) another kept operand, keeping the
/// first of equal ones. The table of the term is unchanged.
inline Term simplify_dominated(const Term& t, const LatticeRef& lat) {
  if (t.kind() == Term::Kind::var) return t;
  if (t.kind() == Term::Kind::apply) {
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(simplify_dominated(a, lat));
    return Term::apply(t.spec(), std::move(args));
  }
  const Term::Kind kind = t.kind();
  std::vector<Term> operands;
  auto flatten = [&](auto&& self, const Term& node) -> void {
    if (node.kind() == kind) {
      self(self, node.args()[0]);
      self(self, node.args()[1]);
    } else {
      operands.push_back(simplify_dominated(node, lat));
    }
  };
  flatten(flatten, t);

  std::vector<FnTable> tables;
  for (const auto& o : operands) tables.push_back(to_table(o, lat));
  // For a meet, operand j is redundant if some other kept operand k has
  // table(k) <= table(j); ties keep the earlier one.
  auto redundant_against = [&](std::size_t j, std::size_t k) {
    const bool below = kind == Term::Kind::meet ? leq_pointwise(tables[k], tables[j])
                                                : leq_pointwise(tables[j], tables[k]);
    if (!below) return false;
    return tables[j] != tables[k] || k < j;
  };
  std::vector<Term> kept;
  for (std::size_t j = 0; j < operands.size(); ++j) {
    bool drop = false;
    for (std::size_t k = 0; k < operands.size() && !drop; ++k)
      if (k != j && redundant_against(j, k)) drop = true;
    if (!drop) kept.push_back(operands[j]);
  }
  return kind == Term::Kind::meet ? Term::meet_of(kept) : Term::join_of(kept);
}

}  // namespace latclone

#endif  // LATCLONE_DECOMPOSE_HPP_
