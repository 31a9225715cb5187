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

#ifndef LATCLONE_GENERATORS_HPP_
#define LATCLONE_GENERATORS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "latclone/error.hpp"
#include "latclone/functable.hpp"
#include "latclone/lattice.hpp"

namespace latclone {

/// Parameters of one generator instance.
///
///   chi   : point = a (any arity >= 1), target = b
///   iota  : point = (a, b, c),          target = d
///   mu    : point = (a),                target = a
///   oplus : point = (a),                target = a
///
/// chi_{a,b}(x) = b ^ (\/x) when x <= a, and \/x otherwise; iota is the
/// ternary chi with a <= b <= c and a <= d <= c.
struct GeneratorSpec {
  enum class Kind { chi, iota, mu, oplus };

  Kind kind = Kind::chi;
  Tuple point;
  Element target = 0;

  static GeneratorSpec chi(Tuple a, Element b) { return {Kind::chi, std::move(a), b}; }
  static GeneratorSpec iota(Element a, Element b, Element c, Element d) {
    return {Kind::iota, Tuple{a, b, c}, d};
  }
  static GeneratorSpec mu(Element a) { return {Kind::mu, Tuple{a}, a}; }
  static GeneratorSpec oplus(Element a) { return {Kind::oplus, Tuple{a}, a}; }

  std::size_t arity() const {
    switch (kind) {
      case Kind::chi: return point.size();
      case Kind::iota: return 3;
      case Kind::mu: return 1;
      case Kind::oplus: return 2;
    }
    return 0;
  }

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// Throws InvalidSpec unless every parameter is an element of `lat` and the
/// kind-specific shape constraints hold.
inline void validate_spec(const Lattice& lat, const GeneratorSpec& spec) {
  for (Element e : spec.point)
    if (!lat.valid(e)) throw Error(Errc::InvalidSpec, "parameter outside the lattice");
  if (!lat.valid(spec.target)) throw Error(Errc::InvalidSpec, "parameter outside the lattice");
  switch (spec.kind) {
    case GeneratorSpec::Kind::chi:
      if (spec.point.empty()) throw Error(Errc::InvalidSpec, "chi needs a nonempty tuple");
      break;
    case GeneratorSpec::Kind::iota: {
      if (spec.point.size() != 3) throw Error(Errc::InvalidSpec, "iota needs (a,b,c)");
      const Element a = spec.point[0], b = spec.point[1], c = spec.point[2], d = spec.target;
      if (!lat.leq(a, b) || !lat.leq(b, c) || !lat.leq(a, d) || !lat.leq(d, c))
        throw Error(Errc::InvalidSpec, "iota needs a <= b <= c and a <= d <= c");
      break;
    }
    case GeneratorSpec::Kind::mu:
    case GeneratorSpec::Kind::oplus:
      if (spec.point.size() != 1 || spec.point[0] != spec.target)
        throw Error(Errc::InvalidSpec, "mu/oplus take a single element");
      break;
  }
}

/// Value of the generator at x. Parameters are assumed valid.
inline Element apply_generator(const Lattice& lat, const GeneratorSpec& spec,
                               std::span<const Element> x) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::chi:
    case GeneratorSpec::Kind::iota: {
      const Element top = join_all(lat, x);
      return leq_tuple(lat, x, spec.point) ? lat.meet(spec.target, top) : top;
    }
    case GeneratorSpec::Kind::mu:
      return lat.leq(x[0], spec.target) && x[0] != lat.top() ? lat.bottom() : lat.top();
    case GeneratorSpec::Kind::oplus:
      if (x[0] == lat.top() && x[1] == lat.top()) return lat.top();
      if (x[0] == lat.bottom() && x[1] == lat.bottom()) return lat.bottom();
      return spec.target;
  }
  return lat.bottom();
}

inline FnTable generator_table(const LatticeRef& lat, const GeneratorSpec& spec) {
  validate_spec(*lat, spec);
  const Lattice& l = *lat;
  return FnTable::tabulate(lat, spec.arity(),
                           [&](std::span<const Element> x) { return apply_generator(l, spec, x); });
}

// ---------------------------------------------------------------------------
// Constructors.

/// chi_{a,b} without the idempotency precondition. Only for building
/// counterexamples; prefer make_chi.
inline FnTable make_chi_unchecked(const LatticeRef& lat, const Tuple& a, Element b) {
  if (a.empty()) throw Error(Errc::InvalidSize, "chi needs a tuple of arity >= 1");
  return generator_table(lat, GeneratorSpec::chi(a, b));
}

/// chi_{a,b}; requires meet_all(a) <= b, which makes it an idempotent
/// aggregation function.
inline FnTable make_chi(const LatticeRef& lat, const Tuple& a, Element b) {
  if (a.empty()) throw Error(Errc::InvalidSize, "chi needs a tuple of arity >= 1");
  for (Element e : a)
    if (!lat->valid(e)) throw Error(Errc::IndexOutOfRange, "chi parameter outside the lattice");
  if (!lat->valid(b)) throw Error(Errc::IndexOutOfRange, "chi parameter outside the lattice");
  if (!lat->leq(meet_all(*lat, a), b))
    throw Error(Errc::PreconditionViolated,
                "meet of (" + format_tuple(*lat, a) + ") is not below " + lat->label(b));
  return make_chi_unchecked(lat, a, b);
}

namespace detail {

inline void require_iota_params(const Lattice& lat, Element a, Element b, Element c, Element d) {
  for (Element e : {a, b, c, d})
    if (!lat.valid(e)) throw Error(Errc::IndexOutOfRange, "iota parameter outside the lattice");
  if (!lat.leq(a, b) || !lat.leq(b, c) || !lat.leq(a, d) || !lat.leq(d, c))
    throw Error(Errc::PreconditionViolated,
                "iota(" + lat.label(a) + "," + lat.label(b) + "," + lat.label(c) + ";" +
                    lat.label(d) + ") needs a <= b <= c and a <= d <= c");
}

}  // namespace detail

inline FnTable make_iota(const LatticeRef& lat, Element a, Element b, Element c, Element d) {
  detail::require_iota_params(*lat, a, b, c, d);
  return make_chi(lat, Tuple{a, b, c}, d);
}

inline FnTable make_mu(const LatticeRef& lat, Element a) {
  if (!lat->valid(a)) throw Error(Errc::IndexOutOfRange, "mu parameter outside the lattice");
  return generator_table(lat, GeneratorSpec::mu(a));
}

inline FnTable make_oplus(const LatticeRef& lat, Element a) {
  if (!lat->valid(a)) throw Error(Errc::IndexOutOfRange, "oplus parameter outside the lattice");
  return generator_table(lat, GeneratorSpec::oplus(a));
}

// ---------------------------------------------------------------------------
// Majorants.

/// Join of every pool member g with g(a) == value.
inline FnTable h_majorant_at(std::span<const FnTable> pool, const Tuple& a, Element value) {
  std::optional<FnTable> acc;
  for (const auto& g : pool) {
    if (acc) detail::require_same(*acc, g);
    if (g(a) != value) continue;
    acc = acc ? pointwise_join(*acc, g) : g;
  }
  if (!acc) throw Error(Errc::EmptyAgreementSet, "no pool member takes the required value at a");
  return *acc;
}

/// The largest pool member agreeing with f at a, when the pool is closed
/// under joins; in general the join of all members agreeing with f at a.
inline FnTable h_majorant(std::span<const FnTable> pool, const FnTable& f, const Tuple& a) {
  if (!pool.empty()) detail::require_same(pool.front(), f);
  return h_majorant_at(pool, a, f(a));
}

namespace detail {

inline std::string describe_point(const FnTable& f, const Tuple& x) {
  return "f(" + format_tuple(f.lattice(), x) + ") = " + f.lattice().label(f(x));
}

/// Throws NotIdempotent naming a diagonal or monotonicity witness.
inline void require_idempotent_aggregation(const FnTable& f) {
  if (auto d = diagonal_violation(f))
    throw Error(Errc::NotIdempotent, describe_point(f, *d) + " but the diagonal requires " +
                                         f.lattice().label((*d)[0]));
  if (auto mv = monotonicity_violation(f))
    throw Error(Errc::NotIdempotent, "not monotone: " + describe_point(f, mv->first) +
                                         " is not below " + describe_point(f, mv->second));
}

inline void require_aggregation(const FnTable& f) {
  if (auto b = boundary_violation(f))
    throw Error(Errc::NotAggregation, "boundary fails: " + describe_point(f, *b));
  if (auto mv = monotonicity_violation(f))
    throw Error(Errc::NotAggregation, "not monotone: " + describe_point(f, mv->first) +
                                          " is not below " + describe_point(f, mv->second));
}

inline void require_point(const FnTable& f, const Tuple& a) {
  if (a.size() != f.arity())
    throw Error(Errc::ArityMismatch, "point of arity " + std::to_string(a.size()) +
                                         " for an arity-" + std::to_string(f.arity()) + " function");
  for (Element e : a)
    if (!f.lattice().valid(e)) throw Error(Errc::IndexOutOfRange, "point outside the lattice");
}

}  // namespace detail

/// Largest idempotent aggregation function agreeing with f at a.
inline FnTable h_id(const FnTable& f, const Tuple& a) {
  detail::require_idempotent_aggregation(f);
  detail::require_point(f, a);
  return make_chi(f.lattice_ref(), a, f(a));
}

/// Largest aggregation function agreeing with f at a: bottom at the bottom
/// tuple, f(a) on the rest of the down-set of a, top elsewhere.
inline FnTable h_agg(const FnTable& f, const Tuple& a) {
  detail::require_aggregation(f);
  detail::require_point(f, a);
  const Lattice& lat = f.lattice();
  const Element fa = f(a);
  return FnTable::tabulate(f.lattice_ref(), f.arity(), [&](std::span<const Element> x) {
    if (join_all(lat, x) == lat.bottom()) return lat.bottom();
    return leq_tuple(lat, x, a) ? fa : lat.top();
  });
}

// ---------------------------------------------------------------------------
// Reduced generators.

/// Splits iota_{(a,b,c),d} into iota_{(a,b,1),d} and iota_{(a,c,1),d}. On
/// triples x1 <= x2 <= x3 the original equals
///   first(x1, x2, x3) \/ second(x1, x3, x3).
inline std::pair<GeneratorSpec, GeneratorSpec> reduce_iota_pair(const Lattice& lat, Element a,
                                                                 Element b, Element c, Element d) {
  detail::require_iota_params(lat, a, b, c, d);
  return {GeneratorSpec::iota(a, b, lat.top(), d), GeneratorSpec::iota(a, c, lat.top(), d)};
}

/// Every iota_{(a,b,1),d} with a <= b and a <= d, ordered by (a, b, d).
inline std::vector<GeneratorSpec> reduced_generator_set(const Lattice& lat) {
  std::vector<GeneratorSpec> out;
  const auto m = static_cast<Element>(lat.size());
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b)
      for (Element d = 0; d < m; ++d)
        if (lat.leq(a, b) && lat.leq(a, d)) out.push_back(GeneratorSpec::iota(a, b, lat.top(), d));
  return out;
}

/// Number of reduced iota generators on the n-element chain: 1^2 + ... + n^2.
inline std::uint64_t count_iota_chain(std::int64_t n) {
  if (n < 2) throw Error(Errc::InvalidSize, "chain count needs n >= 2");
  const auto u = static_cast<std::uint64_t>(n);
  return u * (u + 1) * (2 * u + 1) / 6;
}

/// |G| for the n-element chain, including the two lattice operations.
inline std::uint64_t count_generators_chain(std::int64_t n) { return count_iota_chain(n) + 2; }

/// Number of reduced iota generators on M_{n-2}: n^2 + 4(n-2) + 1.
inline std::uint64_t count_iota_m(std::int64_t n) {
  if (n < 4) throw Error(Errc::InvalidSize, "M-lattice count needs n >= 4");
  const auto u = static_cast<std::uint64_t>(n);
  return u * u + 4 * (u - 2) + 1;
}

/// |G| for M_{n-2}, including the two lattice operations: n^2 + 4n - 5.
inline std::uint64_t count_generators_m(std::int64_t n) { return count_iota_m(n) + 2; }

// ---------------------------------------------------------------------------
// Text form: chi[a1,...,ak;b]  iota[a,b,c;d]  mu[a]  oplus[a]

inline std::string format_spec(const Lattice& lat, const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::chi:
      return "chi[" + format_tuple(lat, spec.point) + ";" + lat.label(spec.target) + "]";
    case GeneratorSpec::Kind::iota:
      return "iota[" + format_tuple(lat, spec.point) + ";" + lat.label(spec.target) + "]";
    case GeneratorSpec::Kind::mu:
      return "mu[" + lat.label(spec.target) + "]";
    case GeneratorSpec::Kind::oplus:
      return "oplus[" + lat.label(spec.target) + "]";
  }
  return {};
}

/// Parses the text form. Throws SyntaxError for malformed text and
/// InvalidSpec for unknown labels or violated parameter constraints.
inline GeneratorSpec parse_spec(const Lattice& lat, std::string_view text) {
  const auto open = text.find('[');
  if (open == std::string_view::npos || text.empty() || text.back() != ']')
    throw Error(Errc::SyntaxError, "generator '" + std::string(text) + "' lacks [...]");
  const std::string_view kind = text.substr(0, open);
  const std::string_view body = text.substr(open + 1, text.size() - open - 2);
  auto element = [&](std::string_view label) {
    auto e = lat.find(label);
    if (!e) throw Error(Errc::InvalidSpec, "unknown label '" + std::string(label) + "'");
    return *e;
  };
  auto split = [](std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
      auto pos = s.find(sep, start);
      parts.push_back(s.substr(start, pos - start));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return parts;
  };
  GeneratorSpec spec;
  if (kind == "mu" || kind == "oplus") {
    if (body.find_first_of(",;") != std::string_view::npos)
      throw Error(Errc::SyntaxError, "'" + std::string(text) + "' takes one label");
    spec = kind == "mu" ? GeneratorSpec::mu(element(body)) : GeneratorSpec::oplus(element(body));
  } else if (kind == "chi" || kind == "iota") {
    const auto halves = split(body, ';');
    if (halves.size() != 2)
      throw Error(Errc::SyntaxError, "'" + std::string(text) + "' needs exactly one ';'");
    Tuple point;
    for (auto label : split(halves[0], ',')) point.push_back(element(label));
    spec = {kind == "chi" ? GeneratorSpec::Kind::chi : GeneratorSpec::Kind::iota, point,
            element(halves[1])};
  } else {
    throw Error(Errc::SyntaxError, "unknown generator kind '" + std::string(kind) + "'");
  }
  validate_spec(lat, spec);
  return spec;
}

}  // namespace latclone

#endif  // LATCLONE_GENERATORS_HPP_
