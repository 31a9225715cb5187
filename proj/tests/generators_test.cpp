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

#include <gtest/gtest.h>

#include <random>
#include <tuple>

#include "latclone/generators.hpp"
#include "oracles.hpp"

namespace latclone {
namespace {

template <class Fn>
void expect_error(Errc code, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << errc_name(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(Chi, Examples) {
  auto c3 = chain(3);
  const auto chi = make_chi(c3, {1, 2}, 1);
  EXPECT_EQ(chi({0, 2}), 1);
  EXPECT_EQ(chi({2, 0}), 2);
  for (auto lat : oracle::test_lattices())
    for (std::size_t n = 1; n <= 3; ++n)
      EXPECT_EQ(make_chi(lat, Tuple(n, lat->top()), lat->top()), join_function(lat, n));
  expect_error(Errc::PreconditionViolated, [&] { make_chi(c3, {1, 2}, 0); });
  expect_error(Errc::IndexOutOfRange, [&] { make_chi(c3, {1, 3}, 1); });
  expect_error(Errc::InvalidSize, [&] { make_chi(c3, {}, 1); });
}

TEST(Chi, MatchesDirectFormula) {
  for (auto lat : {chain(3), m_lattice(2), n5()}) {
    for (const auto& a : oracle::all_tuples(lat->size(), 2))
      for (Element b = 0; b < lat->size(); ++b) {
        const auto chi = make_chi_unchecked(lat, a, b);
        for (const auto& x : oracle::all_tuples(lat->size(), 2))
          EXPECT_EQ(chi(x), oracle::chi(*lat, a, b, x));
      }
  }
}

TEST(Chi, IdempotentWhenPreconditionHolds) {
  for (auto lat : {chain(3), m_lattice(2), n5()})
    for (std::size_t n = 1; n <= 2; ++n)
      for (const auto& a : oracle::all_tuples(lat->size(), n))
        for (Element b = 0; b < lat->size(); ++b) {
          const auto chi = make_chi_unchecked(lat, a, b);
          const bool admissible = lat->leq(meet_all(*lat, a), b);
          EXPECT_EQ(is_idempotent(chi), admissible);
          if (admissible) {
            EXPECT_TRUE(is_aggregation(chi));
          }
        }
}

TEST(Iota, Examples) {
  auto c3 = chain(3);
  EXPECT_EQ(make_iota(c3, 0, 1, 2, 1)({0, 1, 2}), 1);
  for (auto lat : oracle::test_lattices())
    EXPECT_EQ(make_iota(lat, lat->bottom(), lat->bottom(), lat->top(), lat->top()),
              join_function(lat, 3));
  expect_error(Errc::PreconditionViolated, [&] { make_iota(c3, 0, 2, 1, 1); });
  expect_error(Errc::PreconditionViolated, [&] { make_iota(c3, 1, 1, 2, 0); });
}

TEST(MuOplus, Examples) {
  auto c3 = chain(3);
  const auto mu = make_mu(c3, 1);
  EXPECT_EQ(mu({0}), 0);
  EXPECT_EQ(mu({1}), 0);
  EXPECT_EQ(mu({2}), 2);
  const auto oplus = make_oplus(c3, 1);
  EXPECT_EQ(oplus({0, 2}), 1);
  EXPECT_EQ(oplus({2, 2}), 2);
  EXPECT_EQ(oplus({0, 0}), 0);
  for (auto lat : oracle::test_lattices()) {
    const auto top = make_mu(lat, lat->top());
    for (Element x = 0; x < lat->size(); ++x)
      EXPECT_EQ(top({x}), x == lat->top() ? lat->top() : lat->bottom());
    for (Element a = 0; a < lat->size(); ++a) {
      EXPECT_TRUE(is_aggregation(make_mu(lat, a)));
      EXPECT_TRUE(is_aggregation(make_oplus(lat, a)));
    }
  }
}

TEST(Spec, Validation) {
  auto c3 = chain(3);
  expect_error(Errc::InvalidSpec, [&] { generator_table(c3, GeneratorSpec::iota(0, 2, 1, 1)); });
  expect_error(Errc::InvalidSpec, [&] { generator_table(c3, GeneratorSpec::chi({0, 5}, 1)); });
  expect_error(Errc::InvalidSpec, [&] { generator_table(c3, GeneratorSpec::chi({}, 1)); });
  EXPECT_EQ(GeneratorSpec::iota(0, 1, 2, 1).arity(), 3u);
  EXPECT_EQ(GeneratorSpec::mu(1).arity(), 1u);
  EXPECT_EQ(GeneratorSpec::oplus(1).arity(), 2u);
  EXPECT_EQ(GeneratorSpec::chi({0, 1, 0, 1}, 1).arity(), 4u);
}

TEST(Spec, TextRoundTrip) {
  auto d = m_lattice(2);
  const std::vector<GeneratorSpec> specs = {
      GeneratorSpec::chi({1, 2}, 1), GeneratorSpec::iota(0, 1, 3, 1), GeneratorSpec::mu(2),
      GeneratorSpec::oplus(0)};
  EXPECT_EQ(format_spec(*d, specs[0]), "chi[c1,c2;c1]");
  EXPECT_EQ(format_spec(*d, specs[1]), "iota[0,c1,1;c1]");
  EXPECT_EQ(format_spec(*d, specs[2]), "mu[c2]");
  EXPECT_EQ(format_spec(*d, specs[3]), "oplus[0]");
  for (const auto& s : specs) EXPECT_EQ(parse_spec(*d, format_spec(*d, s)), s);
  expect_error(Errc::SyntaxError, [&] { parse_spec(*d, "iota[0,c1,1]"); });
  expect_error(Errc::SyntaxError, [&] { parse_spec(*d, "mu c1"); });
  expect_error(Errc::InvalidSpec, [&] { parse_spec(*d, "mu[c9]"); });
  expect_error(Errc::InvalidSpec, [&] { parse_spec(*d, "iota[c1,0,1;c1]"); });
}

TEST(Majorant, TwoChainExample) {
  auto c2 = chain(2);
  const auto pool = enumerate_class(c2, 2, FunctionClass::idempotent);
  const auto h = h_majorant(pool, meet_function(c2), {0, 1});
  EXPECT_EQ(h, pointwise_join(meet_function(c2), projection(c2, 2, 1)));
  EXPECT_EQ(h, projection(c2, 2, 1));
}

TEST(Majorant, DominatesAndRecovers) {
  auto c3 = chain(3);
  const auto pool = enumerate_class(c3, 2, FunctionClass::idempotent);
  const auto points = oracle::all_tuples(3, 2);
  for (const auto& f : pool) {
    std::optional<FnTable> meet;
    for (const auto& a : points) {
      const auto h = h_majorant(pool, f, a);
      EXPECT_TRUE(leq_pointwise(f, h));
      meet = meet ? pointwise_meet(*meet, h) : h;
    }
    EXPECT_EQ(*meet, f);
  }
}

TEST(Majorant, EmptyAgreementSet) {
  auto c3 = chain(3);
  const std::vector<FnTable> pool = {projection(c3, 2, 1)};
  expect_error(Errc::EmptyAgreementSet, [&] { h_majorant_at(pool, {0, 1}, 2); });
  expect_error(Errc::EmptyAgreementSet, [&] { h_majorant(pool, projection(c3, 2, 2), {0, 1}); });
  expect_error(Errc::ArityMismatch, [&] { h_majorant(pool, projection(c3, 3, 1), {0, 1, 0}); });
}

TEST(HId, Examples) {
  auto c2 = chain(2);
  const auto join = join_function(c2);
  EXPECT_EQ(h_id(join, {0, 1}), join);
  for (auto lat : oracle::test_lattices()) {
    const auto bottom = Tuple(2, lat->bottom());
    EXPECT_EQ(h_id(meet_function(lat), bottom), join_function(lat));
  }
  auto c3 = chain(3);
  EXPECT_EQ(h_id(oracle::median3(c3), {0, 1, 2}), make_chi(c3, {0, 1, 2}, 1));
  expect_error(Errc::NotIdempotent, [&] { h_id(constant_function(c3, 2, 2), {0, 1}); });
  expect_error(Errc::ArityMismatch, [&] { h_id(join, {0, 1, 1}); });
}

TEST(HId, EqualsMajorantOverEnumeratedClass) {
  for (auto lat : {chain(2), chain(3), m_lattice(2)}) {
    const auto pool = enumerate_class(lat, 2, FunctionClass::idempotent);
    for (const auto& f : pool)
      for (const auto& a : oracle::all_tuples(lat->size(), 2))
        EXPECT_EQ(h_majorant(pool, f, a), h_id(f, a));
  }
}

TEST(HId, MeetOverPointsRecovers) {
  for (auto lat : {chain(2), chain(3), m_lattice(2)})
    for (const auto& f : enumerate_class(lat, 2, FunctionClass::idempotent)) {
      std::optional<FnTable> meet;
      for (const auto& a : oracle::all_tuples(lat->size(), 2)) {
        const auto h = h_id(f, a);
        meet = meet ? pointwise_meet(*meet, h) : h;
      }
      EXPECT_EQ(*meet, f);
    }
}

TEST(HAgg, Examples) {
  auto c2 = chain(2);
  const auto h = h_agg(join_function(c2), {0, 1});
  EXPECT_EQ(h({0, 0}), 0);
  EXPECT_EQ(h({0, 1}), 1);
  EXPECT_EQ(h({1, 0}), 1);
  EXPECT_EQ(h({1, 1}), 1);
  auto c3 = chain(3);
  const auto top = h_agg(meet_function(c3), {2, 2});
  for (const auto& x : oracle::all_tuples(3, 2))
    EXPECT_EQ(top(x), (x == Tuple{0, 0} ? 0 : 2));
  expect_error(Errc::NotAggregation, [&] { h_agg(constant_function(c3, 2, 0), {0, 1}); });
}

TEST(HAgg, RecoversAggregationFunctions) {
  for (auto lat : {chain(2), chain(3)}) {
    const auto agg = enumerate_class(lat, 2, FunctionClass::aggregation);
    for (const auto& f : agg) {
      std::optional<FnTable> meet;
      for (const auto& a : oracle::all_tuples(lat->size(), 2)) {
        const auto h = h_agg(f, a);
        EXPECT_TRUE(is_aggregation(h));
        EXPECT_TRUE(leq_pointwise(f, h));
        EXPECT_EQ(h(a), f(a));
        meet = meet ? pointwise_meet(*meet, h) : h;
      }
      EXPECT_EQ(*meet, f);
    }
  }
}

// iota_{(a,b,c),d}(x1,x2,x3) against the two reduced specs on a triple.
Element reduced_pair_value(const Lattice& lat, const std::pair<GeneratorSpec, GeneratorSpec>& p,
                           const Tuple& x) {
  const Tuple y = {x[0], x[2], x[2]};
  return lat.join(apply_generator(lat, p.first, x), apply_generator(lat, p.second, y));
}

TEST(ReduceIota, ChainExample) {
  auto c3 = chain(3);
  const auto pair = reduce_iota_pair(*c3, 0, 1, 2, 1);
  EXPECT_EQ(pair.first, GeneratorSpec::iota(0, 1, 2, 1));
  EXPECT_EQ(pair.second, GeneratorSpec::iota(0, 2, 2, 1));
  const auto iota = make_iota(c3, 0, 1, 2, 1);
  std::size_t triples = 0;
  for (const auto& x : oracle::all_tuples(3, 3)) {
    if (!(x[0] <= x[1] && x[1] <= x[2])) continue;
    ++triples;
    EXPECT_EQ(reduced_pair_value(*c3, pair, x), iota(x));
  }
  EXPECT_EQ(triples, 10u);
  expect_error(Errc::PreconditionViolated, [&] { reduce_iota_pair(*c3, 0, 2, 1, 1); });
}

TEST(ReduceIota, HoldsOnComparableTriples) {
  for (auto lat : {chain(3), m_lattice(2)}) {
    const Lattice& l = *lat;
    const auto m = static_cast<Element>(l.size());
    for (Element a = 0; a < m; ++a)
      for (Element b = 0; b < m; ++b)
        for (Element c = 0; c < m; ++c)
          for (Element d = 0; d < m; ++d) {
            if (!l.leq(a, b) || !l.leq(b, c) || !l.leq(a, d) || !l.leq(d, c)) continue;
            const auto pair = reduce_iota_pair(l, a, b, c, d);
            EXPECT_EQ(pair.first.point[2], l.top());
            EXPECT_EQ(pair.second.point[2], l.top());
            const auto iota = make_iota(lat, a, b, c, d);
            for (const auto& x : oracle::all_tuples(m, 3))
              if (l.leq(x[0], x[1]) && l.leq(x[1], x[2])) {
                EXPECT_EQ(reduced_pair_value(l, pair, x), iota(x));
              }
          }
  }
}

TEST(ReducedSet, Sizes) {
  EXPECT_EQ(reduced_generator_set(*chain(2)).size(), 5u);
  EXPECT_EQ(reduced_generator_set(*chain(3)).size(), 14u);
  EXPECT_EQ(reduced_generator_set(*m_lattice(2)).size(), 25u);
  for (auto lat : oracle::test_lattices())
    for (const auto& s : reduced_generator_set(*lat)) {
      EXPECT_EQ(s.kind, GeneratorSpec::Kind::iota);
      EXPECT_EQ(s.point[2], lat->top());
      EXPECT_NO_THROW(validate_spec(*lat, s));
    }
}

TEST(ReducedSet, OrderAndUniqueness) {
  auto lat = n5();
  const auto specs = reduced_generator_set(*lat);
  for (std::size_t i = 1; i < specs.size(); ++i) {
    const auto& p = specs[i - 1];
    const auto& q = specs[i];
    EXPECT_LT(std::tuple(p.point[0], p.point[1], p.target), std::tuple(q.point[0], q.point[1], q.target));
  }
}

TEST(Counts, ClosedForms) {
  EXPECT_EQ(count_generators_chain(3), 16u);
  EXPECT_EQ(count_generators_m(6), 55u);
  for (std::int64_t n = 2; n <= 10; ++n) {
    std::uint64_t sum = 0;
    for (std::int64_t i = 1; i <= n; ++i) sum += static_cast<std::uint64_t>(i * i);
    EXPECT_EQ(count_generators_chain(n), sum + 2);
    EXPECT_EQ(count_generators_chain(n), reduced_generator_set(*chain(static_cast<int>(n))).size() + 2);
  }
  for (std::int64_t n = 4; n <= 10; ++n) {
    EXPECT_EQ(count_generators_m(n), static_cast<std::uint64_t>(n * n + 4 * n - 5));
    EXPECT_EQ(count_generators_m(n),
              reduced_generator_set(*m_lattice(static_cast<int>(n - 2))).size() + 2);
  }
  expect_error(Errc::InvalidSize, [] { count_generators_chain(1); });
  expect_error(Errc::InvalidSize, [] { count_generators_m(3); });
}

}  // namespace
}  // namespace latclone
