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

#ifndef LATCLONE_TERMS_HPP_
#define LATCLONE_TERMS_HPP_

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <istream>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "latclone/error.hpp"
#include "latclone/functable.hpp"
#include "latclone/generators.hpp"
#include "latclone/lattice.hpp"

namespace latclone {

/// Immutable expression over variables x1..xn, binary meet/join and
/// generator applications. Subterms are shared, never copied.
class Term {
 public:
  enum class Kind { var, meet, join, apply };

  /// x_index with 1 <= index <= arity.
  static Term var(std::size_t index, std::size_t arity) {
    if (index == 0 || index > arity)
      throw Error(Errc::IndexOutOfRange,
                  "variable x" + std::to_string(index) + " in a term of arity " +
                      std::to_string(arity));
    return Term(std::make_shared<Node>(Node{Kind::var, arity, index, std::nullopt, {}}));
  }

  static Term meet(const Term& l, const Term& r) { return binary(Kind::meet, l, r); }
  static Term join(const Term& l, const Term& r) { return binary(Kind::join, l, r); }

  static Term apply(GeneratorSpec spec, std::vector<Term> args) {
    if (args.size() != spec.arity())
      throw Error(Errc::ArityMismatch, "generator of arity " + std::to_string(spec.arity()) +
                                           " applied to " + std::to_string(args.size()) +
                                           " arguments");
    if (args.empty()) throw Error(Errc::ArityMismatch, "generator without arguments");
    const std::size_t n = args[0].arity();
    for (const auto& a : args)
      if (a.arity() != n) throw Error(Errc::ArityMismatch, "arguments of different arities");
    return Term(
        std::make_shared<Node>(Node{Kind::apply, n, 0, std::move(spec), std::move(args)}));
  }

  /// Left-nested meet of one or more operands.
  static Term meet_of(std::span<const Term> ts) { return fold(Kind::meet, ts); }
  static Term join_of(std::span<const Term> ts) { return fold(Kind::join, ts); }

  /// x1 ^ ... ^ xn and x1 v ... v xn.
  static Term meet_of_vars(std::size_t n) { return meet_of(vars(n)); }
  static Term join_of_vars(std::size_t n) { return join_of(vars(n)); }

  Kind kind() const { return node_->kind; }
  std::size_t arity() const { return node_->arity; }
  std::size_t var_index() const { return node_->index; }
  const GeneratorSpec& spec() const { return *node_->spec; }
  std::span<const Term> args() const { return node_->args; }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    return x.kind == y.kind && x.arity == y.arity && x.index == y.index && x.spec == y.spec &&
           x.args == y.args;
  }

  const void* identity() const { return node_.get(); }

 private:
  struct Node {
    Kind kind;
    std::size_t arity;
    std::size_t index;
    std::optional<GeneratorSpec> spec;
    std::vector<Term> args;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static Term binary(Kind kind, const Term& l, const Term& r) {
    if (l.arity() != r.arity())
      throw Error(Errc::ArityMismatch, "operands of arity " + std::to_string(l.arity()) +
                                           " and " + std::to_string(r.arity()));
    return Term(std::make_shared<Node>(Node{kind, l.arity(), 0, std::nullopt, {l, r}}));
  }

  static Term fold(Kind kind, std::span<const Term> ts) {
    if (ts.empty()) throw Error(Errc::EmptyTuple, "fold over no operands");
    Term acc = ts[0];
    for (std::size_t i = 1; i < ts.size(); ++i) acc = binary(kind, acc, ts[i]);
    return acc;
  }

  static std::vector<Term> vars(std::size_t n) {
    std::vector<Term> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back(var(i, n));
    return out;
  }

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------

namespace detail {

inline void validate_term(const Term& t, const Lattice& lat) {
  if (t.kind() == Term::Kind::apply) validate_spec(lat, t.spec());
  for (const auto& a : t.args()) validate_term(a, lat);
}

inline Element eval_unchecked(const Term& t, const Lattice& lat, std::span<const Element> x) {
  switch (t.kind()) {
    case Term::Kind::var:
      return x[t.var_index() - 1];
    case Term::Kind::meet:
      return lat.meet(eval_unchecked(t.args()[0], lat, x), eval_unchecked(t.args()[1], lat, x));
    case Term::Kind::join:
      return lat.join(eval_unchecked(t.args()[0], lat, x), eval_unchecked(t.args()[1], lat, x));
    case Term::Kind::apply: {
      Tuple y;
      y.reserve(t.args().size());
      for (const auto& a : t.args()) y.push_back(eval_unchecked(a, lat, x));
      return apply_generator(lat, t.spec(), y);
    }
  }
  return 0;
}

}  // namespace detail

inline Element eval(const Term& t, const Lattice& lat, std::span<const Element> x) {
  if (x.size() != t.arity())
    throw Error(Errc::ArityMismatch, "term of arity " + std::to_string(t.arity()) +
                                         " evaluated at " + std::to_string(x.size()) + " values");
  for (Element e : x)
    if (!lat.valid(e)) throw Error(Errc::IndexOutOfRange, "argument outside the lattice");
  detail::validate_term(t, lat);
  return detail::eval_unchecked(t, lat, x);
}

/// Table of the term over all of L^n. Shared subterms are tabulated once.
inline FnTable to_table(const Term& t, const LatticeRef& lat) {
  detail::validate_term(t, *lat);
  const std::size_t m = lat->size();
  const std::size_t n = t.arity();
  const std::size_t cells = checked_power(m, n, std::size_t{1} << 26);
  std::unordered_map<const void*, std::vector<Element>> memo;

  auto tabulate = [&](auto&& self, const Term& node) -> const std::vector<Element>& {
    if (auto it = memo.find(node.identity()); it != memo.end()) return it->second;
    std::vector<Element> out(cells);
    switch (node.kind()) {
      case Term::Kind::var: {
        Tuple x(n, 0);
        std::size_t k = 0;
        do out[k++] = x[node.var_index() - 1];
        while (next_tuple(x, m));
        break;
      }
      case Term::Kind::meet:
      case Term::Kind::join: {
        const auto& l = self(self, node.args()[0]);
        const auto& r = self(self, node.args()[1]);
        for (std::size_t k = 0; k < cells; ++k)
          out[k] = node.kind() == Term::Kind::meet ? lat->meet(l[k], r[k]) : lat->join(l[k], r[k]);
        break;
      }
      case Term::Kind::apply: {
        std::vector<const std::vector<Element>*> cols;
        for (const auto& a : node.args()) cols.push_back(&self(self, a));
        Tuple y(cols.size());
        for (std::size_t k = 0; k < cells; ++k) {
          for (std::size_t i = 0; i < cols.size(); ++i) y[i] = (*cols[i])[k];
          out[k] = apply_generator(*lat, node.spec(), y);
        }
        break;
      }
    }
    return memo.emplace(node.identity(), std::move(out)).first->second;
  };
  return FnTable(lat, n, tabulate(tabulate, t));
}

/// Node count, counting shared subterms once per occurrence.
inline std::size_t size(const Term& t) {
  std::size_t s = 1;
  for (const auto& a : t.args()) s += size(a);
  return s;
}

inline std::size_t depth(const Term& t) {
  std::size_t d = 0;
  for (const auto& a : t.args()) d = std::max(d, depth(a));
  return d + 1;
}

// ---------------------------------------------------------------------------
// S-expression form:
//   term := (meet term term) | (join term term) | (<spec> term...) | x<k>

namespace detail {

inline void print_term(const Term& t, const Lattice& lat, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::var:
      out += "x" + std::to_string(t.var_index());
      return;
    case Term::Kind::meet:
    case Term::Kind::join:
    case Term::Kind::apply:
      out += "(";
      out += t.kind() == Term::Kind::meet   ? "meet"
             : t.kind() == Term::Kind::join ? "join"
                                            : format_spec(lat, t.spec());
      for (const auto& a : t.args()) {
        out += " ";
        print_term(a, lat, out);
      }
      out += ")";
      return;
  }
}

class TermParser {
 public:
  TermParser(std::string_view text, std::size_t arity, const Lattice& lat)
      : text_(text), arity_(arity), lat_(lat) {}

  Term parse() {
    Term t = term();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::SyntaxError, what + " at position " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // Atoms end at whitespace or a parenthesis, except inside [...].
  std::string_view atom() {
    const std::size_t start = pos_;
    bool bracket = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (bracket) {
        if (c == ']') bracket = false;
      } else if (c == '[') {
        bracket = true;
      } else if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')') {
        break;
      }
      ++pos_;
    }
    if (bracket) fail("unterminated '['");
    if (pos_ == start) fail("expected a term");
    return text_.substr(start, pos_ - start);
  }

  Term term() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == ')') fail("unexpected ')'");
    if (text_[pos_] != '(') {
      const std::size_t at = pos_;
      const std::string_view a = atom();
      if (a.size() < 2 || a[0] != 'x' ||
          !std::all_of(a.begin() + 1, a.end(), [](char c) { return std::isdigit(c); })) {
        pos_ = at;
        fail("expected a variable x<k>, got '" + std::string(a) + "'");
      }
      const std::size_t index = std::stoul(std::string(a.substr(1)));
      if (index == 0 || index > arity_) {
        pos_ = at;
        fail("variable '" + std::string(a) + "' outside arity " + std::to_string(arity_));
      }
      return Term::var(index, arity_);
    }
    ++pos_;
    skip_space();
    const std::size_t head_at = pos_;
    const std::string_view head = atom();
    std::vector<Term> args;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) fail("missing ')'");
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      args.push_back(term());
    }
    if (head == "meet" || head == "join") {
      if (args.size() != 2) {
        pos_ = head_at;
        fail(std::string(head) + " takes two operands");
      }
      return head == "meet" ? Term::meet(args[0], args[1]) : Term::join(args[0], args[1]);
    }
    GeneratorSpec spec;
    try {
      spec = parse_spec(lat_, head);
    } catch (const Error& e) {
      pos_ = head_at;
      fail(e.what());
    }
    if (args.size() != spec.arity()) {
      pos_ = head_at;
      fail(std::string(head) + " takes " + std::to_string(spec.arity()) + " operands");
    }
    return Term::apply(std::move(spec), std::move(args));
  }

  std::string_view text_;
  std::size_t arity_;
  const Lattice& lat_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::string print(const Term& t, const Lattice& lat) {
  std::string out;
  detail::print_term(t, lat, out);
  return out;
}

inline Term parse_term(std::string_view text, std::size_t arity, const Lattice& lat) {
  return detail::TermParser(text, arity, lat).parse();
}

// Term file: header line `term arity <n> lattice <name>` then one s-expression.

inline std::string format_term_file(const Term& t, const Lattice& lat) {
  return "term arity " + std::to_string(t.arity()) + " lattice " + lat.name() + "\n" +
         print(t, lat) + "\n";
}

inline Term parse_term_file(std::istream& in, const Lattice& lat) {
  std::string header;
  while (std::getline(in, header))
    if (header.find_first_not_of(" \t\r") != std::string::npos) break;
  std::istringstream words(header);
  std::string term_kw, arity_kw, lattice_kw, name;
  long arity = 0;
  if (!(words >> term_kw >> arity_kw >> arity >> lattice_kw >> name) || term_kw != "term" ||
      arity_kw != "arity" || lattice_kw != "lattice" || arity < 1)
    throw Error(Errc::ParseError, "expected 'term arity <n> lattice <name>'");
  if (name != lat.name())
    throw Error(Errc::LatticeMismatch, "term is over lattice '" + name + "', not '" +
                                           lat.name() + "'");
  std::ostringstream rest;
  rest << in.rdbuf();
  return parse_term(rest.str(), static_cast<std::size_t>(arity), lat);
}

inline Term parse_term_file(const std::string& text, const Lattice& lat) {
  std::istringstream in(text);
  return parse_term_file(in, lat);
}

}  // namespace latclone

#endif  // LATCLONE_TERMS_HPP_
