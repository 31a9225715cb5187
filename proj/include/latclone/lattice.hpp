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

#ifndef LATCLONE_LATTICE_HPP_
#define LATCLONE_LATTICE_HPP_

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "latclone/error.hpp"

namespace latclone {

/// Index of a lattice element. Indices are a linear extension of the order.
using Element = std::uint16_t;
/// A point of L^n, stored as element indices.
using Tuple = std::vector<Element>;

class Lattice;
using LatticeRef = std::shared_ptr<const Lattice>;

// ---------------------------------------------------------------------------
// Tuple indexing. Tuples of L^n are numbered big-endian mixed radix:
// index(x) = sum_i x_i * m^(n-i). Because element indices linearly extend
// the lattice order, increasing tuple index linearly extends the product
// order on L^n.

/// m^n, or InvalidSize if it does not fit in `limit`.
inline std::size_t checked_power(std::size_t m, std::size_t n,
                                 std::size_t limit = std::numeric_limits<std::size_t>::max()) {
  std::size_t result = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (m != 0 && result > limit / m)
      throw Error(Errc::InvalidSize, std::to_string(m) + "^" + std::to_string(n) + " too large");
    result *= m;
  }
  return result;
}

inline std::size_t tuple_index(std::span<const Element> x, std::size_t m) {
  std::size_t k = 0;
  for (Element xi : x) k = k * m + xi;
  return k;
}

inline Tuple tuple_at(std::size_t k, std::size_t n, std::size_t m) {
  Tuple x(n);
  for (std::size_t i = n; i-- > 0;) {
    x[i] = static_cast<Element>(k % m);
    k /= m;
  }
  return x;
}

/// Advance to the lexicographic successor; false after the last tuple.
inline bool next_tuple(Tuple& x, std::size_t m) {
  for (std::size_t i = x.size(); i-- > 0;) {
    if (static_cast<std::size_t>(x[i]) + 1 < m) {
      ++x[i];
      return true;
    }
    x[i] = 0;
  }
  return false;
}

// ---------------------------------------------------------------------------

/// A finite bounded lattice with precomputed order, meet and join tables.
/// Immutable once built; obtain instances through from_covers() or the
/// builtin families below.
class Lattice {
 public:
  const std::string& name() const { return name_; }
  std::size_t size() const { return labels_.size(); }
  const std::string& label(Element e) const { return labels_.at(e); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<Element> find(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return static_cast<Element>(i);
    return std::nullopt;
  }

  bool leq(Element a, Element b) const { return leq_[a * size() + b] != 0; }
  bool less(Element a, Element b) const { return a != b && leq(a, b); }
  Element meet(Element a, Element b) const { return meet_[a * size() + b]; }
  Element join(Element a, Element b) const { return join_[a * size() + b]; }
  Element bottom() const { return bottom_; }
  Element top() const { return top_; }

  /// Elements covered by e (immediate predecessors).
  const std::vector<Element>& lower_covers(Element e) const { return lower_covers_.at(e); }

  /// Position of element e in the label list originally handed to from_covers().
  std::size_t input_position(Element e) const { return input_position_.at(e); }

  bool valid(Element e) const { return e < size(); }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.labels_ == b.labels_ && a.leq_ == b.leq_;
  }

  friend LatticeRef from_covers(std::string name, const std::vector<std::string>& labels,
                                const std::vector<std::pair<std::string, std::string>>& covers);

 private:
  Lattice() = default;

  std::string name_;
  std::vector<std::string> labels_;
  std::vector<char> leq_;
  std::vector<Element> meet_;
  std::vector<Element> join_;
  Element bottom_ = 0;
  Element top_ = 0;
  std::vector<std::size_t> input_position_;
  std::vector<std::vector<Element>> lower_covers_;
};

inline bool same_lattice(const LatticeRef& a, const LatticeRef& b) {
  return a == b || (a && b && *a == *b);
}

namespace detail {

inline bool valid_label(const std::string& s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace detail

/// Builds a lattice from its Hasse diagram. Each cover pair is (lower, upper);
/// redundant or duplicated pairs are harmless.
inline LatticeRef from_covers(std::string name, const std::vector<std::string>& labels,
                              const std::vector<std::pair<std::string, std::string>>& covers) {
  const std::size_t m = labels.size();
  if (m == 0) throw Error(Errc::InvalidSize, "lattice needs at least one element");
  if (m > std::numeric_limits<Element>::max())
    throw Error(Errc::InvalidSize, "too many elements (" + std::to_string(m) + ")");

  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < m; ++i) {
    if (!detail::valid_label(labels[i]))
      throw Error(Errc::InvalidInput, "invalid label '" + labels[i] + "'");
    if (!position.emplace(labels[i], i).second)
      throw Error(Errc::InvalidInput, "duplicate label '" + labels[i] + "'");
  }

  // Reflexive-transitive closure over input positions.
  std::vector<char> rel(m * m, 0);
  for (std::size_t i = 0; i < m; ++i) rel[i * m + i] = 1;
  for (const auto& [lo, hi] : covers) {
    auto l = position.find(lo);
    auto h = position.find(hi);
    if (l == position.end()) throw Error(Errc::InvalidInput, "unknown label '" + lo + "'");
    if (h == position.end()) throw Error(Errc::InvalidInput, "unknown label '" + hi + "'");
    if (l->second == h->second)
      throw Error(Errc::NotAPartialOrder, "cover " + lo + " < " + hi + " is a cycle");
    rel[l->second * m + h->second] = 1;
  }
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      if (rel[i * m + k])
        for (std::size_t j = 0; j < m; ++j)
          if (rel[k * m + j]) rel[i * m + j] = 1;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (rel[i * m + j] && rel[j * m + i])
        throw Error(Errc::NotAPartialOrder,
                    "cycle through " + labels[i] + " and " + labels[j]);

  // Linear extension: repeatedly take the earliest input position whose
  // strict predecessors are all placed.
  std::vector<std::size_t> order;
  std::vector<char> placed(m, 0);
  while (order.size() < m) {
    for (std::size_t i = 0; i < m; ++i) {
      if (placed[i]) continue;
      bool ready = true;
      for (std::size_t j = 0; j < m && ready; ++j)
        if (j != i && !placed[j] && rel[j * m + i]) ready = false;
      if (ready) {
        placed[i] = 1;
        order.push_back(i);
        break;
      }
    }
  }

  auto lat = std::shared_ptr<Lattice>(new Lattice());
  lat->name_ = std::move(name);
  lat->labels_.resize(m);
  lat->input_position_ = order;
  lat->leq_.assign(m * m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    lat->labels_[a] = labels[order[a]];
    for (std::size_t b = 0; b < m; ++b) lat->leq_[a * m + b] = rel[order[a] * m + order[b]];
  }
  const auto leq = [&](std::size_t a, std::size_t b) { return lat->leq_[a * m + b] != 0; };

  lat->meet_.assign(m * m, 0);
  lat->join_.assign(m * m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      std::optional<std::size_t> lub;
      for (std::size_t z = 0; z < m && !lub; ++z) {
        if (!leq(a, z) || !leq(b, z)) continue;
        bool least = true;
        for (std::size_t w = 0; w < m && least; ++w)
          if (leq(a, w) && leq(b, w) && !leq(z, w)) least = false;
        if (least) lub = z;
      }
      if (!lub)
        throw Error(Errc::NotALattice,
                    "join(" + lat->labels_[a] + "," + lat->labels_[b] + ") undefined");
      std::optional<std::size_t> glb;
      for (std::size_t z = m; z-- > 0 && !glb;) {
        if (!leq(z, a) || !leq(z, b)) continue;
        bool greatest = true;
        for (std::size_t w = 0; w < m && greatest; ++w)
          if (leq(w, a) && leq(w, b) && !leq(w, z)) greatest = false;
        if (greatest) glb = z;
      }
      if (!glb)
        throw Error(Errc::NotALattice,
                    "meet(" + lat->labels_[a] + "," + lat->labels_[b] + ") undefined");
      lat->join_[a * m + b] = lat->join_[b * m + a] = static_cast<Element>(*lub);
      lat->meet_[a * m + b] = lat->meet_[b * m + a] = static_cast<Element>(*glb);
    }
  }

  std::optional<std::size_t> bottom, top;
  for (std::size_t z = 0; z < m; ++z) {
    bool below_all = true, above_all = true;
    for (std::size_t w = 0; w < m; ++w) {
      below_all = below_all && leq(z, w);
      above_all = above_all && leq(w, z);
    }
    if (below_all) bottom = z;
    if (above_all) top = z;
  }
  if (!bottom || !top) throw Error(Errc::NotBounded, "no unique bottom or top element");
  lat->bottom_ = static_cast<Element>(*bottom);
  lat->top_ = static_cast<Element>(*top);

  lat->lower_covers_.resize(m);
  for (std::size_t e = 0; e < m; ++e) {
    for (std::size_t c = 0; c < e; ++c) {
      if (!leq(c, e)) continue;
      bool immediate = true;
      for (std::size_t z = c + 1; z < e && immediate; ++z)
        if (leq(c, z) && leq(z, e)) immediate = false;
      if (immediate) lat->lower_covers_[e].push_back(static_cast<Element>(c));
    }
  }
  return lat;
}

// ---------------------------------------------------------------------------
// Builtin families.

/// The n-element chain 0 < 1 < ... < n-1.
inline LatticeRef chain(int n) {
  if (n < 2) throw Error(Errc::InvalidSize, "chain needs n >= 2, got " + std::to_string(n));
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    if (i > 0) covers.emplace_back(std::to_string(i - 1), std::to_string(i));
  }
  return from_covers("chain:" + std::to_string(n), labels, covers);
}

/// M_k: bottom "0", atoms "c1".."ck", top "1".
inline LatticeRef m_lattice(int k) {
  if (k < 1) throw Error(Errc::InvalidSize, "m_lattice needs k >= 1, got " + std::to_string(k));
  std::vector<std::string> labels{"0"};
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 1; i <= k; ++i) {
    const std::string atom = "c" + std::to_string(i);
    labels.push_back(atom);
    covers.emplace_back("0", atom);
    covers.emplace_back(atom, "1");
  }
  labels.push_back("1");
  return from_covers("m:" + std::to_string(k), labels, covers);
}

/// The pentagon: 0 < a < b < 1 and 0 < c < 1.
inline LatticeRef n5() {
  return from_covers("n5", {"0", "a", "b", "c", "1"},
                     {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "1"}});
}

/// Subsets of a k-element set, labelled by bit strings (most significant first).
inline LatticeRef boolean_lattice(int k) {
  if (k < 1 || k > 8)
    throw Error(Errc::InvalidSize, "boolean lattice needs 1 <= k <= 8, got " + std::to_string(k));
  const std::size_t count = std::size_t{1} << k;
  auto bits = [k](std::size_t s) {
    std::string out;
    for (int i = k - 1; i >= 0; --i) out.push_back((s >> i) & 1 ? '1' : '0');
    return out;
  };
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t s = 0; s < count; ++s) {
    labels.push_back(bits(s));
    for (int i = 0; i < k; ++i)
      if (!((s >> i) & 1)) covers.emplace_back(bits(s), bits(s | (std::size_t{1} << i)));
  }
  return from_covers("boolean:" + std::to_string(k), labels, covers);
}

// ---------------------------------------------------------------------------
// Finite-arity meets, joins and the product order.

inline Element meet_all(const Lattice& lat, std::span<const Element> x) {
  if (x.empty()) throw Error(Errc::EmptyTuple, "meet of an empty tuple");
  Element acc = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) acc = lat.meet(acc, x[i]);
  return acc;
}

inline Element join_all(const Lattice& lat, std::span<const Element> x) {
  if (x.empty()) throw Error(Errc::EmptyTuple, "join of an empty tuple");
  Element acc = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) acc = lat.join(acc, x[i]);
  return acc;
}

inline bool leq_tuple(const Lattice& lat, std::span<const Element> x, std::span<const Element> y) {
  if (x.size() != y.size())
    throw Error(Errc::ArityMismatch, "tuples of arity " + std::to_string(x.size()) + " and " +
                                         std::to_string(y.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!lat.leq(x[i], y[i])) return false;
  return true;
}

inline std::string format_tuple(const Lattice& lat, std::span<const Element> x,
                                std::string_view sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += sep;
    out += lat.label(x[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format:
//
//   lattice <name>
//   elements <label> <label> ...
//   cover <lower> <upper>
//   end
//
// '#' starts a comment. Blank lines are ignored.

inline LatticeRef parse_lattice(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::string> name;
  std::optional<std::vector<std::string>> elements;
  std::vector<std::pair<std::string, std::string>> covers;
  bool ended = false;
  auto fail = [&](const std::string& what) {
    throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string directive;
    if (!(words >> directive)) continue;
    if (ended) fail("content after 'end'");
    std::vector<std::string> args;
    for (std::string w; words >> w;) args.push_back(w);
    if (directive == "lattice") {
      if (name) fail("duplicate 'lattice' header");
      if (args.size() != 1) fail("expected 'lattice <name>'");
      name = args[0];
    } else if (!name) {
      fail("expected 'lattice <name>' header first");
    } else if (directive == "elements") {
      if (elements) fail("duplicate 'elements' line");
      if (args.empty()) fail("'elements' needs at least one label");
      elements = args;
    } else if (directive == "cover") {
      if (!elements) fail("'cover' before 'elements'");
      if (args.size() != 2) fail("expected 'cover <lower> <upper>'");
      covers.emplace_back(args[0], args[1]);
    } else if (directive == "end") {
      if (!args.empty()) fail("unexpected tokens after 'end'");
      ended = true;
    } else {
      fail("unknown directive '" + directive + "'");
    }
  }
  if (!name) throw Error(Errc::ParseError, "missing 'lattice' header");
  if (!elements) throw Error(Errc::ParseError, "missing 'elements' line");
  if (!ended) throw Error(Errc::ParseError, "missing 'end'");
  return from_covers(*name, *elements, covers);
}

inline LatticeRef parse_lattice(const std::string& text) {
  std::istringstream in(text);
  return parse_lattice(in);
}

inline LatticeRef load_lattice_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot open '" + path + "'");
  return parse_lattice(in);
}

/// Canonical text form: elements in index order, one line per cover.
inline std::string format_lattice(const Lattice& lat) {
  std::string out = "lattice " + lat.name() + "\nelements";
  for (const auto& l : lat.labels()) out += " " + l;
  out += "\n";
  for (Element e = 0; e < lat.size(); ++e)
    for (Element c : lat.lower_covers(e)) out += "cover " + lat.label(c) + " " + lat.label(e) + "\n";
  out += "end\n";
  return out;
}

/// Resolves `chain:<n>`, `m:<k>`, `n5`, `boolean:<k>` or `file:<path>`.
inline LatticeRef lattice_from_spec(const std::string& spec) {
  auto colon = spec.find(':');
  const std::string family = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto number = [&]() {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (arg.empty() || used != arg.size())
      throw Error(Errc::InvalidInput, "bad size in lattice spec '" + spec + "'");
    return value;
  };
  if (family == "chain" && colon != std::string::npos) return chain(number());
  if (family == "m" && colon != std::string::npos) return m_lattice(number());
  if (family == "boolean" && colon != std::string::npos) return boolean_lattice(number());
  if (family == "n5" && colon == std::string::npos) return n5();
  if (family == "file" && colon != std::string::npos) return load_lattice_file(arg);
  throw Error(Errc::InvalidInput, "unknown lattice spec '" + spec + "'");
}

}  // namespace latclone

#endif  // LATCLONE_LATTICE_HPP_
