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

#ifndef LATCLONE_TOOLS_CLI_HPP_
#define LATCLONE_TOOLS_CLI_HPP_

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "latclone/latclone.hpp"

namespace latclone::cli {

enum ExitCode : int {
  kOk = 0,
  kDomainError = 2,
  kBudget = 3,
  kInternal = 4,
};

namespace detail {

// Writes to --out when given, otherwise to the command's stdout.
class Output {
 public:
  Output(std::ostream& fallback, const std::string& path) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(Errc::InvalidInput, "cannot write '" + path + "'");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

inline std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size())
      throw Error(Errc::InvalidInput, "bad range '" + text + "'");
    return static_cast<std::int64_t>(v);
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = number(text);
    return {v, v};
  }
  const auto lo = number(text.substr(0, dots));
  const auto hi = number(text.substr(dots + 2));
  if (lo > hi) throw Error(Errc::InvalidInput, "empty range '" + text + "'");
  return {lo, hi};
}

}  // namespace detail

inline int cmd_lattice_check(const std::string& path, std::ostream& out) {
  const auto lat = load_lattice_file(path);
  out << "lattice " << lat->name() << "\n";
  out << "size=" << lat->size() << "\n";
  out << "bottom=" << lat->label(lat->bottom()) << "\n";
  out << "top=" << lat->label(lat->top()) << "\n";
  // label:index for every element, in the order the file listed them.
  std::vector<Element> by_input(lat->size());
  for (Element e = 0; e < lat->size(); ++e) by_input[lat->input_position(e)] = e;
  out << "relabel";
  for (Element e : by_input) out << " " << lat->label(e) << ":" << e;
  out << "\n";
  return kOk;
}

inline int cmd_enum(const std::string& lattice, std::size_t arity, const std::string& cls,
                    bool emit, const EnumerationBudget& budget, std::ostream& out) {
  const auto lat = lattice_from_spec(lattice);
  const auto fc = parse_function_class(cls);
  std::vector<std::vector<Element>> tables;
  const std::size_t count = for_each_in_class(
      lat, arity, fc,
      [&](std::span<const Element> v) {
        if (emit) tables.emplace_back(v.begin(), v.end());
      },
      budget);
  out << "count=" << count << "\n";
  std::size_t k = 0;
  for (auto& v : tables) out << format_function(FnTable(lat, arity, std::move(v)), "f" + std::to_string(++k));
  return kOk;
}

inline int cmd_decompose(const std::string& lattice, const std::string& fn_path, bool reduced,
                         bool simplify, std::ostream& out, std::ostream& err) {
  const auto lat = lattice_from_spec(lattice);
  const auto fn = load_function_file(fn_path, lat);
  Term term = reduced ? decompose_id_reduced(fn.table) : decompose_id(fn.table);
  if (simplify) term = simplify_dominated(term, lat);
  if (to_table(term, lat) != fn.table) {
    err << "internal: decomposition of '" << fn.name << "' does not reproduce the table\n";
    return kInternal;
  }
  out << format_term_file(term, *lat);
  return kOk;
}

inline int cmd_verify(const std::string& lattice, std::size_t arity, const VerifyOptions& options,
                      std::ostream& out) {
  const auto lat = lattice_from_spec(lattice);
  const auto report = verify_generation(lat, arity, options);
  out << format_verification(report);
  if (report.closure_status == VerificationReport::Status::budget) return kBudget;
  if (report.closure_status != VerificationReport::Status::pass || !report.decomposition_pass)
    return kInternal;
  return kOk;
}

struct ClosureArgs {
  std::string lattice;
  std::size_t arity = 2;
  bool ops = false;
  bool reduced = false;
  std::vector<std::string> generators;
  std::vector<std::string> fn_files;
  std::size_t budget = ClosureOptions{}.budget;
  bool emit = false;
};

inline int cmd_closure(const ClosureArgs& args, std::ostream& out) {
  const auto lat = lattice_from_spec(args.lattice);
  std::vector<FnTable> base;
  if (args.ops) {
    base.push_back(meet_function(lat));
    base.push_back(join_function(lat));
  }
  if (args.reduced)
    for (const auto& spec : reduced_generator_set(*lat)) base.push_back(generator_table(lat, spec));
  for (const auto& text : args.generators) base.push_back(generator_table(lat, parse_spec(*lat, text)));
  for (const auto& path : args.fn_files) base.push_back(load_function_file(path, lat).table);
  ClosureOptions options;
  options.budget = args.budget;
  const auto report = closure(lat, base, args.arity, options);
  out << format_closure_summary(report) << "\n";
  if (args.emit) {
    std::size_t k = 0;
    for (const auto& f : report.reached) out << format_function(f, "g" + std::to_string(++k));
  }
  return report.budget_hit ? kBudget : kOk;
}

inline int cmd_count(const std::string& family, const std::string& range, std::ostream& out,
                     std::ostream& err) {
  const bool chain_col = family == "chain" || family == "both";
  const bool m_col = family == "m" || family == "both";
  if (!chain_col && !m_col)
    throw Error(Errc::InvalidInput, "family must be chain, m or both");
  const auto [lo, hi] = detail::parse_range(range);
  // Direct enumeration is cubic in the lattice size.
  constexpr std::int64_t kEnumerateUpTo = 64;
  out << "n";
  if (chain_col) out << ",G_chain,G_chain_enumerated";
  if (m_col) out << ",G_M,G_M_enumerated";
  out << "\n";
  bool mismatch = false;
  for (std::int64_t n = lo; n <= hi; ++n) {
    out << n;
    if (chain_col) {
      const auto closed = count_generators_chain(n);
      out << "," << closed;
      if (n <= kEnumerateUpTo) {
        const auto direct = reduced_generator_set(*chain(static_cast<int>(n))).size() + 2;
        mismatch = mismatch || direct != closed;
        out << "," << direct;
      } else {
        out << ",-";
      }
    }
    if (m_col) {
      if (n < 4 && family == "both") {
        out << ",-,-";
      } else {
        const auto closed = count_generators_m(n);
        out << "," << closed;
        if (n <= kEnumerateUpTo) {
          const auto direct = reduced_generator_set(*m_lattice(static_cast<int>(n - 2))).size() + 2;
          mismatch = mismatch || direct != closed;
          out << "," << direct;
        } else {
          out << ",-";
        }
      }
    }
    out << "\n";
  }
  if (mismatch) {
    err << "internal: closed form and enumeration disagree\n";
    return kInternal;
  }
  return kOk;
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-lattice workbench for idempotent aggregation functions"};
  app.require_subcommand(1);

  auto* lattice_cmd = app.add_subcommand("lattice", "Lattice file utilities");
  lattice_cmd->require_subcommand(1);
  auto* check_cmd = lattice_cmd->add_subcommand("check", "Validate a lattice file");
  std::string check_path;
  check_cmd->add_option("path", check_path, "Lattice file")->required();

  std::string lattice;
  std::size_t arity = 2;

  auto* enum_cmd = app.add_subcommand("enum", "Enumerate a class of functions");
  std::string cls;
  bool emit = false;
  EnumerationBudget enum_budget;
  enum_cmd->add_option("--lattice", lattice, "chain:<n>, m:<k>, n5, boolean:<k>, file:<path>")
      ->required();
  enum_cmd->add_option("--arity", arity)->required()->check(CLI::PositiveNumber);
  enum_cmd->add_option("--class", cls, "aggregation, idempotent or monotone")->required();
  enum_cmd->add_flag("--emit", emit, "Print every table");
  enum_cmd->add_option("--max-cells", enum_budget.max_cells)->check(CLI::PositiveNumber);
  enum_cmd->add_option("--max-results", enum_budget.max_results)->check(CLI::PositiveNumber);

  auto* decompose_cmd = app.add_subcommand("decompose", "Write an idempotent function as a term");
  std::string fn_path, out_path;
  bool reduced = false, simplify = false;
  decompose_cmd->add_option("--lattice", lattice)->required();
  decompose_cmd->add_option("--fn", fn_path, "Function table file")->required();
  decompose_cmd->add_flag("--reduced", reduced, "Use only iota generators with c = top");
  decompose_cmd->add_flag("--simplify", simplify, "Drop dominated meet/join operands");
  decompose_cmd->add_option("--out", out_path, "Output path (default: stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Check that the reduced generators give Id^n(L)");
  VerifyOptions verify_options;
  verify_cmd->add_option("--lattice", lattice)->required();
  verify_cmd->add_option("--arity", arity)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--budget", verify_options.closure.budget, "Closure attempt budget")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--max-cells", verify_options.enumeration.max_cells)
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--max-results", verify_options.enumeration.max_results)
      ->check(CLI::PositiveNumber);

  auto* closure_cmd = app.add_subcommand("closure", "Composition closure of a base set");
  ClosureArgs closure_args;
  closure_cmd->add_option("--lattice", closure_args.lattice)->required();
  closure_cmd->add_option("--arity", closure_args.arity)->check(CLI::PositiveNumber);
  closure_cmd->add_flag("--ops", closure_args.ops, "Include meet and join");
  closure_cmd->add_flag("--reduced", closure_args.reduced, "Include the reduced iota generators");
  closure_cmd->add_option("--generator", closure_args.generators, "Generator, e.g. iota[0,1,2;1]");
  closure_cmd->add_option("--fn", closure_args.fn_files, "Function table file");
  closure_cmd->add_option("--budget", closure_args.budget)->check(CLI::PositiveNumber);
  closure_cmd->add_flag("--emit", closure_args.emit, "Print every reached table");

  auto* count_cmd = app.add_subcommand("count", "Generator counts for chains and M lattices");
  std::string family = "both", range;
  count_cmd->add_option("--family", family, "chain, m or both");
  count_cmd->add_option("--n", range, "Size or range a..b")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kDomainError;
  }

  try {
    if (check_cmd->parsed()) return cmd_lattice_check(check_path, out);
    if (enum_cmd->parsed()) return cmd_enum(lattice, arity, cls, emit, enum_budget, out);
    if (decompose_cmd->parsed()) {
      detail::Output sink(out, out_path);
      return cmd_decompose(lattice, fn_path, reduced, simplify, sink.stream(), err);
    }
    if (verify_cmd->parsed()) return cmd_verify(lattice, arity, verify_options, out);
    if (closure_cmd->parsed()) return cmd_closure(closure_args, out);
    if (count_cmd->parsed()) return cmd_count(family, range, out, err);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.code() == Errc::BudgetExceeded ? kBudget : kDomainError;
  }
  return kDomainError;
}

}  // namespace latclone::cli

#endif  // LATCLONE_TOOLS_CLI_HPP_
