#pragma once

// Command-line front end. run() is separate from main so the tests can drive
// it in-process.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "weldkit/classify.hpp"
#include "weldkit/search.hpp"

namespace weldkit::cli {

enum Exit : int { kOk = 0, kDistinct = 1, kUsage = 2, kInternal = 3 };

namespace detail {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parse errors carry the file name in front of their line/column.
struct FileError : InputError {
  using InputError::InputError;
};

inline GaussDiagram load(const std::string& path) {
  const std::string text = slurp(path);
  try {
    return read_diagram(text);
  } catch (const ParseError& e) {
    throw FileError(path + ": " + e.what());
  }
}

inline MoveKind kind_arg(const std::string& s) {
  auto k = parse_move_kind(s);
  if (!k) throw InputError("unknown move kind '" + s + "'");
  return *k;
}

/// Move flags shared by apply and expand-macro.
struct SiteFlags {
  std::string move;
  std::string direction = "forward";
  std::vector<int> arrows;
  std::vector<std::string> at;
  std::vector<std::string> signs;

  void attach(CLI::App* cmd) {
    cmd->add_option("--move", move, "Move kind (R1, R2, R3, OC, UC, CC, SC, V, SV, VC, SR, F, DELTA, BP, WBP, BV)");
    cmd->add_option("--direction", direction, "forward (f) or backward (b)");
    cmd->add_option("--arrow", arrows, "Bound arrow ids in role order (repeat or comma-separate)")
        ->delimiter(',')
        ->allow_extra_args(false);
    cmd->add_option("--at", at, "Insertions: result endpoints s.p, tail then head per arrow")
        ->delimiter(',')
        ->allow_extra_args(false);
    cmd->add_option("--sign", signs, "Insertions: sign (+ or -) of each inserted arrow")
        ->delimiter(',')
        ->allow_extra_args(false);
  }

  MoveInstance instance() const {
    MoveInstance m;
    m.kind = kind_arg(move);
    auto dir = parse_direction(direction);
    if (!dir) throw InputError("direction must be forward/f or backward/b");
    m.direction = *dir;
    m.arrows = arrows;
    for (const auto& e : at) {
      auto p = weldkit::detail::parse_endpoint(e);
      if (!p) throw InputError("bad endpoint '" + e + "'");
      m.at.push_back(*p);
    }
    for (const auto& s : signs) {
      if (s == "+") m.signs.push_back(1);
      else if (s == "-") m.signs.push_back(-1);
      else throw InputError("bad sign '" + s + "'");
    }
    return m;
  }
};

inline std::vector<MoveKind> kinds_arg(const std::string& list) {
  std::vector<MoveKind> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(kind_arg(item));
  return out;
}

}  // namespace detail

/// Runs one command. args excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"weldkit: Gauss diagrams of welded string links, their moves and invariants"};
  app.name("weldkit");
  app.require_subcommand(1);
  app.fallthrough(false);

  std::string file, file2, moveset, trace_out, trace_file, format = "gauss";
  int strands = 2, length = 6, depth = 10;
  std::uint64_t seed = 1;
  std::size_t nodes = 500000, max_arrows = 6;
  bool classical = false;
  detail::SiteFlags site;

  auto* parse = app.add_subcommand("parse", "Parse a diagram or word file and print its canonical Gauss form");
  parse->add_option("file", file)->required();

  auto* inv = app.add_subcommand("inv", "Print the vlk matrix or the class vector of a moveset");
  inv->add_option("file", file)->required();
  inv->add_option("--moveset", moveset, "Moveset whose classifier to print (default: the vlk matrix)");

  auto* phi_cmd = app.add_subcommand("phi", "Print the conjugating endomorphism of a diagram");
  phi_cmd->add_option("file", file)->required();

  auto* apply = app.add_subcommand("apply", "Apply one move, or replay a trace, and print the result");
  apply->add_option("file", file)->required();
  site.attach(apply);
  apply->add_option("--trace", trace_file, "Replay this trace file instead of a single move");

  auto* equiv = app.add_subcommand("equiv", "Decide equivalence under a moveset (exit 0 equivalent, 1 distinct)");
  equiv->add_option("first", file)->required();
  equiv->add_option("second", file2)->required();
  equiv->add_option("--moveset", moveset)->required();

  auto* normalize = app.add_subcommand("normalize", "Print the canonical representative of a diagram's class");
  normalize->add_option("file", file)->required();
  normalize->add_option("--moveset", moveset)->required();
  normalize->add_option("--trace-out", trace_out, "BV only: write the primitive move trace here");

  auto* search = app.add_subcommand("search", "Search for a move sequence between two diagrams");
  search->add_option("first", file)->required();
  search->add_option("second", file2)->required();
  search->add_option("--moveset", moveset, "Extra move kinds, comma separated (R1, R2, R3, OC always included)");
  search->add_option("--depth", depth)->check(CLI::PositiveNumber);
  search->add_option("--nodes", nodes)->check(CLI::PositiveNumber);
  search->add_option("--max-arrows", max_arrows)->check(CLI::PositiveNumber);

  auto* random = app.add_subcommand("random", "Print a seeded random diagram");
  random->add_option("--strands", strands)->check(CLI::PositiveNumber);
  random->add_option("--length", length)->check(CLI::NonNegativeNumber);
  random->add_option("--seed", seed);
  random->add_flag("--classical", classical, "Only crossings realizable by a classical string link");
  random->add_option("--format", format, "gauss or word")->check(CLI::IsMember({"gauss", "word"}));

  auto* stack_cmd = app.add_subcommand("stack", "Print the stacking product (first below second)");
  stack_cmd->add_option("first", file)->required();
  stack_cmd->add_option("second", file2)->required();

  auto* expand = app.add_subcommand("expand-macro", "Print the primitive trace realizing a derived move");
  expand->add_option("file", file)->required();
  site.attach(expand);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "weldkit: " << e.what() << "\n";
    if (app.get_subcommands().empty()) err << "run 'weldkit --help' for usage\n";
    return kUsage;
  }

  try {
    if (parse->parsed()) {
      out << serialize_gauss(detail::load(file));
    } else if (inv->parsed()) {
      const auto d = detail::load(file);
      if (moveset.empty() || detail::kind_arg(moveset) == MoveKind::F) out << vlk_matrix(d).to_string();
      else out << to_string(class_vector(d, detail::kind_arg(moveset))) << "\n";
    } else if (phi_cmd->parsed()) {
      out << phi(detail::load(file)).to_string();
    } else if (apply->parsed()) {
      const auto d = detail::load(file);
      if (!trace_file.empty()) {
        if (!site.move.empty()) throw InputError("--trace and --move are exclusive");
        std::string text = detail::slurp(trace_file);
        MoveTrace trace;
        try {
          trace = parse_trace(text);
        } catch (const ParseError& e) {
          throw detail::FileError(trace_file + ": " + e.what());
        }
        out << serialize_gauss(replay_trace(d, trace));
      } else {
        if (site.move.empty()) throw InputError("apply needs --move or --trace");
        out << serialize_gauss(apply_move(d, site.instance()));
      }
    } else if (equiv->parsed()) {
      const auto v = decide_equiv(detail::load(file), detail::load(file2), detail::kind_arg(moveset));
      out << (v.equivalent ? "equivalent" : "distinct") << "\n"
          << "first:  " << to_string(v.first) << "\n"
          << "second: " << to_string(v.second) << "\n";
      return v.equivalent ? kOk : kDistinct;
    } else if (normalize->parsed()) {
      const auto d = detail::load(file);
      const MoveKind m = detail::kind_arg(moveset);
      if (m == MoveKind::BV) {
        auto [g, trace] = normalize_bv(d);
        if (!trace_out.empty()) {
          std::ofstream f(trace_out, std::ios::binary);
          if (!f) throw InputError("cannot write '" + trace_out + "'");
          f << serialize_trace(trace);
        }
        out << serialize_gauss(g);
      } else {
        if (!trace_out.empty()) throw InputError("--trace-out is available for BV only");
        if (m == MoveKind::DELTA || m == MoveKind::BP || m == MoveKind::SC || m == MoveKind::SV)
          throw InputError("no canonical representative for moveset " + moveset);
        const auto v = class_vector(d, m);
        out << serialize_gauss(canonical_rep(std::get<std::vector<std::int64_t>>(v), m, d.strands()));
      }
    } else if (search->parsed()) {
      SearchBudget b;
      b.max_depth = depth;
      b.max_nodes = nodes;
      b.max_arrows = max_arrows;
      b.moveset = detail::kinds_arg(moveset);
      const auto c = connect(detail::load(file), detail::load(file2), b);
      if (!c) {
        out << "NOT FOUND (budget exhausted)\n";
      } else {
        out << "# " << c->depth << " moves, " << c->nodes_visited << " nodes visited\n" << serialize_trace(c->trace);
      }
    } else if (random->parsed()) {
      if (strands < 1) throw InputError("--strands must be positive");
      const auto w = random_crossing_word(strands, length, seed, classical);
      if (format == "word") out << serialize_crossing_word(w);
      else out << serialize_gauss(from_crossing_word(w));
    } else if (stack_cmd->parsed()) {
      out << serialize_gauss(stack(detail::load(file), detail::load(file2)));
    } else if (expand->parsed()) {
      if (site.move.empty()) throw InputError("expand-macro needs --move");
      out << serialize_trace(macro_trace(detail::load(file), site.instance()));
    }
  } catch (const detail::FileError& e) {
    err << "weldkit: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    err << "weldkit: " << e.what() << "\n";
    return kUsage;
  } catch (const InternalError& e) {
    err << "weldkit: internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    err << "weldkit: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}

}  // namespace weldkit::cli
