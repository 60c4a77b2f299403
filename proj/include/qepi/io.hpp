#pragma once

// Text inputs of the command-line tool.
//
// Theory file: one formula per line; '#' starts a comment; blank lines are
// ignored.
//
// Declaration file:
//   # comment
//   bound 1/2
//   atom p momentum [0, 1/6]
//   atom q position [-1, 1]
// Numbers are integers, fractions a/b or finite decimals.

#include <fstream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qepi/epistemic.hpp"
#include "qepi/error.hpp"
#include "qepi/formula.hpp"
#include "qepi/quantum.hpp"
#include "qepi/rational.hpp"

namespace qepi {

// Input rejected with a "source:line[:offset]: message" location.
struct InputError : Error {
  using Error::Error;
};

struct Declarations {
  std::vector<IntervalProposition> props;
  PhysicsConfig config;
};

namespace detail {

inline std::string strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return std::string(line.substr(0, hash));
}

inline std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string cur;
  std::istringstream in{std::string(text)};
  while (std::getline(in, cur)) lines.push_back(cur);
  return lines;
}

}  // namespace detail

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Theory parse_theory(std::string_view text, const std::string& source = "<theory>") {
  Theory theory;
  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string body = detail::strip_comment(lines[i]);
    if (detail::trim(body).empty()) continue;
    try {
      theory.add(parse(body));
    } catch (const SyntaxError& e) {
      throw InputError(source + ":" + std::to_string(i + 1) + ":" + std::to_string(e.offset()) + ": " + e.detail());
    }
  }
  return theory;
}

inline Declarations parse_declarations(std::string_view text, const std::string& source = "<declarations>") {
  static const std::regex kAtom(R"(atom\s+(\S+)\s+(\S+)\s*\[\s*([^,\]\s]+)\s*,\s*([^,\]\s]+)\s*\])");
  static const std::regex kBound(R"(bound\s+(\S+))");

  Declarations out;
  bool saw_bound = false;
  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string where = source + ":" + std::to_string(i + 1) + ": ";
    const std::string line = detail::trim(detail::strip_comment(lines[i]));
    if (line.empty()) continue;
    std::smatch m;
    try {
      if (std::regex_match(line, m, kBound)) {
        if (saw_bound) throw InputError(where + "duplicate bound directive");
        saw_bound = true;
        out.config = PhysicsConfig(parse_rational(m[1].str()));
      } else if (std::regex_match(line, m, kAtom)) {
        const std::string name = m[1].str();
        if (!Atom::is_valid(name)) throw InputError(where + "invalid atom name '" + name + "'");
        const std::string kind = m[2].str();
        ObservableKind k;
        if (kind == "position") {
          k = ObservableKind::Position;
        } else if (kind == "momentum") {
          k = ObservableKind::Momentum;
        } else {
          throw InputError(where + "unknown observable kind '" + kind + "' (expected position or momentum)");
        }
        for (const auto& p : out.props) {
          if (p.atom().name() == name) throw InputError(where + "atom '" + name + "' is declared twice");
        }
        out.props.emplace_back(Atom(name), k, parse_rational(m[3].str()), parse_rational(m[4].str()));
      } else {
        throw InputError(where + "expected 'bound <number>' or 'atom <name> <kind> [<lo>, <hi>]'");
      }
    } catch (const InputError&) {
      throw;
    } catch (const Error& e) {
      throw InputError(where + e.what());
    }
  }
  return out;
}

// Canonical declaration text; parse_declarations(echo(d)) reproduces d.
inline std::string echo_declarations(const Declarations& d) {
  std::ostringstream out;
  out << "bound " << to_string(d.config.bound()) << "\n";
  for (const auto& p : d.props) {
    out << "atom " << p.atom().name() << " " << to_string(p.kind()) << " [" << to_string(p.lo()) << ", "
        << to_string(p.hi()) << "]\n";
  }
  return out.str();
}

}  // namespace qepi
