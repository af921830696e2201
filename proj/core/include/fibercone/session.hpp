#ifndef FIBERCONE_SESSION_HPP
#define FIBERCONE_SESSION_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibercone/rawpoly.hpp"

namespace fibercone {

/// Tunables every command honors.  n_max and window drive sequence
/// stabilization; truncation is the starting order for power-series
/// rings (doubled automatically until every operation certifies); guard
/// is the number of certification degrees kept above every answer.
struct SessionSettings {
  int n_max = 40;
  int window = 3;
  int truncation = 10;
  int guard = 2;
};

/// The ring a session works in: either the complete monomial-curve ring
/// of a numerical semigroup, or a power-series ring in named variables
/// over the rationals or a prime field.
struct RingSpec {
  enum class Kind { semigroup, local };
  Kind kind = Kind::semigroup;
  std::vector<long long> generators;        // semigroup only
  std::vector<std::string> variables;       // local only
  std::optional<int> truncation;            // local: starting order override
  std::optional<long long> characteristic;  // local: prime p; absent = Q
};

/// One named ideal, stored as parsed generators (exponents for semigroup
/// rings, integer polynomials for local rings) plus the canonical text
/// each generator serializes back to.
struct IdealSpec {
  std::string name;
  std::vector<long long> exponents;
  std::vector<RawPoly> polys;
  std::vector<std::string> generator_text;
};

struct Session {
  RingSpec ring;
  std::vector<IdealSpec> ideals;  // declaration order
  SessionSettings settings;

  /// The named ideal (UnknownIdeal otherwise).
  const IdealSpec& ideal(const std::string& name) const;
};

/// Parse the line-oriented session format.  '#' starts a comment; blank
/// lines are skipped.  Lines are:
///
///   ring semigroup <g1> <g2> ...
///   ring local <var> ... [trunc <N>] [char <p>]
///   ideal <Name> = <gen> [, <gen> ...]
///   set <key> <value>          (n_max | window | truncation | guard)
///
/// Semigroup generators are written t^k; local generators are integer
/// polynomial expressions in the declared variables built from + - * ^
/// and parentheses.  Exactly one ring per session, declared before any
/// ideal; ideal names are unique.  Errors: SyntaxError (with the line
/// number in the detail), UnknownVariable, ConstantTermGenerator, and
/// the ring-construction errors, all annotated with their line.
Session parse_session(std::istream& in);
Session parse_session_text(const std::string& text);

/// Canonical session text: re-parsing yields the same ring, settings,
/// and (as ideals of that ring) the same ideals.
std::string serialize_session(const Session& s);

/// Ordered `key = value` lines; rendering is byte-identical for equal
/// content.  Values are plain text: integers in decimal, booleans as
/// true/false, integer lists space-separated.
class Report {
 public:
  void add(const std::string& key, std::string value) {
    lines_.emplace_back(key, std::move(value));
  }
  void add(const std::string& key, const char* value) {
    lines_.emplace_back(key, std::string(value));
  }
  void add(const std::string& key, bool value) {
    lines_.emplace_back(key, value ? "true" : "false");
  }
  void add(const std::string& key, int value) {
    add(key, static_cast<long long>(value));
  }
  void add(const std::string& key, long long value) {
    lines_.emplace_back(key, std::to_string(value));
  }
  void add(const std::string& key, const std::vector<long long>& value) {
    std::string s;
    for (size_t k = 0; k < value.size(); ++k) {
      if (k) s += ' ';
      s += std::to_string(value[k]);
    }
    lines_.emplace_back(key, std::move(s));
  }

  const std::vector<std::pair<std::string, std::string>>& lines() const {
    return lines_;
  }
  void render(std::ostream& os) const;
  std::string to_string() const;

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

/// Every invariant of (I, J) the toolkit computes, serialized flat.
Report cmd_report(const Session& s, const std::string& i_name,
                  const std::string& j_name);

/// Multiplicity test for Cohen-Macaulayness of the fiber cone.
Report cmd_cm(const Session& s, const std::string& i_name,
              const std::string& j_name);

/// Gorenstein verdict with rule, socle lengths, and witness.
Report cmd_gorenstein(const Session& s, const std::string& i_name,
                      const std::string& j_name);

/// Hilbert series numerator of the fiber cone (no reduction needed).
Report cmd_series(const Session& s, const std::string& i_name);

/// One two-variable multiplicity coefficient (no reduction needed).
Report cmd_mixed(const Session& s, const std::string& i_name, int i, int j);

/// Levelwise intersection test I^n cap J = J I^(n-1).
Report cmd_vv(const Session& s, const std::string& i_name,
              const std::string& j_name);

/// Limit formula consistency for a principal x (and d-1 further named
/// ideals joined into the lower term).  The x-in-ideal variant is
/// reported when x is contained in I; the x-in-maximal variant always.
Report cmd_superficial(const Session& s, const std::string& i_name,
                       const std::string& x_name,
                       const std::vector<std::string>& a_names);

}  // namespace fibercone

#endif  // FIBERCONE_SESSION_HPP
