#include "fibercone/session.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <type_traits>

#include "fibercone/artinian.hpp"
#include "fibercone/errors.hpp"
#include "fibercone/field.hpp"
#include "fibercone/invariants.hpp"
#include "fibercone/numsgp.hpp"
#include "fibercone/sgpideal.hpp"

namespace fibercone {

void Report::render(std::ostream& os) const {
  for (const auto& [key, value] : lines_) os << key << " = " << value << "\n";
}

std::string Report::to_string() const {
  std::ostringstream os;
  render(os);
  return os.str();
}

const IdealSpec& Session::ideal(const std::string& name) const {
  for (const auto& spec : ideals)
    if (spec.name == name) return spec;
  std::string known;
  for (const auto& spec : ideals) {
    if (!known.empty()) known += ", ";
    known += spec.name;
  }
  fail(ErrorKind::UnknownIdeal,
       "no ideal named '" + name + "' in this session" +
           (known.empty() ? std::string(" (none declared)")
                          : " (declared: " + known + ")"));
}

namespace {

[[noreturn]] void fail_line(ErrorKind kind, int lineno,
                            const std::string& msg) {
  fail(kind, "line " + std::to_string(lineno) + ": " + msg);
}

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool is_ident(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

long long parse_ll(const std::string& tok, int lineno,
                   const std::string& what) {
  size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != tok.size())
    fail_line(ErrorKind::SyntaxError, lineno,
              what + " must be an integer, got '" + tok + "'");
  return v;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    size_t comma = text.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(trim(text.substr(start)));
      return out;
    }
    out.push_back(trim(text.substr(start, comma - start)));
    start = comma + 1;
  }
}

/// Recursive-descent parser for one integer polynomial expression in the
/// declared variables, built from + - * ^ and parentheses.
class PolyParser {
 public:
  PolyParser(const std::string& src, const std::vector<std::string>& vars,
             int lineno)
      : src_(src), vars_(vars), lineno_(lineno) {}

  RawPoly parse() {
    RawPoly p = expr();
    skip_ws();
    if (pos_ != src_.size())
      fail_line(ErrorKind::SyntaxError, lineno_,
                "unexpected text '" + src_.substr(pos_) + "' in generator '" +
                    src_ + "'");
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RawPoly expr() {
    skip_ws();
    bool neg = eat('-');
    if (!neg) eat('+');
    RawPoly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  RawPoly term() {
    RawPoly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  RawPoly factor() {
    RawPoly base = primary();
    if (eat('^')) return base.pow(integer("exponent"));
    return base;
  }

  RawPoly primary() {
    skip_ws();
    if (pos_ >= src_.size())
      fail_line(ErrorKind::SyntaxError, lineno_,
                "generator '" + src_ + "' ends unexpectedly");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      RawPoly p = expr();
      if (!eat(')'))
        fail_line(ErrorKind::SyntaxError, lineno_,
                  "missing ')' in generator '" + src_ + "'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return RawPoly::constant(integer("coefficient"),
                               static_cast<int>(vars_.size()));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        name += src_[pos_++];
      for (size_t k = 0; k < vars_.size(); ++k)
        if (vars_[k] == name)
          return RawPoly::variable(static_cast<int>(k),
                                   static_cast<int>(vars_.size()));
      fail(ErrorKind::UnknownVariable,
           "line " + std::to_string(lineno_) + ": unknown variable '" + name +
               "' in generator '" + src_ + "'");
    }
    fail_line(ErrorKind::SyntaxError, lineno_,
              std::string("unexpected character '") + c + "' in generator '" +
                  src_ + "'");
  }

  long long integer(const std::string& what) {
    skip_ws();
    size_t start = pos_;
    while (pos_ < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    if (start == pos_)
      fail_line(ErrorKind::SyntaxError, lineno_,
                "expected an integer " + what + " in generator '" + src_ +
                    "'");
    if (pos_ - start > 18)
      fail_line(ErrorKind::SyntaxError, lineno_,
                what + " is too large in generator '" + src_ + "'");
    return std::stoll(src_.substr(start, pos_ - start));
  }

  const std::string& src_;
  const std::vector<std::string>& vars_;
  int lineno_;
  size_t pos_ = 0;
};

long long parse_curve_generator(const std::string& gen, int lineno) {
  if (gen == "t") return 1;
  if (gen.rfind("t^", 0) == 0) {
    std::string rest = gen.substr(2);
    if (!rest.empty() &&
        std::all_of(rest.begin(), rest.end(), [](unsigned char c) {
          return std::isdigit(c) != 0;
        }) &&
        rest.size() <= 18)
      return std::stoll(rest);
  }
  fail_line(ErrorKind::SyntaxError, lineno,
            "semigroup ideal generators are written t^k, got '" + gen + "'");
}

}  // namespace

Session parse_session(std::istream& in) {
  Session s;
  bool have_ring = false;
  std::shared_ptr<const NumericalSemigroup> sgp;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream iss(line);
    std::string head;
    if (!(iss >> head)) continue;

    if (head == "ring") {
      if (have_ring)
        fail_line(ErrorKind::SyntaxError, lineno,
                  "a session declares exactly one ring");
      std::string kind;
      if (!(iss >> kind))
        fail_line(ErrorKind::SyntaxError, lineno,
                  "ring needs a kind: semigroup or local");
      if (kind == "semigroup") {
        std::vector<long long> gens;
        std::string tok;
        while (iss >> tok)
          gens.push_back(parse_ll(tok, lineno, "semigroup generator"));
        if (gens.empty())
          fail_line(ErrorKind::SyntaxError, lineno,
                    "ring semigroup needs at least one generator");
        try {
          sgp = NumericalSemigroup::from_generators(gens);
        } catch (const CalcError& e) {
          fail(e.kind(),
               "line " + std::to_string(lineno) + ": " + e.detail());
        }
        s.ring.kind = RingSpec::Kind::semigroup;
        s.ring.generators = sgp->generators();
      } else if (kind == "local") {
        std::vector<std::string> toks;
        std::string tok;
        while (iss >> tok) toks.push_back(tok);
        size_t p = 0;
        std::vector<std::string> vars;
        while (p < toks.size() && toks[p] != "trunc" && toks[p] != "char") {
          if (!is_ident(toks[p]))
            fail_line(ErrorKind::SyntaxError, lineno,
                      "bad variable name '" + toks[p] + "'");
          for (const auto& v : vars)
            if (v == toks[p])
              fail_line(ErrorKind::SyntaxError, lineno,
                        "duplicate variable name '" + toks[p] + "'");
          vars.push_back(toks[p]);
          ++p;
        }
        if (vars.empty())
          fail_line(ErrorKind::SyntaxError, lineno,
                    "ring local needs at least one variable");
        std::optional<int> trunc;
        std::optional<long long> characteristic;
        while (p < toks.size()) {
          if (p + 1 >= toks.size())
            fail_line(ErrorKind::SyntaxError, lineno,
                      "'" + toks[p] + "' needs a value");
          long long v = parse_ll(toks[p + 1], lineno, toks[p]);
          if (toks[p] == "trunc") {
            if (v < 2)
              fail_line(ErrorKind::SyntaxError, lineno,
                        "trunc must be at least 2");
            trunc = static_cast<int>(v);
          } else if (toks[p] == "char") {
            if (v < 2)
              fail_line(ErrorKind::SyntaxError, lineno,
                        "char must be at least 2");
            characteristic = v;
          } else {
            fail_line(ErrorKind::SyntaxError, lineno,
                      "unexpected token '" + toks[p] + "' in ring line");
          }
          p += 2;
        }
        s.ring.kind = RingSpec::Kind::local;
        s.ring.variables = vars;
        s.ring.truncation = trunc;
        s.ring.characteristic = characteristic;
      } else {
        fail_line(ErrorKind::SyntaxError, lineno,
                  "ring kind must be semigroup or local, got '" + kind + "'");
      }
      have_ring = true;

    } else if (head == "ideal") {
      if (!have_ring)
        fail_line(ErrorKind::SyntaxError, lineno,
                  "declare the ring before any ideal");
      std::string name, eq;
      if (!(iss >> name))
        fail_line(ErrorKind::SyntaxError, lineno, "ideal needs a name");
      if (!is_ident(name))
        fail_line(ErrorKind::SyntaxError, lineno,
                  "bad ideal name '" + name + "'");
      for (const auto& spec : s.ideals)
        if (spec.name == name)
          fail_line(ErrorKind::SyntaxError, lineno,
                    "duplicate ideal name '" + name + "'");
      if (!(iss >> eq) || eq != "=")
        fail_line(ErrorKind::SyntaxError, lineno,
                  "expected '=' after the ideal name");
      std::string rest;
      std::getline(iss, rest);
      auto pieces = split_commas(rest);
      IdealSpec spec;
      spec.name = name;
      for (const auto& piece : pieces) {
        if (piece.empty())
          fail_line(ErrorKind::SyntaxError, lineno,
                    "empty generator in ideal '" + name + "'");
        if (s.ring.kind == RingSpec::Kind::semigroup) {
          long long k = parse_curve_generator(piece, lineno);
          if (k == 0)
            fail(ErrorKind::ConstantTermGenerator,
                 "line " + std::to_string(lineno) +
                     ": t^0 is a unit, not an ideal generator");
          if (!sgp->contains(k))
            fail(ErrorKind::ExponentNotInSemigroup,
                 "line " + std::to_string(lineno) + ": exponent " +
                     std::to_string(k) + " is not in the semigroup");
          spec.exponents.push_back(k);
          spec.generator_text.push_back("t^" + std::to_string(k));
        } else {
          PolyParser parser(piece, s.ring.variables, lineno);
          RawPoly poly = parser.parse();
          if (poly.is_zero())
            fail_line(ErrorKind::SyntaxError, lineno,
                      "generator '" + piece + "' is zero");
          if (poly.constant_coeff() != 0)
            fail(ErrorKind::ConstantTermGenerator,
                 "line " + std::to_string(lineno) + ": generator '" + piece +
                     "' has a nonzero constant term");
          spec.polys.push_back(poly);
          spec.generator_text.push_back(poly.to_string(s.ring.variables));
        }
      }
      s.ideals.push_back(std::move(spec));

    } else if (head == "set") {
      std::string key, val, extra;
      if (!(iss >> key >> val))
        fail_line(ErrorKind::SyntaxError, lineno,
                  "set needs a key and a value");
      if (iss >> extra)
        fail_line(ErrorKind::SyntaxError, lineno,
                  "unexpected token '" + extra + "' after the set value");
      long long v = parse_ll(val, lineno, "setting value");
      if (key == "n_max") {
        s.settings.n_max = static_cast<int>(v);
      } else if (key == "window") {
        s.settings.window = static_cast<int>(v);
      } else if (key == "truncation") {
        s.settings.truncation = static_cast<int>(v);
      } else if (key == "guard") {
        s.settings.guard = static_cast<int>(v);
      } else {
        fail_line(ErrorKind::SyntaxError, lineno,
                  "unknown setting '" + key +
                      "' (known: n_max, window, truncation, guard)");
      }

    } else {
      fail_line(ErrorKind::SyntaxError, lineno,
                "unknown directive '" + head +
                    "' (known: ring, ideal, set)");
    }
  }
  if (!have_ring) fail(ErrorKind::SyntaxError, "no ring declared");
  return s;
}

Session parse_session_text(const std::string& text) {
  std::istringstream in(text);
  return parse_session(in);
}

std::string serialize_session(const Session& s) {
  std::ostringstream os;
  if (s.ring.kind == RingSpec::Kind::semigroup) {
    os << "ring semigroup";
    for (long long g : s.ring.generators) os << ' ' << g;
  } else {
    os << "ring local";
    for (const auto& v : s.ring.variables) os << ' ' << v;
    if (s.ring.truncation) os << " trunc " << *s.ring.truncation;
    if (s.ring.characteristic) os << " char " << *s.ring.characteristic;
  }
  os << '\n';
  for (const auto& spec : s.ideals) {
    os << "ideal " << spec.name << " = ";
    for (size_t k = 0; k < spec.generator_text.size(); ++k) {
      if (k) os << ", ";
      os << spec.generator_text[k];
    }
    os << '\n';
  }
  os << "set n_max " << s.settings.n_max << '\n';
  os << "set window " << s.settings.window << '\n';
  os << "set truncation " << s.settings.truncation << '\n';
  os << "set guard " << s.settings.guard << '\n';
  return os.str();
}

namespace {

template <class C>
typename C::Ideal build_ideal(const C& calc, const IdealSpec& spec) {
  if constexpr (std::is_same_v<C, SemigroupCalculus>) {
    return ideal_from_monomials(calc.semigroup(), spec.exponents);
  } else {
    return calc.from_polys(spec.polys);
  }
}

void add_ring_lines(Report& out, const Session& s) {
  if (s.ring.kind == RingSpec::Kind::semigroup) {
    out.add("ring.kind", "semigroup");
    out.add("ring.generators", s.ring.generators);
  } else {
    out.add("ring.kind", "local");
    std::string vars;
    for (size_t k = 0; k < s.ring.variables.size(); ++k) {
      if (k) vars += ' ';
      vars += s.ring.variables[k];
    }
    out.add("ring.variables", vars);
    if (s.ring.characteristic)
      out.add("ring.characteristic", *s.ring.characteristic);
  }
}

template <class C>
void add_precision_line(Report& out, const C& calc) {
  if constexpr (!std::is_same_v<C, SemigroupCalculus>) {
    out.add("precision.truncation_order",
            static_cast<long long>(calc.ring()->trunc()));
  }
}

/// Run body(calc, policy) over the session's ring.  Local rings start at
/// the session's truncation order and double it until every operation
/// certifies, so body must be safe to re-run from scratch.
template <class Fn>
Report dispatch(const Session& s, Fn&& body) {
  StabilizationPolicy pol;
  pol.window = s.settings.window;
  pol.n_max = s.settings.n_max;
  pol.validate();
  require(s.settings.guard >= 1, ErrorKind::BadParameters,
          "guard must be at least 1");
  if (s.ring.kind == RingSpec::Kind::semigroup) {
    auto sgp = NumericalSemigroup::from_generators(s.ring.generators);
    SemigroupCalculus calc(sgp);
    return body(calc, pol);
  }
  PrecisionPolicy ppol;
  ppol.trunc0 = s.ring.truncation ? *s.ring.truncation : s.settings.truncation;
  ppol.guard = s.settings.guard;
  int dim = static_cast<int>(s.ring.variables.size());
  if (s.ring.characteristic) {
    PrimeField field(static_cast<std::uint64_t>(*s.ring.characteristic));
    return with_auto_precision(
        dim, field, ppol,
        [&](std::shared_ptr<const TruncatedRing<PrimeField>> ring) {
          LocalCalculus<PrimeField> calc(ring, ppol.guard);
          return body(calc, pol);
        },
        s.ring.variables);
  }
  return with_auto_precision(
      dim, RationalField{}, ppol,
      [&](std::shared_ptr<const TruncatedRing<RationalField>> ring) {
        LocalCalculus<RationalField> calc(ring, ppol.guard);
        return body(calc, pol);
      },
      s.ring.variables);
}

}  // namespace

Report cmd_report(const Session& s, const std::string& i_name,
                  const std::string& j_name) {
  const IdealSpec& ispec = s.ideal(i_name);
  const IdealSpec& jspec = s.ideal(j_name);
  return dispatch(s, [&](auto& calc, const StabilizationPolicy& pol) {
    using C = std::decay_t<decltype(calc)>;
    FiberAnalysis<C> an(calc, build_ideal(calc, ispec),
                        build_ideal(calc, jspec), pol);
    FiberReport rep = an.report();
    Report out;
    add_ring_lines(out, s);
    out.add("ideal.i", ispec.name);
    out.add("ideal.j", jspec.name);
    out.add("dimension", rep.dimension);
    out.add("mu.value", rep.mu_i);
    out.add("colength.value", rep.flags.colength_value);
    out.add("e.value", rep.e_i.value);
    if (rep.e_i.reduction_route)
      out.add("e.reduction_route", *rep.e_i.reduction_route);
    out.add("e.difference_route", rep.e_i.difference_route);
    out.add("e.stabilized_at", rep.e_i.stabilized_at);
    out.add("e.routes_agree", rep.e_i.routes_agree);
    out.add("f0.value", rep.f0);
    out.add("f0.stabilized_at", rep.f0_stabilized_at);
    for (const auto& c : rep.mixed)
      out.add("mixed." + std::to_string(c.i) + "_" + std::to_string(c.j),
              c.value);
    out.add("reduction.number", rep.red_num);
    out.add("h.lengths", rep.h_lengths);
    out.add("series.numerator", rep.numerator);
    out.add("series.denominator_power", rep.dimension);
    out.add("flags.sally", rep.flags.sally);
    out.add("flags.sally_length", rep.flags.sally_length);
    out.add("flags.minimal_multiplicity", rep.flags.minimal_multiplicity);
    out.add("flags.almost_minimal_multiplicity",
            rep.flags.almost_minimal_multiplicity);
    out.add("flags.stable_products_equal", rep.flags.stable_products_equal);
    out.add("flags.stable_product_length", rep.flags.stable_product_length);
    out.add("flags.minimal_mixed", rep.flags.minimal_mixed);
    out.add("flags.almost_minimal_mixed", rep.flags.almost_minimal_mixed);
    out.add("flags.mixed_value", rep.flags.mixed_value);
    out.add("graded.ok", rep.graded_cm.ok);
    if (!rep.graded_cm.ok) out.add("graded.failed_at", rep.graded_cm.failed_at);
    if (rep.graded_cm.witness) out.add("graded.witness", *rep.graded_cm.witness);
    out.add("cm.verdict", rep.cm.verdict);
    out.add("cm.f0", rep.cm.f0);
    out.add("cm.colength_fiber", rep.cm.fiber_quotient_total);
    out.add("cm.h", rep.cm.h_lengths);
    out.add("socle.lengths", rep.socle_lengths);
    out.add("gorenstein.verdict", rep.gorenstein.verdict);
    out.add("gorenstein.criterion", rep.gorenstein.criterion);
    if (rep.gorenstein.witness)
      out.add("gorenstein.witness", *rep.gorenstein.witness);
    out.add("gorbound.colon_length", rep.gorbound.colon_length);
    out.add("gorbound.colength_i", rep.gorbound.colength_i);
    out.add("gorbound.mu_i", rep.gorbound.mu_i);
    out.add("gorbound.mu_m_plus_d", rep.gorbound.mu_m_plus_d);
    out.add("gorbound.lengths_equal", rep.gorbound.lengths_equal);
    out.add("gorbound.mu_within_bound", rep.gorbound.mu_within_bound);
    add_precision_line(out, calc);
    return out;
  });
}

Report cmd_cm(const Session& s, const std::string& i_name,
              const std::string& j_name) {
  const IdealSpec& ispec = s.ideal(i_name);
  const IdealSpec& jspec = s.ideal(j_name);
  return dispatch(s, [&](auto& calc, const StabilizationPolicy& pol) {
    using C = std::decay_t<decltype(calc)>;
    FiberAnalysis<C> an(calc, build_ideal(calc, ispec),
                        build_ideal(calc, jspec), pol);
    CmResult res = an.cm_test();
    Report out;
    out.add("cm.verdict", res.verdict);
    out.add("cm.f0", res.f0);
    out.add("cm.colength_fiber", res.fiber_quotient_total);
    out.add("cm.h", res.h_lengths);
    add_precision_line(out, calc);
    return out;
  });
}

Report cmd_gorenstein(const Session& s, const std::string& i_name,
                      const std::string& j_name) {
  const IdealSpec& ispec = s.ideal(i_name);
  const IdealSpec& jspec = s.ideal(j_name);
  return dispatch(s, [&](auto& calc, const StabilizationPolicy& pol) {
    using C = std::decay_t<decltype(calc)>;
    FiberAnalysis<C> an(calc, build_ideal(calc, ispec),
                        build_ideal(calc, jspec), pol);
    GorensteinResult res = an.gorenstein_test();
    Report out;
    out.add("gorenstein.verdict", res.verdict);
    out.add("gorenstein.criterion", res.criterion);
    out.add("gorenstein.socle", res.socle_lengths);
    out.add("gorenstein.socle_total", res.socle_total);
    if (res.witness) out.add("gorenstein.witness", *res.witness);
    add_precision_line(out, calc);
    return out;
  });
}

Report cmd_series(const Session& s, const std::string& i_name) {
  const IdealSpec& ispec = s.ideal(i_name);
  return dispatch(s, [&](auto& calc, const StabilizationPolicy& pol) {
    using C = std::decay_t<decltype(calc)>;
    FiberAnalysis<C> an(calc, build_ideal(calc, ispec), pol);
    std::vector<long long> numerator = an.hilbert_numerator();
    Report out;
    out.add("series.numerator", numerator);
    out.add("series.denominator_power", calc.dimension());
    add_precision_line(out, calc);
    return out;
  });
}

Report cmd_mixed(const Session& s, const std::string& i_name, int i, int j) {
  const IdealSpec& ispec = s.ideal(i_name);
  return dispatch(s, [&](auto& calc, const StabilizationPolicy& pol) {
    using C = std::decay_t<decltype(calc)>;
    FiberAnalysis<C> an(calc, build_ideal(calc, ispec), pol);
    long long value = an.mixed_multiplicity(i, j);
    Report out;
    out.add("mixed.i", i);
    out.add("mixed.j", j);
    out.add("mixed.value", value);
    add_precision_line(out, calc);
    return out;
  });
}

Report cmd_vv(const Session& s, const std::string& i_name,
              const std::string& j_name) {
  const IdealSpec& ispec = s.ideal(i_name);
  const IdealSpec& jspec = s.ideal(j_name);
  return dispatch(s, [&](auto& calc, const StabilizationPolicy& pol) {
    using C = std::decay_t<decltype(calc)>;
    FiberAnalysis<C> an(calc, build_ideal(calc, ispec),
                        build_ideal(calc, jspec), pol);
    GradedCmResult res = an.valabrega_valla();
    Report out;
    out.add("vv.ok", res.ok);
    if (!res.ok) out.add("vv.failed_at", res.failed_at);
    if (res.witness) out.add("vv.witness", *res.witness);
    add_precision_line(out, calc);
    return out;
  });
}

Report cmd_superficial(const Session& s, const std::string& i_name,
                       const std::string& x_name,
                       const std::vector<std::string>& a_names) {
  const IdealSpec& ispec = s.ideal(i_name);
  const IdealSpec& xspec = s.ideal(x_name);
  std::vector<const IdealSpec*> aspecs;
  for (const auto& name : a_names) aspecs.push_back(&s.ideal(name));
  return dispatch(s, [&](auto& calc, const StabilizationPolicy& pol) {
    using C = std::decay_t<decltype(calc)>;
    using Ideal = typename C::Ideal;
    Ideal i = build_ideal(calc, ispec);
    Ideal x = build_ideal(calc, xspec);
    std::vector<Ideal> a_list;
    for (const IdealSpec* spec : aspecs)
      a_list.push_back(build_ideal(calc, *spec));
    FiberAnalysis<C> an(calc, i, pol);
    Report out;
    auto emit = [&out](const std::string& prefix,
                       const SuperficialResult& res) {
      out.add(prefix + ".limit", res.limit);
      out.add(prefix + ".stabilized_at", res.stabilized_at);
      out.add(prefix + ".reference", res.reference);
      out.add(prefix + ".f0", res.f0);
      out.add(prefix + ".consistent", res.consistent);
    };
    emit("superficial.maximal",
         an.superficial_limit_check(a_list, x,
                                    SuperficialVariant::last_in_maximal));
    if (calc.subset(x, i))
      emit("superficial.ideal",
           an.superficial_limit_check(a_list, x,
                                      SuperficialVariant::last_in_ideal));
    add_precision_line(out, calc);
    return out;
  });
}

}  // namespace fibercone
