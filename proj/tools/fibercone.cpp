// Command-line front end: parses a session file describing a ring and
// named ideals, runs one analysis command, and prints deterministic
// `key = value` lines.  Exit codes: 0 success, 1 failed assertion or
// failed example check, 2 input or usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fibercone/errors.hpp"
#include "fibercone/examples.hpp"
#include "fibercone/session.hpp"

namespace {

int usage(std::ostream& os) {
  os << "usage: fibercone <session-file> <command> [args] [options]\n"
        "       fibercone examples [--only <id-substring>]\n"
        "\n"
        "commands (ideals are referred to by their session names):\n"
        "  report <I> <J>            every computed invariant of (I, J)\n"
        "  cm <I> <J>                Cohen-Macaulay multiplicity test\n"
        "  gorenstein <I> <J>        Gorenstein verdict with witness\n"
        "  series <I>                Hilbert series numerator\n"
        "  mixed <I> <i> <j>         one two-variable multiplicity\n"
        "  vv <I> <J>                levelwise intersection test\n"
        "  superficial <I> <x> [a..] limit-formula consistency check\n"
        "  examples                  run the built-in example battery\n"
        "\n"
        "options:\n"
        "  --format plain            output format (plain is the default\n"
        "                            and only format)\n"
        "  --only <id-substring>     restrict the example battery\n"
        "  --nmax <K>                stabilization horizon override\n"
        "  --window <W>              stabilization window override\n"
        "  --trunc <N>               starting truncation order override\n";
  return 2;
}

int input_error(fibercone::ErrorKind kind, const std::string& detail) {
  std::cout << "error.kind = " << fibercone::to_string(kind) << "\n";
  std::cout << "error.detail = " << detail << "\n";
  return kind == fibercone::ErrorKind::ConsistencyError ? 1 : 2;
}

long long parse_int_arg(const std::string& tok, const std::string& what) {
  size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != tok.size())
    fibercone::fail(fibercone::ErrorKind::BadParameters,
                    what + " must be an integer, got '" + tok + "'");
  return v;
}

struct Options {
  std::vector<std::string> positional;
  std::string only;
  std::optional<int> nmax, window, trunc;
};

// Splits argv into positional arguments and the known --options.
Options parse_argv(int argc, char** argv) {
  Options opt;
  for (int k = 1; k < argc; ++k) {
    std::string arg = argv[k];
    auto value = [&](const std::string& name) -> std::string {
      if (k + 1 >= argc)
        fibercone::fail(fibercone::ErrorKind::BadParameters,
                        name + " needs a value");
      return argv[++k];
    };
    if (arg == "--format") {
      std::string fmt = value(arg);
      if (fmt != "plain")
        fibercone::fail(fibercone::ErrorKind::BadParameters,
                        "unknown format '" + fmt + "' (only: plain)");
    } else if (arg == "--only") {
      opt.only = value(arg);
    } else if (arg == "--nmax") {
      opt.nmax = static_cast<int>(parse_int_arg(value(arg), "--nmax"));
    } else if (arg == "--window") {
      opt.window = static_cast<int>(parse_int_arg(value(arg), "--window"));
    } else if (arg == "--trunc") {
      opt.trunc = static_cast<int>(parse_int_arg(value(arg), "--trunc"));
    } else if (arg.rfind("--", 0) == 0) {
      fibercone::fail(fibercone::ErrorKind::BadParameters,
                      "unknown option '" + arg + "'");
    } else {
      opt.positional.push_back(arg);
    }
  }
  return opt;
}

int run(const Options& opt) {
  using namespace fibercone;
  const auto& pos = opt.positional;
  if (pos.empty()) return usage(std::cerr);

  if (pos[0] == "examples") {
    if (pos.size() != 1)
      fail(ErrorKind::BadParameters,
           "the examples command takes no further arguments");
    auto outcomes = run_builtin_examples(opt.only);
    if (outcomes.empty())
      fail(ErrorKind::BadParameters,
           "no built-in example id contains '" + opt.only + "'");
    return print_example_outcomes(std::cout, outcomes) ? 0 : 1;
  }

  if (pos.size() < 2) return usage(std::cerr);
  std::ifstream in(pos[0]);
  if (!in)
    fail(ErrorKind::SyntaxError, "cannot open session file '" + pos[0] + "'");
  Session session = parse_session(in);
  if (opt.nmax) session.settings.n_max = *opt.nmax;
  if (opt.window) session.settings.window = *opt.window;
  if (opt.trunc) {
    session.settings.truncation = *opt.trunc;
    session.ring.truncation = *opt.trunc;
  }

  const std::string& command = pos[1];
  auto need = [&](size_t n, const std::string& shape) {
    if (pos.size() != 2 + n)
      fail(ErrorKind::BadParameters,
           "usage: fibercone <session-file> " + shape);
  };

  Report report;
  if (command == "report") {
    need(2, "report <I> <J>");
    report = cmd_report(session, pos[2], pos[3]);
  } else if (command == "cm") {
    need(2, "cm <I> <J>");
    report = cmd_cm(session, pos[2], pos[3]);
  } else if (command == "gorenstein") {
    need(2, "gorenstein <I> <J>");
    report = cmd_gorenstein(session, pos[2], pos[3]);
  } else if (command == "series") {
    need(1, "series <I>");
    report = cmd_series(session, pos[2]);
  } else if (command == "mixed") {
    need(3, "mixed <I> <i> <j>");
    report = cmd_mixed(session, pos[2],
                       static_cast<int>(parse_int_arg(pos[3], "i")),
                       static_cast<int>(parse_int_arg(pos[4], "j")));
  } else if (command == "vv") {
    need(2, "vv <I> <J>");
    report = cmd_vv(session, pos[2], pos[3]);
  } else if (command == "superficial") {
    if (pos.size() < 4)
      fail(ErrorKind::BadParameters,
           "usage: fibercone <session-file> superficial <I> <x> [a ...]");
    std::vector<std::string> a_names(pos.begin() + 4, pos.end());
    report = cmd_superficial(session, pos[2], pos[3], a_names);
  } else {
    fail(ErrorKind::BadParameters, "unknown command '" + command + "'");
  }
  report.render(std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(parse_argv(argc, argv));
  } catch (const fibercone::CalcError& e) {
    return input_error(e.kind(), e.detail());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
