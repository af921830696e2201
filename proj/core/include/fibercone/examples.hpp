#ifndef FIBERCONE_EXAMPLES_HPP
#define FIBERCONE_EXAMPLES_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace fibercone {

/// One named assertion inside a built-in example: what was checked,
/// whether it held, and a short description of the mismatch otherwise.
struct ExampleCheck {
  std::string name;
  bool pass = false;
  std::string detail;  // empty when pass is true
};

/// The outcome of one built-in example run end to end.
struct ExampleOutcome {
  std::string id;
  std::string title;
  std::vector<ExampleCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

/// Ids of the built-in examples, in battery order.
std::vector<std::string> builtin_example_ids();

/// Run the built-in example battery.  `only` restricts the battery to
/// ids containing it as a case-insensitive substring; empty runs all.
/// A computation error inside an example is recorded as a failed check
/// named "completed" rather than thrown.
std::vector<ExampleOutcome> run_builtin_examples(const std::string& only = {});

/// Render outcomes as one deterministic `id.check = PASS|FAIL` line per
/// check plus a trailing summary line; returns true iff every check of
/// every outcome passed and at least one example ran.
bool print_example_outcomes(std::ostream& os,
                            const std::vector<ExampleOutcome>& outcomes);

}  // namespace fibercone

#endif  // FIBERCONE_EXAMPLES_HPP
