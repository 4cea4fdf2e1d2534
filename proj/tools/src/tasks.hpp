#pragma once

#include "config.hpp"
#include "report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zcrit::cli {

// Subcommand that owns a task kind.
enum class Group { Eval, Stability, Positivity, Scan, Verify };

const char* to_string(Group g);
std::optional<Group> group_of(std::string_view kind);
std::vector<std::string> task_kinds();

// Every task kind is known and every named reference resolves. Throws ConfigError / ReferenceError.
void check_references(const Config& c);

struct RunOptions {
  std::optional<Group> only;  // run just this group; other tasks are reported as skipped
  unsigned jobs = 1;
};

struct RunOutcome {
  Json report;
  int exit_code = 0;  // 0 ok, 1 some task failed
};

// Tasks may run concurrently; the report keeps config order.
RunOutcome run(const Config& c, const RunOptions& options);

// Built-in configuration used by `verify` when no config is given: the full pointwise suite on TP2.
std::string builtin_verify_yaml();

}  // namespace zcrit::cli
