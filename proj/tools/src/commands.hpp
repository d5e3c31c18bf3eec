#pragma once

#include <stdexcept>

#include "config.hpp"

namespace hkink::cli {

enum ExitCode : int {
  kOk = 0,
  kConfig = 2,
  kNumeric = 3,
  kMissing = 4,
  kInvariant = 5,
};

/// A required artifact from an earlier subcommand is absent or stale.
class MissingPrerequisite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  RunConfig cfg;
  int jobs = 1;
};

int cmd_eig(const Context& ctx);
int cmd_construct(const Context& ctx);
int cmd_continue(const Context& ctx);
int cmd_farfield(const Context& ctx);
int cmd_verify(const Context& ctx);

}  // namespace hkink::cli
