#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace csctop {

// Entry point shared by the command-line binary and the in-process tests.
// Returns the process exit code:
//   0 = success / property holds
//   2 = pending or unknown (bounded search exhausted, opaque oracle, ...)
//   3 = property decided false
//   1 = usage error or internal failure
int dispatch(const std::vector<std::string>& args,
             std::istream& in,
             std::ostream& out,
             std::ostream& err);

} // namespace csctop
