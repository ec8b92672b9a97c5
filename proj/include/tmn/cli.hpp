#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tmn {

// Full command surface of the `tmn` tool. Returns the process exit status;
// any failure prints exactly one "error: <Code>: <text>" line to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tmn
