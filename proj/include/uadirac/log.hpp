#pragma once

#include <string>

namespace uadirac {

/// Warnings go to stderr; set quiet to silence them (tests, sweeps).
void log_warning(const std::string& msg);
void set_quiet(bool quiet);

} // namespace uadirac
