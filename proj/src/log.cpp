#include "uadirac/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace uadirac {

namespace {
std::atomic<bool> g_quiet{false};
std::mutex g_mutex;
} // namespace

void log_warning(const std::string& msg) {
  if (g_quiet.load()) return;
  std::lock_guard lock(g_mutex);
  std::cerr << "warning: " << msg << '\n';
}

void set_quiet(bool quiet) { g_quiet.store(quiet); }

} // namespace uadirac
