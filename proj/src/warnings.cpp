#include "spdcomb/types.hpp"

#include <cstdio>
#include <mutex>
#include <set>

namespace spdcomb {
namespace {

std::mutex g_mutex;
bool g_quiet = false;
std::set<std::string> g_seen;
WarningHandler g_handler;  // empty => default behaviour

void default_handler(const std::string& category, const std::string& message) {
  if (g_quiet) return;
  if (!g_seen.insert(category).second) return;  // one line per category
  std::fprintf(stderr, "warning [%s]: %s\n", category.c_str(), message.c_str());
}

}  // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard<std::mutex> lock(g_mutex);
  WarningHandler old = g_handler;
  g_handler = std::move(handler);
  return old;
}

void set_warnings_quiet(bool quiet) {
  std::lock_guard<std::mutex> lock(g_mutex);
  g_quiet = quiet;
}

void reset_warning_dedup() {
  std::lock_guard<std::mutex> lock(g_mutex);
  g_seen.clear();
}

void emit_warning(const std::string& category, const std::string& message) {
  std::lock_guard<std::mutex> lock(g_mutex);
  if (g_handler)
    g_handler(category, message);
  else
    default_handler(category, message);
}

}  // namespace spdcomb
