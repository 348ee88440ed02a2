#pragma once
#include <string>
#include <utility>
#include <vector>

#include "spdcomb/types.hpp"

namespace spdcomb::test {

/// Collects warnings instead of printing them; restores the previous handler
/// on destruction.
struct WarningCapture {
  std::vector<std::pair<std::string, std::string>> seen;
  WarningHandler previous;

  WarningCapture() {
    previous = set_warning_handler(
        [this](const std::string& cat, const std::string& msg) { seen.emplace_back(cat, msg); });
  }
  ~WarningCapture() { set_warning_handler(std::move(previous)); }

  bool has(const std::string& category) const {
    for (const auto& [cat, msg] : seen)
      if (cat == category) return true;
    return false;
  }
};

}  // namespace spdcomb::test
