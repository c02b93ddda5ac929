#include "strobosim/errors.hpp"

#include <iostream>
#include <mutex>
#include <unordered_set>

namespace strobosim {

namespace {

std::mutex g_warn_mutex;
std::function<void(const std::string&)> g_handler;
std::unordered_set<std::string> g_seen;

}  // namespace

void emit_warning(const std::string& message) {
  std::lock_guard<std::mutex> lock(g_warn_mutex);
  if (g_handler) {
    g_handler(message);
    return;
  }
  if (g_seen.insert(message).second) {
    std::cerr << "strobosim: warning: " << message << "\n";
  }
}

void set_warning_handler(std::function<void(const std::string&)> handler) {
  std::lock_guard<std::mutex> lock(g_warn_mutex);
  g_handler = std::move(handler);
  g_seen.clear();
}

}  // namespace strobosim
