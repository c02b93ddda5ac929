#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace strobosim {

// Bad user input or configuration. The CLI maps this to exit code 1.
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical invariant failed at runtime (norm drift, hermiticity defect,
// collapsed variance, ...). The CLI maps this to exit code 2.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-fatal diagnostics (aliasing guards, boundary-wrap warnings).
// The default handler prints each distinct message once to stderr.
void emit_warning(const std::string& message);

// Install a custom handler; pass nullptr to restore the default.
void set_warning_handler(std::function<void(const std::string&)> handler);

}  // namespace strobosim
