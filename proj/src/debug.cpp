#include "fitbench/debug.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

namespace fitbench {
namespace {

bool initial_state() {
#ifndef NDEBUG
  return true;
#else
  const char* env = std::getenv("FITBENCH_DEBUG_CHECKS");
  return env != nullptr && std::string(env) == "1";
#endif
}

bool& state() {
  static bool enabled = initial_state();
  return enabled;
}

DiagnosticHandler& handler() {
  static DiagnosticHandler h = [](std::string_view msg) {
    std::fprintf(stderr, "fitbench: %.*s\n", static_cast<int>(msg.size()), msg.data());
  };
  return h;
}

}  // namespace

bool debug_checks_enabled() { return state(); }

void set_debug_checks(bool enabled) { state() = enabled; }

void set_diagnostic_handler(DiagnosticHandler h) {
  handler() = h ? std::move(h) : DiagnosticHandler([](std::string_view) {});
}

void emit_diagnostic(std::string_view message) { handler()(message); }

}  // namespace fitbench
