#pragma once

#include <functional>
#include <string_view>

namespace fitbench {

// Run-time switch for the container/graph consistency diagnostics.
//
// Defaults to on in assert-enabled builds. Release builds can opt in with
// the environment variable FITBENCH_DEBUG_CHECKS=1 or set_debug_checks().
bool debug_checks_enabled();
void set_debug_checks(bool enabled);

// Diagnostics are warnings, not errors: traversal continues after one is
// emitted. The default handler writes to stderr.
using DiagnosticHandler = std::function<void(std::string_view)>;
void set_diagnostic_handler(DiagnosticHandler handler);
void emit_diagnostic(std::string_view message);

}  // namespace fitbench
