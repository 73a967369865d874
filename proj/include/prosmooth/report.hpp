#pragma once
#include <string>

#include "prosmooth/json_io.hpp"

namespace prosmooth {

// Display name used in text reports: CertifiedYes / CertifiedNo /
// UndecidedUpTo.
std::string outcome_display(Outcome o);

// Multi-line rendering of a verdict object (the output of verdict_to_json):
// the outcome line plus one line per witness component, each prefixed with
// `indent`.  Text reports are produced from the same JSON as the JSON
// output, so both modes carry identical payloads.
std::string render_verdict(const Json& verdict, const std::string& indent = "");

// Text rendering of a full CLI report (dispatches on report["command"]).
std::string render_text(const Json& report);

}  // namespace prosmooth
