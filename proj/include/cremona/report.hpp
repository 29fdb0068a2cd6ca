#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cremona/pipeline.hpp"

namespace cremona {

extern const char* kToolVersion;   // "0.1.0"
extern const char* kReportSchema;  // "cremona-lab/1"

// Deterministic report document. Identical config + seed reproduce the
// serialized report byte for byte; wall-clock timings stay null unless
// explicitly requested (they would break determinism).
nlohmann::json build_report(const ConstructionResult& result, bool with_timings = false,
                            double elapsed_seconds = 0.0);

std::string report_to_string(const nlohmann::json& report);

// Key-value config file: keys n, lambda, mu, a, modular, psi_poly, seed.
ConstructionConfig parse_config_file(const std::string& text);

// Re-validates every certificate of a serialized report from the stored
// evidence alone. Returns a per-certificate list of (kind, ok) and sets
// `ok` false on any mismatch; throws Error in malformed input.
struct RecheckOutcome {
    bool ok = true;
    std::vector<std::pair<std::string, bool>> checks;
};
RecheckOutcome recheck_report(const nlohmann::json& report);

// CLI entry point (construct / graph / recheck); returns the process
// exit code. Streams are injectable for tests.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cremona
