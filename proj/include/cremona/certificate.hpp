#pragma once

#include <string>

#include <json.hpp>

namespace cremona {

// Machine-checkable verdict with evidence sufficient to re-check it
// from the serialized report alone.
struct Certificate {
    std::string kind;     // GraphMatch, TowerResolution, Degree, Unicuspidal,
                          // ComplementIso, NonEquivalence
    std::string verdict;  // pass / fail / inconclusive
    nlohmann::json evidence;
};

} // namespace cremona
