#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pov/elections.hpp"
#include "pov/tournament.hpp"

namespace pov {

enum class Variant { Baseline, Tournament, Election };

/// One scenario: a polity, the procedure variant, scan parameters, and
/// optionally an explicit strategy profile to certify. Loaded from a JSON
/// document; rationals are accepted as "p/q" strings, decimal strings, or
/// JSON numbers (promoted exactly).
struct ScenarioConfig {
    Rat bound;
    std::vector<Rat> peaks;
    Variant variant = Variant::Baseline;
    std::optional<Rat> artificial_peak;  // tournament only; defaults to 0 when needed
    Rat epsilon;                         // default bound/1000
    Rat grid_step;                       // default bound/50
    int max_proposers = 2;
    std::optional<RoleProfile> profile;
    std::optional<ElectionProfile> election_profile;
    std::uint64_t seed = 0;
    int samples = 1000;

    static ScenarioConfig from_json(const nlohmann::ordered_json& doc);
    static ScenarioConfig from_file(const std::string& path);

    Polity polity() const;
    AugmentedPolity augmented() const;
};

/// A finished run: a JSON summary plus CSV rows covering the same data.
/// Both renderings are deterministic byte-for-byte for a fixed config.
struct Report {
    nlohmann::ordered_json summary;
    std::string csv;
};

/// Certifies the configured profile (or the canonical median profile when
/// none is given) and reports verdict, witness, outcome lottery, and
/// per-agent expected utilities.
Report run_verify(const ScenarioConfig& config);

/// Enumerates certified equilibria under the configured variant; one row
/// per equilibrium in deterministic order.
Report run_enumerate(const ScenarioConfig& config);

/// Draws config.samples outcomes of the configured profile with the
/// configured seed and tabulates frequencies next to exact probabilities.
Report run_sample(const ScenarioConfig& config);

}  // namespace pov
