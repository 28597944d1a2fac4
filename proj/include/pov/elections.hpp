#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pov/equilibrium.hpp"

namespace pov {

/// Election actions: each agent either votes (nullopt) or nominates an
/// agent -- possibly itself -- for office. Voting rights derive from the
/// actions: agents who vote, plus nominated agents who did not themselves
/// nominate. Nominating costs the vote regardless of being nominated.
struct ElectionProfile {
    std::vector<std::optional<int>> actions;  // nullopt = Vote, value = nominee

    std::vector<int> nominators() const;
    /// Distinct nominated agents, ascending; duplicates collapse.
    std::vector<int> candidates() const;
    std::vector<int> voters() const;
};

void validate_election_profile(const Polity& polity, const ElectionProfile& profile);

/// Policy lottery with alternatives restricted to nominated agents' peaks.
/// Edge rules mirror the continuous procedure: zero candidates -> uniform
/// over all peaks; one candidate -> elected; two or more -> uniform random
/// pair and sincere majority vote of the derived voters, draws resolved by
/// coin flip; no voters at all -> uniform over the candidates.
OutcomeLottery election_outcome(const Polity& polity, const ElectionProfile& profile);

/// Equilibrium iff no agent improves by any of its N+1 alternative
/// actions. An equal-utility switch to Vote counts as improving
/// (tie-break rule); every other action must improve strictly.
EquilibriumCertificate certify_election(const Polity& polity, const ElectionProfile& profile);

/// Exhaustive scan of all (N+1)^N action profiles, guarded to N <= 7.
/// Rows appear in lexicographic action order (Vote < nominate 1 < ... <
/// nominate N).
std::vector<std::pair<ElectionProfile, EquilibriumCertificate>> enumerate_election_equilibria(
    const Polity& polity);

}  // namespace pov
