#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pov/engine.hpp"

namespace pov {

enum class DeviationKind { SwitchToVote, SwitchToPropose, MoveProposal, Nominate };

/// One alternative action for one agent, everything else held fixed.
struct Deviation {
    DeviationKind kind;
    int agent = 0;
    std::optional<Rat> value;    // proposal value, for SwitchToPropose / MoveProposal
    std::optional<int> nominee;  // elections only

    std::string describe() const;
};

struct Improvement {
    Deviation deviation;
    Rat utility_before;
    Rat utility_after;
};

/// Verdict of a deviation scan. A refutation carries a witness deviation;
/// witness utility_after strictly exceeds utility_before except for
/// switch-to-Vote witnesses, where equality refutes by tie-break rule
/// (equal expected utility resolves to voting).
struct EquilibriumCertificate {
    bool is_equilibrium = false;
    std::optional<Improvement> witness;
};

/// The finite deviation-candidate value set for one deviator: every agent
/// peak, the reflection 2*theta_v - x_q of every standing proposal across
/// every voter peak together with both epsilon-shifts of it, and a uniform
/// grid of step grid_step over [-A, A]; clamped to bounds, deduplicated,
/// sorted ascending. Always contains the deviator's own peak.
std::vector<Rat> candidate_values(const Polity& polity, const RoleProfile& profile, int deviator,
                                  const Rat& epsilon, const Rat& grid_step);

/// Full scan of the agent's alternative actions (switch to Vote, or
/// propose/move to each candidate value). Returns the improving action
/// with the highest expected utility, or nullopt if none improves. An
/// equal-utility switch to Vote counts as improving (tie-break rule);
/// every other action must improve strictly.
std::optional<Improvement> best_response(const Polity& polity, const RoleProfile& profile,
                                         int agent, const std::vector<Rat>& candidates);

/// Equilibrium iff no agent has an improving candidate deviation. Sound
/// relative to the finite candidate set. A refutation reports the first
/// improving deviation found (scan order is deterministic).
EquilibriumCertificate certify(const Polity& polity, const RoleProfile& profile,
                               const Rat& epsilon, const Rat& grid_step);

struct EnumeratedEquilibrium {
    RoleProfile profile;
    EquilibriumCertificate certificate;
    OutcomeLottery lottery;
    /// Rows with identical outcome lotteries share an equivalence class id.
    int equivalence_class = 0;
};

/// Scans every role assignment with at most max_proposers proposers;
/// proposal values are drawn from the peak/grid values inside the
/// interval [min(theta_p, theta_mv_left), max(theta_p, theta_mv_right)]
/// spanned by the proposer's peak and the voters' medians. Returns the
/// certified equilibria sorted by role pattern, then proposals.
std::vector<EnumeratedEquilibrium> enumerate_equilibria(const Polity& polity, int max_proposers,
                                                        const Rat& epsilon, const Rat& grid_step);

/// The Theorem-style canonical profile: for odd N the median proposes its
/// peak; for even N both medians propose their peaks; everyone else votes.
RoleProfile canonical_profile(const Polity& polity);

RoleProfile apply_deviation(const RoleProfile& profile, const Deviation& deviation);

namespace detail {

using OutcomeFn = std::function<OutcomeLottery(const RoleProfile&)>;

/// Candidate values split so the scan can try the high-yield ones first.
struct CandidateSet {
    std::vector<Rat> preferred;  // peaks and reflections (+- epsilon), sorted dedup
    std::vector<Rat> grid;       // uniform grid, sorted dedup
};

std::vector<Rat> build_grid(const Rat& bound, const Rat& grid_step);

/// ai_peak, when set, is the stage-0 voter's peak: it joins the electorate
/// for reflection candidates and median spans but is not an agent.
CandidateSet build_candidates(const Polity& polity, const RoleProfile& profile, const Rat& epsilon,
                              const Rat& grid_step,
                              const std::optional<Rat>& ai_peak = std::nullopt);

EquilibriumCertificate certify_with(const Polity& polity, const RoleProfile& profile,
                                    const Rat& epsilon, const Rat& grid_step,
                                    const OutcomeFn& outcome,
                                    const std::optional<Rat>& ai_peak = std::nullopt);

std::vector<EnumeratedEquilibrium> enumerate_with(const Polity& polity, int max_proposers,
                                                  const Rat& epsilon, const Rat& grid_step,
                                                  const OutcomeFn& outcome,
                                                  const std::optional<Rat>& ai_peak);

}  // namespace detail

}  // namespace pov
