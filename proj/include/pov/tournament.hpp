#pragma once

#include <map>
#include <optional>
#include <vector>

#include "pov/equilibrium.hpp"

namespace pov {

/// How the artificial stage-0 voter participates in duels. TieBreakOnly is
/// the default: it votes only to break an exact draw among the real voters
/// and abstains otherwise (the Speaker-of-the-House model). AlwaysVotes
/// counts its ballot in every duel.
enum class AiMode { TieBreakOnly, AlwaysVotes };

/// A polity plus the artificial voter attached when N is even, so the
/// stage-3 electorate is always odd. The artificial voter never proposes.
struct AugmentedPolity {
    Polity base;
    std::optional<Rat> artificial_peak;  // present iff base size is even

    int participant_count() const {
        return base.size() + (artificial_peak ? 1 : 0);
    }
};

/// Attaches the artificial voter iff the polity has an even number of
/// agents; for odd N the peak is discarded. The peak must lie in [-A, A].
AugmentedPolity augment(const Polity& polity, const Rat& artificial_peak);

/// The proposer whose proposal strictly beats every other proposal in a
/// pairwise majority vote of voter_peaks, or nullopt when none exists.
std::optional<int> condorcet_winner(const std::map<int, Rat>& proposals,
                                    const std::vector<Rat>& voter_peaks);

/// Exact distribution of the surviving proposer under the sequential
/// elimination procedure: the first unordered pair is uniform over C(k,2),
/// each later challenger uniform over the proposals not yet drawn, every
/// duel decided by sincere majority vote of voter_peaks, and draws that the
/// artificial voter does not break resolved by a fair coin. Atom values are
/// proposer indices. Guarded to k <= 8 proposals.
OutcomeLottery elimination_winner_distribution(const std::map<int, Rat>& proposals,
                                               const std::vector<Rat>& voter_peaks,
                                               const std::optional<Rat>& artificial_peak,
                                               AiMode mode = AiMode::TieBreakOnly);

/// Policy lottery induced by a role profile under tournament semantics.
/// Zero- and one-proposer edge rules are those of the baseline procedure;
/// with two or more proposers the implemented policy is the elimination
/// survivor's proposal.
OutcomeLottery tournament_outcome(const AugmentedPolity& augmented, const RoleProfile& profile,
                                  AiMode mode = AiMode::TieBreakOnly);

/// Same certification contract as certify, with outcomes evaluated under
/// tournament semantics.
EquilibriumCertificate certify_tournament(const AugmentedPolity& augmented,
                                          const RoleProfile& profile, const Rat& epsilon,
                                          const Rat& grid_step,
                                          AiMode mode = AiMode::TieBreakOnly);

/// Enumerates every certified equilibrium under tournament semantics.
/// Requires an odd participant count; tractability guards match
/// enumerate_equilibria.
std::vector<EnumeratedEquilibrium> uniqueness_report(const AugmentedPolity& augmented,
                                                     const Rat& epsilon, const Rat& grid_step,
                                                     int max_proposers,
                                                     AiMode mode = AiMode::TieBreakOnly);

}  // namespace pov
