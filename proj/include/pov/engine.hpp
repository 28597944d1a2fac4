#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "pov/core.hpp"

namespace pov {

enum class Role { Propose, Vote };

/// Stage-1 roles plus the stage-2 proposal of every proposer.
struct RoleProfile {
    std::vector<Role> roles;        // index agent-1
    std::map<int, Rat> proposals;   // proposer agent -> value

    std::vector<int> proposers() const;
    std::vector<int> voters() const;
    bool is_proposer(int agent) const { return roles[static_cast<std::size_t>(agent - 1)] == Role::Propose; }

    /// "PVVP"-style role pattern, one letter per agent.
    std::string pattern() const;
};

/// Throws validation_error unless the profile matches the polity: one
/// proposal per proposer, none for voters, all values within bounds.
void validate_profile(const Polity& polity, const RoleProfile& profile);

enum class Verdict { FirstWins, SecondWins, Draw };

struct VoteResult {
    int tally_first = 0;
    int tally_second = 0;
    int abstentions = 0;
    Verdict verdict = Verdict::Draw;
};

/// Sincere vote between two policies: each voter backs the strictly closer
/// one and abstains when equidistant; strict majority of cast votes wins.
VoteResult majority_vote(const Rat& first, const Rat& second, const std::vector<Rat>& voter_peaks);

/// Exact probability distribution over implemented policies. Atom values
/// are distinct and sorted; probabilities are positive and sum to 1.
class OutcomeLottery {
  public:
    struct Atom {
        Rat value;
        Rat probability;
    };

    static OutcomeLottery from_weights(const std::map<Rat, Rat>& weights);
    static OutcomeLottery point_mass(const Rat& value);

    const std::vector<Atom>& atoms() const { return atoms_; }

    bool operator==(const OutcomeLottery& other) const;

  private:
    std::vector<Atom> atoms_;
};

/// The outcome lottery of the baseline procedure under the given roles and
/// proposals: no proposers -> uniform over the agents' peaks; one proposer
/// -> that proposal; otherwise a uniform random pair of proposals resolved
/// by sincere majority vote of the voter pool, draws split by coin flip;
/// an empty voter pool degenerates to a uniform draw over the proposals.
OutcomeLottery outcome_lottery(const Polity& polity, const RoleProfile& profile);

Rat expected_utility(const Rat& peak, const OutcomeLottery& lottery);

/// One draw from the procedure itself (pair selection, sincere vote, coin
/// flip), driven by a deterministic stream seeded with `seed`.
Rat sample_outcome(const Polity& polity, const RoleProfile& profile, std::uint64_t seed);

}  // namespace pov
