#include "pov/elections.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace pov {

std::vector<int> ElectionProfile::nominators() const {
    std::vector<int> out;
    for (size_t i = 0; i < actions.size(); ++i) {
        if (actions[i]) out.push_back(static_cast<int>(i) + 1);
    }
    return out;
}

std::vector<int> ElectionProfile::candidates() const {
    std::set<int> nominated;
    for (const auto& action : actions) {
        if (action) nominated.insert(*action);
    }
    return std::vector<int>(nominated.begin(), nominated.end());
}

std::vector<int> ElectionProfile::voters() const {
    // Nominating forfeits the vote even for a nominated candidate, and a
    // candidate nominated by another agent keeps it, so the voter set is
    // exactly the non-nominators.
    std::vector<int> out;
    for (size_t i = 0; i < actions.size(); ++i) {
        if (!actions[i]) out.push_back(static_cast<int>(i) + 1);
    }
    return out;
}

void validate_election_profile(const Polity& polity, const ElectionProfile& profile) {
    if (static_cast<int>(profile.actions.size()) != polity.size()) {
        throw validation_error("profile: one action per agent required");
    }
    for (const auto& action : profile.actions) {
        if (action && (*action < 1 || *action > polity.size())) {
            throw validation_error("profile: nominee index out of range");
        }
    }
}

OutcomeLottery election_outcome(const Polity& polity, const ElectionProfile& profile) {
    validate_election_profile(polity, profile);

    const std::vector<int> candidates = profile.candidates();
    if (candidates.empty()) {
        std::map<Rat, Rat> weights;
        const Rat share = ratio(1, polity.size());
        for (const Rat& peak : polity.peaks()) weights[peak] += share;
        return OutcomeLottery::from_weights(weights);
    }
    if (candidates.size() == 1) {
        return OutcomeLottery::point_mass(polity.peak(candidates.front()));
    }

    const std::vector<int> voters = profile.voters();
    const int m = static_cast<int>(candidates.size());
    std::map<Rat, Rat> weights;
    if (voters.empty()) {
        const Rat share = ratio(1, m);
        for (int candidate : candidates) weights[polity.peak(candidate)] += share;
        return OutcomeLottery::from_weights(weights);
    }

    std::vector<Rat> voter_peaks;
    voter_peaks.reserve(voters.size());
    for (int v : voters) voter_peaks.push_back(polity.peak(v));

    const Rat pair_probability = ratio(2, static_cast<long>(m) * (m - 1));
    const Rat half = pair_probability / 2;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const Rat& first = polity.peak(candidates[i]);
            const Rat& second = polity.peak(candidates[j]);
            switch (majority_vote(first, second, voter_peaks).verdict) {
                case Verdict::FirstWins:
                    weights[first] += pair_probability;
                    break;
                case Verdict::SecondWins:
                    weights[second] += pair_probability;
                    break;
                case Verdict::Draw:
                    weights[first] += half;
                    weights[second] += half;
                    break;
            }
        }
    }
    return OutcomeLottery::from_weights(weights);
}

EquilibriumCertificate certify_election(const Polity& polity, const ElectionProfile& profile) {
    validate_election_profile(polity, profile);
    const OutcomeLottery base = election_outcome(polity, profile);

    for (int agent = 1; agent <= polity.size(); ++agent) {
        const Rat& peak = polity.peak(agent);
        const Rat utility_before = expected_utility(peak, base);
        const std::optional<int>& current = profile.actions[agent - 1];

        ElectionProfile altered = profile;
        // Equal expected utility resolves to voting, so a switch to Vote
        // improves at >=; nominations must improve strictly.
        if (current) {
            altered.actions[agent - 1] = std::nullopt;
            const Rat after = expected_utility(peak, election_outcome(polity, altered));
            if (after >= utility_before) {
                return EquilibriumCertificate{
                    false, Improvement{Deviation{DeviationKind::SwitchToVote, agent,
                                                 std::nullopt, std::nullopt},
                                       utility_before, after}};
            }
        }
        for (int nominee = 1; nominee <= polity.size(); ++nominee) {
            if (current && *current == nominee) continue;
            altered.actions[agent - 1] = nominee;
            const Rat after = expected_utility(peak, election_outcome(polity, altered));
            if (after > utility_before) {
                return EquilibriumCertificate{
                    false, Improvement{Deviation{DeviationKind::Nominate, agent, std::nullopt,
                                                 nominee},
                                       utility_before, after}};
            }
        }
    }
    return EquilibriumCertificate{true, std::nullopt};
}

std::vector<std::pair<ElectionProfile, EquilibriumCertificate>> enumerate_election_equilibria(
    const Polity& polity) {
    const int n = polity.size();
    if (n > 7) {
        throw tractability_error("elections: polity size " + std::to_string(n) +
                                 " exceeds the exhaustive-scan limit of 7 agents");
    }

    std::vector<std::pair<ElectionProfile, EquilibriumCertificate>> rows;
    // Odometer over action codes per agent: 0 = Vote, j = nominate agent j.
    std::vector<int> code(n, 0);
    while (true) {
        ElectionProfile profile;
        profile.actions.resize(n);
        for (int i = 0; i < n; ++i) {
            profile.actions[i] = code[i] == 0 ? std::nullopt : std::optional<int>(code[i]);
        }
        EquilibriumCertificate cert = certify_election(polity, profile);
        if (cert.is_equilibrium) {
            rows.emplace_back(std::move(profile), std::move(cert));
        }
        int pos = n - 1;
        while (pos >= 0 && code[pos] == n) {
            code[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++code[pos];
    }
    return rows;
}

}  // namespace pov
