#include "pov/tournament.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <string>

namespace pov {

namespace {

// Resolves one duel between proposals a and b: majority vote of the real
// voters, then the artificial voter according to its mode.
Verdict duel(const Rat& a, const Rat& b, const std::vector<Rat>& voter_peaks,
             const std::optional<Rat>& artificial_peak, AiMode mode) {
    if (mode == AiMode::AlwaysVotes && artificial_peak) {
        std::vector<Rat> everyone = voter_peaks;
        everyone.push_back(*artificial_peak);
        return majority_vote(a, b, everyone).verdict;
    }
    const Verdict real = majority_vote(a, b, voter_peaks).verdict;
    if (real == Verdict::Draw && artificial_peak) {
        const int side = compare_distance(*artificial_peak, a, b);
        if (side < 0) return Verdict::FirstWins;
        if (side > 0) return Verdict::SecondWins;
    }
    return real;
}

// Winner probabilities keyed by proposer index, exact.
std::map<int, Rat> winner_probabilities(const std::map<int, Rat>& proposals,
                                        const std::vector<Rat>& voter_peaks,
                                        const std::optional<Rat>& artificial_peak, AiMode mode) {
    if (proposals.empty()) {
        throw validation_error("proposals: at least one proposal required");
    }
    const int k = static_cast<int>(proposals.size());
    if (k > 8) {
        throw tractability_error("elimination: " + std::to_string(k) +
                                 " proposals exceed the exact-enumeration limit of 8");
    }

    std::vector<int> ids;
    std::vector<Rat> values;
    ids.reserve(k);
    values.reserve(k);
    for (const auto& [id, value] : proposals) {
        ids.push_back(id);
        values.push_back(value);
    }
    if (k == 1) return {{ids[0], Rat(1)}};

    // verdicts[i][j]: +1 when proposal i beats j, -1 when it loses, 0 draw.
    std::vector<std::vector<int>> verdicts(k, std::vector<int>(k, 0));
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            switch (duel(values[i], values[j], voter_peaks, artificial_peak, mode)) {
                case Verdict::FirstWins:
                    verdicts[i][j] = 1;
                    verdicts[j][i] = -1;
                    break;
                case Verdict::SecondWins:
                    verdicts[i][j] = -1;
                    verdicts[j][i] = 1;
                    break;
                case Verdict::Draw:
                    break;
            }
        }
    }

    // Distribution over the final survivor given the standing champion and
    // the set of proposals not yet drawn, memoized on (champion, mask).
    std::vector<std::vector<Rat>> memo(static_cast<size_t>(k) << k);
    std::vector<bool> known(static_cast<size_t>(k) << k, false);
    std::function<const std::vector<Rat>&(int, unsigned)> survive =
        [&](int champion, unsigned mask) -> const std::vector<Rat>& {
        const size_t key = (static_cast<size_t>(champion) << k) | mask;
        if (known[key]) return memo[key];
        std::vector<Rat> dist(k, Rat(0));
        if (mask == 0) {
            dist[champion] = 1;
        } else {
            const Rat draw_weight = ratio(1, std::popcount(mask));
            for (int d = 0; d < k; ++d) {
                if (!(mask & (1u << d))) continue;
                const unsigned rest = mask & ~(1u << d);
                auto blend = [&](int next, const Rat& weight) {
                    const std::vector<Rat>& sub = survive(next, rest);
                    for (int w = 0; w < k; ++w) {
                        if (sgn(sub[w]) != 0) dist[w] += weight * sub[w];
                    }
                };
                switch (verdicts[champion][d]) {
                    case 1:
                        blend(champion, draw_weight);
                        break;
                    case -1:
                        blend(d, draw_weight);
                        break;
                    default:
                        blend(champion, draw_weight / 2);
                        blend(d, draw_weight / 2);
                        break;
                }
            }
        }
        memo[key] = std::move(dist);
        known[key] = true;
        return memo[key];
    };

    const unsigned full = (1u << k) - 1;
    const Rat pair_probability = ratio(2, static_cast<long>(k) * (k - 1));
    std::vector<Rat> total(k, Rat(0));
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            const unsigned rest = full & ~(1u << i) & ~(1u << j);
            auto blend = [&](int champion, const Rat& weight) {
                const std::vector<Rat>& sub = survive(champion, rest);
                for (int w = 0; w < k; ++w) {
                    if (sgn(sub[w]) != 0) total[w] += weight * sub[w];
                }
            };
            switch (verdicts[i][j]) {
                case 1:
                    blend(i, pair_probability);
                    break;
                case -1:
                    blend(j, pair_probability);
                    break;
                default:
                    blend(i, pair_probability / 2);
                    blend(j, pair_probability / 2);
                    break;
            }
        }
    }

    std::map<int, Rat> result;
    for (int w = 0; w < k; ++w) {
        if (sgn(total[w]) != 0) result[ids[w]] = total[w];
    }
    return result;
}

}  // namespace

AugmentedPolity augment(const Polity& polity, const Rat& artificial_peak) {
    if (artificial_peak < -polity.bound() || artificial_peak > polity.bound()) {
        throw validation_error("artificial_peak: must lie within [-A, A]");
    }
    if (polity.size() % 2 == 0) {
        return AugmentedPolity{polity, artificial_peak};
    }
    return AugmentedPolity{polity, std::nullopt};
}

std::optional<int> condorcet_winner(const std::map<int, Rat>& proposals,
                                    const std::vector<Rat>& voter_peaks) {
    if (proposals.empty()) {
        throw validation_error("proposals: at least one proposal required");
    }
    for (const auto& [id, value] : proposals) {
        bool beats_all = true;
        for (const auto& [other, other_value] : proposals) {
            if (other == id) continue;
            if (majority_vote(value, other_value, voter_peaks).verdict != Verdict::FirstWins) {
                beats_all = false;
                break;
            }
        }
        if (beats_all) return id;
    }
    return std::nullopt;
}

OutcomeLottery elimination_winner_distribution(const std::map<int, Rat>& proposals,
                                               const std::vector<Rat>& voter_peaks,
                                               const std::optional<Rat>& artificial_peak,
                                               AiMode mode) {
    std::map<Rat, Rat> weights;
    for (const auto& [id, probability] :
         winner_probabilities(proposals, voter_peaks, artificial_peak, mode)) {
        weights[Rat(id)] = probability;
    }
    return OutcomeLottery::from_weights(weights);
}

OutcomeLottery tournament_outcome(const AugmentedPolity& augmented, const RoleProfile& profile,
                                  AiMode mode) {
    const Polity& polity = augmented.base;
    validate_profile(polity, profile);

    const std::vector<int> proposers = profile.proposers();
    if (proposers.empty()) {
        std::map<Rat, Rat> weights;
        const Rat share = ratio(1, polity.size());
        for (const Rat& peak : polity.peaks()) weights[peak] += share;
        return OutcomeLottery::from_weights(weights);
    }
    if (proposers.size() == 1) {
        return OutcomeLottery::point_mass(profile.proposals.at(proposers.front()));
    }

    std::vector<Rat> voter_peaks;
    for (int v : profile.voters()) voter_peaks.push_back(polity.peak(v));
    std::map<Rat, Rat> weights;
    for (const auto& [id, probability] :
         winner_probabilities(profile.proposals, voter_peaks, augmented.artificial_peak, mode)) {
        weights[profile.proposals.at(id)] += probability;
    }
    return OutcomeLottery::from_weights(weights);
}

EquilibriumCertificate certify_tournament(const AugmentedPolity& augmented,
                                          const RoleProfile& profile, const Rat& epsilon,
                                          const Rat& grid_step, AiMode mode) {
    return detail::certify_with(
        augmented.base, profile, epsilon, grid_step,
        [&](const RoleProfile& p) { return tournament_outcome(augmented, p, mode); },
        augmented.artificial_peak);
}

std::vector<EnumeratedEquilibrium> uniqueness_report(const AugmentedPolity& augmented,
                                                     const Rat& epsilon, const Rat& grid_step,
                                                     int max_proposers, AiMode mode) {
    if (augmented.participant_count() % 2 == 0) {
        throw validation_error("augmented: participant count must be odd");
    }
    return detail::enumerate_with(
        augmented.base, max_proposers, epsilon, grid_step,
        [&](const RoleProfile& p) { return tournament_outcome(augmented, p, mode); },
        augmented.artificial_peak);
}

}  // namespace pov
