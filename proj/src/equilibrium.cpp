#include "pov/equilibrium.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace pov {

namespace {

Rat clamp_to(const Rat& value, const Rat& bound) {
    if (value < -bound) return -bound;
    if (value > bound) return bound;
    return value;
}

void require_positive(const Rat& value, const char* field) {
    if (sgn(value) <= 0) {
        throw validation_error(std::string(field) + ": must be positive");
    }
}

// Left/right median values of the stage-3 electorate: the voting agents
// plus, when present, the stage-0 voter's peak.
std::optional<std::pair<Rat, Rat>> electorate_median_span(const Polity& polity,
                                                          const std::vector<int>& voters,
                                                          const std::optional<Rat>& ai_peak) {
    std::vector<Rat> vals;
    vals.reserve(voters.size() + 1);
    for (int v : voters) vals.push_back(polity.peak(v));
    if (ai_peak) vals.push_back(*ai_peak);
    if (vals.empty()) return std::nullopt;
    std::sort(vals.begin(), vals.end());
    const size_t k = vals.size();
    if (k % 2 == 1) return std::make_pair(vals[k / 2], vals[k / 2]);
    return std::make_pair(vals[k / 2 - 1], vals[k / 2]);
}

RoleProfile with_proposal(const RoleProfile& profile, int agent, const Rat& value) {
    RoleProfile next = profile;
    next.roles[agent - 1] = Role::Propose;
    next.proposals[agent] = value;
    return next;
}

RoleProfile without_proposal(const RoleProfile& profile, int agent) {
    RoleProfile next = profile;
    next.roles[agent - 1] = Role::Vote;
    next.proposals.erase(agent);
    return next;
}

// Scan state shared by certify_with and best_response.
struct DeviationScan {
    const Polity& polity;
    const RoleProfile& profile;
    const detail::OutcomeFn& outcome;
    int agent;
    Rat peak;
    Rat utility_before;

    Rat evaluate(const RoleProfile& next) const {
        return expected_utility(peak, outcome(next));
    }

    // Equal expected utility resolves to voting, so a switch to Vote
    // improves at >=; every other deviation must improve strictly.
    std::optional<Improvement> try_switch_to_vote() const {
        const Rat after = evaluate(without_proposal(profile, agent));
        if (after >= utility_before) {
            return Improvement{Deviation{DeviationKind::SwitchToVote, agent, std::nullopt,
                                         std::nullopt},
                               utility_before, after};
        }
        return std::nullopt;
    }

    std::optional<Improvement> try_value(const Rat& value, bool is_proposer) const {
        const Rat after = evaluate(with_proposal(profile, agent, value));
        if (after > utility_before) {
            const DeviationKind kind =
                is_proposer ? DeviationKind::MoveProposal : DeviationKind::SwitchToPropose;
            return Improvement{Deviation{kind, agent, value, std::nullopt}, utility_before,
                               after};
        }
        return std::nullopt;
    }
};

}  // namespace

std::string Deviation::describe() const {
    std::ostringstream out;
    out << "agent " << agent << ": ";
    switch (kind) {
        case DeviationKind::SwitchToVote:
            out << "switch to Vote";
            break;
        case DeviationKind::SwitchToPropose:
            out << "switch to Propose at " << rat_to_string(*value);
            break;
        case DeviationKind::MoveProposal:
            out << "move proposal to " << rat_to_string(*value);
            break;
        case DeviationKind::Nominate:
            out << "nominate agent " << *nominee;
            break;
    }
    return out.str();
}

namespace detail {

std::vector<Rat> build_grid(const Rat& bound, const Rat& grid_step) {
    require_positive(grid_step, "grid_step");
    std::vector<Rat> grid;
    for (Rat x = -bound; x <= bound; x += grid_step) grid.push_back(x);
    if (grid.back() != bound) grid.push_back(bound);
    return grid;
}

CandidateSet build_candidates(const Polity& polity, const RoleProfile& profile, const Rat& epsilon,
                              const Rat& grid_step, const std::optional<Rat>& ai_peak) {
    require_positive(epsilon, "epsilon");
    const Rat bound = polity.bound();

    std::set<Rat> preferred(polity.peaks().begin(), polity.peaks().end());
    std::vector<Rat> voter_peaks;
    for (int v : profile.voters()) voter_peaks.push_back(polity.peak(v));
    if (ai_peak) voter_peaks.push_back(*ai_peak);
    for (const Rat& theta : voter_peaks) {
        for (const auto& [proposer, value] : profile.proposals) {
            const Rat mirror = 2 * theta - value;
            preferred.insert(clamp_to(mirror, bound));
            preferred.insert(clamp_to(mirror - epsilon, bound));
            preferred.insert(clamp_to(mirror + epsilon, bound));
        }
    }

    CandidateSet set;
    set.preferred.assign(preferred.begin(), preferred.end());
    set.grid = build_grid(bound, grid_step);
    return set;
}

EquilibriumCertificate certify_with(const Polity& polity, const RoleProfile& profile,
                                    const Rat& epsilon, const Rat& grid_step,
                                    const OutcomeFn& outcome, const std::optional<Rat>& ai_peak) {
    validate_profile(polity, profile);
    const CandidateSet candidates = build_candidates(polity, profile, epsilon, grid_step, ai_peak);
    const OutcomeLottery base = outcome(profile);

    // Proposers first: their switch-to-Vote and reflection deviations are
    // the cheapest refutations, so failures surface early.
    std::vector<int> order = profile.proposers();
    const std::vector<int> voters = profile.voters();
    order.insert(order.end(), voters.begin(), voters.end());

    for (int agent : order) {
        DeviationScan scan{polity, profile, outcome, agent, polity.peak(agent),
                           expected_utility(polity.peak(agent), base)};
        const bool is_proposer = profile.is_proposer(agent);

        if (is_proposer) {
            if (auto hit = scan.try_switch_to_vote()) {
                return EquilibriumCertificate{false, std::move(hit)};
            }
        }
        const Rat* current =
            is_proposer ? &profile.proposals.at(agent) : nullptr;
        auto skip = [&](const Rat& value) { return current != nullptr && value == *current; };

        if (!skip(scan.peak)) {
            if (auto hit = scan.try_value(scan.peak, is_proposer)) {
                return EquilibriumCertificate{false, std::move(hit)};
            }
        }
        for (const Rat& value : candidates.preferred) {
            if (value == scan.peak || skip(value)) continue;
            if (auto hit = scan.try_value(value, is_proposer)) {
                return EquilibriumCertificate{false, std::move(hit)};
            }
        }
        for (const Rat& value : candidates.grid) {
            if (value == scan.peak || skip(value)) continue;
            if (std::binary_search(candidates.preferred.begin(), candidates.preferred.end(),
                                   value)) {
                continue;
            }
            if (auto hit = scan.try_value(value, is_proposer)) {
                return EquilibriumCertificate{false, std::move(hit)};
            }
        }
    }
    return EquilibriumCertificate{true, std::nullopt};
}

std::vector<EnumeratedEquilibrium> enumerate_with(const Polity& polity, int max_proposers,
                                                  const Rat& epsilon, const Rat& grid_step,
                                                  const OutcomeFn& outcome,
                                                  const std::optional<Rat>& ai_peak) {
    const int n = polity.size();
    if (max_proposers < 0) {
        throw validation_error("max_proposers: must be non-negative");
    }
    if (n > 10) {
        throw tractability_error("enumerate: polity size " + std::to_string(n) +
                                 " exceeds the exhaustive-scan limit of 10 agents");
    }
    const std::vector<Rat> grid = build_grid(polity.bound(), grid_step);
    require_positive(epsilon, "epsilon");

    // Proposal values scanned for one proposer: its own peak plus every
    // peak/grid value inside the interval spanned by that peak and the
    // medians of the remaining electorate. With no electorate at all the
    // proposer never faces a vote, so only its peak is worth scanning.
    auto scan_values = [&](int proposer, const std::vector<int>& voters) {
        const Rat own = polity.peak(proposer);
        const auto span = electorate_median_span(polity, voters, ai_peak);
        if (!span) return std::vector<Rat>{own};
        const Rat lo = std::min(own, span->first);
        const Rat hi = std::max(own, span->second);
        std::set<Rat> vals{own};
        for (const Rat& theta : polity.peaks()) {
            if (theta >= lo && theta <= hi) vals.insert(theta);
        }
        for (const Rat& x : grid) {
            if (x >= lo && x <= hi) vals.insert(x);
        }
        if (vals.size() > 200) {
            throw tractability_error(
                "enumerate: " + std::to_string(vals.size()) +
                " proposal values for one proposer exceed the scan limit of 200; "
                "increase grid_step");
        }
        return std::vector<Rat>(vals.begin(), vals.end());
    };

    std::vector<EnumeratedEquilibrium> rows;
    auto consider = [&](const RoleProfile& profile) {
        EquilibriumCertificate cert = certify_with(polity, profile, epsilon, grid_step, outcome,
                                                   ai_peak);
        if (cert.is_equilibrium) {
            rows.push_back(EnumeratedEquilibrium{profile, std::move(cert), outcome(profile), 0});
        }
    };

    const int limit = std::min(max_proposers, n);
    for (int size = 0; size <= limit; ++size) {
        // Lexicographic combinations of agents taking the Propose role.
        std::vector<int> chosen(size);
        for (int i = 0; i < size; ++i) chosen[i] = i + 1;
        while (true) {
            RoleProfile profile;
            profile.roles.assign(n, Role::Vote);
            for (int agent : chosen) profile.roles[agent - 1] = Role::Propose;
            const std::vector<int> voters = profile.voters();

            if (size == 0) {
                consider(profile);
            } else {
                std::vector<std::vector<Rat>> values;
                values.reserve(chosen.size());
                for (int agent : chosen) values.push_back(scan_values(agent, voters));

                std::vector<size_t> index(chosen.size(), 0);
                while (true) {
                    for (size_t i = 0; i < chosen.size(); ++i) {
                        profile.proposals[chosen[i]] = values[i][index[i]];
                    }
                    consider(profile);
                    bool advanced = false;
                    size_t pos = chosen.size();
                    while (pos > 0) {
                        --pos;
                        if (++index[pos] < values[pos].size()) {
                            advanced = true;
                            break;
                        }
                        index[pos] = 0;
                    }
                    if (!advanced) break;
                }
            }

            if (size == 0) break;
            int pos = size - 1;
            while (pos >= 0 && chosen[pos] == n - (size - 1 - pos)) --pos;
            if (pos < 0) break;
            ++chosen[pos];
            for (int i = pos + 1; i < size; ++i) chosen[i] = chosen[i - 1] + 1;
        }
    }

    std::sort(rows.begin(), rows.end(), [](const EnumeratedEquilibrium& a,
                                           const EnumeratedEquilibrium& b) {
        const std::string pa = a.profile.pattern();
        const std::string pb = b.profile.pattern();
        if (pa != pb) return pa < pb;
        auto ia = a.profile.proposals.begin();
        auto ib = b.profile.proposals.begin();
        for (; ia != a.profile.proposals.end(); ++ia, ++ib) {
            if (ia->second != ib->second) return ia->second < ib->second;
        }
        return false;
    });

    // Rows whose outcome lotteries coincide form one equivalence class.
    std::vector<const OutcomeLottery*> reps;
    for (auto& row : rows) {
        size_t id = 0;
        for (; id < reps.size(); ++id) {
            if (*reps[id] == row.lottery) break;
        }
        if (id == reps.size()) reps.push_back(&row.lottery);
        row.equivalence_class = static_cast<int>(id);
    }
    return rows;
}

}  // namespace detail

std::vector<Rat> candidate_values(const Polity& polity, const RoleProfile& profile, int deviator,
                                  const Rat& epsilon, const Rat& grid_step) {
    validate_profile(polity, profile);
    if (deviator < 1 || deviator > polity.size()) {
        throw validation_error("deviator: agent index out of range");
    }
    const detail::CandidateSet set =
        detail::build_candidates(polity, profile, epsilon, grid_step);
    std::set<Rat> merged(set.preferred.begin(), set.preferred.end());
    merged.insert(set.grid.begin(), set.grid.end());
    return std::vector<Rat>(merged.begin(), merged.end());
}

std::optional<Improvement> best_response(const Polity& polity, const RoleProfile& profile,
                                         int agent, const std::vector<Rat>& candidates) {
    validate_profile(polity, profile);
    if (agent < 1 || agent > polity.size()) {
        throw validation_error("agent: index out of range");
    }
    const detail::OutcomeFn outcome = [&](const RoleProfile& p) {
        return outcome_lottery(polity, p);
    };
    DeviationScan scan{polity, profile, outcome, agent, polity.peak(agent),
                       expected_utility(polity.peak(agent), outcome(profile))};
    const bool is_proposer = profile.is_proposer(agent);

    std::optional<Improvement> best;
    auto offer = [&](std::optional<Improvement> hit) {
        if (!hit) return;
        if (!best || hit->utility_after > best->utility_after) best = std::move(hit);
    };
    if (is_proposer) {
        offer(scan.try_switch_to_vote());
    }
    for (const Rat& value : candidates) {
        if (is_proposer && value == profile.proposals.at(agent)) continue;
        offer(scan.try_value(value, is_proposer));
    }
    return best;
}

EquilibriumCertificate certify(const Polity& polity, const RoleProfile& profile,
                               const Rat& epsilon, const Rat& grid_step) {
    return detail::certify_with(polity, profile, epsilon, grid_step,
                                [&](const RoleProfile& p) { return outcome_lottery(polity, p); });
}

std::vector<EnumeratedEquilibrium> enumerate_equilibria(const Polity& polity, int max_proposers,
                                                        const Rat& epsilon, const Rat& grid_step) {
    return detail::enumerate_with(
        polity, max_proposers, epsilon, grid_step,
        [&](const RoleProfile& p) { return outcome_lottery(polity, p); }, std::nullopt);
}

RoleProfile canonical_profile(const Polity& polity) {
    const MedianTriple m = medians(polity);
    RoleProfile profile;
    profile.roles.assign(polity.size(), Role::Vote);
    profile.roles[m.left - 1] = Role::Propose;
    profile.proposals[m.left] = polity.peak(m.left);
    if (m.right != m.left) {
        profile.roles[m.right - 1] = Role::Propose;
        profile.proposals[m.right] = polity.peak(m.right);
    }
    return profile;
}

RoleProfile apply_deviation(const RoleProfile& profile, const Deviation& deviation) {
    const int agent = deviation.agent;
    if (agent < 1 || agent > static_cast<int>(profile.roles.size())) {
        throw validation_error("deviation: agent index out of range");
    }
    switch (deviation.kind) {
        case DeviationKind::SwitchToVote:
            return without_proposal(profile, agent);
        case DeviationKind::SwitchToPropose:
        case DeviationKind::MoveProposal:
            if (!deviation.value) {
                throw validation_error("deviation: proposal value required");
            }
            return with_proposal(profile, agent, *deviation.value);
        case DeviationKind::Nominate:
            throw validation_error("deviation: nominations have no role-profile counterpart");
    }
    throw validation_error("deviation: unknown kind");
}

}  // namespace pov
