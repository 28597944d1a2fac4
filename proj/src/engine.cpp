#include "pov/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace pov {

std::vector<int> RoleProfile::proposers() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < roles.size(); ++i)
        if (roles[i] == Role::Propose) out.push_back(static_cast<int>(i) + 1);
    return out;
}

std::vector<int> RoleProfile::voters() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < roles.size(); ++i)
        if (roles[i] == Role::Vote) out.push_back(static_cast<int>(i) + 1);
    return out;
}

std::string RoleProfile::pattern() const {
    std::string s;
    s.reserve(roles.size());
    for (Role r : roles) s += (r == Role::Propose ? 'P' : 'V');
    return s;
}

void validate_profile(const Polity& polity, const RoleProfile& profile) {
    if (static_cast<int>(profile.roles.size()) != polity.size())
        throw validation_error("profile: role count does not match polity size");
    for (int agent = 1; agent <= polity.size(); ++agent) {
        bool proposing = profile.is_proposer(agent);
        bool has_value = profile.proposals.count(agent) > 0;
        if (proposing && !has_value)
            throw validation_error("profile: proposer " + std::to_string(agent) + " has no proposal");
        if (!proposing && has_value)
            throw validation_error("profile: voter " + std::to_string(agent) + " has a proposal");
        if (has_value && !polity.contains(profile.proposals.at(agent)))
            throw validation_error("profile: proposal of agent " + std::to_string(agent) +
                                   " outside [-A, A]");
    }
}

VoteResult majority_vote(const Rat& first, const Rat& second, const std::vector<Rat>& voter_peaks) {
    VoteResult result;
    for (const Rat& peak : voter_peaks) {
        int side = compare_distance(peak, first, second);
        if (side < 0)
            ++result.tally_first;
        else if (side > 0)
            ++result.tally_second;
        else
            ++result.abstentions;
    }
    if (result.tally_first > result.tally_second)
        result.verdict = Verdict::FirstWins;
    else if (result.tally_second > result.tally_first)
        result.verdict = Verdict::SecondWins;
    else
        result.verdict = Verdict::Draw;
    return result;
}

OutcomeLottery OutcomeLottery::from_weights(const std::map<Rat, Rat>& weights) {
    OutcomeLottery lottery;
    Rat total = 0;
    for (const auto& [value, prob] : weights) {
        if (prob == 0) continue;
        if (prob < 0) throw std::logic_error("lottery: negative probability");
        lottery.atoms_.push_back({value, prob});
        total += prob;
    }
    if (total != 1) throw std::logic_error("lottery: probabilities sum to " + rat_to_string(total));
    return lottery;
}

OutcomeLottery OutcomeLottery::point_mass(const Rat& value) {
    OutcomeLottery lottery;
    lottery.atoms_.push_back({value, Rat(1)});
    return lottery;
}

bool OutcomeLottery::operator==(const OutcomeLottery& other) const {
    if (atoms_.size() != other.atoms_.size()) return false;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        if (atoms_[i].value != other.atoms_[i].value ||
            atoms_[i].probability != other.atoms_[i].probability)
            return false;
    return true;
}

namespace {

std::vector<Rat> peaks_of(const Polity& polity, const std::vector<int>& agents) {
    std::vector<Rat> peaks;
    peaks.reserve(agents.size());
    for (int a : agents) peaks.push_back(polity.peak(a));
    return peaks;
}

}  // namespace

OutcomeLottery outcome_lottery(const Polity& polity, const RoleProfile& profile) {
    validate_profile(polity, profile);
    std::vector<int> proposers = profile.proposers();
    std::vector<int> voters = profile.voters();

    std::map<Rat, Rat> weights;

    if (proposers.empty()) {
        Rat share = ratio(1, polity.size());
        for (const Rat& peak : polity.peaks()) weights[peak] += share;
        return OutcomeLottery::from_weights(weights);
    }
    if (proposers.size() == 1) {
        return OutcomeLottery::point_mass(profile.proposals.at(proposers[0]));
    }
    if (voters.empty()) {
        // Everyone proposes: pair draw plus coin flip collapses to a uniform
        // draw over the submitted proposals.
        Rat share = ratio(1, static_cast<long>(proposers.size()));
        for (int p : proposers) weights[profile.proposals.at(p)] += share;
        return OutcomeLottery::from_weights(weights);
    }

    std::vector<Rat> voter_peaks = peaks_of(polity, voters);
    unsigned long k = static_cast<unsigned long>(proposers.size());
    Rat pair_prob = ratio(2, k * (k - 1));
    for (std::size_t i = 0; i < proposers.size(); ++i) {
        for (std::size_t j = i + 1; j < proposers.size(); ++j) {
            const Rat& first = profile.proposals.at(proposers[i]);
            const Rat& second = profile.proposals.at(proposers[j]);
            VoteResult vote = majority_vote(first, second, voter_peaks);
            switch (vote.verdict) {
                case Verdict::FirstWins: weights[first] += pair_prob; break;
                case Verdict::SecondWins: weights[second] += pair_prob; break;
                case Verdict::Draw:
                    weights[first] += pair_prob / 2;
                    weights[second] += pair_prob / 2;
                    break;
            }
        }
    }
    return OutcomeLottery::from_weights(weights);
}

Rat expected_utility(const Rat& peak, const OutcomeLottery& lottery) {
    Rat total = 0;
    for (const auto& atom : lottery.atoms()) total += atom.probability * utility(peak, atom.value);
    return total;
}

Rat sample_outcome(const Polity& polity, const RoleProfile& profile, std::uint64_t seed) {
    validate_profile(polity, profile);
    SplitMix64 rng(seed);
    std::vector<int> proposers = profile.proposers();
    std::vector<int> voters = profile.voters();

    if (proposers.empty()) {
        std::uint64_t i = rng.below(static_cast<std::uint64_t>(polity.size()));
        return polity.peaks()[i];
    }
    if (proposers.size() == 1) return profile.proposals.at(proposers[0]);
    if (voters.empty()) {
        std::uint64_t i = rng.below(proposers.size());
        return profile.proposals.at(proposers[i]);
    }

    // Unordered pair by index over C(k,2).
    std::uint64_t k = proposers.size();
    std::uint64_t pair_index = rng.below(k * (k - 1) / 2);
    std::uint64_t i = 0;
    while (pair_index >= k - 1 - i) {
        pair_index -= k - 1 - i;
        ++i;
    }
    std::uint64_t j = i + 1 + pair_index;

    const Rat& first = profile.proposals.at(proposers[i]);
    const Rat& second = profile.proposals.at(proposers[j]);
    VoteResult vote = majority_vote(first, second, peaks_of(polity, voters));
    switch (vote.verdict) {
        case Verdict::FirstWins: return first;
        case Verdict::SecondWins: return second;
        case Verdict::Draw: return rng.below(2) == 0 ? first : second;
    }
    throw std::logic_error("unreachable");
}

}  // namespace pov
