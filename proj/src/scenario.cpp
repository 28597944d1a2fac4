#include "pov/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace pov {

using nlohmann::ordered_json;

namespace {

Rat rat_from_json(const ordered_json& value, const std::string& field) {
    try {
        if (value.is_string()) return rat_from_string(value.get<std::string>());
        if (value.is_number_integer()) return Rat(value.get<long>());
        if (value.is_number_unsigned()) return Rat(static_cast<unsigned long>(value.get<std::uint64_t>()));
        if (value.is_number_float()) return rat_from_double(value.get<double>());
    } catch (const validation_error& err) {
        throw validation_error(field + ": " + err.what());
    }
    throw validation_error(field + ": expected a rational (string \"p/q\", decimal, or number)");
}

int int_from_json(const ordered_json& value, const std::string& field) {
    if (!value.is_number_integer() && !value.is_number_unsigned()) {
        throw validation_error(field + ": expected an integer");
    }
    return value.get<int>();
}

Variant variant_from_json(const ordered_json& value) {
    const std::string token = value.is_string() ? value.get<std::string>() : "";
    if (token == "baseline") return Variant::Baseline;
    if (token == "tournament") return Variant::Tournament;
    if (token == "election") return Variant::Election;
    throw validation_error("variant: expected \"baseline\", \"tournament\", or \"election\"");
}

const char* variant_token(Variant variant) {
    switch (variant) {
        case Variant::Baseline:
            return "baseline";
        case Variant::Tournament:
            return "tournament";
        case Variant::Election:
            return "election";
    }
    return "baseline";
}

RoleProfile role_profile_from_json(const ordered_json& value) {
    if (!value.is_object() || !value.contains("roles")) {
        throw validation_error("profile: expected {\"roles\": \"PV...\", \"proposals\": {...}}");
    }
    RoleProfile profile;
    const std::string pattern = value.at("roles").get<std::string>();
    for (char c : pattern) {
        if (c == 'P') {
            profile.roles.push_back(Role::Propose);
        } else if (c == 'V') {
            profile.roles.push_back(Role::Vote);
        } else {
            throw validation_error("profile.roles: expected only 'P' and 'V' characters");
        }
    }
    if (value.contains("proposals")) {
        const ordered_json& proposals = value.at("proposals");
        if (!proposals.is_object()) {
            throw validation_error("profile.proposals: expected an object keyed by agent index");
        }
        for (const auto& [key, proposal] : proposals.items()) {
            int agent = 0;
            try {
                agent = std::stoi(key);
            } catch (const std::exception&) {
                throw validation_error("profile.proposals: key '" + key +
                                       "' is not an agent index");
            }
            profile.proposals[agent] = rat_from_json(proposal, "profile.proposals[" + key + "]");
        }
    }
    return profile;
}

ElectionProfile election_profile_from_json(const ordered_json& value) {
    if (!value.is_object() || !value.contains("actions") || !value.at("actions").is_array()) {
        throw validation_error("profile: expected {\"actions\": [\"V\" or nominee index, ...]}");
    }
    ElectionProfile profile;
    for (const ordered_json& action : value.at("actions")) {
        if (action.is_string() && (action.get<std::string>() == "V" ||
                                   action.get<std::string>() == "vote")) {
            profile.actions.push_back(std::nullopt);
        } else if (action.is_number_integer() || action.is_number_unsigned()) {
            const int nominee = action.get<int>();
            if (nominee == 0) {
                profile.actions.push_back(std::nullopt);
            } else {
                profile.actions.push_back(nominee);
            }
        } else {
            throw validation_error("profile.actions: expected \"V\" or a nominee index");
        }
    }
    return profile;
}

std::string rat_str(const Rat& value) { return rat_to_string(value); }

ordered_json lottery_to_json(const OutcomeLottery& lottery) {
    ordered_json rows = ordered_json::array();
    for (const auto& atom : lottery.atoms()) {
        rows.push_back({{"value", rat_str(atom.value)}, {"probability", rat_str(atom.probability)}});
    }
    return rows;
}

std::string lottery_to_field(const OutcomeLottery& lottery) {
    std::ostringstream out;
    bool first = true;
    for (const auto& atom : lottery.atoms()) {
        if (!first) out << ';';
        out << rat_str(atom.value) << ':' << rat_str(atom.probability);
        first = false;
    }
    return out.str();
}

ordered_json role_profile_to_json(const RoleProfile& profile) {
    ordered_json proposals = ordered_json::object();
    for (const auto& [agent, value] : profile.proposals) {
        proposals[std::to_string(agent)] = rat_str(value);
    }
    return {{"roles", profile.pattern()}, {"proposals", proposals}};
}

std::string proposals_to_field(const RoleProfile& profile) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [agent, value] : profile.proposals) {
        if (!first) out << ';';
        out << agent << '=' << rat_str(value);
        first = false;
    }
    return out.str();
}

std::string action_token(const std::optional<int>& action) {
    return action ? std::to_string(*action) : "V";
}

ordered_json election_profile_to_json(const ElectionProfile& profile) {
    ordered_json actions = ordered_json::array();
    for (const auto& action : profile.actions) actions.push_back(action_token(action));
    return {{"actions", actions}};
}

std::string actions_to_field(const ElectionProfile& profile) {
    std::ostringstream out;
    bool first = true;
    for (const auto& action : profile.actions) {
        if (!first) out << ';';
        out << action_token(action);
        first = false;
    }
    return out.str();
}

const char* deviation_kind_token(DeviationKind kind) {
    switch (kind) {
        case DeviationKind::SwitchToVote:
            return "switch-to-vote";
        case DeviationKind::SwitchToPropose:
            return "switch-to-propose";
        case DeviationKind::MoveProposal:
            return "move-proposal";
        case DeviationKind::Nominate:
            return "nominate";
    }
    return "unknown";
}

ordered_json witness_to_json(const std::optional<Improvement>& witness) {
    if (!witness) return nullptr;
    ordered_json row = {{"agent", witness->deviation.agent},
                        {"kind", deviation_kind_token(witness->deviation.kind)}};
    if (witness->deviation.value) row["value"] = rat_str(*witness->deviation.value);
    if (witness->deviation.nominee) row["nominee"] = *witness->deviation.nominee;
    row["utility_before"] = rat_str(witness->utility_before);
    row["utility_after"] = rat_str(witness->utility_after);
    return row;
}

ordered_json config_header(const ScenarioConfig& config, const char* command) {
    ordered_json peaks = ordered_json::array();
    for (const Rat& peak : config.peaks) peaks.push_back(rat_str(peak));
    ordered_json header = {{"command", command},
                           {"variant", variant_token(config.variant)},
                           {"bound", rat_str(config.bound)},
                           {"peaks", peaks}};
    if (config.variant == Variant::Tournament) {
        header["artificial_peak"] = rat_str(config.artificial_peak.value_or(Rat(0)));
    }
    if (config.variant != Variant::Election) {
        header["epsilon"] = rat_str(config.epsilon);
        header["grid_step"] = rat_str(config.grid_step);
    }
    return header;
}

RoleProfile default_role_profile(const ScenarioConfig& config, const Polity& polity) {
    return config.profile ? *config.profile : canonical_profile(polity);
}

ElectionProfile default_election_profile(const ScenarioConfig& config, const Polity& polity) {
    if (config.election_profile) return *config.election_profile;
    ElectionProfile profile;
    profile.actions.assign(polity.size(), std::nullopt);
    const MedianTriple m = medians(polity);
    profile.actions[m.left - 1] = m.left;
    if (m.right != m.left) profile.actions[m.right - 1] = m.right;
    return profile;
}

// Inverse-CDF draw from an exact lottery, uniform to within 2^-64.
Rat draw_from_lottery(const OutcomeLottery& lottery, SplitMix64& rng) {
    Rat u(mpz_class(rng.next()), mpz_class(1) << 64);
    u.canonicalize();
    Rat cumulative(0);
    for (const auto& atom : lottery.atoms()) {
        cumulative += atom.probability;
        if (u < cumulative) return atom.value;
    }
    return lottery.atoms().back().value;
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json(const ordered_json& doc) {
    if (!doc.is_object()) throw validation_error("config: expected a JSON object");
    static const std::vector<std::string> known = {
        "bound",     "peaks",   "variant", "artificial_peak", "epsilon", "grid_step",
        "max_proposers", "profile", "seed",    "samples"};
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw validation_error("config: unknown field '" + key + "'");
        }
    }
    if (!doc.contains("bound")) throw validation_error("bound: required");
    if (!doc.contains("peaks") || !doc.at("peaks").is_array()) {
        throw validation_error("peaks: required list of rationals");
    }

    ScenarioConfig config;
    config.bound = rat_from_json(doc.at("bound"), "bound");
    int index = 0;
    for (const ordered_json& peak : doc.at("peaks")) {
        config.peaks.push_back(rat_from_json(peak, "peaks[" + std::to_string(index) + "]"));
        ++index;
    }
    if (doc.contains("variant")) config.variant = variant_from_json(doc.at("variant"));
    if (doc.contains("artificial_peak")) {
        config.artificial_peak = rat_from_json(doc.at("artificial_peak"), "artificial_peak");
    }
    config.epsilon = doc.contains("epsilon") ? rat_from_json(doc.at("epsilon"), "epsilon")
                                             : Rat(config.bound / 1000);
    config.grid_step = doc.contains("grid_step") ? rat_from_json(doc.at("grid_step"), "grid_step")
                                                 : Rat(config.bound / 50);
    if (doc.contains("max_proposers")) {
        config.max_proposers = int_from_json(doc.at("max_proposers"), "max_proposers");
    }
    if (doc.contains("profile")) {
        if (config.variant == Variant::Election) {
            config.election_profile = election_profile_from_json(doc.at("profile"));
        } else {
            config.profile = role_profile_from_json(doc.at("profile"));
        }
    }
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_integer() && !doc.at("seed").is_number_unsigned()) {
            throw validation_error("seed: expected an integer");
        }
        config.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("samples")) {
        config.samples = int_from_json(doc.at("samples"), "samples");
        if (config.samples <= 0) throw validation_error("samples: must be positive");
    }
    return config;
}

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("config: cannot open '" + path + "'");
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& err) {
        throw validation_error("config: " + std::string(err.what()));
    }
    return from_json(doc);
}

Polity ScenarioConfig::polity() const { return Polity::create(bound, peaks); }

AugmentedPolity ScenarioConfig::augmented() const {
    return augment(polity(), artificial_peak.value_or(Rat(0)));
}

Report run_verify(const ScenarioConfig& config) {
    const Polity polity = config.polity();
    ordered_json summary = config_header(config, "verify");
    OutcomeLottery lottery = OutcomeLottery::point_mass(Rat(0));
    EquilibriumCertificate certificate;
    std::vector<std::string> role_tokens;

    if (config.variant == Variant::Election) {
        const ElectionProfile profile = default_election_profile(config, polity);
        lottery = election_outcome(polity, profile);
        certificate = certify_election(polity, profile);
        summary["profile"] = election_profile_to_json(profile);
        for (const auto& action : profile.actions) role_tokens.push_back(action_token(action));
    } else if (config.variant == Variant::Tournament) {
        const AugmentedPolity augmented = config.augmented();
        const RoleProfile profile = default_role_profile(config, polity);
        lottery = tournament_outcome(augmented, profile);
        certificate = certify_tournament(augmented, profile, config.epsilon, config.grid_step);
        summary["profile"] = role_profile_to_json(profile);
        const std::string pattern = profile.pattern();
        for (char c : pattern) role_tokens.push_back(std::string(1, c));
    } else {
        const RoleProfile profile = default_role_profile(config, polity);
        lottery = outcome_lottery(polity, profile);
        certificate = certify(polity, profile, config.epsilon, config.grid_step);
        summary["profile"] = role_profile_to_json(profile);
        const std::string pattern = profile.pattern();
        for (char c : pattern) role_tokens.push_back(std::string(1, c));
    }

    summary["verdict"] = certificate.is_equilibrium ? "equilibrium" : "refuted";
    summary["witness"] = witness_to_json(certificate.witness);
    summary["lottery"] = lottery_to_json(lottery);

    ordered_json utilities = ordered_json::array();
    std::ostringstream csv;
    csv << "agent,peak,role,expected_utility\n";
    for (int agent = 1; agent <= polity.size(); ++agent) {
        const Rat value = expected_utility(polity.peak(agent), lottery);
        utilities.push_back({{"agent", agent},
                             {"peak", rat_str(polity.peak(agent))},
                             {"role", role_tokens[agent - 1]},
                             {"expected_utility", rat_str(value)}});
        csv << agent << ',' << rat_str(polity.peak(agent)) << ',' << role_tokens[agent - 1]
            << ',' << rat_str(value) << '\n';
    }
    summary["expected_utilities"] = utilities;
    return Report{std::move(summary), csv.str()};
}

Report run_enumerate(const ScenarioConfig& config) {
    const Polity polity = config.polity();
    ordered_json summary = config_header(config, "enumerate");
    ordered_json rows = ordered_json::array();
    std::ostringstream csv;

    if (config.variant == Variant::Election) {
        const auto equilibria = enumerate_election_equilibria(polity);
        csv << "actions,lottery\n";
        for (const auto& [profile, certificate] : equilibria) {
            (void)certificate;
            const OutcomeLottery lottery = election_outcome(polity, profile);
            ordered_json row = election_profile_to_json(profile);
            row["lottery"] = lottery_to_json(lottery);
            rows.push_back(std::move(row));
            csv << actions_to_field(profile) << ',' << lottery_to_field(lottery) << '\n';
        }
    } else {
        summary["max_proposers"] = config.max_proposers;
        std::vector<EnumeratedEquilibrium> equilibria;
        if (config.variant == Variant::Tournament) {
            equilibria = uniqueness_report(config.augmented(), config.epsilon, config.grid_step,
                                           config.max_proposers);
        } else {
            equilibria = enumerate_equilibria(polity, config.max_proposers, config.epsilon,
                                              config.grid_step);
        }
        csv << "pattern,proposals,lottery,equivalence_class\n";
        for (const EnumeratedEquilibrium& row : equilibria) {
            ordered_json entry = role_profile_to_json(row.profile);
            entry["lottery"] = lottery_to_json(row.lottery);
            entry["equivalence_class"] = row.equivalence_class;
            rows.push_back(std::move(entry));
            csv << row.profile.pattern() << ',' << proposals_to_field(row.profile) << ','
                << lottery_to_field(row.lottery) << ',' << row.equivalence_class << '\n';
        }
    }
    summary["count"] = rows.size();
    summary["equilibria"] = std::move(rows);
    return Report{std::move(summary), csv.str()};
}

Report run_sample(const ScenarioConfig& config) {
    const Polity polity = config.polity();
    ordered_json summary = config_header(config, "sample");
    summary["seed"] = config.seed;
    summary["samples"] = config.samples;

    OutcomeLottery lottery = OutcomeLottery::point_mass(Rat(0));
    std::map<Rat, long> counts;
    if (config.variant == Variant::Baseline) {
        const RoleProfile profile = default_role_profile(config, polity);
        summary["profile"] = role_profile_to_json(profile);
        lottery = outcome_lottery(polity, profile);
        // Mechanics-level draws: each sample replays stages 2-3 rather than
        // sampling the derived lottery, so frequencies cross-check it.
        for (int i = 0; i < config.samples; ++i) {
            counts[sample_outcome(polity, profile, config.seed + static_cast<std::uint64_t>(i))]++;
        }
    } else if (config.variant == Variant::Tournament) {
        const AugmentedPolity augmented = config.augmented();
        const RoleProfile profile = default_role_profile(config, polity);
        summary["profile"] = role_profile_to_json(profile);
        lottery = tournament_outcome(augmented, profile);
        SplitMix64 rng(config.seed);
        for (int i = 0; i < config.samples; ++i) counts[draw_from_lottery(lottery, rng)]++;
    } else {
        const ElectionProfile profile = default_election_profile(config, polity);
        summary["profile"] = election_profile_to_json(profile);
        lottery = election_outcome(polity, profile);
        SplitMix64 rng(config.seed);
        for (int i = 0; i < config.samples; ++i) counts[draw_from_lottery(lottery, rng)]++;
    }

    ordered_json rows = ordered_json::array();
    std::ostringstream csv;
    csv << "value,count,probability\n";
    for (const auto& atom : lottery.atoms()) {
        const long count = counts.count(atom.value) ? counts.at(atom.value) : 0;
        rows.push_back({{"value", rat_str(atom.value)},
                        {"count", count},
                        {"probability", rat_str(atom.probability)}});
        csv << rat_str(atom.value) << ',' << count << ',' << rat_str(atom.probability) << '\n';
    }
    summary["frequencies"] = std::move(rows);
    return Report{std::move(summary), csv.str()};
}

}  // namespace pov
