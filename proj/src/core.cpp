#include "pov/core.hpp"

#include <algorithm>

namespace pov {

Polity Polity::create(Rat bound, std::vector<Rat> peaks) {
    if (bound <= 0) throw validation_error("bound: must be positive");
    if (peaks.empty()) throw validation_error("peaks: need at least one agent");
    for (std::size_t i = 0; i < peaks.size(); ++i) {
        if (peaks[i] < -bound || peaks[i] > bound)
            throw validation_error("peaks: peak " + rat_to_string(peaks[i]) + " outside [-" +
                                   rat_to_string(bound) + ", " + rat_to_string(bound) + "]");
        if (i > 0 && peaks[i] <= peaks[i - 1])
            throw validation_error("peaks: must be strictly increasing (offending value " +
                                   rat_to_string(peaks[i]) + ")");
    }
    return Polity(std::move(bound), std::move(peaks));
}

Polity Polity::mirrored() const {
    std::vector<Rat> flipped(peaks_.rbegin(), peaks_.rend());
    for (Rat& p : flipped) p = -p;
    return Polity(bound_, std::move(flipped));
}

Rat utility(const Rat& peak, const Rat& policy) {
    Rat d = policy - peak;
    return -(d * d);
}

MedianTriple medians(const Polity& polity) {
    int n = polity.size();
    if (n % 2 == 1) {
        int m = (n + 1) / 2;
        return {m, m, m};
    }
    int left = n / 2;
    return {left, left, left + 1};
}

std::pair<int, int> median_of_voters(const Polity& polity, const std::vector<int>& voters) {
    if (voters.empty()) throw validation_error("voters: empty voter set has no median");
    std::vector<int> sorted = voters;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int v : sorted)
        if (v < 1 || v > polity.size()) throw validation_error("voters: agent index out of range");
    std::size_t k = sorted.size();
    if (k % 2 == 1) {
        int mv = sorted[k / 2];
        return {mv, mv};
    }
    return {sorted[k / 2 - 1], sorted[k / 2]};
}

}  // namespace pov
