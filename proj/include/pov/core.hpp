#pragma once

#include <utility>
#include <vector>

#include "pov/common.hpp"

namespace pov {

/// A polity: N agents with strictly increasing peaks on [-bound, bound].
/// Agent indices are 1-based throughout the library, matching the usual
/// ordering theta_1 < ... < theta_N.
class Polity {
  public:
    static Polity create(Rat bound, std::vector<Rat> peaks);

    int size() const { return static_cast<int>(peaks_.size()); }
    const Rat& bound() const { return bound_; }
    const std::vector<Rat>& peaks() const { return peaks_; }
    const Rat& peak(int agent) const { return peaks_[static_cast<std::size_t>(agent - 1)]; }
    bool contains(const Rat& x) const { return x >= -bound_ && x <= bound_; }

    /// Peaks negated and reversed; same bound. Agent i maps to N+1-i.
    Polity mirrored() const;

  private:
    Polity(Rat bound, std::vector<Rat> peaks) : bound_(std::move(bound)), peaks_(std::move(peaks)) {}
    Rat bound_;
    std::vector<Rat> peaks_;
};

/// Left/right median agents; all three coincide for odd N, right = left+1
/// for even N (mid is the left one by convention).
struct MedianTriple {
    int left;
    int mid;
    int right;
};

/// Quadratic single-peaked utility: -(policy - peak)^2.
Rat utility(const Rat& peak, const Rat& policy);

MedianTriple medians(const Polity& polity);

/// Median voters among a non-empty subset of agents: the middle agent twice
/// when the subset size is odd, the two middle agents when even.
std::pair<int, int> median_of_voters(const Polity& polity, const std::vector<int>& voters);

}  // namespace pov
