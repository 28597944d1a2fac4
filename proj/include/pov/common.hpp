#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pov {

// Exact rational scalar. Every quantity in the library (peaks, proposals,
// probabilities, utilities) is a Rat; comparisons are exact, tolerance 0.
using Rat = mpq_class;

// Input that violates a documented precondition or invariant.
struct validation_error : std::invalid_argument {
    explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Instance exceeds a tractability guard (exhaustive scans only).
struct tractability_error : std::runtime_error {
    explicit tractability_error(const std::string& msg) : std::runtime_error(msg) {}
};

// num/den in canonical form. mpq_class's two-argument constructor does not
// reduce the fraction, so every ratio in the library goes through here.
inline Rat ratio(long num, long den) {
    Rat value(num, den);
    value.canonicalize();
    return value;
}

// Parses "p", "p/q", or a decimal like "-3.25" / "1e-3" into an exact Rat.
Rat rat_from_string(const std::string& text);

// Exact value of the double (binary expansion). Rejects NaN/inf.
Rat rat_from_double(double value);

// Canonical form: "p" when the denominator is 1, otherwise "p/q".
std::string rat_to_string(const Rat& value);

double rat_to_double(const Rat& value);

// Sign of |a - peak| - |b - peak|: negative when a is strictly closer to
// peak, 0 when equidistant, positive when b is strictly closer.
int compare_distance(const Rat& peak, const Rat& a, const Rat& b);

Rat abs_diff(const Rat& a, const Rat& b);

// Deterministic, platform-independent PRNG for the sampling paths.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased draw from [0, n) by rejection.
    std::uint64_t below(std::uint64_t n);
};

}  // namespace pov
