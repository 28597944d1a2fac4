#include "pov/common.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace pov {

namespace {

bool is_plain_rational(const std::string& s) {
    // digits, optional sign, optional single '/'
    bool seen_slash = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '/') {
            if (seen_slash) return false;
            seen_slash = true;
            continue;
        }
        if (c == '+' || c == '-') {
            if (i != 0 && s[i - 1] != '/') return false;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return !s.empty();
}

Rat parse_decimal(const std::string& s) {
    // [sign] digits [. digits] [ (e|E) [sign] digits ]
    std::size_t pos = 0;
    bool negative = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        negative = (s[pos] == '-');
        ++pos;
    }
    std::string digits;
    long frac_digits = 0;
    long exponent = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) digits += s[pos++];
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            digits += s[pos++];
            ++frac_digits;
        }
    }
    if (digits.empty()) throw validation_error("not a number: '" + s + "'");
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        ++pos;
        bool exp_neg = false;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            exp_neg = (s[pos] == '-');
            ++pos;
        }
        std::string exp_digits;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) exp_digits += s[pos++];
        if (exp_digits.empty() || exp_digits.size() > 6) throw validation_error("bad exponent in '" + s + "'");
        exponent = std::strtol(exp_digits.c_str(), nullptr, 10);
        if (exp_neg) exponent = -exponent;
    }
    if (pos != s.size()) throw validation_error("not a number: '" + s + "'");

    mpz_class numerator(digits);
    if (negative) numerator = -numerator;
    long shift = exponent - frac_digits;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    Rat result;
    if (shift >= 0) {
        result = Rat(numerator * pow10);
    } else {
        result = Rat(numerator, pow10);
    }
    result.canonicalize();
    return result;
}

}  // namespace

Rat rat_from_string(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw validation_error("empty number");
    if (is_plain_rational(s)) {
        Rat r;
        if (r.set_str(s, 10) != 0) throw validation_error("not a number: '" + text + "'");
        if (r.get_den() == 0) throw validation_error("zero denominator in '" + text + "'");
        r.canonicalize();
        return r;
    }
    return parse_decimal(s);
}

Rat rat_from_double(double value) {
    if (!std::isfinite(value)) throw validation_error("non-finite number");
    return Rat(value);  // mpq_set_d is exact
}

std::string rat_to_string(const Rat& value) { return value.get_str(); }

double rat_to_double(const Rat& value) { return value.get_d(); }

int compare_distance(const Rat& peak, const Rat& a, const Rat& b) {
    // |a-p|^2 - |b-p|^2 = (a-b)(a+b-2p); avoids forming squares.
    int s1 = cmp(a, b);
    if (s1 == 0) return 0;
    int s2 = cmp(a + b, 2 * peak);
    return s1 * s2;
}

Rat abs_diff(const Rat& a, const Rat& b) { return a >= b ? a - b : b - a; }

std::uint64_t SplitMix64::below(std::uint64_t n) {
    if (n == 0) throw validation_error("empty draw range");
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return x % n;
}

}  // namespace pov
