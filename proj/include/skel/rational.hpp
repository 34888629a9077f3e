#ifndef SKEL_RATIONAL_HPP
#define SKEL_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace skel {

using Rat = mpq_class;

// Parses a decimal literal ("-3", "0.125", "2.5e-3") as an exact rational.
// Throws input_error on malformed text.
Rat rat_from_decimal(std::string_view s);

// Parses decimal, "p/q" fraction, or plain integer text.
Rat rat_from_text(std::string_view s);

// Shortest-ish human form: exact decimal when the denominator is 2^a*5^b,
// "p/q" otherwise.
std::string rat_to_string(const Rat& v);

int sign(const Rat& v);

// Conservative double interval [lo, hi] containing the exact value.
struct DInterval {
    double lo, hi;
};
DInterval rat_to_interval(const Rat& v);

// A rational upper bound b with b*b > s (for s > 0); used to box circles.
Rat sqrt_upper_bound(const Rat& s);

// Deterministic cross-platform RNG (split from std:: to keep seeded runs
// identical across standard libraries).
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) {
        return n == 0 ? 0 : next() % n;
    }
    double unit() {  // [0,1) with 53 bits
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
};

template <typename Vec>
void shuffle(Vec& v, SplitMix64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace skel

#endif
