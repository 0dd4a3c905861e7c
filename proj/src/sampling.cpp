#include "subsetcodec/sampling.hpp"

#include <random>

#include "subsetcodec/density.hpp"
#include "subsetcodec/error.hpp"

namespace subsetcodec {

FinitePrefixSet stride_sample(const FinitePrefixSet& a, std::uint64_t k, std::uint64_t offset) {
    if (k == 0) fail(ErrorKind::parameter, "stride must be positive");
    FinitePrefixSet out(a.horizon());
    std::uint64_t position = 0;
    for (auto m : a.members()) {
        if (position >= offset && (position - offset) % k == 0) out.set(m);
        ++position;
    }
    return out;
}

FinitePrefixSet bernoulli_sample(const FinitePrefixSet& a, const Rational& p, std::uint64_t seed) {
    if (p < 0 || p > 1) fail(ErrorKind::parameter, "keep probability must lie in [0, 1]");
    std::mt19937_64 rng(seed);
    const auto num = static_cast<std::uint64_t>(p.numerator());
    const auto den = static_cast<std::uint64_t>(p.denominator());
    FinitePrefixSet out(a.horizon());
    for (auto m : a.members()) {
        if (rng() % den < num) out.set(m);
    }
    return out;
}

FinitePrefixSet bernoulli_sample_with_floor(const FinitePrefixSet& a, const Rational& p, const Rational& floor,
                                            std::uint64_t seed, unsigned attempts) {
    for (unsigned t = 0; t < attempts; ++t) {
        FinitePrefixSet s = bernoulli_sample(a, p, seed + t);
        FinitePrefixSet padded = s;
        if (padded.horizon() > 0) padded.set(0);
        if (is_delta_dense(padded, floor)) return s;
    }
    fail(ErrorKind::precondition, "no thinning with keep probability " + to_string(p) + " stayed " +
                                      to_string(floor) + "-dense within " + std::to_string(attempts) + " draws");
}

}  // namespace subsetcodec
