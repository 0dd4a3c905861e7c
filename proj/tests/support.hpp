#pragma once

#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "subsetcodec/error.hpp"
#include "subsetcodec/prefix_set.hpp"

// Evaluates `expr` and checks that it throws subsetcodec::Error of kind `want`.
#define CHECK_ERROR_KIND(expr, want)                                   \
    do {                                                               \
        bool thrown_ = false;                                          \
        try {                                                          \
            (void)(expr);                                              \
        } catch (const subsetcodec::Error& e_) {                       \
            thrown_ = true;                                            \
            CHECK_MESSAGE(e_.kind() == (want), e_.what());              \
        }                                                              \
        CHECK_MESSAGE(thrown_, "expected an error from " #expr);       \
    } while (0)

namespace test {

inline subsetcodec::FinitePrefixSet random_set(std::mt19937_64& rng, std::uint64_t horizon, unsigned one_in = 2) {
    subsetcodec::FinitePrefixSet a(horizon);
    for (std::uint64_t n = 0; n < horizon; ++n) a.set(n, rng() % one_in == 0);
    return a;
}

// Naive |A ∩ [0, n]| straight from membership tests.
inline std::uint64_t naive_count(const subsetcodec::FinitePrefixSet& a, std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t m = 0; m <= n; ++m) c += a.contains(m) ? 1 : 0;
    return c;
}

inline std::vector<std::uint64_t> members_of(const subsetcodec::FinitePrefixSet& a) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 0; n < a.horizon(); ++n) {
        if (a.contains(n)) out.push_back(n);
    }
    return out;
}

}  // namespace test
