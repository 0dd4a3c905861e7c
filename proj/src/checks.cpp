#include "subsetcodec/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "subsetcodec/codecs.hpp"
#include "subsetcodec/density.hpp"
#include "subsetcodec/error.hpp"
#include "subsetcodec/kolmo.hpp"
#include "subsetcodec/lemmas.hpp"
#include "subsetcodec/pa_diag.hpp"
#include "subsetcodec/sampling.hpp"
#include "subsetcodec/string_index.hpp"

namespace subsetcodec {

namespace {

Bitstring random_message(std::mt19937_64& rng, std::size_t bits) {
    Bitstring x(bits);
    for (std::size_t i = 0; i < bits; ++i) x.set(i, (rng() & 1U) != 0);
    return x;
}

std::string join(const std::vector<std::uint64_t>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

CheckOutcome check_dm(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::uint64_t horizon = (std::uint64_t{1} << 16) - 1;
    for (int trial = 0; trial < 64; ++trial) {
        const Bitstring x = random_message(rng, 64);
        const auto a = dm_encode(x, horizon);
        for (std::uint64_t n = 0; n <= 16; ++n) {
            const std::uint64_t count = n == 0 ? 0 : a.count_through((std::uint64_t{1} << n) - 2);
            if (count != n) {
                return {false, "X=" + x.to_string() + ": |A ∩ [0, 2^" + std::to_string(n) + "-1)| = " +
                                   std::to_string(count)};
            }
        }
    }
    return {true, "64 random messages, n = 0..16"};
}

CheckOutcome check_interval(std::uint64_t) {
    const std::uint64_t horizon = 100000;
    const std::set<std::uint64_t> indices{0, 2, 5};
    const auto t = interval_thresholds_covering(horizon);
    const auto a = interval_encode([&](std::uint64_t i) { return indices.count(i) != 0; }, t, horizon);

    std::ostringstream detail;
    for (auto i : indices) {
        if (i == 0) continue;  // (i-1)/i is undefined at i = 0
        const std::uint64_t n = t.values[i + 1] - 1;
        const Rational need(static_cast<std::int64_t>(i) - 1, static_cast<std::int64_t>(i));
        const Rational d = density_at(a, n);
        if (d < need) return {false, "density at " + std::to_string(n) + " is " + to_string(d)};
        detail << "d(" << n << ")=" << to_string(d) << " ";
    }

    const std::uint64_t stride = 3;
    // Intervals a stride-3 sample cannot miss.
    std::set<std::uint64_t> covered;
    for (std::size_t i = 0; i < t.intervals(); ++i) {
        if (t.values[i + 1] <= horizon && t.values[i + 1] - t.values[i] >= stride) covered.insert(i);
    }
    for (std::uint64_t offset = 0; offset < stride; ++offset) {
        const auto decoded = interval_decode(stride_sample(a, stride, offset), t);
        for (auto i : decoded) {
            if (!indices.count(i)) return {false, "offset " + std::to_string(offset) + " decoded " + join(decoded)};
        }
        for (auto i : covered) {
            const bool got = std::find(decoded.begin(), decoded.end(), i) != decoded.end();
            if (got != (indices.count(i) != 0)) {
                return {false, "offset " + std::to_string(offset) + " decoded " + join(decoded)};
            }
        }
    }
    detail << "covered intervals " << join({covered.begin(), covered.end()});
    return {true, detail.str()};
}

CheckOutcome check_slowdecay(std::uint64_t seed) {
    const std::uint64_t horizon = 100000;
    const auto f = LowerBound::inverse_sqrt();
    std::mt19937_64 rng(seed);
    std::uint64_t decoded = 0;
    std::string thresholds;
    for (int trial = 0; trial < 4; ++trial) {
        const Bitstring x = random_message(rng, 8);
        const auto code = slowdecay_encode(x, f, 3, horizon);
        if (const auto bad = first_f_violation(code.set, f)) {
            return {false, "not f-dense at " + std::to_string(*bad)};
        }
        const auto& v = code.thresholds.values;
        thresholds = join(v);
        const std::uint64_t n1 = v[1];
        std::vector<std::uint64_t> block1;
        for (auto m = code.set.next_member(v[1]); m && *m < v[2]; m = code.set.next_member(*m + 1)) block1.push_back(*m);
        for (auto m = code.set.next_member(v[2]); m && *m < std::min(v[3], horizon); m = code.set.next_member(*m + 1)) {
            // {m} alone, and m with a random block-1 element
            auto single = FinitePrefixSet::from_members(horizon, {*m});
            auto mixed = single;
            mixed.set(block1[rng() % block1.size()]);
            for (const auto* s : {&single, &mixed}) {
                for (std::size_t i = 0; i < 2; ++i) {
                    if (slowdecay_decode(*s, n1, i) != x[i]) {
                        return {false, "X=" + x.to_string() + " sample with " + std::to_string(*m) + " misdecodes bit " +
                                           std::to_string(i)};
                    }
                }
            }
            ++decoded;
        }
    }
    return {true, "thresholds " + thresholds + ", " + std::to_string(decoded) + " block-2 samples decoded"};
}

CheckOutcome check_parity(std::uint64_t seed) {
    const std::uint64_t horizon = 1000000;
    std::mt19937_64 rng(seed);
    const Bitstring x = random_message(rng, 32);
    const auto code = parity_encode(x, horizon);
    const auto profile = density_profile(code.set);
    for (std::uint64_t n = 1; n < horizon; n += 2) {
        if (profile.count(n) * 2 != n + 1) return {false, "density at " + std::to_string(n) + " is not 1/2"};
    }
    const auto covered = parity_covered_indices(code.thresholds, horizon);
    std::vector<FinitePrefixSet> samples{stride_sample(code.set, 2, 0), stride_sample(code.set, 2, 1)};
    for (std::uint64_t s = 0; s < 8; ++s) {
        samples.push_back(bernoulli_sample_with_floor(code.set, Rational(1, 4), Rational(1, 16), seed * 1000 + s * 64));
    }
    for (std::size_t k = 0; k < samples.size(); ++k) {
        for (auto j : covered) {
            if (parity_decode(samples[k], j, code.thresholds) != x[j]) {
                return {false, "sample " + std::to_string(k) + " misdecodes bit " + std::to_string(j)};
            }
        }
    }
    return {true, "X=" + x.to_string() + ", covered j " + join(covered) + ", " + std::to_string(samples.size()) +
                      " samples"};
}

CheckOutcome check_residue(std::uint64_t) {
    const Bitstring rho = Bitstring::parse("101");
    const Rational delta(1, 8);
    const std::uint64_t floor_n = 16, horizon = std::uint64_t{1} << 16;
    const auto a = residue_encode(rho, floor_n, delta, horizon);
    const std::uint32_t m = residue_bits(delta);

    for (auto n : a.members()) {
        if (residue_decode(n, floor_n, m).prefix != rho) return {false, std::to_string(n) + " does not decode 101"};
    }
    // Aligned points: n + 1 a multiple of 2^m, from N·2^m on.
    const std::uint64_t period = std::uint64_t{1} << m;
    std::uint64_t aligned = 0, exact = 0, tail_exact = 0;
    std::optional<std::uint64_t> first_off;
    const auto profile = density_profile(a);
    for (std::uint64_t n = floor_n * period - 1; n < horizon; n += period) {
        ++aligned;
        if (equals_fraction_of(profile.count(n), n + 1, delta)) {
            ++exact;
        } else if (!first_off) {
            first_off = n;
        }
        if (equals_fraction_of(profile.count(n), n + 1 - floor_n, delta)) ++tail_exact;
    }
    std::ostringstream detail;
    detail << exact << "/" << aligned << " aligned points at density exactly 1/8";
    if (first_off) {
        detail << "; d(" << *first_off << ") = " << to_string(density_at(a, *first_off))
               << " because 5 and 13 lie below N; |A ∩ [N, n]|/(n-N+1) = 1/8 at " << tail_exact << "/" << aligned;
    }
    return {exact == aligned, detail.str()};
}

CheckOutcome check_evenodd(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::uint64_t h = 1024;
    for (int trial = 0; trial < 100; ++trial) {
        FinitePrefixSet a(h);
        for (std::uint64_t n = 0; n < h; ++n) a.set(n, (rng() & 1U) != 0);
        const auto b = evenodd_split(a);
        for (std::uint64_t n = 0; n < h; ++n) {
            if (b.test(2 * n) == b.test(2 * n + 1)) return {false, "pair at " + std::to_string(n) + " is not split"};
        }
        const std::vector<FinitePrefixSet> thinned{b,
                                                   stride_sample(b, 2, 0),
                                                   stride_sample(b, 3, 1),
                                                   bernoulli_sample(b, Rational(1, 2), rng()),
                                                   bernoulli_sample(b, Rational(1, 4), rng())};
        for (const auto& c : thinned) {
            if (!c.is_subset_of(b)) return {false, "sampler left B"};
            const auto parts = evenodd_extract(c);
            if (!parts.even.resized(h).is_subset_of(a) || !parts.odd.resized(h).is_disjoint_from(a)) {
                return {false, "trial " + std::to_string(trial) + ": extracted parts disagree with A"};
            }
        }
    }
    return {true, "100 random sets, 5 thinnings each"};
}

CheckOutcome check_pa(std::uint64_t seed) {
    const auto table = fixed_pa_table();
    const auto pc = pa_construct(table, 8, 4096);
    const auto r = pa_verify(pc, table, 100, seed);
    std::ostringstream detail;
    detail << "xs " << join(pc.xs) << ", min density (n>=3) " << to_string(r.min_density) << ", " << r.samples
           << " samples, " << r.checked_points << " points, completion failures " << r.completion_failures
           << ", diagonal failures " << r.diagonal_failures;
    if (r.first_density_violation) detail << ", density fails at " << *r.first_density_violation;
    return {r.ok(), detail.str()};
}

CheckOutcome check_variance(std::uint64_t seed) {
    std::uint64_t families = 0, half = 0;
    for (const Rational delta : {Rational(1, 2), Rational(1, 4)}) {
        for (std::uint64_t n = 1; n <= 8; ++n) {
            for (std::size_t k = 2; k <= 4; ++k) {
                const auto s = exhaustive_variance(n, k, delta);
                families += s.families;
                half += s.half_square_checked;
                if (!s.clean()) {
                    return {false, "n=" + std::to_string(n) + " k=" + std::to_string(k) + " δ=" + to_string(delta) +
                                       ": gap " + std::to_string(s.gap_violations) + ", half-square " +
                                       std::to_string(s.half_square_violations) + ", variance " +
                                       std::to_string(s.variance_violations)};
                }
            }
        }
    }
    const auto r = random_variance(64, 100000, seed);
    if (!r.clean()) {
        return {false, "randomized: gap " + std::to_string(r.gap_violations) + ", half-square " +
                           std::to_string(r.half_square_violations) + ", variance " +
                           std::to_string(r.variance_violations)};
    }
    return {true, std::to_string(families) + " exhaustive families (" + std::to_string(half) +
                      " with k >= ceil(2/δ)), " + std::to_string(r.families) + " random"};
}

CheckOutcome check_disjoint(std::uint64_t) {
    std::ostringstream detail;
    const char* sep = "";
    for (const Rational delta : {Rational(1, 2), Rational(1)}) {
        std::uint64_t largest = 0;
        for (std::uint64_t n = 0; n <= 12; ++n) {
            const auto best = max_disjoint_dense_family(n, delta);
            largest = std::max(largest, best);
            if (Rational(static_cast<std::int64_t>(best)) * delta > 2) {
                return {false, "n=" + std::to_string(n) + " δ=" + to_string(delta) + ": " + std::to_string(best) +
                                   " disjoint sets"};
            }
        }
        detail << sep << "δ=" << to_string(delta) << ": largest family " << largest;
        sep = ", ";
    }
    return {true, detail.str()};
}

CheckOutcome check_partition(std::uint64_t) {
    std::uint64_t instances = 0;
    for (std::uint64_t n = 0; n <= 12; ++n) {
        for (std::size_t k = 1; k <= 3; ++k) {
            const auto s = exhaustive_partition(n, k);
            instances += s.instances;
            if (s.failures != 0) {
                return {false, "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " +
                                   std::to_string(s.failures) + " failures"};
            }
        }
    }
    return {true, std::to_string(instances) + " labelled partitions"};
}

CheckOutcome check_counting(std::uint64_t) {
    const auto s = counting_bound_sweep(12, 6);
    std::ostringstream detail;
    detail << s.oracles << " oracles, " << s.checks << " (s,k) checks, max counts";
    for (int k = 0; k <= 6; ++k) detail << " " << s.max_count[k];
    return {s.violations == 0, detail.str()};
}

CheckOutcome check_ksafe(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uint64_t instances = 0;
    for (std::uint32_t k = 0; k <= 3; ++k) {
        for (int trial = 0; trial < 6; ++trial) {
            const std::uint64_t universe = 4 + rng() % 9;  // 4..12
            const std::size_t piece_count = 1 + rng() % 3;
            std::vector<FinitePrefixSet> pieces(piece_count, FinitePrefixSet(universe));
            for (std::uint64_t x = 0; x < universe; ++x) pieces[x < piece_count ? x : rng() % piece_count].set(x);
            const std::uint64_t m = rng() % 3;

            KSafeInstance empty{{}, pieces, universe, m, k};
            const auto ok = k_safe_check(empty);
            ++instances;
            if (!ok.safe) return {false, "F = ∅ rejected at k=" + std::to_string(k)};

            // 2^k + 1 distinct strings, some longer than any program can emit.
            KSafeInstance big{{}, pieces, universe, m, k};
            std::set<Bitstring> chosen;
            while (chosen.size() < (std::size_t{1} << k) + 1) chosen.insert(string_at(rng() % 64));
            big.family.assign(chosen.begin(), chosen.end());
            const auto bad = k_safe_check(big);
            ++instances;
            if (bad.safe) return {false, "|F| = 2^k + 1 accepted at k=" + std::to_string(k)};
        }
    }
    return {true, std::to_string(instances) + " instances"};
}

}  // namespace

const std::vector<Check>& acceptance_checks() {
    static const std::vector<Check> checks{
        {"dm_density", "initial-segment coding has n elements below 2^n - 1", 1, check_dm},
        {"interval_codec", "interval codec density and stride-3 decoding", 1, check_interval},
        {"slowdecay_codec", "slow-decay codec is f-dense and decodes X|2", 5, check_slowdecay},
        {"parity_codec", "parity codec density 1/2 at odd points and sample decoding", 5, check_parity},
        {"residue_codec", "residue codec density 1/8 at aligned points and decoding", 1, check_residue},
        {"evenodd_split", "even/odd split and extraction from thinned samples", 1, check_evenodd},
        {"pa_construction", "PA construction density and completion decoding", 10, check_pa},
        {"variance_lemma", "pairwise-overlap bounds, exhaustive and randomized", 60, check_variance},
        {"disjoint_dense_bound", "at most 2/δ disjoint δ/2-dense sets", 10, check_disjoint},
        {"partition_pigeonhole", "some part of a partition is δ/k-dense", 10, check_partition},
        {"kolmo_counting", "fewer than 2^k strings of complexity below k", 60, check_counting},
        {"ksafe_size", "k-safe families have at most 2^k strings", 60, check_ksafe},
    };
    return checks;
}

CheckResult run_check(const Check& check, std::uint64_t seed) {
    CheckResult r;
    r.id = check.id;
    r.title = check.title;
    r.limit_seconds = check.limit_seconds;
    const auto start = std::chrono::steady_clock::now();
    CheckOutcome out;
    try {
        out = check.run(seed);
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.timed_out = r.seconds >= r.limit_seconds;
    r.passed = out.ok && !r.timed_out;
    r.detail = out.detail;
    if (r.timed_out) r.detail += " [over time limit]";
    return r;
}

std::string format_result(const CheckResult& r) {
    char timing[64];
    std::snprintf(timing, sizeof timing, "(%.2f s / %g s)", r.seconds, r.limit_seconds);
    return std::string(r.passed ? "PASS" : "FAIL") + "  " + r.id + "  " + timing + "  " + r.detail;
}

}  // namespace subsetcodec
