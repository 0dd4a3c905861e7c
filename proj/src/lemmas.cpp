#include "subsetcodec/lemmas.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>

#include "subsetcodec/density.hpp"
#include "subsetcodec/error.hpp"

namespace subsetcodec {

namespace {

using i128 = __int128;

void require_density(const Rational& delta) {
    if (delta <= 0 || delta > 1) fail(ErrorKind::parameter, "density must lie in (0, 1], got " + to_string(delta));
}

std::uint64_t overlap(const FinitePrefixSet& a, const FinitePrefixSet& b) {
    const auto wa = a.words();
    const auto wb = b.words();
    std::uint64_t c = 0;
    for (std::size_t w = 0; w < std::min(wa.size(), wb.size()); ++w) c += static_cast<std::uint64_t>(std::popcount(wa[w] & wb[w]));
    return c;
}

// Per-family checks shared by the exhaustive and randomized sweeps.
struct FamilyChecker {
    std::uint64_t n;
    Rational delta;
    std::uint64_t k;
    bool check_half_square;
    i128 num, den;

    FamilyChecker(std::uint64_t n_, const Rational& d, std::uint64_t k_)
        : n(n_), delta(d), k(k_), check_half_square(k_ >= min_family_size(d)), num(d.numerator()), den(d.denominator()) {}

    // best: max pairwise overlap; pair_sum: Σ_{i<j} overlap; total: Σ|A_i|
    void operator()(std::uint64_t best, std::uint64_t pair_sum, std::uint64_t total, struct Accumulator& acc) const;
};

struct Accumulator {
    std::uint64_t families = 0;
    std::uint64_t half_square_checked = 0;
    std::uint64_t half_square_violations = 0;
    std::uint64_t gap_violations = 0;
    std::uint64_t variance_violations = 0;
    // min ratio kept as best / n with its own n (randomized sweeps share n)
    std::uint64_t min_best = UINT64_MAX;

    void merge(const Accumulator& o) {
        families += o.families;
        half_square_checked += o.half_square_checked;
        half_square_violations += o.half_square_violations;
        gap_violations += o.gap_violations;
        variance_violations += o.variance_violations;
        min_best = std::min(min_best, o.min_best);
    }

    VarianceSweep finish(std::uint64_t n) const {
        VarianceSweep s;
        s.families = families;
        s.half_square_checked = half_square_checked;
        s.half_square_violations = half_square_violations;
        s.gap_violations = gap_violations;
        s.variance_violations = variance_violations;
        s.min_ratio = families == 0 ? Rational(1)
                                    : Rational(static_cast<std::int64_t>(min_best), static_cast<std::int64_t>(n));
        return s;
    }
};

void FamilyChecker::operator()(std::uint64_t best, std::uint64_t pair_sum, std::uint64_t total,
                               Accumulator& acc) const {
    ++acc.families;
    acc.min_best = std::min(acc.min_best, best);
    const i128 b = best, nn = n, kk = k, s = total, p = 2 * static_cast<i128>(pair_sum);
    // best/n >= δ² - δ/k  <=>  best·k·den² >= n·(num²·k - num·den)
    if (b * kk * den * den < nn * (num * num * kk - num * den)) ++acc.gap_violations;
    if (check_half_square) {
        ++acc.half_square_checked;
        // best/n >= δ²/2
        if (2 * b * den * den < nn * num * num) ++acc.half_square_violations;
    }
    // Var ≥ 0: n·(S + P) >= S², i.e. P/n >= y² - y; and best/n >= (y² - y)/k²
    if (nn * (s + p) < s * s || b * nn * kk * kk < s * s - s * nn) ++acc.variance_violations;
}

}  // namespace

PairWitness variance_pair_witness(const SubsetFamily& family) {
    if (family.size() < 2) fail(ErrorKind::parameter, "need at least two sets");
    const std::uint64_t n = family.front().horizon();
    if (n == 0) fail(ErrorKind::parameter, "empty universe");
    for (const auto& a : family) {
        if (a.horizon() != n) fail(ErrorKind::parameter, "family members must share one universe");
    }
    PairWitness w;
    std::uint64_t best = 0;
    bool first = true;
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            const std::uint64_t c = overlap(family[i], family[j]);
            if (first || c > best) {
                best = c;
                w.i = i;
                w.j = j;
                first = false;
            }
        }
    }
    w.ratio = Rational(static_cast<std::int64_t>(best), static_cast<std::int64_t>(n));
    return w;
}

std::uint64_t min_family_size(const Rational& delta) {
    require_density(delta);
    const auto num = static_cast<std::uint64_t>(delta.numerator());
    const auto den = static_cast<std::uint64_t>(delta.denominator());
    return (2 * den + num - 1) / num;
}

DisjointVerdict disjoint_dense_bound_check(const SubsetFamily& family, const Rational& delta, std::uint64_t n) {
    require_density(delta);
    const Rational half = delta / 2;
    DisjointVerdict v;
    v.disjoint_and_dense = true;
    for (std::size_t i = 0; i < family.size() && v.disjoint_and_dense; ++i) {
        if (!is_dense_at(family[i], half, n)) v.disjoint_and_dense = false;
        for (std::size_t j = i + 1; j < family.size() && v.disjoint_and_dense; ++j) {
            if (!family[i].resized(n + 1).is_disjoint_from(family[j].resized(n + 1))) v.disjoint_and_dense = false;
        }
    }
    // |F| <= 2/δ
    v.within_bound = !v.disjoint_and_dense || Rational(static_cast<std::int64_t>(family.size())) * delta <= 2;
    return v;
}

std::uint64_t max_disjoint_dense_family(std::uint64_t n, const Rational& delta) {
    require_density(delta);
    if (n >= 20) fail(ErrorKind::budget, "exhaustive disjoint search is limited to n < 20");
    const unsigned width = static_cast<unsigned>(n + 1);
    const std::uint64_t need = ceil_fraction_of(n + 1, delta / 2);
    const std::uint32_t all = (std::uint32_t{1} << width) - 1;
    std::uint64_t best = 0;

    // Sets are chosen in increasing order of their least element; every
    // subset of the free elements is tried, pruned only by the counting bound.
    std::function<void(std::uint32_t, unsigned, std::uint64_t)> search = [&](std::uint32_t used, unsigned min_from,
                                                                             std::uint64_t count) {
        best = std::max(best, count);
        const auto free_mask = all & ~used & ~((std::uint32_t{1} << min_from) - 1);
        const auto free_count = static_cast<std::uint64_t>(std::popcount(free_mask));
        if (free_count < need || count + free_count / need <= best) return;
        for (std::uint32_t sub = free_mask; sub != 0; sub = (sub - 1) & free_mask) {
            if (static_cast<std::uint64_t>(std::popcount(sub)) < need) continue;
            const auto low = static_cast<unsigned>(std::countr_zero(sub));
            search(used | sub, low + 1, count + 1);
        }
    };
    search(0, 0, 0);
    return best;
}

namespace detail {

std::optional<std::size_t> first_dense_part(std::span<const std::uint64_t> part_counts, const Rational& delta,
                                            std::uint64_t n) {
    const i128 k = static_cast<i128>(part_counts.size());
    const i128 rhs = static_cast<i128>(delta.numerator()) * (static_cast<i128>(n) + 1);
    for (std::size_t i = 0; i < part_counts.size(); ++i) {
        if (static_cast<i128>(part_counts[i]) * k * delta.denominator() >= rhs) return i;
    }
    return std::nullopt;
}

}  // namespace detail

std::size_t partition_density_witness(const FinitePrefixSet& b, const SubsetFamily& parts, const Rational& delta,
                                      std::uint64_t n) {
    require_density(delta);
    if (parts.empty()) fail(ErrorKind::invalid_partition, "no parts");
    FinitePrefixSet uni(b.horizon());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].horizon() != b.horizon()) fail(ErrorKind::invalid_partition, "parts must share B's window");
        if (!parts[i].is_disjoint_from(uni)) {
            fail(ErrorKind::invalid_partition, "part " + std::to_string(i) + " overlaps an earlier part");
        }
        for (auto m : parts[i].members()) uni.set(m);
    }
    if (!(uni == b)) fail(ErrorKind::invalid_partition, "parts do not cover B exactly");
    if (!is_dense_at(b, delta, n)) {
        fail(ErrorKind::precondition, "B is not " + to_string(delta) + "-dense at " + std::to_string(n));
    }
    std::vector<std::uint64_t> counts;
    counts.reserve(parts.size());
    for (const auto& p : parts) counts.push_back(p.count_through(n));
    const auto i = detail::first_dense_part(counts, delta, n);
    if (!i) throw std::logic_error("pigeonhole failed: no dense part");
    return *i;
}

// ---------------------------------------------------------------------------

namespace {

struct VarianceEnumerator {
    std::vector<std::uint64_t> sizes;
    std::vector<std::uint8_t> overlaps;  // row-major candidates × candidates
    std::size_t m = 0;
    std::size_t k = 0;
    FamilyChecker check;

    // All multisets whose least candidate index is `first`.
    void run_from(std::size_t first, Accumulator& acc) const {
        std::array<std::size_t, 16> chosen{};
        chosen[0] = first;
        walk(1, first, sizes[first], 0, 0, chosen, acc);
    }

    void walk(std::size_t depth, std::size_t from, std::uint64_t total, std::uint64_t best, std::uint64_t pairs,
              std::array<std::size_t, 16>& chosen, Accumulator& acc) const {
        if (depth == k) {
            check(best, pairs, total, acc);
            return;
        }
        for (std::size_t c = from; c < m; ++c) {
            std::uint64_t b = best, p = pairs;
            const std::uint8_t* row = &overlaps[c * m];
            for (std::size_t d = 0; d < depth; ++d) {
                const std::uint64_t o = row[chosen[d]];
                b = std::max(b, o);
                p += o;
            }
            chosen[depth] = c;
            walk(depth + 1, c, total + sizes[c], b, p, chosen, acc);
        }
    }
};

}  // namespace

std::uint64_t variance_family_count(std::uint64_t n, std::size_t k, const Rational& delta) {
    require_density(delta);
    if (n == 0 || n > 20) fail(ErrorKind::budget, "exhaustive variance sweep supports 1 <= n <= 20");
    const std::uint64_t min_size = ceil_fraction_of(n, delta);
    std::uint64_t m = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (static_cast<std::uint64_t>(std::popcount(mask)) >= min_size) ++m;
    }
    // C(m + k - 1, k), saturating
    unsigned __int128 c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        c = c * (m + k - i) / i;
        if (c > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(c);
}

VarianceSweep exhaustive_variance(std::uint64_t n, std::size_t k, const Rational& delta, Exec exec,
                                  std::uint64_t budget) {
    if (k < 2 || k > 16) fail(ErrorKind::parameter, "family size must lie in [2, 16]");
    const std::uint64_t families = variance_family_count(n, k, delta);
    if (families > budget) {
        fail(ErrorKind::budget, "n=" + std::to_string(n) + ", k=" + std::to_string(k) + " needs " +
                                    std::to_string(families) + " families, budget is " + std::to_string(budget));
    }
    const std::uint64_t min_size = ceil_fraction_of(n, delta);

    std::vector<std::uint32_t> cands;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        if (static_cast<std::uint64_t>(std::popcount(mask)) >= min_size) cands.push_back(mask);
    }
    VarianceEnumerator e{{}, {}, cands.size(), k, FamilyChecker(n, delta, k)};
    e.sizes.resize(cands.size());
    e.overlaps.resize(cands.size() * cands.size());
    for (std::size_t a = 0; a < cands.size(); ++a) {
        e.sizes[a] = static_cast<std::uint64_t>(std::popcount(cands[a]));
        for (std::size_t b = 0; b < cands.size(); ++b) {
            e.overlaps[a * cands.size() + b] = static_cast<std::uint8_t>(std::popcount(cands[a] & cands[b]));
        }
    }

    Accumulator total;
    const auto m = static_cast<std::int64_t>(cands.size());
    if (exec == Exec::serial) {
        for (std::int64_t first = 0; first < m; ++first) e.run_from(static_cast<std::size_t>(first), total);
    } else {
#pragma omp parallel
        {
            Accumulator local;
#pragma omp for schedule(dynamic, 1) nowait
            for (std::int64_t first = 0; first < m; ++first) e.run_from(static_cast<std::size_t>(first), local);
#pragma omp critical(subsetcodec_variance_merge)
            total.merge(local);
        }
    }
    return total.finish(n);
}

namespace {

void random_trial(std::uint64_t n, std::uint64_t seed, std::uint64_t trial, Accumulator& acc) {
    std::mt19937_64 rng(seed ^ (trial * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL));
    const std::uint64_t k = 2 + rng() % 7;
    const Rational delta = (rng() & 1U) != 0 ? Rational(1, 2) : Rational(1, 4);
    const std::uint64_t min_size = ceil_fraction_of(n, delta);

    std::array<std::uint64_t, 8> sets{};
    std::array<std::uint32_t, 64> perm{};
    for (std::uint64_t i = 0; i < k; ++i) {
        const std::uint64_t size = min_size + rng() % (n - min_size + 1);
        std::iota(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n), 0U);
        std::uint64_t mask = 0;
        for (std::uint64_t t = 0; t < size; ++t) {
            const std::uint64_t pick = t + rng() % (n - t);
            std::swap(perm[t], perm[pick]);
            mask |= std::uint64_t{1} << perm[t];
        }
        sets[i] = mask;
    }

    std::uint64_t best = 0, pairs = 0, total = 0;
    for (std::uint64_t i = 0; i < k; ++i) {
        total += static_cast<std::uint64_t>(std::popcount(sets[i]));
        for (std::uint64_t j = i + 1; j < k; ++j) {
            const auto o = static_cast<std::uint64_t>(std::popcount(sets[i] & sets[j]));
            best = std::max(best, o);
            pairs += o;
        }
    }
    FamilyChecker(n, delta, k)(best, pairs, total, acc);
}

}  // namespace

VarianceSweep random_variance(std::uint64_t n, std::uint64_t trials, std::uint64_t seed, Exec exec) {
    if (n == 0 || n > 64) fail(ErrorKind::parameter, "randomized sweep supports 1 <= n <= 64");
    Accumulator total;
    const auto count = static_cast<std::int64_t>(trials);
    if (exec == Exec::serial) {
        for (std::int64_t t = 0; t < count; ++t) random_trial(n, seed, static_cast<std::uint64_t>(t), total);
    } else {
#pragma omp parallel
        {
            Accumulator local;
#pragma omp for schedule(static) nowait
            for (std::int64_t t = 0; t < count; ++t) random_trial(n, seed, static_cast<std::uint64_t>(t), local);
#pragma omp critical(subsetcodec_random_merge)
            total.merge(local);
        }
    }
    return total.finish(n);
}

// ---------------------------------------------------------------------------

namespace {

struct PartitionEnumerator {
    std::uint64_t n;
    std::size_t k;
    unsigned width;
    std::vector<Rational> tight;  // tight[b] = b/(n+1)

    // Label 0 = outside B, label p+1 = part p.
    void walk(unsigned pos, std::array<std::uint64_t, 16>& counts, std::uint64_t in_b, PartitionSweep& acc) const {
        if (pos == width) {
            if (in_b == 0) return;
            ++acc.instances;
            if (!detail::first_dense_part(std::span<const std::uint64_t>(counts.data(), k), tight[in_b], n)) {
                ++acc.failures;
            }
            return;
        }
        walk(pos + 1, counts, in_b, acc);
        for (std::size_t p = 0; p < k; ++p) {
            ++counts[p];
            walk(pos + 1, counts, in_b + 1, acc);
            --counts[p];
        }
    }
};

}  // namespace

PartitionSweep exhaustive_partition(std::uint64_t n, std::size_t k, Exec exec) {
    if (n > 15) fail(ErrorKind::budget, "exhaustive partition sweep supports n <= 15");
    if (k == 0 || k > 16) fail(ErrorKind::parameter, "part count must lie in [1, 16]");
    PartitionEnumerator e{n, k, static_cast<unsigned>(n + 1), {}};
    e.tight.push_back(Rational(0));
    for (std::uint64_t b = 1; b <= n + 1; ++b) {
        e.tight.push_back(Rational(static_cast<std::int64_t>(b), static_cast<std::int64_t>(n + 1)));
    }

    // Prefix labellings of the first `split` elements are independent tasks.
    const unsigned split = std::min(e.width, 3U);
    std::uint64_t tasks = 1;
    for (unsigned i = 0; i < split; ++i) tasks *= k + 1;

    auto run_task = [&](std::uint64_t task, PartitionSweep& acc) {
        std::array<std::uint64_t, 16> counts{};
        std::uint64_t in_b = 0;
        for (unsigned i = 0; i < split; ++i) {
            const std::uint64_t label = task % (k + 1);
            task /= k + 1;
            if (label != 0) {
                ++counts[label - 1];
                ++in_b;
            }
        }
        e.walk(split, counts, in_b, acc);
    };

    PartitionSweep total;
    const auto count = static_cast<std::int64_t>(tasks);
    if (exec == Exec::serial) {
        for (std::int64_t t = 0; t < count; ++t) run_task(static_cast<std::uint64_t>(t), total);
    } else {
#pragma omp parallel
        {
            PartitionSweep local;
#pragma omp for schedule(dynamic, 1) nowait
            for (std::int64_t t = 0; t < count; ++t) run_task(static_cast<std::uint64_t>(t), local);
#pragma omp critical(subsetcodec_partition_merge)
            {
                total.instances += local.instances;
                total.failures += local.failures;
            }
        }
    }
    return total;
}

}  // namespace subsetcodec
