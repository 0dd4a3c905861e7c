#include <algorithm>
#include <map>

#include "subsetcodec/codecs.hpp"
#include "subsetcodec/kolmo.hpp"
#include "subsetcodec/string_index.hpp"
#include "support.hpp"

using namespace subsetcodec;

namespace {

Bitstring ops(std::initializer_list<unsigned> fields) {
    Bitstring p;
    for (auto f : fields) {
        p.push_back((f & 4U) != 0);
        p.push_back((f & 2U) != 0);
        p.push_back((f & 1U) != 0);
    }
    return p;
}

constexpr unsigned E0 = 0, E1 = 1, H = 2, Q = 3, I = 4, J = 5, N = 6, R = 7;

// Least program length for each output, by running every program through the
// public interpreter.
std::map<Bitstring, std::uint64_t> brute_table(const FinitePrefixSet& s, std::uint64_t bound) {
    std::map<Bitstring, std::uint64_t> out;
    const std::uint64_t m = s.max_member().value();
    for (std::uint64_t len = 0; len < std::min(bound, m + 1); ++len) {
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << len); ++code) {
            const auto r = run_program(Bitstring::from_uint(code, len), s, m, m);
            if (r.output) out.emplace(*r.output, len);
        }
    }
    return out;
}

}  // namespace

TEST_SUITE("kolmo") {

TEST_CASE("interpreter golden runs") {
    const auto oracle = FinitePrefixSet::from_members(8, {0, 2});

    const auto empty = run_program(Bitstring(), oracle, 5, 5);
    REQUIRE(empty.halted());
    CHECK(empty.output->empty());
    CHECK(empty.steps == 0);

    const auto lit = literal_program(Bitstring::parse("10"));
    CHECK(lit == ops({E1, E0, H}));
    CHECK(lit.size() == 9);
    const auto r = run_program(lit, oracle, 3, 0);
    REQUIRE(r.halted());
    CHECK(r.output->to_string() == "10");
    CHECK(r.steps == 3);
    CHECK_FALSE(run_program(lit, oracle, 2, 0).halted());

    CHECK_FALSE(run_program(Bitstring::parse("10"), oracle, 9, 9).halted());  // partial opcode
    CHECK_FALSE(run_program(ops({E1}), oracle, 9, 9).halted());              // runs off the end
    CHECK_FALSE(run_program(ops({R, H}), oracle, 9, 9).halted());

    // branch on the oracle bit at the pointer
    const auto branch = ops({Q, 0, 2, E1, H, E0, H});
    CHECK(run_program(branch, oracle, 9, 9).output->to_string() == "1");
    CHECK(run_program(branch, FinitePrefixSet(8), 9, 9).output->to_string() == "0");
    const auto moved = ops({I, Q, 0, 2, E1, H, E0, H});
    const auto mr = run_program(moved, oracle, 9, 9);
    CHECK(mr.output->to_string() == "0");
    CHECK(mr.queried == std::vector<std::uint64_t>{1});
    CHECK(mr.queries == 1);
    CHECK_FALSE(run_program(moved, oracle, 9, 0).halted());  // query at 1 > max_query 0
    CHECK(run_program(moved, oracle, 9, 1).halted());
    CHECK_FALSE(run_program(ops({Q, 0}), oracle, 9, 9).halted());  // missing offset field

    // loops stop at the step budget; jumps before slot 0 diverge
    const auto loop = ops({I, J, 1});
    const auto lr = run_program(loop, oracle, 7, 9);
    CHECK_FALSE(lr.halted());
    CHECK(lr.steps == 7);
    CHECK_FALSE(run_program(ops({N, J, 3}), oracle, 9, 9).halted());
    CHECK(run_program(ops({N, E1, H}), oracle, 3, 0).output->to_string() == "1");

    // print 1 per member until the first gap: Q a=0 b=4 | E1 | I | J 5 | H
    const auto scan = ops({Q, 0, 4, E1, I, J, 5, H});
    const auto three = FinitePrefixSet::from_members(8, {0, 1, 2, 5});
    const auto sr = run_program(scan, three, 40, 7);
    REQUIRE(sr.halted());
    CHECK(sr.output->to_string() == "111");
    CHECK(sr.queried == std::vector<std::uint64_t>{0, 1, 2, 3});
    CHECK(sr.steps == 14);
}

TEST_CASE("larger budgets never stop a halting run") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 3000; ++t) {
        const auto len = static_cast<std::uint32_t>(rng() % 40);
        const auto prog = program_from_code(rng() & ((std::uint64_t{1} << len) - 1), len);
        const auto oracle = test::random_set(rng, 16);
        const std::uint64_t steps = rng() % 20, query = rng() % 16;
        const auto a = run_program(prog, oracle, steps, query);
        const auto b = run_program(prog, oracle, steps + rng() % 10, query + rng() % 10);
        if (a.halted()) {
            REQUIRE(b.halted());
            CHECK(*a.output == *b.output);
            CHECK(a.steps == b.steps);
        }
        CHECK(run_program(prog, oracle, steps, query).output == a.output);
    }
}

TEST_CASE("C^s examples") {
    const Bitstring zero = Bitstring::parse("0");
    CHECK(c_finite(FinitePrefixSet::from_members(4, {3}), Bitstring()) == 0u);
    CHECK_FALSE(c_finite(FinitePrefixSet(10), zero).has_value());                       // s = ∅
    CHECK_FALSE(c_finite(FinitePrefixSet::from_members(6, {5}), zero).has_value());     // shortest is 6 bits
    CHECK(c_finite(FinitePrefixSet::from_members(7, {6}), zero) == 6u);
    CHECK_FALSE(c_finite(FinitePrefixSet::from_members(7, {1}), zero).has_value());     // 2 steps > max(s)
    CHECK_ERROR_KIND(c_finite(FinitePrefixSet::from_members(18, {17}), zero), ErrorKind::budget);

    for (std::uint64_t m : {6, 9, 12, 15, 16}) {
        const auto s = FinitePrefixSet::from_members(m + 1, {m});
        for (std::uint64_t idx = 0; idx < 31; ++idx) {
            const auto sigma = string_at(idx);
            if (3 * sigma.size() + 3 <= m) CHECK(c_finite(s, sigma).value() <= 3 * sigma.size() + 3);
        }
    }
}

TEST_CASE("C^s against brute-force enumeration") {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 12; ++t) {
        const std::uint64_t m = 3 + rng() % 9;
        auto s = test::random_set(rng, m + 1);
        s.set(m);
        const auto brute = brute_table(s, m + 1);
        CHECK(complexity_table(s, m + 1, Exec::serial) == brute);
        CHECK(complexity_table(s, m + 1, Exec::parallel) == brute);
        for (std::uint64_t idx = 0; idx < 15; ++idx) {
            const auto sigma = string_at(idx);
            const auto it = brute.find(sigma);
            const Complexity expected = it == brute.end() ? Complexity() : Complexity(it->second);
            CHECK(c_finite(s, sigma, Exec::serial) == expected);
            CHECK(c_finite(s, sigma, Exec::parallel) == expected);
        }
        for (std::uint32_t k = 0; k <= m + 1; ++k) {
            const auto low = low_complexity_strings(s, k);
            const auto want = static_cast<std::size_t>(
                std::count_if(brute.begin(), brute.end(), [&](const auto& e) { return e.second < k; }));
            CHECK(low.size() == want);
            CHECK(low.size() < (std::size_t{1} << std::min<std::uint32_t>(k, 62)));
            CHECK(std::is_sorted(low.begin(), low.end()));
        }
    }
}

TEST_CASE("counting bound sweep") {
    const auto a = counting_bound_sweep(8, 6, Exec::serial);
    CHECK(a.oracles == 511);
    CHECK(a.checks == 511 * 7);
    CHECK(a.violations == 0);
    CHECK(a == counting_bound_sweep(8, 6, Exec::parallel));
    CHECK(a.max_count[0] == 0);
    CHECK(a.max_count[1] == 1);  // the empty program
    const auto wide = counting_bound_sweep(10, 7, Exec::parallel);
    CHECK(wide.violations == 0);
    CHECK(wide.max_count[7] == 3);  // ε, "0" and "1"
    CHECK_ERROR_KIND(counting_bound_sweep(17, 3), ErrorKind::budget);
    CHECK_ERROR_KIND(counting_bound_sweep(5, 8), ErrorKind::parameter);
}

TEST_CASE("family complexity") {
    const auto sigma = Bitstring::parse("1");
    const auto s = FinitePrefixSet::from_members(10, {9});
    CHECK(c_family(sigma, std::vector<FinitePrefixSet>{s}) == c_finite(s, sigma));
    CHECK_FALSE(c_family(sigma, std::vector<FinitePrefixSet>{s, FinitePrefixSet::from_members(3, {2})}).has_value());
    CHECK_ERROR_KIND(c_family(sigma, std::vector<FinitePrefixSet>{}), ErrorKind::parameter);

    // every 2-element subset of a residue-coded window
    const auto a = residue_encode(Bitstring::parse("1"), 0, Rational(1, 2), 17);
    const auto members = a.members();
    std::vector<FinitePrefixSet> pairs;
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            pairs.push_back(FinitePrefixSet::from_members(17, {members[i], members[j]}));
        }
    }
    std::vector<FinitePrefixSet> wide;
    std::copy_if(pairs.begin(), pairs.end(), std::back_inserter(wide),
                 [](const FinitePrefixSet& p) { return *p.max_member() >= 6; });
    Complexity worst = 0;
    for (const auto& p : wide) {
        const auto c = c_finite(p, sigma);
        REQUIRE(c.has_value());
        CHECK(*c <= 6);  // the literal program fits every member
        worst = std::max(*worst, *c);
    }
    CHECK(c_family(sigma, wide) == worst);
    CHECK_FALSE(c_family(sigma, pairs).has_value());  // {1, 3} is too small for any program
}

TEST_CASE("k-safe checks") {
    const std::uint64_t n = 8;
    const std::vector<FinitePrefixSet> halves{FinitePrefixSet::from_members(n, {0, 1, 2, 3}),
                                              FinitePrefixSet::from_members(n, {4, 5, 6, 7})};
    KSafeInstance empty{{}, halves, n, 1, 2};
    CHECK(k_safe_check(empty).safe);

    KSafeInstance big{{}, halves, n, 1, 1};
    for (std::uint64_t idx = 10; idx < 13; ++idx) big.family.push_back(string_at(idx));
    const auto v = k_safe_check(big);
    CHECK_FALSE(v.safe);
    REQUIRE(v.oracle.has_value());
    CHECK(v.pieces == std::vector<std::size_t>{0});
    CHECK(v.low_complexity > 2);
    CHECK(v.oracle->size() >= 1);

    KSafeInstance vacuous = big;
    vacuous.m = 5;  // no piece has 5 elements
    CHECK(k_safe_check(vacuous).safe);

    KSafeInstance two = big;
    two.family.pop_back();  // |F| = 2 = 2^1, nothing else is below complexity 1 except ε
    two.family = {string_at(0), string_at(3)};
    CHECK(k_safe_check(two).safe);

    KSafeInstance overlap = empty;
    overlap.pieces = {FinitePrefixSet::from_members(n, {0, 1, 2, 3, 4}), halves[1]};
    CHECK_ERROR_KIND(k_safe_check(overlap), ErrorKind::invalid_partition);
    KSafeInstance gap = empty;
    gap.pieces = {halves[0]};
    CHECK_ERROR_KIND(k_safe_check(gap), ErrorKind::invalid_partition);
    KSafeInstance dup = big;
    dup.family = {string_at(3), string_at(3)};
    CHECK_ERROR_KIND(k_safe_check(dup), ErrorKind::parameter);
    CHECK_ERROR_KIND(k_safe_check(empty, 10), ErrorKind::budget);
    KSafeInstance wide{{}, {FinitePrefixSet::full(18)}, 18, 1, 1};
    CHECK_ERROR_KIND(k_safe_check(wide), ErrorKind::budget);
}

TEST_CASE("k-safe checks at density") {
    const std::uint64_t n = 8;
    const auto evens = FinitePrefixSet::from_predicate(n, [](std::uint64_t x) { return x % 2 == 0; });
    const auto odds_and_zero = FinitePrefixSet::from_predicate(n, [](std::uint64_t x) { return x % 2 == 1 || x == 0; });
    const auto full = FinitePrefixSet::full(n);

    // one piece: same verdict as the partition check on that piece
    for (std::uint32_t k = 0; k <= 2; ++k) {
        for (std::uint64_t idx : {0, 3, 9}) {
            KSafeInstance one{{string_at(idx)}, {full}, n, 1, k};
            CHECK(k_safe_density_check(one, Rational(1, 2)).safe == k_safe_check(one).safe);
        }
    }

    // more than 2^k/δ strings on pieces sharing a large intersection
    KSafeInstance crowd{{string_at(3), string_at(4), string_at(5)}, {full, full, full}, n, 1, 0};
    CHECK_FALSE(k_safe_density_check(crowd, Rational(1, 2)).safe);

    // {0} = evens ∩ odds_and_zero is too small once m = 2
    KSafeInstance split{{string_at(3), string_at(4)}, {evens, odds_and_zero}, n, 2, 0};
    CHECK(k_safe_density_check(split, Rational(1, 2)).safe);
    split.m = 1;
    const auto v = k_safe_density_check(split, Rational(1, 2));
    CHECK_FALSE(v.safe);
    CHECK(v.pieces == std::vector<std::size_t>{0, 1});
    CHECK(v.oracle->members() == std::vector<std::uint64_t>{0});

    KSafeInstance sparse{{string_at(3)}, {FinitePrefixSet::from_members(n, {0, 7})}, n, 1, 0};
    CHECK_ERROR_KIND(k_safe_density_check(sparse, Rational(1, 2)), ErrorKind::precondition);
    KSafeInstance mismatched{{string_at(3)}, {full, full}, n, 1, 0};
    CHECK_ERROR_KIND(k_safe_density_check(mismatched, Rational(1, 2)), ErrorKind::parameter);
}

}  // TEST_SUITE
