#include "subsetcodec/density.hpp"
#include "subsetcodec/pa_diag.hpp"
#include "subsetcodec/sampling.hpp"
#include "subsetcodec/string_index.hpp"
#include "support.hpp"

using namespace subsetcodec;

namespace {

std::uint32_t valuation_plus_one(std::uint64_t x) {
    std::uint32_t v = 0;
    for (std::uint64_t y = x + 1; y % 2 == 0; y /= 2) ++v;
    return v;
}

// Membership straight from the rule: every converging i that has not yet
// converged by stage |σ| and has x_i < |σ| pins σ(x_i) to f(x_i).
bool member_oracle(const PaConstruction& pc, const SteppedMachineTable& table, const Bitstring& sigma) {
    for (std::size_t i = 0; i < pc.stages.size(); ++i) {
        const auto c = table.converges(i, pc.xs[i]);
        if (!c) continue;
        const bool not_yet = c->stage > sigma.size();
        if (not_yet && pc.xs[i] < sigma.size() && sigma[pc.xs[i]] != !c->output) return false;
    }
    return true;
}

SteppedMachineTable single_entry(bool output, std::uint64_t stage) {
    SteppedMachineTable t(100);
    t.add({0, 0, output, stage});
    return t;
}

}  // namespace

TEST_SUITE("pa_diag") {

TEST_CASE("fibers of the 2-adic valuation map") {
    for (std::uint64_t x = 0; x < 5000; ++x) CHECK(fiber_of(x) == valuation_plus_one(x));
    for (std::uint32_t v = 0; v < 6; ++v) {
        for (std::uint64_t t = 1; t < 6; ++t) {
            std::uint64_t count = 0;
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << (v + 1)) * t; ++x) count += fiber_of(x) == v;
            CHECK(count == t);
        }
        for (std::uint64_t after = 0; after < 300; after += 7) {
            std::uint64_t x = after + 1;
            while (valuation_plus_one(x) != v) ++x;
            CHECK(next_in_fiber(after, v) == x);
        }
    }
}

TEST_CASE("machine tables") {
    SteppedMachineTable t(10);
    t.add({0, 4, true, 7});
    CHECK(t.converges(0, 4)->stage == 7);
    CHECK_FALSE(t.converges(0, 5).has_value());
    CHECK_FALSE(t.run(0, 4, 6).has_value());
    CHECK(t.run(0, 4, 7) == true);
    CHECK_ERROR_KIND(t.add({0, 4, false, 3}), ErrorKind::parameter);
    CHECK_ERROR_KIND(t.add({1, 0, false, 11}), ErrorKind::parameter);

    const auto fixed = fixed_pa_table();
    const auto back = SteppedMachineTable::from_json(fixed.to_json());
    CHECK(back.to_json() == fixed.to_json());
    CHECK(back.size() == fixed.size());
    CHECK_ERROR_KIND(SteppedMachineTable::from_json("{\"entries\":[]}"), ErrorKind::format);
    CHECK_ERROR_KIND(SteppedMachineTable::from_json("{"), ErrorKind::format);
    CHECK_ERROR_KIND(
        SteppedMachineTable::from_json(R"({"budget":3,"entries":[{"machine":0,"input":0,"output":1,"stage":9}]})"),
        ErrorKind::parameter);
}

TEST_CASE("diagonal points") {
    const auto conv = pa_construct(single_entry(true, 5), 2, 64);
    CHECK(conv.xs == std::vector<std::uint64_t>{0, 9});
    CHECK(conv.f(0) == false);
    CHECK(conv.stages[0] == 5u);

    const auto div = pa_construct(SteppedMachineTable(100), 2, 64);
    CHECK(div.xs == std::vector<std::uint64_t>{0, 1});
    CHECK_FALSE(div.f(0).has_value());

    const auto fixed = pa_construct(fixed_pa_table(), 8, 4096);
    CHECK(fixed.xs == std::vector<std::uint64_t>{0, 5, 11, 23, 47, 95, 191, 383});
    for (std::size_t i = 0; i < fixed.xs.size(); ++i) CHECK(fiber_of(fixed.xs[i]) == i);
    CHECK(fixed.max_blocking_per_length <= 1);
    CHECK_ERROR_KIND(pa_construct(fixed_pa_table(), 8, 200), ErrorKind::horizon);
}

TEST_CASE("membership agrees with the rule") {
    const auto empty = pa_construct(SteppedMachineTable(10), 0, 500);
    CHECK(empty.a == FinitePrefixSet::full(500));

    const auto table = single_entry(true, 5);
    const auto pc = pa_construct(table, 1, 200);
    for (std::uint64_t idx = 0; idx < 200; ++idx) {
        const auto s = string_at(idx);
        // f(0) = 0 pins bit 0 for lengths 1..4 only
        const bool excluded = s.size() >= 1 && s.size() < 5 && s[0];
        CHECK(pc.a.test(idx) == !excluded);
    }

    const auto fixed_table = fixed_pa_table();
    const auto fixed = pa_construct(fixed_table, 8, 4096);
    for (std::uint64_t idx = 0; idx < 4096; ++idx) {
        const auto s = string_at(idx);
        CHECK(fixed.a.test(idx) == member_oracle(fixed, fixed_table, s));
        CHECK(pa_member(fixed, fixed_table, s) == fixed.a.test(idx));
    }
    for (std::uint64_t n = 3; n < 4096; ++n) CHECK(density_at(fixed.a, n) >= Rational(1, 4));
}

TEST_CASE("decoding completions") {
    const auto table = fixed_pa_table();
    const auto pc = pa_construct(table, 8, 4096);
    // a single long string decodes the whole diagonal
    const auto longest = pc.a.max_member().value();
    const auto one = FinitePrefixSet::from_members(4096, {longest});
    const auto limit = pa_decodable_limit(one);
    CHECK(limit == string_length_at(longest));
    for (std::size_t i = 0; i < pc.xs.size(); ++i) {
        if (pc.xs[i] >= limit) continue;
        const auto c = table.converges(i, pc.xs[i]);
        if (c) CHECK(pa_decode(one, table, pc.xs[i]) == !c->output);
    }
    CHECK_ERROR_KIND(pa_decode(one, table, limit), ErrorKind::insufficient_sample);
    CHECK_ERROR_KIND(pa_decode(FinitePrefixSet::from_members(4096, {0, 1, 2}), table, 1), ErrorKind::insufficient_sample);

    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 30; ++trial) {
        const auto b = bernoulli_sample(pc.a, Rational(1, 3), rng());
        const auto lim = pa_decodable_limit(b);
        for (const auto& [x, v] : pc.f.entries()) {
            if (x < lim) CHECK(pa_decode(b, table, x) == v);
        }
        for (std::uint64_t x = 0; x < lim; ++x) CHECK_NOTHROW(pa_decode(b, table, x));
    }

    const auto report = pa_verify(pc, table, 100, 0);
    CHECK(report.ok());
    CHECK(report.samples == 100);
    CHECK(report.min_density >= Rational(1, 4));
}

}  // TEST_SUITE
