#include <cmath>
#include <filesystem>
#include <fstream>

#include "subsetcodec/density.hpp"
#include "subsetcodec/rational.hpp"
#include "subsetcodec/set_io.hpp"
#include "support.hpp"

using namespace subsetcodec;

TEST_SUITE("density") {

TEST_CASE("rational parsing and exact comparisons") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(to_string(Rational(6, 4)) == "3/2");
    CHECK(to_string(Rational(2)) == "2");
    CHECK_ERROR_KIND(parse_rational("1/0"), ErrorKind::parameter);
    CHECK_ERROR_KIND(parse_rational("a/2"), ErrorKind::parameter);
    CHECK_ERROR_KIND(parse_rational(""), ErrorKind::parameter);

    CHECK(at_least_fraction_of(5, 10, Rational(1, 2)));
    CHECK_FALSE(at_least_fraction_of(4, 10, Rational(1, 2)));
    CHECK(equals_fraction_of(5, 10, Rational(1, 2)));
    CHECK_FALSE(equals_fraction_of(5, 11, Rational(1, 2)));
    CHECK(ceil_fraction_of(10, Rational(1, 3)) == 4);
    CHECK(ceil_fraction_of(9, Rational(1, 3)) == 3);
    CHECK(ceil_fraction_of(0, Rational(1, 3)) == 0);
    // large operands stay exact
    CHECK(at_least_fraction_of(UINT64_MAX / 2 + 1, UINT64_MAX, Rational(1, 2)));
}

TEST_CASE("prefix set basics across word boundaries") {
    auto a = FinitePrefixSet::from_members(130, {0, 63, 64, 127, 129});
    CHECK(a.size() == 5);
    CHECK(a.contains(64));
    CHECK_FALSE(a.contains(65));
    CHECK_ERROR_KIND(a.contains(130), ErrorKind::window);
    CHECK_FALSE(a.test(1000));
    CHECK(a.count_through(63) == 2);
    CHECK(a.count_through(129) == 5);
    CHECK(a.next_member(1) == 63u);
    CHECK(a.next_member(128) == 129u);
    CHECK_FALSE(a.next_member(130).has_value());
    CHECK(a.max_member() == 129u);
    CHECK(a.members() == test::members_of(a));
    CHECK(a.resized(64).members() == std::vector<std::uint64_t>{0, 63});
    CHECK(a.resized(200).size() == 5);
    CHECK(FinitePrefixSet::from_members(130, {0, 64}).is_subset_of(a));
    CHECK(FinitePrefixSet::from_members(130, {1, 65}).is_disjoint_from(a));
    CHECK(FinitePrefixSet::full(70).size() == 70);
    CHECK(FinitePrefixSet(10).empty());
    CHECK_ERROR_KIND(FinitePrefixSet::from_members(4, {4}), ErrorKind::window);
}

TEST_CASE("density_at examples") {
    const auto full = FinitePrefixSet::full(10);
    const auto empty = FinitePrefixSet(10);
    const auto evens = FinitePrefixSet::from_predicate(10, [](std::uint64_t n) { return n % 2 == 0; });
    CHECK(density_at(full, 9) == Rational(1));
    CHECK(density_at(empty, 9) == Rational(0));
    CHECK(density_at(evens, 9) == Rational(1, 2));
    CHECK_ERROR_KIND(density_at(evens, 10), ErrorKind::window);
}

TEST_CASE("delta-density along a set of points") {
    std::mt19937_64 rng(1);
    const auto evens = FinitePrefixSet::from_predicate(10, [](std::uint64_t n) { return n % 2 == 0; });
    const auto odd_points = FinitePrefixSet::from_members(10, {1, 3, 5, 7, 9});
    for (int t = 0; t < 20; ++t) {
        const auto a = test::random_set(rng, 10);
        CHECK(is_delta_dense_along(a, Rational(0), test::random_set(rng, 10)));
    }
    CHECK(is_delta_dense_along(evens, Rational(1, 2), odd_points));
    CHECK(is_delta_dense_along(evens, Rational(1, 2), FinitePrefixSet::from_members(10, {2})));
    CHECK_FALSE(is_delta_dense_along(evens, Rational(3, 5), odd_points));
    CHECK(is_delta_dense(evens, Rational(1, 2)));
    CHECK_ERROR_KIND(is_delta_dense_along(evens, Rational(1, 2), FinitePrefixSet(11)), ErrorKind::window);
}

TEST_CASE("density_at agrees with a naive count on random sets") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 50; ++t) {
        const auto a = test::random_set(rng, 1 + rng() % 200, 1 + rng() % 4);
        for (std::uint64_t n = 0; n < a.horizon(); ++n) {
            const Rational d = density_at(a, n);
            // density·(n+1) is the integer count
            CHECK((d * static_cast<std::int64_t>(n + 1)).denominator() == 1);
            CHECK(d == Rational(static_cast<std::int64_t>(test::naive_count(a, n)), static_cast<std::int64_t>(n + 1)));
            CHECK(is_dense_at(a, d, n));
        }
    }
}

TEST_CASE("density profiles") {
    const auto p = density_profile(FinitePrefixSet::from_members(3, {0}));
    REQUIRE(p.horizon() == 3);
    CHECK(p.value(0) == Rational(1));
    CHECK(p.value(1) == Rational(1, 2));
    CHECK(p.value(2) == Rational(1, 3));
    const auto e = density_profile(FinitePrefixSet(2));
    CHECK(e.value(0) == Rational(0));
    CHECK(e.value(1) == Rational(0));
    const auto f = density_profile(FinitePrefixSet::full(2));
    CHECK(f.value(0) == Rational(1));
    CHECK(f.value(1) == Rational(1));

    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        const auto a = test::random_set(rng, 1 + rng() % 300, 1 + rng() % 5);
        const auto prof = density_profile(a);
        CHECK(prof.satisfies_recurrence(a));
        for (std::uint64_t n = 0; n + 1 < a.horizon(); ++n) {
            const auto step = prof.count(n + 1) - prof.count(n);
            CHECK((step == 0 || step == 1));
            CHECK(prof.value(n) == density_at(a, n));
        }
        // a profile belonging to another set breaks the recurrence
        auto b = a;
        b.set(0, !a.test(0));
        CHECK_FALSE(prof.satisfies_recurrence(b));
    }
}

TEST_CASE("f-density") {
    const auto half = LowerBound::constant(Rational(1, 2));
    CHECK(is_f_dense(FinitePrefixSet::full(50), LowerBound::constant(Rational(1))));
    CHECK(is_f_dense(FinitePrefixSet::from_predicate(100, [](std::uint64_t n) { return n % 2 == 0; }), half));
    const auto single = FinitePrefixSet::from_members(4, {0});
    CHECK_FALSE(is_f_dense(single, half));
    CHECK(first_f_violation(single, half) == 2u);  // 1/3 < 1/2 first at n = 2
    CHECK(first_f_violation(FinitePrefixSet::full(4), half) == std::nullopt);

    const auto sampled = LowerBound::sampled({Rational(1), Rational(1, 2), Rational(1, 3), Rational(1, 4)});
    CHECK(is_f_dense(single, sampled));
    CHECK_ERROR_KIND(is_f_dense(FinitePrefixSet::full(5), sampled), ErrorKind::window);
    CHECK_ERROR_KIND(LowerBound::constant(Rational(3, 2)), ErrorKind::parameter);
}

TEST_CASE("inverse square root bound matches an integer oracle") {
    const auto f = LowerBound::inverse_sqrt();
    for (std::uint64_t n = 0; n < 3000; n += 7) {
        std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n + 1)));
        while (root * root > n + 1) --root;
        while ((root + 1) * (root + 1) <= n + 1) ++root;
        const std::uint64_t ceil_root = root * root == n + 1 ? root : root + 1;
        // count/(n+1) >= 1/sqrt(n+1)  <=>  count >= sqrt(n+1)
        CHECK(f.satisfied_by(ceil_root, n));
        CHECK_FALSE(f.satisfied_by(ceil_root - 1, n));
        // 1/sqrt(n+1) <= 1/root'  <=>  root' <= sqrt(n+1)
        CHECK(f.at_most(n, Rational(1, static_cast<std::int64_t>(root))));
        if (root * root != n + 1) {
            CHECK_FALSE(f.at_most(n, Rational(1, static_cast<std::int64_t>(root + 1))));
        }
    }
    CHECK(LowerBound::parse("inv_sqrt").describe() == "inv_sqrt");
    CHECK(LowerBound::parse("const:1/3").describe() == "const:1/3");
    CHECK_ERROR_KIND(LowerBound::parse("sqrt"), ErrorKind::parameter);
}

TEST_CASE("SUBSET01 layout") {
    const auto a = FinitePrefixSet::from_members(10, {0, 3, 9});
    const auto bytes = serialize_set(a);
    const std::vector<std::uint8_t> expected{'S', 'U', 'B', 'S', 'E', 'T', '0', '1', 10, 0, 0, 0, 0, 0, 0, 0, 0x09, 0x02};
    CHECK(bytes == expected);
    CHECK(deserialize_set(bytes) == a);

    auto bad = bytes;
    bad[0] = 'X';
    CHECK_ERROR_KIND(deserialize_set(bad), ErrorKind::format);
    auto short_payload = bytes;
    short_payload.pop_back();
    CHECK_ERROR_KIND(deserialize_set(short_payload), ErrorKind::format);
    auto stray = bytes;
    stray.back() |= 0x80;  // bit 15 beyond horizon 10
    CHECK_ERROR_KIND(deserialize_set(stray), ErrorKind::format);

    std::mt19937_64 rng(4);
    for (int t = 0; t < 30; ++t) {
        const auto s = test::random_set(rng, rng() % 500);
        CHECK(deserialize_set(serialize_set(s)) == s);
    }
}

TEST_CASE("set and profile files") {
    const auto dir = std::filesystem::temp_directory_path() / "subsetcodec_density_test";
    std::filesystem::create_directories(dir);
    const auto a = FinitePrefixSet::from_members(3, {0});
    write_set(dir / "a.set", a);
    CHECK(read_set(dir / "a.set") == a);
    CHECK_FALSE(std::filesystem::exists(dir / "a.set.tmp"));

    CHECK(profile_csv(density_profile(a)) == "n,count,density_num,density_den\n0,1,1,1\n1,1,1,2\n2,1,1,3\n");
    CHECK(profile_csv(density_profile(FinitePrefixSet(2))) == "n,count,density_num,density_den\n0,0,0,1\n1,0,0,1\n");
    write_profile_csv(dir / "p.csv", density_profile(a));
    std::ifstream in(dir / "p.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "n,count,density_num,density_den");

    CHECK_ERROR_KIND(read_set(dir / "missing.set"), ErrorKind::io);
    CHECK_ERROR_KIND(write_set(dir / "no" / "such" / "dir.set", a), ErrorKind::io);
    try {
        read_set(dir / "missing.set");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("missing.set") != std::string::npos);
    }
    std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
