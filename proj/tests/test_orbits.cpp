#include "oracles.hpp"

#include "perigee/error.hpp"
#include "perigee/orbits.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace perigee;

namespace {

CountSequence fixed(std::vector<long> values) {
    CountSequence s{SequenceKind::fixed, {}};
    for (long v : values) s.values.emplace_back(v);
    return s;
}

CountSequence least(std::vector<long> values) {
    CountSequence s = fixed(std::move(values));
    s.kind = SequenceKind::least;
    return s;
}

CountSequence mersenne(std::size_t n_max) {
    CountSequence s{SequenceKind::fixed, {}};
    for (std::size_t n = 1; n <= n_max; ++n) {
        mpz_class v;
        mpz_ui_pow_ui(v.get_mpz_t(), 2, n);
        s.values.push_back(v - 1);
    }
    return s;
}

CountSequence random_sequence(std::mt19937_64& rng, SequenceKind kind, std::size_t n) {
    CountSequence s{kind, {}};
    for (std::size_t i = 0; i < n; ++i) s.values.emplace_back(static_cast<unsigned long>(rng() % (1ull << 32)));
    return s;
}

}  // namespace

TEST_CASE("fixed_from_least examples") {
    CHECK(fixed_from_least(least({1, 2})) == fixed({1, 3}));
    CHECK(fixed_from_least(least({1, 2, 6, 12}))[4] == 15);
    CHECK(fixed_from_least(least({0, 0, 0})) == fixed({0, 0, 0}));
    CHECK_THROWS_AS(fixed_from_least(fixed({1})), DomainError);
}

TEST_CASE("least_from_fixed examples") {
    CHECK(least_from_fixed(fixed({1, 3, 7, 15})) == least({1, 2, 6, 12}));
    CHECK(least_from_fixed(fixed({1, 1, 1, 1})) == least({1, 0, 0, 0}));
    CHECK(least_from_fixed(fixed({1, 1, 4, 5, 11})) == least({1, 0, 3, 4, 10}));
    // negative values are kept
    CHECK(least_from_fixed(fixed({3, 1}))[2] == -2);
}

TEST_CASE("least_from_fixed agrees with the subtraction oracle") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const CountSequence f = random_sequence(rng, SequenceKind::fixed, 120);
        REQUIRE(least_from_fixed(f).values == oracle::least_by_subtraction(f.values));
    }
}

TEST_CASE("Möbius round trips on random sequences") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        const CountSequence l = random_sequence(rng, SequenceKind::least, 64);
        REQUIRE(least_from_fixed(fixed_from_least(l)) == l);
        const CountSequence f = random_sequence(rng, SequenceKind::fixed, 64);
        REQUIRE(fixed_from_least(least_from_fixed(f)) == f);
    }
}

TEST_CASE("realizability") {
    const auto m = realizability_check(mersenne(64));
    CHECK(m.realizable);
    CHECK_FALSE(m.first_failure);
    const auto bad = realizability_check(fixed({1, 2}));
    CHECK_FALSE(bad.realizable);
    CHECK(bad.first_failure == 2u);
    CHECK(bad.entries[1].nonnegative);
    CHECK_FALSE(bad.entries[1].divisible);
    CHECK(realizability_check(fixed({1, 1, 1})).realizable);
    const auto negative = realizability_check(fixed({3, 1}));
    CHECK_FALSE(negative.entries[1].nonnegative);
}

TEST_CASE("growth diagnostics") {
    const auto g = growth_diagnostics(mersenne(200), GrowthTarget::finite(mpq_class(6931, 10000)), 10);
    REQUIRE(g.per_n.size() == 200);
    CHECK(std::abs(g.per_n.back().rate.to_double() - std::log(2.0)) < 1e-2);
    CHECK(g.window_inf <= g.window_sup);
    CHECK(g.window_len == 10);
    REQUIRE(g.final_distance);
    CHECK(g.final_distance->to_double() == doctest::Approx(std::abs(std::log(2.0) - 0.6931)).epsilon(1e-6));

    for (unsigned c = 2; c <= 7; ++c) {
        CountSequence power{SequenceKind::fixed, {}};
        for (std::size_t n = 1; n <= 80; ++n) {
            mpz_class v;
            mpz_ui_pow_ui(v.get_mpz_t(), c, n);
            power.values.push_back(v);
        }
        const auto d = growth_diagnostics(power, GrowthTarget::infinite(), 5);
        for (const auto& e : d.per_n) {
            const Real expected = Real::log(mpz_class(c), 128);
            REQUIRE(Real::abs(e.rate - expected).to_double() <= std::log(2.0) / static_cast<double>(e.n));
            // rate * n reproduces log_count
            REQUIRE(Real::abs(e.rate * Real(mpz_class(static_cast<unsigned long>(e.n)), 128) - e.log_count)
                        .to_double() < 1e-30);
        }
        CHECK_FALSE(d.final_distance);
    }

    const auto constant = growth_diagnostics(fixed(std::vector<long>(100, 5)), GrowthTarget::zero(), 10);
    CHECK(constant.window_sup.to_double() < 0.02);
    REQUIRE(constant.final_distance);

    const auto zeros = growth_diagnostics(fixed({0, 2, 0, 4}), GrowthTarget::zero(), 2);
    CHECK(zeros.skipped == std::vector<std::uint64_t>{1, 3});
    CHECK_THROWS_AS(growth_diagnostics(fixed({0, 0}), GrowthTarget::zero(), 2), DomainError);
    CHECK_THROWS_AS(growth_diagnostics(fixed({1}), GrowthTarget::zero(), 0), DomainError);
}

TEST_CASE("sandwich inequalities") {
    const auto f = mersenne(64);
    const auto report = lemma_sandwich_check(f, least_from_fixed(f));
    CHECK(report.holds);
    CHECK(report.violations.empty());
    CHECK(report.rates_agree);

    const auto ones = lemma_sandwich_check(fixed({1, 1, 1}), least({1, 0, 0}));
    CHECK(ones.holds);
    CHECK(ones.entries[1].proper_divisor_sum == 1);

    // F from the log-2 construction at r = 6: 2040 <= 2058, 2040 >= 2058 - 22
    const auto plan_like = fixed({2, 6, 14, 30, 22, 2058});
    const auto pl = lemma_sandwich_check(plan_like, least_from_fixed(plan_like));
    CHECK(pl.entries[5].proper_divisor_sum == 22);
    CHECK(pl.entries[5].upper_holds);
    CHECK(pl.entries[5].lower_holds);

    // L_2 = 1 > F_2 = 0 once F_1 is negative
    const auto bad = fixed({-1, 0});
    const auto br = lemma_sandwich_check(bad, least_from_fixed(bad));
    CHECK_FALSE(br.holds);
    CHECK(br.violations == std::vector<std::uint64_t>{2});

    CHECK_THROWS_AS(lemma_sandwich_check(f, least({1})), DomainError);
}

TEST_CASE("sandwich holds for every nonnegative L") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        CountSequence l = random_sequence(rng, SequenceKind::least, 48);
        if (trial % 3 == 0) {
            for (auto& v : l.values) v %= 3;  // many zeros
        }
        const CountSequence f = fixed_from_least(l);
        REQUIRE(lemma_sandwich_check(f, l, 10, 64).holds);
    }
}
