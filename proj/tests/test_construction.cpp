#include "oracles.hpp"

#include "perigee/construction.hpp"
#include "perigee/error.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace perigee;

namespace {

std::vector<std::uint64_t> exponents(const ConstructionPlan& plan) {
    std::vector<std::uint64_t> out;
    for (const auto& c : plan.components) out.push_back(c.K);
    return out;
}

std::vector<long> primes(const ConstructionPlan& plan) {
    std::vector<long> out;
    for (const auto& c : plan.components) out.push_back(c.p.get_si());
    return out;
}

std::vector<oracle::Block> blocks(const ConstructionPlan& plan, std::uint64_t m) {
    std::vector<oracle::Block> out;
    for (std::uint64_t i = 1; i <= m; ++i) {
        const auto& c = plan.component(i);
        out.push_back({c.p.get_ui(), c.K, c.multiplier.get_ui()});
    }
    return out;
}

const GrowthTarget kBelowLog2 = GrowthTarget::finite(mpq_class(6931, 10000));
const GrowthTarget kAboveLog2 = GrowthTarget::finite(mpq_class(6932, 10000));

}  // namespace

TEST_CASE("paper strategy at C = 6931/10000, just below log 2") {
    const auto plan = build_plan(kBelowLog2, Strategy::paper(), 6);
    CHECK(primes(plan) == std::vector<long>{2, 3, 7, 5, 11, 7});
    // 6931/10000 / log 2 = 0.99993..., so the first component is trivial
    CHECK(exponents(plan) == std::vector<std::uint64_t>{0, 1, 1, 1, 1, 2});
    CHECK(fixed_count(plan, 6).to_string() == "3^1*7^3");
    CHECK(fixed_count(plan, 6).value() == 1029);
    CHECK(least_count_exact(plan, 6) == 1020);
    CHECK(least_count_claimed(plan, 6) == 48);
    CHECK_FALSE(validate_plan(plan));
}

TEST_CASE("paper strategy at C = 6932/10000") {
    const auto plan = build_plan(kAboveLog2, Strategy::paper(), 6);
    CHECK(primes(plan) == std::vector<long>{2, 3, 7, 5, 11, 7});
    CHECK(exponents(plan) == std::vector<std::uint64_t>{1, 1, 1, 1, 1, 2});
    std::vector<long> gs;
    std::vector<long> multipliers;
    for (const auto& c : plan.components) {
        gs.push_back(c.g.get_si());
        multipliers.push_back(c.multiplier.get_si());
    }
    CHECK(gs == std::vector<long>{1, 2, 3, 2, 2, 3});
    CHECK(multipliers == std::vector<long>{1, 2, 2, 2, 4, 3});
    CHECK(fixed_count(plan, 6).value() == 2058);
    CHECK(fixed_count(plan, 6).to_string() == "2^1*3^1*7^3");
    CHECK(fixed_count(plan, 5).value() == 22);
    CHECK(least_count_exact(plan, 2) == 4);
    CHECK(least_count_exact(plan, 6) == 2040);
    CHECK(least_count_claimed(plan, 6) == 48);
    CHECK(least_count_claimed(plan, 2) == 2);
    CHECK(fixed_count(plan, 6).log(128).to_double() / 6 == doctest::Approx(1.2716).epsilon(1e-4));
}

TEST_CASE("compensated strategy") {
    const auto above = build_plan(kAboveLog2, Strategy::compensated(), 6);
    CHECK(primes(above) == std::vector<long>{2, 3, 7, 5, 11, 7});
    CHECK(exponents(above) == std::vector<std::uint64_t>{1, 0, 0, 1, 1, 1});
    const auto below = build_plan(kBelowLog2, Strategy::compensated(), 6);
    CHECK(exponents(below) == std::vector<std::uint64_t>{0, 1, 1, 1, 1, 0});
    CHECK_FALSE(validate_plan(above));
}

TEST_CASE("zero and infinite targets") {
    for (const auto& strategy : {Strategy::paper(), Strategy::compensated(), Strategy::infinite()}) {
        const auto plan = build_plan(GrowthTarget::zero(), strategy, 5);
        for (std::uint64_t n = 1; n <= 5; ++n) {
            CHECK(plan.component(n).K == 0);
            CHECK(fixed_count(plan, n).is_one());
            CHECK(least_count_exact(plan, n) == (n == 1 ? 1 : 0));
            CHECK(least_count_claimed(plan, n) == 0);
        }
    }
    const auto inf = build_plan(GrowthTarget::infinite(), Strategy::infinite(), 6);
    CHECK(primes(inf)[0] == 2);
    CHECK(primes(inf)[1] == 5);
    CHECK(primes(inf)[2] == 31);
    for (std::uint64_t n = 1; n <= 6; ++n) {
        mpz_class nn;
        mpz_ui_pow_ui(nn.get_mpz_t(), n, n);
        CHECK(inf.component(n).p > nn);
        CHECK(inf.component(n).K == 1);
        CHECK(fixed_count(inf, n).log(128).to_double() / static_cast<double>(n) >= std::log(static_cast<double>(n)));
    }
    CHECK_FALSE(validate_plan(inf));
    CHECK_THROWS_AS(build_plan(kAboveLog2, Strategy::infinite(), 3), DomainError);
    CHECK_THROWS_AS(build_plan(GrowthTarget::infinite(), Strategy::paper(), 3), DomainError);
}

TEST_CASE("C = 1/2: claimed equals exact where proper divisors are trivial") {
    const auto plan = build_plan(GrowthTarget::finite(mpq_class(1, 2)), Strategy::paper(), 4);
    CHECK(exponents(plan) == std::vector<std::uint64_t>{0, 0, 0, 1});
    CHECK(least_count_claimed(plan, 4) == 4);
    CHECK(least_count_exact(plan, 4) == 4);
    const auto report = claimed_vs_exact_report(plan, 4);
    CHECK_FALSE(report.rows[3].differ);
    CHECK(report.rows[3].proper_divisors_trivial);
    CHECK(report.rows[3].characterization_holds == true);
    CHECK_FALSE(report.rows[0].characterization_holds);
}

TEST_CASE("subexponential strategy") {
    const auto plan = build_plan(GrowthTarget::finite(1), Strategy::subexponential(mpq_class(1, 2)), 60);
    for (std::uint64_t n = 1; n <= 60; ++n) {
        const auto k = static_cast<std::uint64_t>(std::floor(std::sqrt(static_cast<double>(n)) + 1e-12));
        REQUIRE(plan.component(n).K == k);
        REQUIRE(plan.component(n).p == least_prime_congruent_one(n).p);
        // log F_n >= floor(n^gamma) log(n + 1)
        const Real lhs = fixed_count(plan, n).log(128);
        const Real rhs = Real(mpz_class(static_cast<unsigned long>(k)), 128) *
                         Real::log(mpz_class(static_cast<unsigned long>(n + 1)), 128);
        REQUIRE(lhs >= rhs);
    }
    CHECK_FALSE(validate_plan(plan));
    CHECK_THROWS_AS(Strategy::subexponential(1), DomainError);
    CHECK_THROWS_AS(Strategy::subexponential(0), DomainError);
}

TEST_CASE("strategy text round trip") {
    for (const char* text : {"paper", "compensated", "infinite", "subexponential:1/2", "subexponential:3/7"}) {
        CHECK(Strategy::parse(text).to_string() == text);
    }
    CHECK(Strategy::parse("subexponential:0.25") == Strategy::subexponential(mpq_class(1, 4)));
    CHECK_THROWS(Strategy::parse("greedy"));
    CHECK_THROWS(Strategy::parse("subexponential:2"));
}

TEST_CASE("validate_plan catches tampering") {
    auto plan = build_plan(kAboveLog2, Strategy::paper(), 6);
    auto bad = plan;
    bad.components[5].multiplier = 2;  // order 3 mod 7, not 6
    CHECK(validate_plan(bad));
    bad = plan;
    bad.components[3].K = 3;
    CHECK(validate_plan(bad));
    bad = plan;
    bad.components[2].g = 2;  // not a primitive root mod 7
    CHECK(validate_plan(bad));
    bad = plan;
    bad.components[4].p = 23;  // 23 = 1 mod 11 is prime but not the least
    CHECK(validate_plan(bad));
}

TEST_CASE("fixed_count agrees with direct fixed-residue counting") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const mpq_class c(static_cast<long>(1 + rng() % 300), 100);
        const auto plan = build_plan(GrowthTarget::finite(c), Strategy::paper(), 12);
        const auto bs = blocks(plan, 12);
        for (std::uint64_t n = 1; n <= 12; ++n) {
            const mpz_class expected(std::to_string(oracle::count_fixed_points(bs, n)));
            if (fixed_count(plan, n).value() < mpz_class("1000000000000000000")) {
                REQUIRE(fixed_count(plan, n).value() == expected);
            }
        }
        const auto seq = fixed_sequence(plan, 12);
        for (std::uint64_t n = 1; n <= 12; ++n) REQUIRE(seq[n] == fixed_count(plan, n).value());
    }
}

TEST_CASE("enumeration oracle") {
    const auto plan = build_plan(kAboveLog2, Strategy::paper(), 6);
    const auto result = enumerate_oracle(plan, 6, 60);
    CHECK(result.group_order == 113190);
    for (std::uint64_t n = 1; n <= 60; ++n) {
        REQUIRE(result.fixed[n] == truncated_fixed_count(plan, 6, n));
        const mpz_class direct(std::to_string(oracle::count_fixed_points(blocks(plan, 6), n)));
        REQUIRE(result.fixed[n] == direct);
    }
    CHECK(least_from_fixed(result.fixed) == result.least);
    CHECK(result.fixed[6] == 2058);
    CHECK(result.least[6] == 2040);
    CHECK(result.fixed[2] == 6);
    CHECK(result.least[2] == 4);

    const auto below = build_plan(kBelowLog2, Strategy::paper(), 6);
    CHECK(enumerate_oracle(below, 6, 6).group_order == 56595);

    const auto zero = build_plan(GrowthTarget::zero(), Strategy::paper(), 4);
    const auto z = enumerate_oracle(zero, 4, 8);
    CHECK(z.group_order == 1);
    CHECK(z.least[1] == 1);
    for (std::uint64_t n = 1; n <= 8; ++n) CHECK(z.fixed[n] == 1);

    CHECK_THROWS_AS(enumerate_oracle(plan, 6, 12, 100000), BudgetExceeded);
    const auto big = build_plan(GrowthTarget::finite(2), Strategy::paper(), 10);
    CHECK_THROWS_AS(enumerate_oracle(big, 10, 10), BudgetExceeded);
}

TEST_CASE("claimed versus exact on random targets") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 12; ++trial) {
        const unsigned long den = 1 + rng() % 1000;
        const mpq_class c(static_cast<unsigned long>(1 + rng() % (3 * den)), den);
        const auto plan = build_plan(GrowthTarget::finite(c), Strategy::paper(), 120);
        const auto report = claimed_vs_exact_report(plan, 120);
        REQUIRE(report.all_lower_bounds);
        REQUIRE(report.all_divisible);
        for (const auto& row : report.rows) {
            REQUIRE(row.exact == least_count_exact(plan, row.n));
            REQUIRE(row.exact >= row.claimed);
            mpz_class product = 1;
            for (auto d : divisors(row.n)) {
                if (d == row.n) continue;
                mpz_class pk;
                mpz_pow_ui(pk.get_mpz_t(), plan.component(d).p.get_mpz_t(), plan.component(d).K);
                product *= pk;
            }
            REQUIRE(row.proper_divisors_trivial == (product == 1));
            if (row.n >= 2) REQUIRE(*row.characterization_holds == ((row.exact == row.claimed) == (product == 1)));
        }
    }
}

TEST_CASE("compensated envelope at C = 1") {
    const auto plan = build_plan(GrowthTarget::finite(1), Strategy::compensated(), 400);
    const auto envelope = compensated_envelope(plan);
    CHECK(envelope.unverified.empty());
    REQUIRE(envelope.rows.size() == 400);
    for (const auto& row : envelope.rows) {
        if (row.budget_sign < 0) continue;
        REQUIRE(row.verified);
        REQUIRE(row.deficit.lower().sign() >= 0);
        REQUIRE(row.deficit.upper() < row.log_p.lower());
    }
    CHECK_THROWS_AS(compensated_envelope(build_plan(GrowthTarget::infinite(), Strategy::infinite(), 3)), DomainError);
}
