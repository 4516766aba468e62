#include "perigee/construction.hpp"

#include "perigee/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace perigee {

namespace {

mpz_class to_mpz(std::uint64_t v) { return mpz_class(static_cast<unsigned long>(v)); }

void require_in_horizon(const ConstructionPlan& plan, std::uint64_t n, const char* op) {
    if (n == 0 || n > plan.horizon) {
        throw DomainError(std::string(op) + ": index " + std::to_string(n) + " outside 1.." +
                          std::to_string(plan.horizon));
    }
}

// sum_{d | n, d < n} K_d log p_d, enclosed.
Interval proper_log_sum(const ConstructionPlan& plan, std::uint64_t n, long bits) {
    Interval total = Interval::point(mpz_class(0), bits);
    for (std::uint64_t d : divisors(n)) {
        if (d == n) break;
        const auto& c = plan.component(d);
        if (c.K == 0) continue;
        total += Interval::log(c.p, bits) * Interval::point(to_mpz(c.K), bits);
    }
    return total;
}

Interval scaled_target(const ConstructionPlan& plan, std::uint64_t n, long bits) {
    return Interval::point(mpq_class(plan.target.value() * to_mpz(n)), bits);
}

std::uint64_t paper_exponent(const ConstructionPlan& plan, std::uint64_t n, const mpz_class& p,
                             const PrecisionSchedule& precision) {
    // n*C is rational and log p irrational, so n*C/log p is never an integer
    // and the floor is decidable.
    const mpz_class k = decide_floor(
        [&](long bits) { return scaled_target(plan, n, bits) / Interval::log(p, bits); }, precision);
    return k.get_ui();
}

std::uint64_t compensated_exponent(const ConstructionPlan& plan, std::uint64_t n, const mpz_class& p,
                                   const PrecisionSchedule& precision) {
    const mpz_class k = decide_floor(
        [&](long bits) {
            return (scaled_target(plan, n, bits) - proper_log_sum(plan, n, bits)) / Interval::log(p, bits);
        },
        precision);
    return sgn(k) < 0 ? 0 : k.get_ui();
}

std::uint64_t subexponential_exponent(std::uint64_t n, const mpq_class& gamma) {
    // floor(n^(a/b)) = floor((n^a)^(1/b)), an exact integer root.
    mpz_class power;
    mpz_pow_ui(power.get_mpz_t(), to_mpz(n).get_mpz_t(), gamma.get_num().get_ui());
    mpz_class root;
    mpz_root(root.get_mpz_t(), power.get_mpz_t(), gamma.get_den().get_ui());
    return root.get_ui();
}

std::optional<std::uint64_t> expected_exponent(const ConstructionPlan& plan, std::uint64_t n, const mpz_class& p,
                                               const PrecisionSchedule& precision) {
    if (plan.target.kind() == GrowthTarget::Kind::zero) return 0;
    switch (plan.strategy.kind()) {
        case Strategy::Kind::paper: return paper_exponent(plan, n, p, precision);
        case Strategy::Kind::compensated: return compensated_exponent(plan, n, p, precision);
        case Strategy::Kind::subexponential: return subexponential_exponent(n, plan.strategy.gamma());
        case Strategy::Kind::infinite: return 1;
    }
    return std::nullopt;
}

mpz_class search_floor_for(const ConstructionPlan& plan, std::uint64_t n) {
    if (plan.target.kind() == GrowthTarget::Kind::infinite) {
        mpz_class floor;
        mpz_ui_pow_ui(floor.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(n));
        return floor;
    }
    return 0;
}

void check_compatible(const GrowthTarget& target, const Strategy& strategy) {
    switch (target.kind()) {
        case GrowthTarget::Kind::zero: return;
        case GrowthTarget::Kind::finite:
            if (strategy.kind() == Strategy::Kind::infinite) {
                throw DomainError("strategy 'infinite' requires the infinite target");
            }
            return;
        case GrowthTarget::Kind::infinite:
            if (strategy.kind() != Strategy::Kind::infinite) {
                throw DomainError("the infinite target requires strategy 'infinite'");
            }
            return;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Strategy

Strategy Strategy::subexponential(const mpq_class& gamma) {
    if (sgn(gamma) <= 0 || gamma >= 1) throw DomainError("subexponential exponent must lie in (0, 1)");
    mpq_class canonical = gamma;
    canonical.canonicalize();
    return Strategy(Kind::subexponential, canonical);
}

Strategy Strategy::parse(std::string_view text) {
    if (text == "paper") return paper();
    if (text == "compensated") return compensated();
    if (text == "infinite") return infinite();
    constexpr std::string_view prefix = "subexponential:";
    if (text.substr(0, prefix.size()) == prefix) return subexponential(parse_rational(text.substr(prefix.size())));
    throw ParseError("unknown strategy '" + std::string(text) + "'");
}

std::string Strategy::to_string() const {
    switch (kind_) {
        case Kind::paper: return "paper";
        case Kind::compensated: return "compensated";
        case Kind::infinite: return "infinite";
        case Kind::subexponential: break;
    }
    return "subexponential:" + gamma_.get_str();
}

// ---------------------------------------------------------------------------
// Plans

ConstructionPlan build_plan(const GrowthTarget& target, const Strategy& strategy, std::uint64_t horizon,
                            const PlanOptions& options) {
    check_compatible(target, strategy);
    ConstructionPlan plan{target, strategy, horizon, {}};
    plan.components.reserve(horizon);
    for (std::uint64_t n = 1; n <= horizon; ++n) {
        const PrimeInProgression prime = least_prime_congruent_one(n, search_floor_for(plan, n), options.scan_ceiling);
        const PrimitiveRootCert root = primitive_root(prime.p, options.factor_budget);
        ComponentSpec c{n, prime.p, root.g, 0, element_of_order(prime.p, root.g, n)};
        // Compensated exponents read components 1..n-1, which are already in place.
        c.K = *expected_exponent(plan, n, c.p, options.precision);
        plan.components.push_back(std::move(c));
    }
    return plan;
}

std::optional<std::string> validate_plan(const ConstructionPlan& plan, const PlanOptions& options) {
    try {
        check_compatible(plan.target, plan.strategy);
    } catch (const DomainError& e) {
        return e.what();
    }
    if (plan.components.size() != plan.horizon) return "component count differs from N";
    for (std::uint64_t n = 1; n <= plan.horizon; ++n) {
        const auto& c = plan.component(n);
        const std::string at = "component " + std::to_string(n) + ": ";
        if (c.n != n) return at + "index out of order";
        if (!is_prime(c.p)) return at + "p is not prime";
        if (!mpz_divisible_ui_p(mpz_class(c.p - 1).get_mpz_t(), static_cast<unsigned long>(n))) {
            return at + "n does not divide p - 1";
        }
        const PrimitiveRootCert cert{c.p, c.g, factorize(c.p - 1, options.factor_budget)};
        if (!verify_certificate(cert)) return at + "g is not a primitive root";
        if (c.multiplier != element_of_order(c.p, c.g, n)) return at + "multiplier differs from g^((p-1)/n)";
        const auto expected = expected_exponent(plan, n, c.p, options.precision);
        if (!expected || *expected != c.K) return at + "K does not match the strategy";
    }
    return std::nullopt;
}

FactoredNatural fixed_count(const ConstructionPlan& plan, std::uint64_t n) {
    require_in_horizon(plan, n, "fixed_count");
    FactoredNatural out;
    for (std::uint64_t d : divisors(n)) {
        const auto& c = plan.component(d);
        if (c.K > 0) out *= FactoredNatural::prime_power(c.p, c.K);
    }
    return out;
}

CountSequence fixed_sequence(const ConstructionPlan& plan, std::uint64_t limit) {
    require_in_horizon(plan, limit, "fixed_sequence");
    CountSequence out{SequenceKind::fixed, {}};
    out.values.reserve(limit);
    for (std::uint64_t n = 1; n <= limit; ++n) out.values.push_back(fixed_count(plan, n).value());
    return out;
}

mpz_class least_count_exact(const ConstructionPlan& plan, std::uint64_t n) {
    require_in_horizon(plan, n, "least_count_exact");
    mpz_class total = 0;
    for (std::uint64_t d : divisors(n)) {
        const int mu = mobius(n / d);
        if (mu == 0) continue;
        const mpz_class f = fixed_count(plan, d).value();
        if (mu > 0) {
            total += f;
        } else {
            total -= f;
        }
    }
    return total;
}

mpz_class least_count_claimed(const ConstructionPlan& plan, std::uint64_t n) {
    require_in_horizon(plan, n, "least_count_claimed");
    const auto& c = plan.component(n);
    if (c.K == 0) return 0;
    mpz_class power;
    mpz_pow_ui(power.get_mpz_t(), c.p.get_mpz_t(), c.K);
    return power - 1;
}

// ---------------------------------------------------------------------------
// Oracle

mpz_class truncated_fixed_count(const ConstructionPlan& plan, std::uint64_t components, std::uint64_t n) {
    mpz_class out = 1;
    mpz_class power;
    for (std::uint64_t d = 1; d <= std::min(components, plan.horizon); ++d) {
        if (n % d != 0) continue;
        const auto& c = plan.component(d);
        mpz_pow_ui(power.get_mpz_t(), c.p.get_mpz_t(), c.K);
        out *= power;
    }
    return out;
}

OracleResult enumerate_oracle(const ConstructionPlan& plan, std::uint64_t components, std::uint64_t n_max,
                              std::uint64_t budget) {
    if (components > plan.horizon) throw DomainError("enumerate_oracle: more components than the plan holds");

    struct Block {
        std::uint64_t index;
        std::uint64_t p;
        std::uint64_t multiplier;
        std::size_t offset;
        std::size_t width;
    };
    std::vector<Block> blocks;
    std::size_t width = 0;
    mpz_class order = 1;
    for (std::uint64_t i = 1; i <= components; ++i) {
        const auto& c = plan.component(i);
        if (c.K == 0) continue;
        if (!c.p.fits_ulong_p()) throw BudgetExceeded("enumerate_oracle: component prime too large to enumerate");
        mpz_class power;
        mpz_pow_ui(power.get_mpz_t(), c.p.get_mpz_t(), c.K);
        order *= power;
        if (order > to_mpz(budget)) {
            throw BudgetExceeded("enumerate_oracle: |X_M| exceeds the enumeration budget of " + std::to_string(budget));
        }
        blocks.push_back({i, c.p.get_ui(), c.multiplier.get_ui(), width, static_cast<std::size_t>(c.K)});
        width += c.K;
    }

    std::vector<std::uint64_t> point(width, 0);
    std::vector<std::uint64_t> image(width, 0);
    std::map<std::uint64_t, std::uint64_t> by_period;

    // Least j >= 1 with T_i^j(block) = block, by applying T_i.
    auto block_period = [&](const Block& b) -> std::uint64_t {
        std::copy_n(point.begin() + static_cast<std::ptrdiff_t>(b.offset), b.width,
                    image.begin() + static_cast<std::ptrdiff_t>(b.offset));
        for (std::uint64_t j = 1;; ++j) {
            bool same = true;
            for (std::size_t k = b.offset; k < b.offset + b.width; ++k) {
                image[k] = static_cast<std::uint64_t>(static_cast<unsigned __int128>(image[k]) * b.multiplier % b.p);
                same = same && image[k] == point[k];
            }
            if (same) return j;
        }
    };

    const std::uint64_t total = order.get_ui();
    for (std::uint64_t visited = 0; visited < total; ++visited) {
        std::uint64_t period = 1;
        for (const Block& b : blocks) period = std::lcm(period, block_period(b));
        ++by_period[period];

        // Odometer increment over all coordinates.
        for (const Block& b : blocks) {
            bool carried = false;
            for (std::size_t k = b.offset; k < b.offset + b.width; ++k) {
                if (++point[k] < b.p) {
                    carried = true;
                    break;
                }
                point[k] = 0;
            }
            if (carried) break;
        }
    }

    OracleResult out;
    out.components_used = components;
    out.group_order = total;
    out.fixed = {SequenceKind::fixed, std::vector<mpz_class>(n_max, 0)};
    out.least = {SequenceKind::least, std::vector<mpz_class>(n_max, 0)};
    for (const auto& [period, count] : by_period) {
        if (period <= n_max) out.least.values[period - 1] = to_mpz(count);
        for (std::uint64_t n = period; n <= n_max; n += period) out.fixed.values[n - 1] += to_mpz(count);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reports

ClaimedVsExactReport claimed_vs_exact_report(const ConstructionPlan& plan, std::uint64_t n_max) {
    require_in_horizon(plan, n_max, "claimed_vs_exact_report");
    const CountSequence least = least_from_fixed(fixed_sequence(plan, n_max));

    ClaimedVsExactReport report;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        ClaimedVsExactRow row;
        row.n = n;
        row.claimed = least_count_claimed(plan, n);
        row.exact = least[n];
        row.difference = row.exact - row.claimed;
        row.differ = row.difference != 0;
        row.proper_divisors_trivial = true;
        for (std::uint64_t d : divisors(n)) {
            if (d != n && plan.component(d).K > 0) row.proper_divisors_trivial = false;
        }
        row.lower_bound_holds = row.exact >= std::max(row.claimed, mpz_class(0));
        row.divisible = mpz_divisible_ui_p(row.exact.get_mpz_t(), static_cast<unsigned long>(n)) != 0;
        if (n >= 2) row.characterization_holds = (!row.differ) == row.proper_divisors_trivial;

        report.differing += row.differ ? 1 : 0;
        report.all_lower_bounds = report.all_lower_bounds && row.lower_bound_holds;
        report.all_divisible = report.all_divisible && row.divisible;
        report.characterization = report.characterization && row.characterization_holds.value_or(true);
        report.rows.push_back(std::move(row));
    }
    return report;
}

EnvelopeReport compensated_envelope(const ConstructionPlan& plan, const PrecisionSchedule& precision) {
    if (!plan.target.is_finite()) throw DomainError("compensated_envelope: requires a finite target");

    EnvelopeReport report;
    for (std::uint64_t n = 1; n <= plan.horizon; ++n) {
        const auto& c = plan.component(n);
        EnvelopeRow row;
        row.n = n;
        row.budget_sign = decide_sign(
            [&](long bits) { return scaled_target(plan, n, bits) - proper_log_sum(plan, n, bits); }, precision);
        if (row.budget_sign < 0) {
            report.negative_budget.push_back(n);
        }

        for (long bits = precision.initial_bits; bits <= precision.max_bits; bits *= 2) {
            row.log_p = Interval::log(c.p, bits);
            row.deficit = scaled_target(plan, n, bits) - fixed_count(plan, n).log_enclosure(bits);
            const Interval headroom = row.log_p - row.deficit;
            if (row.deficit.lower().sign() > 0 && headroom.lower().sign() > 0) {
                row.verified = true;
                break;
            }
            // A negative budget can make the deficit negative for real; more
            // precision will not help once the sign is decided.
            if (row.deficit.decided_sign() && headroom.decided_sign()) break;
        }
        if (row.budget_sign >= 0 && !row.verified) report.unverified.push_back(n);
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace perigee
