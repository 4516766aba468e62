#pragma once

// The product-group automorphism with prescribed periodic-point growth.
//
// Component n is the group (F_p)^K with p = p_n prime, n | p - 1, acting by
// multiplication with g^((p-1)/n) for a primitive root g; that multiplier has
// order exactly n, so component n contributes p^K to F_m precisely when n | m.
// A ConstructionPlan records components 1..N and the strategy used for K_n.

#include "perigee/numtheory.hpp"
#include "perigee/orbits.hpp"
#include "perigee/real.hpp"
#include "perigee/target.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace perigee {

class Strategy {
public:
    enum class Kind { paper, compensated, subexponential, infinite };

    static Strategy paper() { return Strategy(Kind::paper); }
    static Strategy compensated() { return Strategy(Kind::compensated); }
    static Strategy infinite() { return Strategy(Kind::infinite); }
    /// K_n = floor(n^gamma); throws DomainError unless 0 < gamma < 1.
    static Strategy subexponential(const mpq_class& gamma);

    /// `paper`, `compensated`, `infinite`, or `subexponential:<gamma>`.
    static Strategy parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    const mpq_class& gamma() const noexcept { return gamma_; }
    std::string to_string() const;

    friend bool operator==(const Strategy& a, const Strategy& b) { return a.kind_ == b.kind_ && a.gamma_ == b.gamma_; }

private:
    explicit Strategy(Kind kind, mpq_class gamma = 0) : kind_(kind), gamma_(std::move(gamma)) {}

    Kind kind_;
    mpq_class gamma_;
};

struct ComponentSpec {
    std::uint64_t n = 0;
    mpz_class p;
    mpz_class g;
    std::uint64_t K = 0;
    mpz_class multiplier;

    friend bool operator==(const ComponentSpec&, const ComponentSpec&) = default;
};

struct ConstructionPlan {
    GrowthTarget target = GrowthTarget::zero();
    Strategy strategy = Strategy::paper();
    std::uint64_t horizon = 0;
    std::vector<ComponentSpec> components;  // components[n - 1] is component n

    const ComponentSpec& component(std::uint64_t n) const { return components.at(n - 1); }

    friend bool operator==(const ConstructionPlan&, const ConstructionPlan&) = default;
};

struct PlanOptions {
    std::uint64_t scan_ceiling = kDefaultScanCeiling;
    FactorBudget factor_budget{};
    PrecisionSchedule precision{};
};

/// Builds components 1..horizon. The zero target yields the trivial plan
/// (every K_n = 0) whatever the strategy; otherwise the strategy must match
/// the target (paper/compensated/subexponential need a finite C, infinite
/// needs the infinite target). Throws DomainError on a mismatch.
ConstructionPlan build_plan(const GrowthTarget& target, const Strategy& strategy, std::uint64_t horizon,
                            const PlanOptions& options = {});

/// Re-checks every component invariant (p prime, n | p-1, certified
/// primitive root, multiplier = g^((p-1)/n)) and that K matches the strategy.
/// Returns a description of the first problem, or nullopt.
std::optional<std::string> validate_plan(const ConstructionPlan& plan, const PlanOptions& options = {});

/// F_n(T) = prod_{d | n} p_d^{K_d} in factored form. Requires n <= horizon.
FactoredNatural fixed_count(const ConstructionPlan& plan, std::uint64_t n);

/// Exact Möbius count of points of least period n.
mpz_class least_count_exact(const ConstructionPlan& plan, std::uint64_t n);

/// The closed form p_n^{K_n} - 1 (0 when K_n = 0).
mpz_class least_count_claimed(const ConstructionPlan& plan, std::uint64_t n);

/// (F_1, ..., F_limit) as an exact sequence. Requires limit <= horizon.
CountSequence fixed_sequence(const ConstructionPlan& plan, std::uint64_t limit);

// ---------------------------------------------------------------------------
// Brute-force oracle

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

struct OracleResult {
    std::uint64_t components_used = 0;  // M
    std::uint64_t group_order = 0;      // |X_M|
    CountSequence fixed;
    CountSequence least;
};

/// Materializes X_M = prod_{i <= M} (F_{p_i})^{K_i}, iterates T on every
/// block of every point to find its least period, and tallies F_n and L_n
/// for n <= n_max. Throws BudgetExceeded when |X_M| > budget.
OracleResult enumerate_oracle(const ConstructionPlan& plan, std::uint64_t components, std::uint64_t n_max,
                              std::uint64_t budget = kDefaultEnumerationBudget);

/// prod_{d | n, d <= M} p_d^{K_d}: the closed form the oracle must reproduce.
mpz_class truncated_fixed_count(const ConstructionPlan& plan, std::uint64_t components, std::uint64_t n);

// ---------------------------------------------------------------------------
// Reports

struct ClaimedVsExactRow {
    std::uint64_t n = 0;
    mpz_class claimed;
    mpz_class exact;
    mpz_class difference;  // exact - claimed
    bool differ = false;
    /// prod_{d | n, d < n} p_d^{K_d} = 1, i.e. every proper-divisor component is trivial.
    bool proper_divisors_trivial = false;
    bool lower_bound_holds = false;  // exact >= max(claimed, 0)
    bool divisible = false;          // n | exact
    /// For n >= 2: (exact == claimed) <=> proper_divisors_trivial. Not
    /// applicable at n = 1, where the zero point makes exact = claimed + 1.
    std::optional<bool> characterization_holds;
};

struct ClaimedVsExactReport {
    std::vector<ClaimedVsExactRow> rows;
    std::size_t differing = 0;
    bool all_lower_bounds = true;
    bool all_divisible = true;
    bool characterization = true;
};

ClaimedVsExactReport claimed_vs_exact_report(const ConstructionPlan& plan, std::uint64_t n_max);

struct EnvelopeRow {
    std::uint64_t n = 0;
    int budget_sign = 0;  // sign of nC - sum_{d|n, d<n} K_d log p_d
    Interval deficit;     // nC - log F_n
    Interval log_p;
    bool verified = false;  // 0 <= deficit < log p_n certified
};

struct EnvelopeReport {
    std::vector<EnvelopeRow> rows;
    std::vector<std::uint64_t> negative_budget;
    std::vector<std::uint64_t> unverified;  // nonnegative budget but the bound failed
};

/// Certifies 0 <= nC - log F_n < log p_n by interval arithmetic at every n
/// whose running budget is nonnegative. Requires a finite target.
EnvelopeReport compensated_envelope(const ConstructionPlan& plan, const PrecisionSchedule& precision = {});

}  // namespace perigee
