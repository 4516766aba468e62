#pragma once

// Period counts F_n versus least-period counts L_n: the divisor-sum relation
// F_n = sum_{d|n} L_d and its Möbius inversion, realizability, logarithmic
// growth diagnostics and the two exact inequalities
//     L_r <= F_r    and    L_r >= F_r - sum_{d|r, d<r} F_d.

#include "perigee/real.hpp"
#include "perigee/target.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace perigee {

enum class SequenceKind { fixed, least };

/// Finite prefix (indices 1..N) of F_n or L_n. Values are exact and may be
/// negative when they come from inverting a non-realizable sequence.
struct CountSequence {
    SequenceKind kind = SequenceKind::fixed;
    std::vector<mpz_class> values;  // values[n - 1] holds the n-th term

    std::size_t horizon() const noexcept { return values.size(); }
    const mpz_class& operator[](std::uint64_t n) const { return values.at(n - 1); }

    friend bool operator==(const CountSequence&, const CountSequence&) = default;
};

CountSequence fixed_from_least(const CountSequence& least);
CountSequence least_from_fixed(const CountSequence& fixed);

struct RealizabilityEntry {
    std::uint64_t n = 0;
    mpz_class least;
    bool nonnegative = false;
    bool divisible = false;  // n | L_n
};

struct RealizabilityReport {
    std::vector<RealizabilityEntry> entries;
    bool realizable = true;
    std::optional<std::uint64_t> first_failure;
};

/// L_n >= 0 and n | L_n for every n <= N.
RealizabilityReport realizability_check(const CountSequence& fixed);

struct RateEntry {
    std::uint64_t n = 0;
    Real log_count;
    Real rate;  // log_count / n
};

struct GrowthDiagnostics {
    long precision_bits = kDefaultPrecisionBits;
    std::vector<RateEntry> per_n;
    std::vector<std::uint64_t> skipped;  // indices with S_n <= 0 (log undefined)
    std::size_t window_len = 1;
    Real window_inf;
    Real window_sup;
    /// |rate - C| at the last index and the worst case over the window
    /// (finite targets only).
    std::optional<Real> final_distance;
    std::optional<Real> window_max_distance;
};

/// (1/n) log S_n for every n with S_n > 0, plus the inf/sup over the last
/// `window_len` computed rates. Throws DomainError when no term is positive.
GrowthDiagnostics growth_diagnostics(const CountSequence& sequence, const GrowthTarget& target,
                                     std::size_t window_len, long precision_bits = kDefaultPrecisionBits);

struct SandwichEntry {
    std::uint64_t r = 0;
    mpz_class proper_divisor_sum;  // sum_{d|r, d<r} F_d
    bool upper_holds = false;      // L_r <= F_r
    bool lower_holds = false;      // L_r >= F_r - proper_divisor_sum
};

struct SandwichReport {
    std::vector<SandwichEntry> entries;
    std::vector<std::uint64_t> violations;
    bool holds = true;

    // Finite-horizon comparison of the two growth rates over the trailing
    // window: gap_r = (log F_r - log L_r)/r against
    // max(log(N)/N, -log(1 - proper_divisor_sum/F_r)/r).
    std::size_t window_len = 0;
    std::optional<Real> max_rate_gap;
    std::optional<Real> horizon_tolerance;  // log(N)/N
    bool rates_agree = true;
    std::vector<std::uint64_t> rate_window_skipped;
};

/// Requires L == least_from_fixed(F); throws DomainError otherwise.
SandwichReport lemma_sandwich_check(const CountSequence& fixed, const CountSequence& least,
                                    std::size_t window_len = 10, long precision_bits = kDefaultPrecisionBits);

}  // namespace perigee
