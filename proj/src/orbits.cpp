#include "perigee/orbits.hpp"

#include "perigee/error.hpp"
#include "perigee/numtheory.hpp"

#include <algorithm>
#include <string>

namespace perigee {

namespace {

void require_kind(const CountSequence& s, SequenceKind kind, const char* op) {
    if (s.kind != kind) {
        throw DomainError(std::string(op) + ": expected a " + (kind == SequenceKind::fixed ? "fixed" : "least") +
                          "-kind sequence");
    }
}

// sum_{d|m, d<m} values[d] for every m.
std::vector<mpz_class> proper_divisor_sums(const std::vector<mpz_class>& values) {
    const std::size_t n = values.size();
    std::vector<mpz_class> sums(n, 0);
    for (std::size_t d = 1; d <= n; ++d) {
        for (std::size_t m = 2 * d; m <= n; m += d) sums[m - 1] += values[d - 1];
    }
    return sums;
}

Real rate_of(const mpz_class& value, std::uint64_t n, long bits) {
    return Real::log(value, bits) / Real(mpz_class(static_cast<unsigned long>(n)), bits);
}

}  // namespace

CountSequence fixed_from_least(const CountSequence& least) {
    require_kind(least, SequenceKind::least, "fixed_from_least");
    const std::size_t n = least.horizon();
    CountSequence fixed{SequenceKind::fixed, std::vector<mpz_class>(n, 0)};
    for (std::size_t d = 1; d <= n; ++d) {
        for (std::size_t m = d; m <= n; m += d) fixed.values[m - 1] += least.values[d - 1];
    }
    return fixed;
}

CountSequence least_from_fixed(const CountSequence& fixed) {
    require_kind(fixed, SequenceKind::fixed, "least_from_fixed");
    const std::size_t n = fixed.horizon();
    const std::vector<int> mu = mobius_table(n);
    CountSequence least{SequenceKind::least, std::vector<mpz_class>(n, 0)};
    for (std::size_t d = 1; d <= n; ++d) {
        for (std::size_t m = d; m <= n; m += d) {
            switch (mu[m / d]) {
                case 1: least.values[m - 1] += fixed.values[d - 1]; break;
                case -1: least.values[m - 1] -= fixed.values[d - 1]; break;
                default: break;
            }
        }
    }
    return least;
}

RealizabilityReport realizability_check(const CountSequence& fixed) {
    require_kind(fixed, SequenceKind::fixed, "realizability_check");
    const CountSequence least = least_from_fixed(fixed);
    RealizabilityReport report;
    report.entries.reserve(least.horizon());
    for (std::uint64_t n = 1; n <= least.horizon(); ++n) {
        RealizabilityEntry entry{n, least[n], sgn(least[n]) >= 0,
                                 mpz_divisible_ui_p(least[n].get_mpz_t(), static_cast<unsigned long>(n)) != 0};
        if (!(entry.nonnegative && entry.divisible) && report.realizable) {
            report.realizable = false;
            report.first_failure = n;
        }
        report.entries.push_back(std::move(entry));
    }
    return report;
}

GrowthDiagnostics growth_diagnostics(const CountSequence& sequence, const GrowthTarget& target,
                                     std::size_t window_len, long precision_bits) {
    if (window_len == 0) throw DomainError("growth_diagnostics: window length must be positive");
    const long work = precision_bits + 32;

    GrowthDiagnostics out;
    out.precision_bits = precision_bits;
    out.window_len = window_len;
    for (std::uint64_t n = 1; n <= sequence.horizon(); ++n) {
        const mpz_class& value = sequence[n];
        if (sgn(value) <= 0) {
            out.skipped.push_back(n);
            continue;
        }
        Real log_count = Real::log(value, work);
        Real rate = log_count / Real(mpz_class(static_cast<unsigned long>(n)), work);
        mpfr_prec_round(log_count.get(), precision_bits, MPFR_RNDN);
        mpfr_prec_round(rate.get(), precision_bits, MPFR_RNDN);
        out.per_n.push_back({n, std::move(log_count), std::move(rate)});
    }
    if (out.per_n.empty()) throw DomainError("growth_diagnostics: no positive term in the sequence");

    const std::size_t begin = out.per_n.size() > window_len ? out.per_n.size() - window_len : 0;
    out.window_inf = out.per_n[begin].rate;
    out.window_sup = out.per_n[begin].rate;
    for (std::size_t i = begin; i < out.per_n.size(); ++i) {
        out.window_inf = std::min(out.window_inf, out.per_n[i].rate);
        out.window_sup = std::max(out.window_sup, out.per_n[i].rate);
    }

    if (target.kind() != GrowthTarget::Kind::infinite) {
        const Real c(target.value(), precision_bits);
        out.final_distance = Real::abs(out.per_n.back().rate - c);
        Real worst(precision_bits);
        for (std::size_t i = begin; i < out.per_n.size(); ++i) {
            worst = std::max(worst, Real::abs(out.per_n[i].rate - c));
        }
        out.window_max_distance = worst;
    }
    return out;
}

SandwichReport lemma_sandwich_check(const CountSequence& fixed, const CountSequence& least, std::size_t window_len,
                                    long precision_bits) {
    require_kind(fixed, SequenceKind::fixed, "lemma_sandwich_check");
    require_kind(least, SequenceKind::least, "lemma_sandwich_check");
    if (least != least_from_fixed(fixed)) {
        throw DomainError("lemma_sandwich_check: L is not the Möbius inversion of F");
    }

    const std::size_t horizon = fixed.horizon();
    const std::vector<mpz_class> proper = proper_divisor_sums(fixed.values);

    SandwichReport report;
    report.window_len = std::min(window_len, horizon);
    for (std::uint64_t r = 1; r <= horizon; ++r) {
        SandwichEntry entry{r, proper[r - 1], least[r] <= fixed[r], least[r] >= fixed[r] - proper[r - 1]};
        if (!entry.upper_holds || !entry.lower_holds) {
            report.holds = false;
            report.violations.push_back(r);
        }
        report.entries.push_back(std::move(entry));
    }
    if (horizon == 0 || report.window_len == 0) return report;

    const long work = precision_bits + 32;
    const mpz_class horizon_z(static_cast<unsigned long>(horizon));
    const Real tolerance = Real::log(horizon_z, work) / Real(horizon_z, work);
    report.horizon_tolerance = tolerance;
    for (std::uint64_t r = horizon - report.window_len + 1; r <= horizon; ++r) {
        if (sgn(fixed[r]) <= 0 || sgn(least[r]) <= 0) {
            report.rate_window_skipped.push_back(r);
            continue;
        }
        const Real gap = rate_of(fixed[r], r, work) - rate_of(least[r], r, work);
        if (!report.max_rate_gap || gap > *report.max_rate_gap) report.max_rate_gap = gap;

        Real allowed = tolerance;
        if (proper[r - 1] < fixed[r]) {
            // -log(1 - S/F) / r = (log F - log(F - S)) / r
            const Real tail = rate_of(fixed[r], r, work) - rate_of(fixed[r] - proper[r - 1], r, work);
            allowed = std::max(allowed, tail);
        } else {
            allowed = Real::infinity(work);
        }
        if (gap > allowed) report.rates_agree = false;
    }
    return report;
}

}  // namespace perigee
