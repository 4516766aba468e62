#include "perigee/zeta.hpp"

#include "perigee/error.hpp"

#include <algorithm>
#include <string>

namespace perigee {

namespace {

CountSequence prefix(const CountSequence& fixed, std::size_t order, const char* op) {
    if (fixed.kind != SequenceKind::fixed) throw DomainError(std::string(op) + ": expected a fixed-kind sequence");
    if (order > fixed.horizon()) {
        throw DomainError(std::string(op) + ": order " + std::to_string(order) + " exceeds the sequence horizon " +
                          std::to_string(fixed.horizon()));
    }
    return {SequenceKind::fixed, std::vector<mpz_class>(fixed.values.begin(),
                                                        fixed.values.begin() + static_cast<std::ptrdiff_t>(order))};
}

}  // namespace

ZetaSeries zeta_truncate(const CountSequence& fixed, std::size_t order) {
    ZetaSeries series{{}, prefix(fixed, order, "zeta_truncate")};
    auto& c = series.coefficients;
    c.reserve(order + 1);
    c.emplace_back(1);
    for (std::size_t m = 1; m <= order; ++m) {
        mpq_class total = 0;
        for (std::size_t k = 1; k <= m; ++k) total += mpq_class(series.source.values[k - 1]) * c[m - k];
        total /= mpq_class(static_cast<unsigned long>(m));
        c.push_back(total);
    }
    return series;
}

ZetaSeries orbit_product_form(const CountSequence& fixed, std::size_t order) {
    CountSequence source = prefix(fixed, order, "orbit_product_form");
    const RealizabilityReport realizable = realizability_check(source);
    if (!realizable.realizable) {
        const std::uint64_t n = *realizable.first_failure;
        throw RealizabilityError(n, "sequence is not realizable at n = " + std::to_string(n) + " (L_n = " +
                                        realizable.entries[n - 1].least.get_str() + ")");
    }

    std::vector<mpz_class> product(order + 1, 0);
    product[0] = 1;
    for (std::size_t n = 1; n <= order; ++n) {
        const mpz_class orbits = realizable.entries[n - 1].least / static_cast<unsigned long>(n);
        if (sgn(orbits) == 0) continue;
        // (1 - z^n)^{-O} = sum_j binom(O + j - 1, j) z^{n j}
        std::vector<mpz_class> weights{1};
        for (std::size_t j = 1; j * n <= order; ++j) {
            mpz_class w = weights.back() * (orbits + static_cast<unsigned long>(j - 1));
            mpz_divexact_ui(w.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(j));
            weights.push_back(std::move(w));
        }
        std::vector<mpz_class> next(order + 1, 0);
        for (std::size_t k = 0; k <= order; ++k) {
            if (sgn(product[k]) == 0) continue;
            for (std::size_t j = 0; j < weights.size() && k + j * n <= order; ++j) next[k + j * n] += product[k] * weights[j];
        }
        product = std::move(next);
    }

    ZetaSeries series{{}, std::move(source)};
    series.coefficients.assign(product.begin(), product.end());
    return series;
}

CountSequence fixed_from_zeta(const ZetaSeries& series) {
    const auto& c = series.coefficients;
    if (c.empty() || c[0] != 1) throw DomainError("fixed_from_zeta: series must start with c_0 = 1");
    std::vector<mpq_class> recovered;
    CountSequence out{SequenceKind::fixed, {}};
    for (std::size_t m = 1; m < c.size(); ++m) {
        mpq_class value = c[m] * static_cast<unsigned long>(m);
        for (std::size_t k = 1; k < m; ++k) value -= recovered[k - 1] * c[m - k];
        if (value.get_den() != 1) throw DomainError("fixed_from_zeta: non-integral count at m = " + std::to_string(m));
        recovered.push_back(value);
        out.values.push_back(value.get_num());
    }
    return out;
}

bool satisfies_recurrence(const ZetaSeries& series) {
    const auto& c = series.coefficients;
    if (c.empty() || c[0] != 1) return false;
    if (series.source.horizon() < series.order()) return false;
    for (std::size_t m = 1; m < c.size(); ++m) {
        mpq_class total = 0;
        for (std::size_t k = 1; k <= m; ++k) total += mpq_class(series.source.values[k - 1]) * c[m - k];
        if (c[m] * static_cast<unsigned long>(m) != total) return false;
    }
    return true;
}

LinearRecurrence berlekamp_massey(const std::vector<mpq_class>& s) {
    QPoly current{1};
    QPoly previous{1};
    std::size_t length = 0;
    std::size_t shift = 1;
    mpq_class previous_discrepancy = 1;

    for (std::size_t n = 0; n < s.size(); ++n) {
        mpq_class discrepancy = s[n];
        for (std::size_t i = 1; i <= length && i < current.size(); ++i) discrepancy += current[i] * s[n - i];
        if (sgn(discrepancy) == 0) {
            ++shift;
            continue;
        }
        const mpq_class factor = discrepancy / previous_discrepancy;
        QPoly updated = current;
        if (updated.size() < previous.size() + shift) updated.resize(previous.size() + shift, mpq_class(0));
        for (std::size_t i = 0; i < previous.size(); ++i) updated[i + shift] -= factor * previous[i];

        if (2 * length <= n) {
            previous = std::move(current);
            length = n + 1 - length;
            previous_discrepancy = discrepancy;
            shift = 1;
        } else {
            ++shift;
        }
        current = std::move(updated);
    }
    current.resize(length + 1, mpq_class(0));
    return {std::move(current), length};
}

RationalityProbe rationality_probe(const ZetaSeries& series) {
    const std::size_t order = series.order();
    if (order < 8) throw DomainError("rationality_probe: needs at least 8 coefficients beyond c_0");

    RationalityProbe probe;
    probe.length_cap = order / 2 - 1;
    const LinearRecurrence recurrence = berlekamp_massey(series.coefficients);
    probe.recurrence_length = recurrence.length;
    if (recurrence.length > probe.length_cap) return probe;

    QPoly denominator = recurrence.connection;
    trim(denominator);

    // N = D * S through order M; every coefficient from L on must vanish.
    QPoly product(order + 1, mpq_class(0));
    for (std::size_t i = 0; i < denominator.size(); ++i) {
        for (std::size_t j = 0; i + j <= order; ++j) product[i + j] += denominator[i] * series.coefficients[j];
    }
    const bool terminates = std::all_of(product.begin() + static_cast<std::ptrdiff_t>(recurrence.length),
                                        product.end(), [](const mpq_class& v) { return sgn(v) == 0; });
    if (!terminates) return probe;

    product.resize(recurrence.length);
    trim(product);
    probe.verdict = RationalityVerdict::consistent_with_rational;
    probe.numerator = std::move(product);
    probe.denominator = std::move(denominator);
    probe.identity_verified = true;
    return probe;
}

}  // namespace perigee
