#pragma once

// Truncated dynamical zeta function exp(sum_{n>=1} F_n z^n / n) with exact
// rational coefficients, its Euler-product form over orbits, and a
// finite-data rationality probe.

#include "perigee/orbits.hpp"
#include "perigee/polynomial.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace perigee {

struct ZetaSeries {
    std::vector<mpq_class> coefficients;  // c_0 .. c_M
    CountSequence source;                 // F_1 .. F_M

    std::size_t order() const noexcept { return coefficients.empty() ? 0 : coefficients.size() - 1; }
};

/// c_0 = 1, m c_m = sum_{k=1}^{m} F_k c_{m-k}. Requires M <= horizon of F.
ZetaSeries zeta_truncate(const CountSequence& fixed, std::size_t order);

/// prod_{n<=M} (1 - z^n)^{-L_n/n} truncated at z^M. Throws
/// RealizabilityError unless F is realizable through M.
ZetaSeries orbit_product_form(const CountSequence& fixed, std::size_t order);

/// Inverse recurrence: recovers F_1..F_M from the coefficients.
CountSequence fixed_from_zeta(const ZetaSeries& series);

/// Checks m c_m = sum_{k=1}^{m} F_k c_{m-k} for every m and c_0 = 1.
bool satisfies_recurrence(const ZetaSeries& series);

/// Shortest linear recurrence (Berlekamp-Massey over Q). Returns the
/// connection polynomial C(z) = 1 + a_1 z + ... + a_L z^L, meaning
/// sum_{i=0}^{L} a_i s_{m-i} = 0 for all L <= m < len(s), together with L.
struct LinearRecurrence {
    QPoly connection;
    std::size_t length = 0;
};
LinearRecurrence berlekamp_massey(const std::vector<mpq_class>& sequence);

enum class RationalityVerdict { consistent_with_rational, no_low_order_recurrence };

struct RationalityProbe {
    RationalityVerdict verdict = RationalityVerdict::no_low_order_recurrence;
    std::size_t recurrence_length = 0;
    std::size_t length_cap = 0;  // floor(M/2) - 1
    QPoly numerator;             // N(z)
    QPoly denominator;           // D(z), D(0) = 1
    /// N(z) = D(z) S(z) holds through order M (checked exactly).
    bool identity_verified = false;
};

/// Requires M >= 8; throws DomainError otherwise.
RationalityProbe rationality_probe(const ZetaSeries& series);

}  // namespace perigee
