#pragma once

// Lehmer's sequence Delta_n(f) = prod |alpha_i^n - 1| for a monic integer
// polynomial f, its growth rate (the Mahler measure m(f)), and the
// root-of-unity degeneracy test. Delta_n(f) counts the period-n points of
// the toral automorphism given by the companion matrix of f.

#include "perigee/orbits.hpp"
#include "perigee/polynomial.hpp"
#include "perigee/real.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace perigee {

/// Smallest k such that f shares a factor with the cyclotomic polynomial
/// Phi_k, scanning every k <= 2 deg(f)^2 + 6 with phi(k) <= deg(f).
std::optional<std::uint64_t> cyclotomic_factor(const IntegerPolynomial& f);

/// True iff f vanishes at some root of unity, i.e. Delta_n(f) = 0 for some n.
inline bool degeneracy_check(const IntegerPolynomial& f) { return cyclotomic_factor(f).has_value(); }

/// |det(M^n - I)| for the companion matrix M (repeated squaring, then
/// fraction-free Bareiss elimination).
mpz_class delta_n_determinant(const IntegerPolynomial& f, std::uint64_t n);

/// |Res(f, x^n - 1)| via x^n mod f and the Euclidean resultant recurrence
/// over Q. Independent of the matrix route.
mpz_class delta_n_resultant(const IntegerPolynomial& f, std::uint64_t n);

/// Same as delta_n_determinant.
inline mpz_class delta_n(const IntegerPolynomial& f, std::uint64_t n) { return delta_n_determinant(f, n); }

/// (Delta_1(f), ..., Delta_N(f)) as a fixed-kind sequence. Throws
/// DegenerateError (carrying the cyclotomic index) for degenerate f.
CountSequence toral_fix_sequence(const IntegerPolynomial& f, std::uint64_t horizon);

enum class RootLocation { outside, inside, near_unit };

struct RootEnclosure {
    Real re;
    Real im;
    Real radius;  // the root lies in the closed disk of this radius around (re, im)
    std::uint64_t multiplicity = 1;
    RootLocation location = RootLocation::near_unit;
};

struct MahlerResult {
    long precision_bits = kDefaultPrecisionBits;
    Real measure;      // sum over roots of max(log|alpha|, 0)
    Real error_bound;  // |measure - m(f)| <= error_bound
    std::vector<RootEnclosure> roots;
    std::size_t near_unit = 0;  // roots within 2^-precision_bits of the unit circle
};

struct RootFindingBudget {
    int max_iterations = 5000;
    int max_precision_doublings = 4;
};

/// Isolates all complex roots with certified disks (Aberth iteration on each
/// square-free factor, Braess-Hadeler inclusion radii) and sums
/// max(log|alpha|, 0). Throws BudgetExceeded if the disks cannot be separated
/// and classified within the budget.
MahlerResult mahler_measure(const IntegerPolynomial& f, long precision_bits = kDefaultPrecisionBits,
                            RootFindingBudget budget = {});

struct LehmerGrowthReport {
    std::uint64_t horizon = 0;
    mpz_class delta;  // Delta_N(f)
    Real rate;        // (1/N) log Delta_N
    Real measure;     // m(f), also the topological entropy of T_f
    Real gap;         // |rate - m(f)|
    double tolerance = 0;
    bool within_tolerance = false;
    /// d (log 2 + log(1/(1 - e^-delta))) / N when every root is certified at
    /// log-distance >= delta from the unit circle.
    std::optional<Real> envelope_bound;
    std::optional<bool> within_envelope;
};

/// Compares (1/N) log Delta_N(f) with m(f). Throws DegenerateError for
/// degenerate f.
LehmerGrowthReport lehmer_growth_check(const IntegerPolynomial& f, std::uint64_t horizon, double tolerance,
                                       long precision_bits = kDefaultPrecisionBits);

}  // namespace perigee
