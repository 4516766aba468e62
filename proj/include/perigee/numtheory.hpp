#pragma once

// Exact integer number theory: primality, least primes in the progression
// 1 mod n, factorization of p-1, primitive roots, elements of prescribed
// multiplicative order, divisors and the Möbius function.

#include "perigee/real.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace perigee {

struct PrimePower {
    mpz_class prime;
    std::uint64_t exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A positive integer held as its sorted prime factorization. The empty
/// factorization is 1.
class FactoredNatural {
public:
    FactoredNatural() = default;

    static FactoredNatural prime_power(const mpz_class& prime, std::uint64_t exponent);

    /// Merges exponents of equal primes.
    FactoredNatural& operator*=(const FactoredNatural& rhs);
    friend FactoredNatural operator*(FactoredNatural lhs, const FactoredNatural& rhs) { return lhs *= rhs; }

    std::span<const PrimePower> factors() const noexcept { return factors_; }
    bool is_one() const noexcept { return factors_.empty(); }
    mpz_class value() const;

    /// Outward-rounded enclosure of log(value()), summed over prime powers.
    Interval log_enclosure(long precision_bits) const;
    Real log(long precision_bits) const;

    /// `p1^e1*p2^e2*...` with every exponent written out, or `1`.
    std::string to_string() const;

    friend bool operator==(const FactoredNatural&, const FactoredNatural&) = default;

private:
    std::vector<PrimePower> factors_;
};

// ---------------------------------------------------------------------------
// Primality

/// Deterministic Miller-Rabin for the whole 64-bit range.
bool is_prime(std::uint64_t n);

/// Deterministic below 3.3e24 (strong-pseudoprime bases 2..41). Above that,
/// Baillie-PSW followed by 64 further Miller-Rabin rounds: probabilistic,
/// error probability below 4^-64.
bool is_prime(const mpz_class& n);

/// Upper end of the deterministic regime of is_prime: 3317044064679887385961981.
const mpz_class& deterministic_primality_limit();

// ---------------------------------------------------------------------------
// Least prime congruent to 1 mod n

inline constexpr std::uint64_t kDefaultScanCeiling = std::uint64_t{1} << 40;

/// Heath-Brown's form of Linnik's bound, p <= B * n^(11/2). B is not given
/// explicitly; the empirical checks here use B = 1.
inline constexpr unsigned kHeathBrownExponentNumerator = 11;
inline constexpr unsigned kHeathBrownExponentDenominator = 2;

struct PrimeInProgression {
    std::uint64_t modulus = 1;
    mpz_class p;
    mpz_class search_floor;
};

/// Least prime p > search_floor with p = 1 (mod n), by a linear scan over
/// k*n + 1. Throws BudgetExceeded after `scan_ceiling` candidates.
PrimeInProgression least_prime_congruent_one(std::uint64_t n, const mpz_class& search_floor = 0,
                                             std::uint64_t scan_ceiling = kDefaultScanCeiling);

/// Exact test of p <= B * n^5.5, i.e. p^2 <= B^2 * n^11.
bool within_heath_brown_bound(const PrimeInProgression& prime, const mpz_class& constant = 1);

/// p / n^5.5 as a high-precision real.
Real heath_brown_ratio(const PrimeInProgression& prime, long precision_bits = kDefaultPrecisionBits);

// ---------------------------------------------------------------------------
// Factorization and primitive roots

struct FactorBudget {
    std::uint64_t trial_limit = 1'000'000;
    std::uint64_t rho_iterations = std::uint64_t{1} << 26;
};

/// Trial division up to `trial_limit`, then Pollard-Brent rho with a fixed
/// sequence of polynomial constants. n must be positive.
FactoredNatural factorize(const mpz_class& n, FactorBudget budget = {});

struct PrimitiveRootCert {
    mpz_class p;
    mpz_class g;
    FactoredNatural factorization;  // of p - 1
};

/// Smallest primitive root of the prime p (1 for p = 2).
PrimitiveRootCert primitive_root(const mpz_class& p, FactorBudget budget = {});

/// Re-checks a certificate: the factorization multiplies to p-1, g^(p-1) = 1
/// and g^((p-1)/q) != 1 for every prime q | p-1.
bool verify_certificate(const PrimitiveRootCert& cert);

/// g^((p-1)/n) mod p, which has multiplicative order exactly n. Throws
/// DomainError unless n divides p-1.
mpz_class element_of_order(const mpz_class& p, const mpz_class& g, std::uint64_t n);

mpz_class powmod(const mpz_class& base, const mpz_class& exponent, const mpz_class& modulus);

// ---------------------------------------------------------------------------
// Divisors and Möbius

std::vector<std::uint64_t> divisors(std::uint64_t n);
int mobius(std::uint64_t n);

/// mu(0..limit) by a linear sieve; entry 0 is unused and set to 0.
std::vector<int> mobius_table(std::uint64_t limit);

/// Sum of divisors sigma(n).
std::uint64_t divisor_sum(std::uint64_t n);

}  // namespace perigee
