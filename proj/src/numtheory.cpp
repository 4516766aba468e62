#include "perigee/numtheory.hpp"

#include "perigee/error.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>

namespace perigee {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr std::array<u64, 16> kSmallPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

// Jaeschke/Sinclair: this base set is a complete witness set for n < 2^64.
constexpr std::array<u64, 7> kWitnesses64 = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};

// First 13 primes: complete witness set below 3317044064679887385961981.
constexpr std::array<unsigned long, 13> kWitnessesWide = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod64(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool fits_u64(const mpz_class& n) { return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

u64 to_u64(const mpz_class& n) {
    // mpz_get_ui is 64-bit on LP64 targets.
    static_assert(sizeof(unsigned long) == sizeof(u64));
    return mpz_get_ui(n.get_mpz_t());
}

mpz_class from_u64(u64 n) {
    mpz_class out;
    mpz_set_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

bool strong_probable_prime(u64 n, u64 a, u64 d, int s) {
    u64 x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

bool strong_probable_prime(const mpz_class& n, unsigned long a, const mpz_class& d, unsigned long s) {
    const mpz_class n_minus_1 = n - 1;
    mpz_class x;
    const mpz_class base = a;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n_minus_1) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Pollard-Brent rho

class RhoBudget {
public:
    explicit RhoBudget(u64 limit) : left_(limit) {}
    void spend(u64 steps) {
        if (steps > left_) throw BudgetExceeded("Pollard rho iteration budget exhausted");
        left_ -= steps;
    }

private:
    u64 left_;
};

u64 gcd64(u64 a, u64 b) {
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

// Returns a nontrivial factor of the odd composite n.
u64 rho_split(u64 n, RhoBudget& budget) {
    constexpr u64 kBatch = 128;
    for (u64 c = 1;; ++c) {
        auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        u64 y = 2, x = 2, ys = 2, g = 1, q = 1;
        for (u64 r = 1; g == 1; r <<= 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = step(y);
            for (u64 k = 0; k < r && g == 1; k += kBatch) {
                ys = y;
                const u64 len = std::min(kBatch, r - k);
                for (u64 i = 0; i < len; ++i) {
                    y = step(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                budget.spend(len);
                g = gcd64(q, n);
            }
        }
        if (g == n) {
            do {
                ys = step(ys);
                g = gcd64(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

mpz_class rho_split(const mpz_class& n, RhoBudget& budget) {
    constexpr u64 kBatch = 128;
    mpz_class y, x, ys, g, q, diff;
    for (unsigned long c = 1;; ++c) {
        auto step = [&](mpz_class& v) {
            v = v * v + c;
            v %= n;
        };
        y = 2;
        g = 1;
        q = 1;
        for (u64 r = 1; g == 1; r <<= 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) step(y);
            for (u64 k = 0; k < r && g == 1; k += kBatch) {
                ys = y;
                const u64 len = std::min(kBatch, r - k);
                for (u64 i = 0; i < len; ++i) {
                    step(y);
                    diff = x - y;
                    q = q * abs(diff) % n;
                }
                budget.spend(len);
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g == n) {
            do {
                step(ys);
                diff = x - ys;
                diff = abs(diff);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

using FactorMap = std::map<mpz_class, u64>;

void split_cofactor(const mpz_class& n, FactorMap& out, RhoBudget& budget) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    mpz_class factor;
    if (fits_u64(n)) {
        factor = from_u64(rho_split(to_u64(n), budget));
    } else {
        factor = rho_split(n, budget);
    }
    split_cofactor(factor, out, budget);
    split_cofactor(n / factor, out, budget);
}

}  // namespace

// ---------------------------------------------------------------------------
// FactoredNatural

FactoredNatural FactoredNatural::prime_power(const mpz_class& prime, std::uint64_t exponent) {
    FactoredNatural out;
    if (exponent > 0) out.factors_.push_back({prime, exponent});
    return out;
}

FactoredNatural& FactoredNatural::operator*=(const FactoredNatural& rhs) {
    std::vector<PrimePower> merged;
    merged.reserve(factors_.size() + rhs.factors_.size());
    auto a = factors_.begin();
    auto b = rhs.factors_.begin();
    while (a != factors_.end() || b != rhs.factors_.end()) {
        if (b == rhs.factors_.end() || (a != factors_.end() && a->prime < b->prime)) {
            merged.push_back(*a++);
        } else if (a == factors_.end() || b->prime < a->prime) {
            merged.push_back(*b++);
        } else {
            merged.push_back({a->prime, a->exponent + b->exponent});
            ++a;
            ++b;
        }
    }
    factors_ = std::move(merged);
    return *this;
}

mpz_class FactoredNatural::value() const {
    mpz_class out = 1;
    mpz_class power;
    for (const auto& f : factors_) {
        mpz_pow_ui(power.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
        out *= power;
    }
    return out;
}

Interval FactoredNatural::log_enclosure(long precision_bits) const {
    Interval total = Interval::point(mpz_class(0), precision_bits);
    for (const auto& f : factors_) {
        total += Interval::log(f.prime, precision_bits) * Interval::point(from_u64(f.exponent), precision_bits);
    }
    return total;
}

Real FactoredNatural::log(long precision_bits) const {
    // Extra guard bits so the sum is accurate to the requested precision.
    const long work = precision_bits + 32;
    Real total(work);
    for (const auto& f : factors_) {
        total += Real::log(f.prime, work) * Real(from_u64(f.exponent), work);
    }
    mpfr_prec_round(total.get(), precision_bits, MPFR_RNDN);
    return total;
}

std::string FactoredNatural::to_string() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (const auto& f : factors_) {
        if (!out.empty()) out += '*';
        out += f.prime.get_str() + '^' + std::to_string(f.exponent);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Primality

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (u64 p : kSmallPrimes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 59 * 59) return true;

    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : kWitnesses64) {
        const u64 base = a % n;
        if (base == 0) continue;
        if (!strong_probable_prime(n, base, d, s)) return false;
    }
    return true;
}

const mpz_class& deterministic_primality_limit() {
    static const mpz_class limit("3317044064679887385961981", 10);
    return limit;
}

bool is_prime(const mpz_class& n) {
    if (n < 2) return false;
    if (fits_u64(n)) return is_prime(to_u64(n));
    for (u64 p : kSmallPrimes) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) return false;
    }
    if (n < deterministic_primality_limit()) {
        mpz_class d = n - 1;
        const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
        mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
        return std::all_of(kWitnessesWide.begin(), kWitnessesWide.end(),
                           [&](unsigned long a) { return strong_probable_prime(n, a, d, s); });
    }
    // GMP >= 6.2: trial division, Baillie-PSW, then (reps - 24) Miller-Rabin
    // rounds with GMP's internal fixed-seed generator.
    return mpz_probab_prime_p(n.get_mpz_t(), 64 + 24) != 0;
}

// ---------------------------------------------------------------------------
// Prime search

PrimeInProgression least_prime_congruent_one(std::uint64_t n, const mpz_class& search_floor,
                                             std::uint64_t scan_ceiling) {
    if (n == 0) throw DomainError("least_prime_congruent_one: modulus must be positive");
    if (sgn(search_floor) < 0) throw DomainError("least_prime_congruent_one: negative search floor");

    const mpz_class modulus = from_u64(n);
    // Smallest k >= 0 with k*n + 1 > floor.
    mpz_class k = search_floor / modulus;
    if (k * modulus + 1 <= search_floor) ++k;

    PrimeInProgression out{n, 0, search_floor};

    const mpz_class last_candidate = (k + from_u64(scan_ceiling)) * modulus + 1;
    if (fits_u64(last_candidate)) {
        u64 candidate = to_u64(k * modulus + 1);
        for (u64 scanned = 0; scanned < scan_ceiling; ++scanned, candidate += n) {
            if (is_prime(candidate)) {
                out.p = from_u64(candidate);
                return out;
            }
        }
    } else {
        mpz_class candidate = k * modulus + 1;
        for (u64 scanned = 0; scanned < scan_ceiling; ++scanned, candidate += modulus) {
            if (is_prime(candidate)) {
                out.p = candidate;
                return out;
            }
        }
    }
    throw BudgetExceeded("no prime = 1 mod " + std::to_string(n) + " above " + search_floor.get_str() +
                         " within " + std::to_string(scan_ceiling) + " candidates");
}

bool within_heath_brown_bound(const PrimeInProgression& prime, const mpz_class& constant) {
    mpz_class n_pow;
    const mpz_class modulus = from_u64(prime.modulus);
    mpz_pow_ui(n_pow.get_mpz_t(), modulus.get_mpz_t(), kHeathBrownExponentNumerator);
    return prime.p * prime.p <= constant * constant * n_pow;
}

Real heath_brown_ratio(const PrimeInProgression& prime, long precision_bits) {
    const long work = precision_bits + 16;
    mpz_class n_pow;
    const mpz_class modulus = from_u64(prime.modulus);
    mpz_pow_ui(n_pow.get_mpz_t(), modulus.get_mpz_t(), kHeathBrownExponentNumerator);
    Real denominator(n_pow, work);
    mpfr_sqrt(denominator.get(), denominator.get(), MPFR_RNDN);
    Real ratio = Real(prime.p, work) / denominator;
    mpfr_prec_round(ratio.get(), precision_bits, MPFR_RNDN);
    return ratio;
}

// ---------------------------------------------------------------------------
// Factorization and primitive roots

FactoredNatural factorize(const mpz_class& n, FactorBudget budget) {
    if (n <= 0) throw DomainError("factorize: argument must be positive");
    FactorMap found;
    mpz_class rest = n;

    if (fits_u64(rest)) {
        u64 r = to_u64(rest);
        for (u64 d = 2; d <= budget.trial_limit && d <= r / d; d += (d == 2 ? 1 : 2)) {
            while (r % d == 0) {
                ++found[from_u64(d)];
                r /= d;
            }
        }
        rest = from_u64(r);
    } else {
        for (u64 d = 2; d <= budget.trial_limit && rest >= from_u64(d) * d; d += (d == 2 ? 1 : 2)) {
            while (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(d))) {
                ++found[from_u64(d)];
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), static_cast<unsigned long>(d));
            }
        }
    }

    RhoBudget rho(budget.rho_iterations);
    split_cofactor(rest, found, rho);

    FactoredNatural out;
    for (const auto& [prime, exponent] : found) out *= FactoredNatural::prime_power(prime, exponent);
    return out;
}

mpz_class powmod(const mpz_class& base, const mpz_class& exponent, const mpz_class& modulus) {
    mpz_class out;
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
    return out;
}

PrimitiveRootCert primitive_root(const mpz_class& p, FactorBudget budget) {
    if (!is_prime(p)) throw DomainError("primitive_root: " + p.get_str() + " is not prime");
    PrimitiveRootCert cert{p, 1, factorize(p - 1, budget)};
    if (p == 2) return cert;

    const mpz_class order = p - 1;
    for (mpz_class g = 2; g < p; ++g) {
        const bool generates = std::all_of(cert.factorization.factors().begin(), cert.factorization.factors().end(),
                                           [&](const PrimePower& f) { return powmod(g, order / f.prime, p) != 1; });
        if (generates) {
            cert.g = g;
            return cert;
        }
    }
    throw DomainError("primitive_root: no generator found for " + p.get_str());
}

bool verify_certificate(const PrimitiveRootCert& cert) {
    if (!is_prime(cert.p)) return false;
    if (cert.g < 1 || cert.g >= cert.p) return false;
    if (cert.factorization.value() != cert.p - 1) return false;
    if (powmod(cert.g, cert.p - 1, cert.p) != 1) return false;
    for (const auto& f : cert.factorization.factors()) {
        if (!is_prime(f.prime)) return false;
        if (powmod(cert.g, (cert.p - 1) / f.prime, cert.p) == 1) return false;
    }
    return true;
}

mpz_class element_of_order(const mpz_class& p, const mpz_class& g, std::uint64_t n) {
    const mpz_class order = p - 1;
    const mpz_class divisor = from_u64(n);
    if (n == 0 || !mpz_divisible_p(order.get_mpz_t(), divisor.get_mpz_t())) {
        throw DomainError("element_of_order: " + std::to_string(n) + " does not divide " + order.get_str());
    }
    return powmod(g, order / divisor, p);
}

// ---------------------------------------------------------------------------
// Divisors and Möbius

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    if (n == 0) throw DomainError("divisors: argument must be positive");
    std::vector<u64> small, large;
    for (u64 d = 1; d <= n / d; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

int mobius(std::uint64_t n) {
    if (n == 0) throw DomainError("mobius: argument must be positive");
    int result = 1;
    for (u64 p = 2; p <= n / p; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

std::vector<int> mobius_table(std::uint64_t limit) {
    std::vector<int> mu(limit + 1, 0);
    if (limit == 0) return mu;
    std::vector<u64> primes;
    std::vector<bool> composite(limit + 1, false);
    mu[1] = 1;
    for (u64 i = 2; i <= limit; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            mu[i] = -1;
        }
        for (u64 p : primes) {
            if (p > limit / i) break;
            composite[i * p] = true;
            if (i % p == 0) {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = -mu[i];
        }
    }
    return mu;
}

std::uint64_t divisor_sum(std::uint64_t n) {
    u64 total = 0;
    for (u64 d : divisors(n)) total += d;
    return total;
}

}  // namespace perigee
