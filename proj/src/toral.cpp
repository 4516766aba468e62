#include "perigee/toral.hpp"

#include "perigee/error.hpp"
#include "perigee/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace perigee {

namespace {

using Matrix = std::vector<std::vector<mpz_class>>;

Matrix identity(std::size_t d) {
    Matrix m(d, std::vector<mpz_class>(d, 0));
    for (std::size_t i = 0; i < d; ++i) m[i][i] = 1;
    return m;
}

Matrix companion(const IntegerPolynomial& f) {
    const std::size_t d = f.degree();
    Matrix m(d, std::vector<mpz_class>(d, 0));
    for (std::size_t i = 1; i < d; ++i) m[i][i - 1] = 1;
    for (std::size_t i = 0; i < d; ++i) m[i][d - 1] = -f.coefficients()[i];
    return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    const std::size_t d = a.size();
    Matrix out(d, std::vector<mpz_class>(d, 0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            if (sgn(a[i][k]) == 0) continue;
            for (std::size_t j = 0; j < d; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    }
    return out;
}

Matrix power(Matrix base, std::uint64_t exponent) {
    Matrix result = identity(base.size());
    while (exponent != 0) {
        if (exponent & 1) result = multiply(result, base);
        exponent >>= 1;
        if (exponent != 0) base = multiply(base, base);
    }
    return result;
}

// Fraction-free (Bareiss) elimination; every division is exact.
mpz_class determinant(Matrix m) {
    const std::size_t d = m.size();
    mpz_class previous = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < d; ++k) {
        if (sgn(m[k][k]) == 0) {
            std::size_t pivot = k + 1;
            while (pivot < d && sgn(m[pivot][k]) == 0) ++pivot;
            if (pivot == d) return 0;
            std::swap(m[k], m[pivot]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < d; ++i) {
            for (std::size_t j = k + 1; j < d; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), previous.get_mpz_t());
            }
        }
        previous = m[k][k];
    }
    return sign * m[d - 1][d - 1];
}

mpz_class delta_from_power(const Matrix& power_n) {
    Matrix shifted = power_n;
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i][i] -= 1;
    return abs(determinant(std::move(shifted)));
}

// Res(a, b) over Q by the Euclidean recurrence
//   Res(a, b) = (-1)^{deg a deg b} lc(b)^{deg a - deg r} Res(b, r),  r = a mod b.
mpq_class resultant(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    mpq_class scale = 1;
    while (true) {
        const long da = degree(a);
        const long db = degree(b);
        if (da < 0 || db < 0) return 0;
        if (db == 0) {
            mpq_class lead_power = 1;
            for (long i = 0; i < da; ++i) lead_power *= b[0];
            return scale * lead_power;
        }
        QPoly r = divide(a, b).remainder;
        const long dr = degree(r);
        if (dr < 0) return 0;
        if ((da * db) % 2 != 0) scale = -scale;
        for (long i = 0; i < da - dr; ++i) scale *= b[static_cast<std::size_t>(db)];
        a = std::move(b);
        b = std::move(r);
    }
}

// x^n mod f for monic f.
ZPoly x_power_mod(const ZPoly& f, std::uint64_t n) {
    ZPoly result{1};
    ZPoly base = remainder_monic(ZPoly{0, 1}, f);
    while (n != 0) {
        if (n & 1) result = remainder_monic(perigee::multiply(result, base), f);
        n >>= 1;
        if (n != 0) base = remainder_monic(perigee::multiply(base, base), f);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Complex MPFR arithmetic for root isolation.

struct Complex {
    Real re;
    Real im;

    explicit Complex(long bits) : re(bits), im(bits) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    long bits() const { return re.precision(); }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        const Real denom = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / denom, (a.im * b.re - a.re * b.im) / denom};
    }

    Real modulus(mpfr_rnd_t rnd = MPFR_RNDN) const {
        Real out(bits());
        mpfr_hypot(out.get(), re.get(), im.get(), rnd);
        return out;
    }
};

Complex one(long bits) { return {Real(1.0, bits), Real(bits)}; }

struct Evaluation {
    Complex value;
    Complex slope;
    Real magnitude_sum;  // sum |c_k| |z|^k, for the Horner rounding bound
};

Evaluation evaluate(const std::vector<Real>& coefficients, const Complex& z) {
    const long bits = z.bits();
    Complex value(bits), slope(bits);
    Real magnitude(bits);
    const Real r = z.modulus(MPFR_RNDU);
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
        slope = slope * z + value;
        value = value * z + Complex(*it, Real(bits));
        magnitude = magnitude * r + Real::abs(*it);
    }
    return {std::move(value), std::move(slope), std::move(magnitude)};
}

std::vector<QPoly> squarefree_parts(const IntegerPolynomial& f) {
    // Yun's algorithm; parts[i] has multiplicity i + 1 (possibly constant 1).
    const QPoly p = to_rational(f.coefficients());
    const QPoly dp = derivative(p);
    const QPoly b = gcd(p, dp);
    QPoly c = divide(p, b).quotient;
    QPoly d = divide(dp, b).quotient;
    {
        const QPoly dc = derivative(c);
        d.resize(std::max(d.size(), dc.size()), mpq_class(0));
        for (std::size_t i = 0; i < dc.size(); ++i) d[i] -= dc[i];
        trim(d);
    }
    std::vector<QPoly> parts;
    while (degree(c) > 0) {
        const QPoly a = gcd(c, d);
        c = divide(c, a).quotient;
        d = divide(d, a).quotient;
        const QPoly dc = derivative(c);
        d.resize(std::max(d.size(), dc.size()), mpq_class(0));
        for (std::size_t i = 0; i < dc.size(); ++i) d[i] -= dc[i];
        trim(d);
        parts.push_back(a);
    }
    return parts;
}

struct ClusterOutcome {
    bool decided = false;
    std::vector<RootEnclosure> roots;
};

// Aberth iteration plus inclusion disks for one monic square-free factor.
ClusterOutcome isolate(const QPoly& factor, std::uint64_t multiplicity, long target_bits, long work_bits,
                       int max_iterations) {
    const std::size_t m = static_cast<std::size_t>(degree(factor));
    std::vector<Real> coefficients;
    coefficients.reserve(m + 1);
    for (const auto& c : factor) {
        if (c.get_den() != 1) throw DomainError("square-free part with non-integral coefficient");
        coefficients.emplace_back(c.get_num(), work_bits);
    }

    // Fujiwara-style radius for the initial circle.
    double radius = 0;
    for (std::size_t k = 1; k <= m; ++k) {
        const double c = std::fabs(coefficients[m - k].to_double());
        radius = std::max(radius, 2 * std::pow(c, 1.0 / static_cast<double>(k)));
    }
    radius = std::max(radius, 1.0);

    std::vector<Complex> z;
    for (std::size_t k = 0; k < m; ++k) {
        const double angle = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m) + 0.4;
        z.emplace_back(Real(radius * std::cos(angle), work_bits), Real(radius * std::sin(angle), work_bits));
    }

    Real tiny(1.0, work_bits);
    mpfr_mul_2si(tiny.get(), tiny.get(), -(work_bits - 8), MPFR_RNDN);

    for (int iteration = 0; iteration < max_iterations; ++iteration) {
        Real largest_step(work_bits);
        for (std::size_t i = 0; i < m; ++i) {
            const Evaluation e = evaluate(coefficients, z[i]);
            if (e.value.re.is_zero() && e.value.im.is_zero()) continue;
            const Complex newton = e.value / e.slope;
            Complex repulsion(work_bits);
            for (std::size_t j = 0; j < m; ++j) {
                if (j != i) repulsion = repulsion + one(work_bits) / (z[i] - z[j]);
            }
            const Complex step = newton / (one(work_bits) - newton * repulsion);
            z[i] = z[i] - step;
            Real relative = step.modulus() / std::max(z[i].modulus(), Real(1.0, work_bits));
            largest_step = std::max(largest_step, relative);
        }
        if (largest_step < tiny) break;
    }

    // Inclusion radii r_i = m |P(z_i)| / |prod_{j != i} (z_i - z_j)|, with the
    // Horner rounding error added to |P(z_i)|.
    Real unit_roundoff(1.0, work_bits);
    mpfr_mul_2si(unit_roundoff.get(), unit_roundoff.get(), -(work_bits - 1), MPFR_RNDU);
    const Real horner_factor = Real(static_cast<double>(8 * m + 8), work_bits) * unit_roundoff;

    std::vector<RootEnclosure> roots;
    for (std::size_t i = 0; i < m; ++i) {
        const Evaluation e = evaluate(coefficients, z[i]);
        Real residual = e.value.modulus(MPFR_RNDU) + horner_factor * e.magnitude_sum;
        Real product(1.0, work_bits);
        for (std::size_t j = 0; j < m; ++j) {
            if (j != i) product = product * (z[i] - z[j]).modulus(MPFR_RNDD);
        }
        if (product.is_zero()) return {};
        Real r = Real(static_cast<double>(m), work_bits) * residual / product;
        // Slack for rounding in the radius computation itself.
        mpfr_mul_d(r.get(), r.get(), 1.0 + 1e-9, MPFR_RNDU);
        roots.push_back({z[i].re, z[i].im, std::move(r), multiplicity, RootLocation::near_unit});
    }

    // Disjoint disks each hold exactly one root.
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const Real distance = (z[i] - z[j]).modulus(MPFR_RNDD);
            if (distance <= roots[i].radius + roots[j].radius) return {};
        }
    }

    Real slack(1.0, work_bits);
    mpfr_mul_2si(slack.get(), slack.get(), -target_bits, MPFR_RNDN);
    const Real unit(1.0, work_bits);
    for (std::size_t i = 0; i < m; ++i) {
        const Real modulus = z[i].modulus();
        const Real low = modulus - roots[i].radius;
        const Real high = modulus + roots[i].radius;
        if (low > unit) {
            roots[i].location = RootLocation::outside;
        } else if (high < unit) {
            roots[i].location = RootLocation::inside;
        } else if (unit - low <= slack && high - unit <= slack) {
            roots[i].location = RootLocation::near_unit;
        } else {
            return {};
        }
    }
    return {true, std::move(roots)};
}

}  // namespace

std::optional<std::uint64_t> cyclotomic_factor(const IntegerPolynomial& f) {
    const std::uint64_t d = f.degree();
    const QPoly p = to_rational(f.coefficients());
    const std::uint64_t limit = 2 * d * d + 6;
    for (std::uint64_t k = 1; k <= limit; ++k) {
        if (totient(k) > d) continue;
        if (degree(gcd(p, to_rational(cyclotomic(k)))) > 0) return k;
    }
    return std::nullopt;
}

mpz_class delta_n_determinant(const IntegerPolynomial& f, std::uint64_t n) {
    if (n == 0) throw DomainError("delta_n: n must be positive");
    return delta_from_power(power(companion(f), n));
}

mpz_class delta_n_resultant(const IntegerPolynomial& f, std::uint64_t n) {
    if (n == 0) throw DomainError("delta_n: n must be positive");
    ZPoly reduced = x_power_mod(f.coefficients(), n);
    if (reduced.empty()) reduced.push_back(0);
    reduced[0] -= 1;
    trim(reduced);
    const mpq_class res = resultant(to_rational(f.coefficients()), to_rational(reduced));
    if (res.get_den() != 1) throw DomainError("non-integral resultant");
    return abs(res.get_num());
}

CountSequence toral_fix_sequence(const IntegerPolynomial& f, std::uint64_t horizon) {
    if (auto k = cyclotomic_factor(f)) {
        throw DegenerateError(*k, "polynomial " + f.to_string() + " shares a factor with cyclotomic polynomial Phi_" +
                                      std::to_string(*k));
    }
    CountSequence out{SequenceKind::fixed, {}};
    out.values.reserve(horizon);
    const Matrix m = companion(f);
    Matrix current = identity(f.degree());
    for (std::uint64_t n = 1; n <= horizon; ++n) {
        current = multiply(current, m);
        out.values.push_back(delta_from_power(current));
    }
    return out;
}

MahlerResult mahler_measure(const IntegerPolynomial& f, long precision_bits, RootFindingBudget budget) {
    const std::vector<QPoly> parts = squarefree_parts(f);

    MahlerResult result;
    result.precision_bits = precision_bits;
    result.measure = Real(precision_bits);
    result.error_bound = Real(precision_bits);

    long work = precision_bits + 64;
    for (int attempt = 0; attempt <= budget.max_precision_doublings; ++attempt, work *= 2) {
        std::vector<RootEnclosure> roots;
        bool decided = true;
        for (std::size_t i = 0; i < parts.size() && decided; ++i) {
            if (degree(parts[i]) < 1) continue;
            ClusterOutcome outcome = isolate(parts[i], i + 1, precision_bits, work, budget.max_iterations);
            decided = outcome.decided;
            for (auto& r : outcome.roots) roots.push_back(std::move(r));
        }
        if (!decided) continue;

        Real measure(work);
        Real error(work);
        Real slack(1.0, work);
        mpfr_mul_2si(slack.get(), slack.get(), -precision_bits, MPFR_RNDN);
        std::size_t near_unit = 0;
        for (const auto& root : roots) {
            const Real weight(static_cast<double>(root.multiplicity), work);
            const Complex z{root.re, root.im};
            const Real modulus = z.modulus();
            switch (root.location) {
                case RootLocation::outside: {
                    const Real low = Real::log(modulus - root.radius, MPFR_RNDD);
                    const Real high = Real::log(modulus + root.radius, MPFR_RNDU);
                    measure += weight * Real::log(modulus);
                    error += weight * std::max(high - Real::log(modulus), Real::log(modulus) - low);
                    break;
                }
                case RootLocation::near_unit:
                    near_unit += root.multiplicity;
                    // log(1 + 2^-bits) < 2^-bits
                    error += weight * slack;
                    break;
                case RootLocation::inside: break;
            }
        }
        mpfr_prec_round(measure.get(), precision_bits, MPFR_RNDN);
        // one ulp of the rounded sum absorbs the final rounding and the
        // working-precision error of the logs (work >= precision + 64)
        if (!measure.is_zero()) {
            Real ulp(1.0, work);
            mpfr_mul_2si(ulp.get(), ulp.get(), mpfr_get_exp(measure.get()) - precision_bits, MPFR_RNDN);
            mpfr_add(error.get(), error.get(), ulp.get(), MPFR_RNDU);
        }
        mpfr_prec_round(error.get(), precision_bits, MPFR_RNDU);
        result.measure = std::move(measure);
        result.error_bound = std::move(error);
        result.roots = std::move(roots);
        result.near_unit = near_unit;
        return result;
    }
    throw BudgetExceeded("mahler_measure: roots of " + f.to_string() + " not isolated within the precision budget");
}

LehmerGrowthReport lehmer_growth_check(const IntegerPolynomial& f, std::uint64_t horizon, double tolerance,
                                       long precision_bits) {
    if (horizon == 0) throw DomainError("lehmer_growth_check: horizon must be positive");
    if (auto k = cyclotomic_factor(f)) {
        throw DegenerateError(*k, "polynomial " + f.to_string() + " vanishes at a root of unity (Phi_" +
                                      std::to_string(*k) + ")");
    }
    const long work = precision_bits + 32;
    LehmerGrowthReport report;
    report.horizon = horizon;
    report.tolerance = tolerance;
    report.delta = delta_n_determinant(f, horizon);
    const Real n_real(mpz_class(static_cast<unsigned long>(horizon)), work);
    report.rate = Real::log(report.delta, work) / n_real;

    const MahlerResult mahler = mahler_measure(f, precision_bits);
    report.measure = mahler.measure;
    report.gap = Real::abs(report.rate - report.measure);
    report.within_tolerance = report.gap.to_double() < tolerance;

    if (mahler.near_unit == 0) {
        // delta = min over roots of |log|alpha||, from the certified disks.
        Real margin = Real::infinity(work);
        for (const auto& root : mahler.roots) {
            const Real modulus = Complex{root.re, root.im}.modulus();
            Real distance(work);
            if (root.location == RootLocation::outside) {
                distance = Real::log(modulus - root.radius, MPFR_RNDD);
            } else {
                distance = -Real::log(modulus + root.radius, MPFR_RNDU);
            }
            margin = std::min(margin, distance);
        }
        const Real one_real(1.0, work);
        const Real per_root = Real::ln2(work) - Real::log(one_real - Real::exp(-margin));
        const Real degree_real(static_cast<double>(f.degree()), work);
        Real bound = degree_real * per_root / n_real;
        report.within_envelope = report.gap <= bound;
        report.envelope_bound = std::move(bound);
    }
    return report;
}

}  // namespace perigee
