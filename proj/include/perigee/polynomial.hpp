#pragma once

// Dense univariate polynomials over Z and Q, coefficients stored low to high.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace perigee {

using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

/// Drops high-order zero coefficients. The zero polynomial is empty.
template <class T>
void trim(std::vector<T>& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

/// Degree, or -1 for the zero polynomial.
template <class T>
long degree(const std::vector<T>& p) {
    long d = static_cast<long>(p.size()) - 1;
    while (d >= 0 && sgn(p[static_cast<std::size_t>(d)]) == 0) --d;
    return d;
}

ZPoly multiply(const ZPoly& a, const ZPoly& b);
QPoly multiply(const QPoly& a, const QPoly& b);
QPoly to_rational(const ZPoly& p);

/// Remainder of a modulo a monic integer polynomial (stays in Z[x]).
ZPoly remainder_monic(const ZPoly& a, const ZPoly& monic_divisor);
/// Quotient of an exact division by a monic integer polynomial; throws
/// DomainError if the remainder is nonzero.
ZPoly exact_quotient_monic(const ZPoly& a, const ZPoly& monic_divisor);

struct QDivision {
    QPoly quotient;
    QPoly remainder;
};
QDivision divide(const QPoly& a, const QPoly& b);

/// Monic greatest common divisor over Q (empty for gcd(0, 0)).
QPoly gcd(QPoly a, QPoly b);
QPoly derivative(const QPoly& p);
QPoly make_monic(QPoly p);

/// The k-th cyclotomic polynomial, built by exact division of x^k - 1.
const ZPoly& cyclotomic(std::uint64_t k);

/// Euler's totient.
std::uint64_t totient(std::uint64_t k);

/// `c0 + c1*z + ...` style rendering used in reports, variable name given.
std::string to_string(const QPoly& p, std::string_view variable = "z");

/// Monic integer polynomial of degree >= 1.
class IntegerPolynomial {
public:
    /// Throws DomainError unless the leading coefficient is 1 and the degree
    /// is at least 1. Trailing zero coefficients are trimmed first.
    explicit IntegerPolynomial(ZPoly coefficients);

    /// Comma-separated integer coefficients `c0,c1,...,cd` with cd = 1.
    /// Throws ParseError on malformed text, DomainError on a non-monic input.
    static IntegerPolynomial parse(std::string_view text);

    const ZPoly& coefficients() const noexcept { return coefficients_; }
    std::size_t degree() const noexcept { return coefficients_.size() - 1; }

    std::string to_string() const;

    friend IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b) {
        return IntegerPolynomial(multiply(a.coefficients_, b.coefficients_));
    }
    friend bool operator==(const IntegerPolynomial&, const IntegerPolynomial&) = default;

private:
    ZPoly coefficients_;
};

}  // namespace perigee
