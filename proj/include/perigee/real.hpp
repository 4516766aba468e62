#pragma once

// High-precision reals and outward-rounded intervals on top of MPFR.
//
// Real is a value type (deep copies, RNDN arithmetic, result precision is the
// larger operand precision). Interval keeps [lower, upper] with lower rounded
// toward -inf and upper toward +inf on every operation, so the exact value of
// any expression built from exact inputs is always enclosed.

#include <mpfr.h>

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace perigee {

inline constexpr long kDefaultPrecisionBits = 128;

class Real {
public:
    explicit Real(long precision_bits = kDefaultPrecisionBits);
    Real(const mpz_class& value, long precision_bits, mpfr_rnd_t rnd = MPFR_RNDN);
    Real(const mpq_class& value, long precision_bits, mpfr_rnd_t rnd = MPFR_RNDN);
    Real(double value, long precision_bits);
    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    mpfr_ptr get() noexcept { return value_; }
    mpfr_srcptr get() const noexcept { return value_; }
    long precision() const noexcept { return static_cast<long>(mpfr_get_prec(value_)); }

    bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
    bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
    int sign() const noexcept { return mpfr_sgn(value_); }
    double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }

    /// Floor as an exact integer. Requires a finite value.
    mpz_class floor() const;

    static Real log(const mpz_class& positive, long precision_bits, mpfr_rnd_t rnd = MPFR_RNDN);
    static Real log(const Real& x, mpfr_rnd_t rnd = MPFR_RNDN);
    static Real exp(const Real& x, mpfr_rnd_t rnd = MPFR_RNDN);
    static Real abs(const Real& x);
    static Real infinity(long precision_bits, int sign = 1);
    static Real ln2(long precision_bits, mpfr_rnd_t rnd = MPFR_RNDN);

    Real& operator+=(const Real& rhs);
    Real& operator-=(const Real& rhs);
    Real& operator*=(const Real& rhs);
    Real& operator/=(const Real& rhs);

    friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
    friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
    friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
    friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }
    Real operator-() const;

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.value_, b.value_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.value_, b.value_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

private:
    mpfr_t value_;
};

/// Decimal rendering with a digit count derived from the precision:
/// floor(bits * log10(2)) significant digits, fixed-point notation,
/// trailing zeros after the point trimmed.
std::string format_decimal(const Real& x, long precision_bits);

/// Closed interval [lower, upper] with outward rounding.
class Interval {
public:
    explicit Interval(long precision_bits = kDefaultPrecisionBits);
    Interval(Real lower, Real upper);

    static Interval point(const mpz_class& value, long precision_bits);
    static Interval point(const mpq_class& value, long precision_bits);
    /// Enclosure of log(n) for an exact positive integer n.
    static Interval log(const mpz_class& positive, long precision_bits);
    static Interval log(const Interval& positive);

    const Real& lower() const noexcept { return lower_; }
    const Real& upper() const noexcept { return upper_; }
    long precision() const noexcept { return lower_.precision(); }
    Real width() const;
    Real midpoint() const;

    bool contains(const Real& x) const { return lower_ <= x && x <= upper_; }
    bool contains_zero() const { return lower_.sign() <= 0 && upper_.sign() >= 0; }

    /// Floor of the enclosed value if every point of the interval has the
    /// same floor.
    std::optional<mpz_class> decided_floor() const;
    /// -1, 0 (only for the degenerate point interval [0,0]) or +1 if the sign
    /// is constant over the interval.
    std::optional<int> decided_sign() const;

    Interval& operator+=(const Interval& rhs);
    Interval& operator-=(const Interval& rhs);
    Interval& operator*=(const Interval& rhs);
    /// Division by an interval that excludes zero.
    Interval& operator/=(const Interval& rhs);

    friend Interval operator+(Interval lhs, const Interval& rhs) { return lhs += rhs; }
    friend Interval operator-(Interval lhs, const Interval& rhs) { return lhs -= rhs; }
    friend Interval operator*(Interval lhs, const Interval& rhs) { return lhs *= rhs; }
    friend Interval operator/(Interval lhs, const Interval& rhs) { return lhs /= rhs; }

private:
    Real lower_;
    Real upper_;
};

/// Precision schedule for adaptive decisions: start at `initial_bits`,
/// double until a decision is reached or `max_bits` is exceeded.
struct PrecisionSchedule {
    long initial_bits = kDefaultPrecisionBits;
    long max_bits = 1L << 16;
};

/// Evaluates `enclose(bits)` at increasing precision until the enclosure has
/// a single floor. Throws BudgetExceeded past the schedule's cap.
template <class Enclose>
mpz_class decide_floor(Enclose&& enclose, PrecisionSchedule schedule = {});

/// Same, for the sign of a nonzero quantity.
template <class Enclose>
int decide_sign(Enclose&& enclose, PrecisionSchedule schedule = {});

}  // namespace perigee

#include "perigee/detail/real_decide.hpp"
