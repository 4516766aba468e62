#include "perigee/real.hpp"

#include "perigee/error.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace perigee {

namespace {

void widen_to(mpfr_ptr x, mpfr_prec_t bits) {
    if (mpfr_get_prec(x) < bits) mpfr_prec_round(x, bits, MPFR_RNDN);
}

}  // namespace

Real::Real(long precision_bits) {
    mpfr_init2(value_, precision_bits);
    mpfr_set_zero(value_, 1);
}

Real::Real(const mpz_class& value, long precision_bits, mpfr_rnd_t rnd) {
    mpfr_init2(value_, precision_bits);
    mpfr_set_z(value_, value.get_mpz_t(), rnd);
}

Real::Real(const mpq_class& value, long precision_bits, mpfr_rnd_t rnd) {
    mpfr_init2(value_, precision_bits);
    mpfr_set_q(value_, value.get_mpq_t(), rnd);
}

Real::Real(double value, long precision_bits) {
    mpfr_init2(value_, precision_bits);
    mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(const Real& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    // Steal the limbs; leave `other` as a valid minimal-precision zero.
    *value_ = *other.value_;
    mpfr_init2(other.value_, MPFR_PREC_MIN);
    mpfr_set_zero(other.value_, 1);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    if (this != &other) mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

mpz_class Real::floor() const {
    if (!is_finite()) throw DomainError("floor of a non-finite value");
    mpz_class out;
    mpfr_get_z(out.get_mpz_t(), value_, MPFR_RNDD);
    return out;
}

Real Real::log(const mpz_class& positive, long precision_bits, mpfr_rnd_t rnd) {
    if (sgn(positive) <= 0) throw DomainError("log of a nonpositive integer");
    // Round the argument in the same direction as the result so that
    // directed rounding stays an enclosure.
    Real x(positive, precision_bits, rnd == MPFR_RNDU ? MPFR_RNDU : (rnd == MPFR_RNDD ? MPFR_RNDD : MPFR_RNDN));
    mpfr_log(x.value_, x.value_, rnd);
    return x;
}

Real Real::log(const Real& x, mpfr_rnd_t rnd) {
    Real out(x.precision());
    mpfr_log(out.value_, x.value_, rnd);
    return out;
}

Real Real::exp(const Real& x, mpfr_rnd_t rnd) {
    Real out(x.precision());
    mpfr_exp(out.value_, x.value_, rnd);
    return out;
}

Real Real::abs(const Real& x) {
    Real out(x.precision());
    mpfr_abs(out.value_, x.value_, MPFR_RNDN);
    return out;
}

Real Real::infinity(long precision_bits, int sign) {
    Real out(precision_bits);
    mpfr_set_inf(out.value_, sign);
    return out;
}

Real Real::ln2(long precision_bits, mpfr_rnd_t rnd) {
    Real out(precision_bits);
    mpfr_const_log2(out.value_, rnd);
    return out;
}

Real& Real::operator+=(const Real& rhs) {
    widen_to(value_, mpfr_get_prec(rhs.value_));
    mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& rhs) {
    widen_to(value_, mpfr_get_prec(rhs.value_));
    mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& rhs) {
    widen_to(value_, mpfr_get_prec(rhs.value_));
    mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& rhs) {
    widen_to(value_, mpfr_get_prec(rhs.value_));
    mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real Real::operator-() const {
    Real out(*this);
    mpfr_neg(out.value_, out.value_, MPFR_RNDN);
    return out;
}

std::string format_decimal(const Real& x, long precision_bits) {
    if (mpfr_nan_p(x.get())) return "nan";
    if (mpfr_inf_p(x.get())) return x.sign() > 0 ? "inf" : "-inf";
    if (x.is_zero()) return "0";

    const auto digits = static_cast<std::size_t>(
        std::max(1.0, std::floor(static_cast<double>(precision_bits) * std::log10(2.0))));
    mpfr_exp_t exponent = 0;
    std::unique_ptr<char, void (*)(char*)> raw(
        mpfr_get_str(nullptr, &exponent, 10, digits, x.get(), MPFR_RNDN), mpfr_free_str);

    std::string mantissa(raw.get());
    std::string sign;
    if (!mantissa.empty() && mantissa.front() == '-') {
        sign = "-";
        mantissa.erase(0, 1);
    }

    // value = 0.mantissa * 10^exponent
    std::string out;
    if (exponent <= 0) {
        out = "0." + std::string(static_cast<std::size_t>(-exponent), '0') + mantissa;
    } else if (static_cast<std::size_t>(exponent) >= mantissa.size()) {
        out = mantissa + std::string(static_cast<std::size_t>(exponent) - mantissa.size(), '0');
    } else {
        const auto split = static_cast<std::size_t>(exponent);
        out = mantissa.substr(0, split) + "." + mantissa.substr(split);
    }

    if (out.find('.') != std::string::npos) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return sign + out;
}

// ---------------------------------------------------------------------------
// Interval

Interval::Interval(long precision_bits) : lower_(precision_bits), upper_(precision_bits) {}

Interval::Interval(Real lower, Real upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (upper_ < lower_) throw DomainError("interval with lower > upper");
}

Interval Interval::point(const mpz_class& value, long precision_bits) {
    return Interval(Real(value, precision_bits, MPFR_RNDD), Real(value, precision_bits, MPFR_RNDU));
}

Interval Interval::point(const mpq_class& value, long precision_bits) {
    return Interval(Real(value, precision_bits, MPFR_RNDD), Real(value, precision_bits, MPFR_RNDU));
}

Interval Interval::log(const mpz_class& positive, long precision_bits) {
    return Interval(Real::log(positive, precision_bits, MPFR_RNDD),
                    Real::log(positive, precision_bits, MPFR_RNDU));
}

Interval Interval::log(const Interval& positive) {
    if (positive.lower_.sign() <= 0) throw DomainError("log of an interval reaching zero");
    return Interval(Real::log(positive.lower_, MPFR_RNDD), Real::log(positive.upper_, MPFR_RNDU));
}

Real Interval::width() const {
    Real w(upper_.precision());
    mpfr_sub(w.get(), upper_.get(), lower_.get(), MPFR_RNDU);
    return w;
}

Real Interval::midpoint() const {
    Real m = lower_ + upper_;
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m;
}

std::optional<mpz_class> Interval::decided_floor() const {
    if (!lower_.is_finite() || !upper_.is_finite()) return std::nullopt;
    mpz_class lo = lower_.floor();
    if (lo != upper_.floor()) return std::nullopt;
    return lo;
}

std::optional<int> Interval::decided_sign() const {
    if (lower_.sign() > 0) return 1;
    if (upper_.sign() < 0) return -1;
    if (lower_.is_zero() && upper_.is_zero()) return 0;
    return std::nullopt;
}

Interval& Interval::operator+=(const Interval& rhs) {
    widen_to(lower_.get(), mpfr_get_prec(rhs.lower_.get()));
    widen_to(upper_.get(), mpfr_get_prec(rhs.upper_.get()));
    mpfr_add(lower_.get(), lower_.get(), rhs.lower_.get(), MPFR_RNDD);
    mpfr_add(upper_.get(), upper_.get(), rhs.upper_.get(), MPFR_RNDU);
    return *this;
}

Interval& Interval::operator-=(const Interval& rhs) {
    widen_to(lower_.get(), mpfr_get_prec(rhs.upper_.get()));
    widen_to(upper_.get(), mpfr_get_prec(rhs.lower_.get()));
    mpfr_sub(lower_.get(), lower_.get(), rhs.upper_.get(), MPFR_RNDD);
    mpfr_sub(upper_.get(), upper_.get(), rhs.lower_.get(), MPFR_RNDU);
    return *this;
}

namespace {

using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

// Min/max of the four endpoint combinations, each rounded outward.
Interval endpoint_hull(const Interval& a, const Interval& b, BinaryOp op) {
    const long bits = std::max(a.precision(), b.precision());
    const Real* lhs[2] = {&a.lower(), &a.upper()};
    const Real* rhs[2] = {&b.lower(), &b.upper()};
    Real lo = Real::infinity(bits, 1);
    Real hi = Real::infinity(bits, -1);
    Real t(bits);
    for (const Real* x : lhs) {
        for (const Real* y : rhs) {
            op(t.get(), x->get(), y->get(), MPFR_RNDD);
            if (t < lo) lo = t;
            op(t.get(), x->get(), y->get(), MPFR_RNDU);
            if (t > hi) hi = t;
        }
    }
    return Interval(std::move(lo), std::move(hi));
}

}  // namespace

Interval& Interval::operator*=(const Interval& rhs) {
    *this = endpoint_hull(*this, rhs, mpfr_mul);
    return *this;
}

Interval& Interval::operator/=(const Interval& rhs) {
    if (rhs.contains_zero()) throw DomainError("interval division by an interval containing zero");
    *this = endpoint_hull(*this, rhs, mpfr_div);
    return *this;
}

}  // namespace perigee
