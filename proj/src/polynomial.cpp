#include "perigee/polynomial.hpp"

#include "perigee/error.hpp"
#include "perigee/numtheory.hpp"

#include <cctype>
#include <map>
#include <mutex>

namespace perigee {

namespace {

template <class T>
std::vector<T> multiply_dense(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<T> out(a.size() + b.size() - 1, T(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    trim(out);
    return out;
}

struct ZDivision {
    ZPoly quotient;
    ZPoly remainder;
};

ZDivision divide_monic(const ZPoly& a, const ZPoly& divisor) {
    const long db = degree(divisor);
    if (db < 0 || divisor[static_cast<std::size_t>(db)] != 1) {
        throw DomainError("division by a non-monic integer polynomial");
    }
    ZPoly rem = a;
    trim(rem);
    ZPoly quot;
    const long da = degree(rem);
    if (da >= db) quot.assign(static_cast<std::size_t>(da - db + 1), mpz_class(0));
    for (long i = da; i >= db; --i) {
        const mpz_class lead = rem[static_cast<std::size_t>(i)];
        if (sgn(lead) == 0) continue;
        const auto shift = static_cast<std::size_t>(i - db);
        quot[shift] = lead;
        for (long j = 0; j <= db; ++j) rem[shift + static_cast<std::size_t>(j)] -= lead * divisor[static_cast<std::size_t>(j)];
    }
    trim(rem);
    trim(quot);
    return {std::move(quot), std::move(rem)};
}

std::string signed_term(const mpq_class& c, std::size_t power, std::string_view variable, bool first) {
    std::string out;
    mpq_class magnitude = abs(c);
    if (first) {
        if (sgn(c) < 0) out += "-";
    } else {
        out += sgn(c) < 0 ? " - " : " + ";
    }
    const bool unit = magnitude == 1;
    if (!unit || power == 0) out += magnitude.get_str();
    if (power > 0) {
        if (!unit) out += "*";
        out += variable;
        if (power > 1) out += "^" + std::to_string(power);
    }
    return out;
}

}  // namespace

ZPoly multiply(const ZPoly& a, const ZPoly& b) { return multiply_dense(a, b); }
QPoly multiply(const QPoly& a, const QPoly& b) { return multiply_dense(a, b); }

QPoly to_rational(const ZPoly& p) {
    QPoly out(p.begin(), p.end());
    return out;
}

ZPoly remainder_monic(const ZPoly& a, const ZPoly& monic_divisor) { return divide_monic(a, monic_divisor).remainder; }

ZPoly exact_quotient_monic(const ZPoly& a, const ZPoly& monic_divisor) {
    auto division = divide_monic(a, monic_divisor);
    if (!division.remainder.empty()) throw DomainError("inexact polynomial division");
    return std::move(division.quotient);
}

QDivision divide(const QPoly& a, const QPoly& b) {
    const long db = degree(b);
    if (db < 0) throw DomainError("polynomial division by zero");
    QPoly rem = a;
    trim(rem);
    QPoly quot;
    const long da = degree(rem);
    if (da >= db) quot.assign(static_cast<std::size_t>(da - db + 1), mpq_class(0));
    const mpq_class lead_b = b[static_cast<std::size_t>(db)];
    for (long i = da; i >= db; --i) {
        if (sgn(rem[static_cast<std::size_t>(i)]) == 0) continue;
        const mpq_class factor = rem[static_cast<std::size_t>(i)] / lead_b;
        const auto shift = static_cast<std::size_t>(i - db);
        quot[shift] = factor;
        for (long j = 0; j <= db; ++j) rem[shift + static_cast<std::size_t>(j)] -= factor * b[static_cast<std::size_t>(j)];
    }
    trim(rem);
    trim(quot);
    return {std::move(quot), std::move(rem)};
}

QPoly make_monic(QPoly p) {
    trim(p);
    if (p.empty()) return p;
    const mpq_class lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

QPoly gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = divide(a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(std::move(a));
}

QPoly derivative(const QPoly& p) {
    QPoly out;
    for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * static_cast<unsigned long>(i));
    trim(out);
    return out;
}

std::uint64_t totient(std::uint64_t k) {
    if (k == 0) throw DomainError("totient of zero");
    std::uint64_t result = k;
    const FactoredNatural factored = factorize(mpz_class(static_cast<unsigned long>(k)));
    for (const auto& f : factored.factors()) {
        const std::uint64_t p = f.prime.get_ui();
        result = result / p * (p - 1);
    }
    return result;
}

const ZPoly& cyclotomic(std::uint64_t k) {
    if (k == 0) throw DomainError("cyclotomic index must be positive");
    static std::mutex guard;
    static std::map<std::uint64_t, ZPoly> cache;
    {
        std::lock_guard lock(guard);
        if (auto it = cache.find(k); it != cache.end()) return it->second;
    }
    // x^k - 1 = prod_{d | k} Phi_d
    ZPoly value(static_cast<std::size_t>(k) + 1, mpz_class(0));
    value.front() = -1;
    value.back() = 1;
    for (std::uint64_t d : divisors(k)) {
        if (d == k) break;
        value = exact_quotient_monic(value, cyclotomic(d));
    }
    std::lock_guard lock(guard);
    return cache.emplace(k, std::move(value)).first->second;
}

std::string to_string(const QPoly& p, std::string_view variable) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (sgn(p[i]) == 0) continue;
        out += signed_term(p[i], i, variable, out.empty());
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------

IntegerPolynomial::IntegerPolynomial(ZPoly coefficients) : coefficients_(std::move(coefficients)) {
    trim(coefficients_);
    if (coefficients_.size() < 2) throw DomainError("polynomial must have degree >= 1");
    if (coefficients_.back() != 1) throw DomainError("polynomial must be monic (leading coefficient 1)");
}

IntegerPolynomial IntegerPolynomial::parse(std::string_view text) {
    ZPoly coefficients;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        std::string token(text.substr(start, comma - start));
        while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front()))) token.erase(0, 1);
        while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) token.pop_back();
        if (!token.empty() && token.front() == '+') token.erase(0, 1);
        mpz_class c;
        if (token.empty() || c.set_str(token, 10) != 0) {
            throw ParseError("invalid polynomial coefficient '" + token + "'");
        }
        coefficients.push_back(c);
        start = comma + 1;
    }
    return IntegerPolynomial(std::move(coefficients));
}

std::string IntegerPolynomial::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
        if (i) out += ',';
        out += coefficients_[i].get_str();
    }
    return out;
}

}  // namespace perigee
