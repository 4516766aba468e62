#include "perigee/target.hpp"

#include "perigee/error.hpp"

#include <algorithm>
#include <cctype>

namespace perigee {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::string_view strip(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

mpq_class parse_rational(std::string_view text) {
    std::string_view body = strip(text);
    const std::string original(body);
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    mpq_class out;
    if (const auto slash = body.find('/'); slash != std::string_view::npos) {
        const auto num = body.substr(0, slash);
        const auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw ParseError("invalid rational '" + original + "'");
        const mpz_class denominator(std::string(den), 10);
        if (denominator == 0) throw ParseError("zero denominator in '" + original + "'");
        out = mpq_class(mpz_class(std::string(num), 10), denominator);
    } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
        const auto whole = body.substr(0, dot);
        const auto frac = body.substr(dot + 1);
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
            (whole.empty() && frac.empty())) {
            throw ParseError("invalid decimal '" + original + "'");
        }
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        const mpz_class digits(std::string(whole) + std::string(frac), 10);
        out = mpq_class(digits, scale);
    } else {
        if (!all_digits(body)) throw ParseError("invalid rational '" + original + "'");
        out = mpq_class(mpz_class(std::string(body), 10));
    }
    out.canonicalize();
    if (negative) out = -out;
    return out;
}

GrowthTarget GrowthTarget::finite(const mpq_class& c) {
    if (sgn(c) <= 0) throw DomainError("finite growth target must be positive, got " + c.get_str());
    mpq_class canonical = c;
    canonical.canonicalize();
    return GrowthTarget(Kind::finite, canonical);
}

GrowthTarget GrowthTarget::parse(std::string_view text) {
    const std::string_view body = strip(text);
    if (body == "zero") return zero();
    if (body == "infinite" || body == "inf" || body == "infinity") return infinite();
    const mpq_class value = parse_rational(body);
    if (sgn(value) == 0) return zero();
    return finite(value);
}

std::string GrowthTarget::to_string() const {
    switch (kind_) {
        case Kind::zero: return "zero";
        case Kind::infinite: return "infinite";
        case Kind::finite: break;
    }
    return value_.get_str();
}

std::string_view GrowthTarget::kind_name() const noexcept {
    switch (kind_) {
        case Kind::zero: return "zero";
        case Kind::finite: return "finite";
        case Kind::infinite: return "infinite";
    }
    return "finite";
}

}  // namespace perigee
