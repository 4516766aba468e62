#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace perigee {

/// Parses `a/b`, an integer, or a decimal literal such as `0.6931` into an
/// exact rational. Throws ParseError.
mpq_class parse_rational(std::string_view text);

/// The prescribed logarithmic growth rate C in [0, inf].
class GrowthTarget {
public:
    enum class Kind { zero, finite, infinite };

    static GrowthTarget zero() { return GrowthTarget(Kind::zero, 0); }
    static GrowthTarget infinite() { return GrowthTarget(Kind::infinite, 0); }
    /// Throws DomainError unless c > 0.
    static GrowthTarget finite(const mpq_class& c);

    /// `zero`, `infinite` (also `inf`), or an exact rational (`0` maps to zero).
    static GrowthTarget parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    bool is_finite() const noexcept { return kind_ == Kind::finite; }
    /// The rational C; only meaningful for finite targets.
    const mpq_class& value() const noexcept { return value_; }

    /// `zero`, `infinite`, or the canonical `a/b` form.
    std::string to_string() const;
    std::string_view kind_name() const noexcept;

    friend bool operator==(const GrowthTarget& a, const GrowthTarget& b) {
        return a.kind_ == b.kind_ && a.value_ == b.value_;
    }

private:
    GrowthTarget(Kind kind, mpq_class value) : kind_(kind), value_(std::move(value)) {}

    Kind kind_;
    mpq_class value_;
};

}  // namespace perigee
