#pragma once

#include "perigee/error.hpp"

#include <string>

namespace perigee {

template <class Enclose>
mpz_class decide_floor(Enclose&& enclose, PrecisionSchedule schedule) {
    for (long bits = schedule.initial_bits; bits <= schedule.max_bits; bits *= 2) {
        const Interval enclosure = enclose(bits);
        if (auto floor = enclosure.decided_floor()) return *floor;
    }
    throw BudgetExceeded("floor undecided at " + std::to_string(schedule.max_bits) +
                         " bits of precision");
}

template <class Enclose>
int decide_sign(Enclose&& enclose, PrecisionSchedule schedule) {
    for (long bits = schedule.initial_bits; bits <= schedule.max_bits; bits *= 2) {
        const Interval enclosure = enclose(bits);
        if (auto sign = enclosure.decided_sign()) return *sign;
    }
    throw BudgetExceeded("sign undecided at " + std::to_string(schedule.max_bits) +
                         " bits of precision");
}

}  // namespace perigee
