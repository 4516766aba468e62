#pragma once

// File formats shared by the library and the CLI:
//   * sequence CSV: header `n,value`, rows n = 1, 2, ... with exact integers;
//   * plan JSON: {target: {kind, value?}, strategy, N, components: [{n, p, g, K, multiplier}]},
//     every integer a decimal string;
//   * zeta series CSV: `m,numerator,denominator`;
//   * rationality probe JSON: {verdict, num_coeffs?, den_coeffs?}.

#include "perigee/construction.hpp"
#include "perigee/orbits.hpp"
#include "perigee/zeta.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace perigee {

/// Throws ParseError with the offending line number.
CountSequence read_sequence_csv(std::istream& in, SequenceKind kind = SequenceKind::fixed);
CountSequence read_sequence_csv_file(const std::string& path, SequenceKind kind = SequenceKind::fixed);
void write_sequence_csv(std::ostream& out, const CountSequence& sequence);

nlohmann::ordered_json plan_to_json(const ConstructionPlan& plan);
/// Throws ParseError on missing fields or malformed integers.
ConstructionPlan plan_from_json(const nlohmann::ordered_json& json);
ConstructionPlan read_plan_file(const std::string& path);

void write_zeta_csv(std::ostream& out, const ZetaSeries& series);
nlohmann::ordered_json probe_to_json(const RationalityProbe& probe);

std::string_view verdict_name(RationalityVerdict verdict);

}  // namespace perigee
