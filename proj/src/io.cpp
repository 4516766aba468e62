#include "perigee/io.hpp"

#include "perigee/error.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace perigee {

using nlohmann::ordered_json;

namespace {

std::string strip(std::string s) {
    const auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && space(s.back())) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && space(s[start])) ++start;
    return s.substr(start);
}

mpz_class parse_integer(const std::string& text, const std::string& where) {
    std::string body = text;
    if (!body.empty() && body.front() == '+') body.erase(0, 1);
    mpz_class value;
    if (body.empty() || value.set_str(body, 10) != 0) throw ParseError(where + ": invalid integer '" + text + "'");
    return value;
}

std::uint64_t parse_index(const std::string& text, const std::string& where) {
    const mpz_class value = parse_integer(text, where);
    if (sgn(value) < 0 || !value.fits_ulong_p()) throw ParseError(where + ": index out of range '" + text + "'");
    return value.get_ui();
}

std::string integer_field(const ordered_json& object, const char* key, const std::string& where) {
    if (!object.is_object() || !object.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
    const auto& value = object.at(key);
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_integer()) return value.dump();
    throw ParseError(where + ": field '" + key + "' must be a decimal string");
}

}  // namespace

CountSequence read_sequence_csv(std::istream& in, SequenceKind kind) {
    CountSequence out{kind, {}};
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip(line);
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(line_no);
        if (!header) {
            std::string compact;
            for (char c : line) {
                if (c != ' ' && c != '\t') compact += c;
            }
            if (compact != "n,value") throw ParseError(where + ": expected header 'n,value'");
            header = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw ParseError(where + ": expected two columns");
        }
        const std::uint64_t n = parse_index(strip(line.substr(0, comma)), where);
        if (n != out.values.size() + 1) {
            throw ParseError(where + ": expected n = " + std::to_string(out.values.size() + 1) + ", got " +
                             std::to_string(n));
        }
        out.values.push_back(parse_integer(strip(line.substr(comma + 1)), where));
    }
    if (!header) throw ParseError("sequence CSV: missing header 'n,value'");
    return out;
}

CountSequence read_sequence_csv_file(const std::string& path, SequenceKind kind) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open sequence file '" + path + "'");
    return read_sequence_csv(in, kind);
}

void write_sequence_csv(std::ostream& out, const CountSequence& sequence) {
    out << "n,value\n";
    for (std::size_t n = 1; n <= sequence.horizon(); ++n) out << n << ',' << sequence.values[n - 1].get_str() << '\n';
}

ordered_json plan_to_json(const ConstructionPlan& plan) {
    ordered_json target{{"kind", std::string(plan.target.kind_name())}};
    if (plan.target.is_finite()) target["value"] = plan.target.value().get_str();
    ordered_json components = ordered_json::array();
    for (const auto& c : plan.components) {
        components.push_back({{"n", std::to_string(c.n)},
                              {"p", c.p.get_str()},
                              {"g", c.g.get_str()},
                              {"K", std::to_string(c.K)},
                              {"multiplier", c.multiplier.get_str()}});
    }
    return {{"target", target},
            {"strategy", plan.strategy.to_string()},
            {"N", std::to_string(plan.horizon)},
            {"components", components}};
}

ConstructionPlan plan_from_json(const ordered_json& json) {
    if (!json.is_object()) throw ParseError("plan: expected a JSON object");
    if (!json.contains("target") || !json.at("target").is_object()) throw ParseError("plan: missing 'target'");
    const auto& target_json = json.at("target");
    if (!target_json.contains("kind") || !target_json.at("kind").is_string()) {
        throw ParseError("plan: target needs a string 'kind'");
    }
    const std::string kind = target_json.at("kind").get<std::string>();

    ConstructionPlan plan;
    try {
        if (kind == "zero") {
            plan.target = GrowthTarget::zero();
        } else if (kind == "infinite") {
            plan.target = GrowthTarget::infinite();
        } else if (kind == "finite") {
            if (!target_json.contains("value") || !target_json.at("value").is_string()) {
                throw ParseError("plan: finite target needs a string 'value'");
            }
            plan.target = GrowthTarget::finite(parse_rational(target_json.at("value").get<std::string>()));
        } else {
            throw ParseError("plan: unknown target kind '" + kind + "'");
        }
        if (!json.contains("strategy") || !json.at("strategy").is_string()) throw ParseError("plan: missing 'strategy'");
        plan.strategy = Strategy::parse(json.at("strategy").get<std::string>());
    } catch (const DomainError& e) {
        throw ParseError(std::string("plan: ") + e.what());
    }

    plan.horizon = parse_index(integer_field(json, "N", "plan"), "plan N");
    if (!json.contains("components") || !json.at("components").is_array()) throw ParseError("plan: missing 'components'");
    for (const auto& entry : json.at("components")) {
        const std::string where = "plan component " + std::to_string(plan.components.size() + 1);
        ComponentSpec c;
        c.n = parse_index(integer_field(entry, "n", where), where);
        c.p = parse_integer(integer_field(entry, "p", where), where);
        c.g = parse_integer(integer_field(entry, "g", where), where);
        c.K = parse_index(integer_field(entry, "K", where), where);
        c.multiplier = parse_integer(integer_field(entry, "multiplier", where), where);
        if (c.n != plan.components.size() + 1) throw ParseError(where + ": components must be listed n = 1, 2, ...");
        plan.components.push_back(std::move(c));
    }
    if (plan.components.size() != plan.horizon) throw ParseError("plan: N differs from the number of components");
    return plan;
}

ConstructionPlan read_plan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open plan file '" + path + "'");
    ordered_json json;
    try {
        in >> json;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("plan file '" + path + "': " + e.what());
    }
    return plan_from_json(json);
}

void write_zeta_csv(std::ostream& out, const ZetaSeries& series) {
    out << "m,numerator,denominator\n";
    for (std::size_t m = 0; m < series.coefficients.size(); ++m) {
        const auto& c = series.coefficients[m];
        out << m << ',' << c.get_num().get_str() << ',' << c.get_den().get_str() << '\n';
    }
}

std::string_view verdict_name(RationalityVerdict verdict) {
    return verdict == RationalityVerdict::consistent_with_rational ? "consistent-with-rational"
                                                                   : "no-low-order-recurrence";
}

ordered_json probe_to_json(const RationalityProbe& probe) {
    ordered_json out{{"verdict", std::string(verdict_name(probe.verdict))}};
    if (probe.verdict == RationalityVerdict::consistent_with_rational) {
        auto coeffs = [](const QPoly& p) {
            ordered_json list = ordered_json::array();
            for (const auto& c : p) list.push_back(c.get_str());
            return list;
        };
        out["num_coeffs"] = coeffs(probe.numerator);
        out["den_coeffs"] = coeffs(probe.denominator);
    }
    return out;
}

}  // namespace perigee
