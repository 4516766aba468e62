#include "perigee/cli.hpp"

#include "perigee/construction.hpp"
#include "perigee/error.hpp"
#include "perigee/io.hpp"
#include "perigee/numtheory.hpp"
#include "perigee/orbits.hpp"
#include "perigee/toral.hpp"
#include "perigee/zeta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace perigee::cli {

using nlohmann::ordered_json;

namespace {

constexpr const char* kPrecisionEnv = "PERIGEE_PRECISION_BITS";

struct Table {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, ordered_json>> summary;

    void note(std::string key, ordered_json value) { summary.emplace_back(std::move(key), std::move(value)); }
};

std::string summary_text(const ordered_json& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_array()) {
        std::string text;
        for (const auto& item : value) {
            if (!text.empty()) text += ' ';
            text += summary_text(item);
        }
        return text.empty() ? "none" : text;
    }
    if (value.is_null()) return "n/a";
    return value.dump();
}

void emit(const Table& table, const std::string& format, std::ostream& out) {
    if (format == "json") {
        ordered_json rows = ordered_json::array();
        for (const auto& row : table.rows) {
            ordered_json object;
            for (std::size_t i = 0; i < table.columns.size(); ++i) object[table.columns[i]] = row[i];
            rows.push_back(std::move(object));
        }
        ordered_json summary = ordered_json::object();
        for (const auto& [key, value] : table.summary) summary[key] = value;
        ordered_json doc{{"command", table.command}, {"columns", table.columns}, {"rows", rows}, {"summary", summary}};
        out << doc.dump(2) << '\n';
        return;
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
    for (const auto& [key, value] : table.summary) out << "# " << key << ": " << summary_text(value) << '\n';
}

std::string decimal(const Real& x, long bits) { return format_decimal(x, bits); }

ordered_json index_list(const std::vector<std::uint64_t>& values) {
    ordered_json list = ordered_json::array();
    for (auto v : values) list.push_back(v);
    return list;
}

GrowthTarget resolve_target(const std::string& c_text, const std::string& target_text) {
    if (!c_text.empty() && !target_text.empty()) throw ParseError("give either --C or --target, not both");
    if (c_text.empty() && target_text.empty()) throw ParseError("a growth target is required (--C or --target)");
    return GrowthTarget::parse(c_text.empty() ? target_text : c_text);
}

Strategy resolve_strategy(const GrowthTarget& target, const std::string& text) {
    if (!text.empty()) return Strategy::parse(text);
    return target.kind() == GrowthTarget::Kind::infinite ? Strategy::infinite() : Strategy::paper();
}

// ---------------------------------------------------------------------------

struct ConstructArgs {
    std::string c;
    std::string target;
    std::string strategy;
    std::uint64_t max_n = 12;
    std::size_t window = 10;
    std::string plan_out;
};

Table cmd_construct(const ConstructArgs& a, long bits) {
    const GrowthTarget target = resolve_target(a.c, a.target);
    const Strategy strategy = resolve_strategy(target, a.strategy);
    if (a.max_n == 0) throw ParseError("--max-n must be positive");

    PlanOptions options;
    options.precision.initial_bits = bits;
    const ConstructionPlan plan = build_plan(target, strategy, a.max_n, options);

    if (!a.plan_out.empty()) {
        std::ofstream file(a.plan_out);
        if (!file) throw ParseError("cannot write plan file '" + a.plan_out + "'");
        file << plan_to_json(plan).dump(2) << '\n';
    }

    const CountSequence fixed = fixed_sequence(plan, plan.horizon);
    const CountSequence least = least_from_fixed(fixed);

    Table table{"construct", {"n", "p", "g", "K", "F_factored", "F_log", "L_exact", "L_claimed", "rate"}, {}, {}};
    std::optional<Real> deficit_min;
    std::optional<Real> deficit_max;
    for (std::uint64_t n = 1; n <= plan.horizon; ++n) {
        const ComponentSpec& c = plan.component(n);
        const FactoredNatural f = fixed_count(plan, n);
        const Real log_f = f.log(bits);
        const Real rate = log_f / Real(mpz_class(static_cast<unsigned long>(n)), bits);
        table.rows.push_back({std::to_string(n), c.p.get_str(), c.g.get_str(), std::to_string(c.K), f.to_string(),
                              decimal(log_f, bits), least[n].get_str(), least_count_claimed(plan, n).get_str(),
                              decimal(rate, bits)});
        if (target.is_finite()) {
            const Real deficit = Real(target.value() * static_cast<unsigned long>(n), bits) - log_f;
            if (!deficit_min || deficit < *deficit_min) deficit_min = deficit;
            if (!deficit_max || deficit > *deficit_max) deficit_max = deficit;
        }
    }

    const std::size_t window = std::min<std::size_t>(std::max<std::size_t>(a.window, 1), plan.horizon);
    const GrowthDiagnostics growth = growth_diagnostics(fixed, target, window, bits);
    const ClaimedVsExactReport claimed = claimed_vs_exact_report(plan, plan.horizon);

    table.note("target", target.to_string());
    table.note("strategy", strategy.to_string());
    table.note("N", plan.horizon);
    table.note("window", window);
    table.note("rate_window_inf", decimal(growth.window_inf, bits));
    table.note("rate_window_sup", decimal(growth.window_sup, bits));
    if (deficit_min) {
        table.note("deficit_min", decimal(*deficit_min, bits));
        table.note("deficit_max", decimal(*deficit_max, bits));
    }
    table.note("claimed_vs_exact_differing", claimed.differing);
    table.note("claimed_lower_bound_holds", claimed.all_lower_bounds);
    table.note("least_count_divisible", claimed.all_divisible);
    table.note("equality_characterization_holds", claimed.characterization);
    if (strategy.kind() == Strategy::Kind::compensated && target.is_finite()) {
        PrecisionSchedule schedule;
        schedule.initial_bits = bits;
        const EnvelopeReport envelope = compensated_envelope(plan, schedule);
        table.note("negative_budget_n", index_list(envelope.negative_budget));
        table.note("envelope_unverified_n", index_list(envelope.unverified));
    }
    return table;
}

struct OracleArgs {
    std::string plan;
    std::uint64_t components = 0;
    std::uint64_t max_n = 12;
    std::uint64_t budget = kDefaultEnumerationBudget;
};

Table cmd_oracle(const OracleArgs& a, bool& mismatch) {
    const ConstructionPlan plan = read_plan_file(a.plan);
    if (auto problem = validate_plan(plan)) throw ParseError("invalid plan: " + *problem);
    const std::uint64_t m = a.components == 0 ? plan.horizon : a.components;
    if (m > plan.horizon) throw ParseError("--components exceeds the plan horizon");
    if (a.max_n == 0) throw ParseError("--max-n must be positive");

    const OracleResult oracle = enumerate_oracle(plan, m, a.max_n, a.budget);
    CountSequence closed_fixed{SequenceKind::fixed, {}};
    for (std::uint64_t n = 1; n <= a.max_n; ++n) closed_fixed.values.push_back(truncated_fixed_count(plan, m, n));
    const CountSequence closed_least = least_from_fixed(closed_fixed);
    const bool inversion_consistent = least_from_fixed(oracle.fixed) == oracle.least;

    Table table{"oracle", {"n", "F_oracle", "F_closed", "L_oracle", "L_closed", "status"}, {}, {}};
    std::size_t mismatches = 0;
    for (std::uint64_t n = 1; n <= a.max_n; ++n) {
        const bool match = oracle.fixed[n] == closed_fixed[n] && oracle.least[n] == closed_least[n];
        if (!match) ++mismatches;
        table.rows.push_back({std::to_string(n), oracle.fixed[n].get_str(), closed_fixed[n].get_str(),
                              oracle.least[n].get_str(), closed_least[n].get_str(), match ? "MATCH" : "MISMATCH"});
    }
    table.note("components", m);
    table.note("group_order", oracle.group_order);
    table.note("oracle_inversion_consistent", inversion_consistent);
    table.note("mismatches", mismatches);
    mismatch = mismatches > 0 || !inversion_consistent;
    return table;
}

struct AnalyzeArgs {
    std::string sequence;
    std::size_t window = 10;
    std::string target;
};

Table cmd_analyze(const AnalyzeArgs& a, long bits) {
    const CountSequence fixed = read_sequence_csv_file(a.sequence);
    if (fixed.horizon() == 0) throw ParseError("sequence file has no rows");
    const std::optional<GrowthTarget> target =
        a.target.empty() ? std::nullopt : std::optional<GrowthTarget>(GrowthTarget::parse(a.target));
    const std::size_t window = std::min<std::size_t>(std::max<std::size_t>(a.window, 1), fixed.horizon());

    const CountSequence least = least_from_fixed(fixed);
    const RealizabilityReport realizable = realizability_check(fixed);
    const GrowthDiagnostics growth =
        growth_diagnostics(fixed, target.value_or(GrowthTarget::infinite()), window, bits);
    const SandwichReport sandwich = lemma_sandwich_check(fixed, least, window, bits);

    Table table{"analyze", {"n", "F", "L", "log_F", "rate", "realizable", "upper_holds", "lower_holds"}, {}, {}};
    std::size_t next_rate = 0;
    for (std::uint64_t n = 1; n <= fixed.horizon(); ++n) {
        std::string log_f;
        std::string rate;
        if (next_rate < growth.per_n.size() && growth.per_n[next_rate].n == n) {
            log_f = decimal(growth.per_n[next_rate].log_count, bits);
            rate = decimal(growth.per_n[next_rate].rate, bits);
            ++next_rate;
        }
        const auto& entry = realizable.entries[n - 1];
        const auto& sw = sandwich.entries[n - 1];
        table.rows.push_back({std::to_string(n), fixed[n].get_str(), least[n].get_str(), log_f, rate,
                              entry.nonnegative && entry.divisible ? "true" : "false",
                              sw.upper_holds ? "true" : "false", sw.lower_holds ? "true" : "false"});
    }

    table.note("N", fixed.horizon());
    table.note("realizable", realizable.realizable);
    table.note("first_unrealizable_n",
               realizable.first_failure ? ordered_json(*realizable.first_failure) : ordered_json(nullptr));
    table.note("skipped_nonpositive_n", index_list(growth.skipped));
    table.note("window", window);
    table.note("rate_window_inf", decimal(growth.window_inf, bits));
    table.note("rate_window_sup", decimal(growth.window_sup, bits));
    if (target) {
        table.note("target", target->to_string());
        if (growth.final_distance) table.note("final_distance", decimal(*growth.final_distance, bits));
        if (growth.window_max_distance) table.note("window_max_distance", decimal(*growth.window_max_distance, bits));
    }
    table.note("sandwich_holds", sandwich.holds);
    table.note("sandwich_violations", index_list(sandwich.violations));
    table.note("max_rate_gap", sandwich.max_rate_gap ? ordered_json(decimal(*sandwich.max_rate_gap, bits))
                                                     : ordered_json(nullptr));
    table.note("horizon_tolerance", sandwich.horizon_tolerance
                                        ? ordered_json(decimal(*sandwich.horizon_tolerance, bits))
                                        : ordered_json(nullptr));
    table.note("rates_agree", sandwich.rates_agree);
    return table;
}

struct LehmerArgs {
    std::string poly;
    std::uint64_t max_n = 10;
};

Table cmd_lehmer(const LehmerArgs& a, long bits) {
    const IntegerPolynomial f = IntegerPolynomial::parse(a.poly);
    if (a.max_n == 0) throw ParseError("--max-n must be positive");
    const CountSequence deltas = toral_fix_sequence(f, a.max_n);
    const MahlerResult mahler = mahler_measure(f, bits);

    Table table{"lehmer", {"n", "delta", "rate"}, {}, {}};
    Real last_rate(bits);
    for (std::uint64_t n = 1; n <= a.max_n; ++n) {
        last_rate = Real::log(deltas[n], bits) / Real(mpz_class(static_cast<unsigned long>(n)), bits);
        table.rows.push_back({std::to_string(n), deltas[n].get_str(), decimal(last_rate, bits)});
    }
    table.note("polynomial", f.to_string());
    table.note("mahler_measure", decimal(mahler.measure, bits));
    table.note("mahler_error_bound", decimal(mahler.error_bound, bits));
    table.note("near_unit_roots", mahler.near_unit);
    table.note("gap_at_N", decimal(Real::abs(last_rate - mahler.measure), bits));
    return table;
}

struct ZetaArgs {
    std::string sequence;
    std::size_t order = 0;
};

Table cmd_zeta(const ZetaArgs& a) {
    const CountSequence fixed = read_sequence_csv_file(a.sequence);
    const std::size_t order = a.order == 0 ? fixed.horizon() : a.order;
    if (order > fixed.horizon()) throw ParseError("--order exceeds the number of sequence rows");
    const ZetaSeries series = zeta_truncate(fixed, order);

    Table table{"zeta", {"m", "numerator", "denominator"}, {}, {}};
    for (std::size_t m = 0; m < series.coefficients.size(); ++m) {
        const auto& c = series.coefficients[m];
        table.rows.push_back({std::to_string(m), c.get_num().get_str(), c.get_den().get_str()});
    }
    table.note("order", order);
    if (order < 8) {
        table.note("verdict", "not-probed");
        return table;
    }
    const RationalityProbe probe = rationality_probe(series);
    table.note("verdict", std::string(verdict_name(probe.verdict)));
    table.note("recurrence_length", probe.recurrence_length);
    table.note("length_cap", probe.length_cap);
    if (probe.verdict == RationalityVerdict::consistent_with_rational) {
        const ordered_json json = probe_to_json(probe);
        table.note("num_coeffs", json["num_coeffs"]);
        table.note("den_coeffs", json["den_coeffs"]);
        table.note("rational_form", "(" + to_string(probe.numerator, "z") + ")/(" + to_string(probe.denominator, "z") + ")");
    }
    return table;
}

struct PrimesArgs {
    std::uint64_t max_n = 100;
};

Table cmd_primes(const PrimesArgs& a, long bits) {
    if (a.max_n == 0) throw ParseError("--max-n must be positive");
    Table table{"primes", {"n", "p", "ratio"}, {}, {}};
    std::optional<Real> max_ratio;
    std::uint64_t argmax = 0;
    bool within = true;
    for (std::uint64_t n = 1; n <= a.max_n; ++n) {
        const PrimeInProgression prime = least_prime_congruent_one(n);
        const Real ratio = heath_brown_ratio(prime, bits);
        table.rows.push_back({std::to_string(n), prime.p.get_str(), decimal(ratio, bits)});
        if (n < 2) continue;
        within = within && within_heath_brown_bound(prime);
        if (!max_ratio || ratio > *max_ratio) {
            max_ratio = ratio;
            argmax = n;
        }
    }
    if (max_ratio) {
        table.note("max_ratio_n_ge_2", decimal(*max_ratio, bits));
        table.note("argmax_n", argmax);
        table.note("all_below_n_pow_5.5", within);
    }
    return table;
}

long default_precision() {
    const char* env = std::getenv(kPrecisionEnv);
    if (env == nullptr || *env == '\0') return kDefaultPrecisionBits;
    char* end = nullptr;
    const long bits = std::strtol(env, &end, 10);
    if (*end != '\0' || bits < 2 || bits > (1L << 24)) {
        throw ParseError(std::string(kPrecisionEnv) + " must be an integer in [2, 16777216]");
    }
    return bits;
}

// CLI11 reads `--poly -2,1` as two options; bind such values with '='.
std::vector<std::string> bind_negative_values(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const bool takes_value = args[i] == "--poly" || args[i] == "--C" || args[i] == "--target";
        if (takes_value && i + 1 < args.size() && args[i + 1].size() > 1 && args[i + 1][0] == '-') {
            out.push_back(args[i] + "=" + args[i + 1]);
            ++i;
        } else {
            out.push_back(args[i]);
        }
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    long precision_bits = kDefaultPrecisionBits;
    try {
        precision_bits = default_precision();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }

    CLI::App app{"Periodic-point counts of compact group automorphisms: constructions, oracles and diagnostics",
                 "perigee"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.fallthrough();
    std::uint64_t seed = 0;
    app.add_option("--precision-bits", precision_bits, "Working precision for logs and reals (env " +
                                                           std::string(kPrecisionEnv) + ")")
        ->check(CLI::Range(2L, 1L << 24));
    app.add_option("--seed", seed, "Seed for randomized generation");

    std::string format = "csv";
    const auto add_format = [&format](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    };

    ConstructArgs construct;
    auto* construct_cmd = app.add_subcommand("construct", "Build the product automorphism and tabulate its counts");
    construct_cmd->add_option("--C", construct.c, "Finite growth target as a/b or a decimal literal");
    construct_cmd->add_option("--target", construct.target, "Growth target: zero, infinite, or a rational");
    construct_cmd->add_option("--strategy", construct.strategy,
                              "paper | compensated | subexponential:<gamma> | infinite (default by target)");
    construct_cmd->add_option("--max-n", construct.max_n, "Number of components N");
    construct_cmd->add_option("--window", construct.window, "Trailing window for rate inf/sup");
    construct_cmd->add_option("--plan-out", construct.plan_out, "Write the plan as JSON to this path");
    add_format(construct_cmd);

    OracleArgs oracle;
    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force orbit enumeration of a truncated plan");
    oracle_cmd->add_option("--plan", oracle.plan, "Plan JSON file")->required();
    oracle_cmd->add_option("--components", oracle.components, "Components M to materialize (0 = all)");
    oracle_cmd->add_option("--max-n", oracle.max_n, "Largest n to tally");
    oracle_cmd->add_option("--budget", oracle.budget, "Largest group order to enumerate");
    add_format(oracle_cmd);

    AnalyzeArgs analyze;
    auto* analyze_cmd = app.add_subcommand("analyze", "Growth and realizability diagnostics for a sequence file");
    analyze_cmd->add_option("--sequence", analyze.sequence, "Sequence CSV (n,value)")->required();
    analyze_cmd->add_option("--window", analyze.window, "Trailing window length");
    analyze_cmd->add_option("--target", analyze.target, "Optional growth target to measure distance from");
    add_format(analyze_cmd);

    LehmerArgs lehmer;
    auto* lehmer_cmd = app.add_subcommand("lehmer", "Lehmer sequence and Mahler measure of a monic polynomial");
    lehmer_cmd->add_option("--poly", lehmer.poly, "Coefficients c0,c1,...,cd (low to high, cd = 1)")->required();
    lehmer_cmd->add_option("--max-n", lehmer.max_n, "Largest n");
    add_format(lehmer_cmd);

    ZetaArgs zeta;
    auto* zeta_cmd = app.add_subcommand("zeta", "Truncated zeta series and rationality probe");
    zeta_cmd->add_option("--sequence", zeta.sequence, "Sequence CSV (n,value)")->required();
    zeta_cmd->add_option("--order", zeta.order, "Truncation order M (0 = all rows)");
    add_format(zeta_cmd);

    PrimesArgs primes;
    auto* primes_cmd = app.add_subcommand("primes", "Least primes congruent to 1 mod n");
    primes_cmd->add_option("--max-n", primes.max_n, "Largest n");
    add_format(primes_cmd);

    std::vector<std::string> reversed = bind_negative_values(args);
    std::reverse(reversed.begin(), reversed.end());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInvalidInput;
    }

    try {
        Table table;
        bool mismatch = false;
        if (construct_cmd->parsed()) {
            table = cmd_construct(construct, precision_bits);
        } else if (oracle_cmd->parsed()) {
            table = cmd_oracle(oracle, mismatch);
        } else if (analyze_cmd->parsed()) {
            table = cmd_analyze(analyze, precision_bits);
        } else if (lehmer_cmd->parsed()) {
            table = cmd_lehmer(lehmer, precision_bits);
        } else if (zeta_cmd->parsed()) {
            table = cmd_zeta(zeta);
        } else {
            table = cmd_primes(primes, precision_bits);
        }
        emit(table, format, out);
        return mismatch ? kOracleMismatch : kOk;
    } catch (const DegenerateError& e) {
        err << "error: " << e.what() << " (cyclotomic index " << e.cyclotomic_index() << ")\n";
        return kDegenerate;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kBudgetExceeded;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }
}

}  // namespace perigee::cli
