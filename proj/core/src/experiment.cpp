#include "binident/experiment.hpp"

#include <charconv>
#include <map>
#include <optional>

#include "binident/error.hpp"
#include "binident/lowerbound.hpp"
#include "binident/parallel.hpp"
#include "binident/tester.hpp"

namespace binident {
namespace {

std::string format_double(double value) {
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return ec == std::errc{} ? std::string(buffer, end) : std::string("nan");
}

[[noreturn]] void bad_parameter(const std::string& key, const std::string& why) {
    throw InvalidArgument("experiment parameter '" + key + "': " + why);
}

const json& require(const json& params, const std::string& key) {
    if (!params.contains(key)) {
        bad_parameter(key, "missing");
    }
    return params.at(key);
}

std::size_t count_param(const json& params, const std::string& key) {
    const json& v = require(params, key);
    if (!is_non_negative_integer(v)) {
        bad_parameter(key, "must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

Rational rational_value(const json& v, const std::string& key) {
    try {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number()) return parse_rational(v.dump());
    } catch (const FormatError& e) {
        bad_parameter(key, e.what());
    }
    bad_parameter(key, "must be a rational (string \"a/b\" or number)");
}

Rational rational_param(const json& params, const std::string& key, std::optional<Rational> fallback = {}) {
    if (!params.contains(key)) {
        if (fallback) return *fallback;
        bad_parameter(key, "missing");
    }
    return rational_value(params.at(key), key);
}

Distribution distribution_param(const json& params, const std::string& key) {
    const json& v = require(params, key);
    try {
        if (v.is_string()) return load_distribution(v.get<std::string>());
        if (v.is_object()) return distribution_from_json(v);
    } catch (const Error& e) {
        bad_parameter(key, e.what());
    }
    bad_parameter(key, "must be a distribution object or a file path");
}

std::vector<Rational> rational_list(const json& params, const std::string& key) {
    const json& v = require(params, key);
    if (!v.is_array() || v.empty()) {
        bad_parameter(key, "must be a non-empty array");
    }
    std::vector<Rational> out;
    for (const auto& item : v) {
        out.push_back(rational_value(item, key));
    }
    return out;
}

std::vector<std::size_t> count_list(const json& params, const std::string& key) {
    const json& v = require(params, key);
    if (!v.is_array() || v.empty()) {
        bad_parameter(key, "must be a non-empty array");
    }
    std::vector<std::size_t> out;
    for (const auto& item : v) {
        if (!is_non_negative_integer(item)) {
            bad_parameter(key, "entries must be non-negative integers");
        }
        out.push_back(item.get<std::size_t>());
    }
    return out;
}

Distribution calibration_target(const json& params) {
    if (params.contains("p")) {
        return distribution_param(params, "p");
    }
    const std::size_t n = count_param(params, "uniform_n");
    if (n == 0) {
        bad_parameter("uniform_n", "must be positive");
    }
    return Distribution::uniform(n);
}

Table run_test_curve(const ExperimentSpec& spec) {
    const auto& params = spec.parameters;
    const auto p = distribution_param(params, "p");
    const auto q = distribution_param(params, "q");
    const auto epsilons = rational_list(params, "epsilons");
    const auto constant = rational_param(params, "constant", Rational(16));
    const auto curve = error_curve(p, q, epsilons, spec.trials, spec.master_seed, constant);

    Table table{{"n", "k", "epsilon", "constant", "samples", "master_seed", "trial", "seed", "verdict",
                 "delta", "delta_float"},
                {}};
    for (const auto& row : curve.rows) {
        table.rows.push_back({std::to_string(p.n()), std::to_string(q.n()), to_string(row.epsilon),
                              to_string(constant), std::to_string(row.samples),
                              std::to_string(spec.master_seed), std::to_string(row.trial),
                              std::to_string(row.seed), to_string(row.verdict), to_string(row.delta),
                              format_double(to_double(row.delta))});
    }
    return table;
}

Table run_calibration(const ExperimentSpec& spec) {
    const auto& params = spec.parameters;
    const auto p = calibration_target(params);
    const std::size_t k = count_param(params, "k");
    if (k < 1 || k > p.n()) {
        bad_parameter("k", "must lie in [1, n]");
    }
    TestConfig cfg;
    cfg.epsilon = rational_param(params, "epsilon");
    cfg.learn_constant = rational_param(params, "constant", Rational(16));
    cfg.validate();
    const std::size_t s = cfg.sample_count(k);
    const Rational threshold = cfg.threshold();

    std::vector<Rational> errors(spec.trials);
    parallel_for(spec.trials, [&](std::size_t trial) {
        const auto p_hat = empirical(sample(p, s, spec.master_seed + trial), p.n());
        errors[trial] = ak_distance(p_hat, p, k);
    });

    Table table{{"n", "k", "epsilon", "constant", "samples", "master_seed", "trial", "seed", "ak_error",
                 "ak_error_float", "threshold", "pass"},
                {}};
    for (std::size_t trial = 0; trial < spec.trials; ++trial) {
        table.rows.push_back({std::to_string(p.n()), std::to_string(k), to_string(cfg.epsilon),
                              to_string(cfg.learn_constant), std::to_string(s),
                              std::to_string(spec.master_seed), std::to_string(trial),
                              std::to_string(spec.master_seed + trial), to_string(errors[trial]),
                              format_double(to_double(errors[trial])), to_string(threshold),
                              errors[trial] <= threshold ? "1" : "0"});
    }
    return table;
}

Table run_overflow_curve(const ExperimentSpec& spec) {
    const auto& params = spec.parameters;
    const std::size_t m = count_param(params, "m");
    const std::size_t b = count_param(params, "b");
    const std::size_t k_prime = count_param(params, "k_prime");
    const Rational rho = rational_param(params, "rho", Rational(1));
    const auto s_grid = count_list(params, "s_grid");

    const auto bases = find_hard_pair(m, b, rho);
    if (!bases) {
        throw Error("no hard pair exists for m = " + std::to_string(m) + ", b = " + std::to_string(b));
    }
    const auto pair = make_hard_instance(*bases, k_prime);
    const auto curve = sample_size_curve(pair, s_grid, spec.trials, spec.master_seed);

    Table table{{"m", "b", "rho", "k_prime", "s", "master_seed", "trial", "seed", "max_block_load",
                 "overflow", "exact_probability", "exact_probability_float"},
                {}};
    for (std::size_t i = 0; i < curve.trials.size(); ++i) {
        const auto& trial = curve.trials[i];
        const auto& exact = curve.points[i / spec.trials].exact;
        table.rows.push_back({std::to_string(m), std::to_string(b), to_string(rho),
                              std::to_string(k_prime), std::to_string(trial.s),
                              std::to_string(spec.master_seed), std::to_string(trial.trial),
                              std::to_string(trial.seed), std::to_string(trial.max_load),
                              trial.overflow ? "1" : "0", to_string(exact),
                              format_double(to_double(exact))});
    }
    return table;
}

Table run_hard_pair_search(const ExperimentSpec& spec) {
    const auto& params = spec.parameters;
    const std::size_t m = count_param(params, "m");
    const std::size_t b = count_param(params, "b");
    const Rational rho = rational_param(params, "rho", Rational(99, 100));
    const auto bases = find_hard_pair(m, b, rho);
    const std::size_t r = static_cast<std::size_t>(ceil_to_u64(rho * Rational(b)));

    Table table{{"m", "b", "rho", "r", "strings_enumerated", "buckets", "found", "p_string", "q_string",
                 "cyclic_lcs"},
                {}};
    std::vector<std::string> row{std::to_string(m), std::to_string(b), to_string(rho), std::to_string(r),
                                 std::to_string(balanced_string_count(b))};
    if (bases) {
        const auto check = is_partial_cyclic_shift(bases->p_string, bases->q_string, r);
        row.insert(row.end(), {std::to_string(bases->buckets), "1", bases->p_string.symbols(),
                               bases->q_string.symbols(), std::to_string(check.cyclic_lcs)});
    } else {
        row.insert(row.end(), {"", "0", "", "", ""});
    }
    table.rows.push_back(std::move(row));
    return table;
}

std::map<std::string, std::vector<std::size_t>> group_rows(const Table& table, const std::string& key,
                                                            std::vector<std::string>& order) {
    std::map<std::string, std::vector<std::size_t>> groups;
    const std::size_t column = table.column(key);
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& value = table.rows[r][column];
        if (!groups.contains(value)) {
            order.push_back(value);
        }
        groups[value].push_back(r);
    }
    return groups;
}

}  // namespace

const char* to_string(ExperimentKind kind) noexcept {
    switch (kind) {
        case ExperimentKind::test_curve: return "test-curve";
        case ExperimentKind::overflow_curve: return "overflow-curve";
        case ExperimentKind::hard_pair_search: return "hard-pair-search";
        case ExperimentKind::calibration: return "calibration";
    }
    return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& text) {
    for (auto kind : {ExperimentKind::test_curve, ExperimentKind::overflow_curve,
                      ExperimentKind::hard_pair_search, ExperimentKind::calibration}) {
        if (text == to_string(kind)) {
            return kind;
        }
    }
    throw InvalidArgument("unknown experiment kind '" + text + "'");
}

ExperimentSpec ExperimentSpec::from_json(const json& j) {
    if (!j.is_object()) {
        throw FormatError("experiment spec must be a JSON object");
    }
    if (!j.contains("kind") || !j["kind"].is_string()) {
        throw FormatError("experiment spec needs a string 'kind'");
    }
    ExperimentSpec spec;
    spec.kind = parse_experiment_kind(j["kind"].get<std::string>());
    if (j.contains("parameters")) {
        if (!j["parameters"].is_object()) {
            throw FormatError("'parameters' must be an object");
        }
        spec.parameters = j["parameters"];
    }
    if (j.contains("master_seed")) {
        if (!is_non_negative_integer(j["master_seed"])) {
            throw FormatError("'master_seed' must be a non-negative integer");
        }
        spec.master_seed = j["master_seed"].get<std::uint64_t>();
    }
    if (j.contains("trials")) {
        if (!is_non_negative_integer(j["trials"])) {
            throw FormatError("'trials' must be a non-negative integer");
        }
        spec.trials = j["trials"].get<std::size_t>();
    }
    if (j.contains("output_path")) {
        if (!j["output_path"].is_string()) {
            throw FormatError("'output_path' must be a string");
        }
        spec.output_path = j["output_path"].get<std::string>();
    }
    spec.validate();
    return spec;
}

void ExperimentSpec::validate() const {
    if (trials < 1) {
        throw InvalidArgument("experiment trials must be at least 1");
    }
    if (!parameters.is_object()) {
        throw InvalidArgument("experiment parameters must be an object");
    }
    const auto& p = parameters;
    switch (kind) {
        case ExperimentKind::test_curve:
            require(p, "p");
            require(p, "q");
            rational_list(p, "epsilons");
            rational_param(p, "constant", Rational(16));
            break;
        case ExperimentKind::calibration:
            if (!p.contains("p")) count_param(p, "uniform_n");
            count_param(p, "k");
            rational_param(p, "epsilon");
            rational_param(p, "constant", Rational(16));
            break;
        case ExperimentKind::overflow_curve:
            count_param(p, "m");
            count_param(p, "b");
            count_param(p, "k_prime");
            count_list(p, "s_grid");
            rational_param(p, "rho", Rational(1));
            break;
        case ExperimentKind::hard_pair_search:
            count_param(p, "m");
            count_param(p, "b");
            rational_param(p, "rho", Rational(99, 100));
            break;
    }
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentResult result;
    try {
        switch (spec.kind) {
            case ExperimentKind::test_curve: result.table = run_test_curve(spec); break;
            case ExperimentKind::calibration: result.table = run_calibration(spec); break;
            case ExperimentKind::overflow_curve: result.table = run_overflow_curve(spec); break;
            case ExperimentKind::hard_pair_search: result.table = run_hard_pair_search(spec); break;
        }
    } catch (const SizeGuardExceeded& e) {
        throw SizeGuardExceeded(std::string("experiment ") + to_string(spec.kind) + ": " + e.what());
    }
    result.summary = summarize(spec.kind, result.table);
    if (!spec.output_path.empty()) {
        write_text_file(spec.output_path, result.table.to_csv());
    }
    return result;
}

ordered_json summarize(ExperimentKind kind, const Table& table) {
    ordered_json summary{{"kind", to_string(kind)}, {"rows", table.rows.size()}};
    switch (kind) {
        case ExperimentKind::test_curve: {
            std::vector<std::string> order;
            const auto groups = group_rows(table, "epsilon", order);
            const std::size_t verdict = table.column("verdict");
            const std::size_t samples = table.column("samples");
            ordered_json points = ordered_json::array();
            for (const auto& eps : order) {
                const auto& rows = groups.at(eps);
                std::size_t accepts = 0;
                for (std::size_t r : rows) accepts += table.rows[r][verdict] == "accept" ? 1 : 0;
                points.push_back({{"epsilon", eps},
                                  {"samples", std::stoull(table.rows[rows.front()][samples])},
                                  {"trials", rows.size()},
                                  {"accepts", accepts},
                                  {"accept_frequency", static_cast<double>(accepts) / rows.size()}});
            }
            summary["points"] = std::move(points);
            break;
        }
        case ExperimentKind::calibration: {
            const std::size_t pass = table.column("pass");
            const std::size_t error = table.column("ak_error");
            std::size_t passes = 0;
            Rational worst = 0;
            Rational total = 0;
            for (const auto& row : table.rows) {
                passes += row[pass] == "1" ? 1 : 0;
                const Rational e = parse_rational(row[error]);
                total += e;
                if (e > worst) worst = e;
            }
            const std::size_t trials = table.rows.size();
            summary["trials"] = trials;
            summary["passes"] = passes;
            summary["pass_fraction"] = trials ? static_cast<double>(passes) / trials : 0.0;
            summary["mean_ak_error"] = trials ? to_double(total / Rational(trials)) : 0.0;
            summary["max_ak_error"] = to_string(worst);
            break;
        }
        case ExperimentKind::overflow_curve: {
            std::vector<std::string> order;
            const auto groups = group_rows(table, "s", order);
            const std::size_t overflow = table.column("overflow");
            const std::size_t exact = table.column("exact_probability");
            ordered_json points = ordered_json::array();
            for (const auto& s : order) {
                const auto& rows = groups.at(s);
                std::size_t hits = 0;
                for (std::size_t r : rows) hits += table.rows[r][overflow] == "1" ? 1 : 0;
                points.push_back({{"s", std::stoull(s)},
                                  {"trials", rows.size()},
                                  {"overflows", hits},
                                  {"fraction", static_cast<double>(hits) / rows.size()},
                                  {"exact_probability", table.rows[rows.front()][exact]}});
            }
            summary["points"] = std::move(points);
            break;
        }
        case ExperimentKind::hard_pair_search: {
            if (!table.rows.empty()) {
                const auto& row = table.rows.front();
                summary["found"] = row[table.column("found")] == "1";
                summary["p_string"] = row[table.column("p_string")];
                summary["q_string"] = row[table.column("q_string")];
            }
            break;
        }
    }
    return summary;
}

}  // namespace binident
