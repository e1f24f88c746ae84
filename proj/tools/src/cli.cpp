#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "binident/binning.hpp"
#include "binident/error.hpp"
#include "binident/experiment.hpp"
#include "binident/fingerprint.hpp"
#include "binident/io.hpp"
#include "binident/lowerbound.hpp"
#include "binident/tester.hpp"

namespace binident::cli {
namespace {

enum class Format { json, csv };

struct Globals {
    std::uint64_t seed = 0;
    std::string format = "json";
    bool exact = false;

    Format fmt() const { return format == "csv" ? Format::csv : Format::json; }
    NumberMode mode() const { return exact ? NumberMode::exact : NumberMode::lenient; }
};

class Context {
public:
    Context(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

    json read_json(const std::string& path) {
        if (path != "-") {
            return parse_json_file(path);
        }
        if (stdin_used_) {
            throw InvalidArgument("standard input can only be read once");
        }
        stdin_used_ = true;
        try {
            return json::parse(in_);
        } catch (const json::parse_error& e) {
            throw FormatError(std::string("malformed JSON on standard input: ") + e.what());
        }
    }

    Distribution distribution(const std::string& path, NumberMode mode) {
        return distribution_from_json(read_json(path), mode);
    }

    std::ostream& out() { return out_; }

private:
    std::istream& in_;
    std::ostream& out_;
    bool stdin_used_ = false;
};

std::string cell(const ordered_json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
}

/// One object as pretty JSON, or as a two-line CSV with its keys as header.
void emit_record(std::ostream& out, Format format, const ordered_json& record) {
    if (format == Format::json) {
        out << record.dump(2) << '\n';
        return;
    }
    Table table;
    std::vector<std::string> row;
    for (const auto& [key, value] : record.items()) {
        table.columns.push_back(key);
        row.push_back(cell(value));
    }
    table.rows.push_back(std::move(row));
    out << table.to_csv();
}

Rational rational_arg(const std::string& text, const char* name) {
    try {
        return parse_rational(text);
    } catch (const FormatError& e) {
        throw InvalidArgument(std::string("--") + name + ": " + e.what());
    }
}

SampleSource sample_source(const json& j, NumberMode mode) {
    if (j.is_array() || (j.is_object() && j.contains("samples"))) {
        return sample_set_from_json(j);
    }
    return distribution_from_json(j, mode);
}

using Action = std::function<int(Context&, const Globals&)>;

void add_test(CLI::App& app, Action& action) {
    auto* cmd = app.add_subcommand("test", "Run the bin-identity tester");
    auto p = std::make_shared<std::string>();
    auto q = std::make_shared<std::string>();
    auto n = std::make_shared<std::optional<std::size_t>>();
    auto eps = std::make_shared<std::string>("1/10");
    auto samples = std::make_shared<std::optional<std::size_t>>();
    auto constant = std::make_shared<std::string>("16");
    cmd->add_option("--p", *p, "Unknown distribution or sample set (JSON file, - for stdin)")->required();
    cmd->add_option("--q", *q, "Reference distribution over [k]")->required();
    cmd->add_option("--n", *n, "Domain size of p");
    cmd->add_option("--eps", *eps, "Proximity parameter")->capture_default_str();
    cmd->add_option("--samples", *samples, "Override the sample count");
    cmd->add_option("--constant", *constant, "Learning constant C")->capture_default_str();
    cmd->callback([=, &action] {
        action = [=](Context& ctx, const Globals& g) {
            const auto source = sample_source(ctx.read_json(*p), g.mode());
            const auto ref = ctx.distribution(*q, g.mode());
            std::size_t domain = 0;
            if (*n) {
                domain = **n;
            } else if (const auto* d = std::get_if<Distribution>(&source)) {
                domain = d->n();
            } else {
                throw InvalidArgument("--n is required when --p is a sample set");
            }
            TestConfig cfg;
            cfg.epsilon = rational_arg(*eps, "eps");
            cfg.learn_constant = rational_arg(*constant, "constant");
            cfg.seed = g.seed;
            cfg.samples = *samples;
            const auto report = bin_identity_test(source, ref, domain, cfg);
            ordered_json record{{"verdict", to_string(report.verdict)},
                                {"feasible", report.feasible},
                                {"delta", to_string(report.delta)},
                                {"delta_float", to_double(report.delta)},
                                {"threshold", to_string(cfg.threshold())},
                                {"epsilon", to_string(cfg.epsilon)},
                                {"samples", report.samples_used},
                                {"seed", g.seed},
                                {"witness", to_json(report.witness)}};
            emit_record(ctx.out(), g.fmt(), record);
            return report.verdict == Verdict::accept ? ok : rejected;
        };
    });
}

void add_akdist(CLI::App& app, Action& action) {
    auto* cmd = app.add_subcommand("akdist", "Exact A_ell distance between two distributions");
    auto p = std::make_shared<std::string>();
    auto q = std::make_shared<std::string>();
    auto ell = std::make_shared<std::size_t>(0);
    cmd->add_option("--p", *p, "First distribution")->required();
    cmd->add_option("--q", *q, "Second distribution")->required();
    cmd->add_option("--ell", *ell, "Number of intervals")->required();
    cmd->callback([=, &action] {
        action = [=](Context& ctx, const Globals& g) {
            const auto a = ctx.distribution(*p, g.mode());
            const auto b = ctx.distribution(*q, g.mode());
            const auto d = ak_distance(a, b, *ell);
            emit_record(ctx.out(), g.fmt(),
                        {{"ell", *ell}, {"distance", to_string(d)}, {"distance_float", to_double(d)}});
            return ok;
        };
    });
}

void add_coarse_dist(CLI::App& app, Action& action) {
    auto* cmd = app.add_subcommand("coarse-dist", "Minimum binned discrepancy of p against q");
    auto p = std::make_shared<std::string>();
    auto q = std::make_shared<std::string>();
    auto nonempty = std::make_shared<bool>(false);
    cmd->add_option("--p", *p, "Distribution over [n]")->required();
    cmd->add_option("--q", *q, "Reference distribution over [k]")->required();
    cmd->add_flag("--nonempty", *nonempty, "Require nonempty intervals on the support of q");
    cmd->callback([=, &action] {
        action = [=](Context& ctx, const Globals& g) {
            const auto a = ctx.distribution(*p, g.mode());
            const auto b = ctx.distribution(*q, g.mode());
            const auto result = min_binned_discrepancy(
                a, b, *nonempty ? SupportBins::must_be_nonempty : SupportBins::may_be_empty);
            emit_record(ctx.out(), g.fmt(),
                        {{"distance", to_string(result.delta)},
                         {"distance_float", to_double(result.delta)},
                         {"witness", to_json(result.witness)}});
            return ok;
        };
    });
}

void add_fingerprint(CLI::App& app, Action& action) {
    auto* cmd = app.add_subcommand("fingerprint", "Ordered fingerprint of a sample");
    auto values = std::make_shared<std::vector<std::size_t>>();
    cmd->add_option("--samples", *values, "Sample values, comma separated")->required()->delimiter(',');
    cmd->callback([=, &action] {
        action = [=](Context& ctx, const Globals& g) {
            const auto f = fingerprint_of(SampleSet{*values, std::nullopt});
            emit_record(ctx.out(), g.fmt(),
                        {{"fingerprint", f.to_string()}, {"s", f.s()}, {"t", f.t()}});
            return ok;
        };
    });
}

void add_moments(CLI::App& app, Action& action) {
    auto* cmd = app.add_subcommand("moments", "Exact s-way moments of a distribution");
    auto d = std::make_shared<std::string>();
    auto s = std::make_shared<std::size_t>(0);
    cmd->add_option("--d", *d, "Distribution")->required();
    cmd->add_option("--s", *s, "Sample size")->required();
    cmd->callback([=, &action] {
        action = [=](Context& ctx, const Globals& g) {
            const auto mv = moment_vector(ctx.distribution(*d, g.mode()), *s);
            if (g.fmt() == Format::json) {
                ordered_json map = ordered_json::object();
                for (const auto& [f, value] : mv.entries) map[f.to_string()] = to_string(value);
                ctx.out() << map.dump(2) << '\n';
            } else {
                Table table{{"fingerprint", "moment", "moment_float"}, {}};
                for (const auto& [f, value] : mv.entries) {
                    table.rows.push_back({f.to_string(), to_string(value),
                                          ordered_json(to_double(value)).dump()});
                }
                ctx.out() << table.to_csv();
            }
            return ok;
        };
    });
}

void add_gen_hard(CLI::App& app, Action& action) {
    auto* cmd = app.add_subcommand("gen-hard", "Search for a moment-matched pair and block it");
    auto m = std::make_shared<std::size_t>(0);
    auto b = std::make_shared<std::size_t>(0);
    auto rho = std::make_shared<std::string>("99/100");
    auto k_prime = std::make_shared<std::size_t>(2);
    auto path = std::make_shared<std::string>();
    cmd->add_option("--m", *m, "Moment order")->required();
    cmd->add_option("--b", *b, "Base support size (even)")->required();
    cmd->add_option("--rho", *rho, "Shift fraction")->capture_default_str();
    cmd->add_option("--k-prime", *k_prime, "Number of blocks")->capture_default_str();
    cmd->add_option("--out", *path, "Output JSON file")->required();
    cmd->callback([=, &action] {
        action = [=](Context& ctx, const Globals& g) -> int {
            const auto bases = find_hard_pair(*m, *b, rational_arg(*rho, "rho"));
            if (!bases) {
                emit_record(ctx.out(), g.fmt(), {{"found", false}, {"m", *m}, {"b", *b}, {"rho", *rho}});
                return rejected;
            }
            const auto pair = make_hard_instance(*bases, *k_prime);
            write_text_file(*path, to_json(pair).dump(2) + "\n");
            emit_record(ctx.out(), g.fmt(),
                        {{"found", true},
                         {"m", *m},
                         {"b", *b},
                         {"rho", to_string(bases->rho)},
                         {"k_prime", *k_prime},
                         {"p_string", bases->p_string.symbols()},
                         {"q_string", bases->q_string.symbols()},
                         {"out", *path}});
            return ok;
        };
    });
}

void add_verify_claim(CLI::App& app, Action& action) {
    auto* cmd = app.add_subcommand("verify-claim", "Exact coarsening distance of a blocked pair");
    auto path = std::make_shared<std::string>();
    cmd->add_option("--pair", *path, "File written by gen-hard")->required();
    cmd->callback([=, &action] {
        action = [=](Context& ctx, const Globals& g) {
            const auto pair = hard_instance_from_json(ctx.read_json(*path), g.mode());
            const auto d = verify_distance_claim(pair);
            emit_record(ctx.out(), g.fmt(),
                        {{"m", pair.m},
                         {"b", pair.b},
                         {"k_prime", pair.k_prime},
                         {"distance", to_string(d)},
                         {"distance_float", to_double(d)},
                         {"positive", d > 0}});
            return ok;
        };
    });
}

void add_overflow(CLI::App& app, Action& action) {
    auto* cmd = app.add_subcommand("overflow", "Probability that some block gets more than m of s balls");
    auto k = std::make_shared<std::size_t>(0);
    auto s = std::make_shared<std::size_t>(0);
    auto m = std::make_shared<std::size_t>(0);
    cmd->add_option("--k", *k, "Number of blocks")->required();
    cmd->add_option("--s", *s, "Number of samples")->required();
    cmd->add_option("--m", *m, "Block capacity")->required();
    cmd->callback([=, &action] {
        action = [=](Context& ctx, const Globals& g) {
            const auto p = block_overflow_probability(*k, *s, *m);
            emit_record(ctx.out(), g.fmt(),
                        {{"k_prime", *k},
                         {"s", *s},
                         {"m", *m},
                         {"probability", to_string(p)},
                         {"probability_float", to_double(p)}});
            return ok;
        };
    });
}

void add_experiment(CLI::App& app, Action& action) {
    auto* cmd = app.add_subcommand("experiment", "Run a seeded experiment spec");
    auto path = std::make_shared<std::string>();
    auto output = std::make_shared<std::optional<std::string>>();
    cmd->add_option("--spec", *path, "Experiment spec (JSON)")->required();
    cmd->add_option("--output", *output, "CSV destination, overriding the spec");
    cmd->callback([=, &action] {
        action = [=](Context& ctx, const Globals& g) {
            auto spec = ExperimentSpec::from_json(ctx.read_json(*path));
            if (*output) spec.output_path = **output;
            const auto result = run_experiment(spec);
            if (g.fmt() == Format::csv) {
                ctx.out() << result.table.to_csv();
            } else {
                ctx.out() << result.summary.dump(2) << '\n';
            }
            return ok;
        };
    });
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Identity testing up to binning", "binident"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals globals;
    app.add_option("--seed", globals.seed, "Random seed")->capture_default_str();
    app.add_option("--format", globals.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_flag("--exact", globals.exact, "Accept only \"a/b\" strings as probabilities");

    Action action;
    add_test(app, action);
    add_akdist(app, action);
    add_coarse_dist(app, action);
    add_fingerprint(app, action);
    add_moments(app, action);
    add_gen_hard(app, action);
    add_verify_claim(app, action);
    add_overflow(app, action);
    add_experiment(app, action);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? ok : failure;
    }

    try {
        Context ctx(in, out);
        return action(ctx, globals);
    } catch (const std::exception& e) {
        err << "binident: " << e.what() << '\n';
        return failure;
    }
}

}  // namespace binident::cli
