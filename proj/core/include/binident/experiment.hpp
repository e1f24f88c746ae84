#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

#include "binident/io.hpp"

namespace binident {

enum class ExperimentKind { test_curve, overflow_curve, hard_pair_search, calibration };

const char* to_string(ExperimentKind kind) noexcept;
ExperimentKind parse_experiment_kind(const std::string& text);

/// A seeded, fully parameterized experiment.
///
/// Parameters per kind (distributions are inline {"n","pmf"} objects or file paths):
///   test-curve:       p, q, epsilons [rat...], constant (default 16)
///   calibration:      p or uniform_n, k, epsilon, constant (default 16)
///   overflow-curve:   m, b, k_prime, s_grid [int...], rho (default 1)
///   hard-pair-search: m, b, rho (default 99/100)
struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::test_curve;
    json parameters = json::object();
    std::uint64_t master_seed = 0;
    std::size_t trials = 1;
    /// Empty: do not write a file.
    std::filesystem::path output_path;

    static ExperimentSpec from_json(const json& j);
    /// Throws InvalidArgument naming the offending parameter.
    void validate() const;
};

struct ExperimentResult {
    /// One row per (trial, parameter point); parameter values are repeated as columns.
    Table table;
    /// Derived from table alone.
    ordered_json summary;
};

/// Runs the experiment, writing table.to_csv() to output_path when set.
/// Identical specs produce byte-identical CSV.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Aggregates a result table of the given kind.
ordered_json summarize(ExperimentKind kind, const Table& table);

}  // namespace binident
