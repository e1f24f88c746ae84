#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "binident/binning.hpp"
#include "binident/distribution.hpp"
#include "binident/lowerbound.hpp"

namespace binident {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// How pmf entries may be written in JSON.
enum class NumberMode {
    /// Strings "a/b" and JSON numbers (read as their shortest decimal form).
    lenient,
    /// Strings "a/b" only.
    exact,
};

/// True for JSON integers >= 0, whether stored signed or unsigned.
bool is_non_negative_integer(const json& j) noexcept;

/// {"n": 4, "pmf": ["3/10", "0", "1/2", "1/5"]}
ordered_json to_json(const Distribution& d);
Distribution distribution_from_json(const json& j, NumberMode mode = NumberMode::lenient);

/// Reads a Distribution file; "-" reads standard input.
Distribution load_distribution(const std::filesystem::path& path,
                               NumberMode mode = NumberMode::lenient);
void store_distribution(const Distribution& d, const std::filesystem::path& path);

/// Bounds array, e.g. [0,8,8,17,20].
json to_json(const IntervalPartition& partition);
IntervalPartition partition_from_json(const json& j);

/// {"samples": [3,1,2]} with optional "seed".
ordered_json to_json(const SampleSet& samples);
SampleSet sample_set_from_json(const json& j);

ordered_json to_json(const HardInstancePair& pair);
/// Rebuilds the block distributions from the bases and checks the stored ones match.
HardInstancePair hard_instance_from_json(const json& j, NumberMode mode = NumberMode::lenient);

json parse_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Column-named string table with RFC-4180 style CSV output.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const;
    std::string to_csv() const;
    ordered_json to_json() const;
};

}  // namespace binident
