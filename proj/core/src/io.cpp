#include "binident/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "binident/error.hpp"

namespace binident {
namespace {

Rational entry_from_json(const json& entry, NumberMode mode, std::size_t index) {
    const std::string where = "pmf[" + std::to_string(index) + "]";
    if (entry.is_string()) {
        try {
            return parse_rational(entry.get<std::string>());
        } catch (const FormatError& e) {
            throw FormatError(where + ": " + e.what());
        }
    }
    if (entry.is_number()) {
        if (mode == NumberMode::exact) {
            throw FormatError(where + ": numeric entry " + entry.dump() +
                              " rejected in exact mode; write it as a string \"a/b\"");
        }
        // dump() gives the shortest decimal that round-trips, e.g. 0.1 -> "0.1"
        return parse_rational(entry.dump());
    }
    throw FormatError(where + ": expected a number or a string \"a/b\"");
}

std::size_t size_field(const json& j, const char* key) {
    if (!j.contains(key) || !is_non_negative_integer(j[key])) {
        throw FormatError(std::string("field '") + key + "' must be a non-negative integer");
    }
    return j[key].get<std::size_t>();
}

std::string string_field(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) {
        throw FormatError(std::string("field '") + key + "' must be a string");
    }
    return j[key].get<std::string>();
}

}  // namespace

bool is_non_negative_integer(const json& j) noexcept {
    return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

ordered_json to_json(const Distribution& d) {
    ordered_json pmf = ordered_json::array();
    for (const auto& mass : d.pmf()) {
        pmf.push_back(to_string(mass));
    }
    return ordered_json{{"n", d.n()}, {"pmf", std::move(pmf)}};
}

Distribution distribution_from_json(const json& j, NumberMode mode) {
    if (!j.is_object()) {
        throw FormatError("distribution must be a JSON object with 'n' and 'pmf'");
    }
    const std::size_t n = size_field(j, "n");
    if (!j.contains("pmf") || !j["pmf"].is_array()) {
        throw FormatError("field 'pmf' must be an array");
    }
    const auto& entries = j["pmf"];
    if (entries.size() != n) {
        throw FormatError("'pmf' has " + std::to_string(entries.size()) + " entries but n = " +
                          std::to_string(n));
    }
    std::vector<Rational> pmf;
    pmf.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        pmf.push_back(entry_from_json(entries[i], mode, i));
    }
    return Distribution(std::move(pmf));
}

Distribution load_distribution(const std::filesystem::path& path, NumberMode mode) {
    return distribution_from_json(parse_json_file(path), mode);
}

void store_distribution(const Distribution& d, const std::filesystem::path& path) {
    write_text_file(path, to_json(d).dump(2) + "\n");
}

json to_json(const IntervalPartition& partition) {
    return json(partition.bounds());
}

IntervalPartition partition_from_json(const json& j) {
    if (!j.is_array()) {
        throw FormatError("partition must be an array of bounds");
    }
    std::vector<std::size_t> bounds;
    for (const auto& b : j) {
        if (!is_non_negative_integer(b)) {
            throw FormatError("partition bounds must be non-negative integers");
        }
        bounds.push_back(b.get<std::size_t>());
    }
    try {
        return IntervalPartition(std::move(bounds));
    } catch (const InvalidArgument& e) {
        throw FormatError(e.what());
    }
}

ordered_json to_json(const SampleSet& samples) {
    ordered_json out{{"samples", samples.values}};
    if (samples.seed) {
        out["seed"] = *samples.seed;
    }
    return out;
}

SampleSet sample_set_from_json(const json& j) {
    const json* values = &j;
    SampleSet out;
    if (j.is_object()) {
        if (!j.contains("samples")) {
            throw FormatError("sample set object needs a 'samples' array");
        }
        values = &j["samples"];
        if (j.contains("seed")) {
            if (!is_non_negative_integer(j["seed"])) {
                throw FormatError("'seed' must be a non-negative integer");
            }
            out.seed = j["seed"].get<std::uint64_t>();
        }
    }
    if (!values->is_array()) {
        throw FormatError("samples must be an array of positive integers");
    }
    for (const auto& v : *values) {
        if (!v.is_number_integer() || v.get<long long>() < 1) {
            throw FormatError("samples must be positive integers");
        }
        out.values.push_back(v.get<std::size_t>());
    }
    return out;
}

ordered_json to_json(const HardInstancePair& pair) {
    return ordered_json{{"m", pair.m},
                        {"b", pair.b},
                        {"k_prime", pair.k_prime},
                        {"shift_fraction", to_string(pair.shift_fraction)},
                        {"p_string", pair.p_string.symbols()},
                        {"q_string", pair.q_string.symbols()},
                        {"p_base", to_json(pair.p_base)},
                        {"q_base", to_json(pair.q_base)},
                        {"p_big", to_json(pair.p_big)},
                        {"q_big", to_json(pair.q_big)}};
}

HardInstancePair hard_instance_from_json(const json& j, NumberMode mode) {
    if (!j.is_object()) {
        throw FormatError("hard instance must be a JSON object");
    }
    try {
        HardPairBases bases{size_field(j, "m"),
                            parse_rational(string_field(j, "shift_fraction")),
                            MassString(string_field(j, "p_string")),
                            MassString(string_field(j, "q_string")),
                            distribution_from_json(j.at("p_base"), mode),
                            distribution_from_json(j.at("q_base"), mode),
                            0,
                            0};
        if (bases.p_base != bases.p_string.to_distribution() ||
            bases.q_base != bases.q_string.to_distribution()) {
            throw FormatError("base distributions do not match their mass strings");
        }
        const std::size_t b = size_field(j, "b");
        if (b != bases.p_string.b()) {
            throw FormatError("'b' does not match the mass string length");
        }
        HardInstancePair pair = make_hard_instance(bases, size_field(j, "k_prime"));
        if (j.contains("p_big") && distribution_from_json(j["p_big"], mode) != pair.p_big) {
            throw FormatError("'p_big' is not the block construction of 'p_base'");
        }
        if (j.contains("q_big") && distribution_from_json(j["q_big"], mode) != pair.q_big) {
            throw FormatError("'q_big' is not the block construction of 'q_base'");
        }
        return pair;
    } catch (const json::exception& e) {
        throw FormatError(std::string("hard instance: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw FormatError(std::string("hard instance: ") + e.what());
    }
}

json parse_json_file(const std::filesystem::path& path) {
    try {
        if (path == "-") {
            return json::parse(std::cin);
        }
        std::ifstream in(path);
        if (!in) {
            throw Error("cannot open '" + path.string() + "'");
        }
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError("malformed JSON in '" + path.string() + "': " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    out << text;
    if (!out) {
        throw Error("write failed for '" + path.string() + "'");
    }
}

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) {
            return i;
        }
    }
    throw InvalidArgument("table has no column '" + name + "'");
}

namespace {

std::string csv_cell(const std::string& cell) {
    if (cell.find_first_of(",\"\n\r") == std::string::npos) {
        return cell;
    }
    std::string quoted = "\"";
    for (char c : cell) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

void csv_line(std::ostringstream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out << ',';
        out << csv_cell(cells[i]);
    }
    out << '\n';
}

}  // namespace

std::string Table::to_csv() const {
    std::ostringstream out;
    csv_line(out, columns);
    for (const auto& row : rows) {
        csv_line(out, row);
    }
    return out.str();
}

ordered_json Table::to_json() const {
    ordered_json out = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json record = ordered_json::object();
        for (std::size_t i = 0; i < columns.size() && i < row.size(); ++i) {
            record[columns[i]] = row[i];
        }
        out.push_back(std::move(record));
    }
    return out;
}

}  // namespace binident
