#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "binident/error.hpp"
#include "binident/experiment.hpp"
#include "binident/io.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace binident;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "binident_harness_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

ExperimentSpec spec_from(const char* text) { return ExperimentSpec::from_json(json::parse(text)); }

}  // namespace

TEST(DistributionJson, TwentyPointReference) {
    const auto j = json::parse(R"({"n":4,"pmf":["3/10","0","1/2","1/5"]})");
    EXPECT_EQ(distribution_from_json(j, NumberMode::exact), fixtures::twenty_q());
    EXPECT_EQ(to_json(fixtures::twenty_q()).dump(), R"({"n":4,"pmf":["3/10","0","1/2","1/5"]})");
}

TEST(DistributionJson, RejectsDeficitWithExactValue) {
    const auto j = json::parse(R"({"n":2,"pmf":["1/2","49/100"]})");
    try {
        distribution_from_json(j);
        FAIL() << "expected NormalizationError";
    } catch (const NormalizationError& e) {
        EXPECT_EQ(e.deficit(), Rational(1, 100));
    }
}

TEST(DistributionJson, ModeContract) {
    const auto floats = json::parse(R"({"n":2,"pmf":[0.25,0.75]})");
    EXPECT_THROW(distribution_from_json(floats, NumberMode::exact), FormatError);
    EXPECT_EQ(distribution_from_json(floats), fixtures::from_strings({"1/4", "3/4"}));
    // 0.1 is read as its decimal text, not its binary value
    const auto tenths = json::parse(R"({"n":2,"pmf":[0.1,0.9]})");
    EXPECT_EQ(distribution_from_json(tenths).mass(1), Rational(1, 10));
    EXPECT_THROW(distribution_from_json(json::parse(R"({"n":3,"pmf":["1/2","1/2"]})")), FormatError);
    EXPECT_THROW(distribution_from_json(json::parse(R"({"n":2,"pmf":["3/2","-1/2"]})")), InvalidArgument);
    EXPECT_THROW(distribution_from_json(json::parse(R"([1])")), FormatError);
    EXPECT_THROW(distribution_from_json(json::parse(R"({"n":1,"pmf":[true]})")), FormatError);
}

TEST(DistributionJson, FileRoundTrip) {
    std::mt19937_64 rng(51);
    for (int round = 0; round < 20; ++round) {
        const auto d = oracle::random_distribution(rng, 1 + rng() % 12, 1000);
        const auto path = scratch("round_trip.json");
        store_distribution(d, path);
        EXPECT_EQ(load_distribution(path, NumberMode::exact), d);
    }
    EXPECT_THROW(load_distribution(scratch("missing.json")), Error);
    write_text_file(scratch("broken.json"), "{\"n\": ");
    EXPECT_THROW(load_distribution(scratch("broken.json")), FormatError);
}

TEST(PartitionJson, RoundTrip) {
    const IntervalPartition part({0, 8, 8, 17, 20});
    EXPECT_EQ(to_json(part).dump(), "[0,8,8,17,20]");
    EXPECT_EQ(partition_from_json(to_json(part)), part);
    EXPECT_THROW(partition_from_json(json::parse("[0,5,3]")), FormatError);
    EXPECT_THROW(partition_from_json(json::parse("[0,-1]")), FormatError);
}

TEST(SampleSetJson, RoundTrip) {
    const SampleSet s{{3, 1, 2}, 7};
    EXPECT_EQ(to_json(s).dump(), R"({"samples":[3,1,2],"seed":7})");
    const auto back = sample_set_from_json(to_json(s));
    EXPECT_EQ(back.values, s.values);
    EXPECT_EQ(back.seed, s.seed);
    EXPECT_EQ(sample_set_from_json(json::parse("[4,4]")).values, (std::vector<std::size_t>{4, 4}));
    EXPECT_THROW(sample_set_from_json(json::parse("[0]")), FormatError);
    EXPECT_THROW(sample_set_from_json(json::parse(R"({"values":[1]})")), FormatError);
}

TEST(HardInstanceJson, RoundTripAndVerification) {
    const auto bases = find_hard_pair(2, 6, Rational(1));
    ASSERT_TRUE(bases);
    const auto pair = make_hard_instance(*bases, 3);
    const auto j = to_json(pair);
    const auto back = hard_instance_from_json(json::parse(j.dump()), NumberMode::exact);
    EXPECT_EQ(back.p_big, pair.p_big);
    EXPECT_EQ(back.q_big, pair.q_big);
    EXPECT_EQ(back.p_string, pair.p_string);
    EXPECT_EQ(back.shift_fraction, pair.shift_fraction);
    EXPECT_EQ(back.k_prime, 3u);
    EXPECT_EQ(to_json(back).dump(), j.dump());

    json tampered = json::parse(j.dump());
    tampered["k_prime"] = 2;
    EXPECT_THROW(hard_instance_from_json(tampered), FormatError);
    tampered = json::parse(j.dump());
    tampered["p_string"] = tampered["q_string"];
    EXPECT_THROW(hard_instance_from_json(tampered), FormatError);
}

TEST(Table, CsvAndJson) {
    Table table{{"a", "b"}, {{"1", "x,y"}, {"2", "say \"hi\""}}};
    EXPECT_EQ(table.to_csv(), "a,b\n1,\"x,y\"\n2,\"say \"\"hi\"\"\"\n");
    EXPECT_EQ(table.column("b"), 1u);
    EXPECT_THROW(table.column("c"), InvalidArgument);
    EXPECT_EQ(table.to_json().dump(), R"([{"a":"1","b":"x,y"},{"a":"2","b":"say \"hi\""}])");
}

TEST(ExperimentSpec, ParsingAndValidation) {
    EXPECT_EQ(parse_experiment_kind("overflow-curve"), ExperimentKind::overflow_curve);
    EXPECT_THROW(parse_experiment_kind("plot"), InvalidArgument);
    EXPECT_THROW(spec_from(R"({"parameters":{}})"), FormatError);
    EXPECT_THROW(spec_from(R"({"kind":"calibration","trials":0,"parameters":{"uniform_n":4,"k":2,"epsilon":"1/2"}})"),
                 InvalidArgument);
    try {
        spec_from(R"({"kind":"calibration","parameters":{"uniform_n":4,"epsilon":"1/2"}})");
        FAIL() << "expected InvalidArgument";
    } catch (const InvalidArgument& e) {
        EXPECT_NE(std::string(e.what()).find("'k'"), std::string::npos);
    }
    const auto spec = spec_from(R"({"kind":"hard-pair-search","master_seed":3,"parameters":{"m":1,"b":4}})");
    EXPECT_EQ(spec.master_seed, 3u);
    EXPECT_EQ(spec.trials, 1u);
}

TEST(Experiment, CalibrationTable) {
    const auto spec = spec_from(
        R"({"kind":"calibration","master_seed":11,"trials":20,
            "parameters":{"uniform_n":200,"k":10,"epsilon":"1/5","constant":16}})");
    const auto result = run_experiment(spec);
    ASSERT_EQ(result.table.rows.size(), 20u);
    const auto& cols = result.table.columns;
    EXPECT_EQ(cols.front(), "n");
    EXPECT_EQ(result.table.rows[3][result.table.column("seed")], "14");
    EXPECT_EQ(result.table.rows[0][result.table.column("samples")], "4000");
    EXPECT_EQ(result.summary["trials"], 20);
    std::size_t passes = 0;
    for (const auto& row : result.table.rows) {
        const Rational error = parse_rational(row[result.table.column("ak_error")]);
        EXPECT_EQ(row[result.table.column("pass")], error <= Rational(1, 20) ? "1" : "0");
        passes += error <= Rational(1, 20) ? 1 : 0;
    }
    EXPECT_EQ(result.summary["passes"], passes);
}

TEST(Experiment, TestCurveOnTwentyPointInstance) {
    json spec_json = {{"kind", "test-curve"},
                      {"master_seed", 100},
                      {"trials", 12},
                      {"parameters",
                       {{"p", to_json(fixtures::twenty_p())},
                        {"q", to_json(fixtures::twenty_q())},
                        {"epsilons", {"1/5", "2/5"}}}}};
    const auto result = run_experiment(ExperimentSpec::from_json(spec_json));
    ASSERT_EQ(result.table.rows.size(), 24u);
    ASSERT_EQ(result.summary["points"].size(), 2u);
    EXPECT_EQ(result.summary["points"][0]["epsilon"], "1/5");
    EXPECT_EQ(result.summary["points"][1]["samples"], 400);
    EXPECT_GE(result.summary["points"][1]["accept_frequency"].get<double>(), 5.0 / 6.0);
}

TEST(Experiment, OverflowAndSearch) {
    const auto overflow = run_experiment(spec_from(
        R"({"kind":"overflow-curve","trials":50,"parameters":{"m":2,"b":6,"k_prime":4,"s_grid":[2,3,8]}})"));
    ASSERT_EQ(overflow.table.rows.size(), 150u);
    EXPECT_EQ(overflow.summary["points"][0]["overflows"], 0);
    EXPECT_EQ(overflow.summary["points"][1]["exact_probability"], "1/16");

    const auto search = run_experiment(spec_from(R"({"kind":"hard-pair-search","parameters":{"m":1,"b":4}})"));
    EXPECT_TRUE(search.summary["found"].get<bool>());
    EXPECT_EQ(search.summary["p_string"], "2233");
    const auto none = run_experiment(spec_from(R"({"kind":"hard-pair-search","parameters":{"m":1,"b":2}})"));
    EXPECT_FALSE(none.summary["found"].get<bool>());

    try {
        run_experiment(spec_from(R"({"kind":"hard-pair-search","parameters":{"m":1,"b":40}})"));
        FAIL() << "expected SizeGuardExceeded";
    } catch (const SizeGuardExceeded& e) {
        EXPECT_EQ(std::string(e.what()).rfind("experiment hard-pair-search:", 0), 0u);
    }
}

TEST(Experiment, IdenticalSpecsWriteIdenticalBytes) {
    const auto path_a = scratch("a.csv");
    const auto path_b = scratch("b.csv");
    for (const auto& [path, trials] : {std::pair{path_a, 1}, std::pair{path_b, 1}}) {
        json spec_json = {{"kind", "calibration"},
                          {"master_seed", 9},
                          {"trials", trials},
                          {"output_path", path.string()},
                          {"parameters", {{"uniform_n", 30}, {"k", 3}, {"epsilon", "1/4"}}}};
        run_experiment(ExperimentSpec::from_json(spec_json));
    }
    const auto a = slurp(path_a);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(path_b));
    EXPECT_EQ(a.substr(0, a.find('\n')),
              "n,k,epsilon,constant,samples,master_seed,trial,seed,ak_error,ak_error_float,threshold,pass");
}

TEST(Experiment, SummaryIsDerivedFromRows) {
    const auto result = run_experiment(spec_from(
        R"({"kind":"overflow-curve","trials":30,"master_seed":4,"parameters":{"m":1,"b":4,"k_prime":3,"s_grid":[2,4]}})"));
    EXPECT_EQ(summarize(ExperimentKind::overflow_curve, result.table).dump(), result.summary.dump());
}
