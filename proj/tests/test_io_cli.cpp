#include "qdarwin/io.hpp"
#include "qdarwin/mi_curve.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <random>
#include <string>

#include <unistd.h>

using namespace qdarwin;
namespace fs = std::filesystem;

namespace {

const std::string kCli = QDARWIN_CLI;
const std::string kSchema = QDARWIN_SCHEMA;

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("qdarwin_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + kCli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

// Checks the subset of JSON Schema the report schema uses: required keys,
// declared types, enums, numeric bounds and additionalProperties = false.
std::string schema_violation(const nlohmann::json& schema, const nlohmann::json& doc) {
    for (const auto& key : schema["required"]) {
        if (!doc.contains(key.get<std::string>())) return "missing " + key.get<std::string>();
    }
    const auto& props = schema["properties"];
    for (const auto& [key, value] : doc.items()) {
        if (!props.contains(key)) return "unexpected key " + key;
        const auto& rule = props[key];
        std::vector<std::string> types;
        if (rule["type"].is_array()) {
            for (const auto& t : rule["type"]) types.push_back(t);
        } else {
            types.push_back(rule["type"]);
        }
        bool type_ok = false;
        for (const auto& t : types) {
            type_ok |= (t == "null" && value.is_null()) || (t == "string" && value.is_string()) ||
                       (t == "integer" && value.is_number_integer()) || (t == "number" && value.is_number());
        }
        if (!type_ok) return "wrong type for " + key;
        if (value.is_null()) continue;
        if (rule.contains("enum") && std::find(rule["enum"].begin(), rule["enum"].end(), value) == rule["enum"].end()) {
            return "value not in enum for " + key;
        }
        if (value.is_number()) {
            const double x = value.get<double>();
            if (rule.contains("minimum") && x < rule["minimum"].get<double>()) return "below minimum: " + key;
            if (rule.contains("maximum") && x > rule["maximum"].get<double>()) return "above maximum: " + key;
            if (rule.contains("exclusiveMinimum") && x <= rule["exclusiveMinimum"].get<double>()) return "not above: " + key;
        }
    }
    return "";
}

}  // namespace

TEST_CASE("plain-text vectors") {
    CHECK(parse_reals("0.5\n# comment\n\n1\n  0.25  \n") == std::vector<double>{0.5, 1.0, 0.25});
    CHECK_THROWS_AS(parse_reals("0.5\nabc\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_reals("0.5 0.6\n"), std::invalid_argument);
    CHECK_THROWS_AS(OverlapVector(parse_reals("2.0\n")), std::domain_error);
}

TEST_CASE("shortest decimal formatting round-trips") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 20000; ++i) {
        double x;
        const std::uint64_t bits = rng();
        std::memcpy(&x, &bits, sizeof x);
        if (!std::isfinite(x)) continue;
        CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(parse_reals(format_reals({0.1, 1e-300, 0.7071067811865476})) ==
          std::vector<double>{0.1, 1e-300, 0.7071067811865476});
}

TEST_CASE("MiCurve CSV round-trips and has one row per point") {
    MiCurve curve{7, 0.6931471805599453, {}};
    for (std::size_t l : fraction_grid(7, 3)) curve.append(l, 0.1 * l + 1.0 / 3.0, l * 1e-3, 10 + l);
    const std::string csv = to_csv(curve);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    CHECK(csv.find('\r') == std::string::npos);
    const MiCurve back = curve_from_csv(csv, 7, curve.s_system);
    CHECK(to_csv(back) == csv);
    const auto j = nlohmann::json::parse(to_json(curve));
    CHECK(j["points"].size() == 4);
    CHECK(j["points"][3]["l"] == 7);
}

TEST_CASE("CLI exit codes") {
    CHECK(run("validate --n-max 3 --cases 5") == 0);
    CHECK(run("ghz-junk --n 10") == 2);
    CHECK(run("ghz-junk --n 10 --m 11") == 2);
    CHECK(run("ghz-junk --n 10 --m 2 --mode scenario-z") == 2);
    CHECK(run("icnot --dist flat") == 2);
    CHECK(run("icnot --n 10 --dist exp --rate -1 --seed 1 --samples 5") == 2);
    CHECK(run("frobnicate") == 2);
    // m = 0 has no system entropy, so no consensus can be reported.
    CHECK(run("ghz-junk --n 10 --m 0 --report " + (scratch_dir() / "r0.json").string()) == 1);
}

TEST_CASE("CLI ghz-junk report and curve") {
    const auto csv = scratch_dir() / "fig2.csv";
    const auto report = scratch_dir() / "fig2.json";
    REQUIRE(run("ghz-junk --n 1000 --m 50 --mode averaged --out " + csv.string() + " --report " + report.string()) == 0);
    const auto j = nlohmann::json::parse(read_file(report.string()));
    CHECK(j["consensus"] == 11);
    CHECK(j["redundancy"] == 50);
    CHECK(j["redundancy_kind"] == "exact");
    CHECK(schema_violation(nlohmann::json::parse(read_file(kSchema)), j).empty());
    const std::string text = read_file(csv.string());
    CHECK(std::count(text.begin(), text.end(), '\n') == 1002);

    REQUIRE(run("ghz-junk --n 100 --m 5 --mode scenario-c --out " + csv.string()) == 0);
    const MiCurve c = curve_from_csv(read_file(csv.string()), 100, 0.6931471805599453);
    for (std::size_t l = 1; l < 100; ++l) CHECK(c.points[l].mi_normalized == doctest::Approx(1.0));
    CHECK(c.points[100].mi_normalized == doctest::Approx(2.0));

    REQUIRE(run("ghz-junk --n 1000 --m 50 --stride 50 --out " + csv.string()) == 0);
    const std::string strided = read_file(csv.string());
    CHECK(std::count(strided.begin(), strided.end(), '\n') == 22);
}

TEST_CASE("CLI icnot with a fixed environment") {
    const auto pfile = scratch_dir() / "ones.txt";
    write_file(pfile.string(), "1\n1\n1\n1\n1\n");
    const auto csv = scratch_dir() / "fixed.csv";
    const auto report = scratch_dir() / "fixed.json";
    REQUIRE(run("icnot --dist fixed --p-file " + pfile.string() + " --samples 20 --seed 3 --out " + csv.string() +
                " --report " + report.string()) == 0);
    const MiCurve c = curve_from_csv(read_file(csv.string()), 5, 0.6931471805599453);
    for (std::size_t l = 1; l <= 5; ++l) CHECK(c.points[l].mi_normalized == doctest::Approx(1.0));
    const auto j = nlohmann::json::parse(read_file(report.string()));
    CHECK(j["consensus"] == 5);
    CHECK(j["redundancy"] == 5.0);
    CHECK(j["seed"] == 3);
    CHECK(schema_violation(nlohmann::json::parse(read_file(kSchema)), j).empty());
}

TEST_CASE("CLI output is byte-identical across thread counts") {
    const std::string args = "icnot --n 40 --dist exp --rate 3 --samples 600 --seed 77 --mode averaged --out ";
    std::string reference;
    for (const char* threads : {"1", "2", "8"}) {
        const auto csv = scratch_dir() / (std::string("det_") + threads + ".csv");
        REQUIRE(run(args + csv.string(), std::string("QDARWIN_THREADS=") + threads) == 0);
        const std::string text = read_file(csv.string());
        if (reference.empty()) {
            reference = text;
        } else {
            CHECK(text == reference);
        }
    }
}

TEST_CASE("CLI config file with flag precedence") {
    const auto config = scratch_dir() / "config.json";
    const auto report = scratch_dir() / "config_report.json";
    write_file(config.string(), R"({"n": 100, "m": 5, "mode": "scenario-a", "threshold": 0.5})");
    REQUIRE(run("--config " + config.string() + " ghz-junk --mode scenario-c --out /dev/null --report " +
                report.string()) == 0);
    const auto j = nlohmann::json::parse(read_file(report.string()));
    CHECK(j["n"] == 100);
    CHECK(j["mode"] == "scenario-c");
    CHECK(j["threshold"] == 0.5);

    write_file(config.string(), R"({"ghz-junk": {"n": 20, "m": 4}})");
    REQUIRE(run("--config " + config.string() + " ghz-junk --out /dev/null --report " + report.string()) == 0);
    CHECK(nlohmann::json::parse(read_file(report.string()))["n"] == 20);

    write_file(config.string(), "not json");
    CHECK(run("--config " + config.string() + " ghz-junk") == 2);
}

TEST_CASE("report schema rejects malformed reports") {
    const auto schema = nlohmann::json::parse(read_file(kSchema));
    nlohmann::json doc = {{"model", "icnot"}, {"n", 10}, {"m", nullptr}, {"distribution", "flat"},
                          {"threshold", 0.99}, {"f0", 0.1}, {"consensus", 10}, {"redundancy", 3.5},
                          {"redundancy_kind", "greedy_lower_bound"}, {"seed", 1}, {"n_draws", 10},
                          {"system_entropy_nats", 0.69}};
    CHECK(schema_violation(schema, doc).empty());
    auto bad = doc;
    bad.erase("seed");
    CHECK_FALSE(schema_violation(schema, bad).empty());
    bad = doc;
    bad["consensus"] = 0;
    CHECK_FALSE(schema_violation(schema, bad).empty());
    bad = doc;
    bad["extra"] = 1;
    CHECK_FALSE(schema_violation(schema, bad).empty());
}
