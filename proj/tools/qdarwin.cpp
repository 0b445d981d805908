// qdarwin: objectivity curves and reports for two-branch system–environment states.
//
//   qdarwin ghz-junk --n 1000 --m 50 --mode averaged --out fig2.csv --report fig2.json
//   qdarwin icnot --n 100 --dist flat --samples 10000 --seed 7 --mode max --out max.csv
//   qdarwin validate --n-max 10 --cases 100
//
// Exit codes: 0 success, 1 computation or validation failure, 2 usage error.

#include "qdarwin/accessible_info.hpp"
#include "qdarwin/branch_model.hpp"
#include "qdarwin/fraction_average.hpp"
#include "qdarwin/io.hpp"
#include "qdarwin/objectivity.hpp"
#include "qdarwin/validation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <numbers>
#include <random>
#include <string>

namespace {

using namespace qdarwin;

// Reads a JSON object of option values. Keys are option names without
// dashes and apply to the subcommand being run; a nested object keyed by a
// subcommand name applies only to that subcommand.
class JsonConfig : public CLI::Config {
public:
    explicit JsonConfig(const CLI::App* app) : app_(app) {}

    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        throw CLI::ConversionError("writing configs is not supported");
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        nlohmann::json j;
        try {
            input >> j;
        } catch (const nlohmann::json::exception& e) {
            throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");

        std::string command;
        for (const auto* sub : app_->get_subcommands()) command = sub->get_name();

        std::vector<CLI::ConfigItem> items;
        for (const auto& [key, value] : j.items()) {
            if (!value.is_object()) {
                items.push_back(item(command, key, value));
            } else if (key == command) {
                for (const auto& [inner, v] : value.items()) items.push_back(item(command, inner, v));
            }
        }
        return items;
    }

private:
    static CLI::ConfigItem item(const std::string& command, const std::string& name, const nlohmann::json& v) {
        CLI::ConfigItem it;
        if (!command.empty()) it.parents.push_back(command);
        it.name = name;
        it.inputs.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        return it;
    }

    const CLI::App* app_;
};

void emit(const std::string& path, const std::string& contents) {
    if (path.empty() || path == "-") {
        std::cout << contents;
    } else {
        write_file(path, contents);
    }
}

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t seed) {
    if (opt->count() > 0) return seed;
    std::random_device rd;
    const std::uint64_t generated = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cerr << "qdarwin: no --seed given; using generated seed " << generated << '\n';
    return generated;
}

struct GhzJunkArgs {
    std::size_t n = 0;
    std::size_t m = 0;
    std::string mode = "averaged";
    std::string out = "-";
    std::string report;
    double threshold = kDefaultThreshold;
    std::size_t stride = 1;
};

int run_ghz_junk(const GhzJunkArgs& a) {
    const GhzJunkConfig cfg{a.n, a.m};
    cfg.validate();

    MiCurve curve;
    if (a.mode == "averaged") {
        curve = averaged_curve(ghz_junk_overlaps(cfg), AutoStrategy{}, a.stride);
    } else {
        const ScenarioKind kind = a.mode == "scenario-a"   ? ScenarioKind::A
                                  : a.mode == "scenario-b" ? ScenarioKind::B
                                                           : ScenarioKind::C;
        curve = scenario_curve(cfg, ScenarioOrdering::builtin(kind, cfg), a.stride);
    }
    emit(a.out, to_csv(curve));

    if (!a.report.empty()) {
        if (a.m == 0) throw std::runtime_error("m = 0 leaves the system pure; consensus is undefined");
        const double s = system_entropy(ghz_junk_overlaps(cfg));
        const Consensus c = consensus_from_curve(curve, s, a.threshold);
        ObjectivityReport r;
        r.model = "ghz_junk";
        r.n = a.n;
        r.m = a.m;
        r.mode = a.mode;
        r.system_entropy_nats = s;
        r.threshold = a.threshold;
        r.f0 = c.f0;
        r.consensus = c.consensus;
        r.redundancy = static_cast<double>(redundancy_ghz_junk(cfg));
        r.redundancy_kind = RedundancyKind::exact;
        emit(a.report, to_json(r));
    }
    return 0;
}

struct IcnotArgs {
    std::size_t n = 0;
    std::string dist = "flat";
    double rate = 5.0;
    std::string p_file;
    std::uint64_t samples = 10'000;
    std::uint64_t seed = 0;
    std::string mode = "averaged";
    std::string out = "-";
    std::string report;
    double threshold = kDefaultThreshold;
};

int run_icnot(IcnotArgs a, const CLI::Option* seed_opt, const CLI::Option* n_opt) {
    PDistribution dist = FlatDistribution{};
    if (a.dist == "exp") {
        if (!(a.rate > 0.0)) throw std::invalid_argument("--rate must be positive");
        dist = ExponentialDistribution{a.rate};
    } else if (a.dist == "fixed") {
        if (a.p_file.empty()) throw std::invalid_argument("--dist fixed needs --p-file");
        PVector p = read_pvector(a.p_file);
        if (n_opt->count() == 0) a.n = p.size();
        if (p.size() != a.n) throw std::invalid_argument("--n does not match the number of values in --p-file");
        dist = FixedDistribution{std::move(p)};
    }
    if (a.n < 1) throw std::invalid_argument("--n must be at least 1");
    if (!(a.threshold > 0.0 && a.threshold <= 1.0)) throw std::invalid_argument("--threshold must lie in (0, 1]");

    const DrawPlan plan{a.samples, resolve_seed(seed_opt, a.seed), 0};
    plan.validate();

    MiCurve curve;
    if (a.mode == "averaged") {
        curve = averaged_accessible_curve(dist, a.n, plan);
    } else {
        curve = biased_accessible_curve(dist, a.n, plan, a.mode == "max" ? BiasMode::max : BiasMode::min);
    }
    emit(a.out, to_csv(curve));

    if (!a.report.empty()) {
        const Consensus c = consensus_from_curve(curve, std::numbers::ln2, a.threshold);
        const RedundancyEstimate red = redundancy_mean(dist, a.n, plan, a.threshold);
        ObjectivityReport r;
        r.model = "icnot";
        r.n = a.n;
        r.distribution = describe(dist);
        r.mode = a.mode;
        r.system_entropy_nats = std::numbers::ln2;
        r.threshold = a.threshold;
        r.f0 = c.f0;
        r.consensus = c.consensus;
        r.redundancy = red.mean;
        r.redundancy_stderr = red.stderr_;
        r.redundancy_kind = RedundancyKind::greedy_lower_bound;
        r.seed = plan.seed;
        r.n_draws = plan.n_draws;
        emit(a.report, to_json(r));
    }
    return 0;
}

int run_validate(const ValidationOptions& options) {
    const ValidationResult result = run_validation(options);
    print_validation(std::cout, result);
    return result.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-Darwinism objectivity curves and reports"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<JsonConfig>(&app));
    app.set_config("--config", "", "JSON file of option values; command-line flags take precedence");

    GhzJunkArgs ghz;
    auto* ghz_cmd = app.add_subcommand("ghz-junk", "GHZ + junk environment: averaged or scenario curves");
    ghz_cmd->add_option("--n", ghz.n, "environment qubits N")->required()->check(CLI::PositiveNumber);
    ghz_cmd->add_option("--m", ghz.m, "correlated qubits m")->required();
    ghz_cmd->add_option("--mode", ghz.mode)
        ->check(CLI::IsMember({"averaged", "scenario-a", "scenario-b", "scenario-c"}))
        ->capture_default_str();
    ghz_cmd->add_option("--out", ghz.out, "curve CSV path ('-' for stdout)")->capture_default_str();
    ghz_cmd->add_option("--report", ghz.report, "objectivity report JSON path");
    ghz_cmd->add_option("--threshold", ghz.threshold)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    ghz_cmd->add_option("--stride", ghz.stride, "spacing of fraction sizes")->check(CLI::PositiveNumber);

    IcnotArgs icnot;
    auto* icnot_cmd = app.add_subcommand("icnot", "random iCNOT environment: accessible-information curves");
    auto* n_opt = icnot_cmd->add_option("--n", icnot.n, "environment qubits N (defaults to the --p-file length)");
    icnot_cmd->add_option("--dist", icnot.dist)->check(CLI::IsMember({"flat", "exp", "fixed"}))->capture_default_str();
    icnot_cmd->add_option("--rate", icnot.rate, "exponential rate")->capture_default_str();
    icnot_cmd->add_option("--p-file", icnot.p_file, "flip probabilities, one per line")->check(CLI::ExistingFile);
    icnot_cmd->add_option("--samples", icnot.samples, "draws per point")->check(CLI::PositiveNumber)->capture_default_str();
    auto* seed_opt = icnot_cmd->add_option("--seed", icnot.seed);
    icnot_cmd->add_option("--mode", icnot.mode)->check(CLI::IsMember({"averaged", "max", "min"}))->capture_default_str();
    icnot_cmd->add_option("--out", icnot.out, "curve CSV path ('-' for stdout)")->capture_default_str();
    icnot_cmd->add_option("--report", icnot.report, "objectivity report JSON path");
    icnot_cmd->add_option("--threshold", icnot.threshold)->check(CLI::Range(0.0, 1.0))->capture_default_str();

    ValidationOptions validation;
    auto* validate_cmd = app.add_subcommand("validate", "check closed forms against the statevector oracle");
    validate_cmd->add_option("--n-max", validation.n_max)->check(CLI::Range(1, 13))->capture_default_str();
    validate_cmd->add_option("--cases", validation.cases)->capture_default_str();
    validate_cmd->add_option("--seed", validation.seed)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*ghz_cmd) return run_ghz_junk(ghz);
        if (*icnot_cmd) {
            if (icnot.dist != "fixed" && n_opt->count() == 0) {
                std::cerr << "qdarwin: --n is required\n";
                return 2;
            }
            return run_icnot(icnot, seed_opt, n_opt);
        }
        return run_validate(validation);
    } catch (const std::invalid_argument& e) {
        std::cerr << "qdarwin: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "qdarwin: " << e.what() << '\n';
        return 1;
    }
}
