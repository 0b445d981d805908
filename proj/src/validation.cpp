#include "qdarwin/validation.hpp"

#include "qdarwin/accessible_info.hpp"
#include "qdarwin/fraction_average.hpp"
#include "qdarwin/oracle.hpp"
#include "qdarwin/random.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

namespace qdarwin {

namespace {

std::string describe_vector(std::span<const double> v) {
    std::ostringstream os;
    os << std::setprecision(17) << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ']';
    return os.str();
}

std::string describe_selection(const FractionSelection& sel) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < sel.size(); ++i) os << (i ? "," : "") << sel.indices()[i];
    os << '}';
    return os.str();
}

class Check {
public:
    Check(std::string name, double tolerance) {
        result_.name = std::move(name);
        result_.tolerance = tolerance;
    }

    void record(double expected, double actual, const std::function<std::string()>& context) {
        ++result_.cases;
        const double err = std::abs(expected - actual);
        result_.max_error = std::max(result_.max_error, err);
        if (!(err <= result_.tolerance) && result_.passed) {
            result_.passed = false;
            std::ostringstream os;
            os << std::setprecision(17) << context() << " expected " << expected << " got " << actual;
            result_.first_failure = os.str();
        }
    }

    ValidationCheck take() { return std::move(result_); }

private:
    ValidationCheck result_;
};

FractionSelection random_subset(std::size_t n, std::size_t l, SplitMix64& rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t j = 0; j < l; ++j) std::swap(idx[j], idx[j + rng.below(n - j)]);
    idx.resize(l);
    return FractionSelection(std::move(idx));
}

}  // namespace

bool ValidationResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

ValidationResult run_validation(const ValidationOptions& options, const QmiFunction& qmi_override) {
    if (options.n_max < 1 || options.n_max + 1 > oracle::kMaxQubits) {
        throw std::invalid_argument("n-max must lie in [1, " + std::to_string(oracle::kMaxQubits - 1) + "]");
    }
    const QmiFunction qmi = qmi_override ? qmi_override : QmiFunction(qmi_exact);

    Check closed_form("qmi_exact vs oracle", 1e-9);
    Check entropy("system_entropy vs oracle", 1e-9);
    Check complement("oracle complement identity", 1e-8);
    Check icnot_gates("iCNOT gates vs direct state", 1e-12);
    Check icnot_qmi("iCNOT overlaps vs oracle", 1e-9);
    Check accessible("accessible_mi vs classical MI", 1e-12);
    Check closed_avg("GHZ+junk closed form vs enumeration", 1e-12);
    Check brute_avg("GHZ+junk closed form vs oracle average", 1e-9);

    SplitMix64 rng(derive_seed(options.seed, {0x7a11da7eULL}));
    for (std::size_t c = 0; c < options.cases; ++c) {
        const std::size_t n = 1 + rng.below(options.n_max);
        const auto sample = oracle::random_two_branch(n, rng);
        const double s = oracle::subsystem_entropy(sample.state, {0});
        entropy.record(s, system_entropy(sample.overlaps), [&] { return "ov=" + describe_vector(sample.overlaps.values()); });
        for (std::size_t l = 0; l <= n; ++l) {
            const FractionSelection sel = random_subset(n, l, rng);
            const double brute = oracle::qmi_brute(sample.state, sel);
            closed_form.record(brute, qmi(sample.overlaps, sel), [&] {
                return "ov=" + describe_vector(sample.overlaps.values()) + " sel=" + describe_selection(sel);
            });
            const double brute_rest = oracle::qmi_brute(sample.state, sel.complement(n));
            complement.record(2.0 * s, brute + brute_rest, [&] {
                return "ov=" + describe_vector(sample.overlaps.values()) + " sel=" + describe_selection(sel);
            });
        }

        std::vector<double> probs(n);
        for (double& p : probs) {
            const double u = rng.uniform();
            p = u < 0.1 ? 0.0 : (u < 0.2 ? 1.0 : rng.uniform());
        }
        const PVector p(probs);
        const auto direct = oracle::build_state_icnot(p);
        const auto gates = oracle::build_state_icnot_by_gates(p);
        double amp_err = 0.0;
        for (std::size_t i = 0; i < direct.amplitudes().size(); ++i) {
            amp_err = std::max(amp_err, std::abs(direct[i] - gates[i]));
        }
        icnot_gates.record(0.0, amp_err, [&] { return "p=" + describe_vector(p.values()); });

        const FractionSelection sel = random_subset(n, 1 + rng.below(n), rng);
        icnot_qmi.record(oracle::qmi_brute(direct, sel), qmi(icnot_overlaps(p), sel), [&] {
            return "p=" + describe_vector(p.values()) + " sel=" + describe_selection(sel);
        });
        const double acc = accessible_mi(p, sel);
        accessible.record(oracle::classical_mi_brute(oracle::three_outcome_joint(p_half_product(p, sel))), acc, [&] {
            return "p=" + describe_vector(p.values()) + " sel=" + describe_selection(sel);
        });
    }

    for (std::size_t n = 1; n <= options.n_max; ++n) {
        for (std::size_t m = 0; m <= n; ++m) {
            const GhzJunkConfig cfg{n, m};
            const OverlapVector ov = ghz_junk_overlaps(cfg);
            for (std::size_t l = 1; l < n; ++l) {
                closed_avg.record(averaged_qmi_enumerated(ov, l).mi_nats, ghz_junk_averaged_closed_form(cfg, l), [&] {
                    return "N=" + std::to_string(n) + " m=" + std::to_string(m) + " l=" + std::to_string(l);
                });
            }
        }
    }
    const std::size_t n_brute = std::min<std::size_t>(options.n_max, 6);
    for (std::size_t m = 0; m <= n_brute; ++m) {
        const GhzJunkConfig cfg{n_brute, m};
        const auto sv = oracle::build_state_ghz_junk(cfg, {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
        for (std::size_t l = 0; l <= n_brute; ++l) {
            brute_avg.record(oracle::averaged_qmi_brute(sv, l), ghz_junk_averaged_closed_form(cfg, l), [&] {
                return "N=" + std::to_string(n_brute) + " m=" + std::to_string(m) + " l=" + std::to_string(l);
            });
        }
    }

    ValidationResult result;
    for (Check* check : {&closed_form, &entropy, &complement, &icnot_gates, &icnot_qmi, &accessible, &closed_avg, &brute_avg}) {
        result.checks.push_back(check->take());
    }
    return result;
}

void print_validation(std::ostream& os, const ValidationResult& result) {
    os << std::left << std::setw(42) << "check" << std::right << std::setw(8) << "cases" << std::setw(14)
       << "max error" << std::setw(12) << "tolerance" << "  status\n";
    for (const auto& c : result.checks) {
        os << std::left << std::setw(42) << c.name << std::right << std::setw(8) << c.cases << std::setw(14)
           << std::setprecision(3) << std::scientific << c.max_error << std::setw(12) << c.tolerance
           << std::defaultfloat << "  " << (c.passed ? "pass" : "FAIL") << '\n';
    }
    for (const auto& c : result.checks) {
        if (!c.passed) {
            os << "first failure in '" << c.name << "': " << c.first_failure << '\n';
            break;
        }
    }
}

}  // namespace qdarwin
