#include "qdarwin/oracle.hpp"

#include "qdarwin/entropy.hpp"
#include "qdarwin/numeric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qdarwin::oracle {

namespace {

void guard_qubits(std::size_t qubits) {
    if (qubits > kMaxQubits) {
        throw std::length_error("oracle limited to " + std::to_string(kMaxQubits) + " qubits, got " +
                                std::to_string(qubits));
    }
}

std::vector<std::size_t> logical_with_system(const FractionSelection& sel) {
    std::vector<std::size_t> out{0};
    for (std::size_t k : sel.indices()) out.push_back(k + 1);
    return out;
}

std::vector<std::size_t> logical(const FractionSelection& sel) {
    std::vector<std::size_t> out;
    for (std::size_t k : sel.indices()) out.push_back(k + 1);
    return out;
}

// Gathers the bits of `index` at `positions` into a compact integer.
std::size_t gather(std::size_t index, const std::vector<std::size_t>& positions) {
    std::size_t out = 0;
    for (std::size_t j = 0; j < positions.size(); ++j) out |= ((index >> positions[j]) & 1U) << j;
    return out;
}

}  // namespace

StateVector::StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
    : qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    guard_qubits(qubits_);
    if (qubits_ < 1 || amplitudes_.size() != (std::size_t{1} << qubits_)) {
        throw std::invalid_argument("amplitude count must be 2^qubits");
    }
    if (std::abs(norm_squared() - 1.0) > 1e-9) throw std::invalid_argument("state is not normalized");
}

double StateVector::norm_squared() const {
    CompensatedSum sum;
    for (const auto& a : amplitudes_) sum.add(std::norm(a));
    return sum.value();
}

void StateVector::apply_two_qubit(std::size_t control, std::size_t target, const Eigen::Matrix4cd& gate) {
    if (control >= qubits_ || target >= qubits_ || control == target) {
        throw std::invalid_argument("bad gate qubits");
    }
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t base = 0; base < amplitudes_.size(); ++base) {
        if (base & (cbit | tbit)) continue;
        const std::array<std::size_t, 4> idx{base, base | tbit, base | cbit, base | cbit | tbit};
        Eigen::Vector4cd in;
        for (int r = 0; r < 4; ++r) in[r] = amplitudes_[idx[r]];
        const Eigen::Vector4cd out = gate * in;
        for (int r = 0; r < 4; ++r) amplitudes_[idx[r]] = out[r];
    }
}

StateVector build_two_branch(const std::vector<Qubit>& branch0, const std::vector<Qubit>& branch1) {
    if (branch0.size() != branch1.size() || branch0.empty()) {
        throw std::invalid_argument("branches must have the same nonzero length");
    }
    const std::size_t qubits = branch0.size() + 1;
    guard_qubits(qubits);
    std::vector<Complex> amps(std::size_t{1} << qubits);
    const double w = 1.0 / std::sqrt(2.0);
    for (std::size_t env = 0; env < (std::size_t{1} << branch0.size()); ++env) {
        Complex a0 = w;
        Complex a1 = w;
        for (std::size_t k = 0; k < branch0.size(); ++k) {
            const std::size_t bit = (env >> k) & 1U;
            a0 *= branch0[k][bit];
            a1 *= branch1[k][bit];
        }
        amps[env << 1] = a0;
        amps[(env << 1) | 1U] = a1;
    }
    return StateVector(qubits, std::move(amps));
}

StateVector build_state_ghz_junk(const GhzJunkConfig& cfg, const Qubit& junk_state) {
    cfg.validate();
    guard_qubits(cfg.n_total + 1);
    const double norm = std::sqrt(std::norm(junk_state[0]) + std::norm(junk_state[1]));
    const Qubit junk{junk_state[0] / norm, junk_state[1] / norm};
    std::vector<Qubit> b0(cfg.n_total, junk);
    std::vector<Qubit> b1(cfg.n_total, junk);
    for (std::size_t k = 0; k < cfg.n_correlated; ++k) {
        b0[k] = {1.0, 0.0};
        b1[k] = {0.0, 1.0};
    }
    return build_two_branch(b0, b1);
}

StateVector build_state_icnot(const PVector& p) {
    guard_qubits(p.size() + 1);
    std::vector<Qubit> b0(p.size(), Qubit{1.0, 0.0});
    std::vector<Qubit> b1;
    for (double pk : p.values()) b1.push_back({std::sqrt(1.0 - pk), std::sqrt(pk)});
    return build_two_branch(b0, b1);
}

Eigen::Matrix4cd icnot_gate(double p) {
    const double c = std::sqrt(1.0 - p);
    const double s = std::sqrt(p);
    Eigen::Matrix4cd g = Eigen::Matrix4cd::Zero();
    g(0, 0) = 1.0;
    g(1, 1) = 1.0;
    g(2, 2) = c;
    g(2, 3) = s;
    g(3, 2) = s;
    g(3, 3) = -c;
    return g;
}

StateVector build_state_icnot_by_gates(const PVector& p) {
    const std::size_t qubits = p.size() + 1;
    guard_qubits(qubits);
    std::vector<Complex> amps(std::size_t{1} << qubits);
    amps[0] = 1.0 / std::sqrt(2.0);
    amps[1] = 1.0 / std::sqrt(2.0);
    StateVector sv(qubits, std::move(amps));
    for (std::size_t k = 0; k < p.size(); ++k) sv.apply_two_qubit(0, k + 1, icnot_gate(p[k]));
    return sv;
}

DensityMatrix partial_trace(const StateVector& sv, const std::vector<std::size_t>& keep) {
    std::vector<std::size_t> kept = keep;
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) throw std::invalid_argument("duplicate qubits");
    if (!kept.empty() && kept.back() >= sv.qubits()) throw std::out_of_range("qubit out of range");
    const std::size_t dim = std::size_t{1} << kept.size();
    if (dim > kMaxKeptDimension) throw std::length_error("kept dimension exceeds oracle guard");

    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < sv.qubits(); ++q) {
        if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);
    }
    // Amplitudes arranged as M(kept, traced); ρ = M M†.
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(std::size_t{1} << traced.size()));
    for (std::size_t i = 0; i < sv.amplitudes().size(); ++i) {
        m(static_cast<Eigen::Index>(gather(i, kept)), static_cast<Eigen::Index>(gather(i, traced))) = sv[i];
    }
    return m * m.adjoint();
}

std::vector<double> hermitian_spectrum(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

std::vector<double> reduced_spectrum(const StateVector& sv, const std::vector<std::size_t>& keep) {
    std::vector<std::size_t> rest;
    for (std::size_t q = 0; q < sv.qubits(); ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) rest.push_back(q);
    }
    const auto& smaller = keep.size() <= rest.size() ? keep : rest;
    return hermitian_spectrum(partial_trace(sv, smaller));
}

double spectrum_entropy(std::vector<double> spectrum) {
    for (double& lambda : spectrum) {
        if (lambda < 1e-12) lambda = 0.0;
    }
    return von_neumann_entropy(spectrum);
}

double subsystem_entropy(const StateVector& sv, const std::vector<std::size_t>& keep) {
    if (keep.empty() || keep.size() == sv.qubits()) return 0.0;
    return spectrum_entropy(reduced_spectrum(sv, keep));
}

double qmi_brute(const StateVector& sv, const FractionSelection& sel) {
    sel.check_bounds(sv.n_env());
    return subsystem_entropy(sv, {0}) + subsystem_entropy(sv, logical(sel)) -
           subsystem_entropy(sv, logical_with_system(sel));
}

double averaged_qmi_brute(const StateVector& sv, std::size_t l) {
    const std::size_t n = sv.n_env();
    if (l > n) throw std::out_of_range("fraction size exceeds environment");
    CompensatedSum sum;
    std::size_t count = 0;
    // Every size-l mask of the environment, in increasing numeric order.
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != l) continue;
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < n; ++k) {
            if ((mask >> k) & 1U) idx.push_back(k);
        }
        sum.add(qmi_brute(sv, FractionSelection(std::move(idx))));
        ++count;
    }
    return sum.value() / static_cast<double>(count);
}

double classical_mi_brute(const Eigen::MatrixXd& joint) {
    CompensatedSum total;
    for (Eigen::Index i = 0; i < joint.size(); ++i) {
        if (joint.data()[i] < -1e-12) throw std::domain_error("negative joint probability");
        total.add(joint.data()[i]);
    }
    if (std::abs(total.value() - 1.0) > 1e-9) throw std::domain_error("joint distribution not normalized");

    auto entropy_of = [](const Eigen::VectorXd& v) {
        CompensatedSum h;
        for (Eigen::Index i = 0; i < v.size(); ++i) h.add(-xlogx(std::max(0.0, v[i])));
        return h.value();
    };
    const Eigen::VectorXd rows = joint.rowwise().sum();
    const Eigen::VectorXd cols = joint.colwise().sum().transpose();
    const Eigen::VectorXd flat = joint.reshaped();
    return std::max(0.0, entropy_of(rows) + entropy_of(cols) - entropy_of(flat));
}

Eigen::MatrixXd icnot_joint_distribution(const PVector& p, const FractionSelection& sel) {
    sel.check_bounds(p.size());
    const StateVector sv = build_state_icnot(p);
    const std::vector<std::size_t> frac = logical(sel);
    Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(2, static_cast<Eigen::Index>(std::size_t{1} << frac.size()));
    for (std::size_t i = 0; i < sv.amplitudes().size(); ++i) {
        joint(static_cast<Eigen::Index>(i & 1U), static_cast<Eigen::Index>(gather(i, frac))) += std::norm(sv[i]);
    }
    return joint;
}

Eigen::MatrixXd three_outcome_joint(double p_half) {
    Eigen::MatrixXd joint(2, 2);
    joint << 0.5, 0.0, p_half, 0.5 - p_half;
    return joint;
}

}  // namespace qdarwin::oracle

namespace qdarwin::oracle {

RandomTwoBranch two_branch_from_uniforms(std::size_t n_env, const std::vector<double>& u) {
    if (u.size() < 6 * n_env) throw std::invalid_argument("need six uniforms per qubit");
    constexpr double two_pi = 6.283185307179586;
    std::vector<double> overlaps;
    std::vector<Qubit> b0;
    std::vector<Qubit> b1;
    for (std::size_t k = 0; k < n_env; ++k) {
        const double* r = &u[6 * k];
        double o = r[0];
        if (r[1] < 0.2) {
            o = 0.0;
        } else if (r[1] < 0.4) {
            o = 1.0;
        }
        const double theta = std::acos(1.0 - 2.0 * r[2]) / 2.0;
        const Qubit a{std::cos(theta), std::polar(std::sin(theta), two_pi * r[3])};
        const Qubit a_perp{-std::conj(a[1]), std::conj(a[0])};
        const Complex phase = std::polar(1.0, two_pi * r[4]);
        const double s = std::sqrt(std::max(0.0, 1.0 - o * o));
        const Complex rel = std::polar(1.0, two_pi * r[5]);
        const Qubit b{phase * (o * a[0] + s * rel * a_perp[0]), phase * (o * a[1] + s * rel * a_perp[1])};
        overlaps.push_back(o);
        b0.push_back(a);
        b1.push_back(b);
    }
    return {OverlapVector(std::move(overlaps)), build_two_branch(b0, b1)};
}

}  // namespace qdarwin::oracle
