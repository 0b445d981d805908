#pragma once

// Dense statevector ground truth for small environments. Qubit 0 is the
// system; environment qubit k (OverlapVector index k) is qubit k + 1 and
// occupies bit k + 1 of the amplitude index.

#include "qdarwin/branch_model.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace qdarwin::oracle {

using Complex = std::complex<double>;
using Qubit = std::array<Complex, 2>;

inline constexpr std::size_t kMaxQubits = 14;
inline constexpr std::size_t kMaxKeptDimension = 4096;

class StateVector {
public:
    StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes);

    std::size_t qubits() const { return qubits_; }
    std::size_t n_env() const { return qubits_ - 1; }
    const std::vector<Complex>& amplitudes() const { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_[i]; }
    double norm_squared() const;

    /// Two-qubit gate on (control, target) given as a 4×4 matrix in the basis
    /// |control target⟩ = |00⟩, |01⟩, |10⟩, |11⟩.
    void apply_two_qubit(std::size_t control, std::size_t target, const Eigen::Matrix4cd& gate);

private:
    std::size_t qubits_;
    std::vector<Complex> amplitudes_;
};

using DensityMatrix = Eigen::MatrixXcd;

/// (|0⟩_S ⊗_k |a_k⟩ + |1⟩_S ⊗_k |b_k⟩)/√2 for normalized single-qubit states.
StateVector build_two_branch(const std::vector<Qubit>& branch0, const std::vector<Qubit>& branch1);

StateVector build_state_ghz_junk(const GhzJunkConfig& cfg, const Qubit& junk_state);

/// Direct construction of the post-interaction state from |+⟩_S|0⟩^⊗N.
StateVector build_state_icnot(const PVector& p);

/// The same state produced by applying the iCNOT matrix gate by gate.
StateVector build_state_icnot_by_gates(const PVector& p);

Eigen::Matrix4cd icnot_gate(double p);

/// Reduced state on the logical qubits in `keep` (0 = system).
DensityMatrix partial_trace(const StateVector& sv, const std::vector<std::size_t>& keep);

/// Eigenvalues of a Hermitian matrix, ascending.
std::vector<double> hermitian_spectrum(const DensityMatrix& rho);

/// Spectrum of the reduced state on `keep`, computed from whichever side of
/// the bipartition is smaller (both share their nonzero spectrum).
std::vector<double> reduced_spectrum(const StateVector& sv, const std::vector<std::size_t>& keep);

/// Entropy of a spectrum with eigenvalues below 1e−12 clamped to zero.
double spectrum_entropy(std::vector<double> spectrum);

double subsystem_entropy(const StateVector& sv, const std::vector<std::size_t>& keep);

/// S(ρ_S) + S(ρ_E_sel) − S(ρ_{S E_sel}); sel indexes environment qubits.
double qmi_brute(const StateVector& sv, const FractionSelection& sel);

/// Mean of qmi_brute over every size-l subset of the environment.
double averaged_qmi_brute(const StateVector& sv, std::size_t l);

/// H(row marginal) + H(column marginal) − H(joint).
double classical_mi_brute(const Eigen::MatrixXd& joint);

/// Joint distribution of (system bit, fraction outcome) for the iCNOT state
/// measured in the computational basis. Rows: system 0/1. Columns: the 2^|sel|
/// fraction bit strings, enumerated outcome by outcome.
Eigen::MatrixXd icnot_joint_distribution(const PVector& p, const FractionSelection& sel);

/// Three-outcome joint {(0, 0…0): ½, (1, 0…0): P, (1, other): ½ − P}.
Eigen::MatrixXd three_outcome_joint(double p_half);

}  // namespace qdarwin::oracle

namespace qdarwin::oracle {

/// A random two-branch state with a known overlap vector: each qubit gets a
/// random branch-0 state a and a branch-1 state with |⟨a|b⟩| = o_k and a
/// random relative phase. About a fifth of the overlaps are exactly 0 and a
/// fifth exactly 1.
struct RandomTwoBranch {
    OverlapVector overlaps;
    StateVector state;
};

template <class Rng>
RandomTwoBranch random_two_branch(std::size_t n_env, Rng& rng);

RandomTwoBranch two_branch_from_uniforms(std::size_t n_env, const std::vector<double>& u);

template <class Rng>
RandomTwoBranch random_two_branch(std::size_t n_env, Rng& rng) {
    std::vector<double> u(6 * n_env);
    for (double& x : u) x = rng.uniform();
    return two_branch_from_uniforms(n_env, u);
}

}  // namespace qdarwin::oracle
