#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qdarwin {

// Two-branch states (|0⟩_S|A⟩ + |1⟩_S|B⟩)/√2 with product branches
// |A⟩ = ⊗|a_k⟩, |B⟩ = ⊗|b_k⟩. Every reduced state is rank ≤ 2 with spectrum
// (1 ± o)/2, where o is the product of |⟨a_k|b_k⟩| over the traced-out
// environment qubits, so the per-qubit overlaps determine all entropies.

/// Per-qubit branch overlaps o_k ∈ [0,1]. o_k = 0: perfect record; o_k = 1: junk.
class OverlapVector {
public:
    explicit OverlapVector(std::vector<double> overlaps);
    OverlapVector(std::initializer_list<double> overlaps)
        : OverlapVector(std::vector<double>(overlaps)) {}

    std::size_t size() const { return overlaps_.size(); }
    double operator[](std::size_t k) const { return overlaps_[k]; }
    std::span<const double> values() const { return overlaps_; }

    /// Product of all overlaps (branch overlap of the whole environment).
    double full_overlap() const;

    bool operator==(const OverlapVector&) const = default;

private:
    std::vector<double> overlaps_;
};

/// A set of environment-qubit indices. Stored sorted; duplicates are rejected.
class FractionSelection {
public:
    FractionSelection() = default;
    explicit FractionSelection(std::vector<std::size_t> indices);
    FractionSelection(std::initializer_list<std::size_t> indices)
        : FractionSelection(std::vector<std::size_t>(indices)) {}

    static FractionSelection all(std::size_t n);
    static FractionSelection prefix(std::span<const std::size_t> order, std::size_t l);

    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    std::span<const std::size_t> indices() const { return indices_; }
    bool contains(std::size_t index) const;

    /// Throws std::out_of_range if any index is ≥ n.
    void check_bounds(std::size_t n) const;

    /// Indices of [0, n) not in this selection.
    FractionSelection complement(std::size_t n) const;

private:
    std::vector<std::size_t> indices_;
};

/// Per-qubit iCNOT flip probabilities p_i ∈ [0,1].
class PVector {
public:
    explicit PVector(std::vector<double> probs);
    PVector(std::initializer_list<double> probs) : PVector(std::vector<double>(probs)) {}

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t k) const { return probs_[k]; }
    std::span<const double> values() const { return probs_; }

    bool operator==(const PVector&) const = default;

private:
    std::vector<double> probs_;
};

/// N environment qubits, the first m perfectly correlated with the system and
/// the rest junk.
struct GhzJunkConfig {
    std::size_t n_total = 1;
    std::size_t n_correlated = 0;

    void validate() const;
};

OverlapVector ghz_junk_overlaps(const GhzJunkConfig& cfg);

/// o_k = √(1 − p_k): the branch of |1⟩_S after iCNOT is ⊗(√(1−p)|0⟩ + √p|1⟩).
OverlapVector icnot_overlaps(const PVector& p);

/// Π_{k∈sel} o_k; 1 for the empty selection.
double subset_overlap(const OverlapVector& ov, const FractionSelection& sel);

/// I(S:E_sel) = h((1+o_full)/2) + h((1+o(sel))/2) − h((1+o(complement))/2).
double qmi_exact(const OverlapVector& ov, const FractionSelection& sel);

/// Same quantity from the two partial overlap products; used by the averaging
/// loops that maintain products incrementally.
double qmi_from_overlaps(double full, double inside, double outside);

/// S(ρ_S) = h((1 + o_full)/2).
double system_entropy(const OverlapVector& ov);

/// True when every overlap is exactly 0 or 1, i.e. the vector is a permutation
/// of ghz_junk_overlaps. Sets *m to the number of correlated qubits.
bool is_ghz_junk(const OverlapVector& ov, std::size_t* m = nullptr);

}  // namespace qdarwin
