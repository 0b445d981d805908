#include "qdarwin/branch_model.hpp"

#include "qdarwin/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qdarwin {

namespace {

double checked_unit(double x, const char* what) {
    if (!(x >= -kProbabilityTolerance && x <= 1.0 + kProbabilityTolerance)) {
        throw std::domain_error(std::string(what) + " out of [0,1]: " + std::to_string(x));
    }
    return std::clamp(x, 0.0, 1.0);
}

// Spectrum of a rank-≤2 reduced state whose traced-out branches overlap by o.
double branch_entropy(double overlap) { return binary_entropy(0.5 * (1.0 + overlap)); }

}  // namespace

OverlapVector::OverlapVector(std::vector<double> overlaps) : overlaps_(std::move(overlaps)) {
    if (overlaps_.empty()) throw std::invalid_argument("overlap vector must be nonempty");
    for (double& o : overlaps_) o = checked_unit(std::abs(o), "overlap");
}

double OverlapVector::full_overlap() const {
    double product = 1.0;
    for (double o : overlaps_) product *= o;
    return product;
}

FractionSelection::FractionSelection(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
        throw std::invalid_argument("fraction selection has duplicate indices");
    }
}

FractionSelection FractionSelection::all(std::size_t n) {
    std::vector<std::size_t> idx(n);
    for (std::size_t k = 0; k < n; ++k) idx[k] = k;
    return FractionSelection(std::move(idx));
}

FractionSelection FractionSelection::prefix(std::span<const std::size_t> order, std::size_t l) {
    if (l > order.size()) throw std::out_of_range("prefix longer than ordering");
    return FractionSelection(std::vector<std::size_t>(order.begin(), order.begin() + l));
}

bool FractionSelection::contains(std::size_t index) const {
    return std::binary_search(indices_.begin(), indices_.end(), index);
}

void FractionSelection::check_bounds(std::size_t n) const {
    if (!indices_.empty() && indices_.back() >= n) {
        throw std::out_of_range("fraction index " + std::to_string(indices_.back()) +
                                " out of range for environment of " + std::to_string(n));
    }
}

FractionSelection FractionSelection::complement(std::size_t n) const {
    check_bounds(n);
    std::vector<std::size_t> rest;
    rest.reserve(n - indices_.size());
    auto it = indices_.begin();
    for (std::size_t k = 0; k < n; ++k) {
        if (it != indices_.end() && *it == k) {
            ++it;
        } else {
            rest.push_back(k);
        }
    }
    FractionSelection out;
    out.indices_ = std::move(rest);
    return out;
}

PVector::PVector(std::vector<double> probs) : probs_(std::move(probs)) {
    for (double& p : probs_) p = checked_unit(p, "flip probability");
}

void GhzJunkConfig::validate() const {
    if (n_total == 0) throw std::invalid_argument("environment must have at least one qubit");
    if (n_correlated > n_total) {
        throw std::invalid_argument("m = " + std::to_string(n_correlated) + " exceeds N = " +
                                    std::to_string(n_total));
    }
}

OverlapVector ghz_junk_overlaps(const GhzJunkConfig& cfg) {
    cfg.validate();
    std::vector<double> ov(cfg.n_total, 1.0);
    std::fill_n(ov.begin(), cfg.n_correlated, 0.0);
    return OverlapVector(std::move(ov));
}

OverlapVector icnot_overlaps(const PVector& p) {
    std::vector<double> ov;
    ov.reserve(p.size());
    for (double pk : p.values()) ov.push_back(std::sqrt(1.0 - pk));
    return OverlapVector(std::move(ov));
}

double subset_overlap(const OverlapVector& ov, const FractionSelection& sel) {
    sel.check_bounds(ov.size());
    double product = 1.0;
    for (std::size_t k : sel.indices()) product *= ov[k];
    return product;
}

double qmi_from_overlaps(double full, double inside, double outside) {
    return branch_entropy(full) + branch_entropy(inside) - branch_entropy(outside);
}

double qmi_exact(const OverlapVector& ov, const FractionSelection& sel) {
    sel.check_bounds(ov.size());
    double inside = 1.0;
    double outside = 1.0;
    for (std::size_t k = 0; k < ov.size(); ++k) {
        (sel.contains(k) ? inside : outside) *= ov[k];
    }
    return qmi_from_overlaps(ov.full_overlap(), inside, outside);
}

double system_entropy(const OverlapVector& ov) { return branch_entropy(ov.full_overlap()); }

bool is_ghz_junk(const OverlapVector& ov, std::size_t* m) {
    std::size_t zeros = 0;
    for (double o : ov.values()) {
        if (o == 0.0) {
            ++zeros;
        } else if (o != 1.0) {
            return false;
        }
    }
    if (m) *m = zeros;
    return true;
}

}  // namespace qdarwin
