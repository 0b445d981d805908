#include "qdarwin/entropy.hpp"

#include "qdarwin/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdarwin {

namespace {

double clamp_probability(double x) {
    if (!(x >= -kProbabilityTolerance && x <= 1.0 + kProbabilityTolerance)) {
        throw std::domain_error("probability out of [0,1]: " + std::to_string(x));
    }
    return std::clamp(x, 0.0, 1.0);
}

}  // namespace

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double binary_entropy(double x) {
    x = clamp_probability(x);
    // Evaluate on the smaller side so h(x) == h(1 − x) bit for bit.
    const double lo = std::min(x, 1.0 - x);
    if (lo == 0.0) return 0.0;
    return -lo * std::log(lo) - (1.0 - lo) * std::log1p(-lo);
}

double shannon_entropy(std::span<const double> dist) {
    CompensatedSum total;
    CompensatedSum h;
    for (double p : dist) {
        p = clamp_probability(p);
        total.add(p);
        h.add(-xlogx(p));
    }
    if (std::abs(total.value() - 1.0) > 1e-9) {
        throw std::domain_error("distribution not normalized: sum = " + std::to_string(total.value()));
    }
    return std::max(0.0, h.value());
}

double von_neumann_entropy(std::span<const double> spectrum) {
    CompensatedSum total;
    std::vector<double> clipped;
    clipped.reserve(spectrum.size());
    for (double lambda : spectrum) {
        if (lambda < -1e-9) {
            throw std::domain_error("negative eigenvalue: " + std::to_string(lambda));
        }
        clipped.push_back(std::max(lambda, 0.0));
        total.add(clipped.back());
    }
    if (std::abs(total.value() - 1.0) > 1e-6) {
        throw std::domain_error("spectrum trace is " + std::to_string(total.value()));
    }
    if (clipped.size() == 2) {
        return binary_entropy(clipped[0] / total.value());
    }
    CompensatedSum h;
    for (double lambda : clipped) h.add(-xlogx(lambda / total.value()));
    return std::max(0.0, h.value());
}

}  // namespace qdarwin
