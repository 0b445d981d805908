#include "qdarwin/numeric.hpp"

#include <cmath>
#include <limits>

namespace qdarwin {

void CompensatedSum::add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

SampleStats summarize(const std::vector<double>& values) {
    SampleStats stats;
    stats.count = values.size();
    if (values.empty()) return stats;
    CompensatedSum sum;
    for (double v : values) sum.add(v);
    stats.mean = sum.value() / static_cast<double>(values.size());
    if (values.size() < 2) return stats;
    CompensatedSum sq;
    for (double v : values) {
        const double d = v - stats.mean;
        sq.add(d * d);
    }
    const double variance = sq.value() / static_cast<double>(values.size() - 1);
    stats.stderr_ = std::sqrt(variance / static_cast<double>(values.size()));
    return stats;
}

double log_binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return -std::numeric_limits<double>::infinity();
    if (k == 0 || k == n) return 0.0;
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

double binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double result = 1.0;
    for (std::int64_t i = 1; i <= k; ++i) {
        result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return std::round(result);
}

}  // namespace qdarwin
