#pragma once

#include <cstdint>
#include <vector>

namespace qdarwin {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

/// Mean and standard error (sample standard deviation / √n) of a sample,
/// accumulated in index order so the result is independent of how the
/// values were produced.
struct SampleStats {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::uint64_t count = 0;
};

SampleStats summarize(const std::vector<double>& values);

/// ln C(n, k); −∞ when k < 0 or k > n.
double log_binomial(std::int64_t n, std::int64_t k);

/// C(n, k) as a double, or 0 when out of range. Exact while it fits in 53 bits.
double binomial(std::int64_t n, std::int64_t k);

}  // namespace qdarwin
