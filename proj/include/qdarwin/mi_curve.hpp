#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qdarwin {

struct MiPoint {
    std::size_t l = 0;
    double f = 0.0;
    double mi_nats = 0.0;
    double mi_normalized = 0.0;
    double stderr_ = 0.0;
    std::uint64_t samples = 1;
};

/// Mutual information as a function of fraction size. Points are strictly
/// increasing in l; mi_normalized is mi_nats / s_system (0 when s_system is 0).
struct MiCurve {
    std::size_t n_env = 0;
    double s_system = 0.0;
    std::vector<MiPoint> points;

    void append(std::size_t l, double mi_nats, double stderr_, std::uint64_t samples);
    const MiPoint* find(std::size_t l) const;
};

/// Fraction sizes 0, stride, 2·stride, ..., always ending at n.
std::vector<std::size_t> fraction_grid(std::size_t n, std::size_t stride = 1);

/// `l,f,mi_nats,mi_normalized,stderr,samples` with LF endings and shortest
/// round-trip decimals.
std::string to_csv(const MiCurve& curve);
MiCurve curve_from_csv(const std::string& text, std::size_t n_env, double s_system);

std::string to_json(const MiCurve& curve);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

}  // namespace qdarwin
