#include "qdarwin/mi_curve.hpp"

#include <json.hpp>

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace qdarwin {

void MiCurve::append(std::size_t l, double mi_nats, double stderr_, std::uint64_t samples) {
    if (l > n_env) throw std::out_of_range("fraction size exceeds environment");
    if (!points.empty() && l <= points.back().l) {
        throw std::invalid_argument("curve points must be strictly increasing in l");
    }
    MiPoint p;
    p.l = l;
    p.f = n_env == 0 ? 0.0 : static_cast<double>(l) / static_cast<double>(n_env);
    p.mi_nats = mi_nats;
    p.mi_normalized = s_system > 0.0 ? mi_nats / s_system : 0.0;
    p.stderr_ = stderr_;
    p.samples = samples;
    points.push_back(p);
}

const MiPoint* MiCurve::find(std::size_t l) const {
    for (const auto& p : points) {
        if (p.l == l) return &p;
    }
    return nullptr;
}

std::vector<std::size_t> fraction_grid(std::size_t n, std::size_t stride) {
    if (stride == 0) throw std::invalid_argument("stride must be positive");
    std::vector<std::size_t> grid;
    for (std::size_t l = 0; l < n; l += stride) grid.push_back(l);
    grid.push_back(n);
    return grid;
}

std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) throw std::runtime_error("failed to format double");
    return std::string(buf, end);
}

std::string to_csv(const MiCurve& curve) {
    std::string out = "l,f,mi_nats,mi_normalized,stderr,samples\n";
    for (const auto& p : curve.points) {
        out += std::to_string(p.l);
        out += ',';
        out += format_double(p.f);
        out += ',';
        out += format_double(p.mi_nats);
        out += ',';
        out += format_double(p.mi_normalized);
        out += ',';
        out += format_double(p.stderr_);
        out += ',';
        out += std::to_string(p.samples);
        out += '\n';
    }
    return out;
}

MiCurve curve_from_csv(const std::string& text, std::size_t n_env, double s_system) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "l,f,mi_nats,mi_normalized,stderr,samples") {
        throw std::invalid_argument("missing MiCurve CSV header");
    }
    MiCurve curve{n_env, s_system, {}};
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (cells.size() != 6) throw std::invalid_argument("bad MiCurve CSV row: " + line);
        curve.append(std::stoull(cells[0]), std::stod(cells[2]), std::stod(cells[4]), std::stoull(cells[5]));
    }
    return curve;
}

std::string to_json(const MiCurve& curve) {
    nlohmann::ordered_json j;
    j["n_env"] = curve.n_env;
    j["system_entropy_nats"] = curve.s_system;
    auto& pts = j["points"] = nlohmann::ordered_json::array();
    for (const auto& p : curve.points) {
        pts.push_back({{"l", p.l},
                       {"f", p.f},
                       {"mi_nats", p.mi_nats},
                       {"mi_normalized", p.mi_normalized},
                       {"stderr", p.stderr_},
                       {"samples", p.samples}});
    }
    return j.dump(2) + "\n";
}

}  // namespace qdarwin
