#include "qdarwin/objectivity.hpp"

#include "qdarwin/numeric.hpp"
#include "qdarwin/parallel.hpp"
#include "qdarwin/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qdarwin {

Consensus consensus_from_curve(const MiCurve& curve, double s_system, double threshold) {
    if (curve.points.empty()) throw std::invalid_argument("empty curve");
    if (!(s_system > 0.0)) throw std::invalid_argument("system entropy must be positive");
    if (!(threshold > 0.0 && threshold <= 1.0)) throw std::invalid_argument("threshold must lie in (0, 1]");

    const double target = threshold * s_system;
    for (const auto& p : curve.points) {
        if (p.l == 0 || p.mi_nats < target) continue;
        Consensus c;
        c.l_star = p.l;
        c.f0 = static_cast<double>(p.l) / static_cast<double>(curve.n_env);
        c.consensus = curve.n_env / p.l;
        return c;
    }
    throw NoCrossing("averaged information never reaches the threshold");
}

std::size_t redundancy_greedy(const PVector& p, double threshold, PackingOrder order) {
    if (!(threshold > 0.0 && threshold <= 1.0)) throw std::invalid_argument("threshold must lie in (0, 1]");
    std::vector<double> ps(p.values().begin(), p.values().end());
    if (order == PackingOrder::descending) {
        std::sort(ps.begin(), ps.end(), std::greater<>());
    } else if (order == PackingOrder::ascending) {
        std::sort(ps.begin(), ps.end());
    }

    // 1e-15 absorbs the rounding of ln 2 itself at threshold 1.
    const double target = threshold * std::numbers::ln2 - 1e-15;
    std::size_t fractions = 0;
    double product = 0.5;
    for (double x : ps) {
        product *= 1.0 - x;
        if (accessible_mi_from_product(product) >= target) {
            ++fractions;
            product = 0.5;
        }
    }
    return fractions;
}

RedundancyEstimate redundancy_mean(const PDistribution& dist, std::size_t n_env, const DrawPlan& plan,
                                   double threshold, PackingOrder order) {
    plan.validate();
    std::vector<double> values(plan.n_draws);
    parallel_for(
        plan.n_draws,
        [&](std::size_t d) {
            const std::uint64_t seed =
                derive_seed(plan.seed, {static_cast<std::uint64_t>(StreamTag::redundancy_draw), d});
            values[d] = static_cast<double>(redundancy_greedy(draw_pvector(dist, n_env, seed), threshold, order));
        },
        plan.threads);
    const SampleStats stats = summarize(values);
    return {stats.mean, stats.stderr_, stats.count};
}

PlateauReport detect_plateau(const MiCurve& curve, double s_system, double level_tol) {
    if (curve.points.empty()) throw std::invalid_argument("empty curve");
    PlateauReport best;
    std::size_t best_len = 0;
    std::size_t run_start = 0;
    std::size_t run_len = 0;
    const auto& pts = curve.points;
    auto near_one = [&](const MiPoint& p) {
        return s_system > 0.0 && std::abs(p.mi_nats / s_system - 1.0) <= level_tol;
    };
    for (std::size_t i = 0; i <= pts.size(); ++i) {
        if (i < pts.size() && near_one(pts[i])) {
            if (run_len == 0) run_start = i;
            ++run_len;
            continue;
        }
        if (run_len > best_len) {
            best_len = run_len;
            best.start_l = pts[run_start].l;
            best.end_l = pts[run_start + run_len - 1].l;
            CompensatedSum level;
            for (std::size_t j = run_start; j < run_start + run_len; ++j) level.add(pts[j].mi_nats / s_system);
            best.level_normalized = level.value() / static_cast<double>(run_len);
        }
        run_len = 0;
    }
    best.present = best_len >= 2;
    return best;
}

DiscordExcess discord_excess_bound(double mi_nats, double s_system) {
    if (!(s_system > 0.0)) throw std::invalid_argument("system entropy must be positive");
    DiscordExcess out;
    out.delta = mi_nats - s_system;
    if (out.delta > 0.0) out.complement_bound = s_system - out.delta;
    return out;
}

std::string to_json(const ObjectivityReport& r) {
    nlohmann::ordered_json j;
    auto optional = [](const auto& v) -> nlohmann::ordered_json {
        if (v) return *v;
        return nullptr;
    };
    j["model"] = r.model;
    j["n"] = r.n;
    j["m"] = optional(r.m);
    j["distribution"] = optional(r.distribution);
    j["mode"] = optional(r.mode);
    j["threshold"] = r.threshold;
    j["f0"] = r.f0;
    j["consensus"] = r.consensus;
    j["redundancy"] = r.redundancy;
    j["redundancy_stderr"] = optional(r.redundancy_stderr);
    j["redundancy_kind"] = r.redundancy_kind == RedundancyKind::exact ? "exact" : "greedy_lower_bound";
    j["seed"] = optional(r.seed);
    j["n_draws"] = optional(r.n_draws);
    j["system_entropy_nats"] = r.system_entropy_nats;
    return j.dump(2) + "\n";
}

}  // namespace qdarwin
