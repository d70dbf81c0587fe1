#include "amm/invariant_lab.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace amm::lab {

PricingRule PricingRule::constant(double price) {
    if (!std::isfinite(price) || price <= 0.0) throw Error(ErrorCode::InvalidValue, "constant price must be > 0");
    return {"constant", [price](double, double) { return price; }};
}

PricingRule PricingRule::reserve_ratio() {
    return {"reserve_ratio", [](double x, double y) { return y / x; }};
}

PricingRule PricingRule::weighted_ratio(double weight_x, double weight_y) {
    if (!(weight_x > 0.0) || !(weight_y > 0.0)) throw Error(ErrorCode::InvalidValue, "weights must be > 0");
    const double scale = weight_x / weight_y;
    return {"weighted_ratio", [scale](double x, double y) { return scale * y / x; }};
}

namespace {

// Slope dy/dx at (x, y), or nullopt when y has left the domain.
std::optional<double> slope(const PricingRule& rule, double x, double y) {
    if (!(y > 0.0)) return std::nullopt;
    const double p = rule.eval(x, y);
    if (!std::isfinite(p) || p <= 0.0)
        throw Error(ErrorCode::NonFiniteRule,
                    "pricing rule '" + rule.name + "' returned " + std::to_string(p) + " at (" + std::to_string(x) +
                        ", " + std::to_string(y) + ")");
    return -p;
}

}  // namespace

CurveSample derive_curve(const PricingRule& rule, CurvePoint start, double x_end, std::size_t steps) {
    if (!rule.eval) throw Error(ErrorCode::InvalidValue, "pricing rule has no evaluator");
    if (!(start.x > 0.0) || !(start.y > 0.0)) throw Error(ErrorCode::InvalidValue, "start point must be positive");
    if (!std::isfinite(x_end) || !(x_end > start.x)) throw Error(ErrorCode::InvalidValue, "x_end must exceed x0");
    if (steps < 2) throw Error(ErrorCode::InvalidValue, "need at least two steps");

    CurveSample sample;
    sample.step = (x_end - start.x) / static_cast<double>(steps);
    sample.points.reserve(steps + 1);
    sample.points.push_back(start);

    const double h = sample.step;
    double y = start.y;
    for (std::size_t i = 0; i < steps; ++i) {
        const double x = start.x + static_cast<double>(i) * h;
        const double x_next = (i + 1 == steps) ? x_end : start.x + static_cast<double>(i + 1) * h;

        const auto k1 = slope(rule, x, y);
        const auto k2 = k1 ? slope(rule, x + 0.5 * h, y + 0.5 * h * *k1) : std::nullopt;
        const auto k3 = k2 ? slope(rule, x + 0.5 * h, y + 0.5 * h * *k2) : std::nullopt;
        const auto k4 = k3 ? slope(rule, x + h, y + h * *k3) : std::nullopt;
        if (!k4) {
            sample.domain_exit = true;
            break;
        }
        const double y_next = y + h * (*k1 + 2.0 * (*k2 + *k3) + *k4) / 6.0;
        if (!(y_next > 0.0)) {
            sample.domain_exit = true;
            break;
        }
        y = y_next;
        sample.points.push_back({x_next, y});
    }
    return sample;
}

double check_invariant_constancy(const CurveSample& sample, const Candidate& candidate) {
    if (sample.points.empty()) throw Error(ErrorCode::InvalidValue, "empty curve sample");
    const double reference = candidate(sample.points.front().x, sample.points.front().y);
    const double scale = reference == 0.0 ? 1.0 : std::abs(reference);
    double worst = 0.0;
    for (const auto& p : sample.points) worst = std::max(worst, std::abs(candidate(p.x, p.y) - reference) / scale);
    return worst;
}

namespace {

// dy/dx at node i.
double node_slope(const std::vector<CurvePoint>& pts, std::size_t i) {
    const std::size_t n = pts.size();
    if (n == 2) return (pts[1].y - pts[0].y) / (pts[1].x - pts[0].x);
    if (i == 0) {
        const double h = pts[1].x - pts[0].x;
        return (-3.0 * pts[0].y + 4.0 * pts[1].y - pts[2].y) / (2.0 * h);
    }
    if (i == n - 1) {
        const double h = pts[n - 1].x - pts[n - 2].x;
        return (3.0 * pts[n - 1].y - 4.0 * pts[n - 2].y + pts[n - 3].y) / (2.0 * h);
    }
    return (pts[i + 1].y - pts[i - 1].y) / (pts[i + 1].x - pts[i - 1].x);
}

}  // namespace

Price implied_price(const CurveSample& sample, double x) {
    const auto& pts = sample.points;
    if (pts.size() < 2) throw Error(ErrorCode::OutOfRange, "sample too short to difference");
    if (!(x >= pts.front().x) || !(x <= pts.back().x))
        throw Error(ErrorCode::OutOfRange, "x = " + std::to_string(x) + " outside sampled range [" +
                                               std::to_string(pts.front().x) + ", " + std::to_string(pts.back().x) + "]");

    auto upper = std::upper_bound(pts.begin(), pts.end(), x, [](double v, const CurvePoint& p) { return v < p.x; });
    std::size_t hi = upper == pts.end() ? pts.size() - 1 : static_cast<std::size_t>(upper - pts.begin());
    std::size_t lo = hi == 0 ? 0 : hi - 1;
    if (hi == lo) hi = lo + 1;

    const double t = (x - pts[lo].x) / (pts[hi].x - pts[lo].x);
    const double dydx = (1.0 - t) * node_slope(pts, lo) + t * node_slope(pts, hi);
    return Price(-dydx);
}

}  // namespace amm::lab
