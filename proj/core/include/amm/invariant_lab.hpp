#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "amm/types.hpp"

namespace amm::lab {

/// Price of x denominated in y as a function of the two reserves, p(x, y) = -dy/dx.
///
/// Callers supply smooth rules (locally Lipschitz in y on the integration
/// domain); the integrator has no step-size control to hide a rough rule.
struct PricingRule {
    std::string name;
    std::function<double(double x, double y)> eval;

    static PricingRule constant(double price);
    static PricingRule reserve_ratio();  // y / x
    static PricingRule weighted_ratio(double weight_x, double weight_y);  // (w_x / w_y) * y / x
};

struct CurvePoint {
    double x;
    double y;
};

struct CurveSample {
    std::vector<CurvePoint> points;  // x strictly increasing
    double step = 0.0;
    bool domain_exit = false;        // truncated because the next step would drive y <= 0
};

using Candidate = std::function<double(double x, double y)>;

inline constexpr std::size_t kDefaultSteps = 10'000;

/// Integrates dy/dx = -p(x, y) from `start` to `x_end` with fixed-step RK4.
///
/// Stops one step early and sets `domain_exit` if any stage would leave y > 0.
/// Throws NonFiniteRule when the rule yields a non-finite or non-positive
/// price inside the domain.
CurveSample derive_curve(const PricingRule& rule, CurvePoint start, double x_end,
                         std::size_t steps = kDefaultSteps);

// max_i |c(x_i, y_i) - c(x_0, y_0)| / |c(x_0, y_0)|
double check_invariant_constancy(const CurveSample& sample, const Candidate& candidate);

/// -dy/dx read off the sample at `x`.
///
/// Node slopes use central differences (second-order one-sided at the two
/// ends) and are linearly interpolated between nodes. Throws OutOfRange when
/// `x` lies outside the sampled span.
Price implied_price(const CurveSample& sample, double x);

}  // namespace amm::lab
