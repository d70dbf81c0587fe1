#include <gtest/gtest.h>

#include "amm/cfmm.hpp"
#include "amm/invariant_lab.hpp"
#include "oracles.hpp"

using namespace amm;
using namespace amm::lab;
using amm::oracle::rel_err;

namespace {

const Candidate kSum = [](double x, double y) { return x + y; };
const Candidate kProduct = [](double x, double y) { return x * y; };

}  // namespace

TEST(DeriveCurve, ConstantPriceGivesConstantSum) {
    const auto sample = derive_curve(PricingRule::constant(1.0), {50, 50}, 90);
    ASSERT_FALSE(sample.domain_exit);
    ASSERT_EQ(sample.points.size(), kDefaultSteps + 1);
    EXPECT_EQ(sample.points.back().x, 90.0);
    for (const auto& p : sample.points) EXPECT_NEAR(p.x + p.y, 100.0, 1e-10);
}

TEST(DeriveCurve, ReserveRatioGivesConstantProduct) {
    const auto sample = derive_curve(PricingRule::reserve_ratio(), {100, 100}, 400);
    for (const auto& p : sample.points) EXPECT_LT(rel_err(p.x * p.y, 10000.0), 1e-6);
}

TEST(DeriveCurve, WeightedRatioGivesWeightedMean) {
    const auto sample = derive_curve(PricingRule::weighted_ratio(0.8, 0.2), {100, 100}, 400);
    const auto mean = [](double x, double y) { return std::pow(x, 0.8) * std::pow(y, 0.2); };
    EXPECT_LT(check_invariant_constancy(sample, mean), 1e-6);
    // separable ODE: y = y0 * (x0 / x)^(w_x / w_y)
    for (const auto& p : sample.points) EXPECT_LT(rel_err(p.y, 100.0 * std::pow(100.0 / p.x, 4.0)), 1e-6);
}

TEST(DeriveCurve, ConstantSumExhaustionTruncates) {
    const auto sample = derive_curve(PricingRule::constant(1.0), {50, 50}, 150, 1000);
    EXPECT_TRUE(sample.domain_exit);
    EXPECT_GT(sample.points.back().y, 0.0);
    EXPECT_LT(sample.points.back().x, 100.0);
    EXPECT_LT(sample.points.size(), 1001u);
}

TEST(DeriveCurve, RejectsBadRulesAndInputs) {
    const PricingRule nan_rule{"nan", [](double, double) { return std::nan(""); }};
    const PricingRule negative{"negative", [](double, double) { return -1.0; }};
    for (const auto& rule : {nan_rule, negative}) {
        try {
            derive_curve(rule, {1, 1}, 2, 10);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::NonFiniteRule);
        }
    }
    EXPECT_THROW(derive_curve(PricingRule::constant(1), {1, 1}, 1, 10), Error);
    EXPECT_THROW(derive_curve(PricingRule::constant(1), {0, 1}, 2, 10), Error);
    EXPECT_THROW(derive_curve(PricingRule::constant(1), {1, 1}, 2, 1), Error);
}

TEST(Constancy, Examples) {
    const auto line = derive_curve(PricingRule::constant(1.0), {50, 50}, 90);
    EXPECT_LT(check_invariant_constancy(line, kSum), 1e-10);

    const auto hyperbola = derive_curve(PricingRule::reserve_ratio(), {100, 100}, 400);
    EXPECT_GT(check_invariant_constancy(hyperbola, kSum), 0.1);
    EXPECT_LT(check_invariant_constancy(hyperbola, kProduct), 1e-6);

    EXPECT_THROW(check_invariant_constancy(CurveSample{}, kSum), Error);
}

TEST(Constancy, FourthOrderConvergence) {
    const auto rule = PricingRule::weighted_ratio(0.6, 0.4);
    const Candidate mean = [](double x, double y) { return std::pow(x, 0.6) * std::pow(y, 0.4); };
    for (std::size_t steps : {8u, 16u, 32u, 64u}) {
        const double coarse = check_invariant_constancy(derive_curve(rule, {100, 100}, 400, steps), mean);
        const double fine = check_invariant_constancy(derive_curve(rule, {100, 100}, 400, 2 * steps), mean);
        EXPECT_GE(coarse / fine, 8.0) << "steps " << steps;
    }
}

TEST(Constancy, ReserveRatioStepIsExact) {
    // one RK4 step on dy/dx = -y/x lands on the hyperbola up to rounding
    const auto sample = derive_curve(PricingRule::reserve_ratio(), {100, 100}, 400, 8);
    EXPECT_LT(check_invariant_constancy(sample, kProduct), 1e-14);
}

TEST(ImpliedPrice, Examples) {
    const auto line = derive_curve(PricingRule::constant(1.0), {50, 50}, 90);
    for (double x : {50.0, 61.3, 77.77, 90.0}) EXPECT_NEAR(implied_price(line, x).value(), 1.0, 1e-8);

    const auto from_center = derive_curve(PricingRule::reserve_ratio(), {100, 100}, 400);
    EXPECT_NEAR(implied_price(from_center, 100).value(), 1.0, 1e-4);

    const auto from_left = derive_curve(PricingRule::reserve_ratio(), {25, 400}, 400);
    EXPECT_NEAR(implied_price(from_left, 50).value(), 4.0, 1e-3);

    EXPECT_THROW(implied_price(from_center, 99.0), Error);
    EXPECT_THROW(implied_price(from_center, 400.5), Error);
}

TEST(ImpliedPrice, MatchesRuleAtInteriorPoints) {
    const auto rule = PricingRule::weighted_ratio(0.3, 0.7);
    const auto sample = derive_curve(rule, {10, 1000}, 200);
    for (double x = 12.5; x < 199.0; x += 7.3) {
        const double y = 1000.0 * std::pow(10.0 / x, 0.3 / 0.7);  // closed-form curve
        EXPECT_LT(rel_err(implied_price(sample, x).value(), rule.eval(x, y)), 1e-4) << "x " << x;
    }
}

TEST(DeriveCurve, ReproducesConstantProductTradingCurve) {
    const auto pool = PoolState::constant_product("x", 100, "y", 100);
    const PricingRule spot{"cp_spot", [](double x, double y) { return y / x; }};
    const auto sample = derive_curve(spot, {100, 100}, 400);
    for (std::size_t i = 1; i < sample.points.size(); i += 97) {
        const auto& p = sample.points[i];
        const double out = cfmm::swap(pool, "x", Amount(p.x - 100)).new_state.balance("y");
        EXPECT_NEAR(out, p.y, 1e-6);
    }
}
