#include <gtest/gtest.h>

#include "amm/cfmm.hpp"
#include "oracles.hpp"

using namespace amm;
using amm::oracle::Gen;
using amm::oracle::rel_err;

namespace {

PoolState cp(double a, double b, double gamma = 1.0) {
    return PoolState::constant_product("alpha", a, "beta", b, FeeParam(gamma));
}

PoolState cm2(double a, double b, double w_a, double gamma = 1.0) {
    return PoolState::constant_mean({{"alpha", Amount(a), w_a}, {"beta", Amount(b), 1.0 - w_a}}, FeeParam(gamma));
}

// Values frozen from a 40-digit bisection solve of the invariant equation.
constexpr double kCpSell10 = 9.0909090909090909091;
constexpr double kCpSell10Fee = 9.0661089388014913158;

}  // namespace

TEST(CfmmSwap, ConstantProductExamples) {
    const auto q = cfmm::swap(cp(100, 100), "beta", Amount(10));
    EXPECT_EQ(q.output_asset, "alpha");
    EXPECT_LT(rel_err(q.output_amount.value(), kCpSell10), 1e-14);
    EXPECT_LT(rel_err(q.output_amount.value(), oracle::cp_output_by_invariant(100, 100, 10, 1.0)), 1e-12);

    const auto f = cfmm::swap(cp(100, 100, 0.997), "beta", Amount(10));
    EXPECT_LT(rel_err(f.output_amount.value(), kCpSell10Fee), 1e-14);
    EXPECT_LT(rel_err(f.output_amount.value(), oracle::cp_output_by_invariant(100, 100, 10, 0.997)), 1e-12);
    EXPECT_NEAR(f.fee_paid.value(), 0.03, 1e-15);
    // fee stays with the pool
    EXPECT_DOUBLE_EQ(f.new_state.balance("beta"), 110.0);
}

TEST(CfmmSwap, ConstantSumExample) {
    const auto pool = PoolState::constant_sum({{"alpha", 100}, {"beta", 100}});
    const auto q = cfmm::swap(pool, "beta", Amount(10));
    EXPECT_DOUBLE_EQ(q.output_amount.value(), 10.0);
    EXPECT_DOUBLE_EQ(invariant_value(q.new_state), 200.0);
}

TEST(CfmmSwap, EvenConstantMeanMatchesConstantProduct) {
    const auto q = cfmm::swap(cm2(100, 100, 0.5), "beta", Amount(10));
    EXPECT_LT(rel_err(q.output_amount.value(), kCpSell10), 1e-13);
}

TEST(CfmmSwap, ConstantMeanAgainstWeightedInvariantSolve) {
    Gen gen(3);
    for (int trial = 0; trial < 500; ++trial) {
        const double w = gen.uniform(0.1, 0.9);
        const double ba = gen.log_uniform(1, 1e6);
        const double bb = gen.log_uniform(1, 1e6);
        const double d = bb * gen.log_uniform(1e-4, 10);
        const auto q = cfmm::swap(cm2(ba, bb, w), "beta", Amount(d));
        // ba^w * bb^(1-w) = (ba - x)^w * (bb + d)^(1-w)
        const double target = w * std::log(ba) + (1 - w) * std::log(bb);
        const double x = oracle::bisect(
            [&](double out) { return target - (w * std::log(ba - out) + (1 - w) * std::log(bb + d)); }, 0.0, ba);
        EXPECT_LT(rel_err(q.output_amount.value(), x), 1e-9);
    }
}

TEST(CfmmSwap, MultiAssetMeanTouchesTwoReserves) {
    const double third = 1.0 / 3.0;
    const auto pool = PoolState::constant_mean(
        {{"x", Amount(100), third}, {"y", Amount(200), third}, {"z", Amount(300), 1 - 2 * third}});
    const auto q = cfmm::swap(pool, "x", "z", Amount(5));
    EXPECT_DOUBLE_EQ(q.new_state.balance("y"), 200.0);
    EXPECT_DOUBLE_EQ(q.new_state.balance("x"), 105.0);
    EXPECT_LT(rel_err(invariant_value(q.new_state), invariant_value(pool)), 1e-12);
    EXPECT_THROW(cfmm::swap(pool, "x", Amount(5)), Error);
}

TEST(CfmmSwap, Errors) {
    EXPECT_THROW(cfmm::swap(cp(100, 100), "beta", Amount(0)), Error);
    try {
        cfmm::swap(cp(100, 100), "beta", Amount(0));
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonPositiveInput);
    }
    const auto cs = PoolState::constant_sum({{"alpha", 100}, {"beta", 100}});
    try {
        cfmm::swap(cs, "beta", Amount(150));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PoolExhausted);
    }
    EXPECT_THROW(cfmm::swap(cp(100, 100), "delta", Amount(1)), Error);
}

TEST(CfmmQuote, ExactOutputInvertsExactInput) {
    const auto pool = cp(100, 100);
    EXPECT_LT(rel_err(cfmm::quote_input_for_exact_output(pool, "alpha", Amount(1000.0 / 110.0)).value(), 10.0), 1e-12);
    EXPECT_EQ(cfmm::quote_input_for_exact_output(pool, "alpha", Amount(0)).value(), 0.0);
    EXPECT_EQ(cfmm::quote_output_for_exact_input(pool, "beta", Amount(0)).value(), 0.0);

    const auto cs = PoolState::constant_sum({{"alpha", 100}, {"beta", 100}});
    try {
        cfmm::quote_input_for_exact_output(cs, "alpha", Amount(150));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PoolExhausted);
    }
    EXPECT_THROW(cfmm::quote_input_for_exact_output(pool, "alpha", Amount(100)), Error);
}

TEST(CfmmQuote, RoundTripProperty) {
    Gen gen(5);
    for (int trial = 0; trial < 3000; ++trial) {
        const double gamma = trial % 3 == 0 ? 1.0 : gen.uniform(0.95, 1.0);
        const double ba = gen.log_uniform(1e-2, 1e8);
        const double bb = gen.log_uniform(1e-2, 1e8);
        const PoolState pool = trial % 3 == 2 ? PoolState::constant_sum({{"alpha", ba}, {"beta", bb}}, FeeParam(gamma))
                               : trial % 2 ? cm2(ba, bb, gen.uniform(0.2, 0.8), gamma)
                                           : cp(ba, bb, gamma);
        const double d = pool.kind() == PoolKind::ConstantSum ? ba * gen.log_uniform(1e-6, 0.5)
                                                              : bb * gen.log_uniform(1e-6, 10.0);
        const double out = cfmm::quote_output_for_exact_input(pool, "beta", "alpha", Amount(d)).value();
        const double back = cfmm::quote_input_for_exact_output(pool, "beta", "alpha", Amount(out)).value();
        EXPECT_LT(rel_err(back, d), 1e-9) << "kind " << to_string(pool.kind());
    }
}

TEST(CfmmProperties, InvariantConservedWithoutFee) {
    Gen gen(17);
    for (int trial = 0; trial < 5000; ++trial) {
        const double ba = gen.log_uniform(1e-2, 1e9);
        const double bb = gen.log_uniform(1e-2, 1e9);
        const PoolState pool = trial % 2 ? cp(ba, bb) : cm2(ba, bb, gen.uniform(0.2, 0.8));
        const auto q = cfmm::swap(pool, "beta", Amount(bb * gen.log_uniform(1e-6, 100)));
        EXPECT_LT(rel_err(invariant_value(q.new_state), invariant_value(pool)), 1e-9);
    }
}

TEST(CfmmProperties, FeesGrowInvariant) {
    Gen gen(19);
    for (int trial = 0; trial < 5000; ++trial) {
        const double gamma = gen.uniform(0.9, 0.999);
        const double ba = gen.log_uniform(1e-2, 1e9);
        const double bb = gen.log_uniform(1e-2, 1e9);
        const PoolState pool = trial % 2 ? cp(ba, bb, gamma) : cm2(ba, bb, gen.uniform(0.05, 0.95), gamma);
        const auto q = cfmm::swap(pool, "beta", Amount(bb * gen.log_uniform(1e-4, 10)));
        EXPECT_GT(invariant_value(q.new_state), invariant_value(pool));
        EXPECT_LT(rel_err(q.fee_paid.value(), (1 - gamma) * q.input_amount.value()), 1e-12);
    }
}

TEST(CfmmProperties, PathIndependenceWithoutFee) {
    Gen gen(23);
    for (int trial = 0; trial < 3000; ++trial) {
        const double ba = gen.log_uniform(1, 1e7);
        const double bb = gen.log_uniform(1, 1e7);
        const PoolState pool = trial % 2 ? cp(ba, bb) : cm2(ba, bb, gen.uniform(0.1, 0.9));
        const double d1 = bb * gen.log_uniform(1e-4, 2);
        const double d2 = bb * gen.log_uniform(1e-4, 2);
        const auto two_step = cfmm::swap(cfmm::swap(pool, "beta", Amount(d1)).new_state, "beta", Amount(d2));
        const auto one_step = cfmm::swap(pool, "beta", Amount(d1 + d2));
        EXPECT_LT(rel_err(two_step.new_state.balance("alpha"), one_step.new_state.balance("alpha")), 1e-9);
        EXPECT_LT(rel_err(two_step.new_state.balance("beta"), one_step.new_state.balance("beta")), 1e-9);
    }
}

TEST(CfmmProperties, OutputIncreasingAndConcave) {
    for (const PoolState& pool : {cp(100, 250), cm2(100, 250, 0.3), cp(100, 250, 0.997)}) {
        double prev = 0.0;
        double prev_step = INFINITY;
        const double h = 1.0;
        for (int i = 1; i <= 500; ++i) {
            const double out = cfmm::quote_output_for_exact_input(pool, "beta", Amount(h * i)).value();
            EXPECT_GT(out, prev);
            const double step = out - prev;
            EXPECT_LT(step, prev_step);  // negative second difference
            prev_step = step;
            prev = out;
        }
    }
}

TEST(CfmmProperties, PoolNeverEmptiedAndPriceMovesAgainstTrader) {
    Gen gen(29);
    for (int trial = 0; trial < 3000; ++trial) {
        const double ba = gen.log_uniform(1, 1e6);
        const double bb = gen.log_uniform(1, 1e6);
        const double gamma = trial % 2 ? 1.0 : 0.997;
        const PoolState pool = trial % 3 ? cp(ba, bb, gamma) : cm2(ba, bb, gen.uniform(0.2, 0.8), gamma);
        // a trade whose exact output rounds to the whole reserve is refused
        try {
            const auto q = cfmm::swap(pool, "beta", Amount(bb * gen.log_uniform(1e-6, 1e6)));
            EXPECT_LT(q.output_amount.value(), ba);
            EXPECT_GT(q.new_state.balance("alpha"), 0.0);
            EXPECT_GE(q.spot_after.value(), q.spot_before.value());
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::PoolExhausted);
        }
    }
}
