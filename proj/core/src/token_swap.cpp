#include "amm/token_swap.hpp"

#include <cmath>
#include <string>

namespace amm::tsmm {

namespace {

TokenSwapState with_side(const TokenSwapState& state, Side side, double reserve, double supply) {
    return side == Side::A ? state.with(reserve, state.reserve(Side::B), supply)
                           : state.with(state.reserve(Side::A), reserve, supply);
}

}  // namespace

MintResult purchase_intermediary(const TokenSwapState& state, Side side, Amount pay) {
    if (pay.value() == 0.0) return {0.0, state};
    const double b = state.reserve(side);
    const double minted = state.supply() * std::expm1(state.reserve_ratio(side) * std::log1p(pay.value() / b));
    return {minted, with_side(state, side, b + pay.value(), state.supply() + minted)};
}

BurnResult sell_intermediary(const TokenSwapState& state, Side side, double burn) {
    if (!std::isfinite(burn) || burn < 0.0)
        throw Error(ErrorCode::NonPositiveInput, "burn amount must be finite and >= 0");
    if (burn == 0.0) return {Amount{}, state};
    if (burn >= state.supply())
        throw Error(ErrorCode::SupplyExceeded, "burn of " + std::to_string(burn) + " exceeds outstanding supply " +
                                                   std::to_string(state.supply()));
    const double b = state.reserve(side);
    const double received = -b * std::expm1(std::log1p(-burn / state.supply()) / state.reserve_ratio(side));
    return {Amount(received), with_side(state, side, b - received, state.supply() - burn)};
}

TokenSwapQuote swap_via_intermediary(const TokenSwapState& state, Side input_side, Amount input_amount) {
    const Side output_side = other(input_side);
    const MintResult mint = purchase_intermediary(state, input_side, input_amount);
    const BurnResult burn = sell_intermediary(mint.state, output_side, mint.minted);
    return TokenSwapQuote{
        input_side,
        output_side,
        input_amount,
        burn.received,
        mint.minted,
        spot_price(state, output_side),
        spot_price(burn.state, output_side),
        burn.state,
    };
}

Amount quote_input_for_exact_output(const TokenSwapState& state, Side output_side, Amount output_amount) {
    if (output_amount.value() == 0.0) return Amount{};
    const Side input_side = other(output_side);
    const double b_out = state.reserve(output_side);
    if (output_amount.value() >= b_out)
        throw Error(ErrorCode::PoolExhausted, "pool exhausted: output reaches reserve " + std::to_string(b_out));
    const double exponent = state.reserve_ratio(output_side) / state.reserve_ratio(input_side);
    return Amount(state.reserve(input_side) * std::expm1(-exponent * std::log1p(-output_amount.value() / b_out)));
}

Price intermediary_price(const TokenSwapState& state, Side side) {
    return Price(state.reserve(side) / (state.supply() * state.reserve_ratio(side)));
}

Price spot_price(const TokenSwapState& state, Side base) {
    return Price(intermediary_price(state, other(base)).value() / intermediary_price(state, base).value());
}

}  // namespace amm::tsmm
