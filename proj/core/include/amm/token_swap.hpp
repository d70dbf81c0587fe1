#pragma once

#include "amm/types.hpp"

namespace amm::tsmm {

struct MintResult {
    double minted;
    TokenSwapState state;
};

struct BurnResult {
    Amount received;
    TokenSwapState state;
};

struct TokenSwapQuote {
    Side input_side;
    Side output_side;
    Amount input_amount;
    Amount output_amount;
    double intermediary_amount;  // minted on the input leg, burned on the output leg
    Price spot_before;           // output reserve token priced in input reserve tokens
    Price spot_after;
    TokenSwapState new_state;

    double impact_pct() const noexcept { return (spot_after.value() / spot_before.value() - 1.0) * 100.0; }
};

/// Pays `pay` reserve tokens on `side` and mints S * ((1 + pay/B)^RR - 1)
/// intermediary tokens. Paying zero mints nothing.
MintResult purchase_intermediary(const TokenSwapState& state, Side side, Amount pay);

/// Burns `burn` intermediary tokens against the reserve on `side`.
///
/// `state.supply()` is the outstanding supply that still includes the tokens
/// being burned, so the pre-mint snapshot S_pre of the composed swap is
/// `supply - burn` and the payout is B * (1 - (1 - burn/(S_pre + burn))^(1/RR)).
/// Throws NonPositiveInput for a negative burn, SupplyExceeded when the burn
/// would retire the entire supply.
BurnResult sell_intermediary(const TokenSwapState& state, Side side, double burn);

// Converts through the intermediary token: mint on `input_side`, burn on the other.
TokenSwapQuote swap_via_intermediary(const TokenSwapState& state, Side input_side, Amount input_amount);

// Input on the opposite side needed to receive exactly `output_amount` on `output_side`.
Amount quote_input_for_exact_output(const TokenSwapState& state, Side output_side, Amount output_amount);

// Reserve tokens of `side` per intermediary token: B / (S * RR).
Price intermediary_price(const TokenSwapState& state, Side side);

// Marginal price of the `base` reserve token in units of the other reserve token.
Price spot_price(const TokenSwapState& state, Side base);

}  // namespace amm::tsmm
