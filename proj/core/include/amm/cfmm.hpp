#pragma once

#include <string_view>

#include "amm/types.hpp"

namespace amm {

struct SwapQuote {
    AssetId input_asset;
    AssetId output_asset;
    Amount input_amount;
    Amount output_amount;
    Amount fee_paid;     // input-token units
    Price spot_before;   // output asset priced in input units
    Price spot_after;
    PoolState new_state;

    // Percent change of the output asset's spot price caused by the trade.
    double impact_pct() const noexcept { return (spot_after.value() / spot_before.value() - 1.0) * 100.0; }
};

namespace cfmm {

// The counter-asset of a two-asset pool. Throws InvalidValue on larger pools.
const AssetId& counter_asset(const PoolState& pool, std::string_view asset);

/// Sells `input_amount` of `input_asset` into the pool for `output_asset`.
///
/// The fee (1 - gamma) is taken from the incoming leg before the curve is
/// applied and stays in the pool, so the input reserve grows by the full
/// `input_amount`. Throws NonPositiveInput for a zero input and
/// PoolExhausted when a constant-sum pool cannot cover the output.
SwapQuote swap(const PoolState& pool, std::string_view input_asset, std::string_view output_asset,
               Amount input_amount);
SwapQuote swap(const PoolState& pool, std::string_view input_asset, Amount input_amount);

// Buys exactly `output_amount` of `output_asset`, paying whatever input the curve asks for.
SwapQuote swap_exact_output(const PoolState& pool, std::string_view input_asset, std::string_view output_asset,
                            Amount output_amount);

// Zero in, zero out.
Amount quote_output_for_exact_input(const PoolState& pool, std::string_view input_asset,
                                    std::string_view output_asset, Amount input_amount);
Amount quote_output_for_exact_input(const PoolState& pool, std::string_view input_asset, Amount input_amount);

// Inverse of quote_output_for_exact_input. Throws PoolExhausted when the
// requested output reaches the output reserve.
Amount quote_input_for_exact_output(const PoolState& pool, std::string_view input_asset,
                                    std::string_view output_asset, Amount output_amount);
Amount quote_input_for_exact_output(const PoolState& pool, std::string_view output_asset, Amount output_amount);

}  // namespace cfmm
}  // namespace amm
