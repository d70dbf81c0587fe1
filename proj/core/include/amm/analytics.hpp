#pragma once

#include <span>
#include <vector>

#include "amm/types.hpp"

namespace amm::analytics {

/// Which way a trade of size f * B_alpha moves through a two-asset pool.
///
/// BuyFromPool removes f * B_alpha of the base asset from the pool, so the
/// base asset's price rises. SellToPool adds f * B_alpha, so it falls.
enum class Direction { BuyFromPool, SellToPool };

std::string_view to_string(Direction direction) noexcept;

struct PriceImpactReport {
    double f;
    Direction direction;
    double pct_change;  // signed: positive when the base asset gets dearer
};

struct ImpermanentLossReport {
    double xi;
    FeeParam gamma;
    double pct_loss;  // <= 0 for gamma = 1
};

struct DepthLossReport {
    double f;
    Direction direction;
    double pct_less;  // output shortfall against an infinitely deep pool
};

// Buy: (1/(1-f)^2 - 1) * 100 for 0 <= f < 1. Sell: -(1 - 1/(1+f)^2) * 100 for f >= 0.
double price_impact(double f, Direction direction);

// ((sqrt(gamma*xi) + sqrt(xi/gamma)) / (1 + xi) - 1) * 100. Throws NonPositiveXi.
double impermanent_loss(double xi, FeeParam gamma);

// Buy: f * 100. Sell: (1 - 1/(1+f)) * 100.
double depth_loss(double f, Direction direction);

/// Outcome of levelling a constant-product pool to an external price.
struct ArbitrageResult {
    double xi;                 // target / pre-trade mid price
    bool null_trade;
    AssetId input_asset;       // what the arbitrageur pays into the pool
    AssetId output_asset;
    Amount input_amount;
    Amount output_amount;
    PoolState new_state;
};

/// Moves a two-asset constant-product pool to `target`, the price of the
/// first reserve in units of the second.
///
/// Uses the balance relations B'_0 = B_0 / sqrt(gamma*xi) and
/// B'_1 = sqrt(gamma*xi) * B_1 with xi = target / (B_1 / B_0). These keep
/// B'_0 * B'_1 = B_0 * B_1 for every gamma, so no fee accrues on the
/// levelling trade; with gamma = 1 the new spot price equals `target`.
ArbitrageResult arbitrage_to_price(const PoolState& pool, Price target);

// Average price per base token paid when buying f * B_0: B_1 / (B_0 * (1 - f)).
Price average_execution_price(const PoolState& pool, double f);

// B_0 * price + B_1 for a two-asset pool valued in its second asset.
double pool_value(const PoolState& pool, double price);

std::vector<PriceImpactReport> impact_curve(Direction direction, std::span<const double> fs);
std::vector<ImpermanentLossReport> il_curve(FeeParam gamma, std::span<const double> xis);
std::vector<DepthLossReport> depth_curve(Direction direction, std::span<const double> fs);

}  // namespace amm::analytics
