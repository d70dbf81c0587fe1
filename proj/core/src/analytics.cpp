#include "amm/analytics.hpp"

#include <cmath>
#include <string>

namespace amm::analytics {

namespace {

void check_f(double f, Direction direction) {
    if (!std::isfinite(f) || f < 0.0)
        throw Error(ErrorCode::FOutOfRange, "f must be finite and >= 0, got " + std::to_string(f));
    if (direction == Direction::BuyFromPool && f >= 1.0)
        throw Error(ErrorCode::FOutOfRange, "buying f >= 1 of the reserve empties the pool");
}

void require_constant_product(const PoolState& pool) {
    if (pool.kind() != PoolKind::ConstantProduct)
        throw Error(ErrorCode::InvalidValue, "operation is defined for constant-product pools only");
}

}  // namespace

std::string_view to_string(Direction direction) noexcept {
    return direction == Direction::BuyFromPool ? "buy_from_pool" : "sell_to_pool";
}

double price_impact(double f, Direction direction) {
    check_f(f, direction);
    if (direction == Direction::BuyFromPool) return (1.0 / ((1.0 - f) * (1.0 - f)) - 1.0) * 100.0;
    return -(1.0 - 1.0 / ((1.0 + f) * (1.0 + f))) * 100.0;
}

double impermanent_loss(double xi, FeeParam gamma) {
    if (!std::isfinite(xi) || xi <= 0.0)
        throw Error(ErrorCode::NonPositiveXi, "xi must be finite and > 0, got " + std::to_string(xi));
    const double g = gamma.gamma();
    return ((std::sqrt(g * xi) + std::sqrt(xi / g)) / (1.0 + xi) - 1.0) * 100.0;
}

double depth_loss(double f, Direction direction) {
    check_f(f, direction);
    if (direction == Direction::BuyFromPool) return f * 100.0;
    return (1.0 - 1.0 / (1.0 + f)) * 100.0;
}

ArbitrageResult arbitrage_to_price(const PoolState& pool, Price target) {
    require_constant_product(pool);
    const auto& base = pool.at(0);
    const auto& quote = pool.at(1);
    const double b0 = base.amount.value();
    const double b1 = quote.amount.value();
    const double xi = target.value() / (b1 / b0);
    const double root = std::sqrt(pool.fee().gamma() * xi);

    if (root == 1.0) return {xi, true, quote.asset, base.asset, Amount{}, Amount{}, pool};

    const double next0 = b0 / root;
    const double next1 = root * b1;
    PoolState next = pool.with_balances({next0, next1});
    if (root > 1.0) {
        // base gets dearer: the arbitrageur pays quote, takes base out
        return {xi, false, quote.asset, base.asset, Amount(next1 - b1), Amount(b0 - next0), std::move(next)};
    }
    return {xi, false, base.asset, quote.asset, Amount(next0 - b0), Amount(b1 - next1), std::move(next)};
}

Price average_execution_price(const PoolState& pool, double f) {
    require_constant_product(pool);
    check_f(f, Direction::BuyFromPool);
    return Price(pool.at(1).amount.value() / (pool.at(0).amount.value() * (1.0 - f)));
}

double pool_value(const PoolState& pool, double price) {
    if (pool.size() != 2) throw Error(ErrorCode::InvalidValue, "pool value is defined for two-asset pools");
    return pool.at(0).amount.value() * price + pool.at(1).amount.value();
}

std::vector<PriceImpactReport> impact_curve(Direction direction, std::span<const double> fs) {
    std::vector<PriceImpactReport> out;
    out.reserve(fs.size());
    for (double f : fs) out.push_back({f, direction, price_impact(f, direction)});
    return out;
}

std::vector<ImpermanentLossReport> il_curve(FeeParam gamma, std::span<const double> xis) {
    std::vector<ImpermanentLossReport> out;
    out.reserve(xis.size());
    for (double xi : xis) out.push_back({xi, gamma, impermanent_loss(xi, gamma)});
    return out;
}

std::vector<DepthLossReport> depth_curve(Direction direction, std::span<const double> fs) {
    std::vector<DepthLossReport> out;
    out.reserve(fs.size());
    for (double f : fs) out.push_back({f, direction, depth_loss(f, direction)});
    return out;
}

}  // namespace amm::analytics
