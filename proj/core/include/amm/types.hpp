#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amm/error.hpp"

namespace amm {

using AssetId = std::string;

// Token quantity. Always finite and non-negative.
class Amount {
public:
    constexpr Amount() = default;
    explicit Amount(double value);

    constexpr double value() const noexcept { return value_; }
    constexpr auto operator<=>(const Amount&) const = default;

private:
    double value_ = 0.0;
};

// Multiplier applied to the incoming leg of a swap; the fee fraction is 1 - gamma.
class FeeParam {
public:
    constexpr FeeParam() = default;
    explicit FeeParam(double gamma);

    constexpr double gamma() const noexcept { return gamma_; }
    constexpr double fee_fraction() const noexcept { return 1.0 - gamma_; }
    constexpr bool operator==(const FeeParam&) const = default;

private:
    double gamma_ = 1.0;
};

// Quote-token units per one base token. Always finite and strictly positive.
class Price {
public:
    explicit Price(double value);

    constexpr double value() const noexcept { return value_; }
    constexpr auto operator<=>(const Price&) const = default;

private:
    double value_;
};

enum class PoolKind { ConstantProduct, ConstantSum, ConstantMean };

std::string_view to_string(PoolKind kind) noexcept;

struct Reserve {
    AssetId asset;
    Amount amount;
    double weight = 0.0;
};

inline constexpr double kWeightTolerance = 1e-12;
inline constexpr std::size_t kMaxMeanAssets = 8;

/// Immutable reserve snapshot of a constant-function pool.
///
/// Construction validates the pool: at least two distinct assets, every
/// reserve strictly positive, weights positive and summing to one. A
/// constant-product pool has exactly two assets weighted (0.5, 0.5); a
/// constant-mean pool holds between two and eight assets.
class PoolState {
public:
    static PoolState make(PoolKind kind, std::vector<Reserve> reserves, FeeParam fee = FeeParam{});

    static PoolState constant_product(AssetId a, double reserve_a, AssetId b, double reserve_b,
                                      FeeParam fee = FeeParam{});
    // Weights are set to 1/n; they play no part in constant-sum pricing.
    static PoolState constant_sum(std::vector<std::pair<AssetId, double>> reserves,
                                  FeeParam fee = FeeParam{});
    static PoolState constant_mean(std::vector<Reserve> reserves, FeeParam fee = FeeParam{});

    PoolKind kind() const noexcept { return kind_; }
    FeeParam fee() const noexcept { return fee_; }
    std::size_t size() const noexcept { return reserves_.size(); }
    const std::vector<Reserve>& reserves() const noexcept { return reserves_; }
    const Reserve& at(std::size_t index) const { return reserves_.at(index); }

    // Throws UnknownAsset.
    std::size_t index_of(std::string_view asset) const;
    double balance(std::string_view asset) const { return reserves_[index_of(asset)].amount.value(); }

    // Same pool with the reserve balances replaced (validated again).
    PoolState with_balances(const std::vector<double>& balances) const;

private:
    PoolState(PoolKind kind, std::vector<Reserve> reserves, FeeParam fee)
        : kind_(kind), reserves_(std::move(reserves)), fee_(fee) {}

    PoolKind kind_;
    std::vector<Reserve> reserves_;
    FeeParam fee_;
};

enum class Side { A, B };

constexpr Side other(Side side) noexcept { return side == Side::A ? Side::B : Side::A; }
std::string_view to_string(Side side) noexcept;

/// Two reserves backing an intermediary token with fixed reserve ratios.
class TokenSwapState {
public:
    // rr_b is derived as 1 - rr_a.
    static TokenSwapState make(double reserve_a, double reserve_b, double supply, double rr_a);

    double reserve(Side side) const noexcept {
        return side == Side::A ? reserve_a_.value() : reserve_b_.value();
    }
    double reserve_ratio(Side side) const noexcept { return side == Side::A ? rr_a_ : rr_b_; }
    double supply() const noexcept { return supply_; }

    TokenSwapState with(double reserve_a, double reserve_b, double supply) const;

private:
    TokenSwapState(Amount ra, Amount rb, double supply, double rr_a, double rr_b)
        : reserve_a_(ra), reserve_b_(rb), supply_(supply), rr_a_(rr_a), rr_b_(rr_b) {}

    Amount reserve_a_;
    Amount reserve_b_;
    double supply_;
    double rr_a_;
    double rr_b_;
};

/// Marginal price of `base` in units of `quote`, including the 1/gamma fee markup.
///
/// Constant product: B_quote / (gamma * B_base). Constant sum: 1 / gamma.
/// Constant mean: (B_quote / w_quote) / (gamma * B_base / w_base).
Price spot_price(const PoolState& pool, std::string_view base, std::string_view quote);

// Product, sum, or weighted geometric mean of the reserves. Independent of
// reserve ordering.
double invariant_value(const PoolState& pool);

}  // namespace amm
