#include "amm/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace amm {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidValue: return "InvalidValue";
        case ErrorCode::UnknownAsset: return "UnknownAsset";
        case ErrorCode::EmptyReserve: return "EmptyReserve";
        case ErrorCode::PoolExhausted: return "PoolExhausted";
        case ErrorCode::NonPositiveInput: return "NonPositiveInput";
        case ErrorCode::SupplyExceeded: return "SupplyExceeded";
        case ErrorCode::NonFiniteRule: return "NonFiniteRule";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::FOutOfRange: return "FOutOfRange";
        case ErrorCode::NonPositiveXi: return "NonPositiveXi";
        case ErrorCode::UnbalancedDeposit: return "UnbalancedDeposit";
        case ErrorCode::SharesExceeded: return "SharesExceeded";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    }
    return "Unknown";
}

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidValue, what); }

std::string fmt_value(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

Amount::Amount(double value) : value_(value) {
    if (!std::isfinite(value) || value < 0.0) invalid("amount must be finite and >= 0, got " + fmt_value(value));
}

FeeParam::FeeParam(double gamma) : gamma_(gamma) {
    if (!std::isfinite(gamma) || gamma <= 0.0 || gamma > 1.0)
        invalid("fee gamma must lie in (0, 1], got " + fmt_value(gamma));
}

Price::Price(double value) : value_(value) {
    if (!std::isfinite(value) || value <= 0.0) invalid("price must be finite and > 0, got " + fmt_value(value));
}

std::string_view to_string(PoolKind kind) noexcept {
    switch (kind) {
        case PoolKind::ConstantProduct: return "constant_product";
        case PoolKind::ConstantSum: return "constant_sum";
        case PoolKind::ConstantMean: return "constant_mean";
    }
    return "unknown";
}

std::string_view to_string(Side side) noexcept { return side == Side::A ? "a" : "b"; }

PoolState PoolState::make(PoolKind kind, std::vector<Reserve> reserves, FeeParam fee) {
    if (reserves.size() < 2) invalid("pool needs at least two reserves");

    std::set<std::string_view> seen;
    double weight_sum = 0.0;
    for (const auto& r : reserves) {
        if (r.asset.empty()) invalid("asset id must not be empty");
        if (!seen.insert(r.asset).second) invalid("duplicate asset id '" + r.asset + "'");
        if (r.amount.value() <= 0.0) invalid("reserve of '" + r.asset + "' must be > 0");
        if (!std::isfinite(r.weight) || r.weight <= 0.0) invalid("weight of '" + r.asset + "' must be > 0");
        weight_sum += r.weight;
    }
    if (std::abs(weight_sum - 1.0) > kWeightTolerance) invalid("weights must sum to 1, got " + fmt_value(weight_sum));

    switch (kind) {
        case PoolKind::ConstantProduct:
            if (reserves.size() != 2) invalid("constant-product pool takes exactly two assets");
            for (const auto& r : reserves)
                if (std::abs(r.weight - 0.5) > kWeightTolerance) invalid("constant-product weights must be (0.5, 0.5)");
            break;
        case PoolKind::ConstantMean:
            if (reserves.size() > kMaxMeanAssets) invalid("constant-mean pool takes at most eight assets");
            break;
        case PoolKind::ConstantSum:
            break;
    }

    PoolState pool(kind, std::move(reserves), fee);
    if (const double k = invariant_value(pool); !(k > 0.0) || !std::isfinite(k))
        invalid("pool invariant must be finite and > 0");
    return pool;
}

PoolState PoolState::constant_product(AssetId a, double reserve_a, AssetId b, double reserve_b, FeeParam fee) {
    return make(PoolKind::ConstantProduct,
                {Reserve{std::move(a), Amount(reserve_a), 0.5}, Reserve{std::move(b), Amount(reserve_b), 0.5}}, fee);
}

PoolState PoolState::constant_sum(std::vector<std::pair<AssetId, double>> reserves, FeeParam fee) {
    std::vector<Reserve> out;
    out.reserve(reserves.size());
    const double w = reserves.empty() ? 0.0 : 1.0 / static_cast<double>(reserves.size());
    for (auto& [asset, amount] : reserves) out.push_back(Reserve{std::move(asset), Amount(amount), w});
    // 1/n rounding can miss the 1e-12 sum check for odd n; pin the last weight.
    if (!out.empty()) {
        double head = 0.0;
        for (std::size_t i = 0; i + 1 < out.size(); ++i) head += out[i].weight;
        out.back().weight = 1.0 - head;
    }
    return make(PoolKind::ConstantSum, std::move(out), fee);
}

PoolState PoolState::constant_mean(std::vector<Reserve> reserves, FeeParam fee) {
    return make(PoolKind::ConstantMean, std::move(reserves), fee);
}

std::size_t PoolState::index_of(std::string_view asset) const {
    for (std::size_t i = 0; i < reserves_.size(); ++i)
        if (reserves_[i].asset == asset) return i;
    throw Error(ErrorCode::UnknownAsset, "asset '" + std::string(asset) + "' is not in the pool");
}

PoolState PoolState::with_balances(const std::vector<double>& balances) const {
    if (balances.size() != reserves_.size()) invalid("balance count does not match pool size");
    std::vector<Reserve> next = reserves_;
    for (std::size_t i = 0; i < next.size(); ++i) {
        if (!(balances[i] > 0.0)) throw Error(ErrorCode::EmptyReserve, "reserve of '" + next[i].asset + "' would reach zero");
        next[i].amount = Amount(balances[i]);
    }
    return make(kind_, std::move(next), fee_);
}

TokenSwapState TokenSwapState::make(double reserve_a, double reserve_b, double supply, double rr_a) {
    if (!(reserve_a > 0.0) || !(reserve_b > 0.0)) invalid("token-swap reserves must be > 0");
    if (!std::isfinite(supply) || supply <= 0.0) invalid("intermediary supply must be finite and > 0");
    if (!std::isfinite(rr_a) || rr_a <= 0.0 || rr_a >= 1.0) invalid("reserve ratio must lie in (0, 1)");
    return TokenSwapState(Amount(reserve_a), Amount(reserve_b), supply, rr_a, 1.0 - rr_a);
}

TokenSwapState TokenSwapState::with(double reserve_a, double reserve_b, double supply) const {
    if (!(reserve_a > 0.0) || !(reserve_b > 0.0)) throw Error(ErrorCode::EmptyReserve, "token-swap reserve would reach zero");
    if (!std::isfinite(supply) || supply <= 0.0) invalid("intermediary supply must be finite and > 0");
    TokenSwapState next = *this;
    next.reserve_a_ = Amount(reserve_a);
    next.reserve_b_ = Amount(reserve_b);
    next.supply_ = supply;
    return next;
}

Price spot_price(const PoolState& pool, std::string_view base, std::string_view quote) {
    const auto& b = pool.at(pool.index_of(base));
    const auto& q = pool.at(pool.index_of(quote));
    if (!(b.amount.value() > 0.0) || !(q.amount.value() > 0.0))
        throw Error(ErrorCode::EmptyReserve, "spot price undefined on an empty reserve");
    const double gamma = pool.fee().gamma();
    switch (pool.kind()) {
        case PoolKind::ConstantProduct:
            return Price(q.amount.value() / (gamma * b.amount.value()));
        case PoolKind::ConstantSum:
            return Price(1.0 / gamma);
        case PoolKind::ConstantMean:
            return Price((q.amount.value() / q.weight) / (gamma * b.amount.value() / b.weight));
    }
    throw Error(ErrorCode::InvalidValue, "unknown pool kind");
}

double invariant_value(const PoolState& pool) {
    // Sorted accumulation makes the result bit-identical under reordering.
    std::vector<std::pair<double, double>> terms;
    terms.reserve(pool.size());
    for (const auto& r : pool.reserves()) terms.emplace_back(r.amount.value(), r.weight);
    std::sort(terms.begin(), terms.end());

    switch (pool.kind()) {
        case PoolKind::ConstantProduct: {
            double k = 1.0;
            for (const auto& [amount, w] : terms) k *= amount;
            return k;
        }
        case PoolKind::ConstantSum: {
            double k = 0.0;
            for (const auto& [amount, w] : terms) k += amount;
            return k;
        }
        case PoolKind::ConstantMean: {
            double k = 1.0;
            for (const auto& [amount, w] : terms) k *= std::pow(amount, w);
            return k;
        }
    }
    return 0.0;
}

}  // namespace amm
