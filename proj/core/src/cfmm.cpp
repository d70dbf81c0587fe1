#include "amm/cfmm.hpp"

#include <cmath>
#include <string>

namespace amm::cfmm {

namespace {

struct Leg {
    std::size_t in;
    std::size_t out;
    double b_in;
    double b_out;
    double w_in;
    double w_out;
};

Leg resolve(const PoolState& pool, std::string_view input_asset, std::string_view output_asset) {
    const std::size_t in = pool.index_of(input_asset);
    const std::size_t out = pool.index_of(output_asset);
    if (in == out) throw Error(ErrorCode::InvalidValue, "input and output asset must differ");
    const auto& ri = pool.at(in);
    const auto& ro = pool.at(out);
    if (!(ri.amount.value() > 0.0) || !(ro.amount.value() > 0.0))
        throw Error(ErrorCode::EmptyReserve, "swap against an empty reserve");
    return {in, out, ri.amount.value(), ro.amount.value(), ri.weight, ro.weight};
}

[[noreturn]] void exhausted(const Leg& leg, double requested) {
    throw Error(ErrorCode::PoolExhausted, "pool exhausted: output " + std::to_string(requested) +
                                              " reaches reserve " + std::to_string(leg.b_out));
}

double output_for_input(PoolKind kind, const Leg& leg, double gamma, double input) {
    const double effective = gamma * input;
    switch (kind) {
        case PoolKind::ConstantProduct:
            return leg.b_out * effective / (leg.b_in + effective);
        case PoolKind::ConstantSum:
            return effective;
        case PoolKind::ConstantMean:
            // B_out * (1 - (B_in / (B_in + g*d))^(w_in/w_out))
            return -leg.b_out * std::expm1(-(leg.w_in / leg.w_out) * std::log1p(effective / leg.b_in));
    }
    return 0.0;
}

double input_for_output(PoolKind kind, const Leg& leg, double gamma, double output) {
    if (output >= leg.b_out) exhausted(leg, output);
    switch (kind) {
        case PoolKind::ConstantProduct:
            return leg.b_in * output / (leg.b_out - output) / gamma;
        case PoolKind::ConstantSum:
            return output / gamma;
        case PoolKind::ConstantMean:
            return leg.b_in * std::expm1(-(leg.w_out / leg.w_in) * std::log1p(-output / leg.b_out)) / gamma;
    }
    return 0.0;
}

SwapQuote settle(const PoolState& pool, const Leg& leg, double input, double output) {
    if (!(output < leg.b_out)) exhausted(leg, output);
    const std::string& in_id = pool.at(leg.in).asset;
    const std::string& out_id = pool.at(leg.out).asset;

    std::vector<double> balances;
    balances.reserve(pool.size());
    for (const auto& r : pool.reserves()) balances.push_back(r.amount.value());
    balances[leg.in] += input;
    balances[leg.out] -= output;
    PoolState next = pool.with_balances(balances);

    return SwapQuote{
        in_id,
        out_id,
        Amount(input),
        Amount(output),
        Amount(pool.fee().fee_fraction() * input),
        spot_price(pool, out_id, in_id),
        spot_price(next, out_id, in_id),
        std::move(next),
    };
}

}  // namespace

const AssetId& counter_asset(const PoolState& pool, std::string_view asset) {
    if (pool.size() != 2)
        throw Error(ErrorCode::InvalidValue, "output asset must be named for pools with more than two assets");
    return pool.at(1 - pool.index_of(asset)).asset;
}

SwapQuote swap(const PoolState& pool, std::string_view input_asset, std::string_view output_asset,
               Amount input_amount) {
    if (!(input_amount.value() > 0.0)) throw Error(ErrorCode::NonPositiveInput, "swap input must be > 0");
    const Leg leg = resolve(pool, input_asset, output_asset);
    const double output = output_for_input(pool.kind(), leg, pool.fee().gamma(), input_amount.value());
    return settle(pool, leg, input_amount.value(), output);
}

SwapQuote swap(const PoolState& pool, std::string_view input_asset, Amount input_amount) {
    return swap(pool, input_asset, counter_asset(pool, input_asset), input_amount);
}

SwapQuote swap_exact_output(const PoolState& pool, std::string_view input_asset, std::string_view output_asset,
                            Amount output_amount) {
    if (!(output_amount.value() > 0.0)) throw Error(ErrorCode::NonPositiveInput, "requested output must be > 0");
    const Leg leg = resolve(pool, input_asset, output_asset);
    const double input = input_for_output(pool.kind(), leg, pool.fee().gamma(), output_amount.value());
    return settle(pool, leg, input, output_amount.value());
}

Amount quote_output_for_exact_input(const PoolState& pool, std::string_view input_asset,
                                    std::string_view output_asset, Amount input_amount) {
    const Leg leg = resolve(pool, input_asset, output_asset);
    if (input_amount.value() == 0.0) return Amount{};
    const double output = output_for_input(pool.kind(), leg, pool.fee().gamma(), input_amount.value());
    if (!(output < leg.b_out)) exhausted(leg, output);
    return Amount(output);
}

Amount quote_output_for_exact_input(const PoolState& pool, std::string_view input_asset, Amount input_amount) {
    return quote_output_for_exact_input(pool, input_asset, counter_asset(pool, input_asset), input_amount);
}

Amount quote_input_for_exact_output(const PoolState& pool, std::string_view input_asset,
                                    std::string_view output_asset, Amount output_amount) {
    const Leg leg = resolve(pool, input_asset, output_asset);
    if (output_amount.value() == 0.0) return Amount{};
    return Amount(input_for_output(pool.kind(), leg, pool.fee().gamma(), output_amount.value()));
}

Amount quote_input_for_exact_output(const PoolState& pool, std::string_view output_asset, Amount output_amount) {
    return quote_input_for_exact_output(pool, counter_asset(pool, output_asset), output_asset, output_amount);
}

}  // namespace amm::cfmm
