#include "amm/sim.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <numeric>
#include <thread>

#include "amm/analytics.hpp"
#include "amm/cfmm.hpp"
#include "amm/random.hpp"

namespace amm::sim {

namespace {

[[noreturn]] void config_invalid(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

constexpr std::uint64_t kNoiseStreamSalt = 0x9E3779B97F4A7C15ULL;

}  // namespace

double mint_shares(std::span<const Amount> reserves, std::span<const Amount> deposit, double total_shares) {
    if (reserves.size() != deposit.size() || reserves.empty())
        throw Error(ErrorCode::InvalidValue, "deposit must have one leg per reserve");
    if (!std::isfinite(total_shares) || total_shares < 0.0)
        throw Error(ErrorCode::InvalidValue, "total shares must be finite and >= 0");
    for (const auto& leg : deposit)
        if (!(leg.value() > 0.0)) throw Error(ErrorCode::NonPositiveInput, "every deposit leg must be > 0");

    if (total_shares == 0.0) {
        for (const auto& r : reserves)
            if (r.value() != 0.0) throw Error(ErrorCode::InvalidValue, "pool holds reserves but no shares");
        if (deposit.size() == 2) return std::sqrt(deposit[0].value() * deposit[1].value());
        double log_sum = 0.0;
        for (const auto& leg : deposit) log_sum += std::log(leg.value());
        return std::exp(log_sum / static_cast<double>(deposit.size()));
    }

    for (const auto& r : reserves)
        if (!(r.value() > 0.0)) throw Error(ErrorCode::EmptyReserve, "cannot deposit into an empty reserve");
    const double ratio = deposit.back().value() / reserves.back().value();
    for (std::size_t i = 0; i + 1 < deposit.size(); ++i) {
        const double leg_ratio = deposit[i].value() / reserves[i].value();
        if (std::abs(leg_ratio - ratio) > kBalanceTolerance * ratio)
            throw Error(ErrorCode::UnbalancedDeposit, "deposit is not proportional to the reserves");
    }
    return total_shares * ratio;
}

std::vector<Amount> redeem_shares(std::span<const Amount> reserves, double shares, double total_shares) {
    if (!std::isfinite(shares) || shares <= 0.0) throw Error(ErrorCode::NonPositiveInput, "shares to redeem must be > 0");
    if (shares > total_shares) throw Error(ErrorCode::SharesExceeded, "cannot redeem more shares than outstanding");
    if (shares == total_shares) return {reserves.begin(), reserves.end()};
    const double fraction = shares / total_shares;
    std::vector<Amount> out;
    out.reserve(reserves.size());
    for (const auto& r : reserves) out.emplace_back(r.value() * fraction);
    return out;
}

PriceProcess PriceProcess::replay(std::vector<double> series) {
    PriceProcess p;
    p.kind = Kind::CsvReplay;
    p.steps = series.empty() ? 0 : series.size() - 1;
    p.series = std::move(series);
    return p;
}

PriceProcess PriceProcess::gbm(double s0, double mu, double sigma, std::size_t steps, std::uint64_t seed) {
    PriceProcess p;
    p.kind = Kind::Gbm;
    p.s0 = s0;
    p.mu = mu;
    p.sigma = sigma;
    p.steps = steps;
    p.seed = seed;
    return p;
}

std::vector<double> PriceProcess::generate() const {
    if (kind == Kind::CsvReplay) {
        if (series.size() < 2) config_invalid("price replay needs at least two prices");
        for (double v : series)
            if (!std::isfinite(v) || v <= 0.0) config_invalid("price replay must be strictly positive");
        return series;
    }
    if (!std::isfinite(s0) || s0 <= 0.0) config_invalid("gbm s0 must be > 0");
    if (!std::isfinite(mu)) config_invalid("gbm mu must be finite");
    if (!std::isfinite(sigma) || sigma < 0.0) config_invalid("gbm sigma must be >= 0");

    Rng rng(seed);
    const double drift = mu - 0.5 * sigma * sigma;
    std::vector<double> path;
    path.reserve(steps + 1);
    path.push_back(s0);
    for (std::size_t t = 0; t < steps; ++t) {
        const double z = rng.normal();
        path.push_back(path.back() * std::exp(drift + sigma * z));
    }
    return path;
}

std::string_view to_string(PriceProcess::Kind kind) noexcept {
    return kind == PriceProcess::Kind::CsvReplay ? "csv_replay" : "gbm";
}

std::string_view to_string(EventKind kind) noexcept {
    switch (kind) {
        case EventKind::Arb: return "arb";
        case EventKind::Trade: return "trade";
        case EventKind::LpDeposit: return "lp_deposit";
        case EventKind::LpWithdraw: return "lp_withdraw";
        case EventKind::Mark: return "mark";
    }
    return "unknown";
}

namespace {

using Balances = std::array<double, 2>;

class Simulator {
public:
    explicit Simulator(const SimConfig& config) : config_(config), pool_(config.pool), noise_rng_(config.seed ^ kNoiseStreamSalt) {
        validate();
        prices_ = config_.price.generate();
        if (prices_.size() < config_.ticks + 1) config_invalid("price path shorter than the configured tick count");
        base_ = pool_.at(0).asset;
        quote_ = pool_.at(1).asset;
    }

    SimRun run() {
        SimRun out{config_, {}, {}, {}, {}};
        open_primary();
        mark(0);
        for (std::size_t tick = 1; tick <= config_.ticks; ++tick) {
            ref_ = prices_[tick];
            arbitrage(tick);
            provider_events(tick);
            noise(tick);
            mark(tick);
        }
        out.position = position_;
        out.events = std::move(events_);
        out.marks = std::move(marks_);
        const auto& last = out.marks.back();
        out.summary.final_il_pct = last.il_pct;
        out.summary.fees_accrued = fees_cum_;
        out.summary.final_pool_value = last.pool_value;
        out.summary.final_hold_value = last.hold_value;
        for (const auto& m : out.marks)
            out.summary.max_balance_residual = std::max(out.summary.max_balance_residual, m.balance_residual);
        return out;
    }

private:
    void validate() const {
        if (config_.pool.kind() != PoolKind::ConstantProduct) config_invalid("simulation requires a constant-product pool");
        if (config_.ticks == 0) config_invalid("ticks must be >= 1");
        const auto& n = config_.noise;
        if (n.trades_per_tick > 0) {
            if (!std::isfinite(n.min_fraction) || !std::isfinite(n.max_fraction) || n.min_fraction <= 0.0 ||
                n.max_fraction < n.min_fraction || n.max_fraction >= 1.0)
                config_invalid("noise fractions must satisfy 0 < min <= max < 1");
        }
        for (const auto& e : config_.lp_events) {
            if (e.tick == 0 || e.tick > config_.ticks) config_invalid("provider events must fall on ticks 1..ticks");
            if (!std::isfinite(e.fraction) || e.fraction <= 0.0 || e.fraction > 1.0)
                config_invalid("provider event fraction must lie in (0, 1]");
        }
    }

    Balances reserves() const { return {pool_.at(0).amount.value(), pool_.at(1).amount.value()}; }
    std::array<Amount, 2> reserve_amounts() const { return {pool_.at(0).amount, pool_.at(1).amount}; }

    void credit(const std::string& agent, const std::string& asset, double delta) {
        wallets_[agent][asset == base_ ? 0 : 1] += delta;
    }

    void open_primary() {
        const Balances deposit = reserves();
        endowment_ = deposit;
        const std::array<Amount, 2> empty{};
        const std::array<Amount, 2> legs{Amount(deposit[0]), Amount(deposit[1])};
        const double minted = mint_shares(empty, legs, 0.0);
        total_shares_ = minted;
        position_ = LPPosition{minted, {legs[0], legs[1]}, Price(deposit[1] / deposit[0])};
        wallets_["lp0"] = {0.0, 0.0};
        ref_ = prices_[0];
        events_.push_back({0, EventKind::LpDeposit, "lp0",
                           {{base_, deposit[0]}, {quote_, deposit[1]}, {"shares", minted}, {"total_shares", total_shares_}}});
    }

    void arbitrage(std::size_t tick) {
        const auto arb = analytics::arbitrage_to_price(pool_, Price(ref_));
        if (arb.null_trade) return;
        pool_ = arb.new_state;
        credit("arbitrageur", arb.input_asset, -arb.input_amount.value());
        credit("arbitrageur", arb.output_asset, arb.output_amount.value());
        events_.push_back({tick, EventKind::Arb, "arbitrageur",
                           {{"asset_in", arb.input_asset},
                            {"amount_in", arb.input_amount.value()},
                            {"asset_out", arb.output_asset},
                            {"amount_out", arb.output_amount.value()},
                            {"xi", arb.xi},
                            {"ref_price", ref_}}});
    }

    void provider_events(std::size_t tick) {
        for (const auto& e : config_.lp_events) {
            if (e.tick != tick) continue;
            const auto current = reserve_amounts();
            if (e.action == LpEvent::Action::Deposit) {
                const std::array<Amount, 2> legs{Amount(current[0].value() * e.fraction),
                                                 Amount(current[1].value() * e.fraction)};
                const double minted = mint_shares(current, legs, total_shares_);
                pool_ = pool_.with_balances({current[0].value() + legs[0].value(), current[1].value() + legs[1].value()});
                secondary_shares_ += minted;
                total_shares_ = position_.shares + secondary_shares_;
                credit("lp1", base_, -legs[0].value());
                credit("lp1", quote_, -legs[1].value());
                events_.push_back({tick, EventKind::LpDeposit, "lp1",
                                   {{base_, legs[0].value()}, {quote_, legs[1].value()},
                                    {"shares", minted}, {"total_shares", total_shares_}}});
            } else {
                if (secondary_shares_ <= 0.0) continue;
                const double burn = secondary_shares_ * e.fraction;
                const auto paid = redeem_shares(current, burn, total_shares_);
                pool_ = pool_.with_balances({current[0].value() - paid[0].value(), current[1].value() - paid[1].value()});
                secondary_shares_ = e.fraction == 1.0 ? 0.0 : secondary_shares_ - burn;
                total_shares_ = position_.shares + secondary_shares_;
                credit("lp1", base_, paid[0].value());
                credit("lp1", quote_, paid[1].value());
                events_.push_back({tick, EventKind::LpWithdraw, "lp1",
                                   {{base_, paid[0].value()}, {quote_, paid[1].value()},
                                    {"shares", burn}, {"total_shares", total_shares_}}});
            }
        }
    }

    void noise(std::size_t tick) {
        const auto& cfg = config_.noise;
        for (std::size_t i = 0; i < cfg.trades_per_tick; ++i) {
            const double fraction = noise_rng_.uniform(cfg.min_fraction, cfg.max_fraction);
            const bool sell_base = noise_rng_.coin();
            const std::string& in = sell_base ? base_ : quote_;
            const double amount = fraction * pool_.balance(in);
            const auto quote = cfmm::swap(pool_, in, Amount(amount));
            pool_ = quote.new_state;
            credit("noise", quote.input_asset, -quote.input_amount.value());
            credit("noise", quote.output_asset, quote.output_amount.value());
            const double fee_value = quote.fee_paid.value() * (sell_base ? ref_ : 1.0);
            fees_cum_ += fee_value;
            events_.push_back({tick, EventKind::Trade, "noise",
                               {{"asset_in", quote.input_asset},
                                {"amount_in", quote.input_amount.value()},
                                {"asset_out", quote.output_asset},
                                {"amount_out", quote.output_amount.value()},
                                {"fee", quote.fee_paid.value()}}});
        }
    }

    double balance_residual() const {
        const Balances pool = reserves();
        double worst = 0.0;
        for (std::size_t i = 0; i < 2; ++i) {
            // sum agents in a fixed order so the residual is reproducible
            double held = pool[i];
            for (const auto& [agent, wallet] : wallets_) held += wallet[i];
            worst = std::max(worst, std::abs(held - endowment_[i]) / endowment_[i]);
        }
        return worst;
    }

    void mark(std::size_t tick) {
        const auto redeemable = redeem_shares(reserve_amounts(), position_.shares, total_shares_);
        const double pool_value = redeemable[0].value() * ref_ + redeemable[1].value();
        const double hold_value = position_.entry_reserves[0].value() * ref_ + position_.entry_reserves[1].value();
        const double il_pct = (pool_value - hold_value) / hold_value * 100.0;
        MarkRecord m{tick, ref_, pool_value, hold_value, il_pct, fees_cum_, invariant_value(pool_), balance_residual()};
        marks_.push_back(m);
        events_.push_back({tick, EventKind::Mark, "lp0",
                           {{"ref_price", m.ref_price},
                            {"pool_value", m.pool_value},
                            {"hold_value", m.hold_value},
                            {"il_pct", m.il_pct},
                            {"fees_cum", m.fees_cum},
                            {"k", m.invariant},
                            {"balance_residual", m.balance_residual}}});
    }

    const SimConfig& config_;
    PoolState pool_;
    Rng noise_rng_;
    std::vector<double> prices_;
    std::string base_;
    std::string quote_;
    double ref_ = 0.0;
    Balances endowment_{};
    std::map<std::string, Balances> wallets_;
    LPPosition position_;
    double total_shares_ = 0.0;
    double secondary_shares_ = 0.0;
    double fees_cum_ = 0.0;
    std::vector<SimEvent> events_;
    std::vector<MarkRecord> marks_;
};

}  // namespace

SimRun run_simulation(const SimConfig& config) { return Simulator(config).run(); }

std::vector<SweepRow> volatility_sweep(const SimConfig& base, std::span<const double> sigmas, std::size_t runs,
                                       unsigned threads) {
    if (base.price.kind != PriceProcess::Kind::Gbm) config_invalid("volatility sweep needs a gbm price process");
    if (runs == 0) config_invalid("sweep needs at least one run per sigma");
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        if (!std::isfinite(sigmas[i]) || sigmas[i] < 0.0) config_invalid("sigmas must be finite and >= 0");
        if (i > 0 && sigmas[i] < sigmas[i - 1]) config_invalid("sigmas must be sorted ascending");
    }

    const std::size_t jobs = sigmas.size() * runs;
    std::vector<double> terminal(jobs, 0.0);
    auto run_job = [&](std::size_t job) {
        const double sigma = sigmas[job / runs];
        const std::uint64_t seed = base.seed + job % runs;
        SimConfig cfg = base;
        cfg.seed = seed;
        cfg.price = PriceProcess::gbm(base.price.s0, base.price.mu, sigma, base.ticks, seed);
        terminal[job] = std::abs(run_simulation(cfg).summary.final_il_pct);
    };

    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, jobs));
    std::vector<std::future<void>> pending;
    pending.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pending.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t job = w; job < jobs; job += workers) run_job(job);
        }));
    }
    for (auto& f : pending) f.get();

    std::vector<SweepRow> rows;
    rows.reserve(sigmas.size());
    for (std::size_t s = 0; s < sigmas.size(); ++s) {
        const auto first = terminal.begin() + static_cast<std::ptrdiff_t>(s * runs);
        const double sum = std::accumulate(first, first + static_cast<std::ptrdiff_t>(runs), 0.0);
        rows.push_back({sigmas[s], sum / static_cast<double>(runs), runs});
    }
    return rows;
}

}  // namespace amm::sim
