#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "amm/types.hpp"

namespace amm::sim {

// ---------------------------------------------------------------------------
// LP share accounting
// ---------------------------------------------------------------------------

inline constexpr double kBalanceTolerance = 1e-9;

struct LPPosition {
    double shares = 0.0;
    std::vector<Amount> entry_reserves;
    Price entry_price{1.0};
};

/// Shares minted for a balanced deposit.
///
/// An empty pool (`total_shares == 0`) mints the geometric mean of the
/// deposit legs. Otherwise every leg must match the reserve proportions
/// within 1e-9 and the pool mints S * deposit_last / reserve_last.
/// Throws UnbalancedDeposit or NonPositiveInput.
double mint_shares(std::span<const Amount> reserves, std::span<const Amount> deposit, double total_shares);

// shares / total of every reserve; redeeming the whole supply returns the reserves exactly.
std::vector<Amount> redeem_shares(std::span<const Amount> reserves, double shares, double total_shares);

// ---------------------------------------------------------------------------
// Reference price
// ---------------------------------------------------------------------------

/// External reference price path. GBM steps follow
/// s_{t+1} = s_t * exp((mu - sigma^2 / 2) + sigma * z_t) with z_t drawn from Rng(seed).
struct PriceProcess {
    enum class Kind { CsvReplay, Gbm };

    Kind kind = Kind::Gbm;
    std::vector<double> series;  // CsvReplay
    double s0 = 1.0;             // Gbm
    double mu = 0.0;
    double sigma = 0.0;
    std::size_t steps = 0;
    std::uint64_t seed = 0;

    static PriceProcess replay(std::vector<double> series);
    static PriceProcess gbm(double s0, double mu, double sigma, std::size_t steps, std::uint64_t seed);

    // steps + 1 prices, the first being the starting level. Throws ConfigInvalid.
    std::vector<double> generate() const;
};

std::string_view to_string(PriceProcess::Kind kind) noexcept;

// ---------------------------------------------------------------------------
// Configuration and event log
// ---------------------------------------------------------------------------

struct NoiseConfig {
    std::size_t trades_per_tick = 0;
    double min_fraction = 0.0;  // trade size as a fraction of the input reserve
    double max_fraction = 0.0;
};

// A secondary provider joining or leaving mid-run.
struct LpEvent {
    enum class Action { Deposit, Withdraw };
    std::size_t tick = 0;
    Action action = Action::Deposit;
    double fraction = 0.0;  // deposit: of current reserves; withdraw: of the provider's shares
};

struct SimConfig {
    PoolState pool;
    PriceProcess price;
    NoiseConfig noise;
    std::size_t ticks = 0;
    std::uint64_t seed = 0;
    std::vector<LpEvent> lp_events;
};

enum class EventKind { Arb, Trade, LpDeposit, LpWithdraw, Mark };

std::string_view to_string(EventKind kind) noexcept;

struct SimEvent {
    using Value = std::variant<double, std::string>;

    std::size_t tick = 0;
    EventKind kind = EventKind::Mark;
    std::string agent;
    std::vector<std::pair<std::string, Value>> payload;
};

struct MarkRecord {
    std::size_t tick;
    double ref_price;
    double pool_value;   // primary provider's redeemable position at ref_price
    double hold_value;   // entry reserves valued at ref_price
    double il_pct;
    double fees_cum;     // all fees paid so far, valued in the quote asset at trade time
    double invariant;
    double balance_residual;  // worst relative gap of the global token balance sheet
};

struct SimSummary {
    double final_il_pct = 0.0;
    double fees_accrued = 0.0;
    double final_pool_value = 0.0;
    double final_hold_value = 0.0;
    double max_balance_residual = 0.0;
};

struct SimRun {
    SimConfig config;
    LPPosition position;  // the primary provider
    std::vector<SimEvent> events;
    std::vector<MarkRecord> marks;
    SimSummary summary;
};

/// Runs one deterministic simulation.
///
/// Tick 0 deposits the configured reserves for the primary provider and
/// marks. Each later tick advances the reference price, lets the
/// arbitrageur level the pool to it, applies scheduled provider events and
/// noise trades, then marks. Throws ConfigInvalid.
SimRun run_simulation(const SimConfig& config);

struct SweepRow {
    double sigma;
    double mean_abs_il_pct;
    std::size_t runs;
};

/// Mean terminal |IL| per volatility level.
///
/// Run r of every sigma uses seed `base.seed + r` for both the price path and
/// the noise stream, so the levels share random numbers. Runs execute on up
/// to `threads` workers (0 picks the hardware concurrency); results do not
/// depend on the thread count.
std::vector<SweepRow> volatility_sweep(const SimConfig& base, std::span<const double> sigmas, std::size_t runs,
                                       unsigned threads = 0);

}  // namespace amm::sim
