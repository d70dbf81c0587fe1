// ammlab: command-line front end for the AMM laboratory.
//
// Exit codes: 0 success, 1 domain or configuration error, 2 usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "amm/analytics.hpp"
#include "amm/cfmm.hpp"
#include "amm/invariant_lab.hpp"
#include "amm/io.hpp"
#include "amm/sim.hpp"
#include "amm/token_swap.hpp"

namespace fs = std::filesystem;
using namespace amm;

namespace {

constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) { return io::format_fixed(v); }

struct TradeSpec {
    std::string asset;
    double amount;
};

TradeSpec parse_trade(const std::string& text, const char* flag) {
    const auto eq = text.rfind('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == text.size())
        throw UsageError(std::string(flag) + " expects <asset>=<amount>, got '" + text + "'");
    TradeSpec parsed{text.substr(0, eq), 0.0};
    const std::string number = text.substr(eq + 1);
    std::size_t used = 0;
    try {
        parsed.amount = std::stod(number, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != number.size() || !std::isfinite(parsed.amount))
        throw UsageError(std::string(flag) + " amount '" + number + "' is not a number");
    if (parsed.amount <= 0.0) throw UsageError(std::string(flag) + " amount must be > 0");
    return parsed;
}

// ---------------------------------------------------------------------------
// quote
// ---------------------------------------------------------------------------

struct QuoteArgs {
    std::string pool_file;
    std::string sell;
    std::string buy;
    std::string counter;
    bool json = false;
};

struct QuoteView {
    std::string input_asset;
    std::string output_asset;
    double input;
    double output;
    double fee;
    double spot_before;
    double spot_after;
    double impact_pct;
};

Side side_of(const std::string& asset) {
    if (asset == "a") return Side::A;
    if (asset == "b") return Side::B;
    throw Error(ErrorCode::UnknownAsset, "token-swap pools hold assets 'a' and 'b', not '" + asset + "'");
}

QuoteView quote_cfmm(const PoolState& pool, bool selling, const TradeSpec& trade, const std::string& counter) {
    const std::string other = counter.empty() ? cfmm::counter_asset(pool, trade.asset) : counter;
    const auto q = selling ? cfmm::swap(pool, trade.asset, other, Amount(trade.amount))
                           : cfmm::swap_exact_output(pool, other, trade.asset, Amount(trade.amount));
    return {q.input_asset, q.output_asset, q.input_amount.value(), q.output_amount.value(), q.fee_paid.value(),
            q.spot_before.value(), q.spot_after.value(), q.impact_pct()};
}

QuoteView quote_tsmm(const TokenSwapState& state, bool selling, const TradeSpec& trade) {
    const Side named = side_of(trade.asset);
    const Side input = selling ? named : named == Side::A ? Side::B : Side::A;
    const Amount amount = selling ? Amount(trade.amount) : tsmm::quote_input_for_exact_output(state, named, Amount(trade.amount));
    const auto q = tsmm::swap_via_intermediary(state, input, amount);
    return {std::string(to_string(q.input_side)), std::string(to_string(q.output_side)), q.input_amount.value(),
            q.output_amount.value(), 0.0, q.spot_before.value(), q.spot_after.value(), q.impact_pct()};
}

int run_quote(const QuoteArgs& args) {
    const bool selling = !args.sell.empty();
    const TradeSpec trade = selling ? parse_trade(args.sell, "--sell") : parse_trade(args.buy, "--buy");
    const auto pool = io::parse_any_pool(io::read_text_file(args.pool_file));

    const QuoteView q = std::holds_alternative<PoolState>(pool)
                            ? quote_cfmm(std::get<PoolState>(pool), selling, trade, args.counter)
                            : quote_tsmm(std::get<TokenSwapState>(pool), selling, trade);

    if (args.json) {
        const std::vector<io::Field> fields{{"input_asset", q.input_asset},   {"input_amount", q.input},
                                            {"output_asset", q.output_asset}, {"output_amount", q.output},
                                            {"fee", q.fee},                   {"spot_before", q.spot_before},
                                            {"spot_after", q.spot_after},     {"impact_pct", q.impact_pct}};
        std::cout << io::fields_to_json(fields) << '\n';
        return 0;
    }
    const std::string unit = q.input_asset + " per " + q.output_asset;
    std::cout << "input        " << fmt(q.input) << ' ' << q.input_asset << '\n'
              << "output       " << fmt(q.output) << ' ' << q.output_asset << '\n'
              << "fee          " << fmt(q.fee) << ' ' << q.input_asset << '\n'
              << "spot before  " << fmt(q.spot_before) << ' ' << unit << '\n'
              << "spot after   " << fmt(q.spot_after) << ' ' << unit << '\n'
              << "impact       " << fmt(q.impact_pct) << " %\n";
    return 0;
}

// ---------------------------------------------------------------------------
// derive-invariant
// ---------------------------------------------------------------------------

struct DeriveArgs {
    std::string rule = "reserve-ratio";
    double price = 1.0;
    double wx = 0.5;
    double wy = 0.5;
    double x0 = 100.0;
    double y0 = 100.0;
    double x_end = 400.0;
    std::size_t steps = lab::kDefaultSteps;
    std::size_t every = 100;
    std::string check;
};

int run_derive(const DeriveArgs& args) {
    const lab::PricingRule rule = args.rule == "constant"        ? lab::PricingRule::constant(args.price)
                                  : args.rule == "reserve-ratio" ? lab::PricingRule::reserve_ratio()
                                                                 : lab::PricingRule::weighted_ratio(args.wx, args.wy);
    const auto sample = lab::derive_curve(rule, {args.x0, args.y0}, args.x_end, args.steps);

    if (!args.check.empty()) {
        const double wx = args.wx / (args.wx + args.wy);
        const lab::Candidate candidate =
            args.check == "sum"       ? lab::Candidate([](double x, double y) { return x + y; })
            : args.check == "product" ? lab::Candidate([](double x, double y) { return x * y; })
                                      : lab::Candidate([wx](double x, double y) {
                                            return std::pow(x, wx) * std::pow(y, 1.0 - wx);
                                        });
        std::cout << "candidate,max_rel_deviation,points,domain_exit\n"
                  << args.check << ',' << io::format_fixed(lab::check_invariant_constancy(sample, candidate), 15) << ','
                  << sample.points.size() << ',' << (sample.domain_exit ? "true" : "false") << '\n';
        return 0;
    }

    std::cout << "x,y,price\n";
    const auto& pts = sample.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i % args.every != 0 && i + 1 != pts.size()) continue;
        std::cout << fmt(pts[i].x) << ',' << fmt(pts[i].y) << ',' << fmt(rule.eval(pts[i].x, pts[i].y)) << '\n';
    }
    if (sample.domain_exit) std::cerr << "warning: curve left the positive quadrant at x = " << fmt(pts.back().x) << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// analytics curves
// ---------------------------------------------------------------------------

struct GridArgs {
    std::vector<double> values;
    double min = 0.0;
    double max = 0.95;
    std::size_t points = 96;
    bool log_spaced = false;
};

std::vector<double> grid(const GridArgs& g) {
    if (!g.values.empty()) return g.values;
    if (g.points < 2) throw UsageError("--points must be >= 2");
    if (!(g.max > g.min)) throw UsageError("--max must exceed --min");
    if (g.log_spaced && !(g.min > 0.0)) throw UsageError("--min must be > 0");
    std::vector<double> out;
    const double n = static_cast<double>(g.points - 1);
    for (std::size_t i = 0; i < g.points; ++i) {
        const double t = static_cast<double>(i) / n;
        out.push_back(g.log_spaced ? g.min * std::pow(g.max / g.min, t) : g.min + (g.max - g.min) * t);
    }
    out.back() = g.max;
    return out;
}

analytics::Direction direction_of(const std::string& name) {
    return name == "sell" ? analytics::Direction::SellToPool : analytics::Direction::BuyFromPool;
}

int run_il_curve(const GridArgs& g, double gamma) {
    const auto rows = analytics::il_curve(FeeParam(gamma), grid(g));
    std::cout << "xi,pct_loss\n";
    for (const auto& r : rows) std::cout << fmt(r.xi) << ',' << fmt(r.pct_loss) << '\n';
    return 0;
}

int run_impact_curve(const GridArgs& g, const std::string& direction) {
    const auto rows = analytics::impact_curve(direction_of(direction), grid(g));
    std::cout << "f,pct_change\n";
    for (const auto& r : rows) std::cout << fmt(r.f) << ',' << fmt(r.pct_change) << '\n';
    return 0;
}

int run_depth_curve(const GridArgs& g, const std::string& direction) {
    const auto rows = analytics::depth_curve(direction_of(direction), grid(g));
    std::cout << "f,pct_less\n";
    for (const auto& r : rows) std::cout << fmt(r.f) << ',' << fmt(r.pct_less) << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// simulate / sweep
// ---------------------------------------------------------------------------

struct SimArgs {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
};

sim::SimConfig load_config(const SimArgs& args) {
    auto cfg = io::load_sim_config(args.config);
    if (args.seed) {
        cfg.seed = *args.seed;
        cfg.price.seed = *args.seed;
    }
    return cfg;
}

fs::path output_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("AMMLAB_OUT_DIR"); env && *env) return env;
    return ".";
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw Error(ErrorCode::ConfigInvalid, "cannot write " + path.string());
}

int run_simulate(const SimArgs& args) {
    const auto cfg = load_config(args);
    const auto run = sim::run_simulation(cfg);

    const fs::path dir = output_dir(args.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::ConfigInvalid, "cannot create output directory " + dir.string());

    std::ostringstream events;
    io::write_events_jsonl(events, run.events);
    write_file(dir / "events.jsonl", events.str());
    std::ostringstream summary;
    io::write_summary_csv(summary, run.marks);
    write_file(dir / "summary.csv", summary.str());

    const auto& s = run.summary;
    std::cout << "price_process     " << sim::to_string(cfg.price.kind) << '\n'
              << "ticks             " << cfg.ticks << '\n'
              << "events            " << run.events.size() << '\n'
              << "final_il_pct      " << fmt(s.final_il_pct) << '\n'
              << "fees_accrued      " << fmt(s.fees_accrued) << '\n'
              << "final_pool_value  " << fmt(s.final_pool_value) << '\n'
              << "final_hold_value  " << fmt(s.final_hold_value) << '\n'
              << "max_balance_resid " << io::format_fixed(s.max_balance_residual, 15) << '\n'
              << "wrote             " << (dir / "events.jsonl").string() << ", " << (dir / "summary.csv").string() << '\n';
    return 0;
}

struct SweepArgs {
    SimArgs sim;
    std::vector<double> sigmas;
    std::size_t runs = 100;
    std::optional<std::size_t> ticks;
    unsigned threads = 0;
};

int run_sweep(const SweepArgs& args) {
    auto cfg = load_config(args.sim);
    if (args.ticks) {
        cfg.ticks = *args.ticks;
        cfg.price.steps = *args.ticks;
    }
    const auto rows = sim::volatility_sweep(cfg, args.sigmas, args.runs, args.threads);
    std::cout << "sigma,mean_abs_il_pct,runs\n";
    for (const auto& r : rows) std::cout << fmt(r.sigma) << ',' << fmt(r.mean_abs_il_pct) << ',' << r.runs << '\n';
    return 0;
}

void add_grid_options(CLI::App* cmd, GridArgs& g, const char* list_flag, double min, double max, std::size_t points,
                      bool log_spaced) {
    g.min = min;
    g.max = max;
    g.points = points;
    g.log_spaced = log_spaced;
    cmd->add_option(list_flag, g.values, "Explicit comma-separated grid")->delimiter(',');
    cmd->add_option("--min", g.min, "Grid start")->capture_default_str();
    cmd->add_option("--max", g.max, "Grid end")->capture_default_str();
    cmd->add_option("--points", g.points, "Grid size")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ammlab: automated market maker laboratory"};
    app.require_subcommand(1);
    int rc = 0;
    std::function<int()> action;

    QuoteArgs quote;
    auto* q = app.add_subcommand("quote", "Quote a swap against a pool file");
    q->add_option("--pool", quote.pool_file, "Pool config (JSON)")->required()->check(CLI::ExistingFile);
    auto* sell = q->add_option("--sell", quote.sell, "Sell <asset>=<amount> into the pool");
    auto* buy = q->add_option("--buy", quote.buy, "Buy <asset>=<amount> out of the pool");
    sell->excludes(buy);
    q->add_option("--for", quote.counter, "Counter asset for pools with more than two assets");
    q->add_flag("--json", quote.json, "Print the quote as JSON");
    q->callback([&] {
        if (quote.sell.empty() && quote.buy.empty()) throw CLI::ValidationError("quote", "one of --sell or --buy is required");
        action = [&] { return run_quote(quote); };
    });

    DeriveArgs derive;
    auto* d = app.add_subcommand("derive-invariant", "Integrate a pricing rule into a trading curve");
    d->add_option("--rule", derive.rule, "Pricing rule")
        ->check(CLI::IsMember({"constant", "reserve-ratio", "weighted"}))
        ->capture_default_str();
    d->add_option("--price", derive.price, "Price for the constant rule")->capture_default_str();
    d->add_option("--wx", derive.wx, "Weight of x for the weighted rule")->capture_default_str();
    d->add_option("--wy", derive.wy, "Weight of y for the weighted rule")->capture_default_str();
    d->add_option("--x0", derive.x0, "Starting x reserve")->capture_default_str();
    d->add_option("--y0", derive.y0, "Starting y reserve")->capture_default_str();
    d->add_option("--x-end", derive.x_end, "Final x reserve")->capture_default_str();
    d->add_option("--steps", derive.steps, "RK4 steps")->capture_default_str();
    d->add_option("--every", derive.every, "Print every n-th point")->check(CLI::PositiveNumber)->capture_default_str();
    d->add_option("--check", derive.check, "Report constancy of a candidate invariant instead of the curve")
        ->check(CLI::IsMember({"sum", "product", "mean"}));
    d->callback([&] { action = [&] { return run_derive(derive); }; });

    GridArgs il_grid;
    double il_gamma = 1.0;
    auto* il = app.add_subcommand("il-curve", "Impermanent loss over price ratios (CSV)");
    add_grid_options(il, il_grid, "--xi", 0.1, 10.0, 41, true);
    il->add_option("--gamma", il_gamma, "Fee parameter gamma in (0, 1]")->capture_default_str();
    il->callback([&] { action = [&] { return run_il_curve(il_grid, il_gamma); }; });

    GridArgs impact_grid;
    std::string impact_dir = "buy";
    auto* im = app.add_subcommand("impact-curve", "Price impact over trade fractions (CSV)");
    add_grid_options(im, impact_grid, "--f", 0.0, 0.95, 96, false);
    im->add_option("--direction", impact_dir, "buy or sell")->check(CLI::IsMember({"buy", "sell"}))->capture_default_str();
    im->callback([&] { action = [&] { return run_impact_curve(impact_grid, impact_dir); }; });

    GridArgs depth_grid;
    std::string depth_dir = "buy";
    auto* dc = app.add_subcommand("depth-curve", "Depth loss over trade fractions (CSV)");
    add_grid_options(dc, depth_grid, "--f", 0.0, 0.95, 96, false);
    dc->add_option("--direction", depth_dir, "buy or sell")->check(CLI::IsMember({"buy", "sell"}))->capture_default_str();
    dc->callback([&] { action = [&] { return run_depth_curve(depth_grid, depth_dir); }; });

    SimArgs simulate;
    auto* s = app.add_subcommand("simulate", "Run one simulation; writes events.jsonl and summary.csv");
    s->add_option("--config", simulate.config, "Simulation config (JSON)")->required()->check(CLI::ExistingFile);
    s->add_option("--out", simulate.out, "Output directory (default: $AMMLAB_OUT_DIR or .)");
    s->add_option("--seed", simulate.seed, "Override the config seed");
    s->callback([&] { action = [&] { return run_simulate(simulate); }; });

    SweepArgs sweep;
    auto* sw = app.add_subcommand("sweep", "Mean terminal |IL| across volatility levels (CSV)");
    sw->add_option("--config", sweep.sim.config, "Simulation config with a gbm price process")
        ->required()
        ->check(CLI::ExistingFile);
    sw->add_option("--sigmas", sweep.sigmas, "Comma-separated per-step volatilities, ascending")
        ->required()
        ->delimiter(',');
    sw->add_option("--runs", sweep.runs, "Runs per sigma")->check(CLI::PositiveNumber)->capture_default_str();
    sw->add_option("--ticks", sweep.ticks, "Override the config tick count");
    sw->add_option("--threads", sweep.threads, "Worker threads (0: hardware concurrency)")->capture_default_str();
    sw->add_option("--seed", sweep.sim.seed, "Override the config seed");
    sw->callback([&] { action = [&] { return run_sweep(sweep); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        rc = app.exit(e);
        return rc == 0 ? 0 : kUsageError;
    }

    try {
        return action();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDomainError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDomainError;
    }
}
