#include "amm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace amm::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void config_invalid(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        config_invalid(std::string("malformed JSON: ") + e.what());
    }
}

double number(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) config_invalid(std::string("missing field '") + key + "'");
    if (!it->is_number()) config_invalid(std::string("field '") + key + "' must be a number");
    return it->get<double>();
}

double number_or(const json& obj, const char* key, double fallback) {
    return obj.contains(key) ? number(obj, key) : fallback;
}

std::uint64_t unsigned_or(const json& obj, const char* key, std::uint64_t fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number_integer() || (it->is_number_integer() && !it->is_number_unsigned() && it->get<std::int64_t>() < 0))
        config_invalid(std::string("field '") + key + "' must be a non-negative integer");
    return it->get<std::uint64_t>();
}

PoolKind parse_kind(const std::string& kind) {
    if (kind == "constant_product") return PoolKind::ConstantProduct;
    if (kind == "constant_sum") return PoolKind::ConstantSum;
    if (kind == "constant_mean") return PoolKind::ConstantMean;
    config_invalid("unknown pool kind '" + kind + "'");
}

// Re-raises type-invariant violations from the domain constructors as config errors.
template <typename F>
auto as_config(F&& build) {
    try {
        return build();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ConfigInvalid) throw;
        config_invalid(e.what());
    } catch (const json::exception& e) {
        config_invalid(e.what());
    }
}

PoolState pool_from_json(const json& obj) {
    return as_config([&] {
        if (!obj.is_object()) config_invalid("pool config must be a JSON object");
        if (!obj.contains("kind") || !obj["kind"].is_string()) config_invalid("pool config needs a string 'kind'");
        const PoolKind kind = parse_kind(obj["kind"].get<std::string>());
        const FeeParam fee(number_or(obj, "fee_gamma", 1.0));
        const auto it = obj.find("reserves");
        if (it == obj.end() || !it->is_array()) config_invalid("pool config needs a 'reserves' array");

        const double default_weight = it->empty() ? 0.0 : 1.0 / static_cast<double>(it->size());
        std::vector<Reserve> reserves;
        for (const auto& r : *it) {
            if (!r.is_object() || !r.contains("asset") || !r["asset"].is_string())
                config_invalid("every reserve needs a string 'asset'");
            reserves.push_back(Reserve{r["asset"].get<std::string>(), Amount(number(r, "amount")),
                                       number_or(r, "weight", default_weight)});
        }
        if (kind == PoolKind::ConstantSum) {
            std::vector<std::pair<AssetId, double>> plain;
            for (auto& r : reserves) plain.emplace_back(std::move(r.asset), r.amount.value());
            return PoolState::constant_sum(std::move(plain), fee);
        }
        return PoolState::make(kind, std::move(reserves), fee);
    });
}

TokenSwapState token_swap_from_json(const json& obj) {
    return as_config([&] {
        if (!obj.is_object()) config_invalid("token-swap config must be a JSON object");
        return TokenSwapState::make(number(obj, "reserve_a"), number(obj, "reserve_b"), number(obj, "supply"),
                                    number(obj, "rr_a"));
    });
}

}  // namespace

PoolState parse_pool_config(std::string_view json_text) { return pool_from_json(parse_json(json_text)); }

std::string pool_config_to_json(const PoolState& pool) {
    ordered_json out;
    out["kind"] = std::string(to_string(pool.kind()));
    out["fee_gamma"] = pool.fee().gamma();
    out["reserves"] = ordered_json::array();
    for (const auto& r : pool.reserves())
        out["reserves"].push_back({{"asset", r.asset}, {"amount", r.amount.value()}, {"weight", r.weight}});
    return out.dump();
}

TokenSwapState parse_token_swap_config(std::string_view json_text) {
    return token_swap_from_json(parse_json(json_text));
}

std::string token_swap_config_to_json(const TokenSwapState& state) {
    ordered_json out;
    out["reserve_a"] = state.reserve(Side::A);
    out["reserve_b"] = state.reserve(Side::B);
    out["supply"] = state.supply();
    out["rr_a"] = state.reserve_ratio(Side::A);
    return out.dump();
}

AnyPool parse_any_pool(std::string_view json_text) {
    const json obj = parse_json(json_text);
    if (obj.is_object() && obj.contains("kind")) return pool_from_json(obj);
    return token_swap_from_json(obj);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) config_invalid("cannot read '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<double> parse_price_csv(std::string_view text) {
    std::vector<double> prices;
    std::istringstream in{std::string(text)};
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const std::string field = line.substr(line.find_last_of(',') == std::string::npos ? 0 : line.find_last_of(',') + 1);
        std::size_t used = 0;
        double value = 0.0;
        bool ok = true;
        try {
            value = std::stod(field, &used);
            ok = field.find_first_not_of(" \t", used) == std::string::npos;
        } catch (const std::exception&) {
            ok = false;
        }
        if (!ok) {
            if (first) {
                first = false;
                continue;
            }
            config_invalid("bad price line '" + line + "'");
        }
        first = false;
        prices.push_back(value);
    }
    return prices;
}

sim::SimConfig parse_sim_config(std::string_view json_text, const std::filesystem::path& base_dir) {
    const json root = parse_json(json_text);
    return as_config([&] {
        if (!root.is_object()) config_invalid("simulation config must be a JSON object");
        const PoolState pool = pool_from_json(root.contains("pool") ? root["pool"] : root);
        const std::uint64_t seed = unsigned_or(root, "seed", 0);

        if (!root.contains("price_process") || !root["price_process"].is_object())
            config_invalid("simulation config needs a 'price_process' object");
        const json& pp = root["price_process"];
        const std::string kind = pp.value("kind", std::string("gbm"));

        sim::PriceProcess price;
        std::size_t ticks = 0;
        if (kind == "csv_replay") {
            std::vector<double> series;
            if (pp.contains("prices")) {
                if (!pp["prices"].is_array()) config_invalid("'prices' must be an array");
                series = pp["prices"].get<std::vector<double>>();
            } else if (pp.contains("path") && pp["path"].is_string()) {
                std::filesystem::path p = pp["path"].get<std::string>();
                if (p.is_relative()) p = base_dir / p;
                series = parse_price_csv(read_text_file(p));
            } else {
                config_invalid("csv_replay needs 'prices' or 'path'");
            }
            price = sim::PriceProcess::replay(std::move(series));
            ticks = static_cast<std::size_t>(unsigned_or(root, "ticks", price.steps));
            if (ticks > price.steps) config_invalid("ticks exceed the replay length");
        } else if (kind == "gbm") {
            if (!root.contains("ticks")) config_invalid("gbm simulation needs 'ticks'");
            ticks = static_cast<std::size_t>(unsigned_or(root, "ticks", 0));
            const double mid = pool.at(1).amount.value() / pool.at(0).amount.value();
            price = sim::PriceProcess::gbm(number_or(pp, "s0", mid), number_or(pp, "mu", 0.0),
                                           number_or(pp, "sigma", 0.0), ticks, unsigned_or(pp, "seed", seed));
        } else {
            config_invalid("unknown price_process kind '" + kind + "'");
        }

        sim::NoiseConfig noise;
        if (root.contains("noise")) {
            const json& n = root["noise"];
            if (!n.is_object()) config_invalid("'noise' must be an object");
            noise.trades_per_tick = static_cast<std::size_t>(unsigned_or(n, "trades_per_tick", 0));
            noise.min_fraction = number_or(n, "min_fraction", 0.0);
            noise.max_fraction = number_or(n, "max_fraction", noise.min_fraction);
        }

        std::vector<sim::LpEvent> lp_events;
        if (root.contains("lp_events")) {
            if (!root["lp_events"].is_array()) config_invalid("'lp_events' must be an array");
            for (const auto& e : root["lp_events"]) {
                sim::LpEvent ev;
                ev.tick = static_cast<std::size_t>(unsigned_or(e, "tick", 0));
                const std::string action = e.value("action", std::string());
                if (action == "deposit") ev.action = sim::LpEvent::Action::Deposit;
                else if (action == "withdraw") ev.action = sim::LpEvent::Action::Withdraw;
                else config_invalid("lp event action must be 'deposit' or 'withdraw'");
                ev.fraction = number(e, "fraction");
                lp_events.push_back(ev);
            }
        }
        return sim::SimConfig{pool, std::move(price), noise, ticks, seed, std::move(lp_events)};
    });
}

sim::SimConfig load_sim_config(const std::filesystem::path& path) {
    return parse_sim_config(read_text_file(path), path.parent_path());
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    std::string s(buf);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

std::string fields_to_json(std::span<const Field> fields) {
    ordered_json obj = ordered_json::object();
    for (const auto& [key, value] : fields) std::visit([&, &k = key](const auto& v) { obj[k] = v; }, value);
    return obj.dump();
}

std::string event_to_json(const sim::SimEvent& event) {
    ordered_json obj;
    obj["tick"] = event.tick;
    obj["kind"] = std::string(sim::to_string(event.kind));
    obj["agent"] = event.agent;
    for (const auto& [key, value] : event.payload)
        std::visit([&, &k = key](const auto& v) { obj[k] = v; }, value);
    return obj.dump();
}

void write_events_jsonl(std::ostream& out, std::span<const sim::SimEvent> events) {
    for (const auto& e : events) out << event_to_json(e) << '\n';
}

void write_summary_csv(std::ostream& out, std::span<const sim::MarkRecord> marks) {
    out << "tick,ref_price,pool_value,hold_value,il_pct,fees_cum\n";
    for (const auto& m : marks) {
        out << m.tick << ',' << format_fixed(m.ref_price) << ',' << format_fixed(m.pool_value) << ','
            << format_fixed(m.hold_value) << ',' << format_fixed(m.il_pct) << ',' << format_fixed(m.fees_cum) << '\n';
    }
}

}  // namespace amm::io
