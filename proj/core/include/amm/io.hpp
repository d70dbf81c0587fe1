#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "amm/sim.hpp"
#include "amm/types.hpp"

namespace amm::io {

// All parsers throw Error(ConfigInvalid) on malformed input.

/// {"kind": "constant_product"|"constant_sum"|"constant_mean", "fee_gamma": number,
///  "reserves": [{"asset": string, "amount": number, "weight": number}]}
///
/// "fee_gamma" defaults to 1. A missing "weight" defaults to 1/n.
PoolState parse_pool_config(std::string_view json_text);
std::string pool_config_to_json(const PoolState& pool);

// {"reserve_a": number, "reserve_b": number, "supply": number, "rr_a": number}
TokenSwapState parse_token_swap_config(std::string_view json_text);
std::string token_swap_config_to_json(const TokenSwapState& state);

using AnyPool = std::variant<PoolState, TokenSwapState>;

// Constant-function config when "kind" is present, token-swap config otherwise.
AnyPool parse_any_pool(std::string_view json_text);

/// Simulation config: a pool config (top-level or under "pool") plus
/// "price_process", "noise", "ticks", "seed" and optional "lp_events".
/// A replay "path" is resolved against `base_dir`.
sim::SimConfig parse_sim_config(std::string_view json_text, const std::filesystem::path& base_dir = {});

std::string read_text_file(const std::filesystem::path& path);
sim::SimConfig load_sim_config(const std::filesystem::path& path);

// One price per line; the last comma-separated field is read and a
// non-numeric first line is treated as a header.
std::vector<double> parse_price_csv(std::string_view text);

// Fixed-point with `decimals` digits; negative zero prints as zero.
std::string format_fixed(double value, int decimals = 9);

using Field = std::pair<std::string, sim::SimEvent::Value>;

// A flat JSON object with keys in the given order, doubles at full round-trip precision.
std::string fields_to_json(std::span<const Field> fields);

// One JSON object per event, doubles at full round-trip precision.
void write_events_jsonl(std::ostream& out, std::span<const sim::SimEvent> events);
std::string event_to_json(const sim::SimEvent& event);

// tick,ref_price,pool_value,hold_value,il_pct,fees_cum with 9 decimals.
void write_summary_csv(std::ostream& out, std::span<const sim::MarkRecord> marks);

}  // namespace amm::io
