#include "sfv/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "sfv/csv.hpp"

namespace sfv {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_number(std::string_view v) {
  try {
    return parse_double(v);
  } catch (const std::invalid_argument&) {
    throw ConfigError("expected a number, got '" + std::string(v) + "'");
  }
}

int to_int(std::string_view v) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError("expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

std::uint64_t to_u64(std::string_view v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError("expected an unsigned 64-bit integer, got '" + std::string(v) + "'");
  }
  return out;
}

std::string join_numbers(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) {
      s += ',';
    }
    s += format_double(xs[i]);
  }
  return s;
}

struct Field {
  std::function<void(Scenario&, std::string_view)> set;
  std::function<std::string(const Scenario&)> get;
};

template <typename T>
Field number_field(T Scenario::*member) {
  return {[member](Scenario& sc, std::string_view v) {
            if constexpr (std::is_same_v<T, double>) {
              sc.*member = to_number(v);
            } else if constexpr (std::is_same_v<T, int>) {
              sc.*member = to_int(v);
            } else {
              sc.*member = to_u64(v);
            }
          },
          [member](const Scenario& sc) {
            if constexpr (std::is_same_v<T, double>) {
              return format_double(sc.*member);
            } else {
              return std::to_string(sc.*member);
            }
          }};
}

// Keys in the order format_scenario_config writes them.
const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = {
      {"terrain_width", number_field(&Scenario::terrain_width)},
      {"terrain_height", number_field(&Scenario::terrain_height)},
      {"clusters", number_field(&Scenario::clusters)},
      {"cluster_size", number_field(&Scenario::cluster_size)},
      {"nodes_per_cluster", number_field(&Scenario::nodes_per_cluster)},
      {"radio_ranges",
       {[](Scenario& sc, std::string_view v) { sc.radio_ranges = parse_number_list(v); },
        [](const Scenario& sc) { return join_numbers(sc.radio_ranges); }}},
      {"tx_rate", number_field(&Scenario::tx_rate_kbps)},
      {"packet_size", number_field(&Scenario::packet_size)},
      {"speed_min", number_field(&Scenario::speed_min)},
      {"speed_max", number_field(&Scenario::speed_max)},
      {"sfv_mode",
       {[](Scenario& sc, std::string_view v) { sc.sfv_mode = parse_sfv_mode(std::string(v)); },
        [](const Scenario& sc) { return to_string(sc.sfv_mode); }}},
      {"master_seed", number_field(&Scenario::master_seed)},
      {"duration", number_field(&Scenario::duration)},
      {"pause_time", number_field(&Scenario::pause_time)},
      {"tick", number_field(&Scenario::tick)},
      {"queue_capacity", number_field(&Scenario::queue_capacity)},
      {"channel_capacity", number_field(&Scenario::channel_capacity_kbps)},
      {"flows_per_cluster", number_field(&Scenario::flows_per_cluster)},
      {"scan_interval", number_field(&Scenario::scan_interval)},
      {"handshake_cost", number_field(&Scenario::handshake_cost)},
      {"ranging_step_cost", number_field(&Scenario::ranging_step_cost)},
      {"m_blocks",
       {[](Scenario& sc, std::string_view v) { sc.handshake.m_blocks = to_int(v); },
        [](const Scenario& sc) { return std::to_string(sc.handshake.m_blocks); }}},
      {"n_ranging",
       {[](Scenario& sc, std::string_view v) { sc.handshake.n_ranging = to_int(v); },
        [](const Scenario& sc) { return std::to_string(sc.handshake.n_ranging); }}},
      {"retry_limit",
       {[](Scenario& sc, std::string_view v) { sc.handshake.retry_limit = to_int(v); },
        [](const Scenario& sc) { return std::to_string(sc.handshake.retry_limit); }}},
      {"processing_budget", number_field(&Scenario::processing_budget)},
      {"responder_processing", number_field(&Scenario::responder_processing)},
      {"aoa_halfwidth", number_field(&Scenario::aoa_halfwidth)},
      {"measurement_noise", number_field(&Scenario::measurement_noise)},
      {"n_ids", number_field(&Scenario::n_ids)},
      {"attackers_per_cluster", number_field(&Scenario::attackers_per_cluster)},
      {"wormhole_fraction", number_field(&Scenario::wormhole_fraction)},
      {"tunnel_latency", number_field(&Scenario::tunnel_latency)},
      {"p_wh",
       {[](Scenario& sc, std::string_view v) { sc.replay.p_wh = to_number(v); },
        [](const Scenario& sc) { return format_double(sc.replay.p_wh); }}},
      {"p_i",
       {[](Scenario& sc, std::string_view v) { sc.replay.p_i = to_number(v); },
        [](const Scenario& sc) { return format_double(sc.replay.p_i); }}},
      {"p_r",
       {[](Scenario& sc, std::string_view v) { sc.replay.p_r = to_number(v); },
        [](const Scenario& sc) { return format_double(sc.replay.p_r); }}},
  };
  return table;
}

const Field* find_field(std::string_view key) {
  for (const auto& [name, field] : fields()) {
    if (name == key) {
      return &field;
    }
  }
  return nullptr;
}

}  // namespace

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item =
        trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (item.empty()) {
      throw ConfigError("empty entry in number list '" + std::string(text) + "'");
    }
    out.push_back(to_number(item));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return out;
}

Scenario parse_scenario_config(std::string_view text, Scenario base) {
  Scenario sc = std::move(base);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) {
      throw ConfigError(where + "expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const Field* field = find_field(key);
    if (field == nullptr) {
      throw ConfigError(where + "unknown key '" + std::string(key) + "'");
    }
    if (value.empty()) {
      throw ConfigError(where + "missing value for '" + std::string(key) + "'");
    }
    try {
      field->set(sc, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  sc.validate();
  return sc;
}

Scenario load_scenario_config(const std::filesystem::path& path, Scenario base) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_config(buf.str(), std::move(base));
}

std::string format_scenario_config(const Scenario& sc) {
  std::string out;
  for (const auto& [name, field] : fields()) {
    out += name;
    out += " = ";
    out += field.get(sc);
    out += '\n';
  }
  return out;
}

std::vector<std::string> scenario_config_keys() {
  std::vector<std::string> keys;
  for (const auto& [name, field] : fields()) {
    keys.push_back(name);
  }
  return keys;
}

}  // namespace sfv
