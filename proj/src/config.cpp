#include "wsnloc/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <sstream>

#include "wsnloc/csv_io.hpp"

namespace wsnloc {

namespace pt = boost::property_tree;

namespace {

const pt::ptree* section(const pt::ptree& root, const std::string& name) {
  auto it = root.find(name);
  return it == root.not_found() ? nullptr : &it->second;
}

std::optional<std::string> value(const pt::ptree* sec, const std::string& key) {
  if (sec == nullptr) {
    return std::nullopt;
  }
  auto it = sec->find(key);
  if (it == sec->not_found()) {
    return std::nullopt;
  }
  return it->second.data();
}

template <class T, class Parse>
void read_into(const pt::ptree* sec, const std::string& where, const std::string& key, T& out,
               Parse parse) {
  if (auto v = value(sec, key)) {
    try {
      out = parse(*v);
    } catch (const std::exception& e) {
      throw std::invalid_argument("config [" + where + "] " + key + ": " + e.what());
    }
  }
}

template <class T, class Parse>
void read_list(const pt::ptree& root, const std::string& name, std::vector<T>& out, Parse parse) {
  const pt::ptree* sec = section(root, name);
  auto v = value(sec, "values");
  if (!v) {
    return;
  }
  std::vector<T> parsed;
  for (std::string_view item : split_fields(*v)) {
    if (item.empty()) {
      continue;
    }
    try {
      parsed.push_back(parse(item));
    } catch (const std::exception& e) {
      throw std::invalid_argument("config [" + name + "] values: " + e.what());
    }
  }
  if (parsed.empty()) {
    throw std::invalid_argument("config [" + name + "] values is empty");
  }
  out = std::move(parsed);
}

auto as_double = [](std::string_view s) { return parse_double(s); };
auto as_size = [](std::string_view s) { return parse_size(s); };
auto as_seed = [](std::string_view s) { return static_cast<Seed>(parse_size(s)); };
auto as_kind = [](std::string_view s) { return parse_topology_kind(s); };
auto as_refine = [](std::string_view s) { return parse_refine_mode(s); };

} // namespace

Config parse_config(const std::string& text) {
  pt::ptree root;
  std::istringstream in(text);
  try {
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }

  Config cfg;
  TopologySpec& topo = cfg.network.topology;
  const pt::ptree* t = section(root, "topology");
  read_into(t, "topology", "kind", topo.kind, as_kind);
  read_into(t, "topology", "n", topo.n, as_size);
  read_into(t, "topology", "area_side", topo.area_side, as_double);
  read_into(t, "topology", "grid_spacing", topo.grid_spacing, as_double);
  read_into(t, "topology", "placement_noise", topo.placement_noise_fraction, as_double);

  const pt::ptree* net = section(root, "network");
  read_into(net, "network", "radio_range", cfg.network.radio_range, as_double);
  read_into(net, "network", "range_error", cfg.network.range_error_fraction, as_double);
  read_into(net, "network", "anchors", cfg.network.anchor_count, as_size);
  read_into(net, "network", "seed", cfg.network_seed, as_seed);

  cfg.sweep.topology_base = topo;
  read_list(root, "topologies", cfg.sweep.topologies, as_kind);
  read_list(root, "anchors", cfg.sweep.anchor_counts, as_size);
  read_list(root, "radio_range", cfg.sweep.radio_ranges, as_double);
  read_list(root, "range_error", cfg.sweep.range_errors, as_double);

  const pt::ptree* run = section(root, "run");
  read_into(run, "run", "trials", cfg.trials, as_size);
  read_into(run, "run", "seed", cfg.suite_seed, as_seed);
  read_into(run, "run", "refine", cfg.sweep.refine, as_refine);
  return cfg;
}

Config load_config(const std::string& path) { return parse_config(read_text_file(path)); }

} // namespace wsnloc
