#pragma once

#include <optional>
#include <string>

#include "wsnloc/experiment.hpp"
#include "wsnloc/topology.hpp"

namespace wsnloc {

/// Parsed key = value config. Sections:
///
///   [topology]     kind, n, area_side, grid_spacing, placement_noise
///   [network]      radio_range, range_error, anchors, seed
///   [topologies]   values = random, grid, hex_grid
///   [anchors]      values = 3, 4, 6, 10
///   [radio_range]  values = 1.5, 1.75, ...
///   [range_error]  values = 0, 0.05, ...
///   [run]          trials, seed, refine
///
/// Missing keys keep their defaults; the sweep axes default to the
/// 360-cell study grid.
struct Config {
  NetworkRequest network;
  Seed network_seed = 1;
  Sweep sweep = default_sweep();
  std::size_t trials = 30;
  Seed suite_seed = 2013;
};

/// Throws std::invalid_argument with the offending key on bad input.
Config parse_config(const std::string& text);
Config load_config(const std::string& path);

} // namespace wsnloc
