#pragma once

#include <filesystem>
#include <string>

#include "discnet/analysis.hpp"
#include "discnet/network.hpp"

namespace discnet {

/// A network together with the run settings read from one JSON scenario file.
struct Scenario {
  std::string name;
  RoadNetwork network;
  SimulationConfig sim;
};

/// Parses a scenario document. Errors are ConfigError messages naming the offending field,
/// or the line and column for malformed JSON.
Scenario parse_scenario(std::string const& text, std::string const& source = "<config>");
Scenario load_scenario(std::filesystem::path const& path);

/// Canonical JSON form; parsing it yields the same scenario.
std::string scenario_to_json(Scenario const& scenario);

/// Table files list scenario files relative to their own directory.
TableSpec parse_table(std::string const& text, std::filesystem::path const& base_dir,
                      std::string const& source = "<table>");
TableSpec load_table(std::filesystem::path const& path);

SchemeKind parse_scheme_name(std::string const& name);

std::string read_text_file(std::filesystem::path const& path);

}  // namespace discnet
