#pragma once

#include <iosfwd>
#include <string>

#include "discnet/exact.hpp"
#include "discnet/network.hpp"

namespace discnet {

/// Shortest round-trip decimal form; keeps CSV output byte-identical across runs.
std::string fmt_num(double v);

/// Columns: time, road, x, density; one row per sample point and snapshot.
void write_trajectory_csv(std::ostream& os, RoadNetwork const& net, Trajectory const& traj);

/// Long format: step, time, junction, side, port, flux, adjusted_flux, g_boundary.
void write_junctions_csv(std::ostream& os, Trajectory const& traj);

/// Density profiles of one snapshot, one panel per road, with the exact solution overlaid when given.
void write_profile_svg(std::ostream& os, RoadNetwork const& net, std::vector<RoadGrid> const& grids,
                       Snapshot const& snap, ExactSolution const* exact);

}  // namespace discnet
