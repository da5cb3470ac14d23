#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "discnet/flux.hpp"
#include "discnet/junction.hpp"
#include "discnet/scheme.hpp"

namespace discnet {

/// Piecewise-constant function given as (start, value) breakpoints in increasing order.
/// The first value also applies before the first start; each later value applies from its start on.
struct PiecewiseConstant {
  std::vector<std::pair<double, double>> pieces;

  static PiecewiseConstant constant(double v) { return PiecewiseConstant{{{0.0, v}}}; }
  double at(double s) const;
  bool is_constant() const;
};

/// An end of a road that is not attached to a junction.
///
/// Far ends read a far-field density trace in time; Closed ends let no vehicles pass.
struct RoadEnd {
  enum class Kind { Far, Closed };
  Kind kind = Kind::Far;
  std::optional<PiecewiseConstant> trace;
  TrafficAhead ahead = TrafficAhead::FreeFlowing;
};

struct Road {
  std::string id;
  double length = 0.0;
  int cells_hint = 0;
  PiecewiseConstant u0;
  RoadEnd left;
  RoadEnd right;
};

struct Junction {
  JunctionSpec spec;
  std::vector<int> in;
  std::vector<int> out;
  std::vector<TrafficAhead> ahead_out;
};

/// Where a road end is attached: junction index and port, or nothing.
struct Attachment {
  int junction = -1;
  int port = -1;
  bool attached() const { return junction >= 0; }
};

class RoadNetwork {
 public:
  RoadNetwork(DiscFlux flux, std::vector<Road> roads, std::vector<Junction> junctions);

  DiscFlux const& flux() const { return flux_; }
  std::vector<Road> const& roads() const { return roads_; }
  std::vector<Junction> const& junctions() const { return junctions_; }

  int road_index(std::string const& id) const;
  Attachment const& left_attachment(int road) const { return left_[static_cast<std::size_t>(road)]; }
  Attachment const& right_attachment(int road) const { return right_[static_cast<std::size_t>(road)]; }

  /// Incoming roads occupy [-L, 0] so that every junction sits at x = 0; all other roads [0, L].
  double road_start(int road) const;
  double road_end(int road) const { return road_start(road) + roads_[static_cast<std::size_t>(road)].length; }

  double far_field_left(int road, double t) const;
  double far_field_right(int road, double t) const;

 private:
  DiscFlux flux_;
  std::vector<Road> roads_;
  std::vector<Junction> junctions_;
  std::vector<Attachment> left_;
  std::vector<Attachment> right_;
};

enum class SchemeKind { Splitting, Regularized, ExactReference };

/// Placement of the sample points on a road [a, b] of length L.
///
/// Nodes puts L/dx + 1 points a + j*dx including both ends, Interior the L/dx - 1 points
/// strictly inside, Cells the L/dx cell centres.
enum class GridLayout { Nodes, Interior, Cells };

/// How an outgoing road absorbs the junction flux. `Paper` imposes the adjusted flux on p only;
/// Conservative imposes the raw junction flux on the full face so that mass balances exactly.
enum class OutflowCoupling { Paper, Conservative };

struct SimulationConfig {
  double dx = 0.01;
  double lambda = 0.5;
  double T = 1.0;
  SchemeKind scheme = SchemeKind::Splitting;
  double epsilon = 0.0;
  std::vector<double> output_times;
  bool paper_time_stop = false;
  bool strict_paper_algorithms = false;
  OutflowCoupling outflow_coupling = OutflowCoupling::Paper;
  GridLayout grid_layout = GridLayout::Nodes;
  bool record_junctions = true;
};

struct RoadGrid {
  double a = 0.0;
  double b = 0.0;
  double dx = 0.0;
  std::vector<double> x;
};

RoadGrid make_grid(double a, double b, double dx, GridLayout layout);

struct Snapshot {
  int step = 0;
  double time = 0.0;
  std::vector<std::vector<double>> density;
};

struct JunctionRecord {
  int step = 0;
  double time = 0.0;
  int junction = 0;
  JunctionTrace trace;
};

/// Mass bookkeeping of a run. `external_net` integrates the flux through unattached road ends
/// (positive into the network); `junction_created` integrates outgoing minus incoming face flux
/// at junctions, which is zero for a conservative coupling.
struct MassLedger {
  double initial = 0.0;
  double final = 0.0;
  double external_net = 0.0;
  double junction_created = 0.0;
  double clamped = 0.0;
};

struct Trajectory {
  std::vector<RoadGrid> grids;
  std::vector<Snapshot> snapshots;
  std::vector<JunctionRecord> junction_log;
  MassLedger mass;
  double g_min = 0.0;
  double g_max = 0.0;
  int steps = 0;
  double dt = 0.0;
};

std::vector<RoadGrid> make_grids(RoadNetwork const& net, double dx, GridLayout layout);

Trajectory simulate(RoadNetwork const& net, SimulationConfig const& cfg);

double total_mass(std::vector<RoadGrid> const& grids, Snapshot const& snap);

}  // namespace discnet
