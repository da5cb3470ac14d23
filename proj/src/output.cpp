#include "discnet/output.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace discnet {

std::string fmt_num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto const res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& os, RoadNetwork const& net, Trajectory const& traj) {
  os << "time,road,x,density\n";
  for (Snapshot const& s : traj.snapshots)
    for (std::size_t r = 0; r < s.density.size(); ++r)
      for (std::size_t k = 0; k < s.density[r].size(); ++k)
        os << fmt_num(s.time) << ',' << net.roads()[r].id << ',' << fmt_num(traj.grids[r].x[k]) << ','
           << fmt_num(s.density[r][k]) << '\n';
}

void write_junctions_csv(std::ostream& os, Trajectory const& traj) {
  os << "step,time,junction,side,port,flux,adjusted_flux,g_boundary\n";
  for (JunctionRecord const& rec : traj.junction_log) {
    JunctionTrace const& t = rec.trace;
    for (std::size_t i = 0; i < t.f_in.size(); ++i)
      os << rec.step << ',' << fmt_num(rec.time) << ',' << rec.junction << ",in," << i << ',' << fmt_num(t.f_in[i])
         << ',' << fmt_num(t.f_adj_in[i]) << ',' << fmt_num(t.g_boundary[i]) << '\n';
    for (std::size_t j = 0; j < t.f_out.size(); ++j)
      os << rec.step << ',' << fmt_num(rec.time) << ',' << rec.junction << ",out," << j << ','
         << fmt_num(t.f_out[j]) << ',' << fmt_num(t.f_adj_out[j]) << ",\n";
  }
}

namespace {

constexpr double kPanelW = 360.0;
constexpr double kPanelH = 260.0;
constexpr double kMargin = 48.0;

std::string escape(std::string const& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_profile_svg(std::ostream& os, RoadNetwork const& net, std::vector<RoadGrid> const& grids,
                       Snapshot const& snap, ExactSolution const* exact) {
  std::size_t const n = grids.size();
  double const width = static_cast<double>(n) * (kPanelW + kMargin) + kMargin;
  double const height = kPanelH + 2.5 * kMargin;
  double const umax = net.flux().u_max();
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_num(width) << "\" height=\"" << fmt_num(height)
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t r = 0; r < n; ++r) {
    RoadGrid const& g = grids[r];
    double const x0 = kMargin + static_cast<double>(r) * (kPanelW + kMargin);
    double const y0 = 1.5 * kMargin;
    auto px = [&](double x) { return x0 + (x - g.a) / (g.b - g.a) * kPanelW; };
    auto py = [&](double u) { return y0 + kPanelH - u / umax * kPanelH; };

    os << "<g class=\"panel\">\n<rect x=\"" << fmt_num(x0) << "\" y=\"" << fmt_num(y0) << "\" width=\"" << fmt_num(kPanelW)
       << "\" height=\"" << fmt_num(kPanelH) << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fmt_num(x0 + kPanelW / 2) << "\" y=\"" << fmt_num(y0 - 10)
       << "\" text-anchor=\"middle\">road " << escape(net.roads()[r].id) << ", t = " << fmt_num(snap.time)
       << "</text>\n";
    os << "<text x=\"" << fmt_num(x0 + kPanelW / 2) << "\" y=\"" << fmt_num(y0 + kPanelH + 32)
       << "\" text-anchor=\"middle\">x</text>\n";
    os << "<text x=\"" << fmt_num(x0 - 30) << "\" y=\"" << fmt_num(y0 + kPanelH / 2) << "\" transform=\"rotate(-90 "
       << fmt_num(x0 - 30) << ' ' << fmt_num(y0 + kPanelH / 2) << ")\" text-anchor=\"middle\">density</text>\n";
    os << "<text x=\"" << fmt_num(x0) << "\" y=\"" << fmt_num(y0 + kPanelH + 16) << "\" text-anchor=\"middle\">"
       << fmt_num(g.a) << "</text>\n";
    os << "<text x=\"" << fmt_num(x0 + kPanelW) << "\" y=\"" << fmt_num(y0 + kPanelH + 16)
       << "\" text-anchor=\"middle\">" << fmt_num(g.b) << "</text>\n";
    os << "<text x=\"" << fmt_num(x0 - 4) << "\" y=\"" << fmt_num(y0 + 4) << "\" text-anchor=\"end\">"
       << fmt_num(umax) << "</text>\n";
    os << "<text x=\"" << fmt_num(x0 - 4) << "\" y=\"" << fmt_num(y0 + kPanelH) << "\" text-anchor=\"end\">0</text>\n";

    if (exact) {
      os << "<polyline fill=\"none\" stroke=\"black\" stroke-dasharray=\"5,3\" points=\"";
      int const samples = 801;
      for (int k = 0; k < samples; ++k) {
        double const x = g.a + (g.b - g.a) * k / (samples - 1);
        os << fmt_num(px(x)) << ',' << fmt_num(py(exact->evaluate(static_cast<int>(r), x, snap.time))) << ' ';
      }
      os << "\"/>\n";
    }
    os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < g.x.size(); ++k)
      os << fmt_num(px(g.x[k])) << ',' << fmt_num(py(snap.density[r][k])) << ' ';
    os << "\"/>\n</g>\n";
  }
  double const ly = height - 16;
  os << "<line x1=\"" << fmt_num(kMargin) << "\" y1=\"" << fmt_num(ly - 4) << "\" x2=\"" << fmt_num(kMargin + 24)
     << "\" y2=\"" << fmt_num(ly - 4) << "\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
  os << "<text x=\"" << fmt_num(kMargin + 30) << "\" y=\"" << fmt_num(ly) << "\">numerical</text>\n";
  if (exact) {
    os << "<line x1=\"" << fmt_num(kMargin + 120) << "\" y1=\"" << fmt_num(ly - 4) << "\" x2=\""
       << fmt_num(kMargin + 144) << "\" y2=\"" << fmt_num(ly - 4) << "\" stroke=\"black\" stroke-dasharray=\"5,3\"/>\n";
    os << "<text x=\"" << fmt_num(kMargin + 150) << "\" y=\"" << fmt_num(ly) << "\">exact</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace discnet
