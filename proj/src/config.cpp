#include "discnet/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace discnet {

using nlohmann::json;

namespace {

[[noreturn]] void fail(std::string const& path, std::string const& msg) {
  throw ConfigError(path + ": " + msg);
}

json const& need(json const& obj, char const* key, std::string const& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing field");
  return *it;
}

double as_number(json const& v, std::string const& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

std::string as_string(json const& v, std::string const& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

bool as_bool(json const& v, std::string const& path) {
  if (!v.is_boolean()) fail(path, "expected true or false");
  return v.get<bool>();
}

double number_field(json const& obj, char const* key, std::string const& path) {
  return as_number(need(obj, key, path), path + "." + key);
}

double number_or(json const& obj, char const* key, double fallback, std::string const& path) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : as_number(*it, path + "." + key);
}

PiecewiseConstant parse_piecewise(json const& v, std::string const& path) {
  if (v.is_number()) return PiecewiseConstant::constant(v.get<double>());
  if (!v.is_array() || v.empty()) fail(path, "expected a number or a non-empty list of [start, value] pairs");
  PiecewiseConstant pc;
  for (std::size_t k = 0; k < v.size(); ++k) {
    std::string const p = path + "[" + std::to_string(k) + "]";
    if (!v[k].is_array() || v[k].size() != 2) fail(p, "expected a [start, value] pair");
    pc.pieces.emplace_back(as_number(v[k][0], p + "[0]"), as_number(v[k][1], p + "[1]"));
  }
  return pc;
}

json piecewise_json(PiecewiseConstant const& pc) {
  if (pc.pieces.size() == 1) return pc.pieces.front().second;
  json arr = json::array();
  for (auto const& [s, v] : pc.pieces) arr.push_back(json::array({s, v}));
  return arr;
}

TrafficAhead parse_ahead(json const& v, std::string const& path) {
  std::string const s = as_string(v, path);
  if (s == "free" || s == "free_flowing" || s == "free-flowing") return TrafficAhead::FreeFlowing;
  if (s == "congested") return TrafficAhead::Congested;
  fail(path, "expected \"free\" or \"congested\", got \"" + s + "\"");
}

std::string ahead_name(TrafficAhead a) { return a == TrafficAhead::Congested ? "congested" : "free"; }

RoadEnd parse_end(json const& v, std::string const& path) {
  if (!v.is_object()) fail(path, "expected an object");
  RoadEnd end;
  if (auto it = v.find("kind"); it != v.end()) {
    std::string const k = as_string(*it, path + ".kind");
    if (k == "far" || k == "inflow" || k == "outflow") end.kind = RoadEnd::Kind::Far;
    else if (k == "closed") end.kind = RoadEnd::Kind::Closed;
    else fail(path + ".kind", "expected \"far\", \"inflow\", \"outflow\" or \"closed\", got \"" + k + "\"");
  }
  if (auto it = v.find("trace"); it != v.end()) end.trace = parse_piecewise(*it, path + ".trace");
  if (auto it = v.find("ahead"); it != v.end()) end.ahead = parse_ahead(*it, path + ".ahead");
  return end;
}

json end_json(RoadEnd const& end) {
  json j;
  j["kind"] = end.kind == RoadEnd::Kind::Closed ? "closed" : "far";
  if (end.trace) j["trace"] = piecewise_json(*end.trace);
  j["ahead"] = ahead_name(end.ahead);
  return j;
}

std::vector<int> road_list(json const& v, std::vector<Road> const& roads, std::string const& path) {
  json const arr = v.is_array() ? v : json::array({v});
  std::vector<int> out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    std::string const id = as_string(arr[k], path + "[" + std::to_string(k) + "]");
    int found = -1;
    for (std::size_t r = 0; r < roads.size(); ++r)
      if (roads[r].id == id) found = static_cast<int>(r);
    if (found < 0) fail(path + "[" + std::to_string(k) + "]", "unknown road id \"" + id + "\"");
    out.push_back(found);
  }
  return out;
}

std::string line_col(std::string const& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json(std::string const& text, std::string const& source) {
  try {
    return json::parse(text);
  } catch (json::parse_error const& e) {
    throw ConfigError(source + ": malformed JSON at " + line_col(text, e.byte) + ": " + e.what());
  }
}

GridLayout parse_layout(std::string const& s, std::string const& path) {
  if (s == "nodes") return GridLayout::Nodes;
  if (s == "interior") return GridLayout::Interior;
  if (s == "cells") return GridLayout::Cells;
  fail(path, "expected \"nodes\", \"interior\" or \"cells\", got \"" + s + "\"");
}

std::string layout_name(GridLayout g) {
  switch (g) {
    case GridLayout::Nodes: return "nodes";
    case GridLayout::Interior: return "interior";
    case GridLayout::Cells: return "cells";
  }
  return "nodes";
}

OutflowCoupling parse_coupling(std::string const& s, std::string const& path) {
  if (s == "paper") return OutflowCoupling::Paper;
  if (s == "conservative") return OutflowCoupling::Conservative;
  fail(path, "expected \"paper\" or \"conservative\", got \"" + s + "\"");
}

}  // namespace

SchemeKind parse_scheme_name(std::string const& name) {
  if (name == "splitting") return SchemeKind::Splitting;
  if (name == "regularized") return SchemeKind::Regularized;
  if (name == "exact") return SchemeKind::ExactReference;
  throw ConfigError("unknown scheme \"" + name + "\" (expected splitting, regularized or exact)");
}

std::string read_text_file(std::filesystem::path const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scenario parse_scenario(std::string const& text, std::string const& source) {
  json const doc = parse_json(text, source);
  std::string const root = source;
  if (!doc.is_object()) fail(root, "top level must be an object");

  std::string name = "scenario";
  if (auto it = doc.find("name"); it != doc.end()) name = as_string(*it, root + ".name");

  json const& fj = need(doc, "flux", root);
  std::string const fp = root + ".flux";
  DiscFlux const flux(number_field(fj, "d1", fp), number_or(fj, "d0", 0.0, fp), number_field(fj, "e1", fp),
                      number_field(fj, "e0", fp), number_field(fj, "u_star", fp), number_or(fj, "u_max", 1.0, fp));

  json const& rj = need(doc, "roads", root);
  if (!rj.is_array() || rj.empty()) fail(root + ".roads", "expected a non-empty list of roads");
  std::vector<Road> roads;
  for (std::size_t k = 0; k < rj.size(); ++k) {
    std::string const p = root + ".roads[" + std::to_string(k) + "]";
    json const& r = rj[k];
    Road road;
    road.id = as_string(need(r, "id", p), p + ".id");
    road.length = number_field(r, "length", p);
    if (auto it = r.find("cells_hint"); it != r.end()) {
      if (!it->is_number_integer() || it->get<int>() <= 0) fail(p + ".cells_hint", "expected a positive integer");
      road.cells_hint = it->get<int>();
    }
    road.u0 = parse_piecewise(need(r, "u0", p), p + ".u0");
    if (auto it = r.find("boundary"); it != r.end()) {
      json const& b = *it;
      if (!b.is_object()) fail(p + ".boundary", "expected an object");
      if (b.contains("left") || b.contains("right")) {
        if (b.contains("left")) road.left = parse_end(b["left"], p + ".boundary.left");
        if (b.contains("right")) road.right = parse_end(b["right"], p + ".boundary.right");
      } else {
        road.left = road.right = parse_end(b, p + ".boundary");
      }
    }
    roads.push_back(std::move(road));
  }

  std::vector<Junction> junctions;
  if (auto it = doc.find("junctions"); it != doc.end()) {
    if (!it->is_array()) fail(root + ".junctions", "expected a list");
    for (std::size_t k = 0; k < it->size(); ++k) {
      std::string const p = root + ".junctions[" + std::to_string(k) + "]";
      json const& jj = (*it)[k];
      std::string const kind = as_string(need(jj, "kind", p), p + ".kind");
      Junction jn;
      if (kind == "1to1") {
        jn.spec = OneToOne{};
      } else if (kind == "1to2") {
        json const& b = need(jj, "beta", p);
        if (!b.is_array() || b.size() != 2) fail(p + ".beta", "expected [beta1, beta2]");
        jn.spec = OneToTwo{as_number(b[0], p + ".beta[0]"), as_number(b[1], p + ".beta[1]")};
      } else if (kind == "2to1") {
        jn.spec = TwoToOne{number_field(jj, "q", p)};
      } else {
        fail(p + ".kind", "expected \"1to1\", \"1to2\" or \"2to1\", got \"" + kind + "\"");
      }
      try {
        validate(jn.spec);
      } catch (ConfigError const& e) {
        fail(p, e.what());
      }
      jn.in = road_list(need(jj, "in", p), roads, p + ".in");
      jn.out = road_list(need(jj, "out", p), roads, p + ".out");
      jn.ahead_out.assign(jn.out.size(), TrafficAhead::FreeFlowing);
      if (auto ao = jj.find("ahead_overrides"); ao != jj.end()) {
        if (!ao->is_object()) fail(p + ".ahead_overrides", "expected an object mapping road id to free/congested");
        for (auto const& [id, val] : ao->items()) {
          bool matched = false;
          for (std::size_t q = 0; q < jn.out.size(); ++q)
            if (roads[static_cast<std::size_t>(jn.out[q])].id == id) {
              jn.ahead_out[q] = parse_ahead(val, p + ".ahead_overrides." + id);
              matched = true;
            }
          if (!matched) fail(p + ".ahead_overrides." + id, "not an outgoing road of this junction");
        }
      }
      junctions.push_back(std::move(jn));
    }
  }

  SimulationConfig sim;
  json const& sj = need(doc, "scheme", root);
  std::string const sp = root + ".scheme";
  if (!sj.is_object()) fail(sp, "expected an object");
  if (auto it = sj.find("name"); it != sj.end()) {
    try {
      sim.scheme = parse_scheme_name(as_string(*it, sp + ".name"));
    } catch (ConfigError const& e) {
      fail(sp + ".name", e.what());
    }
  }
  sim.epsilon = number_or(sj, "epsilon", 0.0, sp);
  if (sim.scheme == SchemeKind::Regularized) {
    if (!(sim.epsilon > 0.0)) fail(sp + ".epsilon", "the regularized scheme needs epsilon > 0");
    sim.lambda = number_or(sj, "lambda", sim.epsilon, sp);
  } else {
    sim.lambda = number_or(sj, "lambda", sim.lambda, sp);
  }
  sim.T = number_field(sj, "T", sp);
  if (auto it = sj.find("dx"); it != sj.end()) {
    sim.dx = as_number(*it, sp + ".dx");
  } else {
    bool found = false;
    for (Road const& r : roads)
      if (r.cells_hint > 0) {
        sim.dx = r.length / r.cells_hint;
        found = true;
        break;
      }
    if (!found) fail(sp + ".dx", "missing field (and no road provides cells_hint)");
  }
  if (!(sim.dx > 0.0)) fail(sp + ".dx", "must be positive");
  if (!(sim.T > 0.0)) fail(sp + ".T", "must be positive");
  if (!(sim.lambda > 0.0)) fail(sp + ".lambda", "must be positive");
  if (auto it = sj.find("output_times"); it != sj.end()) {
    if (!it->is_array()) fail(sp + ".output_times", "expected a list of times");
    for (std::size_t k = 0; k < it->size(); ++k)
      sim.output_times.push_back(as_number((*it)[k], sp + ".output_times[" + std::to_string(k) + "]"));
  }

  if (auto it = doc.find("strict_paper_algorithms"); it != doc.end())
    sim.strict_paper_algorithms = as_bool(*it, root + ".strict_paper_algorithms");
  if (auto it = doc.find("paper_time_stop"); it != doc.end())
    sim.paper_time_stop = as_bool(*it, root + ".paper_time_stop");
  if (auto it = doc.find("grid_layout"); it != doc.end())
    sim.grid_layout = parse_layout(as_string(*it, root + ".grid_layout"), root + ".grid_layout");
  if (auto it = doc.find("outflow_coupling"); it != doc.end())
    sim.outflow_coupling = parse_coupling(as_string(*it, root + ".outflow_coupling"), root + ".outflow_coupling");

  try {
    return Scenario{name, RoadNetwork(flux, std::move(roads), std::move(junctions)), sim};
  } catch (ConfigError const& e) {
    fail(root, e.what());
  }
}

Scenario load_scenario(std::filesystem::path const& path) {
  return parse_scenario(read_text_file(path), path.string());
}

std::string scenario_to_json(Scenario const& s) {
  RoadNetwork const& net = s.network;
  DiscFlux const& f = net.flux();
  json doc;
  doc["name"] = s.name;
  doc["flux"] = {{"d1", f.d1()}, {"d0", f.d0()}, {"e1", f.e1()}, {"e0", f.e0()}, {"u_star", f.u_star()},
                 {"u_max", f.u_max()}};
  json roads = json::array();
  for (Road const& r : net.roads()) {
    json jr;
    jr["id"] = r.id;
    jr["length"] = r.length;
    if (r.cells_hint > 0) jr["cells_hint"] = r.cells_hint;
    jr["u0"] = piecewise_json(r.u0);
    jr["boundary"] = {{"left", end_json(r.left)}, {"right", end_json(r.right)}};
    roads.push_back(jr);
  }
  doc["roads"] = roads;
  json junctions = json::array();
  for (Junction const& jn : net.junctions()) {
    json jj;
    jj["kind"] = kind_name(jn.spec);
    json in = json::array(), out = json::array();
    for (int r : jn.in) in.push_back(net.roads()[static_cast<std::size_t>(r)].id);
    for (int r : jn.out) out.push_back(net.roads()[static_cast<std::size_t>(r)].id);
    jj["in"] = in;
    jj["out"] = out;
    if (auto const* b = std::get_if<OneToTwo>(&jn.spec)) jj["beta"] = {b->beta1, b->beta2};
    if (auto const* q = std::get_if<TwoToOne>(&jn.spec)) jj["q"] = q->q;
    json overrides = json::object();
    for (std::size_t p = 0; p < jn.out.size(); ++p)
      overrides[net.roads()[static_cast<std::size_t>(jn.out[p])].id] = ahead_name(jn.ahead_out[p]);
    jj["ahead_overrides"] = overrides;
    junctions.push_back(jj);
  }
  doc["junctions"] = junctions;
  SimulationConfig const& c = s.sim;
  doc["scheme"] = {{"name", scheme_name(c.scheme)}, {"lambda", c.lambda}, {"epsilon", c.epsilon},
                   {"T", c.T},                     {"dx", c.dx},          {"output_times", c.output_times}};
  doc["strict_paper_algorithms"] = c.strict_paper_algorithms;
  doc["paper_time_stop"] = c.paper_time_stop;
  doc["grid_layout"] = layout_name(c.grid_layout);
  doc["outflow_coupling"] = c.outflow_coupling == OutflowCoupling::Conservative ? "conservative" : "paper";
  return doc.dump(2) + "\n";
}

TableSpec parse_table(std::string const& text, std::filesystem::path const& base_dir, std::string const& source) {
  json const doc = parse_json(text, source);
  std::string const root = source;
  if (!doc.is_object()) fail(root, "top level must be an object");
  TableSpec spec;
  spec.name = doc.contains("name") ? as_string(doc["name"], root + ".name") : std::string("table");

  json const& sc = need(doc, "scenarios", root);
  if (!sc.is_array() || sc.empty()) fail(root + ".scenarios", "expected a non-empty list of scenario files");
  for (std::size_t k = 0; k < sc.size(); ++k) {
    std::string const file = as_string(sc[k], root + ".scenarios[" + std::to_string(k) + "]");
    Scenario s = load_scenario(base_dir / file);
    if (auto it = doc.find("T"); it != doc.end()) s.sim.T = as_number(*it, root + ".T");
    if (auto it = doc.find("paper_time_stop"); it != doc.end())
      s.sim.paper_time_stop = as_bool(*it, root + ".paper_time_stop");
    if (auto it = doc.find("outflow_coupling"); it != doc.end())
      s.sim.outflow_coupling = parse_coupling(as_string(*it, root + ".outflow_coupling"), root + ".outflow_coupling");
    spec.scenarios.push_back(TableScenario{s.name, s.network, s.sim});
  }

  json const& cols = need(doc, "columns", root);
  if (!cols.is_array() || cols.empty()) fail(root + ".columns", "expected a non-empty list");
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::string const p = root + ".columns[" + std::to_string(k) + "]";
    TableColumn col;
    try {
      col.scheme = parse_scheme_name(as_string(need(cols[k], "scheme", p), p + ".scheme"));
    } catch (ConfigError const& e) {
      fail(p + ".scheme", e.what());
    }
    if (col.scheme == SchemeKind::Regularized) {
      col.epsilon = number_field(cols[k], "epsilon", p);
      col.lambda = number_or(cols[k], "lambda", col.epsilon, p);
    } else {
      col.lambda = number_field(cols[k], "lambda", p);
    }
    spec.columns.push_back(col);
  }

  json const& dx = need(doc, "dx", root);
  if (!dx.is_array() || dx.empty()) fail(root + ".dx", "expected a non-empty list");
  for (std::size_t k = 0; k < dx.size(); ++k) spec.dx.push_back(as_number(dx[k], root + ".dx[" + std::to_string(k) + "]"));
  return spec;
}

TableSpec load_table(std::filesystem::path const& path) {
  return parse_table(read_text_file(path), path.parent_path(), path.string());
}

}  // namespace discnet
