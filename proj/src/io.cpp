#include "mindisk/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace mindisk::io {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp);
    out << content;
    if (!out.flush()) throw IoError("short write to " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp + " onto " + path + ": " + ec.message());
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

namespace {

void append_vertex(std::string& out, const Vec3& p) {
  out += "v ";
  out += format_double(p[0]);
  out += ' ';
  out += format_double(p[1]);
  out += ' ';
  out += format_double(p[2]);
  out += '\n';
}

void append_face(std::string& out, int a, int b, int c) {
  out += "f ";
  out += std::to_string(a);
  out += ' ';
  out += std::to_string(b);
  out += ' ';
  out += std::to_string(c);
  out += '\n';
}

}  // namespace

std::string obj_from_patch(const ParamPatch& p) {
  p.validate();
  const Grid2& g = p.grid;
  std::string out;
  out.reserve(p.pos.size() * 40);
  for (const auto& v : p.pos) append_vertex(out, v);
  auto id = [&g](int i, int j) { return i * g.cols() + j + 1; };
  for (int i = 0; i < g.ns(); ++i)
    for (int j = 0; j < g.nt(); ++j) {
      append_face(out, id(i, j), id(i + 1, j), id(i + 1, j + 1));
      append_face(out, id(i, j), id(i + 1, j + 1), id(i, j + 1));
    }
  return out;
}

std::string obj_from_disk(const DiskSample& d) {
  std::string out;
  out.reserve(d.pos.size() * 40);
  for (const auto& v : d.pos) append_vertex(out, v);
  for (const auto& t : d.tris) append_face(out, t[0] + 1, t[1] + 1, t[2] + 1);
  return out;
}

std::string obj_from_multigraph(const MultiGraph& g) { return obj_from_patch(embed_to_r3(g)); }

std::string a2_csv(const DiskSample& d) {
  std::string out = "a2\n";
  for (double v : d.a2) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

std::string geometry_csv(const ParamPatch& p, const GeomData& g) {
  if (g.H.size() != p.pos.size()) throw InvalidInputError("geometry csv: patch/geometry mismatch");
  std::string out = "s,t,x,y,z,H,K,A2\n";
  const Grid2& gr = p.grid;
  for (int i = 0; i <= gr.ns(); ++i)
    for (int j = 0; j <= gr.nt(); ++j) {
      std::size_t n = gr.idx(i, j);
      out += format_double(gr.s.at(i));
      out += ',';
      out += format_double(gr.t.at(j));
      out += ',';
      out += format_double(p.pos[n][0]);
      out += ',';
      out += format_double(p.pos[n][1]);
      out += ',';
      out += format_double(p.pos[n][2]);
      out += ',';
      out += format_double(g.H[n]);
      out += ',';
      out += format_double(g.K[n]);
      out += ',';
      out += format_double(g.A2[n]);
      out += '\n';
    }
  return out;
}

std::string solution_csv(const MultiGraph& g) {
  std::string out = "rho,theta,u\n";
  for (int i = 0; i <= g.grid.ns(); ++i)
    for (int j = 0; j <= g.grid.nt(); ++j) {
      out += format_double(g.rho(i));
      out += ',';
      out += format_double(g.theta(j));
      out += ',';
      out += format_double(g.u[g.grid.idx(i, j)]);
      out += '\n';
    }
  return out;
}

std::string separation_csv(const SeparationProfile& p) {
  std::string out = "rho,theta,w\n";
  for (int i = 0; i <= p.grid.ns(); ++i)
    for (int j = 0; j <= p.grid.nt(); ++j) {
      out += format_double(p.rho(i));
      out += ',';
      out += format_double(p.theta(j));
      out += ',';
      out += format_double(p.w[p.grid.idx(i, j)]);
      out += '\n';
    }
  return out;
}

std::string points_csv(const std::vector<Vec3>& pts) {
  std::string out = "x,y,z\n";
  for (const auto& p : pts) {
    out += format_double(p[0]);
    out += ',';
    out += format_double(p[1]);
    out += ',';
    out += format_double(p[2]);
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<double> parse_csv_row(const std::string& line, std::size_t expect,
                                  const std::string& what) {
  std::vector<double> vals;
  std::size_t start = 0;
  while (start <= line.size()) {
    std::size_t comma = line.find(',', start);
    std::string field = line.substr(start, comma == std::string::npos ? comma : comma - start);
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception&) {
      throw IoError(what + ": bad number '" + field + "'");
    }
    if (used != field.size()) throw IoError(what + ": bad number '" + field + "'");
    vals.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (vals.size() != expect) throw IoError(what + ": expected " + std::to_string(expect) +
                                           " columns, got " + std::to_string(vals.size()));
  return vals;
}

}  // namespace

DiskSample disk_from_obj(const std::string& obj_text, const std::string& a2_csv_text,
                         int center_index, const Vec3& ball_center, double r0) {
  DiskSample d;
  for (const auto& line : split_lines(obj_text)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      Vec3 p;
      if (!(ls >> p[0] >> p[1] >> p[2])) throw IoError("obj: malformed vertex line: " + line);
      d.pos.push_back(p);
    } else if (tag == "f") {
      std::array<int, 3> t;
      if (!(ls >> t[0] >> t[1] >> t[2])) throw IoError("obj: malformed face line: " + line);
      for (int& v : t) --v;
      d.tris.push_back(t);
    } else if (!tag.empty() && tag != "#") {
      throw IoError("obj: unsupported element '" + tag + "'");
    }
  }
  auto lines = split_lines(a2_csv_text);
  if (lines.empty() || lines[0] != "a2") throw IoError("a2 csv: missing 'a2' header");
  for (std::size_t i = 1; i < lines.size(); ++i)
    d.a2.push_back(parse_csv_row(lines[i], 1, "a2 csv")[0]);
  if (d.a2.size() != d.pos.size())
    throw IoError("a2 csv: " + std::to_string(d.a2.size()) + " values for " +
                  std::to_string(d.pos.size()) + " vertices");
  d.center_index = center_index;
  d.ball_center = ball_center;
  d.r0 = r0;
  return d;
}

MultiGraph multigraph_from_csv(const std::string& text) {
  auto lines = split_lines(text);
  if (lines.empty() || lines[0] != "rho,theta,u") throw IoError("solution csv: bad header");
  std::vector<std::array<double, 3>> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto v = parse_csv_row(lines[i], 3, "solution csv");
    rows.push_back({v[0], v[1], v[2]});
  }
  if (rows.size() < 4) throw IoError("solution csv: too few rows");
  std::size_t cols = 0;
  while (cols < rows.size() && rows[cols][0] == rows[0][0]) ++cols;
  if (cols < 2 || rows.size() % cols != 0)
    throw IoError("solution csv: rows do not form a grid");
  std::size_t nrows = rows.size() / cols;
  double span = rows[cols - 1][1] - rows[0][1];
  int sheets = static_cast<int>(std::llround(span / (2.0 * M_PI)));
  if (sheets < 1 || std::abs(span - 2.0 * M_PI * sheets) > 1e-9 * span)
    throw IoError("solution csv: angular span is not a whole number of turns");
  MultiGraph g;
  g.r_in = rows[0][0];
  g.r_out = rows.back()[0];
  g.sheets = sheets;
  g.grid.s = {std::log(g.r_in), std::log(g.r_out), static_cast<int>(nrows - 1)};
  g.grid.t = {-sheets * M_PI, sheets * M_PI, static_cast<int>(cols - 1)};
  g.u.reserve(rows.size());
  for (const auto& r : rows) g.u.push_back(r[2]);
  g.validate();
  return g;
}

namespace {

ordered_json jvec(const Vec3& v) { return ordered_json::array({v[0], v[1], v[2]}); }

}  // namespace

ordered_json json_report(const SolveReport& r) {
  return ordered_json{{"converged", r.converged},
                      {"iterations", r.iterations},
                      {"final_residual", r.final_residual},
                      {"residual_history", r.residual_history}};
}

ordered_json json_report(const OrderReport& r) {
  return ordered_json{{"resolutions", r.resolutions},
                      {"errors", r.errors},
                      {"order", r.order},
                      {"exact", r.exact},
                      {"monotone", r.monotone}};
}

ordered_json json_report(const PairReport& r) {
  return ordered_json{
      {"y_index", r.pair.y_index},
      {"y_position", jvec(r.y_position)},
      {"s", r.pair.s},
      {"C", r.pair.C},
      {"mode", r.pair.ball_mode == BallMode::Intrinsic ? "intrinsic" : "extrinsic"},
      {"multiple", r.pair.ball_multiple},
      {"margins",
       ordered_json{{"sup_bound", r.margins.sup_bound},
                    {"half_distance", r.margins.half_distance},
                    {"center_F", r.margins.center_F}}},
      {"warnings", r.warnings},
      {"f_center", r.F_center},
      {"f_max", r.F_max},
      {"f_boundary_max", r.F_boundary_max},
      {"sup_a2_ball", r.sup_a2_ball}};
}

ordered_json json_report(const InitialSeparation& r) {
  return ordered_json{{"inner_radius", r.inner_radius},
                      {"min_ratio", r.min_ratio},
                      {"max_ratio", r.max_ratio},
                      {"window_ok", r.window_ok}};
}

ordered_json json_report(const FitReport& r) {
  return ordered_json{{"rho0", r.rho0},           {"alpha_hat", r.alpha_hat},
                      {"c_hat", r.c_hat},         {"residual", r.residual},
                      {"envelope_ok", r.envelope_ok}, {"logarithmic", r.logarithmic},
                      {"kind", r.kind}};
}

ordered_json json_report(const MeshChecks& r) {
  return ordered_json{{"vertices", r.vertices},
                      {"edges", r.edges},
                      {"triangles", r.triangles},
                      {"euler", r.euler},
                      {"components", r.components},
                      {"boundary_loops", r.boundary_loops},
                      {"max_radius_dev", r.max_radius_dev},
                      {"max_inside_excess", r.max_inside_excess},
                      {"is_disk", r.is_disk}};
}

ordered_json json_report(const SingularSet& r) {
  ordered_json pts = ordered_json::array();
  for (const auto& q : r.points)
    pts.push_back(ordered_json{{"p", jvec(q.p)}, {"witness", q.witness}});
  return ordered_json{{"probe_radius", r.probe_radius},
                      {"burn_in", r.burn_in},
                      {"curvature_unbounded", r.curvature_unbounded},
                      {"points", pts}};
}

ordered_json json_report(const ConeReport& r) {
  ordered_json fails = ordered_json::array();
  for (const auto& f : r.failures)
    fails.push_back(ordered_json{{"z", f.z_index}, {"p", f.p_index}, {"margin", f.margin}});
  ordered_json levels = ordered_json::array();
  for (const auto& l : r.levels)
    levels.push_back(ordered_json{
        {"t", l.t}, {"above", l.above}, {"below", l.below}, {"exempt", l.exempt}});
  return ordered_json{{"delta", r.delta},
                      {"eps", r.eps},
                      {"slack", r.slack},
                      {"min_margin", r.min_margin},
                      {"lipschitz_estimate", r.lipschitz_estimate},
                      {"cone_ok", r.cone_ok},
                      {"accumulation_ok", r.accumulation_ok},
                      {"pass", r.pass},
                      {"failures", fails},
                      {"levels", levels}};
}

ordered_json json_report(const LipschitzCurve& r) {
  ordered_json centers = ordered_json::array();
  for (const auto& c : r.centers) centers.push_back(jvec(c));
  return ordered_json{{"t", r.t},
                      {"centers", centers},
                      {"lipschitz", r.lipschitz},
                      {"max_cluster_diameter", r.max_cluster_diameter}};
}

ordered_json json_report(const TwoGraphCensus& r) {
  ordered_json comps = ordered_json::array();
  for (const auto& c : r.comps)
    comps.push_back(ordered_json{{"id", c.id},
                                 {"size", c.size},
                                 {"sheet_count", c.sheet_count},
                                 {"graph_ok", c.graph_ok},
                                 {"mean_separation", c.mean_separation},
                                 {"max_sheet_spread", c.max_sheet_spread},
                                 {"min_gap", c.min_gap}});
  return ordered_json{{"components", r.components},
                      {"all_multigraph", r.all_multigraph},
                      {"notes", r.notes},
                      {"comps", comps}};
}

ordered_json json_report(const OneSidedReport& r) {
  ordered_json comps = ordered_json::array();
  for (const auto& c : r.components)
    comps.push_back(ordered_json{{"id", c.id},
                                 {"size", c.size},
                                 {"touches_inner", c.touches_inner},
                                 {"sup_a2_r02", c.sup_a2_r02},
                                 {"curvature_ok", c.curvature_ok},
                                 {"graph_ok", c.graph_ok}});
  return ordered_json{{"r0", r.r0},
                      {"eps", r.eps},
                      {"topology_overridden", r.topology_overridden},
                      {"pass", r.pass},
                      {"components", comps}};
}

ordered_json json_report(const FoliationReport& r) {
  ordered_json entries = ordered_json::array();
  for (const auto& e : r.entries)
    entries.push_back(ordered_json{{"scale", e.scale},
                                   {"leaf_distance", e.leaf_distance},
                                   {"tilt", e.tilt},
                                   {"sheet_count", e.sheet_count}});
  return ordered_json{{"distances_decreasing", r.distances_decreasing},
                      {"tilts_decreasing", r.tilts_decreasing},
                      {"entries", entries}};
}

void OutputSet::write(const std::string& path, const std::string& content) {
  for (const auto& e : entries_)
    if (e.first == path) throw InvalidInputError("outputs: duplicate path " + path);
  atomic_write(path, content);
  entries_.push_back({path, fnv1a64_hex(content)});
}

void OutputSet::write_json(const std::string& path, const ordered_json& doc) {
  write(path, doc.dump(2) + "\n");
}

void OutputSet::manifest(const std::string& path, const std::string& command,
                         const ordered_json& config_echo, double wall_seconds) const {
  ordered_json outputs = ordered_json::array();
  for (const auto& e : entries_)
    outputs.push_back(ordered_json{{"path", e.first}, {"checksum_fnv1a64", e.second}});
  ordered_json doc{{"command", command},
                   {"version", "0.1.0"},
                   {"config", config_echo},
                   {"wall_seconds", wall_seconds},
                   {"outputs", outputs}};
  atomic_write(path, doc.dump(2) + "\n");
}

}  // namespace mindisk::io
