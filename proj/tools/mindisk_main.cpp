#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mindisk/io.hpp"

using namespace mindisk;
using io::ordered_json;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::pair<double, double> parse_range(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw InvalidInputError("range must look like lo:hi, got " + s);
  try {
    return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw InvalidInputError("range must look like lo:hi, got " + s);
  }
}

std::pair<int, int> parse_grid(const std::string& s) {
  auto x = s.find('x');
  if (x == std::string::npos) throw InvalidInputError("grid must look like NxM, got " + s);
  try {
    return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
  } catch (const std::exception&) {
    throw InvalidInputError("grid must look like NxM, got " + s);
  }
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    try {
      out.push_back(std::stoi(s.substr(start, comma - start)));
    } catch (const std::exception&) {
      throw InvalidInputError("expected a comma-separated integer list, got " + s);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// flat JSON config applied as defaults before flags are parsed
class Defaults {
 public:
  void load(const std::string& path) {
    try {
      j_ = ordered_json::parse(io::read_file(path));
    } catch (const nlohmann::json::exception& e) {
      throw IoError("config " + path + ": " + e.what());
    }
    if (!j_.is_object()) throw IoError("config " + path + ": expected a flat JSON object");
  }
  template <class T>
  T get(const std::string& key, T fallback) const {
    if (!j_.contains(key)) return fallback;
    try {
      return j_.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw IoError("config key " + key + ": " + e.what());
    }
  }

 private:
  ordered_json j_ = ordered_json::object();
};

int round_up4(double x) {
  int n = static_cast<int>(std::ceil(x));
  return ((n + 3) / 4) * 4;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string surface, s_range, t_range, grid, out;
  double scale = 1.0, pitch = 1.0, coef = 1.0;
  double rin = 1.0, rout = 8.0;
  int sheets = 2, which = 1;
};

int cmd_generate(const GenerateArgs& a) {
  Timer timer;
  io::OutputSet outs;
  ordered_json echo{{"surface", a.surface}, {"out", a.out}};

  bool patch_kind = a.surface == "helicoid" || a.surface == "catenoid" || a.surface == "ruled" ||
                    a.surface == "graph";
  if (patch_kind) {
    auto [s0, s1] = parse_range(a.s_range);
    auto [t0, t1] = parse_range(a.t_range);
    auto [ns, nt] = parse_grid(a.grid);
    echo["s"] = a.s_range;
    echo["t"] = a.t_range;
    echo["grid"] = a.grid;
    echo["scale"] = a.scale;
    ParamPatch p;
    if (a.surface == "helicoid") {
      p = make_helicoid(s0, s1, t0, t1, ns, nt);
    } else if (a.surface == "catenoid") {
      p = make_catenoid(s0, s1, t0, t1, ns, nt);
    } else if (a.surface == "ruled") {
      echo["pitch"] = a.pitch;
      std::vector<Vec3> beta(nt + 1), delta(nt + 1);
      for (int j = 0; j <= nt; ++j) {
        double t = t0 + (t1 - t0) * j / nt;
        beta[j] = {0.0, 0.0, a.pitch * t};
        delta[j] = {std::cos(t), std::sin(t), 0.0};
      }
      p = make_ruled(beta, delta, t0, t1, s0, s1, ns);
    } else {
      echo["coef"] = a.coef;
      double c = a.coef;
      Grid2 g{{s0, s1, ns}, {t0, t1, nt}};
      p = make_graph_patch_analytic(
          g, [c](double s, double) -> std::array<double, 6> {
            return {c * s * s, 2.0 * c * s, 0.0, 2.0 * c, 0.0, 0.0};
          });
    }
    if (a.scale != 1.0) p = rescale(p, a.scale);
    GeomData geo = fundamental_forms(p);
    outs.write(a.out + ".obj", io::obj_from_patch(p));
    outs.write(a.out + ".csv", io::geometry_csv(p, geo));
  } else if (a.surface == "helicoid-sheet" || a.surface == "nonproper") {
    int nr = 96, nt = a.sheets * 48;
    if (!a.grid.empty()) std::tie(nr, nt) = parse_grid(a.grid);
    echo["rin"] = a.rin;
    echo["rout"] = a.rout;
    echo["sheets"] = a.sheets;
    echo["grid"] = std::to_string(nr) + "x" + std::to_string(nt);
    MultiGraph g;
    if (a.surface == "helicoid-sheet") {
      echo["which"] = a.which;
      g = helicoid_sheet(a.which, a.rin, a.rout, a.sheets, nr, nt);
    } else {
      g = nonproper_graph(a.rin, a.rout, a.sheets, nr, nt);
    }
    outs.write(a.out + ".csv", io::solution_csv(g));
    outs.write(a.out + ".obj", io::obj_from_multigraph(g));
    if (g.sheets >= 2) outs.write(a.out + "_w.csv", io::separation_csv(separation(g)));
  } else {
    throw InvalidInputError("unknown surface kind: " + a.surface);
  }
  outs.manifest(a.out + ".manifest.json", "generate", echo, timer.seconds());
  std::cout << "wrote " << outs.entries().size() << " files under " << a.out << "*\n";
  return 0;
}

// ------------------------------------------------------------------- solve

SolverConfig config_from_json(const ordered_json& j) {
  SolverConfig c;
  if (j.contains("tol_residual")) c.tol_residual = j.at("tol_residual").get<double>();
  if (j.contains("max_newton_iters")) c.max_newton_iters = j.at("max_newton_iters").get<int>();
  if (j.contains("backtrack_factor")) c.backtrack_factor = j.at("backtrack_factor").get<double>();
  if (j.contains("min_step")) c.min_step = j.at("min_step").get<double>();
  if (j.contains("linear_tol")) c.linear_tol = j.at("linear_tol").get<double>();
  return c;
}

std::function<double(double, double)> named_height(const std::string& kind,
                                                   const ordered_json& params, int sheets) {
  if (kind == "constant") {
    double v = params.contains("value") ? params.at("value").get<double>() : 1.0;
    return [v](double, double) { return v; };
  }
  if (kind == "helicoid-sheet") {
    double off = params.contains("offset") ? params.at("offset").get<double>() : 0.0;
    return [off](double, double theta) { return theta + off; };
  }
  if (kind == "arccosh") {
    return [](double rho, double) { return std::acosh(rho); };
  }
  if (kind == "perturbed-screw") {
    // screw data with a sublinear-test perturbation ramped on toward the
    // outer edge, largest on the widest cover
    double eps = params.contains("eps") ? params.at("eps").get<double>() : 0.5;
    double n2 = 2.0 * sheets;
    return [eps, n2](double, double theta) { return theta + eps * std::sin(theta / n2); };
  }
  throw InvalidInputError("unknown boundary kind: " + kind);
}

struct SolveArgs {
  std::string problem, out;
  bool convergence = false;
  std::string family = "arccosh";
  std::string resolutions = "64,128,256";
  double rin = 1.5, rout = 4.0;
  int sheets = 1;
};

int cmd_solve(const SolveArgs& a) {
  Timer timer;
  io::OutputSet outs;

  if (a.convergence) {
    std::vector<int> res = parse_int_list(a.resolutions);
    std::function<double(double, double)> exact;
    if (a.family == "const") {
      exact = [](double, double) { return 1.0; };
    } else if (a.family == "theta") {
      exact = [](double, double theta) { return theta; };
    } else if (a.family == "arccosh") {
      if (!(a.rin > 1.0))
        throw InvalidInputError("arccosh family needs r_in > 1 (logarithm-free annulus)");
      exact = [](double rho, double) { return std::acosh(rho); };
    } else {
      throw InvalidInputError("unknown convergence family: " + a.family);
    }
    OrderReport rep = convergence_order(a.rin, a.rout, a.sheets, exact, res, SolverConfig{});
    for (std::size_t k = 0; k < rep.resolutions.size(); ++k)
      std::cout << "n = " << rep.resolutions[k] << "  max error = " << rep.errors[k] << "\n";
    if (rep.exact)
      std::cout << "order: exact (errors at rounding level)\n";
    else
      std::cout << "order: " << rep.order << "\n";
    ordered_json echo{{"family", a.family}, {"resolutions", a.resolutions},
                      {"rin", a.rin},       {"rout", a.rout},
                      {"sheets", a.sheets}, {"out", a.out}};
    outs.write_json(a.out + "_order.json", io::json_report(rep));
    outs.manifest(a.out + ".manifest.json", "solve", echo, timer.seconds());
    return 0;
  }

  if (a.problem.empty()) throw InvalidInputError("solve needs --problem or --convergence");
  ordered_json doc;
  try {
    doc = ordered_json::parse(io::read_file(a.problem));
  } catch (const nlohmann::json::exception& e) {
    throw IoError("problem " + a.problem + ": " + e.what());
  }
  ordered_json dj;
  try {
    dj = doc.at("domain");
  } catch (const nlohmann::json::exception&) {
    throw IoError("problem " + a.problem + ": missing domain object");
  }
  AnnularDomain dom;
  try {
    dom.r_in = dj.at("r_in").get<double>();
    dom.r_out = dj.at("r_out").get<double>();
    dom.sheets = dj.at("sheets").get<int>();
    dom.n_sigma = dj.at("n_sigma").get<int>();
    dom.n_theta = dj.at("n_theta").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError("problem domain: " + std::string(e.what()));
  }

  BoundaryData bd;
  if (!doc.contains("boundary")) throw IoError("problem " + a.problem + ": missing boundary");
  const ordered_json& bj = doc.at("boundary");
  if (bj.contains("kind")) {
    bd = sample_boundary(dom, named_height(bj.at("kind").get<std::string>(), bj, dom.sheets));
  } else {
    try {
      bd.inner = bj.at("inner").get<std::vector<double>>();
      bd.outer = bj.at("outer").get<std::vector<double>>();
      bd.theta_min = bj.at("theta_min").get<std::vector<double>>();
      bd.theta_max = bj.at("theta_max").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      throw IoError("problem boundary: " + std::string(e.what()));
    }
  }
  SolverConfig cfg =
      doc.contains("config") ? config_from_json(doc.at("config")) : SolverConfig{};

  ordered_json echo{{"problem", a.problem}, {"out", a.out}};
  try {
    SolveResult res = solve(dom, bd, cfg);
    outs.write(a.out + ".csv", io::solution_csv(res.graph));
    outs.write_json(a.out + "_report.json", io::json_report(res.report));
    outs.manifest(a.out + ".manifest.json", "solve", echo, timer.seconds());
    std::cout << "converged in " << res.report.iterations
              << " iterations, residual = " << res.report.final_residual << "\n";
    return 0;
  } catch (const NumericError& e) {
    SolveReport rep;
    rep.iterations = e.iterations;
    rep.residual_history = e.history;
    rep.final_residual = e.history.empty() ? std::nan("") : e.history.back();
    rep.converged = false;
    outs.write_json(a.out + "_report.json", io::json_report(rep));
    outs.manifest(a.out + ".manifest.json", "solve", echo, timer.seconds());
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  }
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  std::string suite, fixture, family, input, a2, out;
  double C = 5.0, a = 0.01, r0 = 1.0, eps = 0.2, c0 = 0.15, eps_amp = 0.02;
  std::string mode = "extrinsic";
  double multiple = 1.0;
  int nr = 0, nphi = 0, count = 6, center_index = 0;
  bool allow_annulus = false;
  double delta = 1.0, probe_step = 0.1, probe_radius = 0.045, exclusion = 0.05;
  double jitter = 0.0;
  std::uint64_t seed = 0;
};

DiskSample load_or_build_disk(const VerifyArgs& a) {
  if (!a.input.empty()) {
    if (a.a2.empty()) throw InvalidInputError("mesh input needs --a2 next to --input");
    DiskSample d = io::disk_from_obj(io::read_file(a.input), io::read_file(a.a2),
                                     a.center_index, Vec3::Zero(), a.r0);
    check_mesh(d, false);
    return d;
  }
  if (a.fixture == "helicoid")
    return helicoid_disk(a.a, a.r0, a.nr > 0 ? a.nr : 200, a.nphi > 0 ? a.nphi : 64);
  if (a.fixture == "plane")
    return plane_disk(a.r0, a.nr > 0 ? a.nr : 64, a.nphi > 0 ? a.nphi : 64);
  if (a.fixture == "capped-graph")
    return capped_graph_disk(a.r0, a.c0, a.eps_amp, a.nr > 0 ? a.nr : 64,
                             a.nphi > 0 ? a.nphi : 128);
  if (a.fixture == "catenoid-band")
    return catenoid_band(a.a, 2.0 * a.r0, a.nr > 0 ? a.nr : 128, a.nphi > 0 ? a.nphi : 256);
  throw InvalidInputError("unknown fixture: " + a.fixture);
}

int verify_blowup(const VerifyArgs& a, io::OutputSet& outs, ordered_json& echo) {
  DiskSample d = load_or_build_disk(a);
  BallMode mode;
  if (a.mode == "extrinsic")
    mode = BallMode::Extrinsic;
  else if (a.mode == "intrinsic")
    mode = BallMode::Intrinsic;
  else
    throw InvalidInputError("mode must be extrinsic or intrinsic");
  echo["C"] = a.C;
  echo["mode"] = a.mode;
  echo["multiple"] = a.multiple;

  auto [pair, rep] = find_blowup_pair(d, a.C, mode, a.multiple);
  outs.write_json(a.out + "_pair.json", io::json_report(rep));
  std::cout << "pair: y = " << pair.y_index << ", s = " << pair.s << "\n";
  std::cout << "margins: sup_bound = " << rep.margins.sup_bound
            << ", half_distance = " << rep.margins.half_distance
            << ", center_F = " << rep.margins.center_F << "\n";
  for (const auto& w : rep.warnings) std::cout << "warning: " << w << "\n";

  if (a.fixture == "helicoid") {
    // the surrounding multi-valued graph of the fixture starts at radius s
    double aa = a.a;
    MultiGraph g = make_multigraph(pair.s, 10.0 * pair.s, 2, 64, 256,
                                   [aa](double, double theta) { return aa * theta; });
    InitialSeparation sep = initial_separation_check(d, pair, g);
    outs.write_json(a.out + "_separation.json", io::json_report(sep));
    std::cout << "initial separation / s in [" << sep.min_ratio << ", " << sep.max_ratio
              << "]\n";
  }
  return rep.margins.sup_bound >= 0.0 && rep.margins.half_distance >= 0.0 &&
                 rep.margins.center_F >= 0.0
             ? 0
             : 1;
}

int verify_one_sided(const VerifyArgs& a, io::OutputSet& outs, ordered_json& echo) {
  DiskSample d = load_or_build_disk(a);
  echo["r0"] = a.r0;
  echo["eps"] = a.eps;
  echo["allow_annulus"] = a.allow_annulus;
  OneSidedReport rep = one_sided_check(d, a.r0, a.eps, a.allow_annulus);
  outs.write_json(a.out + "_onesided.json", io::json_report(rep));
  for (const auto& c : rep.components)
    std::cout << "component " << c.id << ": size " << c.size << ", sup |A|^2 r0^2 = "
              << c.sup_a2_r02 << (c.touches_inner ? " (reaches inner ball)" : "")
              << (c.graph_ok ? ", graph" : ", not a graph") << "\n";
  std::cout << (rep.pass ? "one-sided check passed\n" : "one-sided check FAILED\n");
  return rep.pass ? 0 : 1;
}

int verify_structure(const VerifyArgs& a, io::OutputSet& outs, ordered_json& echo) {
  if (a.family != "rescaled-helicoid")
    throw InvalidInputError("unknown structure family: " + a.family);
  if (a.count < 2 || a.count > 10) throw InvalidInputError("count must be in [2, 10]");
  echo["family"] = a.family;
  echo["count"] = a.count;
  echo["delta"] = a.delta;
  echo["probe_step"] = a.probe_step;
  echo["probe_radius"] = a.probe_radius;
  echo["exclusion"] = a.exclusion;
  echo["seed"] = a.seed;
  echo["jitter"] = a.jitter;

  SurfaceSequence seq;
  std::vector<double> thresholds;
  for (int j = 1; j <= a.count; ++j) {
    double aj = std::pow(2.0, -j), rj = 1.0 + 0.1 * j;
    int nr = std::max(96, static_cast<int>(std::ceil(50.0 * rj)));
    int nphi = std::max(64, round_up4(2.0 * M_PI * (rj / aj) / 0.12));
    seq.disks.push_back(helicoid_disk(aj, rj, nr, nphi));
    seq.scales.push_back(aj);
    seq.radii.push_back(rj);
    thresholds.push_back(std::pow(4.0, j - 1));
  }

  std::vector<Vec3> probes = probe_lattice({-0.3, -0.3, -0.5}, {0.3, 0.3, 0.5}, a.probe_step);
  if (a.jitter > 0.0) {
    std::mt19937_64 rng(a.seed);
    std::uniform_real_distribution<double> u(-a.jitter, a.jitter);
    for (auto& p : probes) p += Vec3(u(rng), u(rng), u(rng));
  }

  bool ok = true;
  SingularSet s = blowup_set(seq, probes, a.probe_radius, thresholds, 0);
  outs.write_json(a.out + "_singular.json", io::json_report(s));
  outs.write(a.out + "_singular.csv", io::points_csv(s.positions()));
  double worst_h = 0.0;
  for (const auto& q : s.points) worst_h = std::max(worst_h, std::hypot(q.p[0], q.p[1]));
  bool axis_ok = !s.points.empty() && worst_h <= a.probe_step;
  std::cout << "singular set: " << s.points.size() << " points, max horizontal offset "
            << worst_h << (axis_ok ? " (axis recovered)" : " (NOT the axis)") << "\n";
  ok = ok && axis_ok;

  double eps = 2.0 * a.probe_step;
  ConeReport cone = cone_property_check(s.positions(), a.delta, eps, eps * eps);
  outs.write_json(a.out + "_cone.json", io::json_report(cone));
  std::cout << "cone property: " << (cone.pass ? "pass" : "FAIL") << ", min margin "
            << cone.min_margin << "\n";
  ok = ok && cone.pass;

  LipschitzCurve curve =
      lipschitz_parameterize(s.positions(), 0.5 * a.probe_step, 2.0 * a.probe_step);
  outs.write_json(a.out + "_curve.json", io::json_report(curve));
  double dev = 0.0;
  for (const auto& c : curve.centers) dev = std::max(dev, std::hypot(c[0], c[1]));
  std::cout << "singular curve: " << curve.centers.size() << " levels, horizontal deviation "
            << dev << ", lipschitz " << curve.lipschitz << "\n";
  ok = ok && dev <= a.probe_step;

  ordered_json censuses = ordered_json::array();
  for (int k = 0; k < a.count; ++k) {
    TwoGraphCensus census =
        two_graph_decomposition(seq.disks[k], s.positions(), a.delta, a.exclusion);
    censuses.push_back(io::json_report(census));
    bool two = census.components == 2 && census.all_multigraph;
    std::cout << "decomposition j=" << k + 1 << ": " << census.components
              << " components" << (two ? "" : " (expected 2 multi-valued graphs)") << "\n";
    ok = ok && two;
  }
  outs.write(a.out + "_census.json", censuses.dump(2) + "\n");

  AnnularBox box{0.5, 1.0, 0.5, 0.3};
  FoliationReport fol = foliation_convergence(seq, box);
  outs.write_json(a.out + "_foliation.json", io::json_report(fol));
  bool fol_ok = fol.distances_decreasing;
  for (int k = 0; k < a.count; ++k)
    fol_ok = fol_ok && fol.entries[k].leaf_distance <= M_PI * seq.scales[k];
  std::cout << "foliation: leaf distances"
            << (fol.distances_decreasing ? " strictly decreasing" : " NOT decreasing")
            << ", tilts" << (fol.tilts_decreasing ? " decreasing" : " NOT decreasing") << "\n";
  ok = ok && fol_ok && fol.tilts_decreasing;

  std::cout << (ok ? "structure suite passed\n" : "structure suite FAILED\n");
  return ok ? 0 : 1;
}

int verify_separation(const VerifyArgs& a, io::OutputSet& outs, ordered_json& echo) {
  int nr = 96, nt = 0;
  echo["family"] = a.family;
  if (a.family == "helicoid-sheet") {
    MultiGraph g = helicoid_sheet(1, 1.0, 8.0, 4, nr, 4 * 64);
    SeparationProfile prof = separation(g);
    double dev = 0.0;
    for (double w : prof.w) dev = std::max(dev, std::abs(w - 2.0 * M_PI));
    Embeddedness emb = is_embedded(g);
    outs.write(a.out + "_w.csv", io::separation_csv(prof));
    ordered_json rep{{"max_dev_from_2pi", dev},
                     {"embedded", emb.embedded},
                     {"handedness", handedness(g) == Handedness::Right ? "right" : "left"}};
    outs.write_json(a.out + "_separation.json", rep);
    std::cout << "separation within " << dev << " of 2*pi, "
              << (emb.embedded ? "embedded" : "NOT embedded") << "\n";
    return dev <= 1e-13 && emb.embedded ? 0 : 1;
  }
  if (a.family == "nonproper") {
    nt = 8 * 48;
    MultiGraph g = nonproper_graph(std::exp(10.0), std::exp(40.0), 8, nr, nt);
    double max_u = 0.0;
    for (double u : g.u) max_u = std::max(max_u, std::abs(u));
    SeparationProfile prof = separation(g);
    FitReport sub = fit_sublinear_exponent(prof, 1.0);
    FitReport dec = fit_log_decay(prof, 1.0);
    outs.write(a.out + "_w.csv", io::separation_csv(prof));
    std::string fits = "rho0,alpha_hat,c_hat,residual,kind\n";
    for (const FitReport* f : {&sub, &dec}) {
      fits += io::format_double(f->rho0);
      fits += ',';
      fits += io::format_double(f->alpha_hat);
      fits += ',';
      fits += io::format_double(f->c_hat);
      fits += ',';
      fits += io::format_double(f->residual);
      fits += ',';
      fits += f->kind;
      fits += '\n';
    }
    outs.write(a.out + "_fits.csv", fits);
    ordered_json rep{{"max_abs_u", max_u},
                     {"slab_ok", max_u < M_PI / 2.0},
                     {"sublinear", io::json_report(sub)},
                     {"log_decay", io::json_report(dec)}};
    outs.write_json(a.out + "_separation.json", rep);
    std::cout << "max |u| = " << max_u << " (slab bound pi/2), log-decay constant "
              << dec.c_hat << "\n";
    return max_u < M_PI / 2.0 ? 0 : 1;
  }
  throw InvalidInputError("unknown separation family: " + a.family);
}

int cmd_verify(const VerifyArgs& a) {
  Timer timer;
  io::OutputSet outs;
  ordered_json echo{{"suite", a.suite}, {"out", a.out}};
  if (!a.fixture.empty()) echo["fixture"] = a.fixture;
  if (!a.input.empty()) echo["input"] = a.input;

  int rc;
  if (a.suite == "blowup")
    rc = verify_blowup(a, outs, echo);
  else if (a.suite == "one-sided")
    rc = verify_one_sided(a, outs, echo);
  else if (a.suite == "structure")
    rc = verify_structure(a, outs, echo);
  else if (a.suite == "separation")
    rc = verify_separation(a, outs, echo);
  else
    throw InvalidInputError("unknown suite: " + a.suite);
  outs.manifest(a.out + ".manifest.json", "verify", echo, timer.seconds());
  return rc;
}

// ------------------------------------------------------------------ export

int cmd_export(const std::string& solution, const std::string& out) {
  Timer timer;
  io::OutputSet outs;
  MultiGraph g = io::multigraph_from_csv(io::read_file(solution));
  outs.write(out + ".obj", io::obj_from_multigraph(g));
  ordered_json echo{{"solution", solution}, {"out", out}};
  outs.manifest(out + ".manifest.json", "export", echo, timer.seconds());
  std::cout << "wrote " << out << ".obj\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Defaults cfg;
  try {
    for (int i = 1; i + 1 < argc; ++i)
      if (std::string(argv[i]) == "--config") cfg.load(argv[i + 1]);
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 64;
  }

  CLI::App app{"numerical laboratory for embedded minimal disks"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "flat JSON file with flag defaults");

  GenerateArgs ga;
  ga.surface = cfg.get<std::string>("surface", "helicoid");
  ga.s_range = cfg.get<std::string>("s", "-1:1");
  ga.t_range = cfg.get<std::string>("t", "-3.141592653589793:3.141592653589793");
  ga.grid = cfg.get<std::string>("grid", "");
  ga.out = cfg.get<std::string>("out", "out");
  ga.scale = cfg.get<double>("scale", 1.0);
  ga.pitch = cfg.get<double>("pitch", 1.0);
  ga.coef = cfg.get<double>("coef", 1.0);
  ga.rin = cfg.get<double>("rin", 1.0);
  ga.rout = cfg.get<double>("rout", 8.0);
  ga.sheets = cfg.get<int>("sheets", 2);
  ga.which = cfg.get<int>("which", 1);
  auto* gen = app.add_subcommand("generate", "sample a canonical surface to OBJ + CSV");
  gen->add_option("--surface", ga.surface,
                  "helicoid|catenoid|ruled|graph|helicoid-sheet|nonproper");
  gen->add_option("--s", ga.s_range, "parameter range lo:hi");
  gen->add_option("--t", ga.t_range, "parameter range lo:hi");
  gen->add_option("--grid", ga.grid, "resolution NxM");
  gen->add_option("--scale", ga.scale, "homothety factor");
  gen->add_option("--pitch", ga.pitch, "ruled surface pitch");
  gen->add_option("--coef", ga.coef, "graph height coefficient");
  gen->add_option("--rin", ga.rin, "inner radius");
  gen->add_option("--rout", ga.rout, "outer radius");
  gen->add_option("--sheets", ga.sheets, "number of turns of the cover");
  gen->add_option("--which", ga.which, "staircase half: 1 or 2");
  gen->add_option("--out", ga.out, "output prefix");

  SolveArgs sa;
  sa.problem = cfg.get<std::string>("problem", "");
  sa.out = cfg.get<std::string>("out", "out");
  sa.family = cfg.get<std::string>("family", "arccosh");
  sa.resolutions = cfg.get<std::string>("resolutions", "64,128,256");
  sa.rin = cfg.get<double>("rin", 1.5);
  sa.rout = cfg.get<double>("rout", 4.0);
  sa.sheets = cfg.get<int>("sheets", 1);
  auto* sol = app.add_subcommand("solve", "solve the vertical-graph minimal surface equation");
  sol->add_option("--problem", sa.problem, "problem JSON (domain, boundary, config)");
  sol->add_flag("--convergence", sa.convergence, "run an exact-solution recovery study");
  sol->add_option("--family", sa.family, "const|theta|arccosh");
  sol->add_option("--resolutions", sa.resolutions, "comma list of grid sizes");
  sol->add_option("--rin", sa.rin, "inner radius for --convergence");
  sol->add_option("--rout", sa.rout, "outer radius for --convergence");
  sol->add_option("--sheets", sa.sheets, "cover turns for --convergence");
  sol->add_option("--out", sa.out, "output prefix");

  VerifyArgs va;
  va.suite = cfg.get<std::string>("suite", "");
  va.fixture = cfg.get<std::string>("fixture", "");
  va.family = cfg.get<std::string>("family", "rescaled-helicoid");
  va.input = cfg.get<std::string>("input", "");
  va.a2 = cfg.get<std::string>("a2", "");
  va.out = cfg.get<std::string>("out", "out");
  va.C = cfg.get<double>("C", 5.0);
  va.a = cfg.get<double>("a", 0.01);
  va.r0 = cfg.get<double>("r0", 1.0);
  va.eps = cfg.get<double>("eps", 0.2);
  va.c0 = cfg.get<double>("c0", 0.15);
  va.eps_amp = cfg.get<double>("eps_amp", 0.02);
  va.mode = cfg.get<std::string>("mode", "extrinsic");
  va.multiple = cfg.get<double>("multiple", 1.0);
  va.nr = cfg.get<int>("nr", 0);
  va.nphi = cfg.get<int>("nphi", 0);
  va.count = cfg.get<int>("count", 6);
  va.center_index = cfg.get<int>("center_index", 0);
  va.allow_annulus = cfg.get<bool>("allow_annulus", false);
  va.delta = cfg.get<double>("delta", 1.0);
  va.probe_step = cfg.get<double>("probe_step", 0.1);
  va.probe_radius = cfg.get<double>("probe_radius", 0.045);
  va.exclusion = cfg.get<double>("exclusion", 0.05);
  va.jitter = cfg.get<double>("jitter", 0.0);
  va.seed = cfg.get<std::uint64_t>("seed", 0);
  auto* ver = app.add_subcommand("verify", "run a verification suite and write reports");
  ver->add_option("--suite", va.suite, "blowup|one-sided|structure|separation")->required();
  ver->add_option("--fixture", va.fixture, "helicoid|plane|capped-graph|catenoid-band");
  ver->add_option("--family", va.family, "rescaled-helicoid | helicoid-sheet | nonproper");
  ver->add_option("--input", va.input, "mesh OBJ path");
  ver->add_option("--a2", va.a2, "per-vertex |A|^2 CSV next to --input");
  ver->add_option("--C", va.C, "blow-up constant");
  ver->add_option("--a", va.a, "surface scale");
  ver->add_option("--r0", va.r0, "ball radius");
  ver->add_option("--eps", va.eps, "inner-ball fraction (one-sided)");
  ver->add_option("--c0", va.c0, "cap height (capped-graph fixture)");
  ver->add_option("--eps-amp", va.eps_amp, "perturbation amplitude (capped-graph fixture)");
  ver->add_option("--mode", va.mode, "extrinsic|intrinsic");
  ver->add_option("--multiple", va.multiple, "ball multiple m");
  ver->add_option("--nr", va.nr, "mesh radial resolution");
  ver->add_option("--nphi", va.nphi, "mesh angular resolution");
  ver->add_option("--count", va.count, "sequence length (structure)");
  ver->add_option("--center-index", va.center_index, "center vertex of --input");
  ver->add_flag("--allow-annulus", va.allow_annulus, "run one-sided despite non-disk topology");
  ver->add_option("--delta", va.delta, "cone slope");
  ver->add_option("--probe-step", va.probe_step, "probe lattice step");
  ver->add_option("--probe-radius", va.probe_radius, "witness ball radius");
  ver->add_option("--exclusion", va.exclusion, "decomposition exclusion-ball radius");
  ver->add_option("--jitter", va.jitter, "probe jitter amplitude (0 = none)");
  ver->add_option("--seed", va.seed, "jitter seed");
  ver->add_option("--out", va.out, "output prefix");

  std::string ex_solution = cfg.get<std::string>("solution", "");
  std::string ex_out = cfg.get<std::string>("out", "out");
  auto* exp = app.add_subcommand("export", "embed a solution CSV as an OBJ mesh");
  exp->add_option("--solution", ex_solution, "solution CSV (rho,theta,u)")->required();
  exp->add_option("--out", ex_out, "output prefix");

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return cmd_generate(ga);
    if (sol->parsed()) return cmd_solve(sa);
    if (ver->parsed()) return cmd_verify(va);
    if (exp->parsed()) return cmd_export(ex_solution, ex_out);
    return 64;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis violation [" << e.code << "]: " << e.what() << "\n";
    return 65;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 64;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 64;
  }
}
