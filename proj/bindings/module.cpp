#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mindisk/blowup.hpp"
#include "mindisk/disk.hpp"
#include "mindisk/io.hpp"
#include "mindisk/mse.hpp"
#include "mindisk/multigraph.hpp"
#include "mindisk/structure.hpp"
#include "mindisk/surface.hpp"

namespace py = pybind11;
using namespace mindisk;

namespace {

py::array_t<double> column(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<double> point_array(const std::vector<Vec3>& v) {
  py::array_t<double> out({static_cast<py::ssize_t>(v.size()), static_cast<py::ssize_t>(3)});
  auto r = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < r.shape(0); ++i)
    for (py::ssize_t j = 0; j < 3; ++j) r(i, j) = v[i][j];
  return out;
}

py::array_t<int> face_array(const std::vector<std::array<int, 3>>& t) {
  py::array_t<int> out({static_cast<py::ssize_t>(t.size()), static_cast<py::ssize_t>(3)});
  auto r = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < r.shape(0); ++i)
    for (py::ssize_t j = 0; j < 3; ++j) r(i, j) = t[i][j];
  return out;
}

PyObject* hyp_type = nullptr;
PyObject* num_type = nullptr;
PyObject* io_type = nullptr;

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "embedded minimal disks: surfaces, multi-valued graphs, the annular "
            "minimal-surface equation, blow-up pairs, and structure checks";
  m.attr("__version__") = "0.1.0";

  // library errors surface as python exceptions; hypothesis and numeric
  // failures keep their structured payloads as attributes
  hyp_type = PyErr_NewException("mindisk._core.HypothesisViolation", PyExc_RuntimeError, nullptr);
  num_type = PyErr_NewException("mindisk._core.NumericFailure", PyExc_RuntimeError, nullptr);
  io_type = PyErr_NewException("mindisk._core.IoFailure", PyExc_OSError, nullptr);
  m.attr("HypothesisViolation") = py::reinterpret_borrow<py::object>(hyp_type);
  m.attr("NumericFailure") = py::reinterpret_borrow<py::object>(num_type);
  m.attr("IoFailure") = py::reinterpret_borrow<py::object>(io_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const HypothesisError& e) {
      py::object inst = py::reinterpret_borrow<py::object>(hyp_type)(e.what());
      inst.attr("code") = py::cast(e.code);
      PyErr_SetObject(hyp_type, inst.ptr());
    } catch (const NumericError& e) {
      py::object inst = py::reinterpret_borrow<py::object>(num_type)(e.what());
      inst.attr("iterations") = py::cast(e.iterations);
      inst.attr("history") = py::cast(e.history);
      PyErr_SetObject(num_type, inst.ptr());
    } catch (const IoError& e) {
      PyErr_SetString(io_type, e.what());
    }
  });

  py::enum_<DerivMode>(m, "DerivMode")
      .value("analytic", DerivMode::Analytic)
      .value("central_difference", DerivMode::CentralDifference);
  py::enum_<BallMode>(m, "BallMode")
      .value("extrinsic", BallMode::Extrinsic)
      .value("intrinsic", BallMode::Intrinsic);
  py::enum_<Handedness>(m, "Handedness")
      .value("left", Handedness::Left)
      .value("right", Handedness::Right);

  py::class_<GridAxis>(m, "GridAxis")
      .def(py::init([](double lo, double hi, int n) { return GridAxis{lo, hi, n}; }),
           py::arg("lo"), py::arg("hi"), py::arg("n"))
      .def_readonly("lo", &GridAxis::lo)
      .def_readonly("hi", &GridAxis::hi)
      .def_readonly("n", &GridAxis::n)
      .def("h", &GridAxis::h)
      .def("at", &GridAxis::at, py::arg("i"));

  py::class_<Grid2>(m, "Grid2")
      .def(py::init([](const GridAxis& s, const GridAxis& t) { return Grid2{s, t}; }),
           py::arg("s"), py::arg("t"))
      .def_readonly("s", &Grid2::s)
      .def_readonly("t", &Grid2::t)
      .def("rows", &Grid2::rows)
      .def("cols", &Grid2::cols)
      .def("idx", &Grid2::idx, py::arg("i"), py::arg("j"))
      .def("on_boundary", &Grid2::on_boundary, py::arg("i"), py::arg("j"))
      .def("validate", &Grid2::validate);

  py::class_<ParamPatch>(m, "ParamPatch")
      .def_readonly("grid", &ParamPatch::grid)
      .def_readonly("deriv_mode", &ParamPatch::deriv_mode)
      .def_property_readonly("positions", [](const ParamPatch& p) { return point_array(p.pos); })
      .def("has_first_jets", &ParamPatch::has_first_jets)
      .def("has_second_jets", &ParamPatch::has_second_jets);

  py::class_<GeomData>(m, "GeomData")
      .def_readonly("grid", &GeomData::grid)
      .def_property_readonly("E", [](const GeomData& g) { return column(g.E); })
      .def_property_readonly("F", [](const GeomData& g) { return column(g.F); })
      .def_property_readonly("G", [](const GeomData& g) { return column(g.G); })
      .def_property_readonly("e", [](const GeomData& g) { return column(g.e); })
      .def_property_readonly("f", [](const GeomData& g) { return column(g.f); })
      .def_property_readonly("g", [](const GeomData& g) { return column(g.g); })
      .def_property_readonly("normals", [](const GeomData& g) { return point_array(g.normal); })
      .def_property_readonly("H", [](const GeomData& g) { return column(g.H); })
      .def_property_readonly("K", [](const GeomData& g) { return column(g.K); })
      .def_property_readonly("A2", [](const GeomData& g) { return column(g.A2); })
      .def_property_readonly("sqrt_g", [](const GeomData& g) { return column(g.sqrt_g); });

  py::class_<VariationField>(m, "VariationField")
      .def(py::init([](std::vector<double> phi) {
             VariationField v;
             v.phi = std::move(phi);
             return v;
           }),
           py::arg("phi"))
      .def_property_readonly("phi", [](const VariationField& v) { return column(v.phi); });

  py::class_<FirstVariation>(m, "FirstVariation")
      .def_readonly("numeric_derivative", &FirstVariation::numeric_derivative)
      .def_readonly("integral_phi_H", &FirstVariation::integral_phi_H);

  py::class_<MultiGraph>(m, "MultiGraph")
      .def_readonly("r_in", &MultiGraph::r_in)
      .def_readonly("r_out", &MultiGraph::r_out)
      .def_readonly("sheets", &MultiGraph::sheets)
      .def_readonly("grid", &MultiGraph::grid)
      .def_property_readonly("u", [](const MultiGraph& g) { return column(g.u); })
      .def("rho", &MultiGraph::rho, py::arg("i"))
      .def("theta", &MultiGraph::theta, py::arg("j"))
      .def("nodes_per_turn", &MultiGraph::nodes_per_turn)
      .def("validate", &MultiGraph::validate);

  py::class_<SeparationProfile>(m, "SeparationProfile")
      .def_readonly("grid", &SeparationProfile::grid)
      .def_property_readonly("w", [](const SeparationProfile& p) { return column(p.w); })
      .def_readonly("min_abs_w", &SeparationProfile::min_abs_w)
      .def_readonly("sign", &SeparationProfile::sign)
      .def("rho", &SeparationProfile::rho, py::arg("i"))
      .def("theta", &SeparationProfile::theta, py::arg("j"));

  py::class_<Embeddedness>(m, "Embeddedness")
      .def_readonly("embedded", &Embeddedness::embedded)
      .def_readonly("min_abs_w", &Embeddedness::min_abs_w);

  py::class_<FitReport>(m, "FitReport")
      .def_readonly("rho0", &FitReport::rho0)
      .def_readonly("alpha_hat", &FitReport::alpha_hat)
      .def_readonly("c_hat", &FitReport::c_hat)
      .def_readonly("residual", &FitReport::residual)
      .def_readonly("envelope_ok", &FitReport::envelope_ok)
      .def_readonly("logarithmic", &FitReport::logarithmic)
      .def_readonly("kind", &FitReport::kind);

  py::class_<AnnularDomain>(m, "AnnularDomain")
      .def(py::init([](double r_in, double r_out, int sheets, int n_sigma, int n_theta) {
             return AnnularDomain{r_in, r_out, sheets, n_sigma, n_theta};
           }),
           py::arg("r_in"), py::arg("r_out"), py::arg("sheets"), py::arg("n_sigma"),
           py::arg("n_theta"))
      .def_readonly("r_in", &AnnularDomain::r_in)
      .def_readonly("r_out", &AnnularDomain::r_out)
      .def_readonly("sheets", &AnnularDomain::sheets)
      .def_readonly("n_sigma", &AnnularDomain::n_sigma)
      .def_readonly("n_theta", &AnnularDomain::n_theta)
      .def("grid", &AnnularDomain::grid)
      .def("validate", &AnnularDomain::validate);

  py::class_<BoundaryData>(m, "BoundaryData")
      .def(py::init<>())
      .def_readwrite("inner", &BoundaryData::inner)
      .def_readwrite("outer", &BoundaryData::outer)
      .def_readwrite("theta_min", &BoundaryData::theta_min)
      .def_readwrite("theta_max", &BoundaryData::theta_max)
      .def("validate", &BoundaryData::validate, py::arg("domain"));

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init([](double tol_residual, int max_newton_iters, double backtrack_factor,
                       double min_step, double linear_tol) {
             return SolverConfig{tol_residual, max_newton_iters, backtrack_factor, min_step,
                                 linear_tol};
           }),
           py::arg("tol_residual") = 1e-9, py::arg("max_newton_iters") = 50,
           py::arg("backtrack_factor") = 0.5, py::arg("min_step") = 1.0 / (1 << 20),
           py::arg("linear_tol") = 1e-10)
      .def_readwrite("tol_residual", &SolverConfig::tol_residual)
      .def_readwrite("max_newton_iters", &SolverConfig::max_newton_iters)
      .def_readwrite("backtrack_factor", &SolverConfig::backtrack_factor)
      .def_readwrite("min_step", &SolverConfig::min_step)
      .def_readwrite("linear_tol", &SolverConfig::linear_tol)
      .def("validate", &SolverConfig::validate);

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("iterations", &SolveReport::iterations)
      .def_property_readonly("residual_history",
                             [](const SolveReport& r) { return column(r.residual_history); })
      .def_readonly("final_residual", &SolveReport::final_residual)
      .def_readonly("converged", &SolveReport::converged);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("graph", &SolveResult::graph)
      .def_readonly("report", &SolveResult::report);

  py::class_<ResidualField>(m, "ResidualField")
      .def_readonly("grid", &ResidualField::grid)
      .def_property_readonly("r", [](const ResidualField& f) { return column(f.r); })
      .def_readonly("max_abs", &ResidualField::max_abs);

  py::class_<OrderReport>(m, "OrderReport")
      .def_readonly("resolutions", &OrderReport::resolutions)
      .def_property_readonly("errors", [](const OrderReport& r) { return column(r.errors); })
      .def_readonly("order", &OrderReport::order)
      .def_readonly("exact", &OrderReport::exact)
      .def_readonly("monotone", &OrderReport::monotone);

  py::class_<DiskSample>(m, "DiskSample")
      .def(py::init([](py::array_t<double, py::array::c_style | py::array::forcecast> pos,
                       py::array_t<int, py::array::c_style | py::array::forcecast> tris,
                       std::vector<double> a2, int center_index, const Vec3& ball_center,
                       double r0) {
             if (pos.ndim() != 2 || pos.shape(1) != 3)
               throw InvalidInputError("disk: positions must be (n, 3)");
             if (tris.ndim() != 2 || tris.shape(1) != 3)
               throw InvalidInputError("disk: triangles must be (m, 3)");
             DiskSample d;
             auto p = pos.unchecked<2>();
             d.pos.resize(static_cast<std::size_t>(p.shape(0)));
             for (py::ssize_t i = 0; i < p.shape(0); ++i)
               d.pos[static_cast<std::size_t>(i)] = Vec3(p(i, 0), p(i, 1), p(i, 2));
             auto t = tris.unchecked<2>();
             d.tris.resize(static_cast<std::size_t>(t.shape(0)));
             for (py::ssize_t i = 0; i < t.shape(0); ++i)
               d.tris[static_cast<std::size_t>(i)] = {t(i, 0), t(i, 1), t(i, 2)};
             d.a2 = std::move(a2);
             d.center_index = center_index;
             d.ball_center = ball_center;
             d.r0 = r0;
             return d;
           }),
           py::arg("positions"), py::arg("triangles"), py::arg("a2"), py::arg("center_index") = 0,
           py::arg("ball_center") = Vec3(Vec3::Zero()), py::arg("r0") = 1.0)
      .def_property_readonly("positions", [](const DiskSample& d) { return point_array(d.pos); })
      .def_property_readonly("triangles", [](const DiskSample& d) { return face_array(d.tris); })
      .def_property_readonly("a2", [](const DiskSample& d) { return column(d.a2); })
      .def_readonly("center_index", &DiskSample::center_index)
      .def_readonly("ball_center", &DiskSample::ball_center)
      .def_readonly("r0", &DiskSample::r0);

  py::class_<MeshChecks>(m, "MeshChecks")
      .def_readonly("vertices", &MeshChecks::vertices)
      .def_readonly("edges", &MeshChecks::edges)
      .def_readonly("triangles", &MeshChecks::triangles)
      .def_readonly("euler", &MeshChecks::euler)
      .def_readonly("components", &MeshChecks::components)
      .def_readonly("boundary_loops", &MeshChecks::boundary_loops)
      .def_readonly("max_radius_dev", &MeshChecks::max_radius_dev)
      .def_readonly("max_inside_excess", &MeshChecks::max_inside_excess)
      .def_readonly("is_disk", &MeshChecks::is_disk);

  py::class_<BlowUpPair>(m, "BlowUpPair")
      .def(py::init([](int y_index, double s, double C, BallMode mode, double multiple) {
             return BlowUpPair{y_index, s, C, mode, multiple};
           }),
           py::arg("y_index"), py::arg("s"), py::arg("C"),
           py::arg("ball_mode") = BallMode::Extrinsic, py::arg("ball_multiple") = 1.0)
      .def_readonly("y_index", &BlowUpPair::y_index)
      .def_readonly("s", &BlowUpPair::s)
      .def_readonly("C", &BlowUpPair::C)
      .def_readonly("ball_mode", &BlowUpPair::ball_mode)
      .def_readonly("ball_multiple", &BlowUpPair::ball_multiple);

  py::class_<PairMargins>(m, "PairMargins")
      .def_readonly("sup_bound", &PairMargins::sup_bound)
      .def_readonly("half_distance", &PairMargins::half_distance)
      .def_readonly("center_F", &PairMargins::center_F);

  py::class_<PairReport>(m, "PairReport")
      .def_readonly("pair", &PairReport::pair)
      .def_readonly("y_position", &PairReport::y_position)
      .def_readonly("F_center", &PairReport::F_center)
      .def_readonly("F_max", &PairReport::F_max)
      .def_readonly("F_boundary_max", &PairReport::F_boundary_max)
      .def_readonly("sup_a2_ball", &PairReport::sup_a2_ball)
      .def_readonly("margins", &PairReport::margins)
      .def_readonly("warnings", &PairReport::warnings);

  py::class_<InitialSeparation>(m, "InitialSeparation")
      .def_readonly("inner_radius", &InitialSeparation::inner_radius)
      .def_readonly("min_ratio", &InitialSeparation::min_ratio)
      .def_readonly("max_ratio", &InitialSeparation::max_ratio)
      .def_readonly("window_ok", &InitialSeparation::window_ok);

  py::class_<SurfaceSequence>(m, "SurfaceSequence")
      .def(py::init([](std::vector<DiskSample> disks, std::vector<double> scales,
                       std::vector<double> radii) {
             SurfaceSequence s;
             s.disks = std::move(disks);
             s.scales = std::move(scales);
             s.radii = std::move(radii);
             return s;
           }),
           py::arg("disks"), py::arg("scales"), py::arg("radii"))
      .def_readonly("disks", &SurfaceSequence::disks)
      .def_property_readonly("scales", [](const SurfaceSequence& s) { return column(s.scales); })
      .def_property_readonly("radii", [](const SurfaceSequence& s) { return column(s.radii); })
      .def("validate", &SurfaceSequence::validate);

  py::class_<SingularPoint>(m, "SingularPoint")
      .def_readonly("p", &SingularPoint::p)
      .def_property_readonly("witness", [](const SingularPoint& s) { return column(s.witness); });

  py::class_<SingularSet>(m, "SingularSet")
      .def_readonly("points", &SingularSet::points)
      .def_readonly("curvature_unbounded", &SingularSet::curvature_unbounded)
      .def_readonly("probe_radius", &SingularSet::probe_radius)
      .def_readonly("burn_in", &SingularSet::burn_in)
      .def("positions", [](const SingularSet& s) { return point_array(s.positions()); });

  py::class_<ConePairFailure>(m, "ConePairFailure")
      .def_readonly("z_index", &ConePairFailure::z_index)
      .def_readonly("p_index", &ConePairFailure::p_index)
      .def_readonly("margin", &ConePairFailure::margin);

  py::class_<ConeLevel>(m, "ConeLevel")
      .def_readonly("t", &ConeLevel::t)
      .def_readonly("above", &ConeLevel::above)
      .def_readonly("below", &ConeLevel::below)
      .def_readonly("exempt", &ConeLevel::exempt);

  py::class_<ConeReport>(m, "ConeReport")
      .def_readonly("delta", &ConeReport::delta)
      .def_readonly("eps", &ConeReport::eps)
      .def_readonly("slack", &ConeReport::slack)
      .def_readonly("min_margin", &ConeReport::min_margin)
      .def_readonly("failures", &ConeReport::failures)
      .def_readonly("levels", &ConeReport::levels)
      .def_readonly("lipschitz_estimate", &ConeReport::lipschitz_estimate)
      .def_readonly("cone_ok", &ConeReport::cone_ok)
      .def_readonly("accumulation_ok", &ConeReport::accumulation_ok)
      .def_readonly("passed", &ConeReport::pass);  // "pass" is a python keyword

  py::class_<LipschitzCurve>(m, "LipschitzCurve")
      .def_property_readonly("t", [](const LipschitzCurve& c) { return column(c.t); })
      .def_property_readonly("centers", [](const LipschitzCurve& c) { return point_array(c.centers); })
      .def_readonly("lipschitz", &LipschitzCurve::lipschitz)
      .def_readonly("max_cluster_diameter", &LipschitzCurve::max_cluster_diameter);

  py::class_<ComponentCensus>(m, "ComponentCensus")
      .def_readonly("id", &ComponentCensus::id)
      .def_readonly("size", &ComponentCensus::size)
      .def_readonly("sheet_count", &ComponentCensus::sheet_count)
      .def_readonly("graph_ok", &ComponentCensus::graph_ok)
      .def_readonly("mean_separation", &ComponentCensus::mean_separation)
      .def_readonly("max_sheet_spread", &ComponentCensus::max_sheet_spread)
      .def_readonly("min_gap", &ComponentCensus::min_gap);

  py::class_<TwoGraphCensus>(m, "TwoGraphCensus")
      .def_readonly("components", &TwoGraphCensus::components)
      .def_readonly("comps", &TwoGraphCensus::comps)
      .def_readonly("all_multigraph", &TwoGraphCensus::all_multigraph)
      .def_readonly("notes", &TwoGraphCensus::notes);

  py::class_<OneSidedComponent>(m, "OneSidedComponent")
      .def_readonly("id", &OneSidedComponent::id)
      .def_readonly("size", &OneSidedComponent::size)
      .def_readonly("touches_inner", &OneSidedComponent::touches_inner)
      .def_readonly("sup_a2_r02", &OneSidedComponent::sup_a2_r02)
      .def_readonly("curvature_ok", &OneSidedComponent::curvature_ok)
      .def_readonly("graph_ok", &OneSidedComponent::graph_ok);

  py::class_<OneSidedReport>(m, "OneSidedReport")
      .def_readonly("r0", &OneSidedReport::r0)
      .def_readonly("eps", &OneSidedReport::eps)
      .def_readonly("topology_overridden", &OneSidedReport::topology_overridden)
      .def_readonly("components", &OneSidedReport::components)
      .def_readonly("passed", &OneSidedReport::pass);

  py::class_<AnnularBox>(m, "AnnularBox")
      .def(py::init([](double rho_min, double rho_max, double z_abs, double tube_radius) {
             return AnnularBox{rho_min, rho_max, z_abs, tube_radius};
           }),
           py::arg("rho_min"), py::arg("rho_max"), py::arg("z_abs"), py::arg("tube_radius"))
      .def_readonly("rho_min", &AnnularBox::rho_min)
      .def_readonly("rho_max", &AnnularBox::rho_max)
      .def_readonly("z_abs", &AnnularBox::z_abs)
      .def_readonly("tube_radius", &AnnularBox::tube_radius);

  py::class_<FoliationEntry>(m, "FoliationEntry")
      .def_readonly("scale", &FoliationEntry::scale)
      .def_readonly("leaf_distance", &FoliationEntry::leaf_distance)
      .def_readonly("tilt", &FoliationEntry::tilt)
      .def_readonly("sheet_count", &FoliationEntry::sheet_count);

  py::class_<FoliationReport>(m, "FoliationReport")
      .def_readonly("entries", &FoliationReport::entries)
      .def_readonly("distances_decreasing", &FoliationReport::distances_decreasing)
      .def_readonly("tilts_decreasing", &FoliationReport::tilts_decreasing);

  // surfaces
  m.def("make_helicoid", &make_helicoid, py::arg("s0"), py::arg("s1"), py::arg("t0"),
        py::arg("t1"), py::arg("ns"), py::arg("nt"), py::arg("mode") = DerivMode::Analytic);
  m.def("make_catenoid", &make_catenoid, py::arg("s0"), py::arg("s1"), py::arg("t0"),
        py::arg("t1"), py::arg("ns"), py::arg("nt"), py::arg("mode") = DerivMode::Analytic);
  m.def("make_graph_patch", &make_graph_patch, py::arg("grid"), py::arg("u"));
  m.def("make_graph_patch_analytic", &make_graph_patch_analytic, py::arg("grid"),
        py::arg("u_jet"));
  m.def("rescale", &rescale, py::arg("patch"), py::arg("factor"));
  m.def("fundamental_forms", &fundamental_forms, py::arg("patch"));
  m.def("area", &area, py::arg("patch"));
  m.def("make_bump_variation", &make_bump_variation, py::arg("patch"), py::arg("cs"),
        py::arg("ct"), py::arg("ws"), py::arg("wt"));
  m.def("first_variation", &first_variation, py::arg("patch"), py::arg("phi"), py::arg("h_t"));
  m.def("jacobi_smallest_eigenvalues", &jacobi_smallest_eigenvalues, py::arg("patch"),
        py::arg("k"));

  // multi-valued graphs
  m.def("make_multigraph", &make_multigraph, py::arg("r_in"), py::arg("r_out"), py::arg("sheets"),
        py::arg("n_rho"), py::arg("n_theta"), py::arg("height"));
  m.def("helicoid_sheet", &helicoid_sheet, py::arg("which"), py::arg("r_in"), py::arg("r_out"),
        py::arg("sheets"), py::arg("n_rho"), py::arg("n_theta"));
  m.def("nonproper_graph", &nonproper_graph, py::arg("r_in"), py::arg("r_out"), py::arg("sheets"),
        py::arg("n_rho"), py::arg("n_theta"));
  m.def("separation", &separation, py::arg("graph"));
  m.def("is_embedded", &is_embedded, py::arg("graph"));
  m.def("handedness", &handedness, py::arg("graph"));
  m.def("fit_sublinear_exponent", &fit_sublinear_exponent, py::arg("profile"), py::arg("rho0"),
        py::arg("aggregate_max") = false);
  m.def("fit_log_decay", &fit_log_decay, py::arg("profile"), py::arg("rho0"),
        py::arg("aggregate_max") = false);
  m.def("embed_to_r3", &embed_to_r3, py::arg("graph"));

  // annular minimal-surface equation
  m.def("sample_boundary", &sample_boundary, py::arg("domain"), py::arg("height"));
  m.def("solve", &solve, py::arg("domain"), py::arg("boundary"),
        py::arg("config") = SolverConfig{});
  m.def("discrete_mse_residual", &discrete_mse_residual, py::arg("graph"));
  m.def("area_functional", &area_functional, py::arg("graph"));
  m.def("convergence_order", &convergence_order, py::arg("r_in"), py::arg("r_out"),
        py::arg("sheets"), py::arg("exact_height"), py::arg("resolutions"),
        py::arg("config") = SolverConfig{});

  // disk fixtures and blow-up pairs
  m.def("helicoid_disk", &helicoid_disk, py::arg("a"), py::arg("r0"), py::arg("n_r"),
        py::arg("n_phi"));
  m.def("plane_disk", &plane_disk, py::arg("r0"), py::arg("n_r"), py::arg("n_phi"));
  m.def("catenoid_band", &catenoid_band, py::arg("a"), py::arg("R"), py::arg("n_s"),
        py::arg("n_t"));
  m.def("capped_graph_disk", &capped_graph_disk, py::arg("r0"), py::arg("c0"), py::arg("eps"),
        py::arg("n_sigma"), py::arg("n_theta"));
  m.def("rescale_disk", &rescale_disk, py::arg("disk"), py::arg("factor"));
  m.def("check_mesh", &check_mesh, py::arg("disk"), py::arg("require_disk"));
  m.def("find_blowup_pair", &find_blowup_pair, py::arg("disk"), py::arg("C"),
        py::arg("mode") = BallMode::Extrinsic, py::arg("ball_multiple") = 1.0);
  m.def("verify_pair", &verify_pair, py::arg("disk"), py::arg("pair"));
  m.def("initial_separation_check", &initial_separation_check, py::arg("disk"), py::arg("pair"),
        py::arg("graph"), py::arg("window") = std::optional<std::pair<double, double>>{});

  // structure of degenerating sequences
  m.def("probe_lattice",
        [](const Vec3& lo, const Vec3& hi, double step) {
          return point_array(probe_lattice(lo, hi, step));
        },
        py::arg("lo"), py::arg("hi"), py::arg("step"));
  m.def("blowup_set", &blowup_set, py::arg("sequence"), py::arg("probes"), py::arg("r"),
        py::arg("thresholds"), py::arg("burn_in"));
  m.def("cone_membership", &cone_membership, py::arg("p"), py::arg("x"), py::arg("delta"));
  m.def("cone_property_check", &cone_property_check, py::arg("points"), py::arg("delta"),
        py::arg("eps"), py::arg("slack"));
  m.def("lipschitz_parameterize", &lipschitz_parameterize, py::arg("points"),
        py::arg("level_tol"), py::arg("max_diameter"));
  m.def("two_graph_decomposition", &two_graph_decomposition, py::arg("disk"), py::arg("curve"),
        py::arg("delta0"), py::arg("r_excl"), py::arg("theta_bins") = 16,
        py::arg("rho_ratio") = 1.3);
  m.def("one_sided_check", &one_sided_check, py::arg("disk"), py::arg("r0"), py::arg("eps"),
        py::arg("allow_non_disk") = false);
  m.def("foliation_convergence", &foliation_convergence, py::arg("sequence"), py::arg("box"));

  // text formats
  auto mio = m.def_submodule("io", "obj / csv writers and readers, json reports, checksums");
  mio.def("format_double", &io::format_double, py::arg("x"));
  mio.def("fnv1a64_hex", &io::fnv1a64_hex, py::arg("bytes"));
  mio.def("obj_from_patch", &io::obj_from_patch, py::arg("patch"));
  mio.def("obj_from_disk", &io::obj_from_disk, py::arg("disk"));
  mio.def("obj_from_multigraph", &io::obj_from_multigraph, py::arg("graph"));
  mio.def("a2_csv", &io::a2_csv, py::arg("disk"));
  mio.def("geometry_csv", &io::geometry_csv, py::arg("patch"), py::arg("geom"));
  mio.def("solution_csv", &io::solution_csv, py::arg("graph"));
  mio.def("separation_csv", &io::separation_csv, py::arg("profile"));
  mio.def("disk_from_obj", &io::disk_from_obj, py::arg("obj_text"), py::arg("a2_csv_text"),
          py::arg("center_index"), py::arg("ball_center"), py::arg("r0"));
  mio.def("multigraph_from_csv", &io::multigraph_from_csv, py::arg("text"));
  mio.def("report_json", [](const SolveReport& r) { return io::json_report(r).dump(2); });
  mio.def("report_json", [](const OrderReport& r) { return io::json_report(r).dump(2); });
  mio.def("report_json", [](const PairReport& r) { return io::json_report(r).dump(2); });
  mio.def("report_json", [](const InitialSeparation& r) { return io::json_report(r).dump(2); });
  mio.def("report_json", [](const FitReport& r) { return io::json_report(r).dump(2); });
  mio.def("report_json", [](const MeshChecks& r) { return io::json_report(r).dump(2); });
  mio.def("report_json", [](const SingularSet& r) { return io::json_report(r).dump(2); });
  mio.def("report_json", [](const ConeReport& r) { return io::json_report(r).dump(2); });
  mio.def("report_json", [](const LipschitzCurve& r) { return io::json_report(r).dump(2); });
  mio.def("report_json", [](const TwoGraphCensus& r) { return io::json_report(r).dump(2); });
  mio.def("report_json", [](const OneSidedReport& r) { return io::json_report(r).dump(2); });
  mio.def("report_json", [](const FoliationReport& r) { return io::json_report(r).dump(2); });
}
