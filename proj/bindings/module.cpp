#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weightlab/csv.hpp"
#include "weightlab/dualspace.hpp"
#include "weightlab/extrapolate.hpp"
#include "weightlab/intops.hpp"
#include "weightlab/kernels.hpp"
#include "weightlab/maximal.hpp"
#include "weightlab/sampling.hpp"
#include "weightlab/sbound.hpp"
#include "weightlab/suite.hpp"
#include "weightlab/weights.hpp"

namespace py = pybind11;
using namespace weightlab;

namespace {

sbound::Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r > 0 ? static_cast<int>(rows.front().size()) : 0;
    sbound::Matrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != c)
            throw std::invalid_argument("matrix rows must have equal length");
        for (int j = 0; j < c; ++j)
            m.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return m;
}

std::vector<std::vector<double>> matrix_rows(const sbound::Matrix& m) {
    std::vector<std::vector<double>> rows(static_cast<size_t>(m.rows));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) rows[static_cast<size_t>(i)].push_back(m.at(i, j));
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "finite-grid laboratory for weighted norm inequalities";
    m.attr("inf") = kInf;

    // ---- grid and function types --------------------------------------
    py::class_<Grid1D>(m, "Grid1D")
        .def(py::init<double, double, int>(), py::arg("origin"), py::arg("h"), py::arg("n"))
        .def_readonly("origin", &Grid1D::origin)
        .def_readonly("h", &Grid1D::h)
        .def_readonly("n", &Grid1D::n)
        .def("cell_center", &Grid1D::cell_center)
        .def("__repr__", [](const Grid1D& g) {
            return "Grid1D(origin=" + std::to_string(g.origin) + ", h=" + std::to_string(g.h) +
                   ", n=" + std::to_string(g.n) + ")";
        });

    py::class_<GridFunction>(m, "GridFunction")
        .def(py::init<Grid1D, std::vector<double>>(), py::arg("grid"), py::arg("values"))
        .def_readonly("grid", &GridFunction::grid)
        .def_readonly("values", &GridFunction::v);

    py::class_<Weight>(m, "Weight").def_readonly("fn", &Weight::fn);
    m.def("make_weight", &make_weight, py::arg("fn"),
          "wrap a strictly positive grid function as a weight");
    m.def("conjugate_exponent", &conjugate_exponent, py::arg("p"));

    py::class_<MeasuredAxis>(m, "MeasuredAxis")
        .def(py::init<std::vector<double>>(), py::arg("masses"))
        .def_static("counting", &MeasuredAxis::counting, py::arg("size"))
        .def_readonly("masses", &MeasuredAxis::masses)
        .def("size", &MeasuredAxis::size);

    py::class_<MixedSpace>(m, "MixedSpace")
        .def(py::init<std::vector<MeasuredAxis>, std::vector<double>>(), py::arg("axes"),
             py::arg("exponents"))
        .def_readonly("axes", &MixedSpace::axes)
        .def_readonly("exponents", &MixedSpace::q)
        .def("rank", &MixedSpace::rank)
        .def("dim", &MixedSpace::dim);

    py::class_<LatticeFunction>(m, "LatticeFunction")
        .def(py::init<Grid1D, MixedSpace, std::vector<double>>(), py::arg("grid"),
             py::arg("space"), py::arg("values"))
        .def_readonly("grid", &LatticeFunction::grid)
        .def_readonly("space", &LatticeFunction::space)
        .def_readonly("values", &LatticeFunction::v)
        .def("fiber_dim", &LatticeFunction::fiber_dim);

    // ---- weights -------------------------------------------------------
    py::class_<weights::ApReport>(m, "ApReport")
        .def_readonly("p", &weights::ApReport::p)
        .def_readonly("constant", &weights::ApReport::constant)
        .def_readonly("witness_begin", &weights::ApReport::witness_begin)
        .def_readonly("witness_end", &weights::ApReport::witness_end);
    m.def("ap_constant", &weights::ap_constant, py::arg("w"), py::arg("p"),
          "exact Muckenhoupt constant over cell-aligned intervals, with witness");
    m.def("dual_weight", &weights::dual_weight, py::arg("w"), py::arg("p"),
          "w^{-1/(p-1)}, the weight of the conjugate exponent");
    m.def("power_weight", &weights::power_weight, py::arg("a"), py::arg("grid"),
          "|x|^a sampled by cell averages");
    m.def("openness_exponent", &weights::openness_exponent, py::arg("w"), py::arg("p"),
          py::arg("budget"), "least p - eps keeping the constant within the budget factor");

    py::class_<weights::ConsistencyProfile>(m, "ConsistencyProfile")
        .def_readonly("x", &weights::ConsistencyProfile::x)
        .def_readonly("y", &weights::ConsistencyProfile::y)
        .def("eval", &weights::ConsistencyProfile::eval);

    // ---- maximal -------------------------------------------------------
    m.def("maximal_function", &maximal::maximal_function, py::arg("f"),
          "uncentered interval maximal function");
    py::class_<maximal::IntervalWitness>(m, "IntervalWitness")
        .def_readonly("begin", &maximal::IntervalWitness::begin)
        .def_readonly("end", &maximal::IntervalWitness::end)
        .def_readonly("average", &maximal::IntervalWitness::average);
    m.def("maximal_witness", &maximal::maximal_witness, py::arg("f"), py::arg("cell"));
    m.def("lattice_maximal", &maximal::lattice_maximal, py::arg("f"),
          "fiberwise maximal function on grid x space");
    py::class_<maximal::MaximalNormEstimate>(m, "MaximalNormEstimate")
        .def_readonly("p", &maximal::MaximalNormEstimate::p)
        .def_readonly("lower_bound", &maximal::MaximalNormEstimate::lower_bound)
        .def_readonly("witness", &maximal::MaximalNormEstimate::witness)
        .def_readonly("trials", &maximal::MaximalNormEstimate::trials);
    m.def("maximal_norm_lower", &maximal::maximal_norm_lower, py::arg("p"), py::arg("w"),
          py::arg("trials"), py::arg("seed"), "seeded lower estimate of ||M|| on L^p(w)");

    // ---- norms ----------------------------------------------------------
    m.def("weighted_lp_norm", &weighted_lp_norm, py::arg("f"), py::arg("p"), py::arg("w"));
    m.def(
        "mixed_norm",
        [](const std::vector<double>& v, const MixedSpace& space) {
            return mixed_norm_flat(std::span<const double>(v.data(), v.size()), space);
        },
        py::arg("values"), py::arg("space"), "iterated norm of a flat fiber vector");
    m.def("tuple_norm", &tuple_norm_flat, py::arg("tuple"), py::arg("s"), py::arg("space"),
          "|| (sum |f_n|^s)^{1/s} || over the space (s=inf takes the sup)");
    m.def("fiber_norms", &fiber_norms, py::arg("f"),
          "grid function of the fiberwise space norms");
    m.def("lattice_lp_norm", &lattice_lp_norm, py::arg("f"), py::arg("p"), py::arg("w"));

    // ---- kernels ---------------------------------------------------------
    py::class_<kernels::Kernel>(m, "Kernel")
        .def(py::init<int, double, std::vector<double>>(), py::arg("radius"), py::arg("h"),
             py::arg("values"))
        .def_readonly("radius", &kernels::Kernel::radius)
        .def_readonly("h", &kernels::Kernel::h)
        .def_readonly("values", &kernels::Kernel::v)
        .def("mass_l1", &kernels::Kernel::mass_l1);
    py::class_<kernels::CatalogParams>(m, "CatalogParams")
        .def(py::init([](double t, double lambda, int box_cells, std::optional<double> mass) {
                 return kernels::CatalogParams{t, lambda, box_cells, mass};
             }),
             py::arg("t") = 0.0, py::arg("lambda") = 0.0, py::arg("box_cells") = 0,
             py::arg("mass") = std::nullopt)
        .def_readwrite("t", &kernels::CatalogParams::t)
        .def_readwrite("lambda_", &kernels::CatalogParams::lambda)
        .def_readwrite("box_cells", &kernels::CatalogParams::box_cells)
        .def_readwrite("mass", &kernels::CatalogParams::mass);
    m.def("kernel_catalog", &kernels::catalog, py::arg("name"), py::arg("params"),
          py::arg("grid"), "gaussian | box | exponential | one_sided_exponential");
    m.def("convolve", &kernels::convolve, py::arg("kernel"), py::arg("f"),
          "zero-padded discrete convolution with mass factor h");
    py::enum_<kernels::Membership>(m, "Membership")
        .value("certified", kernels::Membership::certified)
        .value("refuted", kernels::Membership::refuted)
        .value("undetermined", kernels::Membership::undetermined);
    py::class_<kernels::MembershipVerdict>(m, "MembershipVerdict")
        .def_readonly("status", &kernels::MembershipVerdict::status)
        .def_readonly("majorant_integral", &kernels::MembershipVerdict::majorant_integral)
        .def_readonly("l1_mass", &kernels::MembershipVerdict::l1_mass)
        .def_readonly("counterexample", &kernels::MembershipVerdict::counterexample)
        .def_readonly("violation_cell", &kernels::MembershipVerdict::violation_cell)
        .def_readonly("violation_excess", &kernels::MembershipVerdict::violation_excess);
    m.def("in_class_k", &kernels::in_class_k, py::arg("kernel"), py::arg("trials"),
          py::arg("seed"), "domination-class membership: certificate or refutation");

    // ---- operator families ------------------------------------------------
    py::class_<sbound::Matrix>(m, "Matrix")
        .def(py::init(&matrix_from_rows), py::arg("rows"))
        .def_static("identity", &sbound::Matrix::identity, py::arg("n"))
        .def_static("diagonal", &sbound::Matrix::diagonal, py::arg("d"))
        .def_readonly("rows", &sbound::Matrix::rows)
        .def_readonly("cols", &sbound::Matrix::cols)
        .def("to_rows", &matrix_rows)
        .def("at", [](const sbound::Matrix& m_, int r, int c) { return m_.at(r, c); });
    py::enum_<sbound::StructureTag>(m, "StructureTag")
        .value("generic", sbound::StructureTag::generic)
        .value("multiplication", sbound::StructureTag::multiplication)
        .value("weighted_composition", sbound::StructureTag::weighted_composition);
    py::class_<sbound::OperatorFamily>(m, "OperatorFamily")
        .def_readonly("space", &sbound::OperatorFamily::space)
        .def_readonly("members", &sbound::OperatorFamily::members)
        .def_readonly("labels", &sbound::OperatorFamily::labels)
        .def_readonly("tag", &sbound::OperatorFamily::tag);
    m.def("make_family", &sbound::make_family, py::arg("space"), py::arg("members"),
          py::arg("tag"), py::arg("labels") = std::vector<std::string>{});
    m.def("adjoint_family", &sbound::adjoint_family, py::arg("family"),
          "measure-weighted transposes on the conjugate-exponent space");

    py::class_<sbound::SearchOptions>(m, "SearchOptions")
        .def(py::init([](int n_max, int restarts, int iters, double step, uint64_t seed) {
                 return sbound::SearchOptions{n_max, restarts, iters, step, seed};
             }),
             py::arg("n_max") = 6, py::arg("restarts") = 32, py::arg("iters") = 200,
             py::arg("step") = 0.1, py::arg("seed") = 0)
        .def_readwrite("n_max", &sbound::SearchOptions::n_max)
        .def_readwrite("restarts", &sbound::SearchOptions::restarts)
        .def_readwrite("iters", &sbound::SearchOptions::iters)
        .def_readwrite("step", &sbound::SearchOptions::step)
        .def_readwrite("seed", &sbound::SearchOptions::seed);
    py::enum_<sbound::CertificateKind>(m, "CertificateKind")
        .value("interpolation", sbound::CertificateKind::interpolation)
        .value("duality", sbound::CertificateKind::duality)
        .value("closed_form", sbound::CertificateKind::closed_form)
        .value("uniform_norm", sbound::CertificateKind::uniform_norm);
    py::class_<sbound::UpperCertificate>(m, "UpperCertificate")
        .def_readonly("value", &sbound::UpperCertificate::value)
        .def_readonly("kind", &sbound::UpperCertificate::kind);
    py::class_<sbound::LsWitness>(m, "LsWitness")
        .def_readonly("assignment", &sbound::LsWitness::assignment)
        .def_readonly("tuple", &sbound::LsWitness::tuple);
    py::class_<sbound::LsBoundEstimate>(m, "LsBoundEstimate")
        .def_readonly("s", &sbound::LsBoundEstimate::s)
        .def_readonly("lower", &sbound::LsBoundEstimate::lower)
        .def_readonly("witness", &sbound::LsBoundEstimate::witness)
        .def_readonly("upper", &sbound::LsBoundEstimate::upper);
    m.def(
        "estimate_ls_bound",
        [](const sbound::OperatorFamily& fam, double s, const sbound::SearchOptions& opts) {
            return sbound::estimate_ls_bound(fam, s, opts);
        },
        py::arg("family"), py::arg("s"), py::arg("options") = sbound::SearchOptions{},
        "seeded search lower bound with the cheapest valid upper certificate");
    m.def("exact_ls_bound_structured", &sbound::exact_ls_bound_structured, py::arg("family"),
          py::arg("s"), "closed-form value for tagged families");
    m.def("interpolation_certificate", &sbound::interpolation_certificate, py::arg("r_s0"),
          py::arg("r_s1"), py::arg("s0"), py::arg("s1"), py::arg("s"));
    m.def("rademacher_bound_estimate", &sbound::rademacher_bound_estimate, py::arg("family"),
          py::arg("options"), "sign-averaged tuple bound (search lower estimate)");
    m.def(
        "ls_ratio",
        [](const sbound::OperatorFamily& fam, const std::vector<int>& assignment,
           const std::vector<std::vector<double>>& xs, double s) {
            return sbound::ls_ratio(fam, std::span<const int>(assignment.data(),
                                                              assignment.size()),
                                    xs, s);
        },
        py::arg("family"), py::arg("assignment"), py::arg("tuple"), py::arg("s"));

    // ---- extrapolation -----------------------------------------------------
    py::class_<extrapolate::RdFResult>(m, "RdFResult")
        .def_readonly("input", &extrapolate::RdFResult::input)
        .def_readonly("output", &extrapolate::RdFResult::output)
        .def_readonly("terms", &extrapolate::RdFResult::terms)
        .def_readonly("m_norm_used", &extrapolate::RdFResult::m_norm_used)
        .def_readonly("norm_ratio", &extrapolate::RdFResult::norm_ratio)
        .def_readonly("tail_norm", &extrapolate::RdFResult::tail_norm)
        .def_readonly("tail_relative", &extrapolate::RdFResult::tail_relative);
    m.def("rdf_iterate", &extrapolate::rdf_iterate, py::arg("u"), py::arg("p"), py::arg("w"),
          py::arg("terms") = 16, py::arg("m_override") = std::nullopt,
          "damped maximal-operator series: u <= Ru, ||Ru|| <= 2||u||, Ru A_1-flat");

    py::class_<extrapolate::ExtrapolationSample>(m, "ExtrapolationSample")
        .def_readonly("ap_constant", &extrapolate::ExtrapolationSample::ap_constant)
        .def_readonly("ratio", &extrapolate::ExtrapolationSample::ratio);
    py::class_<extrapolate::EnvelopeFit>(m, "EnvelopeFit")
        .def_readonly("c", &extrapolate::EnvelopeFit::c)
        .def_readonly("e", &extrapolate::EnvelopeFit::e)
        .def_readonly("leading", &extrapolate::EnvelopeFit::leading);
    py::class_<extrapolate::ExtrapolationTarget>(m, "ExtrapolationTarget")
        .def_readonly("p", &extrapolate::ExtrapolationTarget::p)
        .def_readonly("conclusion", &extrapolate::ExtrapolationTarget::conclusion)
        .def_readonly("envelope", &extrapolate::ExtrapolationTarget::envelope)
        .def_readonly("fit", &extrapolate::ExtrapolationTarget::fit)
        .def_readonly("passed", &extrapolate::ExtrapolationTarget::pass);
    py::class_<extrapolate::ExtrapolationReport>(m, "ExtrapolationReport")
        .def_readonly("p0", &extrapolate::ExtrapolationReport::p0)
        .def_readonly("axes", &extrapolate::ExtrapolationReport::axes)
        .def_readonly("hypothesis", &extrapolate::ExtrapolationReport::hypothesis)
        .def_readonly("alpha_hat", &extrapolate::ExtrapolationReport::alpha_hat)
        .def_readonly("targets", &extrapolate::ExtrapolationReport::targets)
        .def_readonly("verdict", &extrapolate::ExtrapolationReport::verdict)
        .def_readonly("note", &extrapolate::ExtrapolationReport::note);
    m.def(
        "verify_maximal_extrapolation",
        [](double p0, const std::vector<double>& targets, const std::vector<double>& powers,
           int grid_n, int samples, uint64_t seed) {
            Grid1D grid{-0.5, 1.0 / grid_n, grid_n};
            std::vector<Weight> ws;
            for (double a : powers) ws.push_back(weights::power_weight(a, grid));
            extrapolate::PairGenerator gen = [grid](Rng& r) {
                GridFunction g = sampling::random_nonneg(r, grid);
                return std::make_pair(maximal::maximal_function(g), g);
            };
            return extrapolate::verify_extrapolation_pair(gen, p0, targets, ws, samples, seed);
        },
        py::arg("p0"), py::arg("targets"), py::arg("weight_powers"), py::arg("grid_n") = 32,
        py::arg("samples") = 24, py::arg("seed") = 7,
        "transport the (Mg, g) norm inequality from p0 to the target exponents");

    m.def("dominating_weight_structured", &extrapolate::dominating_weight_structured,
          py::arg("u"), py::arg("family"), py::arg("s"),
          "least weight passing the family through the s-power substitution");
    py::class_<extrapolate::DominationReport>(m, "DominationReport")
        .def_readonly("passed", &extrapolate::DominationReport::pass)
        .def_readonly("norm_u", &extrapolate::DominationReport::norm_u)
        .def_readonly("norm_upper", &extrapolate::DominationReport::norm_upper)
        .def_readonly("worst_violation", &extrapolate::DominationReport::worst_violation)
        .def_readonly("trials_checked", &extrapolate::DominationReport::trials_checked);
    m.def("verify_domination", &extrapolate::verify_domination, py::arg("upper"), py::arg("u"),
          py::arg("family"), py::arg("s"), py::arg("trials"), py::arg("seed"));

    // ---- duality -------------------------------------------------------------
    py::class_<dualspace::NormingWitness>(m, "NormingWitness")
        .def_readonly("f", &dualspace::NormingWitness::f)
        .def_readonly("g", &dualspace::NormingWitness::g)
        .def_readonly("pairing_value", &dualspace::NormingWitness::pairing_value)
        .def_readonly("f_norm", &dualspace::NormingWitness::f_norm)
        .def_readonly("g_dual_norm", &dualspace::NormingWitness::g_dual_norm);
    m.def(
        "norming_function",
        [](const std::vector<double>& g, const MixedSpace& space) {
            return dualspace::norming_function(std::span<const double>(g.data(), g.size()),
                                               space);
        },
        py::arg("g"), py::arg("space"),
        "f with ||f|| = 1 attaining the dual norm of g in the pairing");
    py::class_<dualspace::DualityReport>(m, "DualityReport")
        .def_readonly("sampled_max", &dualspace::DualityReport::sampled_max)
        .def_readonly("witness_value", &dualspace::DualityReport::witness_value)
        .def_readonly("gap", &dualspace::DualityReport::gap)
        .def_readonly("holder_ok", &dualspace::DualityReport::holder_ok);
    m.def(
        "verify_duality_pairing",
        [](const std::vector<double>& g, const MixedSpace& space, int trials, uint64_t seed) {
            return dualspace::verify_duality_pairing(
                std::span<const double>(g.data(), g.size()), space, trials, seed);
        },
        py::arg("g"), py::arg("space"), py::arg("trials"), py::arg("seed"));
    py::class_<dualspace::TupleDualityReport>(m, "TupleDualityReport")
        .def_readonly("chain_ok", &dualspace::TupleDualityReport::chain_ok)
        .def_readonly("worst_slack", &dualspace::TupleDualityReport::worst_slack)
        .def_readonly("identical_ratio_1_r", &dualspace::TupleDualityReport::identical_ratio_1_r)
        .def_readonly("identical_expected_1_r",
                      &dualspace::TupleDualityReport::identical_expected_1_r)
        .def_readonly("identical_ratio_r_inf",
                      &dualspace::TupleDualityReport::identical_ratio_r_inf)
        .def_readonly("identical_expected_r_inf",
                      &dualspace::TupleDualityReport::identical_expected_r_inf)
        .def_readonly("disjoint_ratio_r_inf",
                      &dualspace::TupleDualityReport::disjoint_ratio_r_inf);
    m.def("tuple_duality_constants", &dualspace::tuple_duality_constants, py::arg("space"),
          py::arg("tuple_size"), py::arg("r"), py::arg("trials"), py::arg("seed"),
          "norm comparisons between tuple exponents 1, r, inf with tight witnesses");

    // ---- integral-operator experiment ------------------------------------------
    py::class_<intops::ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("kernel_names", &intops::ExperimentConfig::kernel_names)
        .def_readwrite("kernel_params", &intops::ExperimentConfig::kernel_params)
        .def_readwrite("time_grid", &intops::ExperimentConfig::time_grid)
        .def_readwrite("space_cells", &intops::ExperimentConfig::space_cells)
        .def_readwrite("space_h", &intops::ExperimentConfig::space_h)
        .def_readwrite("family", &intops::ExperimentConfig::family)
        .def_readwrite("diffusion_scale", &intops::ExperimentConfig::diffusion_scale)
        .def_readwrite("multiplication_members", &intops::ExperimentConfig::multiplication_members)
        .def_readwrite("member_mode", &intops::ExperimentConfig::member_mode)
        .def_readwrite("p", &intops::ExperimentConfig::p)
        .def_readwrite("q", &intops::ExperimentConfig::q)
        .def_readwrite("s_list", &intops::ExperimentConfig::s_list)
        .def_readwrite("weight_powers", &intops::ExperimentConfig::weight_powers)
        .def_readwrite("search", &intops::ExperimentConfig::search)
        .def_readwrite("rademacher_tuple", &intops::ExperimentConfig::rademacher_tuple)
        .def_readwrite("chain_trials", &intops::ExperimentConfig::chain_trials)
        .def_readwrite("seed", &intops::ExperimentConfig::seed);
    py::class_<intops::ExperimentRow>(m, "ExperimentRow")
        .def_readonly("s", &intops::ExperimentRow::s)
        .def_readonly("weight_power", &intops::ExperimentRow::weight_power)
        .def_readonly("ap_constant", &intops::ExperimentRow::ap_constant)
        .def_readonly("lower", &intops::ExperimentRow::lower)
        .def_readonly("upper", &intops::ExperimentRow::upper)
        .def_readonly("certificate", &intops::ExperimentRow::certificate)
        .def_readonly("structured_certificate", &intops::ExperimentRow::structured_certificate);
    py::class_<intops::RademacherRow>(m, "RademacherRow")
        .def_readonly("weight_power", &intops::RademacherRow::weight_power)
        .def_readonly("ap_constant", &intops::RademacherRow::ap_constant)
        .def_readonly("value", &intops::RademacherRow::value);
    py::class_<intops::ExperimentReport>(m, "ExperimentReport")
        .def_readonly("member_labels", &intops::ExperimentReport::member_labels)
        .def_readonly("kernel_verdicts", &intops::ExperimentReport::kernel_verdicts)
        .def_readonly("rows", &intops::ExperimentReport::rows)
        .def_readonly("rademacher", &intops::ExperimentReport::rademacher)
        .def_readonly("envelope", &intops::ExperimentReport::envelope)
        .def_readonly("sandwich_ok", &intops::ExperimentReport::sandwich_ok)
        .def_readonly("chain_ok", &intops::ExperimentReport::chain_ok)
        .def_readonly("notes", &intops::ExperimentReport::notes);
    m.def("theorem_experiment", &intops::theorem_experiment, py::arg("config"),
          py::call_guard<py::gil_scoped_release>(),
          "integral-operator tuple-bound experiment across kernels, weights, exponents");

    // ---- acceptance battery ------------------------------------------------------
    py::class_<suite::CriterionResult>(m, "CriterionResult")
        .def_readonly("id", &suite::CriterionResult::id)
        .def_readonly("name", &suite::CriterionResult::name)
        .def_readonly("passed", &suite::CriterionResult::pass)
        .def_readonly("detail", &suite::CriterionResult::detail);
    py::class_<suite::BatteryResult>(m, "BatteryResult")
        .def_readonly("criteria", &suite::BatteryResult::criteria)
        .def_readonly("all_pass", &suite::BatteryResult::all_pass)
        .def_readonly("csv_text", &suite::BatteryResult::csv_text);
    m.def("run_battery", &suite::run_battery, py::arg("seed") = 7, py::arg("size") = "small",
          py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>(),
          "one result per acceptance criterion");
    py::class_<suite::SuiteResult>(m, "SuiteResult")
        .def_readonly("criteria", &suite::SuiteResult::criteria)
        .def_readonly("all_pass", &suite::SuiteResult::all_pass)
        .def_readonly("summary_csv", &suite::SuiteResult::summary_csv);
    m.def("run_suite", &suite::run_suite, py::arg("seed") = 7, py::arg("size") = "small",
          py::call_guard<py::gil_scoped_release>(),
          "acceptance battery at thread caps 1 and 4 plus the determinism comparison");

    // ---- file formats ---------------------------------------------------------------
    m.def("read_grid_function", &csv::read_grid_function, py::arg("path"),
          "cell,value CSV with origin/h/n metadata comments");
    m.def(
        "write_grid_function",
        [](const GridFunction& f, const std::string& path,
           const std::vector<std::string>& comments) {
            csv::write_grid_function(f, path, comments);
        },
        py::arg("f"), py::arg("path"), py::arg("comments") = std::vector<std::string>{});
}
