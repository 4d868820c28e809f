#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "weightlab/csv.hpp"
#include "weightlab/dualspace.hpp"
#include "weightlab/extrapolate.hpp"
#include "weightlab/intops.hpp"
#include "weightlab/kernels.hpp"
#include "weightlab/maximal.hpp"
#include "weightlab/sampling.hpp"
#include "weightlab/sbound.hpp"
#include "weightlab/suite.hpp"
#include "weightlab/svg.hpp"
#include "weightlab/weights.hpp"

namespace {

using namespace weightlab;

// Human-friendly value printing: integral results keep one decimal.
std::string pretty(double x) {
    if (std::isfinite(x) && x == std::floor(x) && std::fabs(x) < 1e9) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1f", x);
        return buf;
    }
    return csv::format_double(x);
}

std::string join_doubles(const std::vector<double>& xs) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += csv::format_double(xs[i]);
    }
    return out;
}

// ----------------------------------------------------------------- ap ---

struct ApArgs {
    std::string weight_path, out;
    double p = 2.0;
};

int run_ap(const ApArgs& a) {
    Weight w = make_weight(csv::read_grid_function(a.weight_path));
    auto rep = weights::ap_constant(w, a.p);
    std::printf("%s\n", pretty(rep.constant).c_str());
    std::fprintf(stderr, "witness cells [%d, %d]\n", rep.witness_begin, rep.witness_end);
    if (!a.out.empty()) {
        csv::Table t;
        t.comments = {"command=ap", "weight=" + a.weight_path, "p=" + csv::format_double(a.p)};
        t.header = {"p", "constant", "witness_begin", "witness_end"};
        t.add_row({csv::format_double(a.p), csv::format_double(rep.constant),
                   std::to_string(rep.witness_begin), std::to_string(rep.witness_end)});
        csv::write_table(t, a.out);
    }
    return 0;
}

// ------------------------------------------------------------ maximal ---

struct MaximalArgs {
    std::string f_path, fiber_path, out;
    std::vector<int> axes;
    int witness = -1;
};

// Lattice functions travel as cell,v0,...,v{d-1} with one column per
// fiber slot; the axis sizes live in a metadata comment.
LatticeFunction read_lattice_function(const std::string& path, const std::vector<int>& axes) {
    csv::Table t = csv::read_table(path);
    int64_t d = 1;
    std::vector<MeasuredAxis> ax;
    std::vector<double> q;
    for (int n : axes) {
        if (n <= 0) throw std::invalid_argument("--axes entries must be positive");
        d *= n;
        ax.push_back(MeasuredAxis::counting(n));
        q.push_back(2.0);
    }
    if (t.header.size() != static_cast<size_t>(d) + 1)
        throw std::invalid_argument(path + ": expected " + std::to_string(d + 1) +
                                    " columns for axes of total size " + std::to_string(d));
    int n_cells = static_cast<int>(t.rows.size());
    std::vector<double> v;
    v.reserve(static_cast<size_t>(n_cells) * static_cast<size_t>(d));
    for (const auto& row : t.rows)
        for (size_t j = 1; j < row.size(); ++j) v.push_back(csv::parse_double(row[j]));
    return LatticeFunction(Grid1D{0.0, 1.0 / n_cells, n_cells}, MixedSpace(ax, q),
                           std::move(v));
}

csv::Table lattice_table(const LatticeFunction& f, std::vector<std::string> comments) {
    csv::Table t;
    t.comments = std::move(comments);
    t.header = {"cell"};
    for (int64_t j = 0; j < f.fiber_dim(); ++j) t.header.push_back("v" + std::to_string(j));
    for (int i = 0; i < f.grid.n; ++i) {
        std::vector<std::string> row{std::to_string(i)};
        for (double x : f.fiber(i)) row.push_back(csv::format_double(x));
        t.add_row(std::move(row));
    }
    return t;
}

int run_maximal(const MaximalArgs& a) {
    if (!a.fiber_path.empty()) {
        if (a.axes.empty())
            throw std::invalid_argument("--fiber-csv needs --axes for the fiber shape");
        LatticeFunction f = read_lattice_function(a.fiber_path, a.axes);
        LatticeFunction mf = maximal::lattice_maximal(f);
        csv::Table t = lattice_table(mf, {"command=maximal", "fiber_csv=" + a.fiber_path});
        if (a.out.empty())
            std::fputs(t.to_text().c_str(), stdout);
        else
            csv::write_table(t, a.out);
        return 0;
    }
    if (a.f_path.empty()) throw std::invalid_argument("either --f or --fiber-csv is required");
    GridFunction f = csv::read_grid_function(a.f_path);
    GridFunction mf = maximal::maximal_function(f);
    if (a.witness >= 0) {
        if (a.witness >= f.grid.n) throw std::invalid_argument("witness cell out of range");
        auto wit = maximal::maximal_witness(f, a.witness);
        std::fprintf(stderr, "cell %d: average %s over cells [%d, %d]\n", a.witness,
                     pretty(wit.average).c_str(), wit.begin, wit.end);
    }
    if (a.out.empty()) {
        csv::Table t;
        t.comments = {"command=maximal", "f=" + a.f_path,
                      "origin=" + csv::format_double(mf.grid.origin),
                      "h=" + csv::format_double(mf.grid.h), "n=" + std::to_string(mf.grid.n)};
        t.header = {"cell", "value"};
        for (int i = 0; i < mf.grid.n; ++i)
            t.add_row({std::to_string(i), csv::format_double(mf.v[static_cast<size_t>(i)])});
        std::fputs(t.to_text().c_str(), stdout);
    } else {
        csv::write_grid_function(mf, a.out, {"command=maximal", "f=" + a.f_path});
    }
    return 0;
}

// ------------------------------------------------------- kernel-check ---

struct KernelArgs {
    std::string name, out;
    double t = 0.02, lambda = 8.0, h = 0.03125, mass = -1.0;
    int box_cells = 2, n = 64, trials = 32;
    uint64_t seed = 1;
};

int run_kernel_check(const KernelArgs& a) {
    kernels::CatalogParams prm{a.t, a.lambda, a.box_cells, std::nullopt};
    if (a.mass > 0) prm.mass = a.mass;
    Grid1D grid{-0.5 * a.n * a.h, a.h, a.n};
    kernels::Kernel k = kernels::catalog(a.name, prm, grid);
    if (!a.out.empty()) {
        csv::Table t;
        t.comments = {"command=kernel-check", "name=" + a.name, "h=" + csv::format_double(k.h)};
        t.header = {"offset", "value"};
        for (int o = -k.radius; o <= k.radius; ++o)
            t.add_row({std::to_string(o), csv::format_double(k.at_offset(o))});
        csv::write_table(t, a.out);
    }
    auto verdict = kernels::in_class_k(k, a.trials, a.seed);
    switch (verdict.status) {
        case kernels::Membership::certified:
            std::printf("certified: majorant integral %s within tolerance of 1 (l1 mass %s)\n",
                        pretty(verdict.majorant_integral).c_str(),
                        pretty(verdict.l1_mass).c_str());
            return 0;
        case kernels::Membership::refuted:
            std::printf("refuted: witness cell %d exceeds the maximal function by %s\n",
                        verdict.violation_cell, pretty(verdict.violation_excess).c_str());
            std::fprintf(stderr, "kernel-check: domination fails\n");
            return 1;
        default:
            std::printf("undetermined: majorant integral %s, no violation found in %d trials\n",
                        pretty(verdict.majorant_integral).c_str(), a.trials);
            std::fprintf(stderr, "kernel-check: membership undetermined\n");
            return 1;
    }
}

// ------------------------------------------------------------- lsbound ---

struct LsArgs {
    std::string family_path, out, svg_path, witness_out;
    int n_max = 4, restarts = 24, iters = 150;
    double q = 2.0;
    std::vector<double> s_list{2.0};
    uint64_t seed = 7;
};

// Family CSV: one row per matrix entry, member,row,col,value. Structure
// (diagonal / weighted composition) is detected so the exact value can be
// reported alongside the search sandwich.
sbound::OperatorFamily read_family(const std::string& path, double q) {
    csv::Table t = csv::read_table(path);
    if (t.header != std::vector<std::string>{"member", "row", "col", "value"})
        throw std::invalid_argument(path + ": expected header member,row,col,value");
    std::map<int, std::vector<std::tuple<int, int, double>>> entries;
    int dim = 0;
    for (size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        int member = std::stoi(row[0]), i = std::stoi(row[1]), j = std::stoi(row[2]);
        if (member < 0 || i < 0 || j < 0)
            throw std::invalid_argument(path + ": negative id in row " + std::to_string(r + 1));
        entries[member].emplace_back(i, j, csv::parse_double(row[3]));
        dim = std::max({dim, i + 1, j + 1});
    }
    if (entries.empty()) throw std::invalid_argument(path + ": no matrix entries");

    std::vector<sbound::Matrix> ms;
    bool all_diagonal = true, all_wc = true;
    for (auto& [member, list] : entries) {
        sbound::Matrix m(dim, dim);
        for (auto [i, j, x] : list) m.at(i, j) = x;
        for (int i = 0; i < dim; ++i) {
            int nonzero = 0;
            for (int j = 0; j < dim; ++j)
                if (m.at(i, j) != 0.0) {
                    ++nonzero;
                    if (i != j) all_diagonal = false;
                }
            if (nonzero > 1) all_wc = false;
        }
        ms.push_back(std::move(m));
    }
    if (all_wc && !all_diagonal) {
        // weighted composition additionally needs the nonzero columns to
        // form a permutation, member by member
        for (const auto& m : ms) {
            std::vector<int> hit(static_cast<size_t>(dim), 0);
            for (int i = 0; i < dim && all_wc; ++i) {
                int col = -1;
                for (int j = 0; j < dim; ++j)
                    if (m.at(i, j) != 0.0) col = j;
                if (col < 0 || hit[static_cast<size_t>(col)]++) all_wc = false;
            }
            if (!all_wc) break;
        }
    }
    sbound::StructureTag tag = all_diagonal ? sbound::StructureTag::multiplication
                               : all_wc     ? sbound::StructureTag::weighted_composition
                                            : sbound::StructureTag::generic;
    MixedSpace space({MeasuredAxis::counting(dim)}, {q});
    return sbound::make_family(std::move(space), std::move(ms), tag);
}

const char* structure_name(sbound::StructureTag tag) {
    switch (tag) {
        case sbound::StructureTag::multiplication: return "multiplication";
        case sbound::StructureTag::weighted_composition: return "weighted_composition";
        default: return "generic";
    }
}

int run_lsbound(const LsArgs& a) {
    auto fam = read_family(a.family_path, a.q);
    sbound::SearchOptions opts{a.n_max, a.restarts, a.iters, 0.1, 0};

    csv::Table t;
    t.comments = {"command=lsbound", "family=" + a.family_path,
                  "structure=" + std::string(structure_name(fam.tag)),
                  "q=" + csv::format_double(a.q), "s=" + join_doubles(a.s_list),
                  "seed=" + std::to_string(a.seed)};
    t.header = {"s", "lower", "upper", "certificate_kind", "exact"};
    csv::Table wt;
    wt.comments = t.comments;
    wt.header = {"s", "slot", "member", "component", "value"};
    std::vector<std::pair<double, double>> curve;
    for (double s : a.s_list) {
        opts.seed = Rng(a.seed).fork(static_cast<uint64_t>(s * 512)).next();
        auto est = sbound::estimate_ls_bound(fam, s, opts);
        bool tagged = fam.tag != sbound::StructureTag::generic;
        double exact = tagged ? sbound::exact_ls_bound_structured(fam, s) : 0.0;
        std::string cert_val = est.upper ? csv::format_double(est.upper->value) : "";
        std::string cert_kind = est.upper ? sbound::certificate_kind_name(est.upper->kind) : "";
        t.add_row({csv::format_double(s), csv::format_double(est.lower), cert_val, cert_kind,
                   tagged ? csv::format_double(exact) : ""});
        for (size_t slot = 0; slot < est.witness.assignment.size(); ++slot)
            for (size_t c = 0; c < est.witness.tuple[slot].size(); ++c)
                wt.add_row({csv::format_double(s), std::to_string(slot),
                            std::to_string(est.witness.assignment[slot]), std::to_string(c),
                            csv::format_double(est.witness.tuple[slot][c])});
        std::printf("s=%-6s lower=%s upper=%s (%s)", pretty(s).c_str(),
                    pretty(est.lower).c_str(), est.upper ? pretty(est.upper->value).c_str() : "-",
                    cert_kind.empty() ? "-" : cert_kind.c_str());
        if (tagged) std::printf(" exact=%s", pretty(exact).c_str());
        std::printf("\n");
        if (s != kInf) curve.emplace_back(s, est.lower);
    }
    if (!a.out.empty()) csv::write_table(t, a.out);
    if (!a.witness_out.empty()) csv::write_table(wt, a.witness_out);
    if (!a.svg_path.empty() && !curve.empty())
        svg::write_plot({{"lower bound", curve}}, "tuple-norm bound sweep", "s", "bound",
                        a.svg_path);
    return 0;
}

// --------------------------------------------------------- extrapolate ---

struct ExtrapArgs {
    double p0 = 2.0;
    std::vector<double> targets{1.5, 3.0};
    std::string weights_spec = "power:0,0.3,0.6,0.9", out;
    int samples = 24, grid_n = 32;
    uint64_t seed = 7;
};

int run_extrapolate(const ExtrapArgs& a) {
    Grid1D grid{-0.5, 1.0 / a.grid_n, a.grid_n};
    std::vector<Weight> ws;
    if (a.weights_spec.rfind("power:", 0) == 0) {
        std::string list = a.weights_spec.substr(6);
        for (const auto& part : CLI::detail::split(list, ','))
            ws.push_back(weights::power_weight(csv::parse_double(part), grid));
    } else if (a.weights_spec.rfind("random:", 0) == 0) {
        int count = std::stoi(a.weights_spec.substr(7));
        Rng wrng(a.seed ^ 0x77);
        for (int i = 0; i < count; ++i) ws.push_back(sampling::random_weight(wrng, grid));
    } else {
        throw std::invalid_argument("--weights must look like power:0,0.3 or random:4");
    }

    extrapolate::PairGenerator gen = [grid](Rng& r) {
        GridFunction g = sampling::random_nonneg(r, grid);
        return std::make_pair(maximal::maximal_function(g), g);
    };
    auto rep =
        extrapolate::verify_extrapolation_pair(gen, a.p0, a.targets, ws, a.samples, a.seed);

    if (!a.out.empty()) {
        csv::Table t;
        t.comments = {"command=extrapolate",
                      "p0=" + csv::format_double(a.p0),
                      "p=" + join_doubles(a.targets),
                      "weights=" + a.weights_spec,
                      "samples=" + std::to_string(a.samples),
                      "grid_n=" + std::to_string(a.grid_n),
                      "seed=" + std::to_string(a.seed),
                      "verdict=" + std::string(rep.verdict ? "pass" : "fail"),
                      "note=" + rep.note};
        t.header = {"phase", "p", "ap_constant", "ratio"};
        for (const auto& s : rep.hypothesis)
            t.add_row({"hypothesis", csv::format_double(a.p0), csv::format_double(s.ap_constant),
                       csv::format_double(s.ratio)});
        for (const auto& tgt : rep.targets)
            for (const auto& s : tgt.conclusion)
                t.add_row({"conclusion", csv::format_double(tgt.p),
                           csv::format_double(s.ap_constant), csv::format_double(s.ratio)});
        csv::write_table(t, a.out);
    }

    std::printf("hypothesis p0=%s over %zu weights; targets", pretty(a.p0).c_str(), ws.size());
    for (const auto& tgt : rep.targets)
        std::printf(" p=%s:%s(leading %s)", pretty(tgt.p).c_str(), tgt.pass ? "pass" : "fail",
                    pretty(tgt.fit.leading).c_str());
    std::printf("; verdict %s\n", rep.verdict ? "pass" : "fail");
    if (!rep.verdict) std::fprintf(stderr, "extrapolate: envelope transport failed\n");
    return rep.verdict ? 0 : 1;
}

// --------------------------------------------------------------- intop ---

struct IntopArgs {
    intops::ExperimentConfig cfg;
    int time_cells = 64;
    std::string config_path, out = "intop_out";
    uint64_t seed_override = 0;
    bool seed_given = false;
};

// CLI11 only reads config files attached to the root command, so the
// experiment INI is applied by hand: every [section] key must match a
// --section.key option, and values given on the command line win.
void apply_experiment_config(CLI::App* cmd, const std::string& path) {
    CLI::ConfigINI reader;
    for (const auto& item : reader.from_file(path)) {
        if (item.name == "++" || item.name == "--") continue;  // section open/close markers
        std::string name = item.fullname();
        CLI::Option* op = cmd->get_option_no_throw("--" + name);
        if (op == nullptr || name == "config" || name == "out")
            throw std::invalid_argument(path + ": unknown experiment setting [" +
                                        (item.parents.empty() ? "" : item.parents.front()) +
                                        "] " + item.name);
        if (op->count() > 0) continue;
        op->add_result(item.inputs);
        op->run_callback();
    }
}

int run_intop(IntopArgs& a) {
    a.cfg.time_grid = Grid1D{0.0, 1.0 / a.time_cells, a.time_cells};
    if (a.seed_given) a.cfg.seed = a.seed_override;
    auto& cfg = a.cfg;
    auto rep = intops::theorem_experiment(cfg);

    std::filesystem::path dir = a.out;
    std::filesystem::create_directories(dir);

    std::string kernel_names;
    for (size_t i = 0; i < cfg.kernel_names.size(); ++i)
        kernel_names += (i ? "," : "") + cfg.kernel_names[i];
    std::vector<std::string> comments = {
        "command=intop",
        "kernels=" + kernel_names,
        "family=" + cfg.family,
        "member_mode=" + cfg.member_mode,
        "time_cells=" + std::to_string(cfg.time_grid.n),
        "space_cells=" + std::to_string(cfg.space_cells),
        "p=" + csv::format_double(cfg.p),
        "q=" + csv::format_double(cfg.q),
        "s=" + join_doubles(cfg.s_list),
        "weight_powers=" + join_doubles(cfg.weight_powers),
        "seed=" + std::to_string(cfg.seed),
        "note=" + rep.notes};

    csv::Table rows;
    rows.comments = comments;
    rows.header = {"s", "ap_constant", "lower", "upper", "certificate_kind"};
    std::map<double, std::vector<std::pair<double, double>>> curves;
    for (const auto& r : rep.rows) {
        rows.add_row({csv::format_double(r.s), csv::format_double(r.ap_constant),
                      csv::format_double(r.lower), csv::format_double(r.upper), r.certificate});
        curves[r.weight_power].emplace_back(r.s, r.lower);
    }
    csv::write_table(rows, (dir / "rows.csv").string());

    std::vector<svg::Series> series;
    for (const auto& [power, pts] : curves)
        series.push_back({"power " + csv::format_double(power), pts});
    if (!series.empty())
        svg::write_plot(series, "tuple bound vs s", "s", "lower bound",
                        (dir / "bounds.svg").string());

    if (!rep.rademacher.empty()) {
        csv::Table rad;
        rad.comments = comments;
        rad.header = {"weight_power", "ap_constant", "value"};
        for (const auto& r : rep.rademacher)
            rad.add_row({csv::format_double(r.weight_power), csv::format_double(r.ap_constant),
                         csv::format_double(r.value)});
        csv::write_table(rad, (dir / "rademacher.csv").string());
    }

    std::printf("members:");
    for (const auto& l : rep.member_labels) std::printf(" %s", l.c_str());
    std::printf("\nkernels:");
    for (const auto& v : rep.kernel_verdicts) std::printf(" %s", v.c_str());
    std::printf("\nsandwich %s, chain %s; wrote %s\n", rep.sandwich_ok ? "ok" : "VIOLATED",
                rep.chain_ok ? "ok" : "VIOLATED", dir.string().c_str());
    if (!rep.sandwich_ok) std::fprintf(stderr, "intop: sandwich bound violated\n");
    if (!rep.chain_ok) std::fprintf(stderr, "intop: pointwise chain violated\n");
    return rep.sandwich_ok && rep.chain_ok ? 0 : 1;
}

// ------------------------------------------------------------- duality ---

struct DualityArgs {
    std::vector<int> axes{4, 3};
    std::vector<double> q{2.0, 3.0};
    uint64_t seed = 7;
    int trials = 64;
};

int run_duality(const DualityArgs& a) {
    if (a.axes.size() != a.q.size())
        throw std::invalid_argument("--axes and --q need the same length");
    std::vector<MeasuredAxis> ax;
    for (int n : a.axes) ax.push_back(MeasuredAxis::counting(n));
    MixedSpace space(ax, a.q);

    Rng rng(a.seed);
    std::vector<double> g(static_cast<size_t>(space.dim()));
    for (double& x : g) x = rng.normal();
    auto wit = dualspace::norming_function(g, space);
    double denom = wit.f_norm * wit.g_dual_norm;
    double gap = denom > 0 ? std::fabs(wit.pairing_value - denom) / denom : 0.0;
    auto rep = dualspace::verify_duality_pairing(g, space, a.trials, a.seed);
    std::printf("||g||_dual = %s, witness pairing = %s, relative gap = %s\n",
                pretty(wit.g_dual_norm).c_str(), pretty(wit.pairing_value).c_str(),
                pretty(gap).c_str());
    std::printf("sampled max ratio %s (%d trials), holder %s\n", pretty(rep.sampled_max).c_str(),
                a.trials, rep.holder_ok ? "ok" : "VIOLATED");
    bool pass = rep.holder_ok && gap <= 1e-8;
    if (!pass) std::fprintf(stderr, "duality: witness gap or Holder check failed\n");
    return pass ? 0 : 1;
}

// --------------------------------------------------------------- suite ---

struct SuiteArgs {
    uint64_t seed = 7;
    std::string size = "small", out = "suite_summary.csv";
};

int run_suite_cmd(const SuiteArgs& a) {
    auto res = suite::run_suite(a.seed, a.size);
    for (const auto& r : res.criteria)
        std::printf("criterion %2d %-22s %s  %s\n", r.id, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.detail.c_str());
    std::ofstream file(a.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + a.out + " for writing");
    file << res.summary_csv;
    std::printf("summary written to %s\n", a.out.c_str());
    if (!res.all_pass)
        for (const auto& r : res.criteria)
            if (!r.pass)
                std::fprintf(stderr, "suite: criterion %d (%s) failed\n", r.id, r.name.c_str());
    return res.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale laboratory for weighted norm inequalities"};
    app.require_subcommand(1);
    int rc = 0;

    ApArgs ap_args;
    auto* ap = app.add_subcommand("ap", "Muckenhoupt constant of a weight");
    ap->add_option("--weight", ap_args.weight_path, "weight CSV (index,value)")->required();
    ap->add_option("--p", ap_args.p, "exponent")->required();
    ap->add_option("--out", ap_args.out, "result CSV path");
    ap->callback([&] { rc = run_ap(ap_args); });

    MaximalArgs max_args;
    auto* mx = app.add_subcommand("maximal", "uncentered maximal function over intervals");
    mx->add_option("--f", max_args.f_path, "grid function CSV (cell,value)");
    mx->add_option("--fiber-csv", max_args.fiber_path, "lattice function CSV (cell,v0,...)");
    mx->add_option("--axes", max_args.axes, "fiber axis sizes for --fiber-csv")->delimiter(',');
    mx->add_option("--out", max_args.out, "output CSV path (default: stdout)");
    mx->add_option("--witness", max_args.witness, "report the maximizing interval of this cell");
    mx->callback([&] { rc = run_maximal(max_args); });

    KernelArgs k_args;
    auto* kc = app.add_subcommand("kernel-check", "convolution-domination class membership");
    kc->add_option("--name", k_args.name, "gaussian|box|exponential|one_sided_exponential")
        ->required();
    kc->add_option("--t", k_args.t, "gaussian time");
    kc->add_option("--lambda", k_args.lambda, "exponential rate");
    kc->add_option("--box-cells", k_args.box_cells, "box half-width in cells");
    kc->add_option("--mass", k_args.mass, "target L1 mass in (0,1]");
    kc->add_option("--n", k_args.n, "sampling grid cells");
    kc->add_option("--step", k_args.h, "sampling grid step");
    kc->add_option("--trials", k_args.trials, "refutation trials");
    kc->add_option("--seed", k_args.seed, "trial seed");
    kc->add_option("--out", k_args.out, "kernel sample CSV (offset,value)");
    kc->callback([&] { rc = run_kernel_check(k_args); });

    LsArgs ls_args;
    auto* ls = app.add_subcommand("lsbound", "tuple-norm bound sweep for an operator family");
    ls->add_option("--family", ls_args.family_path, "family CSV (member,row,col,value)")
        ->required();
    ls->add_option("--q", ls_args.q, "space exponent");
    ls->add_option("--s", ls_args.s_list, "tuple exponents (inf allowed)")->delimiter(',');
    ls->add_option("--seed", ls_args.seed, "search seed");
    ls->add_option("--n-max", ls_args.n_max, "largest tuple size searched");
    ls->add_option("--restarts", ls_args.restarts, "search restarts");
    ls->add_option("--iters", ls_args.iters, "ascent iterations");
    ls->add_option("--out", ls_args.out, "sweep CSV path");
    ls->add_option("--witness-out", ls_args.witness_out, "witness CSV path");
    ls->add_option("--svg", ls_args.svg_path, "plot path");
    ls->callback([&] { rc = run_lsbound(ls_args); });

    ExtrapArgs ex_args;
    auto* ex = app.add_subcommand("extrapolate", "norm-inequality transport across exponents");
    ex->add_option("--p0", ex_args.p0, "hypothesis exponent");
    ex->add_option("--p", ex_args.targets, "target exponents")->delimiter(',');
    ex->add_option("--weights", ex_args.weights_spec, "power:a1,a2,... or random:count");
    ex->add_option("--samples", ex_args.samples, "sample pairs");
    ex->add_option("--grid-n", ex_args.grid_n, "grid cells");
    ex->add_option("--seed", ex_args.seed, "sample seed");
    ex->add_option("--out", ex_args.out, "report CSV path");
    ex->callback([&] { rc = run_extrapolate(ex_args); });

    IntopArgs io_args;
    auto* io = app.add_subcommand("intop", "integral-operator family experiment");
    io->add_option("--config", io_args.config_path, "INI experiment description");
    io->add_option("--kernels.names", io_args.cfg.kernel_names, "catalog kernels")
        ->delimiter(',');
    io->add_option("--kernels.t", io_args.cfg.kernel_params.t, "gaussian time");
    io->add_option("--kernels.lambda", io_args.cfg.kernel_params.lambda, "exponential rate");
    io->add_option("--kernels.box_cells", io_args.cfg.kernel_params.box_cells, "box half-width");
    io->add_option("--family.kind", io_args.cfg.family, "heat|identity|multiplication");
    io->add_option("--family.time_cells", io_args.time_cells, "time grid cells");
    io->add_option("--family.space_cells", io_args.cfg.space_cells, "state cells");
    io->add_option("--family.space_h", io_args.cfg.space_h, "state grid step");
    io->add_option("--family.diffusion_scale", io_args.cfg.diffusion_scale, "heat time scale");
    io->add_option("--family.members", io_args.cfg.multiplication_members,
                   "multiplication members");
    io->add_option("--family.member_mode", io_args.cfg.member_mode, "kernels|evolution");
    io->add_option("--exponents.p", io_args.cfg.p, "time exponent");
    io->add_option("--exponents.q", io_args.cfg.q, "state exponent");
    io->add_option("--exponents.s", io_args.cfg.s_list, "tuple exponents")->delimiter(',');
    io->add_option("--weights.powers", io_args.cfg.weight_powers, "power-weight exponents")
        ->delimiter(',');
    io->add_option("--search.n_max", io_args.cfg.search.n_max, "largest tuple size");
    io->add_option("--search.restarts", io_args.cfg.search.restarts, "search restarts");
    io->add_option("--search.iters", io_args.cfg.search.iters, "ascent iterations");
    io->add_option("--search.step", io_args.cfg.search.step, "initial step");
    io->add_option("--search.rademacher_tuple", io_args.cfg.rademacher_tuple,
                   "sign-average tuple budget (0 skips)");
    io->add_option("--search.chain_trials", io_args.cfg.chain_trials, "pointwise chain samples");
    io->add_option("--search.seed", io_args.cfg.seed, "experiment seed");
    auto* io_seed = io->add_option("--seed", io_args.seed_override, "seed override");
    io->add_option("--out", io_args.out, "output directory");
    io->callback([&] {
        if (!io_args.config_path.empty()) apply_experiment_config(io, io_args.config_path);
        io_args.seed_given = io_seed->count() > 0;
        rc = run_intop(io_args);
    });

    DualityArgs du_args;
    auto* du = app.add_subcommand("duality", "norming witness for an iterated-norm space");
    du->add_option("--axes", du_args.axes, "axis sizes")->delimiter(',');
    du->add_option("--q", du_args.q, "axis exponents")->delimiter(',');
    du->add_option("--seed", du_args.seed, "sample seed");
    du->add_option("--trials", du_args.trials, "Holder sampling trials");
    du->callback([&] { rc = run_duality(du_args); });

    SuiteArgs su_args;
    auto* su = app.add_subcommand("suite", "acceptance battery");
    su->add_option("--seed", su_args.seed, "battery seed");
    su->add_option("--size", su_args.size, "small|tiny");
    su->add_option("--out", su_args.out, "summary CSV path");
    su->callback([&] { rc = run_suite_cmd(su_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "weightlab: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "weightlab: %s\n", e.what());
        return 1;
    }
    return rc;
}
