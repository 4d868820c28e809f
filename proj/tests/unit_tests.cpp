#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <vector>

#include "weightlab/csv.hpp"
#include "weightlab/dualspace.hpp"
#include "weightlab/extrapolate.hpp"
#include "weightlab/intops.hpp"
#include "weightlab/kernels.hpp"
#include "weightlab/maximal.hpp"
#include "weightlab/parallel.hpp"
#include "weightlab/sampling.hpp"
#include "weightlab/sbound.hpp"
#include "weightlab/svg.hpp"
#include "weightlab/weights.hpp"

using namespace weightlab;

namespace {

// Naive interval enumeration, no prefix sums: the oracle for ap_constant.
double brute_ap(const Weight& w, double p) {
    int n = w.fn.grid.n;
    double best = 0.0;
    for (int b = 0; b < n; ++b)
        for (int e = b; e < n; ++e) {
            double sw = 0.0, sd = 0.0;
            for (int i = b; i <= e; ++i) {
                sw += w.fn.v[static_cast<size_t>(i)];
                sd += std::pow(w.fn.v[static_cast<size_t>(i)], -1.0 / (p - 1.0));
            }
            double len = e - b + 1;
            best = std::max(best, (sw / len) * std::pow(sd / len, p - 1.0));
        }
    return best;
}

// Interval averages accumulated by ascending end index: the maximal oracle.
GridFunction brute_maximal(const GridFunction& f) {
    int n = f.grid.n;
    GridFunction out(f.grid, std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int c = 0; c < n; ++c)
        for (int b = 0; b <= c; ++b) {
            double sum = 0.0;
            for (int e = b; e < n; ++e) {
                sum += std::fabs(f.v[static_cast<size_t>(e)]);
                if (e >= c)
                    out.v[static_cast<size_t>(c)] =
                        std::max(out.v[static_cast<size_t>(c)], sum / (e - b + 1));
            }
        }
    return out;
}

GridFunction random_f(Rng& rng, const Grid1D& g) { return sampling::random_signed(rng, g); }

}  // namespace

TEST_CASE("csv doubles survive a text round trip") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-7, 1e308, 4.0 / 3.0, 0.0, -0.0}) {
        CHECK(csv::parse_double(csv::format_double(x)) == x);
    }
    CHECK(csv::format_double(kInf) == "inf");
    CHECK(csv::parse_double("-inf") == -kInf);
    CHECK_THROWS(csv::format_double(std::nan("")));
    CHECK_THROWS(csv::parse_double("1.5x"));
}

TEST_CASE("csv tables reject malformed rows with a located error") {
    csv::Table t;
    t.header = {"a", "b"};
    t.add_row({"1", "2"});
    CHECK_THROWS(t.add_row({"1"}));
    try {
        csv::parse_table("a,b\n1,2\n3\n", "input");
        CHECK(false);
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
}

TEST_CASE("grid functions round trip through cell,value files") {
    Grid1D g{-0.5, 0.125, 8};
    Rng rng(5);
    GridFunction f = random_f(rng, g);
    auto path = std::filesystem::temp_directory_path() / "wl_roundtrip.csv";
    csv::write_grid_function(f, path.string(), {"note=test"});
    GridFunction back = csv::read_grid_function(path.string());
    CHECK(back.grid == f.grid);
    CHECK(back.v == f.v);
    std::filesystem::remove(path);
}

TEST_CASE("svg rendering is deterministic and rejects empty input") {
    svg::Series s{"r", {{0.0, 1.0}, {1.0, 2.0}, {2.0, 1.5}}};
    std::string a = svg::render_plot({s}, "t", "x", "y");
    std::string b = svg::render_plot({s}, "t", "x", "y");
    CHECK(a == b);
    CHECK(a.find("<polyline") != std::string::npos);
    CHECK_THROWS(svg::render_plot({}, "t", "x", "y"));
}

TEST_CASE("two-cell weight has constant 9/8 on the full interval") {
    Grid1D g{0.0, 0.5, 2};
    Weight w = make_weight(GridFunction(g, {2.0, 1.0}));
    auto rep = weights::ap_constant(w, 2.0);
    CHECK(rep.constant == doctest::Approx(1.125).epsilon(1e-15));
    CHECK(rep.witness_begin == 0);
    CHECK(rep.witness_end == 1);
}

TEST_CASE("prefix-sum constant equals naive interval enumeration") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Grid1D g{-1.0, 2.0 / 24.0, 24};
        Weight w = sampling::random_weight(rng, g);
        for (double p : {1.5, 2.0, 3.0}) {
            double lib = weights::ap_constant(w, p).constant;
            CHECK(lib == doctest::Approx(brute_ap(w, p)).epsilon(1e-12));
        }
    }
}

TEST_CASE("dual weight constant is the 1/(p-1) power") {
    Rng rng(12);
    Grid1D g{0.0, 1.0 / 16.0, 16};
    for (int trial = 0; trial < 10; ++trial) {
        Weight w = sampling::random_weight(rng, g);
        for (double p : {1.5, 2.0, 3.0}) {
            double primal = weights::ap_constant(w, p).constant;
            double dual = weights::ap_constant(weights::dual_weight(w, p),
                                               conjugate_exponent(p))
                              .constant;
            CHECK(dual == doctest::Approx(std::pow(primal, 1.0 / (p - 1.0))).epsilon(1e-12));
        }
    }
}

TEST_CASE("openness keeps the constant within budget below p") {
    Rng rng(13);
    Grid1D g{-0.5, 1.0 / 12.0, 12};
    Weight w = sampling::random_weight(rng, g);
    double p = 2.0, budget = 4.0;
    double eps_p = weights::openness_exponent(w, p, budget);
    CHECK(eps_p < p);
    CHECK(weights::ap_constant(w, eps_p).constant <=
          budget * weights::ap_constant(w, p).constant * (1 + 1e-12));
}

TEST_CASE("maximal function of the unit spike") {
    GridFunction f(Grid1D{0.0, 0.25, 4}, {0.0, 4.0, 0.0, 0.0});
    GridFunction mf = maximal::maximal_function(f);
    CHECK(mf.v == std::vector<double>{2.0, 4.0, 2.0, 4.0 / 3.0});
    auto wit = maximal::maximal_witness(f, 3);
    CHECK(wit.begin == 1);
    CHECK(wit.end == 3);
    CHECK(wit.average == 4.0 / 3.0);
}

TEST_CASE("prefix-sum maximal equals the triple-loop oracle bit for bit") {
    Rng rng(21);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 4 + rng.uniform_int(61);
        Grid1D g{-0.5, 1.0 / n, n};
        GridFunction f = random_f(rng, g);
        GridFunction a = maximal::maximal_function(f);
        GridFunction b = brute_maximal(f);
        for (int i = 0; i < n; ++i)
            CHECK(a.v[static_cast<size_t>(i)] == b.v[static_cast<size_t>(i)]);
    }
}

TEST_CASE("maximal operator is sublinear and monotone") {
    Rng rng(22);
    Grid1D g{0.0, 1.0 / 32.0, 32};
    GridFunction f = random_f(rng, g), h = random_f(rng, g);
    std::vector<double> sv(32);
    for (size_t i = 0; i < 32; ++i) sv[i] = f.v[i] + h.v[i];
    GridFunction sum(g, sv);
    GridFunction mf = maximal::maximal_function(f);
    GridFunction mh = maximal::maximal_function(h);
    GridFunction ms = maximal::maximal_function(sum);
    for (size_t i = 0; i < 32; ++i) {
        CHECK(ms.v[i] <= mf.v[i] + mh.v[i] + 1e-12);
        CHECK(mf.v[i] >= 0.0);
    }
}

TEST_CASE("fiberwise maximal applies the scalar operator per slot") {
    MixedSpace space({MeasuredAxis::counting(3)}, {2.0});
    Grid1D g{0.0, 0.25, 4};
    Rng rng(23);
    std::vector<double> v(12);
    for (double& x : v) x = rng.normal();
    LatticeFunction F(g, space, v);
    LatticeFunction MF = maximal::lattice_maximal(F);
    for (int slot = 0; slot < 3; ++slot) {
        std::vector<double> col(4);
        for (int t = 0; t < 4; ++t) col[static_cast<size_t>(t)] = F.fiber(t)[slot];
        GridFunction m = maximal::maximal_function(GridFunction(g, col));
        for (int t = 0; t < 4; ++t)
            CHECK(MF.fiber(t)[slot] == m.v[static_cast<size_t>(t)]);
    }
}

TEST_CASE("maximal norm estimate reproduces its witness ratio") {
    Grid1D g{-0.5, 1.0 / 16.0, 16};
    Weight w = weights::power_weight(0.3, g);
    auto est = maximal::maximal_norm_lower(2.0, w, 8, 3);
    double num = weighted_lp_norm(maximal::maximal_function(est.witness), 2.0, w);
    double den = weighted_lp_norm(est.witness, 2.0, w);
    CHECK(est.lower_bound == doctest::Approx(num / den).epsilon(1e-12));
    CHECK(est.lower_bound >= 1.0);
}

TEST_CASE("hand-checked mixed norms") {
    MixedSpace one({MeasuredAxis::counting(4)}, {2.0});
    std::vector<double> f{1.0, 2.0, 3.0, 4.0};
    CHECK(mixed_norm_flat(f, one) == doctest::Approx(std::sqrt(30.0)).epsilon(1e-15));

    // ones on a 2x2 lattice with exponents (3/2, 3): inner reduce 2^{1/3}
    // per row, outer reduce (2 * 2^{1/2})^{2/3} = 2.
    MixedSpace two({MeasuredAxis::counting(2), MeasuredAxis::counting(2)}, {1.5, 3.0});
    std::vector<double> ones{1.0, 1.0, 1.0, 1.0};
    CHECK(mixed_norm_flat(ones, two) == doctest::Approx(2.0).epsilon(1e-14));

    MixedSpace zero({}, {});
    CHECK(mixed_norm_flat(std::vector<double>{-2.5}, zero) == 2.5);
}

TEST_CASE("tuple norms collapse correctly at the ends") {
    MixedSpace space({MeasuredAxis::counting(3)}, {2.0});
    std::vector<double> f{1.0, 2.0, 2.0};
    std::vector<std::vector<double>> pair{f, f};
    CHECK(tuple_norm_flat(pair, 1.0, space) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(tuple_norm_flat(pair, kInf, space) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(tuple_norm_flat(pair, 2.0, space) ==
          doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("catalog kernels are certified and the doubled gaussian is refuted") {
    Grid1D g{-1.0, 1.0 / 32.0, 64};
    kernels::CatalogParams prm{0.02, 8.0, 2, std::nullopt};
    for (const char* name : {"gaussian", "box", "exponential", "one_sided_exponential"}) {
        kernels::Kernel k = kernels::catalog(name, prm, g);
        CHECK(k.mass_l1() <= 1.0 + 1e-9);
        auto verdict = kernels::in_class_k(k, 64, 9);
        CHECK(verdict.status == kernels::Membership::certified);
    }
    kernels::Kernel big = kernels::catalog("gaussian", prm, g);
    for (double& x : big.v) x *= 2.0;
    auto verdict = kernels::in_class_k(big, 64, 9);
    REQUIRE(verdict.status == kernels::Membership::refuted);
    REQUIRE(verdict.counterexample.has_value());
    // the reported witness must actually violate |k|*f <= Mf
    GridFunction conv = kernels::convolve(big, *verdict.counterexample);
    GridFunction mf = maximal::maximal_function(*verdict.counterexample);
    int c = verdict.violation_cell;
    CHECK(conv.v[static_cast<size_t>(c)] - mf.v[static_cast<size_t>(c)] ==
          doctest::Approx(verdict.violation_excess).epsilon(1e-12));
    CHECK(verdict.violation_excess > 0.0);
}

TEST_CASE("certified kernels are dominated by the maximal function") {
    Grid1D g{-1.0, 1.0 / 32.0, 64};
    kernels::Kernel k = kernels::catalog("box", kernels::CatalogParams{0.0, 0.0, 3, {}}, g);
    Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        GridFunction f = sampling::random_nonneg(rng, g);
        GridFunction conv = kernels::convolve(k, f);
        GridFunction mf = maximal::maximal_function(f);
        for (int i = 0; i < g.n; ++i)
            CHECK(conv.v[static_cast<size_t>(i)] <= mf.v[static_cast<size_t>(i)] + 1e-12);
    }
}

TEST_CASE("reflection preserves class membership") {
    Grid1D g{-1.0, 1.0 / 16.0, 32};
    kernels::Kernel k =
        kernels::catalog("one_sided_exponential", kernels::CatalogParams{0.0, 6.0, 0, {}}, g);
    kernels::Kernel r = k.reflected();
    CHECK(kernels::in_class_k(k, 32, 5).status == kernels::Membership::certified);
    CHECK(kernels::in_class_k(r, 32, 5).status == kernels::Membership::certified);
    CHECK(r.mass_l1() == doctest::Approx(k.mass_l1()).epsilon(1e-14));
}

TEST_CASE("convolution respects the L1 endpoint of Young's inequality") {
    Grid1D g{-1.0, 1.0 / 16.0, 32};
    kernels::Kernel k = kernels::catalog("gaussian", kernels::CatalogParams{0.05, 0, 0, {}}, g);
    Rng rng(32);
    GridFunction f = sampling::random_nonneg(rng, g);
    double lhs = 0.0, rhs_f = 0.0;
    GridFunction conv = kernels::convolve(k, f);
    for (double x : conv.v) lhs += std::fabs(x) * g.h;
    for (double x : f.v) rhs_f += std::fabs(x) * g.h;
    CHECK(lhs <= k.mass_l1() * rhs_f + 1e-12);
}

TEST_CASE("identity-swap family has the closed-form vee") {
    MixedSpace space({MeasuredAxis::counting(2)}, {2.0});
    sbound::Matrix swap(2, 2);
    swap.at(0, 1) = 1.0;
    swap.at(1, 0) = 1.0;
    auto fam = sbound::make_family(space, {sbound::Matrix::identity(2), swap},
                                   sbound::StructureTag::weighted_composition);
    auto value = [](double s) { return std::pow(2.0, std::fabs(1.0 / s - 0.5)); };
    for (double s : {1.0, 2.0, 4.0, kInf}) {
        double expect = s == kInf ? std::sqrt(2.0) : value(s);
        CHECK(sbound::exact_ls_bound_structured(fam, s) ==
              doctest::Approx(expect).epsilon(1e-12));
        auto est = sbound::estimate_ls_bound(fam, s, sbound::SearchOptions{3, 12, 80, 0.1, 5});
        CHECK(est.lower >= 0.9 * expect);
        CHECK(est.lower <= expect * (1 + 1e-9));
        REQUIRE(est.upper.has_value());
        CHECK(est.lower <= est.upper->value * (1 + 1e-9));
    }
}

TEST_CASE("search ratios scale exactly with a scalar factor") {
    MixedSpace space({MeasuredAxis::counting(3)}, {2.0});
    std::vector<double> d{0.5, 1.25, 2.0};
    auto one = sbound::make_family(space, {sbound::Matrix::diagonal(d)},
                                   sbound::StructureTag::multiplication);
    std::vector<double> d3 = d;
    for (double& x : d3) x *= 3.0;
    auto three = sbound::make_family(space, {sbound::Matrix::diagonal(d3)},
                                     sbound::StructureTag::multiplication);
    sbound::SearchOptions opts{2, 6, 40, 0.1, 7};
    double a = sbound::estimate_ls_bound(one, 1.5, opts).lower;
    double b = sbound::estimate_ls_bound(three, 1.5, opts).lower;
    CHECK(b == doctest::Approx(3.0 * a).epsilon(1e-12));
    CHECK(sbound::exact_ls_bound_structured(three, 1.5) ==
          doctest::Approx(3.0 * sbound::exact_ls_bound_structured(one, 1.5)).epsilon(1e-15));
}

TEST_CASE("adjoint transport stays under the conjugate certificates") {
    Rng rng(41);
    MixedSpace space({MeasuredAxis(std::vector<double>{0.5, 1.0, 2.0})}, {3.0});
    std::vector<sbound::Matrix> ms;
    for (int j = 0; j < 2; ++j) {
        std::vector<double> d(3);
        for (double& x : d) x = rng.uniform(0.25, 2.0);
        ms.push_back(sbound::Matrix::diagonal(d));
    }
    auto fam = sbound::make_family(space, std::move(ms), sbound::StructureTag::multiplication);
    auto adj = sbound::adjoint_family(fam);
    for (double s : {1.25, 2.0, 4.0}) {
        double here = sbound::exact_ls_bound_structured(fam, s);
        double there = sbound::exact_ls_bound_structured(adj, conjugate_exponent(s));
        CHECK(here == doctest::Approx(there).epsilon(1e-12));
    }
}

TEST_CASE("ls_ratio never exceeds the certified upper bound") {
    Rng rng(42);
    MixedSpace space({MeasuredAxis::counting(3)}, {2.0});
    sbound::Matrix m(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.at(i, j) = rng.uniform(-1.0, 1.0);
    auto fam = sbound::make_family(space, {m}, sbound::StructureTag::generic);
    auto est = sbound::estimate_ls_bound(fam, 2.0, sbound::SearchOptions{2, 6, 50, 0.1, 1});
    REQUIRE(est.upper.has_value());
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<double>> xs(2, std::vector<double>(3));
        for (auto& x : xs)
            for (double& v : x) v = rng.normal();
        std::vector<int> assign{0, 0};
        CHECK(sbound::ls_ratio(fam, assign, xs, 2.0) <= est.upper->value * (1 + 1e-9));
    }
}

TEST_CASE("rdf iteration dominates, stays bounded, and leaves a small tail") {
    Rng rng(51);
    Grid1D g{-0.5, 1.0 / 24.0, 24};
    for (int trial = 0; trial < 5; ++trial) {
        Weight w = sampling::random_weight(rng, g);
        GridFunction u = sampling::random_nonneg(rng, g);
        auto res = extrapolate::rdf_iterate(u, 2.0, w, 16);
        for (int i = 0; i < g.n; ++i)
            CHECK(res.output.v[static_cast<size_t>(i)] >= u.v[static_cast<size_t>(i)]);
        CHECK(res.norm_ratio <= 2.0 + 1e-9);
        CHECK(res.tail_relative < 1e-6);
    }
}

TEST_CASE("domination weight round trip") {
    Rng rng(52);
    MixedSpace space({MeasuredAxis::counting(4)}, {3.0});
    std::vector<double> d(4);
    for (double& x : d) x = rng.uniform(0.25, 2.0);
    auto fam = sbound::make_family(space, {sbound::Matrix::diagonal(d)},
                                   sbound::StructureTag::multiplication);
    std::vector<double> u(4);
    for (double& x : u) x = rng.uniform(0.2, 2.0);
    double s = 1.5;
    auto upper = extrapolate::dominating_weight_structured(u, fam, s);
    auto rep = extrapolate::verify_domination(upper, u, fam, s, 40, 7);
    CHECK(rep.pass);
    CHECK(rep.norm_upper <= rep.norm_u * (1 + 1e-9));
}

TEST_CASE("scalar extrapolation transports the maximal-function inequality") {
    auto rep = [] {
        Grid1D grid{-0.5, 1.0 / 16.0, 16};
        std::vector<Weight> ws;
        for (double a : {0.0, 0.4}) ws.push_back(weights::power_weight(a, grid));
        extrapolate::PairGenerator gen = [grid](Rng& r) {
            GridFunction g = sampling::random_nonneg(r, grid);
            return std::make_pair(maximal::maximal_function(g), g);
        };
        return extrapolate::verify_extrapolation_pair(gen, 2.0, {1.5, 3.0}, ws, 8, 7);
    }();
    CHECK(rep.verdict);
    for (const auto& t : rep.targets) {
        CHECK(t.pass);
        for (size_t i = 1; i < t.envelope.y.size(); ++i)
            CHECK(t.envelope.y[i] >= t.envelope.y[i - 1]);
    }
}

TEST_CASE("norming witness attains the dual norm with equality") {
    Rng rng(61);
    MixedSpace space({MeasuredAxis::counting(4), MeasuredAxis::counting(3)}, {1.5, 4.0});
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> g(12);
        for (double& x : g) x = rng.normal();
        auto wit = dualspace::norming_function(g, space);
        double prod = wit.f_norm * wit.g_dual_norm;
        CHECK(std::fabs(wit.pairing_value - prod) <= 1e-10 * std::max(1.0, prod));
        auto rep = dualspace::verify_duality_pairing(g, space, 40, rng.next());
        CHECK(rep.holder_ok);
    }
}

TEST_CASE("tuple exponent comparisons are exact on identical entries") {
    MixedSpace space({MeasuredAxis::counting(3)}, {2.5});
    auto rep = dualspace::tuple_duality_constants(space, 4, 2.0, 60, 13);
    CHECK(rep.chain_ok);
    CHECK(rep.identical_ratio_1_r ==
          doctest::Approx(rep.identical_expected_1_r).epsilon(1e-12));
    CHECK(rep.identical_ratio_r_inf ==
          doctest::Approx(rep.identical_expected_r_inf).epsilon(1e-12));
    CHECK(rep.disjoint_ratio_r_inf == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("heat family is a consistent positive semigroup") {
    Grid1D space_grid{0.0, 0.125, 8};
    auto fam = intops::heat_evolution_family(space_grid, 2.0, 1e-3, 12);
    auto t84 = fam.evaluator(8, 4), t40 = fam.evaluator(4, 0), t80 = fam.evaluator(8, 0);
    // two-parameter consistency T(8,4) T(4,0) = T(8,0)
    for (int j = 0; j < 8; ++j) {
        std::vector<double> e(8, 0.0), mid(8), out(8);
        e[static_cast<size_t>(j)] = 1.0;
        t40.apply(e, mid);
        t84.apply(mid, out);
        for (int i = 0; i < 8; ++i)
            CHECK(out[static_cast<size_t>(i)] ==
                  doctest::Approx(t80.at(i, j)).epsilon(1e-8));
    }
    auto id = fam.evaluator(5, 5);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) CHECK(id.at(i, j) == (i == j ? 1.0 : 0.0));
    for (int i = 0; i < 8; ++i) {
        double row = 0.0;
        for (int j = 0; j < 8; ++j) {
            CHECK(t80.at(i, j) >= 0.0);
            row += t80.at(i, j);
        }
        CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("integral operator under the identity family is a fiberwise convolution") {
    Grid1D time{0.0, 1.0 / 16.0, 16};
    MixedSpace space({MeasuredAxis::counting(2)}, {2.0});
    auto fam = intops::identity_family(space, 16);
    Grid1D kgrid{-0.5, 1.0 / 16.0, 16};
    kernels::Kernel k = kernels::catalog("gaussian", kernels::CatalogParams{0.01, 0, 0, {}}, kgrid);
    auto op = intops::make_integral_operator(k, fam, time);

    Rng rng(71);
    std::vector<double> v(32);
    for (double& x : v) x = rng.normal();
    LatticeFunction f(time, space, v);
    LatticeFunction out = intops::apply_integral_operator(op, f);
    for (int slot = 0; slot < 2; ++slot) {
        std::vector<double> col(16);
        for (int t = 0; t < 16; ++t) col[static_cast<size_t>(t)] = f.fiber(t)[slot];
        GridFunction conv = kernels::convolve(k, GridFunction(time, col));
        for (int t = 0; t < 16; ++t)
            CHECK(out.fiber(t)[slot] == doctest::Approx(conv.v[static_cast<size_t>(t)])
                                            .epsilon(1e-12));
    }
}

TEST_CASE("extension-restriction round trips on the full cell set") {
    sbound::Matrix t(3, 3);
    Rng rng(72);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t.at(i, j) = rng.normal();
    std::vector<int> all{0, 1, 2};
    auto round = intops::extend_restrict(t, all, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(round.at(i, j) == t.at(i, j));
    std::vector<int> sub{1};
    auto projected = intops::extend_restrict(sbound::Matrix::identity(1), sub, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(projected.at(i, j) == ((i == 1 && j == 1) ? 1.0 : 0.0));
}

TEST_CASE("pointwise chain holds for a certified kernel over the heat family") {
    Grid1D time{0.0, 1.0 / 12.0, 12};
    Grid1D sgrid{0.0, 0.25, 4};
    auto fam = intops::heat_evolution_family(sgrid, 2.0, 1e-3, 12);
    Grid1D kgrid{-0.5, 1.0 / 12.0, 12};
    kernels::Kernel k = kernels::catalog("box", kernels::CatalogParams{0, 0, 2, {}}, kgrid);
    auto op = intops::make_integral_operator(k, fam, time);
    Weight v = weights::power_weight(0.3, time);
    auto rep = intops::uniform_bound_check(op, 2.0, v, 6, 9);
    CHECK(rep.pass);
    CHECK(rep.worst_pointwise_a <= 1e-9);
    CHECK(rep.worst_pointwise_b <= 1e-9);
}

TEST_CASE("thread cap does not change results") {
    Rng rng(81);
    MixedSpace space({MeasuredAxis::counting(3)}, {2.0});
    Grid1D g{0.0, 1.0 / 48.0, 48};
    std::vector<double> v(48 * 3);
    for (double& x : v) x = rng.normal();
    LatticeFunction F(g, space, v);
    set_thread_override(1);
    LatticeFunction a = maximal::lattice_maximal(F);
    set_thread_override(3);
    LatticeFunction b = maximal::lattice_maximal(F);
    set_thread_override(0);
    CHECK(a.v == b.v);
}

TEST_CASE("seeded samplers produce valid inputs") {
    Rng rng(91);
    Grid1D g{-0.5, 1.0 / 20.0, 20};
    for (int trial = 0; trial < 10; ++trial) {
        Weight w = sampling::random_weight(rng, g);
        for (double x : w.fn.v) {
            CHECK(x > 0.0);
            CHECK(std::isfinite(x));
        }
        GridFunction f = sampling::random_nonneg(rng, g);
        for (double x : f.v) CHECK(x >= 0.0);
    }
    Rng a(7), b(7);
    CHECK(a.next() == b.next());
    CHECK(a.fork(1).next() != a.fork(2).next());
}
