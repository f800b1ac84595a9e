#include <catch2/catch.hpp>

#include <cmath>
#include <random>

#include "genvar/variation.hpp"
#include "genvar/variation_multi.hpp"
#include "oracles.hpp"

using namespace genvar;

namespace {

GridFunction random_samples(std::mt19937_64& rng, std::vector<int> grid) {
    std::size_t total = 1;
    for (int g : grid) total *= g;
    std::vector<double> vals(total);
    for (auto& v : vals) v = (rng() >> 11) * (1.0 / 9007199254740992.0) * 2.0 - 1.0;
    return GridFunction::from_samples(
        uniform_axes(std::span<const int>(grid.data(), grid.size())), std::move(vals));
}

double reeval(const GridFunction& f, const VariationResult& r, const LambdaSeq& seq) {
    const LambdaSeq* p = &seq;
    return reevaluate_certificate(f, r.cert, std::span<const LambdaSeq* const>(&p, 1));
}

} // namespace

TEST_CASE("optimal pairing equals the brute-force permutation maximum", "[pairing]") {
    auto harmonic = make_lambda(LambdaKind::Harmonic);
    SECTION("worked example") {
        std::vector<double> mags{3.0, 1.0, 2.0};
        CHECK(optimal_pairing_value(mags, harmonic) == Approx(3.0 + 1.0 + 1.0 / 3.0));
        CHECK(optimal_pairing_value(mags, harmonic) == oracles::brute_pairing(mags, harmonic));
    }
    SECTION("single element") {
        auto seq = LambdaSeq::from_list({2.0, 5.0});
        std::vector<double> mags{5.0};
        CHECK(optimal_pairing_value(mags, seq) == 2.5);
    }
    SECTION("all zeros") {
        std::vector<double> mags{0.0, 0.0, 0.0};
        CHECK(optimal_pairing_value(mags, harmonic) == 0.0);
    }
    SECTION("negative magnitudes are rejected") {
        std::vector<double> mags{1.0, -1.0};
        CHECK_THROWS_AS(optimal_pairing_value(mags, harmonic), std::invalid_argument);
    }
    SECTION("random multisets, three weight sequences") {
        auto pow05 = make_lambda(LambdaKind::Power, {0.5, 1.0});
        auto nlog = make_lambda(LambdaKind::NOverLogPow, {1.0, 1.0});
        const LambdaSeq* seqs[3] = {&harmonic, &pow05, &nlog};
        std::mt19937_64 rng(4242);
        for (int c = 0; c < 200; ++c) {
            std::size_t size = 1 + rng() % 7;
            std::vector<double> mags(size);
            for (auto& m : mags) m = (rng() >> 11) * (10.0 / 9007199254740992.0);
            const auto& seq = *seqs[c % 3];
            CHECK(optimal_pairing_value(mags, seq) == oracles::brute_pairing(mags, seq));
        }
    }
}

TEST_CASE("interval enumeration counts and disjointness", "[pairing]") {
    // On g points the disjoint-closure collections number 2^{g-1}.
    for (int g : {2, 4, 6, 8}) {
        std::size_t count = 0;
        for_each_disjoint_selection(g, [&](const std::vector<Interval>& sel) {
            ++count;
            for (std::size_t i = 1; i < sel.size(); ++i) CHECK(sel[i].a > sel[i - 1].b);
        });
        CHECK(count == (1u << (g - 1)));
    }
}

TEST_CASE("sign_diag catalog values", "[variation]") {
    auto harmonic = make_lambda(LambdaKind::Harmonic);
    SECTION("fixed axis variation on 8x8 is a single jump of 2") {
        auto f = make_catalog("sign_diag", {8, 8});
        auto r0 = axis_lambda_variation(f, 0, harmonic, Mode::Fixed, Method::Exhaustive);
        auto r1 = axis_lambda_variation(f, 1, harmonic, Mode::Fixed, Method::Exhaustive);
        CHECK(r0.value == 2.0);
        CHECK(r1.value == 2.0);
        CHECK(r0.bound == BoundKind::Exact);
        CHECK(reeval(f, r0, harmonic) == Approx(r0.value).epsilon(1e-12));
    }
    SECTION("sharp axis variation on 4x4 is two staggered jump intervals") {
        auto f = make_catalog("sign_diag", {4, 4});
        auto r = axis_lambda_variation(f, 0, harmonic, Mode::Sharp, Method::Exhaustive);
        CHECK(r.value == 3.0);  // 2/1 + 2/2
        CHECK(r.cert.intervals[0].size() == 2);
        CHECK(reeval(f, r, harmonic) == Approx(3.0).epsilon(1e-12));
    }
    SECTION("constant function has zero variation in both modes") {
        auto c = make_trig_poly({{{0, 0, 0}, 2.5}}, 2, uniform_axes({6, 6}));
        for (Mode m : {Mode::Fixed, Mode::Sharp}) {
            CHECK(axis_lambda_variation(c, 0, harmonic, m, Method::Exhaustive).value == 0.0);
            CHECK(axis_lambda_variation(c, 0, harmonic, m, Method::Greedy).value == 0.0);
        }
    }
}

TEST_CASE("exhaustive axis variation matches the brute-force oracle", "[variation][oracle]") {
    auto harmonic = make_lambda(LambdaKind::Harmonic);
    auto nlog = make_lambda(LambdaKind::NOverLogPow, {1.0, 1.0});
    std::mt19937_64 rng(99);
    for (int c = 0; c < 40; ++c) {
        auto f = random_samples(rng, {6, 6});
        const LambdaSeq& seq = (c % 2 == 0) ? harmonic : nlog;
        for (Mode mode : {Mode::Fixed, Mode::Sharp}) {
            auto r = axis_lambda_variation(f, 0, seq, mode, Method::Exhaustive);
            double brute = oracles::brute_axis_variation(f, 0, seq, mode == Mode::Sharp);
            CHECK(r.value == Approx(brute).epsilon(1e-12));
        }
    }
    // Catalog functions exercise the midpoint candidates.
    auto f = make_catalog("sign_diag", {4, 4});
    auto r = axis_lambda_variation(f, 0, harmonic, Mode::Sharp, Method::Exhaustive);
    CHECK(r.value == Approx(oracles::brute_axis_variation(f, 0, harmonic, true)));

    // 3-d sharp axis variation: per-interval points range over a 2-d tuple set.
    std::mt19937_64 rng3(17);
    for (int c = 0; c < 5; ++c) {
        auto g3 = random_samples(rng3, {4, 4, 4});
        for (int axis = 0; axis < 3; ++axis) {
            auto s = axis_lambda_variation(g3, axis, harmonic, Mode::Sharp, Method::Exhaustive);
            CHECK(s.value ==
                  Approx(oracles::brute_axis_variation(g3, axis, harmonic, true)).epsilon(1e-12));
            auto fx = axis_lambda_variation(g3, axis, harmonic, Mode::Fixed, Method::Exhaustive);
            CHECK(fx.value <= s.value);
        }
    }
    auto cube = make_separable({"square_wave_1d", "square_wave_1d", "square_wave_1d"},
                               uniform_axes({4, 4, 4}));
    auto sc = axis_lambda_variation(cube, 0, harmonic, Mode::Sharp, Method::Exhaustive);
    CHECK(sc.value == Approx(oracles::brute_axis_variation(cube, 0, harmonic, true)));
}

TEST_CASE("greedy is a certified lower bound", "[variation]") {
    auto harmonic = make_lambda(LambdaKind::Harmonic);
    auto pow05 = make_lambda(LambdaKind::Power, {0.5, 1.0});
    auto nlog = make_lambda(LambdaKind::NOverLogPow, {1.0, 1.0});
    const LambdaSeq* seqs[3] = {&harmonic, &pow05, &nlog};
    std::mt19937_64 rng(2024);
    int equal = 0, total = 0;
    for (int c = 0; c < 200; ++c) {
        auto f = random_samples(rng, {6, 6});
        const LambdaSeq& seq = *seqs[c % 3];
        for (Mode mode : {Mode::Fixed, Mode::Sharp}) {
            auto ex = axis_lambda_variation(f, 0, seq, mode, Method::Exhaustive);
            auto gr = axis_lambda_variation(f, 0, seq, mode, Method::Greedy);
            REQUIRE(gr.value <= ex.value);
            CHECK(gr.bound == BoundKind::LowerBound);
            CHECK(reeval(f, ex, seq) == Approx(ex.value).epsilon(1e-12));
            CHECK(reeval(f, gr, seq) == Approx(gr.value).epsilon(1e-12));
            if (gr.value == ex.value) ++equal;
            ++total;
        }
    }
    INFO("greedy matched exhaustive on " << equal << "/" << total);
    CHECK(equal > 0);
}

TEST_CASE("order and scaling invariants", "[variation]") {
    auto harmonic = make_lambda(LambdaKind::Harmonic);
    auto pow05 = make_lambda(LambdaKind::Power, {0.5, 1.0});
    std::mt19937_64 rng(555);
    for (int c = 0; c < 60; ++c) {
        auto f = random_samples(rng, {6, 6});
        auto fixed = axis_lambda_variation(f, 0, harmonic, Mode::Fixed, Method::Exhaustive);
        auto sharp = axis_lambda_variation(f, 0, harmonic, Mode::Sharp, Method::Exhaustive);
        CHECK(fixed.value <= sharp.value);
        // Pointwise smaller weights can only increase the functional.
        auto small = axis_lambda_variation(f, 0, pow05, Mode::Fixed, Method::Exhaustive);
        CHECK(small.value >= fixed.value);
        // Homogeneity: scaling by a power of two is exact in floating point.
        auto doubled = axis_lambda_variation(f.scaled(2.0), 0, harmonic, Mode::Fixed,
                                             Method::Exhaustive);
        CHECK(doubled.value == 2.0 * fixed.value);
        // Translation invariance.
        auto shifted = axis_lambda_variation(f.plus_const(0.7), 0, harmonic, Mode::Fixed,
                                             Method::Exhaustive);
        CHECK(shifted.value == Approx(fixed.value).epsilon(1e-12));
    }
}

TEST_CASE("grid refinement monotonicity", "[variation]") {
    auto harmonic = make_lambda(LambdaKind::Harmonic);
    std::mt19937_64 rng(31);
    for (int c = 0; c < 30; ++c) {
        auto fine = random_samples(rng, {8});
        // Restrict to the even-index sub-grid.
        std::vector<double> coarse_vals;
        for (int i = 0; i < 8; i += 2) coarse_vals.push_back(fine.at({i}));
        auto coarse = GridFunction::from_samples(uniform_axes({4}), coarse_vals);
        auto vf = axis_lambda_variation(fine, 0, harmonic, Mode::Fixed, Method::Exhaustive);
        auto vc = axis_lambda_variation(coarse, 0, harmonic, Mode::Fixed, Method::Exhaustive);
        CHECK(vc.value <= vf.value + 1e-15);
    }
}

TEST_CASE("mixed variation", "[variation]") {
    auto harmonic = make_lambda(LambdaKind::Harmonic);
    const LambdaSeq* hh[2] = {&harmonic, &harmonic};
    SECTION("additive functions vanish") {
        std::vector<double> vals(36);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) vals[i * 6 + j] = std::sin(i) + 2.0 * j;
        auto f = GridFunction::from_samples(uniform_axes({6, 6}), vals);
        auto r = mixed_lambda_variation(f, std::span<const LambdaSeq* const>(hh, 2),
                                        Method::Exhaustive);
        CHECK(r.value == Approx(0.0).margin(1e-12));
    }
    SECTION("separable steps with one jump of 2 per factor give 2 x 2") {
        auto f = make_separable({"step_1d", "step_1d"}, uniform_axes({6, 6}), 2.0);
        auto r = mixed_lambda_variation(f, std::span<const LambdaSeq* const>(hh, 2),
                                        Method::Exhaustive);
        CHECK(r.value == Approx(4.0));
        CHECK(reevaluate_certificate(f, r.cert, std::span<const LambdaSeq* const>(hh, 2)) ==
              Approx(4.0).epsilon(1e-12));
    }
    SECTION("separable square waves factorize into their 1-d axis values") {
        auto f = make_separable({"square_wave_1d", "square_wave_1d"}, uniform_axes({6, 6}));
        auto g = make_catalog("square_wave_1d", {6});
        auto r = mixed_lambda_variation(f, std::span<const LambdaSeq* const>(hh, 2),
                                        Method::Exhaustive);
        auto vg = axis_lambda_variation(g, 0, harmonic, Mode::Fixed, Method::Exhaustive);
        CHECK(vg.value == Approx(2.5));  // jump of 2 plus a unit rise at weight 2
        CHECK(r.value == Approx(vg.value * vg.value).epsilon(1e-12));
    }
    SECTION("exhaustive matches the permutation-complete oracle") {
        auto nlog = make_lambda(LambdaKind::NOverLogPow, {1.0, 1.0});
        std::mt19937_64 rng(7177);
        for (int c = 0; c < 12; ++c) {
            auto f = random_samples(rng, {4, 4});
            const LambdaSeq& sy = (c % 2 == 0) ? harmonic : nlog;
            const LambdaSeq* pair[2] = {&harmonic, &sy};
            auto r = mixed_lambda_variation(f, std::span<const LambdaSeq* const>(pair, 2),
                                            Method::Exhaustive);
            CHECK(r.value == Approx(oracles::brute_mixed_2d(f, harmonic, sy)).epsilon(1e-12));
        }
    }
    SECTION("greedy mixed stays below exhaustive") {
        std::mt19937_64 rng(808);
        for (int c = 0; c < 25; ++c) {
            auto f = random_samples(rng, {5, 5});
            auto ex = mixed_lambda_variation(f, std::span<const LambdaSeq* const>(hh, 2),
                                             Method::Exhaustive);
            auto gr = mixed_lambda_variation(f, std::span<const LambdaSeq* const>(hh, 2),
                                             Method::Greedy);
            CHECK(gr.value <= ex.value + 1e-12);
        }
    }
    SECTION("separable factorization against axis values of the factors") {
        std::mt19937_64 rng(606);
        for (int c = 0; c < 15; ++c) {
            auto g = random_samples(rng, {5});
            auto h = random_samples(rng, {5});
            std::vector<double> prod(25);
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j) prod[i * 5 + j] = g.at({i}) * h.at({j});
            auto f = GridFunction::from_samples(uniform_axes({5, 5}), prod);
            auto r = mixed_lambda_variation(f, std::span<const LambdaSeq* const>(hh, 2),
                                            Method::Exhaustive);
            auto vg = axis_lambda_variation(g, 0, harmonic, Mode::Fixed, Method::Exhaustive);
            auto vh = axis_lambda_variation(h, 0, harmonic, Mode::Fixed, Method::Exhaustive);
            CHECK(r.value == Approx(vg.value * vh.value).epsilon(1e-10));
        }
    }
}

TEST_CASE("composite variation", "[variation]") {
    auto harmonic = make_lambda(LambdaKind::Harmonic);
    SECTION("partial variation of sign_diag is 4") {
        auto f = make_catalog("sign_diag", {8, 8});
        const LambdaSeq* hh[2] = {&harmonic, &harmonic};
        auto r = composite_variation(f, std::span<const LambdaSeq* const>(hh, 2),
                                     CompositeKind::Partial, {}, Method::Exhaustive);
        CHECK(r.value == 4.0);
        CHECK(r.bound == BoundKind::Exact);
    }
    SECTION("total variation of a constant is 0") {
        auto c = make_trig_poly({{{0, 0, 0}, 1.0}}, 2, uniform_axes({4, 4}));
        const LambdaSeq* hh[2] = {&harmonic, &harmonic};
        auto r = composite_variation(c, std::span<const LambdaSeq* const>(hh, 2),
                                     CompositeKind::Total, {}, Method::Exhaustive);
        CHECK(r.value == 0.0);
    }
    SECTION("total variation on the plane sums the three constituents") {
        std::mt19937_64 rng(12);
        auto f = random_samples(rng, {5, 5});
        const LambdaSeq* hh[2] = {&harmonic, &harmonic};
        auto total = composite_variation(f, std::span<const LambdaSeq* const>(hh, 2),
                                         CompositeKind::Total, {}, Method::Exhaustive);
        auto v1 = axis_lambda_variation(f, 0, harmonic, Mode::Fixed, Method::Exhaustive);
        auto v2 = axis_lambda_variation(f, 1, harmonic, Mode::Fixed, Method::Exhaustive);
        auto v12 = mixed_lambda_variation(f, std::span<const LambdaSeq* const>(hh, 2),
                                          Method::Exhaustive);
        CHECK(total.value == Approx(v1.value + v2.value + v12.value).epsilon(1e-12));
    }
    SECTION("index-set variation of separable square waves in 3-d") {
        auto f = make_separable({"square_wave_1d", "square_wave_1d", "square_wave_1d"},
                                uniform_axes({4, 4, 4}));
        const LambdaSeq* hhh[3] = {&harmonic, &harmonic, &harmonic};
        int alpha[2] = {0, 1};
        auto r = composite_variation(f, std::span<const LambdaSeq* const>(hhh, 3),
                                     CompositeKind::IndexSet, std::span<const int>(alpha, 2),
                                     Method::Exhaustive);
        CHECK(r.value == Approx(4.0));
    }
    SECTION("singleton index set equals fixed axis variation") {
        std::mt19937_64 rng(77);
        auto f = random_samples(rng, {5, 5});
        const LambdaSeq* hh[2] = {&harmonic, &harmonic};
        int alpha[1] = {1};
        auto r = composite_variation(f, std::span<const LambdaSeq* const>(hh, 2),
                                     CompositeKind::IndexSet, std::span<const int>(alpha, 1),
                                     Method::Exhaustive);
        auto v2 = axis_lambda_variation(f, 1, harmonic, Mode::Fixed, Method::Exhaustive);
        CHECK(r.value == Approx(v2.value).epsilon(1e-12));
    }
}

TEST_CASE("star variation", "[variation]") {
    auto harmonic = make_lambda(LambdaKind::Harmonic);
    SECTION("constant vanishes") {
        auto c = make_trig_poly({{{0, 0, 0}, 1.0}}, 2, uniform_axes({4, 4}));
        CHECK(star_variation(c, harmonic, Method::Exhaustive).value == 0.0);
    }
    SECTION("sign_diag on the 2x2 example grid") {
        auto f =
            make_catalog("sign_diag", std::vector<std::vector<double>>{{0.5, 1.5}, {1.0, 2.0}});
        auto r = star_variation(f, harmonic, Method::Exhaustive);
        CHECK(r.value == 2.0);
        CHECK(r.cert.rects.size() == 1);
    }
    SECTION("separable steps: one rectangle straddles both jumps") {
        auto f = make_separable({"step_1d", "step_1d"}, uniform_axes({6, 6}), 2.0);
        auto r = star_variation(f, harmonic, Method::Exhaustive);
        CHECK(r.value == Approx(4.0));
        CHECK(r.cert.rects.size() == 1);
        const LambdaSeq* p = &harmonic;
        CHECK(reevaluate_certificate(f, r.cert, std::span<const LambdaSeq* const>(&p, 1)) ==
              Approx(4.0).epsilon(1e-12));
    }
    SECTION("greedy stays below exhaustive on random grids") {
        std::mt19937_64 rng(910);
        for (int c = 0; c < 20; ++c) {
            auto f = random_samples(rng, {4, 4});
            auto ex = star_variation(f, harmonic, Method::Exhaustive);
            auto gr = star_variation(f, harmonic, Method::Greedy);
            CHECK(gr.value <= ex.value + 1e-12);
        }
    }
}

TEST_CASE("phi variation", "[variation]") {
    auto square = parse_phi("power:p=2");
    SECTION("step with a single jump of 2") {
        auto f = make_catalog("step_1d:h=2", {8});
        auto r = phi_variation(f, square, 0, Mode::Fixed, Method::Exhaustive);
        CHECK(r.value == 4.0);
    }
    SECTION("a monotone ramp rising 1 concentrates in one interval") {
        auto f = make_catalog("ramp_1d", {8});
        auto r = phi_variation(f, square, 0, Mode::Fixed, Method::Exhaustive);
        CHECK(r.value == 1.0);
        CHECK(r.cert.intervals[0].size() == 1);
    }
    SECTION("constant vanishes") {
        auto c = make_trig_poly({{{0, 0, 0}, 1.0}}, 2, uniform_axes({6, 6}));
        CHECK(phi_variation(c, square, 0, Mode::Fixed, Method::Exhaustive).value == 0.0);
    }
    SECTION("greedy below exhaustive; sharp above fixed") {
        std::mt19937_64 rng(411);
        for (int c = 0; c < 20; ++c) {
            auto f = random_samples(rng, {6, 6});
            auto fx = phi_variation(f, square, 0, Mode::Fixed, Method::Exhaustive);
            auto sh = phi_variation(f, square, 0, Mode::Sharp, Method::Exhaustive);
            auto gr = phi_variation(f, square, 0, Mode::Fixed, Method::Greedy);
            CHECK(fx.value <= sh.value + 1e-15);
            CHECK(gr.value <= fx.value + 1e-15);
        }
    }
}

TEST_CASE("modulus of variation", "[variation]") {
    SECTION("sign_diag plain: every row is a step of total rise 2") {
        auto f = make_catalog("sign_diag", {8, 8});
        auto t = modulus_of_variation(f, 0, 4, false);
        for (int n = 1; n <= 4; ++n) CHECK(t.v(n) == 2.0);
    }
    SECTION("sign_diag sharp on a 2m x 2m grid: v#(n) = 2n up to m") {
        auto f = make_catalog("sign_diag", {8, 8});
        auto t = modulus_of_variation(f, 0, 4, true);
        for (int n = 1; n <= 4; ++n) CHECK(t.v(n) == Approx(2.0 * n));
    }
    SECTION("constant vanishes") {
        auto c = make_trig_poly({{{0, 0, 0}, 1.0}}, 2, uniform_axes({8, 8}));
        auto t = modulus_of_variation(c, 0, 4, false);
        for (int n = 1; n <= 4; ++n) CHECK(t.v(n) == 0.0);
    }
    SECTION("tables are nondecreasing with bounded increments") {
        std::mt19937_64 rng(35);
        for (int c = 0; c < 20; ++c) {
            auto f = random_samples(rng, {10});
            auto t = modulus_of_variation(f, 0, 5, false);
            double osc = 0.0;
            for (int a = 0; a < 10; ++a)
                for (int b = a + 1; b < 10; ++b)
                    osc = std::max(osc, std::fabs(f.at({b}) - f.at({a})));
            for (int n = 2; n <= 5; ++n) {
                CHECK(t.v(n) >= t.v(n - 1));
                CHECK(t.v(n) <= t.v(n - 1) + osc + 1e-15);
            }
        }
    }
    SECTION("dynamic program equals brute force on 1-d grids") {
        std::mt19937_64 rng(36);
        for (int c = 0; c < 20; ++c) {
            auto f = random_samples(rng, {9});
            auto t = modulus_of_variation(f, 0, 4, false);
            for (int n = 1; n <= 4; ++n)
                CHECK(t.v(n) == Approx(oracles::brute_modulus_1d(f, n)).epsilon(1e-12));
        }
    }
    SECTION("sharp dominates plain") {
        std::mt19937_64 rng(37);
        auto f = random_samples(rng, {8, 8});
        auto plain = modulus_of_variation(f, 0, 4, false);
        auto sharp = modulus_of_variation(f, 0, 4, true);
        for (int n = 1; n <= 4; ++n) CHECK(sharp.v(n) >= plain.v(n) - 1e-15);
    }
    SECTION("greedy modulus is a lower bound") {
        std::mt19937_64 rng(38);
        auto f = random_samples(rng, {10});
        auto exact = modulus_of_variation(f, 0, 5, false, Method::Exhaustive);
        auto greedy = modulus_of_variation(f, 0, 5, false, Method::Greedy);
        for (int n = 1; n <= 5; ++n) CHECK(greedy.v(n) <= exact.v(n) + 1e-15);
    }
    SECTION("cap is enforced") {
        auto f = make_catalog("sign_diag", {8, 8});
        CHECK_THROWS_AS(modulus_of_variation(f, 0, 5, false), CapExceeded);
    }
}

TEST_CASE("modulus family realizes its target growth", "[variation]") {
    auto f = make_catalog("modulus_family:gamma=0.5", {256});
    auto t = modulus_of_variation(f, 0, 64, false);
    double c1 = 1e300, c2 = 0.0;
    for (int n = 1; n <= 64; ++n) {
        double ratio = t.v(n) / std::pow(static_cast<double>(n), 0.5);
        c1 = std::min(c1, ratio);
        c2 = std::max(c2, ratio);
        CHECK(t.v(n) == Approx(std::pow(static_cast<double>(n), 0.5)).epsilon(1e-9));
    }
    INFO("band constants c1=" << c1 << " c2=" << c2);
    CHECK(c1 > 0.99);
    CHECK(c2 < 1.01);
}

TEST_CASE("tail continuity probe", "[variation]") {
    auto harmonic = make_lambda(LambdaKind::Harmonic);
    SECTION("constant is zero at every tail") {
        auto c = make_trig_poly({{{0, 0, 0}, 1.0}}, 2, uniform_axes({6, 6}));
        std::vector<std::uint64_t> ns{1, 2, 4};
        auto probe = tail_continuity_probe(c, harmonic, 0,
                                           std::span<const std::uint64_t>(ns.data(), ns.size()),
                                           Method::Exhaustive);
        for (const auto& [n, r] : probe.values) CHECK(r.value == 0.0);
    }
    SECTION("sign_diag sharp tails shrink strictly") {
        auto f = make_catalog("sign_diag", {8, 8});
        std::vector<std::uint64_t> ns{1, 2, 4, 8};
        auto probe = tail_continuity_probe(f, harmonic, 0,
                                           std::span<const std::uint64_t>(ns.data(), ns.size()),
                                           Method::Exhaustive);
        auto H = [](double a, double b, double c, double d) { return 2.0 * (a + b + c + d); };
        CHECK(probe.values[0].second.value ==
              Approx(H(1.0, 1.0 / 2, 1.0 / 3, 1.0 / 4)).epsilon(1e-12));
        CHECK(probe.values[1].second.value ==
              Approx(H(1.0 / 2, 1.0 / 3, 1.0 / 4, 1.0 / 5)).epsilon(1e-12));
        CHECK(probe.values[2].second.value ==
              Approx(H(1.0 / 4, 1.0 / 5, 1.0 / 6, 1.0 / 7)).epsilon(1e-12));
        CHECK(probe.values[3].second.value ==
              Approx(H(1.0 / 8, 1.0 / 9, 1.0 / 10, 1.0 / 11)).epsilon(1e-12));
        for (std::size_t i = 1; i < probe.values.size(); ++i)
            CHECK(probe.values[i].second.value < probe.values[i - 1].second.value);
        CHECK(probe.doubling_ratio == 2.0);
    }
    SECTION("tail values against the brute oracle") {
        std::mt19937_64 rng(83);
        auto f = random_samples(rng, {6, 6});
        std::vector<std::uint64_t> ns{1, 3};
        auto probe = tail_continuity_probe(f, harmonic, 0,
                                           std::span<const std::uint64_t>(ns.data(), ns.size()),
                                           Method::Exhaustive);
        CHECK(probe.values[0].second.value ==
              Approx(oracles::brute_axis_variation(f, 0, harmonic, true, 1)).epsilon(1e-12));
        CHECK(probe.values[1].second.value ==
              Approx(oracles::brute_axis_variation(f, 0, harmonic, true, 3)).epsilon(1e-12));
    }
    SECTION("n_list must increase") {
        auto f = make_catalog("sign_diag", {4, 4});
        std::vector<std::uint64_t> bad{2, 1};
        CHECK_THROWS_AS(tail_continuity_probe(f, harmonic, 0,
                                              std::span<const std::uint64_t>(bad.data(), 2),
                                              Method::Exhaustive),
                        std::invalid_argument);
    }
}

TEST_CASE("caps and validation", "[variation]") {
    auto harmonic = make_lambda(LambdaKind::Harmonic);
    auto big = make_catalog("square_wave_1d", {16});
    CHECK_THROWS_AS(axis_lambda_variation(big, 0, harmonic, Mode::Fixed, Method::Exhaustive),
                    CapExceeded);
    CHECK_NOTHROW(axis_lambda_variation(big, 0, harmonic, Mode::Fixed, Method::Greedy));

    auto wide = make_catalog("sign_diag", {8, 8});
    const LambdaSeq* hh[2] = {&harmonic, &harmonic};
    CHECK_THROWS_AS(
        mixed_lambda_variation(wide, std::span<const LambdaSeq* const>(hh, 2), Method::Exhaustive),
        CapExceeded);
    CHECK_THROWS_AS(star_variation(wide, harmonic, Method::Exhaustive), CapExceeded);

    // Explicit lists must cover the deepest weight the grid can demand.
    auto shortlist = LambdaSeq::from_list({2.0, 3.0});
    auto f = make_catalog("square_wave_1d", {8});
    CHECK_THROWS_AS(axis_lambda_variation(f, 0, shortlist, Mode::Fixed, Method::Exhaustive),
                    std::invalid_argument);
    CHECK_THROWS_AS(axis_lambda_variation(f, 2, harmonic, Mode::Fixed, Method::Exhaustive),
                    std::invalid_argument);
}
