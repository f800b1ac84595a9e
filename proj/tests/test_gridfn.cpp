#include <catch2/catch.hpp>

#include <cmath>
#include <cstdio>
#include <random>

#include "genvar/gridfn.hpp"

using namespace genvar;

TEST_CASE("sign_diag evaluates the sign of the difference", "[gridfn]") {
    auto f = make_catalog("sign_diag", {8, 8});
    CHECK(f.eval({1.5, 1.0}) == 1.0);
    CHECK(f.eval({1.0, 1.5}) == -1.0);
    CHECK(f.eval({1.0, 1.0}) == 0.0);
}

TEST_CASE("trig_poly default equals cos x cos y", "[gridfn]") {
    auto f = make_catalog("trig_poly", {8, 8});
    for (double x = 0.0; x < kTwoPi; x += 0.7)
        for (double y = 0.0; y < kTwoPi; y += 0.9)
            CHECK(f.eval({x, y}) == Approx(std::cos(x) * std::cos(y)).margin(1e-12));
}

TEST_CASE("catalog evaluators are periodic", "[gridfn]") {
    auto f = make_catalog("sign_diag", {8, 8});
    for (double x : {0.3, 2.0, 5.5})
        for (double y : {0.1, 3.3}) CHECK(f.eval({x + kTwoPi, y}) == f.eval({x, y}));
    auto sq = make_catalog("square_wave_1d", {16});
    for (double x : {0.3, 2.0, 5.5}) CHECK(sq.eval({x + kTwoPi}) == sq.eval({x}));
    auto tp = make_catalog("trig_poly", {8, 8});
    CHECK(tp.eval({1.0 + kTwoPi, 2.0}) == Approx(tp.eval({1.0, 2.0})).margin(1e-12));
}

TEST_CASE("square wave has exact values at the jump points", "[gridfn]") {
    auto f = make_catalog("square_wave_1d", {8});
    CHECK(f.eval({0.0}) == 0.0);
    CHECK(f.eval({kPi}) == 0.0);
    CHECK(f.eval({kPi / 2}) == 1.0);
    CHECK(f.eval({3 * kPi / 2}) == -1.0);
    // Grid point pi lands exactly on the jump.
    CHECK(f.at({4}) == 0.0);
}

TEST_CASE("mixed difference basics", "[gridfn]") {
    SECTION("constant functions gives zero on every box") {
        auto c = make_trig_poly({{{0, 0, 0}, 1.0}}, 2, uniform_axes({6, 6}));
        CHECK(mixed_difference(c, Box::make({{0.5, 1.5}, {1.0, 2.0}})) == Approx(0.0).margin(1e-14));
    }
    SECTION("additive parts are annihilated") {
        std::vector<double> vals(36);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) vals[i * 6 + j] = std::sin(i) + 3.0 * j;
        auto f = GridFunction::from_samples(uniform_axes({6, 6}), vals);
        const auto& ax = f.axis(0);
        CHECK(mixed_difference(f, Box::make({{ax[0], ax[3]}, {ax[1], ax[4]}})) ==
              Approx(0.0).margin(1e-14));
    }
    SECTION("sign_diag corner sum") {
        auto f = make_catalog("sign_diag", {8, 8});
        CHECK(mixed_difference(f, Box::make({{0.5, 1.5}, {1.0, 2.0}})) == -2.0);
    }
    SECTION("degenerate boxes are rejected") {
        auto f = make_catalog("sign_diag", {8, 8});
        CHECK_THROWS_AS(mixed_difference(f, Box::make({{0.5, 0.5}, {1.0, 2.0}})),
                        std::invalid_argument);
    }
}

TEST_CASE("mixed difference properties", "[gridfn]") {
    auto axes = uniform_axes({6, 6});
    std::vector<double> g_vals(36), h_vals(36);
    std::mt19937_64 rng(7);
    auto u = [&rng] { return (rng() >> 11) * (1.0 / 9007199254740992.0) * 2.0 - 1.0; };
    for (auto& v : g_vals) v = u();
    for (auto& v : h_vals) v = u();
    auto g = GridFunction::from_samples(axes, g_vals);
    auto h = GridFunction::from_samples(axes, h_vals);
    std::vector<double> combo(36);
    for (int i = 0; i < 36; ++i) combo[i] = 2.0 * g_vals[i] - 0.5 * h_vals[i];
    auto f = GridFunction::from_samples(axes, combo);
    const auto& ax = g.axis(0);

    SECTION("multilinearity in corner values") {
        Box box = Box::make({{ax[1], ax[4]}, {ax[0], ax[3]}});
        CHECK(mixed_difference(f, box) ==
              Approx(2.0 * mixed_difference(g, box) - 0.5 * mixed_difference(h, box))
                  .margin(1e-12));
    }
    SECTION("splitting a box along one axis is additive") {
        Box whole = Box::make({{ax[0], ax[4]}, {ax[1], ax[5]}});
        Box left = Box::make({{ax[0], ax[2]}, {ax[1], ax[5]}});
        Box right = Box::make({{ax[2], ax[4]}, {ax[1], ax[5]}});
        CHECK(mixed_difference(g, whole) ==
              Approx(mixed_difference(g, left) + mixed_difference(g, right)).margin(1e-12));
    }
    SECTION("separable functions factorize") {
        auto s = make_separable({"step_1d", "step_1d"}, uniform_axes({8, 8}), 2.0);
        // factor value: 2 * [0,pi) indicator
        auto g1 = [&](double t) { return reduce_period(t) < kPi ? 2.0 : 0.0; };
        for (double a = 0.4; a < 2.0; a += 0.5) {
            double b = a + 1.8;
            double c = 0.9, d = 4.1;
            double lhs = mixed_difference(s, Box::make({{a, b}, {c, d}}));
            double rhs = (g1(b) - g1(a)) * (g1(d) - g1(c));
            CHECK(lhs == Approx(rhs).margin(1e-12));
        }
    }
}

TEST_CASE("mixed difference on slices", "[gridfn]") {
    auto f = make_separable({"square_wave_1d", "square_wave_1d", "square_wave_1d"},
                            uniform_axes({4, 4, 4}));
    int axes_sel[2] = {0, 1};
    std::pair<double, double> ivs[2] = {{0.5, 3.5}, {0.5, 3.5}};
    double fixed[1] = {kPi / 2};
    double v = mixed_difference_slice(f, std::span<const int>(axes_sel, 2),
                                      std::span<const std::pair<double, double>>(ivs, 2),
                                      std::span<const double>(fixed, 1));
    // Each square-wave factor moves from +1 to -1 across pi; the slice factor is +1.
    CHECK(v == Approx(4.0));
}

TEST_CASE("quadrant limits from catalog metadata", "[gridfn]") {
    SECTION("step_product at (pi, pi)") {
        auto f = make_catalog("step_product", {8, 8});
        auto rep = quadrant_limits(f, std::vector<double>{kPi, kPi});
        REQUIRE(rep.catalog_exact);
        CHECK(rep.regular);
        // delta = (-,-) is mask 0; all limits exist, only (-,-) is 1.
        CHECK(rep.limits[0].value == 1.0);
        CHECK(rep.limits[1].value == 0.0);
        CHECK(rep.limits[2].value == 0.0);
        CHECK(rep.limits[3].value == 0.0);
        CHECK(rep.f_star == 0.25);
    }
    SECTION("trig_poly is continuous: every limit equals the value") {
        auto f = make_catalog("trig_poly", {8, 8});
        auto rep = quadrant_limits(f, std::vector<double>{1.1, 2.3});
        CHECK(rep.regular);
        for (const auto& l : rep.limits)
            CHECK(l.value == Approx(std::cos(1.1) * std::cos(2.3)).margin(1e-12));
        CHECK(rep.f_star == Approx(std::cos(1.1) * std::cos(2.3)).margin(1e-12));
    }
    SECTION("sign_diag on the diagonal is not regular") {
        auto f = make_catalog("sign_diag", {8, 8});
        auto rep = quadrant_limits(f, std::vector<double>{1.0, 1.0});
        CHECK_FALSE(rep.regular);
        // mask 1 = (+,-): limit 1; mask 2 = (-,+): limit -1.
        CHECK(rep.limits[1].exists);
        CHECK(rep.limits[1].value == 1.0);
        CHECK(rep.limits[2].exists);
        CHECK(rep.limits[2].value == -1.0);
        CHECK_FALSE(rep.limits[3].exists);
        CHECK_FALSE(rep.limits[0].exists);
    }
    SECTION("square wave at pi averages to zero") {
        auto f = make_catalog("square_wave_1d", {8});
        auto rep = quadrant_limits(f, std::vector<double>{kPi});
        CHECK(rep.regular);
        CHECK(rep.f_star == 0.0);
    }
}

TEST_CASE("numeric quadrant limits agree with the catalog", "[gridfn]") {
    // Same evaluator, metadata stripped: the ladder procedure must find the
    // same limits (within its stabilization tolerance).
    auto cat = make_catalog("step_product", {8, 8});
    auto bare = GridFunction::from_evaluator(
        uniform_axes({8, 8}),
        [](const std::array<double, 3>& x) {
            return (x[0] < kPi ? 1.0 : 0.0) * (x[1] < kPi ? 1.0 : 0.0);
        });
    for (auto pt : {std::vector<double>{kPi, kPi}, std::vector<double>{1.0, 2.0}}) {
        auto a = quadrant_limits(cat, pt);
        auto b = quadrant_limits(bare, pt);
        REQUIRE(b.regular == a.regular);
        for (std::size_t m = 0; m < a.limits.size(); ++m)
            CHECK(b.limits[m].value == Approx(a.limits[m].value).margin(1e-6));
        CHECK(b.f_star == Approx(a.f_star).margin(1e-6));
    }
}

TEST_CASE("numeric ladder rejects oscillating quadrants", "[gridfn]") {
    auto bare = GridFunction::from_evaluator(
        uniform_axes({8, 8}), [](const std::array<double, 3>& x) {
            double d = x[0] - x[1];
            return d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
        });
    auto rep = quadrant_limits(bare, std::vector<double>{1.0, 1.0});
    CHECK_FALSE(rep.regular);
    CHECK_FALSE(rep.limits[3].exists);  // (+,+) straddles the diagonal
    CHECK(rep.limits[1].exists);
    CHECK(rep.limits[1].value == Approx(1.0).margin(1e-6));
}

TEST_CASE("quadrant ladder validation", "[gridfn]") {
    auto f = make_catalog("trig_poly", {8, 8});
    QuadrantConfig cfg;
    cfg.ladder = {0.1, 0.05};
    CHECK_THROWS_AS(quadrant_limits(f, std::vector<double>{1.0, 1.0}, cfg),
                    std::invalid_argument);
    cfg.ladder = {0.1, 0.2, 0.3, 0.4};
    CHECK_THROWS_AS(quadrant_limits(f, std::vector<double>{1.0, 1.0}, cfg),
                    std::invalid_argument);
    cfg.ladder = {2.0, 1.0, 0.5, 0.25};
    CHECK_THROWS_AS(quadrant_limits(f, std::vector<double>{1.0, 1.0}, cfg),
                    std::invalid_argument);
}

TEST_CASE("modulus_family is a tent cascade with exact peak heights", "[gridfn]") {
    auto f = make_catalog("modulus_family:gamma=0.5,teeth=8", {16});
    // Tooth 1 peaks at height 1 at the midpoint of the first subinterval.
    CHECK(f.eval({kTwoPi * 0.5 / 8.0}) == Approx(1.0).margin(1e-12));
    // Tooth boundaries sit at zero.
    CHECK(f.eval({kTwoPi / 8.0}) == Approx(0.0).margin(1e-12));
    CHECK_THROWS_AS(make_catalog("modulus_family:gamma=1.5", {16}), std::invalid_argument);
}

TEST_CASE("sample tables round trip through CSV", "[gridfn]") {
    std::vector<double> vals(15);
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = 0.1 * static_cast<double>(i) - 0.7;
    auto f = GridFunction::from_samples(uniform_axes({3, 5}), vals);
    std::string path = "gridfn_roundtrip.csv";
    save_csv(f, path);
    auto g = load_csv(path);
    REQUIRE(g.dim() == 2);
    REQUIRE(g.axis_size(0) == 3);
    REQUIRE(g.axis_size(1) == 5);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 5; ++j) CHECK(g.at({i, j}) == Approx(f.at({i, j})).margin(1e-9));
    std::remove(path.c_str());
}

TEST_CASE("grid validation", "[gridfn]") {
    CHECK_THROWS_AS(GridFunction::from_samples({{0.0, 0.0, 1.0}}, {1.0, 2.0, 3.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(GridFunction::from_samples({{0.0, kTwoPi}}, {1.0, 2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_catalog("unknown_fn", {8}), std::invalid_argument);
    CHECK_THROWS_AS(make_catalog("sign_diag", {8}), std::invalid_argument);
}

TEST_CASE("scaling and shifting track samples and limits", "[gridfn]") {
    auto f = make_catalog("step_product", {8, 8});
    auto g = f.scaled(2.0).plus_const(1.0);
    CHECK(g.eval({1.0, 1.0}) == 3.0);
    CHECK(g.eval({4.0, 4.0}) == 1.0);
    auto rep = quadrant_limits(g, std::vector<double>{kPi, kPi});
    CHECK(rep.regular);
    CHECK(rep.f_star == Approx(2.0 * 0.25 + 1.0));
}
