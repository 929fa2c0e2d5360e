#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oam/grid.hpp"
#include "oam/lg.hpp"

using namespace oam;

namespace {
PhysicalGrid slm_like() { return PhysicalGrid(1024, 768, -0.0098, 0.0098, -0.0073, 0.0073); }
}

TEST_CASE("grid construction rejects degenerate windows") {
    CHECK_THROWS_AS(PhysicalGrid(1, 8, -1, 1, -1, 1), std::invalid_argument);
    CHECK_THROWS_AS(PhysicalGrid(8, 8, 1, -1, -1, 1), std::invalid_argument);
    CHECK_THROWS_AS(PhysicalGrid(8, 8, -1, 1, 2, 2), std::invalid_argument);
}

TEST_CASE("pixel-center coordinate mapping") {
    PhysicalGrid g = slm_like();
    auto [xc, yc] = g.coordinates(512, 384);
    CHECK(std::abs(xc) < g.pitch_x());  // center column sits within one pitch of 0

    auto [x0, y0] = g.coordinates(0, 0);
    CHECK(x0 == doctest::Approx(g.x_min + g.pitch_x() / 2).epsilon(1e-14));
    CHECK(y0 == doctest::Approx(g.y_min + g.pitch_y() / 2).epsilon(1e-14));

    auto [xn, yn] = g.coordinates(g.nx - 1, g.ny - 1);
    CHECK(xn == doctest::Approx(g.x_max - g.pitch_x() / 2).epsilon(1e-14));
    CHECK(yn == doctest::Approx(g.y_max - g.pitch_y() / 2).epsilon(1e-14));

    CHECK_THROWS_AS(g.coordinates(-1, 0), std::out_of_range);
    CHECK_THROWS_AS(g.coordinates(0, 768), std::out_of_range);
}

TEST_CASE("index -> coordinate -> nearest index round trip") {
    PhysicalGrid g = slm_like();
    for (int i = 0; i < g.nx; i += 37) {
        for (int j = 0; j < g.ny; j += 41) {
            auto [x, y] = g.coordinates(i, j);
            CHECK(g.nearest_i(x) == i);
            CHECK(g.nearest_j(y) == j);
        }
    }
    // monotone in the index
    for (int i = 1; i < g.nx; ++i) CHECK(g.x_at(i) > g.x_at(i - 1));
}

TEST_CASE("total_power basics") {
    PhysicalGrid g(64, 64, -1e-3, 1e-3, -1e-3, 1e-3);
    ComplexField f(g, 702e-9);
    CHECK(total_power(f) == 0.0);

    for (cplx& v : f.values) v = 1.0;
    double area = (g.x_max - g.x_min) * (g.y_max - g.y_min);
    CHECK(total_power(f) == doctest::Approx(area).epsilon(1e-12));
}

TEST_CASE("total_power of a normalized LG mode on an 8w0 window") {
    double w0 = 1e-3;
    BeamParams beam = BeamParams::from_waist(w0, 702e-9);
    PhysicalGrid g(256, 256, -4 * w0, 4 * w0, -4 * w0, 4 * w0);
    ComplexField f = lg_field(g, 0.0, ModeIndex{0, 2}, beam);
    CHECK(total_power(f) == doctest::Approx(1.0).epsilon(1e-6));

    // independent oracle: the same Riemann sum at double resolution must agree
    PhysicalGrid g2(512, 512, -4 * w0, 4 * w0, -4 * w0, 4 * w0);
    ComplexField f2 = lg_field(g2, 0.0, ModeIndex{0, 2}, beam);
    CHECK(total_power(f2) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("total_power is invariant under global phase") {
    double w0 = 1e-3;
    PhysicalGrid g(128, 128, -4 * w0, 4 * w0, -4 * w0, 4 * w0);
    ComplexField f = lg_field(g, 0.0, ModeIndex{0, 1}, BeamParams::from_waist(w0, 702e-9));
    double p0 = total_power(f);

    ComplexField neg = f;
    for (cplx& v : neg.values) v = -v;  // phase pi, exact in floating point
    CHECK(total_power(neg) == p0);

    ComplexField rot = f;
    for (cplx& v : rot.values) v *= std::polar(1.0, 0.7);
    CHECK(total_power(rot) == doctest::Approx(p0).epsilon(1e-12));
}

TEST_CASE("normalize") {
    PhysicalGrid g(32, 32, 0, 2, 0, 2);  // area 4
    ComplexField f(g, 702e-9);
    for (cplx& v : f.values) v = 1.0;  // power 4

    ComplexField n = normalize(f);
    CHECK(total_power(n) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(n.values[0].real() == doctest::Approx(0.5).epsilon(1e-12));

    ComplexField nn = normalize(n);
    for (std::size_t k = 0; k < n.values.size(); ++k)
        CHECK(std::abs(nn.values[k] - n.values[k]) < 1e-12);

    ComplexField zero(g, 702e-9);
    CHECK_THROWS_AS(normalize(zero), std::domain_error);
}

TEST_CASE("mode_overlap rejects mismatched grids") {
    PhysicalGrid a(32, 32, -1, 1, -1, 1), b(64, 64, -1, 1, -1, 1);
    ComplexField fa(a, 702e-9), fb(b, 702e-9);
    CHECK_THROWS_AS(mode_overlap(fa, fb), std::invalid_argument);
}
