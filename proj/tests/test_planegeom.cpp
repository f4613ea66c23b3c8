#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "srg/planegeom.hpp"

using namespace srg;

namespace {
constexpr double kPi = std::numbers::pi;

Polyline circle(Complex center, double radius, std::size_t n, bool ccw = true) {
    Polyline p;
    p.closed = true;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = 2.0 * kPi * i / n * (ccw ? 1.0 : -1.0);
        p.pts.push_back(center + radius * Complex(std::cos(a), std::sin(a)));
    }
    return p;
}
}  // namespace

TEST_CASE("averaged disk geometry") {
    const Disk d = averaged_disk(0.5);
    CHECK(d.center == doctest::Approx(0.5));
    CHECK(d.radius == doctest::Approx(0.5));
    CHECK(averaged_disk(0.75).contains(Complex(-0.5, 0.0), 1e-15));
    CHECK_THROWS_AS(averaged_disk(0.0), std::invalid_argument);
    CHECK_THROWS_AS(averaged_disk(1.0), std::invalid_argument);
}

TEST_CASE("oval roots at pinned angles") {
    // theta1=1/4, theta2=3/4, phi=0: c=3/8, d=-1/4, roots {-1/4, 1}
    auto r = oval_roots(ProductOval(0.25, 0.75), 0.0);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-12));

    // theta1=theta2=1/2 at phi=pi/2: cardioid r=(1+cos)/2 gives {0, 1/2}
    r = oval_roots(ProductOval(0.5, 0.5), kPi / 2.0);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(0.0));
    CHECK(r[1] == doctest::Approx(0.5));

    // theta1=theta2=1/4 at phi=0: c=5/8, d=1/4, roots {1/4, 1}
    r = oval_roots(ProductOval(0.25, 0.25), 0.0);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("oval root identities over random parameters") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0.02, 0.98);
    for (int trial = 0; trial < 200; ++trial) {
        const double t1 = U(rng), t2 = U(rng);
        const ProductOval oval(t1, t2);
        const double d = oval.coeff_d();

        // r = 1 solves the quadratic at phi = 0 exactly.
        const auto r0 = oval_roots(oval, 0.0);
        REQUIRE(!r0.empty());
        double nearest = 1e9;
        for (double r : r0) nearest = std::min(nearest, std::abs(r - 1.0));
        CHECK(nearest < 1e-12);

        for (int i = 0; i < 32; ++i) {
            const double phi = -kPi + 2.0 * kPi * i / 32.0;
            const auto roots = oval_roots(oval, phi);
            if (roots.size() == 2) CHECK(std::abs(roots[0] * roots[1] - d) < 1e-12);
            for (double r : roots) {
                // Negative roots denote |r| e^{i(phi+pi)}.
                const double ang = r >= 0.0 ? phi : phi + kPi;
                const Complex z = std::abs(r) * Complex(std::cos(ang), std::sin(ang));
                CHECK(std::abs(envelope_quartic(t1, t2, z)) < 1e-9);
            }
        }
    }
}

TEST_CASE("quartic pinned values") {
    CHECK(envelope_quartic(0.3, 0.8, Complex(1.0, 0.0)) == doctest::Approx(0.0));
    CHECK(envelope_quartic(0.5, 0.5, Complex(0.0, 0.0)) == doctest::Approx(0.0));

    // First-order drop just left of 1: -8 t1 t2 (t1+t2-2 t1 t2) eps.
    const double eps = 1e-3;
    const double f = envelope_quartic(0.25, 0.25, Complex(1.0 - eps, 0.0));
    CHECK(f < 0.0);
    CHECK(f == doctest::Approx(-8.0 * 0.0625 * 0.375 * eps).epsilon(5e-3));
}

TEST_CASE("envelope of translated unit circles is the pair of lines y=+-1") {
    CircleFamily fam;
    fam.value = [](double t, Complex z) {
        return (z.real() - t) * (z.real() - t) + z.imag() * z.imag() - 1.0;
    };
    fam.dvalue_dt = [](double t, Complex z) { return -2.0 * (z.real() - t); };
    fam.seed = [](double t, double alpha) {
        return Complex(t + std::cos(alpha), std::sin(alpha));
    };
    std::vector<double> grid;
    for (int i = 0; i < 20; ++i) grid.push_back(-1.0 + 0.1 * i);
    const EnvelopeResult res = envelope_points(fam, grid);
    CHECK(res.failed_t.empty());
    REQUIRE(!res.points.empty());
    for (const Complex& p : res.points)
        CHECK(std::abs(std::abs(p.imag()) - 1.0) < 1e-8);
}

TEST_CASE("product envelope family lands on the quartic zero set") {
    for (auto [t1, t2] : {std::pair{0.5, 0.5}, std::pair{0.25, 0.75}}) {
        const CircleFamily fam = product_envelope_family(t1, t2);
        std::vector<double> grid;
        for (int i = 0; i < 64; ++i) grid.push_back(2.0 * kPi * i / 64.0);
        const EnvelopeResult res = envelope_points(fam, grid);
        REQUIRE(res.points.size() > 64);
        for (const Complex& p : res.points)
            CHECK(std::abs(envelope_quartic(t1, t2, p)) < 1e-6);
        CHECK(res.failed_t.size() < grid.size() / 4);
    }
}

TEST_CASE("polar curvature") {
    CHECK(polar_curvature(2.0, 0.0, 0.0) == doctest::Approx(0.5));
    // Outer branch through 1: second derivative -(1-t1)(1-t2)/(t1+t2-2 t1 t2),
    // curvature (1-t1 t2)/(t1+t2-2 t1 t2).
    const double t1 = 0.25, t2 = 0.75;
    const double d2 = -(1.0 - t1) * (1.0 - t2) / (t1 + t2 - 2.0 * t1 * t2);
    CHECK(polar_curvature(1.0, 0.0, d2) ==
          doctest::Approx((1.0 - t1 * t2) / (t1 + t2 - 2.0 * t1 * t2)).epsilon(1e-12));
    // Cardioid: r'' = -1/2 at the rightmost point, curvature 3/2 = 1/(2/3).
    CHECK(polar_curvature(1.0, 0.0, -0.5) == doctest::Approx(1.5));
    CHECK_THROWS_AS(polar_curvature(0.0, 0.0, 1.0), std::domain_error);
}

TEST_CASE("curvature matches finite differences of the root branch") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.05, 0.95);
    for (int trial = 0; trial < 100; ++trial) {
        const double t1 = U(rng), t2 = U(rng);
        const ProductOval oval(t1, t2);
        auto outer = [&](double phi) {
            const double c = oval.coeff_c(phi);
            return c + std::sqrt(std::max(c * c - oval.coeff_d(), 0.0));
        };
        const double theta = (t1 + t2 - 2.0 * t1 * t2) / (1.0 - t1 * t2);
        const double closed = polar_curvature(
            1.0, 0.0, -(1.0 - t1) * (1.0 - t2) / (t1 + t2 - 2.0 * t1 * t2));
        CHECK(closed == doctest::Approx(1.0 / theta).epsilon(1e-12));
        auto kappa_at = [&](double h) {
            const double d1 = (outer(h) - outer(-h)) / (2.0 * h);
            const double d2 = (outer(h) - 2.0 * outer(0.0) + outer(-h)) / (h * h);
            return polar_curvature(outer(0.0), d1, d2);
        };
        CHECK(std::abs(kappa_at(1e-4) - 1.0 / theta) < 1e-5);
        const double richardson = (100.0 * kappa_at(1e-4) - kappa_at(1e-3)) / 99.0;
        CHECK(std::abs(richardson - 1.0 / theta) < 1e-6);
    }
}

TEST_CASE("winding number basics") {
    const Polyline unit = circle(Complex(0, 0), 1.0, 360);
    CHECK(winding_number(unit, Complex(0, 0)) == 1);
    CHECK(winding_number(unit, Complex(2, 0)) == 0);
    const Polyline cw = circle(Complex(0, 0), 1.0, 360, false);
    CHECK(winding_number(cw, Complex(0, 0)) == -1);

    Polyline open = unit;
    open.closed = false;
    CHECK_THROWS_AS(winding_number(open, Complex(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(winding_number(unit, Complex(1.0, 0.0)), std::invalid_argument);
}

TEST_CASE("winding number invariances") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        // Star-shaped random polygon around the origin.
        Polyline p;
        p.closed = true;
        const int n = 12 + static_cast<int>(20.0 * (U(rng) + 1.0) / 2.0);
        for (int i = 0; i < n; ++i) {
            const double a = 2.0 * kPi * i / n;
            const double r = 0.5 + 0.45 * (U(rng) + 1.0) / 2.0;
            p.pts.push_back(r * Complex(std::cos(a), std::sin(a)));
        }
        const Complex z(0.05 * U(rng), 0.05 * U(rng));
        const int w = winding_number(p, z);
        CHECK(w == 1);

        const Complex shift(U(rng), U(rng));
        const double scale = 0.5 + (U(rng) + 1.0);
        Polyline q = p;
        for (Complex& v : q.pts) v = scale * (v + shift);
        CHECK(winding_number(q, scale * (z + shift)) == w);

        Polyline rev = p;
        std::reverse(rev.pts.begin(), rev.pts.end());
        CHECK(winding_number(rev, z) == -w);
    }
}

TEST_CASE("smallest real-centered circle through 1") {
    const Complex minus_one(-1.0, 0.0), zero(0.0, 0.0);
    CHECK(min_circle_through_one({&minus_one, 1}) == doctest::Approx(1.0));
    CHECK(min_circle_through_one({&zero, 1}) == doctest::Approx(0.5));

    std::vector<Complex> empty;
    CHECK(min_circle_through_one(empty) == 0.0);

    std::vector<Complex> bad{Complex(1.0, 0.5)};
    CHECK_THROWS_AS(min_circle_through_one(bad), std::invalid_argument);

    // Dense boundary sample of Disk(1/2)Disk(1/2): radius 2/3.
    const ProductOval oval(0.5, 0.5);
    std::vector<Complex> pts;
    for (int i = 0; i < 20000; ++i) {
        const double phi = -kPi + 2.0 * kPi * i / 20000.0;
        for (double r : oval_roots(oval, phi)) {
            const double ang = r >= 0.0 ? phi : phi + kPi;
            pts.push_back(std::abs(r) * Complex(std::cos(ang), std::sin(ang)));
        }
    }
    CHECK(min_circle_through_one(pts) == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
}

TEST_CASE("min circle monotonicity properties") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> U(-0.9, 0.9);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Complex> pts;
        for (int i = 0; i < 20; ++i) pts.emplace_back(U(rng), U(rng));
        const double rho = min_circle_through_one(pts);

        auto with_one = pts;
        with_one.emplace_back(1.0, 0.0);
        CHECK(min_circle_through_one(with_one) == doctest::Approx(rho));

        // Any point already inside the returned disk leaves the radius alone.
        const Disk disk{1.0 - rho, rho};
        auto extended = pts;
        extended.emplace_back(disk.center, 0.0);
        extended.emplace_back(disk.center - 0.5 * rho, 0.25 * rho);
        CHECK(min_circle_through_one(extended) == doctest::Approx(rho));
    }
}
