#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace srg {

using Complex = std::complex<double>;

/// Default tolerances used across the library. Algebraic identities are
/// checked tightly, finite-difference comparisons loosely, Monte-Carlo
/// agreements loosest. All entry points that compare values accept an
/// explicit tolerance so these are only defaults.
struct Tolerances {
    double algebraic = 1e-9;
    double finite_diff = 1e-5;
    double monte_carlo = 1e-3;
};

/// Piecewise-linear plane curve. A closed polyline implicitly connects the
/// last vertex back to the first.
struct Polyline {
    std::vector<Complex> pts;
    bool closed = false;
};

/// Disk with center on the real axis: {z : |z - center| <= radius}.
struct Disk {
    double center = 0.0;
    double radius = 0.0;

    /// |z - center| - radius; negative inside, positive outside.
    double signed_distance(Complex z) const {
        return std::abs(z - Complex(center, 0.0)) - radius;
    }
    bool contains(Complex z, double tol = 0.0) const {
        return signed_distance(z) <= tol;
    }
    /// Counterclockwise boundary polyline with n vertices.
    Polyline boundary(std::size_t n) const;
};

/// Disk with rightmost point 1: center 1-theta, radius theta.
/// Requires theta strictly inside (0,1).
Disk averaged_disk(double theta);

/// Polar quadratic r^2 - 2 c(phi) r + d = 0 describing the envelope of the
/// product of two averaged disks, with c(phi) = cos(phi)(1-t1)(1-t2) + t1 t2
/// and d = (1-2 t1)(1-2 t2). Negative roots r < 0 at angle phi denote the
/// point |r| e^{i(phi+pi)}.
struct ProductOval {
    double theta1;
    double theta2;

    ProductOval(double t1, double t2);

    double coeff_c(double phi) const;
    double coeff_d() const;
};

/// All real roots of the polar quadratic at angle phi. Empty when the
/// discriminant is negative; a double root is returned once.
std::vector<double> oval_roots(const ProductOval& oval, double phi);

/// Quartic whose zero set contains the boundary of Disk(t1)Disk(t2):
/// (x^2+y^2-2x(1-t1)(1-t2)+(1-2t1)(1-2t2))^2 - 4 t1^2 t2^2 (x^2+y^2).
double envelope_quartic(double theta1, double theta2, Complex z);

/// Gradient of envelope_quartic with respect to (x, y), packed as a Complex.
Complex envelope_quartic_gradient(double theta1, double theta2, Complex z);

/// One-parameter family of circles C_t given implicitly by F(t, z) = 0
/// together with its t-derivative, plus a seed generator producing a point
/// on C_t at a given angle.
struct CircleFamily {
    std::function<double(double t, Complex z)> value;
    std::function<double(double t, Complex z)> dvalue_dt;
    std::function<Complex(double t, double alpha)> seed;
};

/// The family of circles z2(t) * Circ(theta1) with z2(t) sweeping
/// Circ(theta2); its envelope is the zero set of envelope_quartic.
CircleFamily product_envelope_family(double theta1, double theta2);

struct EnvelopeResult {
    std::vector<Complex> points;
    std::vector<double> failed_t;  // parameters where no seed converged
};

/// Solve F(t,z) = 0, dF/dt(t,z) = 0 for each t in the grid by Newton
/// iteration seeded at several angles on C_t. Converged solutions are
/// deduplicated per t; parameters where every seed fails are reported.
EnvelopeResult envelope_points(const CircleFamily& family,
                               std::span<const double> t_grid,
                               int seeds_per_circle = 8);

/// Curvature of a polar curve from r, dr/dphi, d2r/dphi2:
/// (r^2 + 2 dr^2 - r d2r) / (r^2 + dr^2)^{3/2}.
/// Throws std::domain_error when r0 = dr = 0.
double polar_curvature(double r0, double dr, double d2r);

/// Signed winding number of a closed polyline around z, computed by summing
/// signed angle increments. Throws std::invalid_argument when the polyline is
/// not closed, z lies on it (within 1e-12), or the angle sum is not close to
/// an integer multiple of 2 pi.
int winding_number(const Polyline& curve, Complex z);

/// Radius of the smallest disk with center on the real axis whose boundary
/// passes through 1 and which contains every input point:
/// max over p != 1 of |p-1|^2 / (2 (1 - Re p)). Points with Re p >= 1
/// (other than 1 itself) admit no such disk and raise std::invalid_argument.
/// Empty input yields 0.
double min_circle_through_one(std::span<const Complex> points);

}  // namespace srg
