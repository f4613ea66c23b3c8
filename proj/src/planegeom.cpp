#include "srg/planegeom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace srg {

namespace {
constexpr double kPi = std::numbers::pi;
}

Polyline Disk::boundary(std::size_t n) const {
    Polyline out;
    out.closed = true;
    out.pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double a = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
        out.pts.emplace_back(center + radius * std::cos(a), radius * std::sin(a));
    }
    return out;
}

Disk averaged_disk(double theta) {
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("theta must lie in the open interval (0,1)");
    return Disk{1.0 - theta, theta};
}

ProductOval::ProductOval(double t1, double t2) : theta1(t1), theta2(t2) {
    if (!(t1 > 0.0 && t1 < 1.0) || !(t2 > 0.0 && t2 < 1.0))
        throw std::invalid_argument("theta must lie in the open interval (0,1)");
}

double ProductOval::coeff_c(double phi) const {
    return std::cos(phi) * (1.0 - theta1) * (1.0 - theta2) + theta1 * theta2;
}

double ProductOval::coeff_d() const {
    return (1.0 - 2.0 * theta1) * (1.0 - 2.0 * theta2);
}

std::vector<double> oval_roots(const ProductOval& oval, double phi) {
    const double c = oval.coeff_c(phi);
    const double d = oval.coeff_d();
    const double disc = c * c - d;
    if (disc < 0.0) return {};
    if (disc == 0.0) return {c};
    const double s = std::sqrt(disc);
    // Evaluate the larger-magnitude root directly and recover the other from
    // the product of roots to avoid cancellation when |d| << c^2.
    double r1 = (c >= 0.0) ? c + s : c - s;
    if (r1 == 0.0) return {0.0, 0.0};
    double r2 = d / r1;
    if (r2 > r1) std::swap(r1, r2);
    return {r2, r1};
}

double envelope_quartic(double theta1, double theta2, Complex z) {
    const double x = z.real();
    const double y = z.imag();
    const double rr = x * x + y * y;
    const double q = rr - 2.0 * x * (1.0 - theta1) * (1.0 - theta2) +
                     (1.0 - 2.0 * theta1) * (1.0 - 2.0 * theta2);
    const double tt = theta1 * theta2;
    return q * q - 4.0 * tt * tt * rr;
}

Complex envelope_quartic_gradient(double theta1, double theta2, Complex z) {
    const double x = z.real();
    const double y = z.imag();
    const double rr = x * x + y * y;
    const double k = (1.0 - theta1) * (1.0 - theta2);
    const double q = rr - 2.0 * x * k + (1.0 - 2.0 * theta1) * (1.0 - 2.0 * theta2);
    const double tt = theta1 * theta2;
    const double gx = 2.0 * q * (2.0 * x - 2.0 * k) - 8.0 * tt * tt * x;
    const double gy = 2.0 * q * 2.0 * y - 8.0 * tt * tt * y;
    return Complex(gx, gy);
}

CircleFamily product_envelope_family(double theta1, double theta2) {
    if (!(theta1 > 0.0 && theta1 < 1.0) || !(theta2 > 0.0 && theta2 < 1.0))
        throw std::invalid_argument("theta must lie in the open interval (0,1)");
    CircleFamily fam;
    // Circle z2(t) * Circ(theta1): center (1-theta1) z2(t), radius theta1 |z2(t)|.
    auto z2 = [theta2](double t) {
        return Complex(1.0 - theta2 + theta2 * std::cos(t), theta2 * std::sin(t));
    };
    fam.value = [theta1, z2](double t, Complex z) {
        const Complex c = (1.0 - theta1) * z2(t);
        const double rad2 = theta1 * theta1 * std::norm(z2(t));
        return std::norm(z - c) - rad2;
    };
    fam.dvalue_dt = [theta1, theta2, z2](double t, Complex z) {
        const Complex w = z2(t);
        const Complex dw(-theta2 * std::sin(t), theta2 * std::cos(t));
        const Complex c = (1.0 - theta1) * w;
        const Complex dc = (1.0 - theta1) * dw;
        // d/dt [ |z-c|^2 - theta1^2 |w|^2 ]
        const double d1 = -2.0 * ((z.real() - c.real()) * dc.real() +
                                  (z.imag() - c.imag()) * dc.imag());
        const double d2 = -theta1 * theta1 * 2.0 *
                          (w.real() * dw.real() + w.imag() * dw.imag());
        return d1 + d2;
    };
    fam.seed = [theta1, z2](double t, double alpha) {
        const Complex c = (1.0 - theta1) * z2(t);
        const double rad = theta1 * std::abs(z2(t));
        return c + rad * Complex(std::cos(alpha), std::sin(alpha));
    };
    return fam;
}

namespace {

// Newton iteration on the 2x2 system (F, dF/dt) = 0 in (x, y) with t fixed.
// The Jacobian is approximated by central differences; the family functions
// are smooth so this keeps quadratic-enough convergence near a root.
bool newton_envelope(const CircleFamily& fam, double t, Complex& z) {
    constexpr int kMaxIter = 50;
    constexpr double kTol = 1e-10;
    constexpr double kH = 1e-7;
    for (int it = 0; it < kMaxIter; ++it) {
        const double f = fam.value(t, z);
        const double g = fam.dvalue_dt(t, z);
        if (std::abs(f) + std::abs(g) < kTol) return true;
        const Complex ex(kH, 0.0), ey(0.0, kH);
        const double fx = (fam.value(t, z + ex) - fam.value(t, z - ex)) / (2.0 * kH);
        const double fy = (fam.value(t, z + ey) - fam.value(t, z - ey)) / (2.0 * kH);
        const double gx = (fam.dvalue_dt(t, z + ex) - fam.dvalue_dt(t, z - ex)) / (2.0 * kH);
        const double gy = (fam.dvalue_dt(t, z + ey) - fam.dvalue_dt(t, z - ey)) / (2.0 * kH);
        const double det = fx * gy - fy * gx;
        if (std::abs(det) < 1e-14) return false;
        const double dx = (f * gy - g * fy) / det;
        const double dy = (fx * g - gx * f) / det;
        z -= Complex(dx, dy);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return false;
}

}  // namespace

EnvelopeResult envelope_points(const CircleFamily& family,
                               std::span<const double> t_grid,
                               int seeds_per_circle) {
    EnvelopeResult out;
    for (double t : t_grid) {
        bool any = false;
        std::vector<Complex> found;
        for (int s = 0; s < seeds_per_circle; ++s) {
            const double alpha = 2.0 * kPi * s / seeds_per_circle;
            Complex z = family.seed(t, alpha);
            if (!newton_envelope(family, t, z)) continue;
            bool dup = false;
            for (const Complex& p : found)
                if (std::abs(p - z) < 1e-9) { dup = true; break; }
            if (!dup) found.push_back(z);
            any = true;
        }
        if (!any) {
            out.failed_t.push_back(t);
            continue;
        }
        out.points.insert(out.points.end(), found.begin(), found.end());
    }
    return out;
}

double polar_curvature(double r0, double dr, double d2r) {
    const double denom = r0 * r0 + dr * dr;
    if (denom == 0.0)
        throw std::domain_error("polar_curvature: degenerate input r = dr = 0");
    return (r0 * r0 + 2.0 * dr * dr - r0 * d2r) / std::pow(denom, 1.5);
}

namespace {

double point_segment_distance(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double u = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
    u = std::clamp(u, 0.0, 1.0);
    return std::abs(p - (a + u * ab));
}

}  // namespace

int winding_number(const Polyline& curve, Complex z) {
    if (!curve.closed)
        throw std::invalid_argument("winding_number: polyline must be closed");
    const std::size_t n = curve.pts.size();
    if (n < 3)
        throw std::invalid_argument("winding_number: closed polyline needs >= 3 vertices");
    for (std::size_t i = 0; i < n; ++i) {
        const Complex a = curve.pts[i];
        const Complex b = curve.pts[(i + 1) % n];
        if (point_segment_distance(z, a, b) < 1e-12)
            throw std::invalid_argument("winding_number: point lies on the curve");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Complex u = curve.pts[i] - z;
        const Complex v = curve.pts[(i + 1) % n] - z;
        const double cross = u.real() * v.imag() - u.imag() * v.real();
        const double dot = u.real() * v.real() + u.imag() * v.imag();
        total += std::atan2(cross, dot);
    }
    const double turns = total / (2.0 * kPi);
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 1e-6)
        throw std::invalid_argument("winding_number: angle sum residual " +
                                    std::to_string(std::abs(turns - rounded)) +
                                    " exceeds 1e-6");
    return static_cast<int>(rounded);
}

double min_circle_through_one(std::span<const Complex> points) {
    double rho = 0.0;
    for (const Complex& p : points) {
        const double d2 = std::norm(p - Complex(1.0, 0.0));
        if (d2 <= 1e-30) continue;  // the point 1 itself imposes no constraint
        if (p.real() >= 1.0)
            throw std::invalid_argument(
                "min_circle_through_one: point with Re >= 1 admits no enclosing "
                "circle through 1 with real center");
        rho = std::max(rho, d2 / (2.0 * (1.0 - p.real())));
    }
    return rho;
}

}  // namespace srg
