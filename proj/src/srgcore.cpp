#include "srg/srgcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

namespace srg {

namespace {
constexpr double kPi = std::numbers::pi;
}

AveragedClass::AveragedClass(double t) : theta(t) {
    if (!(t > 0.0 && t < 1.0))
        throw std::invalid_argument("theta must lie in the open interval (0,1)");
}

CocoerciveClass::CocoerciveClass(double b) : beta(b) {
    if (!(b > 0.0)) throw std::invalid_argument("beta must be positive");
}

DysClass::DysClass(double b, double g) : beta(b), gamma(g) {
    if (!(b > 0.0)) throw std::invalid_argument("beta must be positive");
    if (!(g > 0.0 && g < 2.0 * b))
        throw std::invalid_argument("gamma must lie in the open interval (0, 2 beta)");
}

Disk averaged_srg(const AveragedClass& cls) { return averaged_disk(cls.theta); }

double composition_coefficient(double theta1, double theta2) {
    if (!(theta1 > 0.0 && theta1 < 1.0) || !(theta2 > 0.0 && theta2 < 1.0))
        throw std::invalid_argument("theta must lie in the open interval (0,1)");
    return (theta1 + theta2 - 2.0 * theta1 * theta2) / (1.0 - theta1 * theta2);
}

Disk dys_srg(const DysClass& cls) {
    const double den = 4.0 * cls.beta - cls.gamma;
    return Disk{(2.0 * cls.beta - cls.gamma) / den, 2.0 * cls.beta / den};
}

// ---------------------------------------------------------------------------
// Boundary extraction
// ---------------------------------------------------------------------------

namespace {

// Marching squares over the quartic on [-1.05, 1.05]^2. Segment endpoints are
// keyed by the grid edge they sit on so chaining is exact.
struct ContourLoops {
    std::vector<std::vector<Complex>> loops;
};

struct EdgeKey {
    int ix, iy;
    bool horizontal;  // true: edge from (ix,iy) to (ix+1,iy)
    bool operator<(const EdgeKey& o) const {
        if (ix != o.ix) return ix < o.ix;
        if (iy != o.iy) return iy < o.iy;
        return horizontal < o.horizontal;
    }
};

ContourLoops marching_squares(double t1, double t2, std::size_t n) {
    const double lo = -1.05, hi = 1.05;
    const double h = (hi - lo) / static_cast<double>(n);
    const std::size_t nv = n + 1;
    std::vector<double> vals(nv * nv);
    for (std::size_t j = 0; j < nv; ++j)
        for (std::size_t i = 0; i < nv; ++i)
            vals[j * nv + i] =
                envelope_quartic(t1, t2, Complex(lo + h * i, lo + h * j));

    auto coord = [&](std::size_t i, std::size_t j) {
        return Complex(lo + h * i, lo + h * j);
    };
    auto crossing = [&](std::size_t i0, std::size_t j0, std::size_t i1, std::size_t j1) {
        const double f0 = vals[j0 * nv + i0];
        const double f1 = vals[j1 * nv + i1];
        double u = f0 / (f0 - f1);
        u = std::clamp(u, 0.0, 1.0);
        return coord(i0, j0) + u * (coord(i1, j1) - coord(i0, j0));
    };

    // Collect segments as pairs of edge keys with interpolated positions.
    std::map<EdgeKey, Complex> edge_pt;
    std::vector<std::pair<EdgeKey, EdgeKey>> segments;
    auto add_seg = [&](EdgeKey a, Complex pa, EdgeKey b, Complex pb) {
        edge_pt[a] = pa;
        edge_pt[b] = pb;
        segments.emplace_back(a, b);
    };

    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const double f00 = vals[j * nv + i];
            const double f10 = vals[j * nv + i + 1];
            const double f11 = vals[(j + 1) * nv + i + 1];
            const double f01 = vals[(j + 1) * nv + i];
            int idx = 0;
            if (f00 < 0.0) idx |= 1;
            if (f10 < 0.0) idx |= 2;
            if (f11 < 0.0) idx |= 4;
            if (f01 < 0.0) idx |= 8;
            if (idx == 0 || idx == 15) continue;

            const EdgeKey bottom{(int)i, (int)j, true};
            const EdgeKey top{(int)i, (int)j + 1, true};
            const EdgeKey left{(int)i, (int)j, false};
            const EdgeKey right{(int)i + 1, (int)j, false};
            const Complex pb = crossing(i, j, i + 1, j);
            const Complex pt = crossing(i, j + 1, i + 1, j + 1);
            const Complex pl = crossing(i, j, i, j + 1);
            const Complex pr = crossing(i + 1, j, i + 1, j + 1);

            switch (idx) {
                case 1: case 14: add_seg(left, pl, bottom, pb); break;
                case 2: case 13: add_seg(bottom, pb, right, pr); break;
                case 3: case 12: add_seg(left, pl, right, pr); break;
                case 4: case 11: add_seg(right, pr, top, pt); break;
                case 6: case 9:  add_seg(bottom, pb, top, pt); break;
                case 7: case 8:  add_seg(left, pl, top, pt); break;
                case 5: case 10: {
                    // Saddle: pair by the sign of the cell-center value.
                    const double fc = envelope_quartic(
                        t1, t2, coord(i, j) + Complex(h / 2.0, h / 2.0));
                    const bool center_neg = fc < 0.0;
                    if ((idx == 5) == center_neg) {
                        add_seg(left, pl, top, pt);
                        add_seg(bottom, pb, right, pr);
                    } else {
                        add_seg(left, pl, bottom, pb);
                        add_seg(right, pr, top, pt);
                    }
                    break;
                }
                default: break;
            }
        }
    }

    // Chain segments into loops via edge adjacency.
    std::map<EdgeKey, std::vector<std::size_t>> by_edge;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        by_edge[segments[s].first].push_back(s);
        by_edge[segments[s].second].push_back(s);
    }
    std::vector<bool> used(segments.size(), false);
    ContourLoops out;
    for (std::size_t s0 = 0; s0 < segments.size(); ++s0) {
        if (used[s0]) continue;
        std::vector<Complex> loop;
        EdgeKey start = segments[s0].first;
        EdgeKey cur = start;
        std::size_t seg = s0;
        while (true) {
            used[seg] = true;
            loop.push_back(edge_pt[cur]);
            const EdgeKey next = (segments[seg].first < cur || cur < segments[seg].first)
                                     ? segments[seg].first
                                     : segments[seg].second;
            cur = next;
            if (!(cur < start) && !(start < cur)) break;  // closed
            const auto& cands = by_edge[cur];
            std::size_t pick = segments.size();
            for (std::size_t c : cands)
                if (!used[c]) { pick = c; break; }
            if (pick == segments.size()) break;  // open chain hit the box edge
            seg = pick;
        }
        if (loop.size() >= 3) out.loops.push_back(std::move(loop));
    }
    return out;
}

void polish_onto_quartic(double t1, double t2, std::vector<Complex>& pts) {
    for (Complex& z : pts) {
        for (int it = 0; it < 12; ++it) {
            const double f = envelope_quartic(t1, t2, z);
            if (std::abs(f) < 1e-12) break;
            const Complex g = envelope_quartic_gradient(t1, t2, z);
            const double g2 = std::norm(g);
            if (g2 < 1e-20) break;  // singular point of the quartic
            z -= f / g2 * g;
        }
    }
}

double loop_min_distance(const std::vector<Complex>& loop, Complex p) {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& z : loop) best = std::min(best, std::abs(z - p));
    return best;
}

}  // namespace

Polyline polar_boundary(double theta1, double theta2, std::size_t resolution) {
    const ProductOval oval(theta1, theta2);
    const double d = oval.coeff_d();
    Polyline out;
    out.closed = true;
    const bool crescent = d > 0.0 && theta1 < 0.5 && theta2 < 0.5;
    if (!crescent) {
        out.pts.reserve(resolution);
        for (std::size_t i = 0; i < resolution; ++i) {
            const double phi = 2.0 * kPi * i / resolution;
            const double c = oval.coeff_c(phi);
            const double disc = std::max(c * c - d, 0.0);
            const double r = c + std::sqrt(disc);
            out.pts.emplace_back(r * std::cos(phi), r * std::sin(phi));
        }
        return out;
    }
    // Both branches over |phi| <= phi* with c(phi*) = sqrt(d).
    const double k = (1.0 - theta1) * (1.0 - theta2);
    const double cosphi = (std::sqrt(d) - theta1 * theta2) / k;
    const double phistar = std::acos(std::clamp(cosphi, -1.0, 1.0));
    const std::size_t half = resolution / 2;
    out.pts.reserve(2 * half);
    for (std::size_t i = 0; i <= half; ++i) {
        const double phi = -phistar + 2.0 * phistar * i / half;
        const double c = oval.coeff_c(phi);
        const double r = c + std::sqrt(std::max(c * c - d, 0.0));
        out.pts.emplace_back(r * std::cos(phi), r * std::sin(phi));
    }
    for (std::size_t i = 1; i + 1 <= half; ++i) {
        const double phi = phistar - 2.0 * phistar * i / half;
        const double c = oval.coeff_c(phi);
        const double r = c - std::sqrt(std::max(c * c - d, 0.0));
        out.pts.emplace_back(r * std::cos(phi), r * std::sin(phi));
    }
    return out;
}

CompositionRegion::CompositionRegion(double theta1, double theta2,
                                     std::size_t boundary_resolution,
                                     MembershipConfig cfg)
    : oval_(theta1, theta2), cfg_(cfg) {
    if (boundary_resolution < 64)
        throw std::invalid_argument("boundary resolution must be >= 64");

    ContourLoops loops = marching_squares(theta1, theta2, boundary_resolution);
    if (loops.loops.empty())
        throw std::runtime_error("composition boundary: no contour found");

    // The boundary is the loop passing through the point 1.
    std::size_t best = 0;
    double bestd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < loops.loops.size(); ++i) {
        const double di = loop_min_distance(loops.loops[i], Complex(1.0, 0.0));
        if (di < bestd) { bestd = di; best = i; }
    }
    std::vector<Complex> loop = std::move(loops.loops[best]);
    polish_onto_quartic(theta1, theta2, loop);

    // Drop consecutive duplicates and any vertex the polish failed to place
    // on the curve.
    std::vector<Complex> clean;
    clean.reserve(loop.size());
    for (const Complex& z : loop) {
        if (std::abs(envelope_quartic(theta1, theta2, z)) >= 1e-8) continue;
        if (!clean.empty() && std::abs(clean.back() - z) < 1e-12) continue;
        clean.push_back(z);
    }
    if (clean.size() >= 2 && std::abs(clean.front() - clean.back()) < 1e-12)
        clean.pop_back();

    // Validate against the polar roots: when both root branches are positive
    // everywhere (both thetas above 1/2) the outer curve is a radial graph,
    // and a loop vertex well below the outer root means the contour chaining
    // mixed the outer curve with the inner oval at a node.
    const double cell = 2.1 / static_cast<double>(boundary_resolution);
    bool ok = clean.size() >= 3;
    const double d = oval_.coeff_d();
    const bool crescent = d > 0.0 && theta1 < 0.5 && theta2 < 0.5;
    if (ok) {
        for (const Complex& z : clean) {
            const double r = std::abs(z);
            const double phi = std::atan2(z.imag(), z.real());
            const double c = oval_.coeff_c(phi);
            const double disc = c * c - d;
            if (disc < -1e-9) { ok = false; break; }
            const double s = std::sqrt(std::max(disc, 0.0));
            const double outer = c + s;
            const double inner = c - s;
            const double low = crescent ? inner : outer;
            if (r > outer + 3.0 * cell || r < low - 3.0 * cell) { ok = false; break; }
        }
    }
    if (ok) {
        // Every analytic sample must be near the extracted loop.
        Polyline tmp;
        tmp.closed = true;
        tmp.pts = clean;
        const Polyline probe = polar_boundary(theta1, theta2, 128);
        for (const Complex& q : probe.pts) {
            double dmin = std::numeric_limits<double>::infinity();
            for (const Complex& v : tmp.pts) dmin = std::min(dmin, std::abs(v - q));
            if (dmin > 6.0 * cell) { ok = false; break; }
        }
    }
    if (!ok) {
        boundary_ = polar_boundary(theta1, theta2, boundary_resolution);
        used_polar_fallback_ = true;
    } else {
        boundary_.closed = true;
        boundary_.pts = std::move(clean);
    }

    // Counterclockwise orientation.
    double area2 = 0.0;
    const auto& p = boundary_.pts;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Complex a = p[i], b = p[(i + 1) % p.size()];
        area2 += a.real() * b.imag() - b.real() * a.imag();
    }
    if (area2 < 0.0) std::reverse(boundary_.pts.begin(), boundary_.pts.end());
}

double CompositionRegion::radial_excess(Complex z) const {
    const double r = std::abs(z);
    const double d = oval_.coeff_d();
    const bool crescent = d > 0.0 && theta1() < 0.5 && theta2() < 0.5;
    if (r == 0.0)
        return crescent ? oval_.coeff_c(0.0) - std::sqrt(std::max(
                              oval_.coeff_c(0.0) * oval_.coeff_c(0.0) - d, 0.0))
                        : -1.0;
    const double phi = std::atan2(z.imag(), z.real());
    const double c = oval_.coeff_c(phi);
    double disc = c * c - d;
    if (disc < 0.0) {
        if (disc < -1e-12) return std::sqrt(-disc);  // outside the angular sector
        disc = 0.0;
    }
    const double s = std::sqrt(disc);
    const double outer = c + s;
    double excess = r - outer;
    if (crescent) excess = std::max(excess, (c - s) - r);
    return excess;
}

double CompositionRegion::distance_to_boundary(Complex z) const {
    const auto& p = boundary_.pts;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Complex a = p[i];
        const Complex b = p[(i + 1) % p.size()];
        const Complex ab = b - a;
        const double len2 = std::norm(ab);
        double u = len2 == 0.0 ? 0.0
                               : ((z.real() - a.real()) * ab.real() +
                                  (z.imag() - a.imag()) * ab.imag()) / len2;
        u = std::clamp(u, 0.0, 1.0);
        best = std::min(best, std::abs(z - (a + u * ab)));
    }
    return best;
}

double CompositionRegion::witness_violation(Complex z) const {
    const double t1 = theta1(), t2 = theta2();
    const Complex c1(1.0 - t1, 0.0);
    const double c2 = 1.0 - t2;
    const double rho2 = t2;

    auto measure = [&](double s, double alpha) {
        const Complex w = Complex(c2, 0.0) +
                          s * rho2 * Complex(std::cos(alpha), std::sin(alpha));
        if (std::abs(w) < 1e-12) return std::numeric_limits<double>::infinity();
        return std::abs(z / w - c1) - t1;
    };

    const std::size_t S = cfg_.grid_radial, A = cfg_.grid_angular;
    double best = std::numeric_limits<double>::infinity();
    double bs = 0.0, ba = 0.0;
    for (std::size_t j = 0; j < S; ++j) {
        const double s = S == 1 ? 1.0 : static_cast<double>(j) / (S - 1);
        for (std::size_t i = 0; i < A; ++i) {
            const double alpha = 2.0 * kPi * i / A;
            const double m = measure(s, alpha);
            if (m < best) { best = m; bs = s; ba = alpha; }
            if (best <= 0.0) return best;
        }
        if (s == 0.0) continue;  // all angles coincide at the center
    }

    double hs = S == 1 ? 1.0 : 1.0 / (S - 1);
    double ha = 2.0 * kPi / A;
    const std::size_t R = cfg_.refine_size;
    for (int level = 0; level < cfg_.refine_levels; ++level) {
        const double s0 = bs, a0 = ba;
        for (std::size_t j = 0; j < R; ++j) {
            const double s = std::clamp(
                s0 - hs + 2.0 * hs * static_cast<double>(j) / (R - 1), 0.0, 1.0);
            for (std::size_t i = 0; i < R; ++i) {
                const double alpha = a0 - ha + 2.0 * ha * static_cast<double>(i) / (R - 1);
                const double m = measure(s, alpha);
                if (m < best) { best = m; bs = s; ba = alpha; }
                if (best <= 0.0) return best;
            }
        }
        hs *= 2.0 / (R - 1.0);
        ha *= 2.0 / (R - 1.0);
    }
    return best;
}

bool CompositionRegion::contains(Complex z) const {
    if (std::abs(z) < 1e-300) return theta1() >= 0.5 || theta2() >= 0.5;
    if (witness_violation(z) <= cfg_.tol) return true;
    return distance_to_boundary(z) <= 1e-9;
}

// ---------------------------------------------------------------------------
// Tangency certificate
// ---------------------------------------------------------------------------

double tangency_gap(double theta1, double theta2, double phi) {
    const double t1 = theta1, t2 = theta2;
    const double s = std::sin(phi / 2.0);
    const double num = 16.0 * t1 * t1 * t2 * t2 * (1.0 - t1) * (1.0 - t1) *
                       (1.0 - t2) * (1.0 - t2) *
                       (t1 + t2 - 2.0 * t1 * t2) * (t1 + t2 - 2.0 * t1 * t2) *
                       s * s * s * s;
    const double den = std::pow(1.0 - t1 * t2, 4.0);
    return num / den;
}

double boundary_second_derivative_at_one(double theta1, double theta2) {
    return -(1.0 - theta1) * (1.0 - theta2) /
           (theta1 + theta2 - 2.0 * theta1 * theta2);
}

bool TangencyReport::pass(double tol_algebraic, double tol_fd) const {
    const double kappa_target = 1.0 / tight_theta;
    return max_mismatch < tol_algebraic && min_offaxis_value > 0.0 &&
           value_at_zero < tol_algebraic &&
           std::abs(curvature_closed_form - kappa_target) < tol_fd &&
           std::abs(curvature_fd - kappa_target) < tol_fd;
}

TangencyReport tangency_certificate(double theta1, double theta2,
                                    std::span<const double> phi_grid) {
    TangencyReport rep;
    rep.tight_theta = composition_coefficient(theta1, theta2);
    const Disk circ = averaged_disk(rep.tight_theta);

    rep.min_offaxis_value = std::numeric_limits<double>::infinity();
    for (double phi : phi_grid) {
        const Complex z(circ.center + circ.radius * std::cos(phi),
                        circ.radius * std::sin(phi));
        const double f = envelope_quartic(theta1, theta2, z);
        const double g = tangency_gap(theta1, theta2, phi);
        rep.max_mismatch = std::max(rep.max_mismatch, std::abs(f - g));
        // Angles are reduced mod 2 pi so the exclusion window around the
        // tangency point applies near every multiple of 2 pi.
        double red = std::remainder(phi, 2.0 * kPi);
        if (std::abs(red) > 1e-3)
            rep.min_offaxis_value = std::min(rep.min_offaxis_value, g);
    }
    rep.value_at_zero = tangency_gap(theta1, theta2, 0.0);

    rep.curvature_closed_form = polar_curvature(
        1.0, 0.0, boundary_second_derivative_at_one(theta1, theta2));

    // Cross-check with central finite differences of the outer root branch.
    const ProductOval oval(theta1, theta2);
    auto outer_root = [&](double phi) {
        const double c = oval.coeff_c(phi);
        return c + std::sqrt(std::max(c * c - oval.coeff_d(), 0.0));
    };
    auto kappa_at = [&](double h) {
        const double d2 = (outer_root(h) - 2.0 * outer_root(0.0) + outer_root(-h)) / (h * h);
        const double d1 = (outer_root(h) - outer_root(-h)) / (2.0 * h);
        return polar_curvature(outer_root(0.0), d1, d2);
    };
    // Richardson pair over the two step sizes removes the h^2 truncation term.
    const double k_coarse = kappa_at(1e-3);
    const double k_fine = kappa_at(1e-4);
    rep.curvature_fd = (100.0 * k_fine - k_coarse) / 99.0;
    return rep;
}

// ---------------------------------------------------------------------------
// Davis-Yin Step-2 construction
// ---------------------------------------------------------------------------

DysConstruction dys_step2(const DysClass& cls, double theta) {
    if (!(theta >= -kPi / 2.0 && theta < kPi / 2.0))
        throw std::invalid_argument("construction angle must lie in [-pi/2, pi/2)");
    const double beta = cls.beta, gamma = cls.gamma;
    DysConstruction c;
    c.theta = theta;
    const double ct = std::cos(theta);
    c.a1 = ct * Complex(std::cos(theta), std::sin(theta));
    c.a2 = 2.0 * c.a1 * c.a1 - 2.0 * c.a1 + 1.0;
    c.a3 = (gamma / beta) * c.a1 * c.a1;
    c.o1 = c.a3 / 2.0;
    c.o2 = c.a2 - c.o1;
    c.p = (2.0 * beta - gamma) / (4.0 * beta - gamma);

    const Complex dvec = c.o2 - Complex(c.p, 0.0);
    const double dist = std::abs(dvec);
    const double reach = (gamma / (2.0 * beta)) * ct * ct;
    // |o2 - p| = R - reach > 0 for every valid (beta, gamma): the ray is
    // always well defined.
    c.b = Complex(c.p, 0.0) + dvec / dist * (dist + reach);
    return c;
}

Polyline dys_inner_trajectory(const DysClass& cls, std::size_t n) {
    Polyline out;
    out.closed = true;
    out.pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = -kPi / 2.0 + kPi * static_cast<double>(i) / n;
        out.pts.push_back(dys_step2(cls, theta).o2);
    }
    return out;
}

}  // namespace srg
