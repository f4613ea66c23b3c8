#include "srg/operatorlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace srg {

namespace {
constexpr double kPi = std::numbers::pi;
}

double norm(Vec2 v) { return std::hypot(v.x, v.y); }

Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}
Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}
Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}
Mat2 operator*(double s, const Mat2& a) {
    return {s * a.m00, s * a.m01, s * a.m10, s * a.m11};
}

double determinant(const Mat2& m) { return m.m00 * m.m11 - m.m01 * m.m10; }

Mat2 inverse(const Mat2& m) {
    const double det = determinant(m);
    if (std::abs(det) <= 1e-12)
        throw std::invalid_argument("matrix inverse: determinant too small");
    return {m.m11 / det, -m.m01 / det, -m.m10 / det, m.m00 / det};
}

double min_symmetric_eigenvalue(const Mat2& m) {
    const double s00 = m.m00;
    const double s11 = m.m11;
    const double s01 = 0.5 * (m.m01 + m.m10);
    const double tr = s00 + s11;
    const double disc = std::sqrt((s00 - s11) * (s00 - s11) + 4.0 * s01 * s01);
    return 0.5 * (tr - disc);
}

bool is_monotone(const Mat2& m, double tol) {
    return min_symmetric_eigenvalue(m) >= -tol;
}

bool is_cocoercive(const Mat2& m, double beta, double tol) {
    // Quadratic form <Mx,x> - beta |Mx|^2 >= 0.
    const Mat2 mt{m.m00, m.m10, m.m01, m.m11};
    const Mat2 q = mt * m;
    const Mat2 form{m.m00 - beta * q.m00, 0.5 * (m.m01 + m.m10) - beta * q.m01,
                    0.5 * (m.m01 + m.m10) - beta * q.m10, m.m11 - beta * q.m11};
    return min_symmetric_eigenvalue(form) >= -tol;
}

bool is_scaled_rotation(const Mat2& m, double tol) {
    return std::abs(m.m00 - m.m11) <= tol && std::abs(m.m01 + m.m10) <= tol;
}

Mat2 scaled_rotation(Complex z) {
    return {z.real(), -z.imag(), z.imag(), z.real()};
}

Mat2 averaged_from_contraction(double theta, Complex n) {
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("theta must lie in the open interval (0,1)");
    if (std::abs(n) > 1.0 + 1e-12)
        throw std::invalid_argument("contraction factor must satisfy |n| <= 1");
    return ((1.0 - theta) * Mat2::identity()) + (theta * scaled_rotation(n));
}

Mat2 resolvent_linear(const Mat2& m, double gamma) {
    return inverse(Mat2::identity() + gamma * m);
}

DysOperator dys_assemble(const Mat2& A, const Mat2& B, const Mat2& C,
                         double beta, double gamma) {
    if (!is_monotone(A) || !is_monotone(B))
        throw std::invalid_argument("dys_assemble: A and B must be monotone");
    if (!is_cocoercive(C, beta))
        throw std::invalid_argument("dys_assemble: C fails the cocoercivity check");
    if (!(beta > 0.0) || !(gamma > 0.0 && gamma < 2.0 * beta))
        throw std::invalid_argument("dys_assemble: need 0 < gamma < 2 beta");
    const Mat2 jb = resolvent_linear(B, gamma);
    const Mat2 ja = resolvent_linear(A, gamma);
    const Mat2 I = Mat2::identity();
    DysOperator op;
    op.resolvent_b = jb;
    op.matrix = I - jb + ja * (2.0 * jb - I - gamma * (C * jb));
    return op;
}

Complex dys_product_value(Complex z1, Complex z2, Complex z3, double gamma) {
    return 1.0 - z2 + z1 * (2.0 * z2 - 1.0 - gamma * z3 * z2);
}

std::vector<SrgSample> srg_points_of_linear(const Mat2& m, std::size_t n_directions) {
    if (n_directions < 1)
        throw std::invalid_argument("srg_points_of_linear: need n >= 1");
    std::vector<SrgSample> out;
    out.reserve(n_directions);
    for (std::size_t i = 0; i < n_directions; ++i) {
        const double a = kPi * static_cast<double>(i) / n_directions;
        const Vec2 u{std::cos(a), std::sin(a)};
        const Vec2 mu = m.apply(u);
        SrgSample s;
        s.magnitude = norm(mu);
        if (s.magnitude == 0.0) {
            s.angle = 0.0;
        } else {
            const double c = std::clamp((mu.x * u.x + mu.y * u.y) / s.magnitude, -1.0, 1.0);
            s.angle = std::acos(c);
        }
        s.point = s.magnitude * Complex(std::cos(s.angle), std::sin(s.angle));
        out.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

namespace {
std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
}  // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
}

std::uint64_t Rng::next() {
    // xoshiro256++
    auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

Complex Rng::uniform_disk(Complex center, double radius) {
    const double r = radius * std::sqrt(uniform());
    const double a = 2.0 * kPi * uniform();
    return center + r * Complex(std::cos(a), std::sin(a));
}

std::uint64_t slice_seed(std::uint64_t seed, std::uint64_t slice) {
    std::uint64_t s = seed ^ (0xA0761D6478BD642FULL * (slice + 1));
    return splitmix64(s);
}

namespace {
constexpr std::size_t kSliceSize = 65536;

std::size_t sweep_axis_count(std::size_t n, std::size_t lo, std::size_t hi) {
    const auto m = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    return std::clamp(m, lo, hi);
}
}  // namespace

std::vector<Complex> sample_composition_product(double theta1, double theta2,
                                                std::size_t n, std::uint64_t seed) {
    if (!(theta1 > 0.0 && theta1 < 1.0) || !(theta2 > 0.0 && theta2 < 1.0))
        throw std::invalid_argument("theta must lie in the open interval (0,1)");
    if (n < 1) throw std::invalid_argument("need n >= 1");
    std::vector<Complex> out;
    const std::size_t m = sweep_axis_count(n, 64, 512);
    out.reserve(n + m * m);

    const Complex c1(1.0 - theta1, 0.0), c2(1.0 - theta2, 0.0);
    for (std::size_t start = 0; start < n; start += kSliceSize) {
        Rng rng(slice_seed(seed, start / kSliceSize));
        const std::size_t stop = std::min(n, start + kSliceSize);
        for (std::size_t i = start; i < stop; ++i) {
            const Complex z1 = rng.uniform_disk(c1, theta1);
            const Complex z2 = rng.uniform_disk(c2, theta2);
            out.push_back(z1 * z2);
        }
    }

    // Deterministic boundary-pair sweep.
    std::vector<Complex> ring1(m), ring2(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double a = 2.0 * kPi * i / m;
        ring1[i] = c1 + theta1 * Complex(std::cos(a), std::sin(a));
        ring2[i] = c2 + theta2 * Complex(std::cos(a), std::sin(a));
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) out.push_back(ring1[i] * ring2[j]);
    return out;
}

std::vector<Complex> sample_dys_region(double beta, double gamma,
                                       std::size_t n, std::uint64_t seed) {
    const DysClass cls(beta, gamma);
    if (n < 1) throw std::invalid_argument("need n >= 1");
    std::vector<Complex> out;
    const std::size_t m = sweep_axis_count(n, 256, 2048);
    constexpr std::size_t kScales = 64;
    out.reserve(n + m * (kScales + 1));

    const Complex half(0.5, 0.0);
    for (std::size_t start = 0; start < n; start += kSliceSize) {
        Rng rng(slice_seed(seed, start / kSliceSize));
        const std::size_t stop = std::min(n, start + kSliceSize);
        for (std::size_t i = start; i < stop; ++i) {
            const Complex z1 = rng.uniform_disk(half, 0.5);
            const Complex z2 = rng.uniform_disk(half, 0.5);
            const Complex z3 = rng.uniform_disk(half / beta, 0.5 / beta);
            out.push_back(dys_product_value(z1, z2, z3, gamma));
        }
    }

    // Step-2 sweep: for each angle the boundary image b(theta), plus the
    // segment from a2(theta) (the z3 = 0 image) to b(theta). Every segment
    // point is a value of the map with z3 scaled along the witness ray.
    for (std::size_t i = 0; i < m; ++i) {
        const double theta = -kPi / 2.0 + kPi * static_cast<double>(i) / m;
        const DysConstruction c = dys_step2(cls, theta);
        out.push_back(c.b);
        for (std::size_t s = 0; s < kScales; ++s) {
            const double u = static_cast<double>(s) / kScales;
            out.push_back(c.a2 + u * (c.b - c.a2));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Coverage reports
// ---------------------------------------------------------------------------

namespace {

// Uniform bucket grid for nearest-sample queries.
class SampleIndex {
public:
    SampleIndex(std::span<const Complex> pts, double x0, double y0, double x1,
                double y1, double cell)
        : pts_(pts), x0_(x0), y0_(y0), cell_(cell) {
        nx_ = std::max<std::size_t>(1, static_cast<std::size_t>((x1 - x0) / cell) + 1);
        ny_ = std::max<std::size_t>(1, static_cast<std::size_t>((y1 - y0) / cell) + 1);
        buckets_.resize(nx_ * ny_);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto [bx, by] = bucket_of(pts[i]);
            buckets_[by * nx_ + bx].push_back(static_cast<std::uint32_t>(i));
        }
    }

    double nearest_distance(Complex q) const {
        const auto [bx, by] = bucket_of(q);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t ring = 0;; ++ring) {
            if (ring > nx_ + ny_) break;
            // Once a candidate is found, rings beyond best/cell cannot win.
            if (best < std::numeric_limits<double>::infinity() &&
                (static_cast<double>(ring) - 1.0) * cell_ > best)
                break;
            bool any_cell = false;
            const long r = static_cast<long>(ring);
            for (long dy = -r; dy <= r; ++dy) {
                for (long dx = -r; dx <= r; ++dx) {
                    if (std::max(std::labs(dx), std::labs(dy)) != r) continue;
                    const long cx = static_cast<long>(bx) + dx;
                    const long cy = static_cast<long>(by) + dy;
                    if (cx < 0 || cy < 0 || cx >= static_cast<long>(nx_) ||
                        cy >= static_cast<long>(ny_))
                        continue;
                    any_cell = true;
                    for (std::uint32_t i : buckets_[cy * nx_ + cx])
                        best = std::min(best, std::abs(pts_[i] - q));
                }
            }
            if (!any_cell && ring > std::max(nx_, ny_)) break;
        }
        return best;
    }

private:
    std::pair<std::size_t, std::size_t> bucket_of(Complex p) const {
        const double fx = (p.real() - x0_) / cell_;
        const double fy = (p.imag() - y0_) / cell_;
        const auto bx = static_cast<std::size_t>(
            std::clamp(fx, 0.0, static_cast<double>(nx_ - 1)));
        const auto by = static_cast<std::size_t>(
            std::clamp(fy, 0.0, static_cast<double>(ny_ - 1)));
        return {bx, by};
    }

    std::span<const Complex> pts_;
    double x0_, y0_, cell_;
    std::size_t nx_ = 0, ny_ = 0;
    std::vector<std::vector<std::uint32_t>> buckets_;
};

template <class InteriorFn, class ExcessFn>
VerificationReport run_coverage(std::span<const Complex> samples, double x0,
                                double y0, double x1, double y1,
                                std::size_t probe_resolution, double eps,
                                double tol, InteriorFn interior, ExcessFn excess) {
    VerificationReport rep;
    rep.n_samples = samples.size();
    rep.tol_containment = tol;
    rep.eps_coverage = eps;

    for (const Complex& s : samples) {
        const double e = excess(s);
        if (e > tol) rep.violations.emplace_back(s, e);
    }

    const double cell = std::max(eps / 2.0, 1e-6);
    SampleIndex index(samples, x0 - cell, y0 - cell, x1 + cell, y1 + cell, cell);
    double gap = 0.0;
    for (std::size_t j = 0; j < probe_resolution; ++j) {
        const double y = y0 + (y1 - y0) * (static_cast<double>(j) + 0.5) /
                                  static_cast<double>(probe_resolution);
        for (std::size_t i = 0; i < probe_resolution; ++i) {
            const double x = x0 + (x1 - x0) * (static_cast<double>(i) + 0.5) /
                                      static_cast<double>(probe_resolution);
            const Complex q(x, y);
            if (!interior(q)) continue;
            gap = std::max(gap, index.nearest_distance(q));
        }
    }
    rep.coverage_gap = gap;
    return rep;
}

}  // namespace

VerificationReport coverage_report(std::span<const Complex> samples,
                                   const Disk& target,
                                   std::size_t probe_resolution, double eps,
                                   double tol) {
    return run_coverage(
        samples, target.center - target.radius, -target.radius,
        target.center + target.radius, target.radius, probe_resolution, eps, tol,
        [&](Complex q) { return target.signed_distance(q) < 0.0; },
        [&](Complex s) { return target.signed_distance(s); });
}

VerificationReport coverage_report(std::span<const Complex> samples,
                                   const CompositionRegion& target,
                                   std::size_t probe_resolution, double eps,
                                   double tol) {
    double x0 = 1.0, x1 = -1.0, y0 = 1.0, y1 = -1.0;
    for (const Complex& p : target.boundary().pts) {
        x0 = std::min(x0, p.real());
        x1 = std::max(x1, p.real());
        y0 = std::min(y0, p.imag());
        y1 = std::max(y1, p.imag());
    }
    return run_coverage(
        samples, x0, y0, x1, y1, probe_resolution, eps, tol,
        [&](Complex q) { return target.radial_excess(q) < 0.0; },
        [&](Complex s) { return target.radial_excess(s); });
}

}  // namespace srg
