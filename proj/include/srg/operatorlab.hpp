#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "srg/planegeom.hpp"
#include "srg/srgcore.hpp"

namespace srg {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
double norm(Vec2 v);

/// 2x2 real matrix acting on the plane, row major.
struct Mat2 {
    double m00 = 0.0, m01 = 0.0;
    double m10 = 0.0, m11 = 0.0;

    Vec2 apply(Vec2 v) const {
        return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y};
    }
    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

Mat2 operator+(const Mat2& a, const Mat2& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(double s, const Mat2& a);
double determinant(const Mat2& m);
Mat2 inverse(const Mat2& m);  // throws on |det| <= 1e-12

/// Smallest eigenvalue of the symmetric part (M + M^T)/2.
double min_symmetric_eigenvalue(const Mat2& m);
bool is_monotone(const Mat2& m, double tol = 1e-12);
/// <Mx, x> >= beta |Mx|^2 for all x, checked on the symmetric part of
/// (M + M^T)/2 - beta M^T M.
bool is_cocoercive(const Mat2& m, double beta, double tol = 1e-12);
bool is_scaled_rotation(const Mat2& m, double tol = 1e-12);

/// Matrix realization of multiplication by z: r [[cos, -sin], [sin, cos]].
Mat2 scaled_rotation(Complex z);

/// (1-theta) I + theta * scaled_rotation(n) with |n| <= 1.
Mat2 averaged_from_contraction(double theta, Complex n);

/// (I + gamma M)^{-1}; throws when I + gamma M is near singular.
Mat2 resolvent_linear(const Mat2& m, double gamma);

/// Assembled Davis-Yin operator x -> x - J_B x + J_A(2 J_B x - x - gamma C J_B x)
/// with J_A = (I + gamma A)^{-1}, J_B = (I + gamma B)^{-1}. The map is linear,
/// so the matrix is exposed directly.
struct DysOperator {
    Mat2 matrix;
    Mat2 resolvent_b;  // J_{gamma B}, used to read off the inclusion solution
    Vec2 operator()(Vec2 x) const { return matrix.apply(x); }
};

/// Validates monotonicity of A and B and beta-cocoercivity of C, then builds
/// the splitting operator.
DysOperator dys_assemble(const Mat2& A, const Mat2& B, const Mat2& C,
                         double beta, double gamma);

/// Complex-arithmetic form of the assembled map on scaled rotations:
/// 1 - z2 + z1 (2 z2 - 1 - gamma z3 z2).
Complex dys_product_value(Complex z1, Complex z2, Complex z3, double gamma);

struct SrgSample {
    double magnitude = 0.0;
    double angle = 0.0;  // in [0, pi]
    Complex point;       // magnitude * e^{i angle}; the conjugate is implied
};

/// SRG samples of a linear operator over a uniform grid of unit directions.
std::vector<SrgSample> srg_points_of_linear(const Mat2& m, std::size_t n_directions);

/// Deterministic seeded RNG; the stream is fixed by this library, not the
/// standard library's distributions, so outputs are stable across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    double uniform();  // in [0, 1)
    double uniform(double lo, double hi);
    Complex uniform_disk(Complex center, double radius);

private:
    std::uint64_t state_[4];
    std::uint64_t next();
};

/// Mixes a base seed with a slice index; sampling routines draw each slice
/// independently so any partition of the index range gives the same merged
/// output.
std::uint64_t slice_seed(std::uint64_t seed, std::uint64_t slice);

/// n random products z1 z2 with zi uniform on Disk(theta_i), plus a
/// deterministic sweep of boundary-pair products Circ(theta1) x Circ(theta2).
std::vector<Complex> sample_composition_product(double theta1, double theta2,
                                                std::size_t n, std::uint64_t seed);

/// n random values of the splitting map over Disk(1/2)^2 x (1/beta)Disk(1/2),
/// plus the deterministic Step-2 sweep: boundary images b(theta) together
/// with the construction segments a2(theta) -> b(theta), all of which are
/// values of the map by construction.
std::vector<Complex> sample_dys_region(double beta, double gamma,
                                       std::size_t n, std::uint64_t seed);

struct VerificationReport {
    std::size_t n_samples = 0;
    std::vector<std::pair<Complex, double>> violations;  // sample, signed excess
    double coverage_gap = 0.0;
    double tol_containment = 1e-9;
    double eps_coverage = 0.0;
    std::uint64_t seed = 0;
    bool pass() const {
        return violations.empty() && coverage_gap <= eps_coverage;
    }
};

VerificationReport coverage_report(std::span<const Complex> samples,
                                   const Disk& target,
                                   std::size_t probe_resolution, double eps,
                                   double tol = 1e-9);

VerificationReport coverage_report(std::span<const Complex> samples,
                                   const CompositionRegion& target,
                                   std::size_t probe_resolution, double eps,
                                   double tol = 1e-9);

}  // namespace srg
