#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "srg/planegeom.hpp"

namespace srg {

/// Class of theta-averaged operators; theta strictly inside (0,1).
struct AveragedClass {
    double theta;
    explicit AveragedClass(double t);
};

/// Class of beta-cocoercive operators; beta > 0.
struct CocoerciveClass {
    double beta;
    explicit CocoerciveClass(double b);
};

/// Class of Davis-Yin splitting operators built from two maximal monotone
/// operators and a beta-cocoercive one, with step gamma in (0, 2 beta).
struct DysClass {
    double beta;
    double gamma;
    DysClass(double b, double g);
};

/// SRG of the theta-averaged class: Disk(theta).
Disk averaged_srg(const AveragedClass& cls);

/// Smallest averagedness coefficient of the composition of a theta1- and a
/// theta2-averaged operator: (t1 + t2 - 2 t1 t2) / (1 - t1 t2).
double composition_coefficient(double theta1, double theta2);

/// SRG of the DYS class: disk with center (2b-g)/(4b-g) and radius 2b/(4b-g).
Disk dys_srg(const DysClass& cls);

/// Configuration of the existential membership oracle over Disk(theta2).
struct MembershipConfig {
    std::size_t grid_radial = 256;
    std::size_t grid_angular = 256;
    int refine_levels = 6;
    std::size_t refine_size = 16;
    double tol = 1e-9;
};

/// The region Disk(theta1)Disk(theta2) of Minkowski products, bounded by the
/// outer curve of the product oval. Carries an extracted boundary polyline
/// and two membership routes: the witness-search oracle (authoritative) and
/// a fast radial classification from the polar quadratic.
class CompositionRegion {
public:
    CompositionRegion(double theta1, double theta2,
                      std::size_t boundary_resolution = 1024,
                      MembershipConfig cfg = {});

    double theta1() const { return oval_.theta1; }
    double theta2() const { return oval_.theta2; }
    const ProductOval& oval() const { return oval_; }
    const Polyline& boundary() const { return boundary_; }
    /// True when the boundary had to be rebuilt from the polar roots because
    /// the contour component through 1 failed validation.
    bool used_polar_fallback() const { return used_polar_fallback_; }

    /// Minimum over witness candidates w in Disk(theta2) of the signed
    /// distance of z/w to Disk(theta1); <= 0 certifies membership.
    double witness_violation(Complex z) const;

    /// Membership decided by the witness search; points within 1e-9 of the
    /// boundary polyline count as inside (the region is closed).
    bool contains(Complex z) const;

    /// Radial excess of z over the outer curve along its own ray: positive
    /// outside, negative inside. For parameter pairs with both thetas below
    /// 1/2 the region is a crescent and the inner branch also bounds it.
    double radial_excess(Complex z) const;
    bool contains_fast(Complex z, double tol = 1e-9) const {
        return radial_excess(z) <= tol;
    }

    double distance_to_boundary(Complex z) const;

private:
    ProductOval oval_;
    MembershipConfig cfg_;
    Polyline boundary_;
    bool used_polar_fallback_ = false;
};

/// Boundary of Disk(theta1)Disk(theta2) evaluated directly from the polar
/// roots. For d = (1-2t1)(1-2t2) > 0 with both thetas below 1/2 the curve is
/// traced along both quadratic branches over the limited angular range; the
/// closed-curve orientation is counterclockwise.
Polyline polar_boundary(double theta1, double theta2, std::size_t resolution);

/// Evidence that Circ(theta) with theta = composition_coefficient(t1,t2)
/// touches the product region boundary only at 1 with matching curvature.
struct TangencyReport {
    double tight_theta = 0.0;
    double max_mismatch = 0.0;       // quartic on Circ(theta) vs closed form
    double min_offaxis_value = 0.0;  // min of the closed form away from 0
    double value_at_zero = 0.0;
    double curvature_closed_form = 0.0;
    double curvature_fd = 0.0;       // finite differences of the root branch
    bool pass(double tol_algebraic = 1e-9, double tol_fd = 1e-5) const;
};

TangencyReport tangency_certificate(double theta1, double theta2,
                                    std::span<const double> phi_grid);

/// Closed form of the quartic restricted to Circ(theta):
/// 16 t1^2 t2^2 (1-t1)^2 (1-t2)^2 (t1+t2-2t1t2)^2 sin^4(phi/2) / (1-t1t2)^4.
double tangency_gap(double theta1, double theta2, double phi);

/// Second derivative at phi = 0 of the outer root branch of the product
/// oval: -(1-t1)(1-t2) / (t1 + t2 - 2 t1 t2).
double boundary_second_derivative_at_one(double theta1, double theta2);

/// The Step-2 construction realizing boundary points of the DYS disk from
/// the restriction z1 = z2 = cos(theta) e^{i theta} on Circ(1/2).
struct DysConstruction {
    double theta = 0.0;
    Complex a1;  // cos(theta) e^{i theta}
    Complex a2;  // 2 a1^2 - 2 a1 + 1 = cos(2 theta) e^{2 i theta}
    Complex a3;  // (gamma/beta) a1^2
    Complex o1;  // a3 / 2
    Complex o2;  // a2 - o1
    Complex b;   // farthest point of the construction disk from p
    double p = 0.0;  // (2b-g)/(4b-g), center of the DYS disk
};

/// Builds the construction for theta in [-pi/2, pi/2); |b - p| equals the
/// DYS disk radius exactly by construction.
DysConstruction dys_step2(const DysClass& cls, double theta);

/// Closed trajectory of o2 over the sweep theta in [-pi/2, pi/2).
Polyline dys_inner_trajectory(const DysClass& cls, std::size_t n);

}  // namespace srg
