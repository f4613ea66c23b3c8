#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "srg/operatorlab.hpp"

namespace srg {

using PlaneMap = std::function<Vec2(Vec2)>;

/// Fixed-point iteration record: iterates x_0..x_K and the K residuals
/// ||x_k - T x_k||.
struct IterationTrace {
    std::vector<Vec2> iterates;
    std::vector<double> residuals;
    double theta_claimed = 0.0;
    std::optional<Vec2> x_star;
};

/// Runs x_{k+1} = T x_k for K steps. Throws std::runtime_error naming the
/// offending step when a non-finite value appears.
IterationTrace iterate(const PlaneMap& T, Vec2 x0, std::size_t K);

/// Estimates the fixed point by running extra_factor * K more iterations and
/// taking the final iterate; records the residual there as the approximation
/// slack.
struct FixedPointEstimate {
    Vec2 x_star;
    double residual;  // ||x - Tx|| at the estimate
};
FixedPointEstimate estimate_fixed_point(const PlaneMap& T, Vec2 x0, std::size_t K,
                                        std::size_t extra_factor = 10);

/// Check of the Krasnosel'skii-Mann residual bound
/// ||x_k - T x_k||^2 <= theta ||x0 - x*||^2 / ((1-theta)(k+1)) for every k.
struct RateReport {
    bool holds = true;
    std::size_t first_violation = 0;  // meaningful when !holds
    double max_ratio = 0.0;           // residual^2 (k+1)(1-theta) / (theta ||x0-x*||^2)
    double x_star_residual = 0.0;     // slack carried by an approximate x*
};
RateReport residual_rate_check(const IterationTrace& trace, double rel_tol = 1e-9);

/// Per-step bound on the residual itself (square root of the KM bound).
double residual_bound(double theta, double dist0, std::size_t k);

/// Runs DYS iteration on linear A, B, C, reads off z = J_{gamma B} x_K and
/// reports the inclusion residual ||(A+B+C) z||. The condition factor is the
/// spectral norm of (A+B+C) J_{gamma B} (I - T)^{-1}, which converts a
/// fixed-point residual into an inclusion-residual bound; it is 0 when I - T
/// is singular.
struct InclusionReport {
    Vec2 z;
    double inclusion_residual = 0.0;
    double fixed_point_residual = 0.0;
    double condition_factor = 0.0;
    std::size_t iterations = 0;
};
InclusionReport dys_solve_inclusion(const Mat2& A, const Mat2& B, const Mat2& C,
                                    double beta, double gamma, Vec2 x0,
                                    std::size_t K);

}  // namespace srg
