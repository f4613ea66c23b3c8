#include "srg/iterbench.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace srg {

IterationTrace iterate(const PlaneMap& T, Vec2 x0, std::size_t K) {
    if (K < 1) throw std::invalid_argument("iterate: need K >= 1");
    IterationTrace trace;
    trace.iterates.reserve(K + 1);
    trace.residuals.reserve(K);
    Vec2 x = x0;
    trace.iterates.push_back(x);
    for (std::size_t k = 0; k < K; ++k) {
        const Vec2 next = T(x);
        if (!std::isfinite(next.x) || !std::isfinite(next.y))
            throw std::runtime_error("iterate: non-finite iterate at step " +
                                     std::to_string(k + 1));
        trace.residuals.push_back(norm(x - next));
        trace.iterates.push_back(next);
        x = next;
    }
    return trace;
}

FixedPointEstimate estimate_fixed_point(const PlaneMap& T, Vec2 x0, std::size_t K,
                                        std::size_t extra_factor) {
    Vec2 x = x0;
    const std::size_t total = K * (extra_factor + 1);
    for (std::size_t k = 0; k < total; ++k) x = T(x);
    return {x, norm(x - T(x))};
}

double residual_bound(double theta, double dist0, std::size_t k) {
    return std::sqrt(theta / ((1.0 - theta) * static_cast<double>(k + 1))) * dist0;
}

RateReport residual_rate_check(const IterationTrace& trace, double rel_tol) {
    if (!(trace.theta_claimed > 0.0 && trace.theta_claimed < 1.0))
        throw std::invalid_argument("residual_rate_check: theta_claimed must be in (0,1)");
    if (!trace.x_star)
        throw std::invalid_argument("residual_rate_check: trace carries no x_star");
    if (trace.iterates.empty())
        throw std::invalid_argument("residual_rate_check: empty trace");

    const double theta = trace.theta_claimed;
    const double dist0 = norm(trace.iterates.front() - *trace.x_star);
    const double denom0 = theta * dist0 * dist0;

    RateReport rep;
    for (std::size_t k = 0; k < trace.residuals.size(); ++k) {
        const double r2 = trace.residuals[k] * trace.residuals[k];
        const double scaled = r2 * static_cast<double>(k + 1) * (1.0 - theta);
        const double ratio = denom0 > 0.0
                                 ? scaled / denom0
                                 : (r2 > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        if (ratio > rep.max_ratio) rep.max_ratio = ratio;
        if (rep.holds && ratio > 1.0 + rel_tol) {
            rep.holds = false;
            rep.first_violation = k;
        }
    }
    return rep;
}

InclusionReport dys_solve_inclusion(const Mat2& A, const Mat2& B, const Mat2& C,
                                    double beta, double gamma, Vec2 x0,
                                    std::size_t K) {
    const DysOperator op = dys_assemble(A, B, C, beta, gamma);
    Vec2 x = x0;
    for (std::size_t k = 0; k < K; ++k) {
        x = op(x);
        if (!std::isfinite(x.x) || !std::isfinite(x.y))
            throw std::runtime_error("dys_solve_inclusion: non-finite iterate at step " +
                                     std::to_string(k + 1));
    }
    InclusionReport rep;
    rep.iterations = K;
    rep.fixed_point_residual = norm(x - op(x));
    rep.z = op.resolvent_b.apply(x);
    const Mat2 sum = A + B + C;
    rep.inclusion_residual = norm(sum.apply(rep.z));

    const Mat2 imt = Mat2::identity() - op.matrix;
    if (std::abs(determinant(imt)) > 1e-12) {
        const Mat2 m = (sum * op.resolvent_b) * inverse(imt);
        // Spectral norm of a 2x2: largest singular value.
        const double a = m.m00 * m.m00 + m.m01 * m.m01 + m.m10 * m.m10 + m.m11 * m.m11;
        const double d = determinant(m);
        const double disc = std::sqrt(std::max(a * a - 4.0 * d * d, 0.0));
        rep.condition_factor = std::sqrt(0.5 * (a + disc));
    }
    return rep;
}

}  // namespace srg
