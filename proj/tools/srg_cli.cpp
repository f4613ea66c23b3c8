#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "srg/documents.hpp"
#include "srg/iterbench.hpp"
#include "srg/operatorlab.hpp"
#include "srg/planegeom.hpp"
#include "srg/srgcore.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitIoFailure = 3;

constexpr double kPi = std::numbers::pi;

struct CommonOpts {
    std::uint64_t seed = 1;
    double tol_analytic = 1e-9;
    double tol_mc = 1e-3;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--seed", opts.seed, "RNG seed");
    cmd->add_option("--tol-analytic", opts.tol_analytic, "tolerance for algebraic identities");
    cmd->add_option("--tol-mc", opts.tol_mc, "tolerance for Monte-Carlo agreement");
}

int write_or_fail(const std::string& path, const std::string& text) {
    if (!srg::write_text_file(path, text)) {
        std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
        return kExitIoFailure;
    }
    return kExitPass;
}

std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// coeff
// ---------------------------------------------------------------------------

int run_coeff(double theta1, double theta2, bool json) {
    const double theta = srg::composition_coefficient(theta1, theta2);
    const srg::Disk disk = srg::averaged_disk(theta);
    if (json) {
        std::string out = "{\"theta1\": " + srg::format_number(theta1) +
                          ", \"theta2\": " + srg::format_number(theta2) +
                          ", \"theta\": " + srg::format_number(theta) +
                          ", \"disk\": {\"center\": " + srg::format_number(disk.center) +
                          ", \"radius\": " + srg::format_number(disk.radius) + "}}\n";
        std::fputs(out.c_str(), stdout);
    } else {
        std::printf("%s\n", fmt12(theta).c_str());
        std::printf("Disk(theta): center %s radius %s\n", fmt12(disk.center).c_str(),
                    fmt12(disk.radius).c_str());
    }
    return kExitPass;
}

// ---------------------------------------------------------------------------
// region
// ---------------------------------------------------------------------------

struct RegionOpts {
    std::string kind;
    double theta = 0.0, theta1 = 0.0, theta2 = 0.0, beta = 1.0, gamma = 1.0;
    std::size_t resolution = 1024;
    std::string out;
    std::string svg;
    CommonOpts common;
};

int run_region(const RegionOpts& o) {
    srg::RegionDocument doc;
    doc.resolution = o.resolution;
    doc.tol_analytic = o.common.tol_analytic;
    doc.tol_monte_carlo = o.common.tol_mc;
    srg::Disk tight{};
    if (o.kind == "disk") {
        const srg::Disk d = srg::averaged_disk(o.theta);
        doc.kind = "disk";
        doc.parameters = {{"theta", o.theta}};
        doc.boundary = d.boundary(o.resolution).pts;
        tight = d;
    } else if (o.kind == "dys") {
        const srg::Disk d = srg::dys_srg(srg::DysClass(o.beta, o.gamma));
        doc.kind = "disk";
        doc.parameters = {{"beta", o.beta}, {"gamma", o.gamma}};
        doc.boundary = d.boundary(o.resolution).pts;
        tight = d;
    } else if (o.kind == "composition") {
        const srg::CompositionRegion region(o.theta1, o.theta2, o.resolution);
        doc.kind = "composition-oval";
        doc.parameters = {{"theta1", o.theta1}, {"theta2", o.theta2}};
        doc.boundary = region.boundary().pts;
        tight = srg::averaged_disk(srg::composition_coefficient(o.theta1, o.theta2));
    } else {
        std::fprintf(stderr, "error: unknown region kind '%s'\n", o.kind.c_str());
        return kExitBadInput;
    }
    int rc = write_or_fail(o.out, srg::to_json(doc));
    if (rc != kExitPass) return rc;
    if (!o.svg.empty()) {
        srg::Polyline pl;
        pl.closed = true;
        pl.pts = doc.boundary;
        rc = write_or_fail(o.svg, srg::region_svg(pl, tight));
    }
    return rc;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOpts {
    std::string suite;
    double theta1 = 0.5, theta2 = 0.5;
    double beta = 1.0, gamma = 1.0;
    double delta = 0.05;
    std::size_t n = 100000;
    double eps = 0.02;
    std::size_t probe_resolution = 64;
    std::size_t boundary_resolution = 1024;
    std::size_t instances = 100;
    std::size_t iterations = 1000;
    std::string out;
    CommonOpts common;
};

void record_violations(srg::ReportDocument& doc, const srg::VerificationReport& rep,
                       double eps) {
    srg::CheckRecord c;
    c.name = "containment-violations";
    c.observed = static_cast<double>(rep.violations.size());
    c.expected = 0.0;
    c.tolerance = 0.0;
    c.pass = rep.violations.empty();
    for (std::size_t i = 0; i < rep.violations.size() && i < 8; ++i)
        c.witness.push_back(rep.violations[i].first);
    doc.checks.push_back(std::move(c));

    srg::CheckRecord g;
    g.name = "coverage-gap";
    g.observed = rep.coverage_gap;
    g.expected = 0.0;
    g.tolerance = eps;
    g.pass = rep.coverage_gap <= eps;
    doc.checks.push_back(std::move(g));
}

srg::ReportDocument verify_composition(const VerifyOpts& o) {
    srg::ReportDocument doc;
    doc.suite = "composition";
    doc.seed = o.common.seed;
    const srg::CompositionRegion region(o.theta1, o.theta2, o.boundary_resolution);
    const auto samples =
        srg::sample_composition_product(o.theta1, o.theta2, o.n, o.common.seed);
    const auto rep = srg::coverage_report(samples, region, o.probe_resolution, o.eps,
                                          o.common.tol_analytic);
    record_violations(doc, rep, o.eps);
    doc.finalize();
    return doc;
}

srg::ReportDocument verify_dys(const VerifyOpts& o) {
    srg::ReportDocument doc;
    doc.suite = "dys";
    doc.seed = o.common.seed;
    const srg::DysClass cls(o.beta, o.gamma);
    const srg::Disk disk = srg::dys_srg(cls);
    const auto samples = srg::sample_dys_region(o.beta, o.gamma, o.n, o.common.seed);
    const auto rep = srg::coverage_report(samples, disk, o.probe_resolution, o.eps,
                                          o.common.tol_analytic);
    record_violations(doc, rep, o.eps);

    // The Step-2 sweep must land on the boundary circle.
    srg::CheckRecord sweep;
    sweep.name = "step2-sweep-on-circle";
    sweep.expected = 0.0;
    sweep.tolerance = o.common.tol_analytic;
    double worst = 0.0;
    for (std::size_t i = 0; i < 2048; ++i) {
        const double theta = -kPi / 2.0 + kPi * static_cast<double>(i) / 2048.0;
        const srg::DysConstruction c = srg::dys_step2(cls, theta);
        worst = std::max(worst, std::abs(disk.signed_distance(c.b)));
    }
    sweep.observed = worst;
    sweep.pass = worst <= sweep.tolerance;
    doc.checks.push_back(std::move(sweep));
    doc.finalize();
    return doc;
}

srg::ReportDocument verify_tightness(const VerifyOpts& o) {
    srg::ReportDocument doc;
    doc.suite = "tightness";
    doc.seed = o.common.seed;

    std::vector<double> grid;
    grid.reserve(2048);
    for (std::size_t i = 0; i < 2048; ++i)
        grid.push_back(-kPi + 2.0 * kPi * (static_cast<double>(i) + 0.5) / 2048.0);
    const srg::TangencyReport tr =
        srg::tangency_certificate(o.theta1, o.theta2, grid);

    srg::CheckRecord mism{"circ-quartic-matches-closed-form", tr.max_mismatch, 0.0,
                          o.common.tol_analytic,
                          tr.max_mismatch < o.common.tol_analytic, {}};
    doc.checks.push_back(mism);
    srg::CheckRecord pos{"closed-form-positive-off-axis", tr.min_offaxis_value, 0.0,
                         0.0, tr.min_offaxis_value > 0.0, {}};
    doc.checks.push_back(pos);
    const double kappa = 1.0 / tr.tight_theta;
    srg::CheckRecord curv{"curvature-at-one", tr.curvature_fd, kappa, 1e-5,
                          std::abs(tr.curvature_fd - kappa) < 1e-5 &&
                              std::abs(tr.curvature_closed_form - kappa) < 1e-5,
                          {}};
    doc.checks.push_back(curv);

    // Shrink the tight disk by delta and find a boundary point outside it.
    const double theta = tr.tight_theta;
    const double shrunk = (1.0 - o.delta) * theta;
    const srg::ProductOval oval(o.theta1, o.theta2);
    double best = -1.0;
    srg::Complex witness;
    for (std::size_t i = 1; i <= 20000; ++i) {
        const double phi = 0.6 * static_cast<double>(i) / 20000.0;
        const double c = oval.coeff_c(phi);
        const double disc = c * c - oval.coeff_d();
        if (disc < 0.0) continue;
        const double r = c + std::sqrt(disc);
        const srg::Complex z(r * std::cos(phi), r * std::sin(phi));
        const double sd = std::abs(z - srg::Complex(1.0 - shrunk, 0.0)) - shrunk;
        if (sd > best) { best = sd; witness = z; }
    }
    srg::CheckRecord wit{"witness-outside-shrunk-disk", best, 0.0, 0.0, best > 0.0,
                         {witness}};
    doc.checks.push_back(wit);
    doc.finalize();
    return doc;
}

srg::ReportDocument verify_rates(const VerifyOpts& o) {
    srg::ReportDocument doc;
    doc.suite = "rates";
    doc.seed = o.common.seed;
    srg::Rng rng(o.common.seed);

    double worst_ratio = 0.0;
    bool all_hold = true;
    for (std::size_t inst = 0; inst < o.instances; ++inst) {
        const double t1 = rng.uniform(0.05, 0.95);
        const double t2 = rng.uniform(0.05, 0.95);
        const double mag1 = rng.uniform(0.0, 1.0);
        const double mag2 = rng.uniform(0.0, 1.0);
        const double a1 = rng.uniform(-kPi, kPi);
        const double a2 = rng.uniform(-kPi, kPi);
        const srg::Mat2 T =
            srg::averaged_from_contraction(t1, std::polar(mag1, a1)) *
            srg::averaged_from_contraction(t2, std::polar(mag2, a2));
        const srg::Vec2 x0{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        auto trace = srg::iterate([&](srg::Vec2 v) { return T.apply(v); }, x0,
                                  o.iterations);
        trace.theta_claimed = srg::composition_coefficient(t1, t2);
        trace.x_star = srg::Vec2{0.0, 0.0};
        const srg::RateReport rr = srg::residual_rate_check(trace);
        worst_ratio = std::max(worst_ratio, rr.max_ratio);
        all_hold = all_hold && rr.holds;
    }
    srg::CheckRecord rate{"km-residual-bound", worst_ratio, 1.0, 1e-9, all_hold, {}};
    doc.checks.push_back(rate);

    // Inclusion demo on a well-conditioned random linear instance.
    auto random_monotone = [&rng]() {
        const double l1 = rng.uniform(0.3, 1.5);
        const double l2 = rng.uniform(0.3, 1.5);
        const double ang = rng.uniform(0.0, kPi);
        const double cs = std::cos(ang), sn = std::sin(ang);
        const srg::Mat2 sym{l1 * cs * cs + l2 * sn * sn, (l1 - l2) * cs * sn,
                            (l1 - l2) * cs * sn, l1 * sn * sn + l2 * cs * cs};
        const double w = rng.uniform(-1.0, 1.0);
        return sym + srg::Mat2{0.0, -w, w, 0.0};
    };
    const srg::Mat2 A = random_monotone();
    const srg::Mat2 B = random_monotone();
    const double psi = rng.uniform(-1.0, 1.0);
    const double rho = std::cos(psi) / o.beta * rng.uniform(0.3, 0.9);
    const srg::Mat2 C = srg::scaled_rotation(std::polar(rho, psi));
    const srg::InclusionReport ir = srg::dys_solve_inclusion(
        A, B, C, o.beta, o.gamma, srg::Vec2{1.0, 0.5}, 10000);
    srg::CheckRecord inc{"dys-inclusion-residual", ir.inclusion_residual, 0.0, 1e-8,
                         ir.inclusion_residual <= 1e-8, {}};
    doc.checks.push_back(inc);
    doc.finalize();
    return doc;
}

int run_verify(const VerifyOpts& o) {
    srg::ReportDocument doc;
    if (o.suite == "composition") doc = verify_composition(o);
    else if (o.suite == "dys") doc = verify_dys(o);
    else if (o.suite == "tightness") doc = verify_tightness(o);
    else if (o.suite == "rates") doc = verify_rates(o);
    else {
        std::fprintf(stderr, "error: unknown suite '%s'\n", o.suite.c_str());
        return kExitBadInput;
    }
    const std::string text = srg::to_json(doc);
    if (!o.out.empty()) {
        const int rc = write_or_fail(o.out, text);
        if (rc != kExitPass) return rc;
    } else {
        std::fputs(text.c_str(), stdout);
    }
    for (const auto& c : doc.checks)
        std::fprintf(stderr, "%s: %s (observed %.6g)\n", c.name.c_str(),
                     c.pass ? "pass" : "FAIL", c.observed);
    return doc.pass ? kExitPass : kExitVerifyFailed;
}

// ---------------------------------------------------------------------------
// iterate
// ---------------------------------------------------------------------------

struct IterateOpts {
    std::string kind = "composition";
    double theta1 = 0.5, theta2 = 0.5;
    double angle1 = 0.0, angle2 = 0.0, mag1 = 1.0, mag2 = 1.0;
    double beta = 1.0, gamma = 1.0;
    double a_mag = 0.0, a_arg = 0.0, b_mag = 0.0, b_arg = 0.0;
    double c_mag = 0.0, c_arg = 0.0;
    double x0_re = 1.0, x0_im = 0.0;
    double theta_claimed = 0.0;  // 0 means derive from the operator kind
    std::size_t K = 1000;
    std::string out;
    CommonOpts common;
};

int run_iterate(const IterateOpts& o) {
    srg::PlaneMap T;
    double theta = o.theta_claimed;
    if (o.kind == "identity") {
        T = [](srg::Vec2 v) { return v; };
        if (theta == 0.0) theta = 0.5;
    } else if (o.kind == "composition") {
        const srg::Mat2 M =
            srg::averaged_from_contraction(o.theta1, std::polar(o.mag1, o.angle1)) *
            srg::averaged_from_contraction(o.theta2, std::polar(o.mag2, o.angle2));
        T = [M](srg::Vec2 v) { return M.apply(v); };
        if (theta == 0.0) theta = srg::composition_coefficient(o.theta1, o.theta2);
    } else if (o.kind == "dys") {
        const srg::Mat2 A = srg::scaled_rotation(std::polar(o.a_mag, o.a_arg));
        const srg::Mat2 B = srg::scaled_rotation(std::polar(o.b_mag, o.b_arg));
        const srg::Mat2 C = srg::scaled_rotation(std::polar(o.c_mag, o.c_arg));
        const srg::DysOperator op = srg::dys_assemble(A, B, C, o.beta, o.gamma);
        T = [op](srg::Vec2 v) { return op(v); };
        if (theta == 0.0) theta = 2.0 * o.beta / (4.0 * o.beta - o.gamma);
    } else {
        std::fprintf(stderr, "error: unknown operator kind '%s'\n", o.kind.c_str());
        return kExitBadInput;
    }

    const srg::Vec2 x0{o.x0_re, o.x0_im};
    srg::IterationTrace trace = srg::iterate(T, x0, o.K);
    const srg::FixedPointEstimate fp = srg::estimate_fixed_point(T, x0, o.K);
    trace.theta_claimed = theta;
    trace.x_star = fp.x_star;

    const double dist0 = srg::norm(x0 - fp.x_star);
    std::vector<std::pair<double, double>> pts;
    std::vector<double> bounds;
    pts.reserve(o.K);
    bounds.reserve(o.K);
    for (std::size_t k = 0; k < o.K; ++k) {
        pts.emplace_back(trace.iterates[k].x, trace.iterates[k].y);
        bounds.push_back(srg::residual_bound(theta, dist0, k));
    }
    const std::string csv = srg::iteration_csv(pts, trace.residuals, bounds);
    if (!o.out.empty()) {
        const int rc = write_or_fail(o.out, csv);
        if (rc != kExitPass) return rc;
    } else {
        std::fputs(csv.c_str(), stdout);
    }
    const srg::RateReport rr = srg::residual_rate_check(trace);
    std::printf("max residual^2 (k+1)(1-theta)/theta ratio: %s (x* residual %s)\n",
                fmt12(rr.max_ratio).c_str(), fmt12(fp.residual).c_str());
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact SRG regions for compositions of averaged operators and "
                 "Davis-Yin splitting, with sampling-based verification"};
    app.require_subcommand(1);

    double c_theta1 = 0.0, c_theta2 = 0.0;
    bool c_json = false;
    CommonOpts c_common;
    CLI::App* coeff = app.add_subcommand("coeff", "tight composition coefficient");
    coeff->add_option("--theta1", c_theta1, "first averagedness coefficient")->required();
    coeff->add_option("--theta2", c_theta2, "second averagedness coefficient")->required();
    coeff->add_flag("--json", c_json, "emit JSON");
    add_common(coeff, c_common);

    RegionOpts r;
    CLI::App* region = app.add_subcommand("region", "compute a region document");
    region->add_option("--kind", r.kind, "disk | composition | dys")->required();
    region->add_option("--theta", r.theta, "disk coefficient");
    region->add_option("--theta1", r.theta1, "first coefficient");
    region->add_option("--theta2", r.theta2, "second coefficient");
    region->add_option("--beta", r.beta, "cocoercivity constant");
    region->add_option("--gamma", r.gamma, "step size");
    region->add_option("--resolution", r.resolution, "boundary resolution");
    region->add_option("--out", r.out, "output JSON path")->required();
    region->add_option("--svg", r.svg, "optional SVG path");
    add_common(region, r.common);

    VerifyOpts v;
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", v.suite, "composition | dys | tightness | rates")
        ->required();
    verify->add_option("--theta1", v.theta1, "first coefficient");
    verify->add_option("--theta2", v.theta2, "second coefficient");
    verify->add_option("--beta", v.beta, "cocoercivity constant");
    verify->add_option("--gamma", v.gamma, "step size");
    verify->add_option("--delta", v.delta, "relative shrink for tightness witnesses");
    verify->add_option("--n", v.n, "Monte-Carlo sample count");
    verify->add_option("--eps", v.eps, "coverage gap threshold");
    verify->add_option("--probe-resolution", v.probe_resolution, "probe grid side");
    verify->add_option("--boundary-resolution", v.boundary_resolution,
                       "composition boundary resolution");
    verify->add_option("--instances", v.instances, "rate-suite instance count");
    verify->add_option("--K", v.iterations, "rate-suite iteration count");
    verify->add_option("--out", v.out, "report JSON path");
    add_common(verify, v.common);

    IterateOpts it;
    CLI::App* iter = app.add_subcommand("iterate", "fixed-point iteration trace");
    iter->add_option("--kind", it.kind, "identity | composition | dys");
    iter->add_option("--theta1", it.theta1, "first coefficient");
    iter->add_option("--theta2", it.theta2, "second coefficient");
    iter->add_option("--angle1", it.angle1, "rotation angle of the first factor");
    iter->add_option("--angle2", it.angle2, "rotation angle of the second factor");
    iter->add_option("--mag1", it.mag1, "contraction magnitude of the first factor");
    iter->add_option("--mag2", it.mag2, "contraction magnitude of the second factor");
    iter->add_option("--beta", it.beta, "cocoercivity constant");
    iter->add_option("--gamma", it.gamma, "step size");
    iter->add_option("--a-mag", it.a_mag, "scaled rotation magnitude of A");
    iter->add_option("--a-arg", it.a_arg, "scaled rotation angle of A");
    iter->add_option("--b-mag", it.b_mag, "scaled rotation magnitude of B");
    iter->add_option("--b-arg", it.b_arg, "scaled rotation angle of B");
    iter->add_option("--c-mag", it.c_mag, "scaled rotation magnitude of C");
    iter->add_option("--c-arg", it.c_arg, "scaled rotation angle of C");
    iter->add_option("--x0-re", it.x0_re, "initial point, real part");
    iter->add_option("--x0-im", it.x0_im, "initial point, imaginary part");
    iter->add_option("--theta-claimed", it.theta_claimed, "override the bound coefficient");
    iter->add_option("--K", it.K, "iteration count");
    iter->add_option("--out", it.out, "CSV path");
    add_common(iter, it.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    }

    try {
        if (coeff->parsed()) return run_coeff(c_theta1, c_theta2, c_json);
        if (region->parsed()) return run_region(r);
        if (verify->parsed()) return run_verify(v);
        if (iter->parsed()) return run_iterate(it);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIoFailure;
    }
    return kExitBadInput;
}
