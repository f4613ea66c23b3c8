#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srg/planegeom.hpp"

namespace srg {

inline constexpr const char* kToolVersion = "0.1.0";

/// Formats a double with 17 significant digits (round-trip safe).
std::string format_number(double v);

/// Machine-readable region description. kind is "disk" or "composition-oval";
/// parameters hold theta, theta1/theta2 or beta/gamma as named values.
struct RegionDocument {
    std::string kind;
    std::vector<std::pair<std::string, double>> parameters;
    std::vector<Complex> boundary;
    std::size_t resolution = 0;
    std::string tool_version = kToolVersion;
    double tol_analytic = 1e-9;
    double tol_monte_carlo = 1e-3;
};

std::string to_json(const RegionDocument& doc);
RegionDocument region_document_from_json(const std::string& text);

/// One verification check: observed vs expected within tolerance, with
/// optional witness points.
struct CheckRecord {
    std::string name;
    double observed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::vector<Complex> witness;
};

struct ReportDocument {
    std::string suite;
    bool pass = false;
    std::vector<CheckRecord> checks;
    std::uint64_t seed = 0;

    /// Recomputes the top-level flag as the conjunction of the checks.
    void finalize() {
        pass = true;
        for (const auto& c : checks) pass = pass && c.pass;
    }
};

std::string to_json(const ReportDocument& doc);
ReportDocument report_document_from_json(const std::string& text);

/// CSV trace with header k,x,y,residual,bound and LF line endings.
std::string iteration_csv(const std::vector<std::pair<double, double>>& points,
                          const std::vector<double>& residuals,
                          const std::vector<double>& bounds);

/// 800x800 SVG of a filled region with the dashed enclosing circle drawn on
/// top, axes through the origin.
std::string region_svg(const Polyline& boundary, const Disk& tight_circle);

/// Writes text to path; returns false on failure.
bool write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);  // throws on failure

}  // namespace srg
