#include "srg/documents.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace srg {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void append_point_array(std::string& out, const std::vector<Complex>& pts,
                        const char* indent) {
    out += "[";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ",";
        out += "\n";
        out += indent;
        out += "[" + format_number(pts[i].real()) + ", " +
               format_number(pts[i].imag()) + "]";
    }
    if (!pts.empty()) {
        out += "\n";
        out.append(indent, std::strlen(indent) - 2);
    }
    out += "]";
}

}  // namespace

std::string to_json(const RegionDocument& doc) {
    std::string out = "{\n";
    out += "  \"kind\": \"" + doc.kind + "\",\n";
    out += "  \"parameters\": {";
    for (std::size_t i = 0; i < doc.parameters.size(); ++i) {
        if (i) out += ", ";
        out += "\"" + doc.parameters[i].first + "\": " +
               format_number(doc.parameters[i].second);
    }
    out += "},\n";
    out += "  \"boundary\": ";
    append_point_array(out, doc.boundary, "    ");
    out += ",\n";
    out += "  \"metadata\": {\n";
    out += "    \"resolution\": " + std::to_string(doc.resolution) + ",\n";
    out += "    \"tool_version\": \"" + doc.tool_version + "\",\n";
    out += "    \"tolerances\": {\"analytic\": " + format_number(doc.tol_analytic) +
           ", \"monte_carlo\": " + format_number(doc.tol_monte_carlo) + "}\n";
    out += "  }\n";
    out += "}\n";
    return out;
}

RegionDocument region_document_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    RegionDocument doc;
    doc.kind = j.at("kind").get<std::string>();
    for (auto it = j.at("parameters").begin(); it != j.at("parameters").end(); ++it)
        doc.parameters.emplace_back(it.key(), it.value().get<double>());
    for (const auto& p : j.at("boundary"))
        doc.boundary.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    const auto& meta = j.at("metadata");
    doc.resolution = meta.at("resolution").get<std::size_t>();
    doc.tool_version = meta.at("tool_version").get<std::string>();
    doc.tol_analytic = meta.at("tolerances").at("analytic").get<double>();
    doc.tol_monte_carlo = meta.at("tolerances").at("monte_carlo").get<double>();
    return doc;
}

std::string to_json(const ReportDocument& doc) {
    std::string out = "{\n";
    out += "  \"suite\": \"" + doc.suite + "\",\n";
    out += std::string("  \"pass\": ") + (doc.pass ? "true" : "false") + ",\n";
    out += "  \"seed\": " + std::to_string(doc.seed) + ",\n";
    out += "  \"checks\": [";
    for (std::size_t i = 0; i < doc.checks.size(); ++i) {
        const CheckRecord& c = doc.checks[i];
        if (i) out += ",";
        out += "\n    {\"name\": \"" + c.name + "\", ";
        out += "\"observed\": " + format_number(c.observed) + ", ";
        out += "\"expected\": " + format_number(c.expected) + ", ";
        out += "\"tolerance\": " + format_number(c.tolerance) + ", ";
        out += std::string("\"pass\": ") + (c.pass ? "true" : "false") + ", ";
        out += "\"witness\": [";
        for (std::size_t w = 0; w < c.witness.size(); ++w) {
            if (w) out += ", ";
            out += "[" + format_number(c.witness[w].real()) + ", " +
                   format_number(c.witness[w].imag()) + "]";
        }
        out += "]}";
    }
    if (!doc.checks.empty()) out += "\n  ";
    out += "]\n";
    out += "}\n";
    return out;
}

ReportDocument report_document_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    ReportDocument doc;
    doc.suite = j.at("suite").get<std::string>();
    doc.pass = j.at("pass").get<bool>();
    doc.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& jc : j.at("checks")) {
        CheckRecord c;
        c.name = jc.at("name").get<std::string>();
        c.observed = jc.at("observed").get<double>();
        c.expected = jc.at("expected").get<double>();
        c.tolerance = jc.at("tolerance").get<double>();
        c.pass = jc.at("pass").get<bool>();
        for (const auto& w : jc.at("witness"))
            c.witness.emplace_back(w.at(0).get<double>(), w.at(1).get<double>());
        doc.checks.push_back(std::move(c));
    }
    return doc;
}

std::string iteration_csv(const std::vector<std::pair<double, double>>& points,
                          const std::vector<double>& residuals,
                          const std::vector<double>& bounds) {
    std::string out = "k,x,y,residual,bound\n";
    for (std::size_t k = 0; k < residuals.size(); ++k) {
        out += std::to_string(k) + "," + format_number(points[k].first) + "," +
               format_number(points[k].second) + "," +
               format_number(residuals[k]) + "," + format_number(bounds[k]) + "\n";
    }
    return out;
}

namespace {

// World [-1.2, 1.2]^2 mapped onto the fixed 800x800 viewport, y up.
double svg_x(double x) { return (x + 1.2) / 2.4 * 800.0; }
double svg_y(double y) { return (1.2 - y) / 2.4 * 800.0; }

std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

std::string region_svg(const Polyline& boundary, const Disk& tight_circle) {
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
         "viewBox=\"0 0 800 800\">\n";
    s += "<!-- srg-tools ";
    s += kToolVersion;
    s += " -->\n";
    s += "<line x1=\"0\" y1=\"" + svg_num(svg_y(0.0)) + "\" x2=\"800\" y2=\"" +
         svg_num(svg_y(0.0)) + "\" stroke=\"#404040\" stroke-width=\"1\"/>\n";
    s += "<line x1=\"" + svg_num(svg_x(0.0)) + "\" y1=\"0\" x2=\"" +
         svg_num(svg_x(0.0)) + "\" y2=\"800\" stroke=\"#404040\" stroke-width=\"1\"/>\n";
    s += "<polygon fill=\"#b8b8b8\" stroke=\"#707070\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < boundary.pts.size(); ++i) {
        if (i) s += " ";
        s += svg_num(svg_x(boundary.pts[i].real())) + "," +
             svg_num(svg_y(boundary.pts[i].imag()));
    }
    s += "\"/>\n";
    s += "<circle cx=\"" + svg_num(svg_x(tight_circle.center)) + "\" cy=\"" +
         svg_num(svg_y(0.0)) + "\" r=\"" +
         svg_num(tight_circle.radius / 2.4 * 800.0) +
         "\" fill=\"none\" stroke=\"#202020\" stroke-width=\"2\" "
         "stroke-dasharray=\"10,6\"/>\n";
    s += "</svg>\n";
    return s;
}

bool write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) return false;
    f << text;
    return static_cast<bool>(f);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace srg
