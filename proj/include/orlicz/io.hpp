#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "orlicz/laws.hpp"
#include "orlicz/operators.hpp"
#include "orlicz/support_body.hpp"

namespace orlicz::io {

using nlohmann::json;

inline constexpr const char* kToolVersion = "orlicz-toolkit 0.1.0";

// Body JSON schema: {"dim": n, "vertices": [[x1,...,xn], ...]}.
inline json body_to_json(const Polytope& p) {
    json verts = json::array();
    for (const auto& v : p.vertices()) {
        json row = json::array();
        for (int i = 0; i < v.size(); ++i) row.push_back(v(i));
        verts.push_back(std::move(row));
    }
    return json{{"dim", p.ambient_dim()}, {"vertices", std::move(verts)}};
}

inline Polytope body_from_json(const json& j, const Tolerances& tol = Tolerances::defaults()) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("vertices"))
        throw std::invalid_argument("body JSON needs 'dim' and 'vertices'");
    int n = j.at("dim").get<int>();
    std::vector<Vector> pts;
    for (const auto& row : j.at("vertices")) {
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw std::invalid_argument("body JSON vertex arity does not match 'dim'");
        Vector v(n);
        for (int i = 0; i < n; ++i) v(i) = row.at(i).get<double>();
        pts.push_back(std::move(v));
    }
    return Polytope::from_vertices(std::move(pts), tol);
}

inline Polytope load_body(const std::string& path,
                          const Tolerances& tol = Tolerances::defaults()) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open body file '" + path + "'");
    // nlohmann reports malformed JSON with the byte offset in the message.
    return body_from_json(json::parse(in), tol);
}

// Sampled support table: {"directions": [...], "values": [...], "provenance": {...}}.
inline json support_table_json(const SupportBody& body, const std::vector<Vector>& grid,
                               json provenance) {
    const auto& vals = body.evaluate_grid(grid);
    json dirs = json::array(), values = json::array();
    for (const auto& d : grid) {
        json row = json::array();
        for (int i = 0; i < d.size(); ++i) row.push_back(d(i));
        dirs.push_back(std::move(row));
    }
    for (double v : vals) values.push_back(v);
    provenance["evaluator"] = body.provenance();
    return json{{"directions", std::move(dirs)},
                {"values", std::move(values)},
                {"provenance", std::move(provenance)}};
}

// Rebuilds a support body from a sampled table. Evaluation is defined for the
// tabulated directions (up to positive scaling); other directions fail.
inline SupportBody support_body_from_table(const json& j) {
    if (!j.contains("directions") || !j.contains("values"))
        throw std::invalid_argument("support table JSON needs 'directions' and 'values'");
    auto dirs = std::make_shared<std::vector<Vector>>();
    auto vals = std::make_shared<std::vector<double>>();
    for (const auto& row : j.at("directions")) {
        Vector v(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) v(i) = row.at(i).get<double>();
        dirs->push_back(std::move(v));
    }
    for (const auto& v : j.at("values")) vals->push_back(v.get<double>());
    if (dirs->empty() || dirs->size() != vals->size())
        throw std::invalid_argument("support table JSON has inconsistent sizes");
    int n = static_cast<int>(dirs->front().size());
    return SupportBody(
        n,
        [dirs, vals](const Vector& x) {
            double nx = x.norm();
            for (std::size_t i = 0; i < dirs->size(); ++i) {
                double nd = (*dirs)[i].norm();
                if (nd == 0.0) continue;
                if (((*dirs)[i] / nd - x / nx).norm() <= 1e-12) return (*vals)[i] * nx / nd;
            }
            throw std::runtime_error("table-backed support body: direction not tabulated");
        },
        "table");
}

namespace detail {

inline void svg_header(std::ostringstream& out, double minx, double miny, double w, double h) {
    double pad = 0.05 * std::max(w, h);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << (minx - pad) << " "
        << (miny - pad) << " " << (w + 2 * pad) << " " << (h + 2 * pad) << "\">\n";
}

}  // namespace detail

// 2-D polytope as an SVG polygon over its hull vertices.
inline std::string to_svg(const Polytope& p) {
    if (p.ambient_dim() != 2) throw std::invalid_argument("SVG export requires dimension 2");
    double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
    for (const auto& v : p.vertices()) {
        minx = std::min(minx, v(0)), maxx = std::max(maxx, v(0));
        miny = std::min(miny, v(1)), maxy = std::max(maxy, v(1));
    }
    std::ostringstream out;
    detail::svg_header(out, minx, miny, maxx - minx, maxy - miny);
    out << "  <polygon fill=\"none\" stroke=\"black\" stroke-width=\"0.01\" points=\"";
    for (std::size_t i = 0; i < p.vertices().size(); ++i) {
        const auto& v = p.vertices()[i];
        out << (i ? " " : "") << v(0) << "," << (-v(1));  // SVG y grows downward
    }
    out << "\"/>\n</svg>\n";
    return out.str();
}

// 2-D support body as the polygon of consecutive support-line intersections,
// sampled at `samples` directions.
inline std::string to_svg(const SupportBody& body, int samples = 360) {
    if (body.ambient_dim() != 2) throw std::invalid_argument("SVG export requires dimension 2");
    std::vector<Eigen::Vector2d> pts(samples);
    std::vector<double> h(samples);
    std::vector<Eigen::Vector2d> u(samples);
    for (int i = 0; i < samples; ++i) {
        double t = 2.0 * M_PI * i / samples;
        u[i] = {std::cos(t), std::sin(t)};
        Vector x(2);
        x << u[i].x(), u[i].y();
        h[i] = body(x);
    }
    for (int i = 0; i < samples; ++i) {
        int j = (i + 1) % samples;
        Eigen::Matrix2d m;
        m << u[i].x(), u[i].y(), u[j].x(), u[j].y();
        pts[i] = m.colPivHouseholderQr().solve(Eigen::Vector2d(h[i], h[j]));
    }
    double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
    for (const auto& v : pts) {
        minx = std::min(minx, v.x()), maxx = std::max(maxx, v.x());
        miny = std::min(miny, v.y()), maxy = std::max(maxy, v.y());
    }
    std::ostringstream out;
    detail::svg_header(out, minx, miny, maxx - minx, maxy - miny);
    out << "  <polygon fill=\"none\" stroke=\"black\" stroke-width=\"0.01\" points=\"";
    for (int i = 0; i < samples; ++i) out << (i ? " " : "") << pts[i].x() << "," << (-pts[i].y());
    out << "\"/>\n</svg>\n";
    return out.str();
}

// 3-D polytope as OBJ (vertex and facet-loop dump).
inline std::string to_obj(const Polytope& p) {
    if (p.ambient_dim() != 3) throw std::invalid_argument("OBJ export requires dimension 3");
    if (!p.has_facets()) throw std::runtime_error("OBJ export requires facet data");
    std::ostringstream out;
    for (const auto& v : p.vertices())
        out << "v " << v(0) << " " << v(1) << " " << v(2) << "\n";
    for (const auto& f : p.facets()) {
        out << "f";
        for (int id : f.loop) out << " " << (id + 1);
        out << "\n";
    }
    return out.str();
}

// 3-D support body as an OBJ point cloud: h(u) u over the grid directions.
inline std::string to_obj_cloud(const SupportBody& body, const std::vector<Vector>& grid) {
    if (body.ambient_dim() != 3) throw std::invalid_argument("OBJ export requires dimension 3");
    std::ostringstream out;
    for (const auto& u : grid) {
        Vector p = body(u) * u / u.norm();
        out << "v " << p(0) << " " << p(1) << " " << p(2) << "\n";
    }
    return out.str();
}

inline json law_report_json(const LawReport& r, json provenance) {
    json witness = json::object();
    if (!r.witness_direction.empty()) witness["direction"] = r.witness_direction;
    if (!r.witness_inputs.empty()) witness["inputs"] = r.witness_inputs;
    return json{{"law", r.law},           {"max_gap", r.max_gap}, {"witness", std::move(witness)},
                {"tolerance", r.tolerance}, {"pass", r.pass},     {"samples", r.samples},
                {"provenance", std::move(provenance)}};
}

inline json make_provenance(const std::string& phi_spec, std::uint64_t seed,
                            const Tolerances& tol, const QuadratureConfig& q) {
    return json{{"version", kToolVersion},
                {"phi", phi_spec},
                {"seed", seed},
                {"tolerances",
                 {{"solver_rel", tol.solver_rel},
                  {"body_solver_rel", tol.body_solver_rel},
                  {"quadrature_rel", q.rel_tol},
                  {"quadrature_max_refine", q.max_refine},
                  {"law", tol.law_tol}}}};
}

}  // namespace orlicz::io
