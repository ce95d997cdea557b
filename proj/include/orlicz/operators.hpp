#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "orlicz/phi.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/rng.hpp"
#include "orlicz/support_body.hpp"

namespace orlicz {

// Selects which part of x . y enters an integrand: |x.y|, (x.y)_+ or (x.y)_-.
enum class GaugePart { Abs, Pos, Neg };

inline double gauge_part(GaugePart part, double t) {
    switch (part) {
        case GaugePart::Abs:
            return std::abs(t);
        case GaugePart::Pos:
            return t > 0.0 ? t : 0.0;
        case GaugePart::Neg:
            return t < 0.0 ? -t : 0.0;
    }
    return 0.0;
}

inline std::string_view gauge_part_name(GaugePart part) {
    switch (part) {
        case GaugePart::Abs:
            return "abs";
        case GaugePart::Pos:
            return "pos";
        case GaugePart::Neg:
            return "neg";
    }
    return "?";
}

namespace detail {

inline double nonnegative_support(const SupportBody& body, const Vector& x) {
    double h = body(x);
    if (h < -1e-12)
        throw std::domain_error("operator input has negative support value (body must contain o)");
    return std::max(h, 0.0);
}

}  // namespace detail

// Gauge sum of two bodies: h(x) = h_K(x) +_phi h_L(x), defined pointwise.
inline SupportBody orlicz_body_sum(const OrliczFunction& phi, const SupportBody& k,
                                   const SupportBody& l,
                                   const Tolerances& tol = Tolerances::defaults()) {
    if (k.ambient_dim() != l.ambient_dim())
        throw std::invalid_argument("orlicz_body_sum: dimension mismatch");
    auto p = phi;
    return SupportBody(
        k.ambient_dim(),
        [p, k, l, tol](const Vector& x) {
            return orlicz_sum_scalar(p, detail::nonnegative_support(k, x),
                                     detail::nonnegative_support(l, x), tol);
        },
        "sum[" + phi.spec() + "](" + k.provenance() + "," + l.provenance() + ")");
}

inline SupportBody orlicz_body_sum(const OrliczFunction2& phi2, const SupportBody& k,
                                   const SupportBody& l,
                                   const Tolerances& tol = Tolerances::defaults()) {
    if (k.ambient_dim() != l.ambient_dim())
        throw std::invalid_argument("orlicz_body_sum: dimension mismatch");
    auto p = phi2;
    return SupportBody(
        k.ambient_dim(),
        [p, k, l, tol](const Vector& x) {
            return orlicz_sum_phi2(p, detail::nonnegative_support(k, x),
                                   detail::nonnegative_support(l, x), tol);
        },
        "sum[" + phi2.spec() + "](" + k.provenance() + "," + l.provenance() + ")");
}

// Outcome of one Luxemburg quadrature solve; the last two refinement iterates
// are kept so a refinement-exhausted result can still be assessed.
struct QuadratureStatus {
    double lambda = 0.0;
    double lambda_prev = 0.0;
    int levels_used = 0;
    bool converged = true;
};

namespace detail {

// Lazily refined quadrature nodes over a fixed fan triangulation; shared by
// all directions of one moment body.
struct MomentData {
    std::vector<quad::Simplex> tris;
    std::vector<std::vector<QuadNode>> levels;

    const std::vector<QuadNode>& level(int l) {
        while (static_cast<int>(levels.size()) <= l)
            levels.push_back(quad::composite_nodes(tris, static_cast<int>(levels.size())));
        return levels[l];
    }
};

inline double moment_support_at(const OrliczFunction& phi, MomentData& data,
                                const std::vector<Vector>& verts, GaugePart part,
                                double weight_scale, const QuadratureConfig& q, const Vector& x,
                                QuadratureStatus* status) {
    double lam0 = 0.0;
    for (const auto& v : verts) lam0 = std::max(lam0, gauge_part(part, x.dot(v)));
    if (lam0 <= 0.0) {
        if (status) *status = {0.0, 0.0, 0, true};
        return 0.0;
    }
    double prev = 0.0;
    double lam = 0.0;
    for (int level = 0; level <= q.max_refine; ++level) {
        const auto& nodes = data.level(level);
        std::vector<double> g(nodes.size()), w(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            g[i] = gauge_part(part, x.dot(nodes[i].point));
            w[i] = nodes[i].weight * weight_scale;
        }
        lam = solve_luxemburg(phi, g, w, 1e-10);
        if (level > 0 && std::abs(lam - prev) <= q.rel_tol * std::max(std::abs(lam), 1e-300)) {
            if (status) *status = {lam, prev, level, true};
            return lam;
        }
        prev = lam;
    }
    if (status) *status = {lam, prev, q.max_refine, false};
    return lam;
}

}  // namespace detail

// The gauge moment body: h(x) = inf{lambda : integral over K of
// phi(part(x.y)/lambda) dy <= 1}. A body with zero full-dimensional volume
// maps to {o}.
inline SupportBody moment_body(const OrliczFunction& phi, const Polytope& k, GaugePart part,
                               const QuadratureConfig& q = {}, double volume_normalizer = 1.0) {
    if (!k.contains_origin())
        throw std::domain_error("moment_body: body must contain the origin");
    const int n = k.ambient_dim();
    std::string prov = std::string("moment:") + std::string(gauge_part_name(part)) + "[" +
                       phi.spec() + "]";
    if (k.aff_dim() < n || k.volume() <= 0.0) {
        return SupportBody(n, [](const Vector&) { return 0.0; }, prov + "(degenerate)");
    }
    auto data = std::make_shared<detail::MomentData>();
    data->tris = triangulate(k);
    auto verts = std::make_shared<const std::vector<Vector>>(k.vertices());
    auto p = phi;
    return SupportBody(
        n,
        [p, data, verts, part, q, volume_normalizer](const Vector& x) {
            return detail::moment_support_at(p, *data, *verts, part, volume_normalizer, q, x,
                                             nullptr);
        },
        prov);
}

// Same solve, exposing the refinement status (for diagnostics and tests).
inline double moment_support(const OrliczFunction& phi, const Polytope& k, GaugePart part,
                             const QuadratureConfig& q, const Vector& x,
                             QuadratureStatus* status) {
    if (k.aff_dim() < k.ambient_dim() || k.volume() <= 0.0) {
        if (status) *status = {0.0, 0.0, 0, true};
        return 0.0;
    }
    detail::MomentData data;
    data.tris = triangulate(k);
    return detail::moment_support_at(phi, data, k.vertices(), part, 1.0, q, x, status);
}

// Volume-normalized moment body (the centroid body); the gauge part is |x.y|.
inline SupportBody centroid_body(const OrliczFunction& phi, const Polytope& k,
                                 const QuadratureConfig& q = {}) {
    double vol = k.volume();
    if (!(vol > 1e-12))
        throw std::domain_error("centroid_body: degenerate body (volume <= 1e-12)");
    return moment_body(phi, k, GaugePart::Abs, q, 1.0 / vol);
}

// Polytopal gauge projection body: facets whose hyperplane passes through the
// origin are excluded from the (finite, exactly evaluated) gauge sum.
inline SupportBody projection_body(const OrliczFunction& phi, const Polytope& p, GaugePart part,
                                   const Tolerances& tol = Tolerances::defaults()) {
    if (!p.has_facets() || p.aff_dim() != p.ambient_dim())
        throw std::runtime_error("projection_body: full-dimensional facet data required");
    if (!p.contains_origin())
        throw std::domain_error("projection_body: body must contain the origin");
    struct Term {
        Vector normal;
        double height;  // support value at the facet normal
        double weight;  // height * area
    };
    auto terms = std::make_shared<std::vector<Term>>();
    for (const auto& f : p.facets()) {
        if (f.contains_origin) continue;
        terms->push_back({f.normal, f.offset, f.offset * f.area});
    }
    auto ph = phi;
    std::string prov = std::string("proj:") + std::string(gauge_part_name(part)) + "[" +
                       phi.spec() + "]";
    (void)tol;
    return SupportBody(
        p.ambient_dim(),
        [ph, terms, part](const Vector& x) {
            if (terms->empty()) return 0.0;
            std::vector<double> g(terms->size()), w(terms->size());
            for (std::size_t i = 0; i < terms->size(); ++i) {
                g[i] = gauge_part(part, x.dot((*terms)[i].normal)) / (*terms)[i].height;
                w[i] = (*terms)[i].weight;
            }
            return solve_luxemburg(ph, g, w, 1e-10);
        },
        prov);
}

// The gauge difference body a K +_phi (-b K), evaluated from h_K directly.
inline SupportBody orlicz_difference(const OrliczFunction& phi, double a, double b,
                                     const SupportBody& k,
                                     const Tolerances& tol = Tolerances::defaults()) {
    if (!(a >= 0.0) || !(b >= 0.0))
        throw std::invalid_argument("orlicz_difference: coefficients must be >= 0");
    auto p = phi;
    return SupportBody(
        k.ambient_dim(),
        [p, a, b, k, tol](const Vector& x) {
            double ha = a * detail::nonnegative_support(k, x);
            double hb = b * detail::nonnegative_support(k, Vector(-x));
            return orlicz_sum_scalar(p, ha, hb, tol);
        },
        "odiff:" + std::to_string(a) + ":" + std::to_string(b) + "[" + phi.spec() + "](" +
            k.provenance() + ")");
}

// h = (1/2) h_Pi - h_PiHat+ combination over the facet data, with a seeded
// sublinearity check before the result may be treated as a body. Here Pi uses
// the plain surface-measure weights over all facets, PiHat+ the origin-facet
// exclusion.
inline SupportBody pi_o_body(const Polytope& p) {
    if (!p.has_facets() || p.aff_dim() != p.ambient_dim())
        throw std::runtime_error("pi_o: full-dimensional facet data required");
    struct Atom {
        Vector normal;
        double area;
        bool origin;
    };
    auto atoms = std::make_shared<std::vector<Atom>>();
    for (const auto& f : p.facets()) atoms->push_back({f.normal, f.area, f.contains_origin});
    const int n = p.ambient_dim();
    auto h = [atoms](const Vector& x) {
        double full = 0.0, plus = 0.0;
        for (const auto& a : *atoms) {
            double d = x.dot(a.normal);
            full += std::abs(d) * a.area;
            if (!a.origin && d > 0.0) plus += d * a.area;
        }
        return 0.5 * full - plus;
    };
    SplitMix64 rng(0x5851f42d);
    for (int t = 0; t < 200; ++t) {
        Vector x(n), y(n);
        for (int i = 0; i < n; ++i) x(i) = rng.gaussian(), y(i) = rng.gaussian();
        double hx = h(x), hy = h(y), hxy = h(x + y);
        if (hxy > hx + hy + 1e-9 * (std::abs(hx) + std::abs(hy) + 1.0))
            throw std::runtime_error("pi_o: combination is not sublinear on samples");
    }
    return SupportBody(n, h, "pi_o");
}

// --- operator registry -------------------------------------------------------

enum class Variance { Covariant, Contravariant };

// Closed registry of CLI-facing operator ids:
//   identity | reflection | zero | scale:<a> | odiff:<a>:<b>
//   moment:abs|pos|neg | centroid | proj:abs|pos|neg | pi_o
// scale accepts negative factors (reflection composed with dilation).
inline SupportBody apply_operator(const std::string& id, const OrliczFunction& phi,
                                  const Polytope& p, const QuadratureConfig& q = {},
                                  const Tolerances& tol = Tolerances::defaults()) {
    auto base = SupportBody::from_polytope(p);
    if (id == "identity") return base;
    if (id == "reflection") {
        auto sp = std::make_shared<const Polytope>(p);
        return SupportBody(
            p.ambient_dim(), [sp](const Vector& x) { return sp->support(Vector(-x)); },
            "reflection");
    }
    if (id == "zero")
        return SupportBody(p.ambient_dim(), [](const Vector&) { return 0.0; }, "zero");
    if (id.rfind("scale:", 0) == 0) {
        double a = detail::parse_float(id.substr(6), "scale factor");
        auto sp = std::make_shared<const Polytope>(p);
        return SupportBody(
            p.ambient_dim(),
            [sp, a](const Vector& x) {
                return a >= 0.0 ? a * sp->support(x) : -a * sp->support(Vector(-x));
            },
            id);
    }
    if (id.rfind("odiff:", 0) == 0) {
        auto rest = id.substr(6);
        auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("operator id 'odiff' needs two coefficients");
        double a = detail::parse_float(rest.substr(0, colon), "odiff a");
        double b = detail::parse_float(rest.substr(colon + 1), "odiff b");
        return orlicz_difference(phi, a, b, base, tol);
    }
    if (id.rfind("moment:", 0) == 0 || id == "centroid" || id.rfind("proj:", 0) == 0) {
        GaugePart part = GaugePart::Abs;
        if (id != "centroid") {
            auto name = id.substr(id.find(':') + 1);
            if (name == "abs") part = GaugePart::Abs;
            else if (name == "pos") part = GaugePart::Pos;
            else if (name == "neg") part = GaugePart::Neg;
            else throw std::invalid_argument("unknown gauge part '" + std::string(name) + "'");
        }
        if (id == "centroid") return centroid_body(phi, p, q);
        if (id.rfind("moment:", 0) == 0) return moment_body(phi, p, part, q);
        return projection_body(phi, p, part, tol);
    }
    if (id == "pi_o") return pi_o_body(p);
    throw std::invalid_argument("unknown operator id '" + id + "'");
}

inline Variance operator_variance(const std::string& id) {
    if (id.rfind("proj:", 0) == 0 || id == "pi_o") return Variance::Contravariant;
    return Variance::Covariant;
}

}  // namespace orlicz
