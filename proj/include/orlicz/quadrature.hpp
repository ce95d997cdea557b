#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "orlicz/geometry.hpp"
#include "orlicz/phi.hpp"
#include "orlicz/polytope.hpp"
#include "orlicz/tolerances.hpp"

namespace orlicz {

struct QuadratureConfig {
    double rel_tol = 1e-6;
    int max_refine = 6;
    QuadratureConfig() = default;
    QuadratureConfig(double tol, int refine) : rel_tol(tol), max_refine(refine) {
        if (!(rel_tol > 0.0)) throw std::invalid_argument("QuadratureConfig: rel_tol must be > 0");
        if (max_refine < 1) throw std::invalid_argument("QuadratureConfig: max_refine must be >= 1");
    }
};

struct QuadNode {
    Vector point;
    double weight;
};

namespace quad {

using Simplex = std::vector<Vector>;  // d+1 vertices of a d-simplex in R^n

inline Vector centroid(const Simplex& s) {
    Vector c = Vector::Zero(s[0].size());
    for (const auto& v : s) c += v;
    return c / static_cast<double>(s.size());
}

// Positive-weight base rules per intrinsic dimension:
//   d = 1  two-point Gauss (degree 3)
//   d = 2  seven-point rule (degree 5)
//   d >= 3 symmetric (d+1)-point rule, points c + (v_i - c)/sqrt(d+2) (degree 2)
inline void base_rule(const Simplex& s, std::vector<QuadNode>& out) {
    const int d = static_cast<int>(s.size()) - 1;
    const double vol = detail::simplex_volume(s);
    if (vol <= 0.0) return;
    if (d == 1) {
        const double h = 0.5 / std::sqrt(3.0);
        Vector mid = 0.5 * (s[0] + s[1]);
        Vector half = 0.5 * (s[1] - s[0]);
        out.push_back({mid - 2.0 * h * half, 0.5 * vol});
        out.push_back({mid + 2.0 * h * half, 0.5 * vol});
        return;
    }
    if (d == 2) {
        static const double a1 = 0.059715871789770, b1 = 0.470142064105115,
                            w1 = 0.132394152788506;
        static const double a2 = 0.797426985353087, b2 = 0.101286507323456,
                            w2 = 0.125939180544827;
        auto bary = [&](double l0, double l1, double l2) {
            return Vector(l0 * s[0] + l1 * s[1] + l2 * s[2]);
        };
        out.push_back({centroid(s), vol * 9.0 / 40.0});
        out.push_back({bary(a1, b1, b1), vol * w1});
        out.push_back({bary(b1, a1, b1), vol * w1});
        out.push_back({bary(b1, b1, a1), vol * w1});
        out.push_back({bary(a2, b2, b2), vol * w2});
        out.push_back({bary(b2, a2, b2), vol * w2});
        out.push_back({bary(b2, b2, a2), vol * w2});
        return;
    }
    Vector c = centroid(s);
    const double t = 1.0 / std::sqrt(static_cast<double>(d + 2));
    const double w = vol / static_cast<double>(d + 1);
    for (const auto& v : s) out.push_back({c + t * (v - c), w});
}

// Uniform red refinement for d <= 3, longest-edge bisection otherwise.
inline void subdivide(const Simplex& s, std::vector<Simplex>& out) {
    const int d = static_cast<int>(s.size()) - 1;
    auto mid = [&](int i, int j) { return Vector(0.5 * (s[i] + s[j])); };
    if (d == 1) {
        Vector m = mid(0, 1);
        out.push_back({s[0], m});
        out.push_back({m, s[1]});
        return;
    }
    if (d == 2) {
        Vector m01 = mid(0, 1), m02 = mid(0, 2), m12 = mid(1, 2);
        out.push_back({s[0], m01, m02});
        out.push_back({m01, s[1], m12});
        out.push_back({m02, m12, s[2]});
        out.push_back({m01, m12, m02});
        return;
    }
    if (d == 3) {
        Vector m01 = mid(0, 1), m02 = mid(0, 2), m03 = mid(0, 3), m12 = mid(1, 2),
               m13 = mid(1, 3), m23 = mid(2, 3);
        out.push_back({s[0], m01, m02, m03});
        out.push_back({m01, s[1], m12, m13});
        out.push_back({m02, m12, s[2], m23});
        out.push_back({m03, m13, m23, s[3]});
        // Octahedron split around the m02-m13 diagonal.
        out.push_back({m01, m02, m03, m13});
        out.push_back({m01, m02, m12, m13});
        out.push_back({m02, m03, m13, m23});
        out.push_back({m02, m12, m13, m23});
        return;
    }
    // Longest edge, ties broken by index order.
    int bi = 0, bj = 1;
    double best = -1.0;
    for (int i = 0; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j) {
            double len = (s[i] - s[j]).squaredNorm();
            if (len > best) best = len, bi = i, bj = j;
        }
    Vector m = mid(bi, bj);
    Simplex a = s, b = s;
    a[bj] = m;
    b[bi] = m;
    out.push_back(a);
    out.push_back(b);
}

// Nodes of the composite rule over a triangulation after `level` uniform
// refinements.
inline std::vector<QuadNode> composite_nodes(const std::vector<Simplex>& tris, int level) {
    std::vector<Simplex> cells = tris;
    for (int l = 0; l < level; ++l) {
        std::vector<Simplex> next;
        next.reserve(cells.size() * 8);
        for (const auto& c : cells) subdivide(c, next);
        cells = std::move(next);
    }
    std::vector<QuadNode> nodes;
    for (const auto& c : cells) base_rule(c, nodes);
    return nodes;
}

}  // namespace quad

// Solves inf{lambda > 0 : sum_i w_i phi(g_i / lambda) <= 1} for nonnegative
// gauge samples g and positive weights w, by bracket expansion from
// lambda0 = max g_i and bisection. Returns 0 when the sum never reaches 1.
inline double solve_luxemburg(const OrliczFunction& phi, const std::vector<double>& g,
                              const std::vector<double>& w, double rel_tol = 1e-10) {
    double lam0 = 0.0;
    for (double gi : g) lam0 = std::max(lam0, gi);
    if (lam0 <= 0.0) return 0.0;
    auto total = [&](double lam) {
        double s = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i] <= 0.0) continue;
            s += w[i] * phi(g[i] / lam);
            if (s > 1e300) return s;  // already far past 1
        }
        return s;
    };
    double lo, hi;
    if (total(lam0) >= 1.0) {
        hi = lam0;
        int k = 0;
        do {
            hi *= 2.0;
            if (++k > 60) throw std::runtime_error("solve_luxemburg: upper bracket not found");
        } while (total(hi) > 1.0);
        lo = 0.5 * hi;
    } else {
        lo = lam0;
        int k = 0;
        do {
            lo *= 0.5;
            if (++k > 60) return 0.0;  // gauge never reaches 1: infimum is 0
        } while (total(lo) < 1.0);
        hi = 2.0 * lo;
    }
    int iter = 0;
    while (hi - lo > rel_tol * hi && iter++ < 200) {
        double mid = 0.5 * (lo + hi);
        if (total(mid) >= 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace orlicz
