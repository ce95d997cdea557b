#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "orlicz/geometry.hpp"
#include "orlicz/tolerances.hpp"

namespace orlicz {

// Vertex-represented compact convex polytope with cached facet data.
//
// Facets (outer unit normal, offset, area, origin flag) are enumerated fully
// for ambient dimension n <= 3 and for simplices in any dimension; for other
// high-dimensional inputs the polytope still supports vertex queries but
// carries no facet data (has_facets() == false, which is a marker, not an
// error). Instances are immutable after construction.
class Polytope {
public:
    struct Facet {
        Vector normal;          // outward unit normal
        double offset;          // support value in the normal direction
        double area;            // (n-1)-dimensional measure
        bool contains_origin;   // facet hyperplane passes through o
        std::vector<int> loop;  // vertex indices, boundary order for n == 2, 3
    };

    static Polytope from_vertices(std::vector<Vector> points,
                                  const Tolerances& tol = Tolerances::defaults());

    int ambient_dim() const { return n_; }
    int aff_dim() const { return d_; }
    std::size_t vertex_count() const { return verts_.size(); }
    const std::vector<Vector>& vertices() const { return verts_; }
    bool is_simplex() const { return static_cast<int>(verts_.size()) == d_ + 1; }

    bool has_facets() const { return facets_ok_; }
    const std::vector<Facet>& facets() const {
        if (!facets_ok_) throw std::runtime_error("Polytope: facet data unavailable");
        return facets_;
    }

    bool has_edges() const { return edges_ok_; }
    const std::vector<std::array<int, 2>>& edges() const {
        if (!edges_ok_) throw std::runtime_error("Polytope: edge data unavailable");
        return edges_;
    }

    // h_P(x) = max over vertices of x . v.
    double support(const Vector& x) const {
        if (x.size() != n_) throw std::invalid_argument("support: dimension mismatch");
        double best = x.dot(verts_[0]);
        for (std::size_t i = 1; i < verts_.size(); ++i) best = std::max(best, x.dot(verts_[i]));
        return best;
    }

    // Full-dimensional volume; 0 whenever aff_dim < ambient_dim.
    double volume() const { return d_ == n_ ? aff_volume() : 0.0; }

    // Volume measured inside the affine hull (length for d=1, area for d=2, ...).
    double aff_volume() const {
        if (!vol_ok_)
            throw std::runtime_error("Polytope: volume unsupported for this vertex set");
        return vol_aff_;
    }

    bool contains_origin(double tol = 1e-10) const;

    // Index of a vertex equal to o, or -1.
    int origin_vertex() const {
        for (std::size_t i = 0; i < verts_.size(); ++i)
            if (verts_[i].norm() <= 1e-12) return static_cast<int>(i);
        return -1;
    }

    // Orthonormal basis of the linear hull span(vertices), as columns.
    Matrix linear_hull_basis() const {
        Matrix m(n_, verts_.size());
        for (std::size_t i = 0; i < verts_.size(); ++i) m.col(i) = verts_[i];
        Eigen::ColPivHouseholderQR<Matrix> qr(m);
        qr.setThreshold(1e-10);
        int r = static_cast<int>(qr.rank());
        Matrix q = qr.householderQ();
        return q.leftCols(std::max(r, 0));
    }

    // Hull triangles (n == 3 only), outward-oriented local vertex triples.
    const std::vector<std::array<int, 3>>& hull_triangles() const {
        if (n_ != 3 || !facets_ok_)
            throw std::runtime_error("Polytope: triangle data requires n == 3 facets");
        return tris_;
    }

private:
    Polytope() = default;

    void build_line(const std::vector<Vector>& pts, const Vector& dir);
    void build_polygon(std::vector<Vector> pts, const std::vector<Eigen::Vector2d>& coords,
                       const Tolerances& tol);
    void build_solid(std::vector<Vector> pts, const std::vector<Eigen::Vector3d>& coords,
                     const Tolerances& tol);
    void build_simplex_facets(const Tolerances& tol);
    void finish_facets(const Tolerances& tol);

    int n_ = 0;
    int d_ = 0;
    std::vector<Vector> verts_;
    std::vector<std::array<int, 3>> tris_;
    std::vector<Facet> facets_;
    std::vector<std::array<int, 2>> edges_;
    bool facets_ok_ = false;
    bool edges_ok_ = false;
    bool vol_ok_ = false;
    double vol_aff_ = 0.0;
};

namespace detail {

// d! for the small d used by simplex volumes.
inline double factorial(int d) {
    double f = 1.0;
    for (int i = 2; i <= d; ++i) f *= i;
    return f;
}

// d-volume of the simplex spanned by (columns of) A relative to a base point,
// via the Gram determinant; exact rank assumed.
inline double simplex_volume(const std::vector<Vector>& verts) {
    int d = static_cast<int>(verts.size()) - 1;
    if (d <= 0) return d == 0 ? 1.0 : 0.0;
    Matrix a(verts[0].size(), d);
    for (int i = 0; i < d; ++i) a.col(i) = verts[i + 1] - verts[0];
    double g = (a.transpose() * a).determinant();
    return std::sqrt(std::max(g, 0.0)) / factorial(d);
}

// Andrew monotone chain; returns hull indices in counter-clockwise order.
inline std::vector<int> hull2d(const std::vector<Eigen::Vector2d>& p) {
    std::vector<int> idx(p.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return p[a].x() < p[b].x() || (p[a].x() == p[b].x() && p[a].y() < p[b].y());
    });
    auto cross = [&](int o, int a, int b) {
        return (p[a].x() - p[o].x()) * (p[b].y() - p[o].y()) -
               (p[a].y() - p[o].y()) * (p[b].x() - p[o].x());
    };
    std::vector<int> h(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], idx[i]) <= 0) --k;
        h[k++] = idx[i];
    }
    for (std::size_t i = idx.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], idx[i]) <= 0) --k;
        h[k++] = idx[i];
    }
    h.resize(k - 1);
    return h;
}

struct HullTri {
    int a, b, c;
    Eigen::Vector3d n;  // not normalized
    double off;
    bool alive = true;
};

// Incremental 3-D convex hull over points in generic-enough position.
// Returns outward-oriented triangles (indices into p).
inline std::vector<std::array<int, 3>> hull3d(const std::vector<Eigen::Vector3d>& p) {
    const std::size_t m = p.size();
    double scale = 0.0;
    for (const auto& q : p) scale = std::max(scale, q.norm());
    const double eps = 1e-10 * std::max(1.0, scale);

    // Initial tetrahedron: spread points greedily.
    std::size_t i0 = 0, i1 = 1;
    double best = -1.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if ((p[i] - p[j]).squaredNorm() > best) best = (p[i] - p[j]).squaredNorm(), i0 = i, i1 = j;
    std::size_t i2 = 0;
    best = -1.0;
    Eigen::Vector3d d01 = p[i1] - p[i0];
    for (std::size_t i = 0; i < m; ++i) {
        double a = d01.cross(p[i] - p[i0]).squaredNorm();
        if (a > best) best = a, i2 = i;
    }
    std::size_t i3 = 0;
    best = -1.0;
    Eigen::Vector3d nrm = d01.cross(p[i2] - p[i0]);
    for (std::size_t i = 0; i < m; ++i) {
        double v = std::abs(nrm.dot(p[i] - p[i0]));
        if (v > best) best = v, i3 = i;
    }
    if (std::abs(nrm.dot(p[i3] - p[i0])) <= eps)
        throw std::runtime_error("hull3d: degenerate input (affine dimension < 3)");

    std::vector<HullTri> faces;
    auto add_face = [&](int a, int b, int c, const Eigen::Vector3d& inside) {
        HullTri t;
        t.a = a;
        t.b = b;
        t.c = c;
        t.n = (p[b] - p[a]).cross(p[c] - p[a]);
        t.off = t.n.dot(p[a]);
        if (t.n.dot(inside) > t.off) {  // flip outward
            std::swap(t.b, t.c);
            t.n = -t.n;
            t.off = -t.off;
        }
        faces.push_back(std::move(t));
    };
    Eigen::Vector3d cen = 0.25 * (p[i0] + p[i1] + p[i2] + p[i3]);
    int a0 = static_cast<int>(i0), a1 = static_cast<int>(i1), a2 = static_cast<int>(i2),
        a3 = static_cast<int>(i3);
    add_face(a0, a1, a2, cen);
    add_face(a0, a1, a3, cen);
    add_face(a0, a2, a3, cen);
    add_face(a1, a2, a3, cen);

    for (std::size_t v = 0; v < m; ++v) {
        if (v == i0 || v == i1 || v == i2 || v == i3) continue;
        // Faces the point can see.
        std::vector<std::size_t> vis;
        for (std::size_t f = 0; f < faces.size(); ++f)
            if (faces[f].alive &&
                faces[f].n.dot(p[v]) > faces[f].off + eps * faces[f].n.norm())
                vis.push_back(f);
        if (vis.empty()) continue;
        // Horizon edges: directed edges of visible faces whose reverse is not visible.
        std::map<std::pair<int, int>, int> count;
        for (auto f : vis) {
            const auto& t = faces[f];
            for (auto [x, y] :
                 {std::pair{t.a, t.b}, std::pair{t.b, t.c}, std::pair{t.c, t.a}}) {
                ++count[{std::min(x, y), std::max(x, y)}];
            }
        }
        std::vector<std::pair<int, int>> horizon;
        for (auto f : vis) {
            const auto& t = faces[f];
            for (auto [x, y] :
                 {std::pair{t.a, t.b}, std::pair{t.b, t.c}, std::pair{t.c, t.a}}) {
                if (count[{std::min(x, y), std::max(x, y)}] == 1) horizon.push_back({x, y});
            }
        }
        for (auto f : vis) faces[f].alive = false;
        // cen, strictly interior to the initial tetrahedron, stays interior.
        for (auto [x, y] : horizon) add_face(x, y, static_cast<int>(v), cen);
    }

    std::vector<std::array<int, 3>> out;
    for (const auto& t : faces)
        if (t.alive) out.push_back({t.a, t.b, t.c});
    return out;
}

}  // namespace detail

inline Polytope Polytope::from_vertices(std::vector<Vector> points, const Tolerances& tol) {
    if (points.empty()) throw std::invalid_argument("from_vertices: need at least one point");
    const int n = static_cast<int>(points[0].size());
    if (n < 1) throw std::invalid_argument("from_vertices: ambient dimension must be >= 1");
    for (const auto& p : points) {
        if (p.size() != n) throw std::invalid_argument("from_vertices: mixed ambient dimensions");
        if (!p.allFinite()) throw std::invalid_argument("from_vertices: non-finite coordinate");
    }

    // Deduplicate (first occurrence wins).
    std::vector<Vector> pts;
    for (const auto& p : points) {
        bool dup = false;
        for (const auto& q : pts)
            if ((p - q).norm() <= tol.vertex_dedup) {
                dup = true;
                break;
            }
        if (!dup) pts.push_back(p);
    }

    Polytope poly;
    poly.n_ = n;

    // Affine rank and orthonormal basis of the affine hull.
    const Vector base = pts[0];
    int d = 0;
    Matrix basis(n, 0);
    if (pts.size() > 1) {
        Matrix diff(n, pts.size() - 1);
        for (std::size_t i = 1; i < pts.size(); ++i) diff.col(i - 1) = pts[i] - base;
        Eigen::ColPivHouseholderQR<Matrix> qr(diff);
        qr.setThreshold(1e-10);
        d = static_cast<int>(qr.rank());
        Matrix q = qr.householderQ();
        basis = q.leftCols(d);
    }
    poly.d_ = d;

    if (d == 0) {
        poly.verts_ = {pts[0]};
        poly.vol_ok_ = true;
        poly.vol_aff_ = 1.0;  // counting measure of a point
        return poly;
    }
    if (d == 1) {
        poly.build_line(pts, basis.col(0));
        return poly;
    }
    // Work in the polytope's own coordinates: untouched when full-dimensional,
    // projected onto the affine-hull basis otherwise (a projection through an
    // orthogonal basis may reflect, which only matters for facet orientation,
    // and facets are built exclusively in the full-dimensional case).
    if (d == 2) {
        std::vector<Eigen::Vector2d> coords(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i)
            coords[i] = (d == n) ? Eigen::Vector2d(pts[i])
                                 : Eigen::Vector2d(basis.transpose() * (pts[i] - base));
        poly.build_polygon(std::move(pts), coords, tol);
        return poly;
    }
    if (d == 3) {
        std::vector<Eigen::Vector3d> coords(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i)
            coords[i] = (d == n) ? Eigen::Vector3d(pts[i])
                                 : Eigen::Vector3d(basis.transpose() * (pts[i] - base));
        poly.build_solid(std::move(pts), coords, tol);
        return poly;
    }

    // d > 3: only simplices carry full metadata.
    poly.verts_ = std::move(pts);
    if (poly.is_simplex()) {
        poly.vol_ok_ = true;
        poly.vol_aff_ = detail::simplex_volume(poly.verts_);
        for (int i = 0; i < static_cast<int>(poly.verts_.size()); ++i)
            for (int j = i + 1; j < static_cast<int>(poly.verts_.size()); ++j)
                poly.edges_.push_back({i, j});
        poly.edges_ok_ = true;
        if (d == n) poly.build_simplex_facets(tol);
    }
    return poly;
}

inline void Polytope::build_line(const std::vector<Vector>& pts, const Vector& dir) {
    double smin = dir.dot(pts[0]), smax = smin;
    std::size_t imin = 0, imax = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        double s = dir.dot(pts[i]);
        if (s < smin) smin = s, imin = i;
        if (s > smax) smax = s, imax = i;
    }
    verts_ = {pts[imin], pts[imax]};
    vol_ok_ = true;
    vol_aff_ = (verts_[1] - verts_[0]).norm();
    edges_ = {{0, 1}};
    edges_ok_ = true;
    if (n_ == 1) {
        // Point facets {min} and {max} with unit counting measure.
        Facet lo{Vector::Constant(1, -1.0), -verts_[0](0), 1.0, false, {0}};
        Facet hi{Vector::Constant(1, 1.0), verts_[1](0), 1.0, false, {1}};
        facets_ = {lo, hi};
        finish_facets(Tolerances::defaults());
    }
}

inline void Polytope::build_polygon(std::vector<Vector> pts,
                                    const std::vector<Eigen::Vector2d>& q,
                                    const Tolerances& tol) {
    auto hull = detail::hull2d(q);
    verts_.reserve(hull.size());
    std::vector<Eigen::Vector2d> hq;
    for (int id : hull) {
        verts_.push_back(pts[id]);
        hq.push_back(q[id]);
    }
    double area2 = 0.0;
    for (std::size_t i = 0; i < hq.size(); ++i) {
        const auto& a = hq[i];
        const auto& b = hq[(i + 1) % hq.size()];
        area2 += a.x() * b.y() - b.x() * a.y();
    }
    vol_ok_ = true;
    vol_aff_ = 0.5 * std::abs(area2);
    const int m = static_cast<int>(verts_.size());
    for (int i = 0; i < m; ++i) edges_.push_back({i, (i + 1) % m});
    edges_ok_ = true;
    if (d_ == n_) {
        // CCW boundary: outward normal is the edge direction rotated by -90 degrees.
        for (int i = 0; i < m; ++i) {
            Vector e = verts_[(i + 1) % m] - verts_[i];
            Vector u(2);
            u << e(1), -e(0);
            double len = u.norm();
            u /= len;
            facets_.push_back({u, u.dot(verts_[i]), len, false, {i, (i + 1) % m}});
        }
        finish_facets(tol);
    }
}

inline void Polytope::build_solid(std::vector<Vector> pts,
                                  const std::vector<Eigen::Vector3d>& q,
                                  const Tolerances& tol) {
    auto tris = detail::hull3d(q);

    // Keep hull vertices only, in ascending original order.
    std::vector<int> used;
    for (const auto& t : tris)
        for (int id : {t[0], t[1], t[2]}) used.push_back(id);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::vector<int> remap(pts.size(), -1);
    for (std::size_t i = 0; i < used.size(); ++i) {
        remap[used[i]] = static_cast<int>(i);
        verts_.push_back(pts[used[i]]);
    }
    std::vector<Eigen::Vector3d> hq(used.size());
    for (std::size_t i = 0; i < used.size(); ++i) hq[i] = q[used[i]];
    for (auto& t : tris) t = {remap[t[0]], remap[t[1]], remap[t[2]]};
    tris_ = std::move(tris);

    // Signed fan volume relative to the first hull vertex.
    double vol6 = 0.0;
    for (const auto& t : tris_) {
        Eigen::Vector3d a = hq[t[0]] - hq[0], b = hq[t[1]] - hq[0], c = hq[t[2]] - hq[0];
        vol6 += a.cross(b).dot(c);
    }
    vol_ok_ = true;
    vol_aff_ = std::abs(vol6) / 6.0;

    std::vector<std::array<int, 2>> es;
    for (const auto& t : tris_)
        for (auto [x, y] : {std::pair{t[0], t[1]}, std::pair{t[1], t[2]}, std::pair{t[2], t[0]}})
            es.push_back({std::min(x, y), std::max(x, y)});
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    edges_ = std::move(es);
    edges_ok_ = true;

    if (d_ != n_) return;

    // Merge coplanar hull triangles into planar facets.
    double scale = 0.0;
    for (const auto& v : verts_) scale = std::max(scale, v.norm());
    const double plane_tol = 1e-9 * std::max(1.0, scale);
    struct Group {
        Vector normal;
        double offset;
        double area = 0.0;
        std::vector<int> ids;
    };
    std::vector<Group> groups;
    for (const auto& t : tris_) {
        Vector a = verts_[t[1]] - verts_[t[0]], b = verts_[t[2]] - verts_[t[0]];
        Eigen::Vector3d nr = Eigen::Vector3d(a).cross(Eigen::Vector3d(b));
        double tri_area = 0.5 * nr.norm();
        if (tri_area <= 0.0) continue;
        Vector u = nr / nr.norm();
        double off = u.dot(verts_[t[0]]);
        Group* g = nullptr;
        for (auto& cand : groups)
            if (cand.normal.dot(u) > 1.0 - 1e-9 && std::abs(cand.offset - off) <= plane_tol) {
                g = &cand;
                break;
            }
        if (!g) {
            groups.push_back({u, off, 0.0, {}});
            g = &groups.back();
        }
        g->area += tri_area;
        for (int id : {t[0], t[1], t[2]})
            if (std::find(g->ids.begin(), g->ids.end(), id) == g->ids.end()) g->ids.push_back(id);
    }
    for (auto& g : groups) {
        // Order the facet's vertices around its centroid.
        Vector cen = Vector::Zero(3);
        for (int id : g.ids) cen += verts_[id];
        cen /= static_cast<double>(g.ids.size());
        Eigen::Vector3d u = g.normal;
        Eigen::Vector3d t1 = std::abs(u.x()) < 0.9 ? Eigen::Vector3d::UnitX().cross(u)
                                                   : Eigen::Vector3d::UnitY().cross(u);
        t1.normalize();
        Eigen::Vector3d t2 = u.cross(t1);
        std::sort(g.ids.begin(), g.ids.end(), [&](int a, int b) {
            Eigen::Vector3d da = verts_[a] - cen, db = verts_[b] - cen;
            return std::atan2(da.dot(t2), da.dot(t1)) < std::atan2(db.dot(t2), db.dot(t1));
        });
        facets_.push_back({g.normal, g.offset, g.area, false, g.ids});
    }
    finish_facets(tol);
}

inline void Polytope::build_simplex_facets(const Tolerances& tol) {
    const int n = n_;
    facets_.clear();
    for (int opp = 0; opp < static_cast<int>(verts_.size()); ++opp) {
        std::vector<int> ids;
        for (int i = 0; i < static_cast<int>(verts_.size()); ++i)
            if (i != opp) ids.push_back(i);
        Matrix span(n, n - 1);
        for (int i = 1; i < n; ++i) span.col(i - 1) = verts_[ids[i]] - verts_[ids[0]];
        Eigen::HouseholderQR<Matrix> qr(span);
        Matrix q = qr.householderQ();
        Vector u = q.col(n - 1);
        if (u.dot(verts_[opp] - verts_[ids[0]]) > 0) u = -u;
        std::vector<Vector> fverts;
        for (int id : ids) fverts.push_back(verts_[id]);
        facets_.push_back(
            {u, u.dot(verts_[ids[0]]), detail::simplex_volume(fverts), false, ids});
    }
    finish_facets(tol);
}

inline void Polytope::finish_facets(const Tolerances& tol) {
    for (auto& f : facets_) f.contains_origin = std::abs(f.offset) <= tol.facet_origin;
    facets_ok_ = true;
}

inline bool Polytope::contains_origin(double tol) const {
    if (origin_vertex() >= 0) return true;
    if (facets_ok_ && d_ == n_) {
        for (const auto& f : facets_)
            if (f.offset < -tol) return false;
        return true;
    }
    // Lower-dimensional: o must lie in the affine hull and inside the piece.
    // Fall back to a support-based certificate: o is in P iff h_P >= 0 for a
    // spanning set of directions in the linear hull; sample densely.
    Matrix b = linear_hull_basis();
    Vector resid = verts_[0] - b * (b.transpose() * verts_[0]);
    if (resid.norm() > tol) return false;  // affine hull misses o entirely
    SplitMix64 rng(0x9d2c5680);
    for (int k = 0; k < 256; ++k) {
        Vector dir = Vector::Zero(b.cols());
        for (int i = 0; i < dir.size(); ++i) dir(i) = rng.gaussian();
        if (dir.norm() == 0.0) continue;
        if (support(b * dir.normalized()) < -tol) return false;
    }
    return true;
}

// s T^d embedded in R^n: the hull of o and s e_1, ..., s e_d.
inline Polytope standard_simplex(int d, int n, double s,
                                 const Tolerances& tol = Tolerances::defaults()) {
    if (!(d >= 1 && d <= n)) throw std::invalid_argument("standard_simplex: need 1 <= d <= n");
    if (!(s > 0.0)) throw std::invalid_argument("standard_simplex: scale must be positive");
    std::vector<Vector> v;
    v.push_back(Vector::Zero(n));
    for (int i = 0; i < d; ++i) {
        Vector e = Vector::Zero(n);
        e(i) = s;
        v.push_back(e);
    }
    return Polytope::from_vertices(std::move(v), tol);
}

struct SurfaceAtom {
    Vector normal;
    double area;
    bool contains_origin;
};

// The surface area measure of a full-dimensional polytope, one atom per facet.
inline std::vector<SurfaceAtom> surface_area_measure(const Polytope& p) {
    if (!p.has_facets() || p.aff_dim() != p.ambient_dim())
        throw std::runtime_error("surface_area_measure: full-dimensional facet data required");
    std::vector<SurfaceAtom> out;
    for (const auto& f : p.facets()) out.push_back({f.normal, f.area, f.contains_origin});
    return out;
}

// Image polytope under an invertible linear map; facet data is rebuilt.
inline Polytope apply_linear(const Polytope& p, const LinearMap& m,
                             const Tolerances& tol = Tolerances::defaults()) {
    if (m.dim() != p.ambient_dim()) throw std::invalid_argument("apply_linear: dimension mismatch");
    if (std::abs(m.det()) < 1e-12) throw std::domain_error("apply_linear: singular map");
    std::vector<Vector> v;
    v.reserve(p.vertex_count());
    for (const auto& x : p.vertices()) v.push_back(m.matrix() * x);
    return Polytope::from_vertices(std::move(v), tol);
}

struct CutResult {
    Polytope minus;    // P intersected with {x . u <= 0}
    Polytope plus;     // P intersected with {x . u >= 0}
    Polytope section;  // P intersected with {x . u = 0}
};

// Cuts P by the hyperplane through the origin with normal u. Degenerate
// positions (P inside a closed halfspace, or P inside H) return P itself or
// lower-dimensional pieces rather than failing.
inline CutResult cut_by_hyperplane(const Polytope& p, const Vector& u,
                                   const Tolerances& tol = Tolerances::defaults()) {
    if (u.size() != p.ambient_dim()) throw std::invalid_argument("cut: dimension mismatch");
    double un = u.norm();
    if (un <= 0.0) throw std::invalid_argument("cut: zero normal");
    if (!p.has_edges())
        throw std::runtime_error("cut: unsupported polytope (no edge data)");
    Vector w = u / un;

    const auto& verts = p.vertices();
    std::vector<double> s(verts.size());
    double smax = 0.0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        s[i] = w.dot(verts[i]);
        smax = std::max(smax, std::abs(s[i]));
    }
    const double stol = 1e-12 * std::max(1.0, smax);

    std::vector<Vector> neg, pos, mid;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (s[i] <= stol) neg.push_back(verts[i]);
        if (s[i] >= -stol) pos.push_back(verts[i]);
        if (std::abs(s[i]) <= stol) mid.push_back(verts[i]);
    }
    for (const auto& e : p.edges()) {
        double si = s[e[0]], sj = s[e[1]];
        if ((si > stol && sj < -stol) || (si < -stol && sj > stol)) {
            double t = si / (si - sj);
            Vector x = verts[e[0]] + t * (verts[e[1]] - verts[e[0]]);
            neg.push_back(x);
            pos.push_back(x);
            mid.push_back(x);
        }
    }
    if (neg.empty() || pos.empty() || mid.empty())
        throw std::runtime_error("cut: hyperplane misses the polytope");

    CutResult r{Polytope::from_vertices(std::move(neg), tol),
                Polytope::from_vertices(std::move(pos), tol),
                Polytope::from_vertices(std::move(mid), tol)};
    return r;
}

// Fan triangulation of a full-dimensional polytope, apex at the origin vertex
// when present (vertex index 0 otherwise). Deterministic.
inline std::vector<std::vector<Vector>> triangulate(const Polytope& p) {
    const int n = p.ambient_dim();
    if (p.aff_dim() != n)
        throw std::runtime_error("triangulate: full-dimensional polytope required");
    const auto& v = p.vertices();
    if (p.is_simplex()) return {v};
    int apex = p.origin_vertex();
    if (apex < 0) apex = 0;
    std::vector<std::vector<Vector>> out;
    if (n == 2) {
        const int m = static_cast<int>(v.size());
        for (int i = 0; i < m; ++i) {
            int j = (i + 1) % m;
            if (i == apex || j == apex) continue;
            out.push_back({v[apex], v[i], v[j]});
        }
        return out;
    }
    if (n == 3) {
        for (const auto& t : p.hull_triangles()) {
            if (t[0] == apex || t[1] == apex || t[2] == apex) continue;
            out.push_back({v[apex], v[t[0]], v[t[1]], v[t[2]]});
        }
        return out;
    }
    throw std::runtime_error("triangulate: unsupported dimension for non-simplex");
}

}  // namespace orlicz
