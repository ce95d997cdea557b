#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orlicz/operators.hpp"
#include "orlicz/rng.hpp"

namespace orlicz {

// Outcome of one law check: worst relative violation, the witness achieving
// it, and the verdict against a fixed tolerance.
struct LawReport {
    std::string law;
    double max_gap = 0.0;
    std::vector<double> witness_direction;  // grid laws
    std::vector<double> witness_inputs;     // scalar laws
    double tolerance = 0.0;
    bool pass = true;
    int samples = 0;
};

namespace detail {

inline void update_report(LawReport& r, double gap, const Vector& dir) {
    if (gap > r.max_gap) {
        r.max_gap = gap;
        r.witness_direction.assign(dir.data(), dir.data() + dir.size());
    }
}

inline QuadratureConfig tighten_for_valuation(const std::string& op, QuadratureConfig q) {
    // Quadrature noise must not mask a true valuation violation.
    if (op.rfind("moment:", 0) == 0 || op == "centroid") q.rel_tol = std::min(q.rel_tol, 1e-7);
    return q;
}

}  // namespace detail

// Valuation identity on a hyperplane dissection: with A = P cap H-,
// B = P cap H+ (so A u B = P and A n B = P cap H), compares
// Z(P) +_phi Z(P cap H) against Z(A) +_phi Z(B) over the grid. Gaps are
// normalized by max(1, h_{ZP}(x)).
inline LawReport check_valuation(const std::string& op, const OrliczFunction& phi,
                                 const Polytope& p, const Vector& normal,
                                 const std::vector<Vector>& grid, double tol,
                                 QuadratureConfig q = {},
                                 const Tolerances& t = Tolerances::defaults()) {
    auto cut = cut_by_hyperplane(p, normal, t);
    auto qq = detail::tighten_for_valuation(op, q);
    auto zp = apply_operator(op, phi, p, qq, t);
    auto za = apply_operator(op, phi, cut.minus, qq, t);
    auto zb = apply_operator(op, phi, cut.plus, qq, t);
    auto zm = apply_operator(op, phi, cut.section, qq, t);

    LawReport r;
    r.law = "valuation[" + op + "," + phi.spec() + "]";
    r.tolerance = tol;
    r.samples = static_cast<int>(grid.size());
    for (const auto& x : grid) {
        double hp = zp(x);
        double lhs = orlicz_sum_scalar(phi, std::max(hp, 0.0), std::max(zm(x), 0.0), t);
        double rhs = orlicz_sum_scalar(phi, std::max(za(x), 0.0), std::max(zb(x), 0.0), t);
        double gap = std::abs(lhs - rhs) / std::max(1.0, hp);
        detail::update_report(r, gap, x);
    }
    r.pass = r.max_gap <= tol;
    return r;
}

// Relative gap in the segment valuation identity for the difference-body map,
// evaluated through the closed segment forms: compares
// (as +_phi b t2) +_phi (b t1) with (as +_phi b t1) +_phi (b t2).
inline double segment_valuation_gap(const OrliczFunction& phi, double a, double b, double s,
                                    double t1, double t2,
                                    const Tolerances& tol = Tolerances::defaults()) {
    double lhs = orlicz_sum_scalar(phi, orlicz_sum_scalar(phi, a * s, b * t2, tol), b * t1, tol);
    double rhs = orlicz_sum_scalar(phi, orlicz_sum_scalar(phi, a * s, b * t1, tol), b * t2, tol);
    return std::abs(lhs - rhs) / std::max(1.0, rhs);
}

struct CounterexampleResult {
    double gap = 0.0;
    std::array<double, 3> witness{0.0, 0.0, 0.0};  // (s, t1, t2)
};

inline const std::vector<double>& default_counterexample_grid() {
    static const std::vector<double> g{0.25, 0.5, 1.0, 2.0, 4.0};
    return g;
}

// Grid search for a violation of the segment valuation identity.
inline CounterexampleResult search_counterexample(
    const OrliczFunction& phi, double a, double b,
    const std::vector<double>& grid = default_counterexample_grid(),
    const Tolerances& tol = Tolerances::defaults()) {
    CounterexampleResult best;
    for (double s : grid)
        for (double t1 : grid)
            for (double t2 : grid) {
                double gap = segment_valuation_gap(phi, a, b, s, t1, t2, tol);
                if (gap > best.gap) best = {gap, {s, t1, t2}};
            }
    return best;
}

// Equivariance under a volume-preserving map: covariant operators satisfy
// h_{Z(MP)}(x) = h_{ZP}(M^t x), contravariant ones h_{Z(MP)}(x) = h_{ZP}(M^{-1} x).
inline LawReport check_equivariance(const std::string& op, const OrliczFunction& phi,
                                    const Polytope& p, const LinearMap& m, Variance variance,
                                    const std::vector<Vector>& grid, double tol,
                                    QuadratureConfig q = {},
                                    const Tolerances& t = Tolerances::defaults()) {
    if (std::abs(m.det() - 1.0) > 1e-10)
        throw std::invalid_argument("check_equivariance: map must have determinant 1");
    auto zp = apply_operator(op, phi, p, q, t);
    auto zmp = apply_operator(op, phi, apply_linear(p, m, t), q, t);
    Matrix pullback = variance == Variance::Covariant ? Matrix(m.matrix().transpose())
                                                      : Matrix(m.matrix().inverse());
    LawReport r;
    r.law = "equivariance[" + op + "," + phi.spec() + "]";
    r.tolerance = tol;
    r.samples = static_cast<int>(grid.size());
    for (const auto& x : grid) {
        double ref = zp(Vector(pullback * x));
        double val = zmp(x);
        double gap = std::abs(val - ref) / std::max(1.0, std::abs(ref));
        detail::update_report(r, gap, x);
    }
    r.pass = r.max_gap <= tol;
    return r;
}

// For lower-dimensional bodies, covariant-type operators only see the linear
// hull: h_{ZP}(x) must equal h_{ZP} at the orthogonal projection of x.
inline LawReport check_projection_property(const std::string& op, const OrliczFunction& phi,
                                           const Polytope& p, const std::vector<Vector>& grid,
                                           double tol, QuadratureConfig q = {},
                                           const Tolerances& t = Tolerances::defaults()) {
    if (p.aff_dim() >= p.ambient_dim())
        throw std::invalid_argument("check_projection_property: body must be lower-dimensional");
    bool allowed = op == "identity" || op == "reflection" || op.rfind("scale:", 0) == 0 ||
                   op.rfind("moment:", 0) == 0;
    if (!allowed)
        throw std::invalid_argument("check_projection_property: operator not covariant-type");
    Matrix b = p.linear_hull_basis();
    Matrix projector = b * b.transpose();
    auto z = apply_operator(op, phi, p, q, t);
    LawReport r;
    r.law = "projection-property[" + op + "," + phi.spec() + "]";
    r.tolerance = tol;
    r.samples = static_cast<int>(grid.size());
    for (const auto& x : grid) {
        double full = z(x);
        double proj = z(Vector(projector * x));
        double gap = std::abs(full - proj) / std::max(1.0, std::abs(proj));
        detail::update_report(r, gap, x);
    }
    r.pass = r.max_gap <= tol;
    return r;
}

// Max residual of f(x+y) +_phi a = f(x) +_phi f(y) over sample pairs.
inline double cauchy_residual(const OrliczFunction& phi, double a,
                              const std::function<double(double)>& f,
                              const std::vector<std::pair<double, double>>& pairs,
                              const Tolerances& tol = Tolerances::defaults()) {
    double worst = 0.0;
    for (auto [x, y] : pairs) {
        double fxy = f(x + y);
        double lhs = orlicz_sum_scalar(phi, fxy, a, tol);
        double rhs = orlicz_sum_scalar(phi, f(x), f(y), tol);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, fxy));
    }
    return worst;
}

// Doubling cascade of the gauge Cauchy equation. Starting from v = f_z at the
// reference argument, each halving step solves v' +_phi v' = v +_phi a, i.e.
// v' = phi^{-1}(1/2) (v +_phi a), which is solvable for every v >= 0. The
// returned sequence lists the values in increasing-argument order (the last
// entry is f_z), so a start below a yields a strictly decreasing sequence that
// stays below a, a start above a a strictly increasing one.
inline std::vector<double> cauchy_doubling(const OrliczFunction& phi, double a, double f_z,
                                           int steps,
                                           const Tolerances& tol = Tolerances::defaults()) {
    if (!(f_z >= 0.0)) throw std::invalid_argument("cauchy_doubling: start must be >= 0");
    if (steps < 1) throw std::invalid_argument("cauchy_doubling: need steps >= 1");
    double half = phi_inverse(phi, 0.5, tol);
    std::vector<double> seq(steps + 1);
    seq[steps] = f_z;
    double v = f_z;
    for (int j = 1; j <= steps; ++j) {
        v = half * orlicz_sum_scalar(phi, v, a, tol);
        seq[steps - j] = v;
    }
    return seq;
}

namespace detail {

// Least b >= 0 with a +_phi b = target (target >= a required).
inline double solve_second_operand(const OrliczFunction& phi, double a, double target,
                                   const Tolerances& tol) {
    if (target < a - 1e-9 * std::max(1.0, a))
        throw std::domain_error("solve_second_operand: target below reachable range");
    if (target <= a) return 0.0;
    double lo = 0.0, hi = target;  // s(a, target) >= target
    int iter = 0;
    while (hi - lo > 1e-13 * std::max(hi, 1.0) && iter++ < 200) {
        double mid = 0.5 * (lo + hi);
        if (orlicz_sum_scalar(phi, a, mid, tol) >= target)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

inline void scalar_violation(LawReport& r, double amount, std::initializer_list<double> inputs) {
    if (amount > r.max_gap) {
        r.max_gap = amount;
        r.witness_inputs.assign(inputs);
    }
}

}  // namespace detail

// Seeded spot checks of the cancellation and ordering laws of the scalar gauge
// sum, including the weakened eta > 0 cases. max_gap is the worst margin
// violation (0 when everything holds).
inline LawReport check_scalar_props(const OrliczFunction& phi, std::uint64_t seed, int trials,
                                    const Tolerances& tol = Tolerances::defaults()) {
    if (trials < 1) throw std::invalid_argument("check_scalar_props: need trials >= 1");
    SplitMix64 rng(seed);
    const double eta = phi.eta();
    LawReport r;
    r.law = "scalar-props[" + phi.spec() + "]";
    r.tolerance = 0.0;
    r.samples = trials;

    auto sum = [&](double x, double y) { return orlicz_sum_scalar(phi, x, y, tol); };
    auto separated = [&](double ref) {
        // Draw until clear of the 1e-3 relative indistinguishability band.
        for (int k = 0; k < 64; ++k) {
            double v = rng.uniform(0.0, 10.0);
            if (std::abs(ref - v) >= 2e-3 * std::max({ref, v, 1.0})) return v;
        }
        return ref + 1.0;
    };

    for (int trial = 0; trial < trials; ++trial) {
        double a = rng.uniform(0.1, 10.0);

        // (i) a +_phi b != a +_phi a away from the diagonal.
        {
            double b = separated(a);
            double diff = std::abs(sum(a, b) - sum(a, a));
            detail::scalar_violation(r, 1e-12 * std::max(a, b) - diff, {1, a, b});
        }
        // (ii) second-operand cancellation when a <= b.
        {
            double b = rng.uniform(a, 10.0);
            double c = separated(b);
            double diff = std::abs(sum(a, b) - sum(a, c));
            detail::scalar_violation(r, 1e-12 * std::max(b, c) - diff, {2, a, b, c});
        }
        // (iii) a <= min(c,d) forces the balancing operand past max(c,d).
        {
            double c = a + rng.uniform(0.0, 5.0);
            double d = a + rng.uniform(0.0, 5.0);
            double b = detail::solve_second_operand(phi, a, sum(c, d), tol);
            double need = std::max(c, d);
            detail::scalar_violation(r, need - 1e-10 * need - b, {3, a, c, d, b});
        }
        // (iv) the diagonal balance point lies strictly between b and a.
        {
            double b = separated(a);
            double hi = std::max(a, b), lo = std::min(a, b);
            double c = phi_inverse(phi, 0.5, tol) * sum(hi, lo);
            detail::scalar_violation(r, lo + 1e-12 * hi - c, {4, hi, lo, c});
            detail::scalar_violation(r, c - (hi - 1e-12 * hi), {4, hi, lo, c});
        }
        // (v) order recovery above the plateau: b/a > eta implies b <= c.
        {
            double b = a * (eta + 1e-3 + rng.uniform(1e-3, 2.0));
            double c = separated(b);
            if (sum(a, b) <= sum(a, c))
                detail::scalar_violation(r, b - c - 1e-10 * a, {5, a, b, c});
        }
        // (vi) below the plateau the dominant operand is pinned: a = d.
        if (eta > 0.0) {
            double b = rng.uniform(0.0, eta * a);
            double c = rng.uniform(0.0, eta * a);
            double d = detail::solve_second_operand(phi, c, sum(a, b), tol);
            detail::scalar_violation(r, std::abs(a - d) - 1e-10 * a, {6, a, b, c, d});
        }
    }
    r.max_gap = std::max(r.max_gap, 0.0);
    r.pass = r.max_gap <= r.tolerance;
    return r;
}

}  // namespace orlicz
