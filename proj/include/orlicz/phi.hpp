#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "orlicz/tolerances.hpp"

namespace orlicz {

// A validated convex gauge function: convex and increasing on [0,inf) with
// phi(0) = 0 and phi(1) = 1. The zero set is exactly [0, eta] for some
// eta in [0,1). Instances are immutable and cheap to copy.
//
// Builtin families (mini-language spelling in parentheses):
//   power p          (`pow <p>`,    p >= 1)           t -> t^p
//   expm1            (`expm1`)                        t -> (e^t - 1)/(e - 1)
//   maxlin eta0      (`maxlin <eta0>`, 0 <= eta0 < 1) t -> max(0, (t-eta0)/(1-eta0))
//   piecewise linear (`pwl [(t0,y0),...]`)            convex increasing interpolant
class OrliczFunction {
public:
    static OrliczFunction power(double p) {
        if (!(p >= 1.0)) throw std::invalid_argument("pow: exponent must satisfy p >= 1");
        OrliczFunction f;
        f.kind_ = Kind::Power;
        f.param_ = p;
        f.eta_ = 0.0;
        std::ostringstream s;
        s << "pow " << p;
        f.spec_ = s.str();
        f.validate();
        return f;
    }

    static OrliczFunction expm1() {
        OrliczFunction f;
        f.kind_ = Kind::ExpRatio;
        f.eta_ = 0.0;
        f.spec_ = "expm1";
        f.validate();
        return f;
    }

    static OrliczFunction maxlin(double eta0) {
        if (!(eta0 >= 0.0 && eta0 < 1.0))
            throw std::invalid_argument("maxlin: offset must satisfy 0 <= eta0 < 1");
        OrliczFunction f;
        f.kind_ = Kind::MaxLinear;
        f.param_ = eta0;
        f.eta_ = eta0;
        std::ostringstream s;
        s << "maxlin " << eta0;
        f.spec_ = s.str();
        f.validate();
        return f;
    }

    static OrliczFunction pwl(std::vector<std::array<double, 2>> samples) {
        if (samples.size() < 2) throw std::invalid_argument("pwl: need at least two samples");
        for (std::size_t i = 1; i < samples.size(); ++i)
            if (!(samples[i][0] > samples[i - 1][0]))
                throw std::invalid_argument("pwl: sample abscissae must be strictly increasing");
        if (samples.front()[0] != 0.0 || samples.front()[1] != 0.0)
            throw std::invalid_argument("pwl: first sample must be (0,0)");
        OrliczFunction f;
        f.kind_ = Kind::Pwl;
        f.pts_ = std::move(samples);
        f.eta_ = f.pwl_eta();
        std::ostringstream s;
        s << "pwl [";
        for (std::size_t i = 0; i < f.pts_.size(); ++i)
            s << (i ? "," : "") << "(" << f.pts_[i][0] << "," << f.pts_[i][1] << ")";
        s << "]";
        f.spec_ = s.str();
        f.validate();
        return f;
    }

    // Parses the mini-language: `pow <float>` | `expm1` | `maxlin <float>` |
    // `pwl [(t0,y0),...]`.
    static OrliczFunction parse(std::string_view spec);

    double operator()(double t) const {
        switch (kind_) {
            case Kind::Power:
                return std::pow(t, param_);
            case Kind::ExpRatio:
                return std::expm1(t) / std::expm1(1.0);
            case Kind::MaxLinear:
                return std::max(0.0, (t - param_) / (1.0 - param_));
            case Kind::Pwl:
                return pwl_eval(t);
        }
        return 0.0;
    }

    // Right endpoint of the zero set [0, eta].
    double eta() const { return eta_; }

    const std::string& spec() const { return spec_; }

private:
    enum class Kind { Power, ExpRatio, MaxLinear, Pwl };

    OrliczFunction() = default;

    double pwl_eval(double t) const {
        const auto& p = pts_;
        if (t <= p.front()[0]) return p.front()[1];
        if (t >= p.back()[0]) {
            // Extend with the final slope.
            std::size_t m = p.size();
            double slope = (p[m - 1][1] - p[m - 2][1]) / (p[m - 1][0] - p[m - 2][0]);
            return p[m - 1][1] + slope * (t - p[m - 1][0]);
        }
        std::size_t hi = 1;
        while (p[hi][0] < t) ++hi;
        double t0 = p[hi - 1][0], y0 = p[hi - 1][1];
        double t1 = p[hi][0], y1 = p[hi][1];
        return y0 + (y1 - y0) * (t - t0) / (t1 - t0);
    }

    double pwl_eta() const {
        if (pwl_eval(1e-14) > 0.0) {
            // No plateau beyond roundoff.
            return 0.0;
        }
        double lo = 0.0, hi = pts_.back()[0];
        if (pwl_eval(hi) <= 0.0)
            throw std::invalid_argument("pwl: function vanishes on the whole sample range");
        while (hi - lo > 1e-12) {
            double mid = 0.5 * (lo + hi);
            if (pwl_eval(mid) > 0.0)
                hi = mid;
            else
                lo = mid;
        }
        return 0.5 * (lo + hi);
    }

    void validate() const {
        const auto& f = *this;
        if (f(0.0) != 0.0) throw std::invalid_argument(spec_ + ": eval(0) != 0");
        if (f(1.0) != 1.0) throw std::invalid_argument(spec_ + ": eval(1) != 1");
        // Grid checks on [0,4]: monotone, midpoint-convex, strictly rising past eta.
        constexpr int kGrid = 64;
        std::array<double, kGrid> t{}, y{};
        for (int i = 0; i < kGrid; ++i) {
            t[i] = 4.0 * i / (kGrid - 1);
            y[i] = f(t[i]);
        }
        for (int i = 0; i + 1 < kGrid; ++i) {
            if (y[i + 1] < y[i] - 1e-12)
                throw std::invalid_argument(spec_ + ": not monotone non-decreasing on grid");
            if (t[i] > eta_ + 1e-9 && !(y[i + 1] > y[i]))
                throw std::invalid_argument(spec_ + ": plateau above eta (not increasing)");
        }
        for (int i = 0; i < kGrid; ++i)
            for (int j = i; j < kGrid; ++j) {
                double mid = f(0.5 * (t[i] + t[j]));
                if (mid > 0.5 * (y[i] + y[j]) + 1e-12)
                    throw std::invalid_argument(spec_ + ": midpoint convexity fails on grid");
            }
        if (eta_ > 0.0 && f(std::max(0.0, eta_ - 1e-9)) > 1e-14)
            throw std::invalid_argument(spec_ + ": nonzero value below eta");
        if (f(std::min(1.0, eta_ + 1e-6)) <= 0.0)
            throw std::invalid_argument(spec_ + ": zero value above eta");
    }

    Kind kind_ = Kind::Power;
    double param_ = 1.0;
    std::vector<std::array<double, 2>> pts_;
    double eta_ = 0.0;
    std::string spec_;
};

// Two-variable gauge: convex on [0,inf)^2, increasing in each variable, with
// eval2(0,0) = 0 and eval2(1,0) = eval2(0,1) = 1. `max` is the L-infinity
// member; `sum-of phi` reduces the two-variable sum to a one-variable gauge.
class OrliczFunction2 {
public:
    static OrliczFunction2 sum_of(OrliczFunction phi) {
        OrliczFunction2 f;
        f.phi_ = std::move(phi);
        f.is_max_ = false;
        f.spec_ = "phi2:sum-of " + f.phi_->spec();
        f.validate();
        return f;
    }

    static OrliczFunction2 max() {
        OrliczFunction2 f;
        f.is_max_ = true;
        f.spec_ = "phi2:max";
        f.validate();
        return f;
    }

    static OrliczFunction2 parse(std::string_view spec);

    double operator()(double x1, double x2) const {
        if (is_max_) return std::max(x1, x2);
        return (*phi_)(x1) + (*phi_)(x2);
    }

    const std::string& spec() const { return spec_; }

private:
    OrliczFunction2() = default;

    void validate() const {
        const auto& f = *this;
        if (f(0.0, 0.0) != 0.0) throw std::invalid_argument(spec_ + ": eval2(0,0) != 0");
        if (f(1.0, 0.0) != 1.0 || f(0.0, 1.0) != 1.0)
            throw std::invalid_argument(spec_ + ": eval2(1,0) or eval2(0,1) != 1");
        constexpr int kGrid = 16;
        for (int i = 0; i < kGrid; ++i)
            for (int j = 0; j < kGrid; ++j) {
                double a = 2.0 * i / (kGrid - 1), b = 2.0 * j / (kGrid - 1);
                if (f(a + 0.125, b) < f(a, b) - 1e-12 || f(a, b + 0.125) < f(a, b) - 1e-12)
                    throw std::invalid_argument(spec_ + ": not increasing in each variable");
            }
    }

    std::optional<OrliczFunction> phi_;
    bool is_max_ = false;
    std::string spec_;
};

// Least preimage inf{t >= 0 : phi(t) >= y}, by bracketing and bisection to
// relative tolerance 1e-12. By convention the inverse at 0 is 0 even when
// the zero plateau is nontrivial.
inline double phi_inverse(const OrliczFunction& phi, double y,
                          const Tolerances& tol = Tolerances::defaults()) {
    if (!(y >= 0.0)) throw std::invalid_argument("phi_inverse: y must be >= 0");
    if (y == 0.0) return 0.0;
    double hi = 1.0;
    while (phi(hi) < y) {
        hi *= 2.0;
        if (hi > tol.working_range)
            throw std::runtime_error("phi_inverse: value unreachable within working range");
    }
    double lo = 0.0;
    int iter = 0;
    while (hi - lo > tol.solver_rel * hi && iter++ < tol.solver_max_iter) {
        double mid = 0.5 * (lo + hi);
        if (phi(mid) >= y)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// The scalar gauge sum a +_phi b: the unique lambda in [max(a,b), a+b] with
// phi(a/lambda) + phi(b/lambda) = 1, and 0 when a = b = 0. The bracket is
// always valid: the residual is >= 1 at lambda = max(a,b) because phi(1) = 1,
// and <= 1 at lambda = a + b because phi(t) <= t on [0,1] by convexity.
inline double orlicz_sum_scalar(const OrliczFunction& phi, double a, double b,
                                const Tolerances& tol = Tolerances::defaults()) {
    if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("orlicz_sum_scalar: operands must be finite and >= 0");
    if (a == 0.0 && b == 0.0) return 0.0;
    double lo = std::max(a, b), hi = a + b;
    int iter = 0;
    while (hi - lo > tol.solver_rel * hi && iter++ < tol.solver_max_iter) {
        double mid = 0.5 * (lo + hi);
        if (phi(a / mid) + phi(b / mid) >= 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Two-variable gauge sum inf{lambda > 0 : phi2(a/lambda, b/lambda) <= 1}.
inline double orlicz_sum_phi2(const OrliczFunction2& phi2, double a, double b,
                              const Tolerances& tol = Tolerances::defaults()) {
    if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("orlicz_sum_phi2: operands must be finite and >= 0");
    if (a == 0.0 && b == 0.0) return 0.0;
    double lo = std::max(a, b), hi = a + b;
    int iter = 0;
    while (hi - lo > tol.solver_rel * hi && iter++ < tol.solver_max_iter) {
        double mid = 0.5 * (lo + hi);
        if (phi2(a / mid, b / mid) >= 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Empirical L_p detector. The gauge sum is associative exactly when it is an
// L_p sum for some p, so estimate p from the diagonal 1 +_phi 1 = 2^{1/p} and
// accept only if the whole sum agrees with the L_p formula on a 12x12 grid.
inline std::optional<double> detect_lp(const OrliczFunction& phi,
                                       const Tolerances& tol = Tolerances::defaults()) {
    double s11 = orlicz_sum_scalar(phi, 1.0, 1.0, tol);
    double p = 1.0 / std::log2(s11);
    for (int i = 1; i <= 12; ++i)
        for (int j = 1; j <= 12; ++j) {
            double a = 4.0 * i / 12.0, b = 4.0 * j / 12.0;
            double lhs = orlicz_sum_scalar(phi, a, b, tol);
            double rhs = std::pow(std::pow(a, p) + std::pow(b, p), 1.0 / p);
            if (std::abs(lhs - rhs) > 1e-8 * (a + b)) return std::nullopt;
        }
    return p;
}

// True exactly when the gauge sum degenerates to ordinary (Minkowski)
// addition, i.e. phi(l) + phi(1-l) = 1 on [0,1], which forces phi linear there.
inline bool is_minkowski(const OrliczFunction& phi) {
    for (int i = 0; i <= 100; ++i) {
        double l = i / 100.0;
        if (std::abs(phi(l) + phi(1.0 - l) - 1.0) > 1e-10) return false;
    }
    return true;
}

// --- mini-language parsing ---------------------------------------------------

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline double parse_float(std::string_view s, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(std::string(s), &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("invalid number for ") + what + ": '" +
                                    std::string(s) + "'");
    }
}

}  // namespace detail

inline OrliczFunction OrliczFunction::parse(std::string_view spec) {
    auto s = detail::trim(spec);
    if (s == "expm1") return expm1();
    if (s.substr(0, 4) == "pow " || s.substr(0, 4) == "pow\t")
        return power(detail::parse_float(detail::trim(s.substr(4)), "pow"));
    if (s.substr(0, 7) == "maxlin ")
        return maxlin(detail::parse_float(detail::trim(s.substr(7)), "maxlin"));
    if (s.substr(0, 3) == "pwl") {
        auto body = detail::trim(s.substr(3));
        if (body.size() < 2 || body.front() != '[' || body.back() != ']')
            throw std::invalid_argument("pwl: expected bracketed sample list");
        body = body.substr(1, body.size() - 2);
        std::vector<std::array<double, 2>> pts;
        std::size_t i = 0;
        while (i < body.size()) {
            while (i < body.size() && (body[i] == ',' || std::isspace((unsigned char)body[i]))) ++i;
            if (i >= body.size()) break;
            if (body[i] != '(') throw std::invalid_argument("pwl: expected '('");
            std::size_t close = body.find(')', i);
            if (close == std::string_view::npos) throw std::invalid_argument("pwl: missing ')'");
            auto pair = body.substr(i + 1, close - i - 1);
            std::size_t comma = pair.find(',');
            if (comma == std::string_view::npos)
                throw std::invalid_argument("pwl: expected '(t,y)' pair");
            pts.push_back({detail::parse_float(detail::trim(pair.substr(0, comma)), "pwl t"),
                           detail::parse_float(detail::trim(pair.substr(comma + 1)), "pwl y")});
            i = close + 1;
        }
        return pwl(std::move(pts));
    }
    throw std::invalid_argument("unrecognized gauge spec: '" + std::string(spec) + "'");
}

inline OrliczFunction2 OrliczFunction2::parse(std::string_view spec) {
    auto s = detail::trim(spec);
    if (s == "phi2:max") return max();
    constexpr std::string_view kSumOf = "phi2:sum-of ";
    if (s.substr(0, kSumOf.size()) == kSumOf)
        return sum_of(OrliczFunction::parse(s.substr(kSumOf.size())));
    throw std::invalid_argument("unrecognized two-variable gauge spec: '" + std::string(spec) +
                                "'");
}

}  // namespace orlicz
