#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "orlicz/rng.hpp"

namespace orlicz {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// An n x n real linear map with cached determinant. Immutable.
class LinearMap {
public:
    explicit LinearMap(Matrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols() || m_.rows() < 1)
            throw std::invalid_argument("LinearMap: matrix must be square");
        det_ = m_.determinant();
    }

    static LinearMap identity(int n) { return LinearMap(Matrix::Identity(n, n)); }

    const Matrix& matrix() const { return m_; }
    double det() const { return det_; }
    int dim() const { return static_cast<int>(m_.rows()); }

    LinearMap inverse() const {
        if (std::abs(det_) < 1e-12) throw std::domain_error("LinearMap: singular map");
        return LinearMap(m_.inverse());
    }

    LinearMap transposed() const { return LinearMap(m_.transpose()); }

    // psi^{-t}, the contravariant companion transform.
    LinearMap inverse_transposed() const {
        if (std::abs(det_) < 1e-12) throw std::domain_error("LinearMap: singular map");
        return LinearMap(m_.inverse().transpose());
    }

    Vector apply(const Vector& x) const { return m_ * x; }
    Vector apply_transpose(const Vector& x) const { return m_.transpose() * x; }

private:
    Matrix m_;
    double det_;
};

// Deterministic volume-preserving map fixture. Entries are drawn in [-1,1]
// from a SplitMix64 stream, re-drawn until |det| > 0.1 and the condition
// number is at most 20, then scaled to det = +1 (a row sign flip fixes a
// negative determinant).
inline LinearMap random_sl(int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("random_sl: need n >= 2");
    SplitMix64 rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = rng.symmetric();
        double d = m.determinant();
        if (std::abs(d) <= 0.1) continue;
        Eigen::JacobiSVD<Matrix> svd(m);
        double cond = svd.singularValues()(0) / svd.singularValues()(n - 1);
        if (!(cond <= 20.0)) continue;
        m *= std::pow(std::abs(d), -1.0 / n);
        if (m.determinant() < 0.0) m.row(0) *= -1.0;
        return LinearMap(std::move(m));
    }
    throw std::runtime_error("random_sl: no acceptable draw in 1000 attempts");
}

}  // namespace orlicz
