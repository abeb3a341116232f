#include "expmid/operators.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "expmid/errors.hpp"

namespace expmid {

namespace {

void require_dim(const Vec& v, int n, const char* where) {
    if (v.size() != n)
        throw DimensionError(std::string(where) + ": expected length " + std::to_string(n) +
                             ", got " + std::to_string(v.size()));
}

}  // namespace

DirichletLaplacian1D::DirichletLaplacian1D(int M, double length, double diffusion)
    : M_(M), length_(length), diffusion_(diffusion) {
    if (M < 2) throw ConfigError("DirichletLaplacian1D: M must be at least 2");
    if (!(length > 0.0)) throw ConfigError("DirichletLaplacian1D: length must be positive");
    if (!(diffusion > 0.0)) throw ConfigError("DirichletLaplacian1D: diffusion must be positive");
    dx_ = length / M;
    scale_ = diffusion / (dx_ * dx_);

    // LU sweep of tridiag(-1, 2, -1); the scale is divided out in solve().
    const int n = dim();
    c_.resize(n);
    double denom = 2.0;
    c_[0] = -1.0 / denom;
    for (int i = 1; i < n; ++i) {
        denom = 2.0 + c_[i - 1];
        c_[i] = -1.0 / denom;
    }
}

Vec DirichletLaplacian1D::apply(const Vec& v) const {
    const int n = dim();
    require_dim(v, n, "apply");
    Vec w(n);
    for (int i = 0; i < n; ++i) {
        const double left = i > 0 ? v[i - 1] : 0.0;
        const double right = i + 1 < n ? v[i + 1] : 0.0;
        w[i] = scale_ * (-left + 2.0 * v[i] - right);
    }
    return w;
}

Vec DirichletLaplacian1D::solve(const Vec& v) const {
    const int n = dim();
    require_dim(v, n, "solve");
    Vec d(n);
    d[0] = v[0] / scale_ / 2.0;
    for (int i = 1; i < n; ++i) {
        const double denom = 2.0 + c_[i - 1];
        d[i] = (v[i] / scale_ + d[i - 1]) / denom;
    }
    Vec x(n);
    x[n - 1] = d[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = d[i] - c_[i] * x[i + 1];
    if (!x.allFinite()) throw OperatorError("solve: non-finite result");
    return x;
}

double DirichletLaplacian1D::eigenvalue(int j) const {
    const double s = std::sin(std::numbers::pi * j / (2.0 * M_));
    return 4.0 * scale_ * s * s;
}

Vec DirichletLaplacian1D::eigenvector(int j) const {
    const int n = dim();
    const double c = std::sqrt(2.0 / M_);
    Vec q(n);
    for (int i = 0; i < n; ++i) q[i] = c * std::sin(std::numbers::pi * j * (i + 1) / M_);
    return q;
}

double inner_h(const Vec& v, const Vec& w, double dx) {
    if (v.size() != w.size())
        throw DimensionError("inner_h: length mismatch " + std::to_string(v.size()) + " vs " +
                             std::to_string(w.size()));
    double s = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) s += v[i] * w[i];
    return dx * s;
}

double norm_h(const SpdOperator& A, const Vec& v) {
    return std::sqrt(inner_h(v, v, A.mesh_weight()));
}

double norm_v(const SpdOperator& A, const Vec& v) {
    return std::sqrt(std::max(0.0, inner_h(A.apply(v), v, A.mesh_weight())));
}

double norm_vstar(const SpdOperator& A, const Vec& v) {
    return std::sqrt(std::max(0.0, inner_h(v, A.solve(v), A.mesh_weight())));
}

double norm_v_interior(const DirichletLaplacian1D& A, const Vec& v) {
    require_dim(v, A.dim(), "norm_v_interior");
    const double dx = A.mesh_weight();
    double s = 0.0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        const double d = v[i] - v[i - 1];
        s += d * d;
    }
    return std::sqrt(A.diffusion() * s / dx);
}

double energy_sq(const SpdOperator& A, const Vec& v, EnergyNorm kind) {
    if (kind == EnergyNorm::operator_norm) {
        const double r = norm_v(A, v);
        return r * r;
    }
    const auto* lap = dynamic_cast<const DirichletLaplacian1D*>(&A);
    if (lap == nullptr)
        throw ConfigError("interior-difference energy norm needs a DirichletLaplacian1D");
    const double r = norm_v_interior(*lap, v);
    return r * r;
}

}  // namespace expmid
