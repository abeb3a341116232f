#include "expmid/phifun.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

#include "expmid/errors.hpp"

namespace expmid {

namespace {

constexpr double kSeriesSwitch = 1e-2;
constexpr int kSeriesTerms = 20;
constexpr int kMaxSubsteps = 1 << 16;
// tau * rho per substep that a 30-dimensional projection typically resolves
constexpr double kSubstepStiffness = 32.0;
// Ritz problem solved every few Lanczos steps only
constexpr int kCheckEvery = 4;

double inv_factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r /= i;
    return r;
}

}  // namespace

double phi_scalar(int k, double z) {
    if (k < 0) throw ConfigError("phi_scalar: k must be nonnegative");
    if (k == 0) return std::exp(z);
    if (std::abs(z) < kSeriesSwitch) {
        // sum_j z^j / (j+k)!, Horner form
        double s = inv_factorial(k + kSeriesTerms - 1);
        for (int j = kSeriesTerms - 2; j >= 0; --j) s = s * z + inv_factorial(j + k);
        return s;
    }
    double p = std::exp(z);
    for (int j = 0; j < k; ++j) p = (p - inv_factorial(j)) / z;
    return p;
}

PhiMethod parse_phi_method(const std::string& name) {
    if (name == "spectral") return PhiMethod::spectral;
    if (name == "dense") return PhiMethod::dense;
    if (name == "krylov") return PhiMethod::krylov;
    throw ConfigError("unknown phi method '" + name + "'");
}

std::string to_string(PhiMethod m) {
    switch (m) {
        case PhiMethod::spectral: return "spectral";
        case PhiMethod::dense: return "dense";
        case PhiMethod::krylov: return "krylov";
    }
    return "?";
}

PhiEvaluator::PhiEvaluator(std::shared_ptr<const SpdOperator> A, PhiOptions opts)
    : A_(std::move(A)), opts_(opts) {
    if (!A_) throw ConfigError("PhiEvaluator: null operator");
    const int n = A_->dim();
    if (opts_.method == PhiMethod::spectral) {
        const auto* lap = dynamic_cast<const DirichletLaplacian1D*>(A_.get());
        if (lap == nullptr)
            throw ConfigError("spectral phi path needs a DirichletLaplacian1D; use dense or krylov");
        lambda_.resize(n);
        Q_.resize(n, n);
        for (int j = 1; j <= n; ++j) {
            lambda_[j - 1] = lap->eigenvalue(j);
            Q_.col(j - 1) = lap->eigenvector(j);
        }
    } else if (opts_.method == PhiMethod::dense) {
        Mat dense(n, n);
        Vec e = Vec::Zero(n);
        for (int j = 0; j < n; ++j) {
            e[j] = 1.0;
            dense.col(j) = A_->apply(e);
            e[j] = 0.0;
        }
        Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (dense + dense.transpose()));
        if (eig.info() != Eigen::Success) throw OperatorError("dense eigen-decomposition failed");
        lambda_ = eig.eigenvalues();
        Q_ = eig.eigenvectors();
    } else {
        if (opts_.krylov_max_dim < 1) throw ConfigError("krylov_max_dim must be positive");
        if (!(opts_.krylov_tol > 0.0)) throw ConfigError("krylov_tol must be positive");
    }
}

Vec PhiEvaluator::phi_action(int k, double tau, const Vec& v) const {
    if (v.size() != A_->dim())
        throw DimensionError("phi_action: vector length " + std::to_string(v.size()) +
                             " does not match operator dimension " + std::to_string(A_->dim()));
    if (!(tau > 0.0)) throw ConfigError("phi_action: tau must be positive");
    if (k < 0) throw ConfigError("phi_action: k must be nonnegative");
    if (opts_.method == PhiMethod::krylov) return krylov_action(k, tau, v);
    return eigen_action(k, tau, v);
}

Vec PhiEvaluator::eigen_action(int k, double tau, const Vec& v) const {
    Vec c = Q_.transpose() * v;
    for (Eigen::Index j = 0; j < c.size(); ++j) c[j] *= phi_scalar(k, -tau * lambda_[j]);
    return Q_ * c;
}

bool PhiEvaluator::lanczos(int k, double tau, const Vec& v, Vec& out, double& residual,
                           double& ritz_max, int& m_check) const {
    const int n = A_->dim();
    const double beta0 = v.norm();
    ritz_max = 0.0;
    if (beta0 == 0.0) {
        out = Vec::Zero(n);
        residual = 0.0;
        return true;
    }
    const int mmax = std::min(opts_.krylov_max_dim, n);
    Mat V(n, mmax);
    Vec alpha(mmax), beta(mmax);
    V.col(0) = v / beta0;
    Eigen::SelfAdjointEigenSolver<Mat> eig;

    for (int m = 1; m <= mmax; ++m) {
        Vec w = A_->apply(V.col(m - 1));
        const double a = V.col(m - 1).dot(w);
        alpha[m - 1] = a;
        w -= a * V.col(m - 1);
        if (m > 1) w -= beta[m - 2] * V.col(m - 2);
        w -= V.leftCols(m) * (V.leftCols(m).transpose() * w);
        const double b = w.norm();
        const bool breakdown = b <= 1e-14 * std::abs(a) || m == n;
        if (!breakdown && m < mmax && (m < m_check || (m - m_check) % kCheckEvery != 0)) {
            beta[m - 1] = b;
            V.col(m) = w / b;
            continue;
        }

        Vec sub = beta.head(std::max(m - 1, 0));
        Vec diag = alpha.head(m);
        eig.computeFromTridiagonal(diag, sub);
        const Vec& th = eig.eigenvalues();
        const Mat& S = eig.eigenvectors();
        ritz_max = th[m - 1];
        Vec c(m), c_next(m);
        for (int i = 0; i < m; ++i) {
            c[i] = phi_scalar(k, -tau * th[i]) * S(0, i);
            c_next[i] = phi_scalar(k + 1, -tau * th[i]) * S(0, i);
        }
        const Vec y = S * c;
        const Vec y_next = S * c_next;
        out = beta0 * (V.leftCols(m) * y);

        // Generalised residual estimate for the projected phi_k action.
        const double scale = std::max(out.norm(), beta0 * 1e-300);
        residual = beta0 * b * tau * std::abs(y_next[m - 1]) / scale;
        if (breakdown || residual <= opts_.krylov_tol) {
            if (breakdown) residual = 0.0;
            m_check = std::max(1, m - 1);
            return true;
        }
        if (m < mmax) {
            beta[m - 1] = b;
            V.col(m) = w / b;
        }
    }
    return false;
}

Vec PhiEvaluator::krylov_action(int k, double tau, const Vec& v) const {
    if (k > 1) throw ConfigError("krylov path provides phi_0 and phi_1 only");
    Vec out;
    double residual = 0.0;
    double rho = 0.0;
    int m_check = kCheckEvery;
    if (lanczos(k, tau, v, out, residual, rho, m_check)) return out;

    // tau phi_1(-tau A) v = h sum_{j<s} e^{-j h A} phi_1(-h A) v and
    // e^{-tau A} = (e^{-h A})^s, with h = tau / s. The first substep count
    // comes from the largest Ritz value seen so far.
    int s = 2;
    while (s < kMaxSubsteps && tau * rho / s > kSubstepStiffness) s *= 2;
    for (; s <= kMaxSubsteps; s *= 2) {
        const double h = tau / s;
        bool ok = true;
        double r = 0.0;
        Vec acc;
        if (k == 0) {
            acc = v;
            for (int j = 0; j < s && ok; ++j) {
                Vec next;
                ok = lanczos(0, h, acc, next, residual, r, m_check);
                acc = std::move(next);
            }
        } else {
            Vec u;
            ok = lanczos(1, h, v, u, residual, r, m_check);
            acc = u;
            for (int j = 1; j < s && ok; ++j) {
                Vec next;
                ok = lanczos(0, h, acc, next, residual, r, m_check);
                acc = u + next;
            }
            if (ok) acc /= s;
        }
        if (ok) return acc;
    }
    throw ConvergenceError("krylov phi action did not converge at dimension " +
                               std::to_string(opts_.krylov_max_dim),
                           residual);
}

}  // namespace expmid
