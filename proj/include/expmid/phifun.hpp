#pragma once

#include <memory>
#include <string>

#include "expmid/operators.hpp"

namespace expmid {

/// phi_0(z) = e^z, phi_{k+1}(z) = (phi_k(z) - 1/k!) / z.
double phi_scalar(int k, double z);

enum class PhiMethod { spectral, dense, krylov };

PhiMethod parse_phi_method(const std::string& name);
std::string to_string(PhiMethod m);

struct PhiOptions {
    PhiMethod method = PhiMethod::spectral;
    int krylov_max_dim = 30;
    double krylov_tol = 1e-12;
};

/// Computes phi_k(-tau A) v and e^{-tau A} v.
///
/// spectral: analytic eigenpairs of a DirichletLaplacian1D.
/// dense:    eigen-decomposition of the assembled matrix.
/// krylov:   Lanczos with full reorthogonalisation. When the projection does
///           not converge within krylov_max_dim the interval is split into
///           equal substeps, each handled by its own Lanczos run.
class PhiEvaluator {
public:
    PhiEvaluator(std::shared_ptr<const SpdOperator> A, PhiOptions opts = {});

    Vec phi_action(int k, double tau, const Vec& v) const;
    Vec exp_action(double tau, const Vec& v) const { return phi_action(0, tau, v); }

    const SpdOperator& op() const { return *A_; }
    const PhiOptions& options() const { return opts_; }

private:
    Vec eigen_action(int k, double tau, const Vec& v) const;
    Vec krylov_action(int k, double tau, const Vec& v) const;
    // One Lanczos projection; returns false when max_dim is reached first.
    // The projected problem is first solved at dimension m_check, which is
    // updated to just below the dimension that converged.
    bool lanczos(int k, double tau, const Vec& v, Vec& out, double& residual,
                 double& ritz_max, int& m_check) const;

    std::shared_ptr<const SpdOperator> A_;
    PhiOptions opts_;
    Vec lambda_;  // eigenvalues, spectral/dense paths
    Mat Q_;       // orthonormal eigenvectors as columns
};

}  // namespace expmid
