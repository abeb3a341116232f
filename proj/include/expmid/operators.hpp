#pragma once

#include <Eigen/Core>

namespace expmid {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Symmetric positive definite operator together with the weight of the
/// discrete inner product (u,v)_h = mesh_weight * sum u_i v_i.
class SpdOperator {
public:
    virtual ~SpdOperator() = default;

    virtual int dim() const = 0;
    virtual Vec apply(const Vec& v) const = 0;
    virtual Vec solve(const Vec& v) const = 0;
    virtual double lambda1() const = 0;
    virtual double mesh_weight() const = 0;
};

/// Central second difference on a uniform grid with homogeneous Dirichlet
/// ends, scaled by a diffusion coefficient. dim = M - 1.
class DirichletLaplacian1D final : public SpdOperator {
public:
    DirichletLaplacian1D(int M, double length = 1.0, double diffusion = 1.0);

    int dim() const override { return M_ - 1; }
    Vec apply(const Vec& v) const override;
    Vec solve(const Vec& v) const override;
    double lambda1() const override { return eigenvalue(1); }
    double mesh_weight() const override { return dx_; }

    int M() const { return M_; }
    double length() const { return length_; }
    double diffusion() const { return diffusion_; }

    /// j-th eigenvalue, j = 1..M-1.
    double eigenvalue(int j) const;
    /// j-th eigenvector sin(j pi i / M), normalised in the Euclidean norm.
    Vec eigenvector(int j) const;

private:
    int M_;
    double length_;
    double diffusion_;
    double dx_;
    double scale_;  // diffusion / dx^2
    Vec c_;         // Thomas forward sweep coefficients
};

double inner_h(const Vec& v, const Vec& w, double dx);

double norm_h(const SpdOperator& A, const Vec& v);
double norm_v(const SpdOperator& A, const Vec& v);
double norm_vstar(const SpdOperator& A, const Vec& v);

/// Energy seminorm built from the M-2 differences between neighbouring
/// unknowns only, i.e. the two boundary differences against the zero
/// Dirichlet values are left out. Used as a reporting convention for the
/// reconstruction estimator.
double norm_v_interior(const DirichletLaplacian1D& A, const Vec& v);

enum class EnergyNorm { operator_norm, interior_difference };

/// Squared V-norm under the chosen convention. interior_difference
/// requires a DirichletLaplacian1D.
double energy_sq(const SpdOperator& A, const Vec& v, EnergyNorm kind);

}  // namespace expmid
