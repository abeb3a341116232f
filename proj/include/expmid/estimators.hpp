#pragma once

#include <array>
#include <functional>
#include <memory>

#include "expmid/integrators.hpp"

namespace expmid {

/// Three-point Gauss-Legendre rule, exact through degree 5.
struct Quadrature3 {
    static constexpr std::array<double, 3> ref_nodes{-0.7745966692414834, 0.0,
                                                     0.7745966692414834};
    static constexpr std::array<double, 3> ref_weights{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

    static std::array<double, 3> nodes(double a, double b);
    static std::array<double, 3> weights(double a, double b);

    template <class F>
    static double integrate(double a, double b, F&& f) {
        const auto x = nodes(a, b);
        const auto w = weights(a, b);
        double s = 0.0;
        for (int i = 0; i < 3; ++i) s += w[i] * f(x[i]);
        return s;
    }
};

// ---- pointwise objects on step n (t in [t^{n-1}, t^n]) ----

Vec interpolant(const Trajectory& tr, int n, double t);
Vec reconstruction(const Trajectory& tr, int n, double t);
/// Closed form of reconstruction minus interpolant.
Vec recon_minus_interp(const Trajectory& tr, int n, double t);

/// Residual of the interpolant, rewritten through the cached phi-vectors.
Vec residual_R(const Trajectory& tr, int n, double t, const ProblemSpec& p);
/// U'(t) + A U(t) - rhs(t, U(t)) evaluated directly.
Vec residual_R_direct(const Trajectory& tr, int n, double t, const ProblemSpec& p);
/// Residual of the reconstruction; diagnostic only.
Vec residual_Rhat(const Trajectory& tr, int n, double t, const ProblemSpec& p);

/// f(t) minus its linear interpolant through t^{n-1} and t^{n-1/2}.
Vec residual_Rf(const ProblemSpec& p, const TimeGrid& grid, int n, double t);
/// B(t, U(t)) minus the linear interpolant of B(t^{n-1}, U^{n-1}) and
/// B(t^{n-1/2}, U^{n-1/2}).
Vec residual_Rb(const Trajectory& tr, const ProblemSpec& p, int n, double t);

/// Re-runs step n from t^{n-1} with step t - t^{n-1}.
Vec dense_output(const Trajectory& tr, const ProblemSpec& p, const PhiEvaluator& phi, int n,
                 double t, const SemilinearConfig& cfg = {});

// ---- accumulated quantities ----

struct EstimatorOptions {
    /// Norm for the reconstruction estimator estU.
    EnergyNorm estU_norm = EnergyNorm::interior_difference;
};

struct EstimatorValues {
    double estU = 0.0;
    double estFB = 0.0;  // estF for linear, estB for semilinear problems
    double zetaU = 0.0;
};

EstimatorValues accumulate_estimators(const Trajectory& tr, const ProblemSpec& p,
                                      const PhiEvaluator& phi, const EstimatorOptions& opts = {});

/// (1/30) sum k^5 |phi_1 [rhs(mid) - rhs(prev)] / k|^2 in the given norm.
double epsU_closed_form(const Trajectory& tr, const SpdOperator& A, EnergyNorm norm);
/// Gauss quadrature of |U_hat - U|^2 over [0, T] in the given norm.
double epsU_quadrature(const Trajectory& tr, const SpdOperator& A, EnergyNorm norm);

using SolutionFn = std::function<Vec(double)>;

enum class E1Path { dense_output, interpolant };

struct MetricOptions {
    /// How U(s) is evaluated inside the L2(0,T;V) error.
    E1Path e1 = E1Path::dense_output;
    SemilinearConfig semilinear{};
};

struct ErrorMetrics {
    double E_T = 0.0;
    double E_inf = 0.0;
    double E_1 = 0.0;
};

ErrorMetrics error_metrics(const Trajectory& tr, const ProblemSpec& p, const PhiEvaluator& phi,
                           const SolutionFn& exact, const MetricOptions& opts = {});

/// Fine-step trajectory used in place of an exact solution. Node times of the
/// fine grid return stored values; other times use the dense output.
SolutionFn reference_solution(std::shared_ptr<const Trajectory> ref, const ProblemSpec& p,
                              std::shared_ptr<const PhiEvaluator> phi,
                              const SemilinearConfig& cfg = {});

struct Effectivity {
    double lower = 0.0;
    double upper = 0.0;
    double ei_L = 0.0;
    double ei_U = 0.0;
};

Effectivity bounds_and_effectivity(const ErrorMetrics& m, const EstimatorValues& e,
                                   ProblemKind kind);

struct SuboptimalBounds {
    double maxnorm_bound = 0.0;  // max |R|^2 / lambda_1^2 over sampled nodes
    double l2v_bound = 0.0;      // integral of |R|_*^2
};

SuboptimalBounds suboptimal_bounds(const Trajectory& tr, const ProblemSpec& p);

struct SuboptimalMeasured {
    double max_err_sq = 0.0;  // max_n |e(t^n)|^2
    double l2v_err = 0.0;     // |e(T)|^2 + integral of |e|_V^2
};

/// The quantities bounded by suboptimal_bounds, with e = u - interpolant.
SuboptimalMeasured suboptimal_measured(const Trajectory& tr, const ProblemSpec& p,
                                       const SolutionFn& exact);

struct SemilinearBound {
    double upper = 0.0;        // right-hand side of the energy estimate
    double measured = 0.0;     // |u-U_hat|^2(T) + c int (|e|^2 + |e_hat|^2)
    double lower = 0.0;        // c/2 int |U_hat - U|^2
    double lower_target = 0.0; // c int (|e|^2 + |e_hat|^2)
};

/// Energy estimate for mu = 0 with c = 1 - lambda - 4 theta. measured and
/// lower_target stay zero when exact is empty.
SemilinearBound semilinear_bound(const Trajectory& tr, const ProblemSpec& p,
                                 const PhiEvaluator& phi, const SolutionFn& exact = {});

}  // namespace expmid
