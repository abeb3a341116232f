#include "expmid/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "expmid/errors.hpp"

namespace expmid {

std::array<double, 3> Quadrature3::nodes(double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    return {c + h * ref_nodes[0], c, c + h * ref_nodes[2]};
}

std::array<double, 3> Quadrature3::weights(double a, double b) {
    const double h = 0.5 * (b - a);
    return {h * ref_weights[0], h * ref_weights[1], h * ref_weights[2]};
}

namespace {

void check_step(const Trajectory& tr, int n, double t) {
    const int N = tr.grid.steps();
    if (n < 1 || n > N || static_cast<int>(tr.cache.size()) < n)
        throw RangeError("step index " + std::to_string(n) + " outside 1.." + std::to_string(N));
    const double a = tr.grid.t(n - 1);
    const double b = tr.grid.t(n);
    const double tol = 1e-12 * std::max(1.0, std::abs(b));
    if (t < a - tol || t > b + tol)
        throw RangeError("time " + std::to_string(t) + " outside step " + std::to_string(n));
}

double sq(double x) { return x * x; }

double vstar_sq(const SpdOperator& A, const Vec& v) { return sq(norm_vstar(A, v)); }
double v_sq(const SpdOperator& A, const Vec& v) { return sq(norm_v(A, v)); }
double h_sq(const SpdOperator& A, const Vec& v) { return sq(norm_h(A, v)); }

// B(t^{n-1/2}, U^{n-1/2}) or f(t^{n-1/2})
Vec rhs_mid(const Trajectory& tr, const ProblemSpec& p, int n) {
    const double tm = tr.grid.mid(n);
    if (p.kind == ProblemKind::linear) return p.f(tm);
    return p.B(tm, tr.stage[n - 1]);
}

}  // namespace

Vec interpolant(const Trajectory& tr, int n, double t) {
    check_step(tr, n, t);
    const double s = t - tr.grid.t(n - 1);
    return tr.U[n - 1] + s * tr.dbar(n);
}

Vec reconstruction(const Trajectory& tr, int n, double t) {
    check_step(tr, n, t);
    const double s = t - tr.grid.t(n - 1);
    const double r = tr.grid.t(n) - t;
    const double k = tr.grid.k(n);
    return tr.U[n - 1] + s * tr.dbar(n) - (s * r / k) * tr.delta_phi(n);
}

Vec recon_minus_interp(const Trajectory& tr, int n, double t) {
    check_step(tr, n, t);
    const double s = t - tr.grid.t(n - 1);
    const double r = tr.grid.t(n) - t;
    return -(s * r / tr.grid.k(n)) * tr.delta_phi(n);
}

Vec residual_R(const Trajectory& tr, int n, double t, const ProblemSpec& p) {
    check_step(tr, n, t);
    const SpdOperator& A = *p.op;
    const double s = t - tr.grid.t(n - 1);
    const Vec dbar = tr.dbar(n);
    const Vec fm = rhs_mid(tr, p, n);
    const Vec ft = p.kind == ProblemKind::linear ? p.f(t) : p.B(t, interpolant(tr, n, t));
    // (phi_1 - I)(fm - A U^{n-1}) = dbar - (fm - A U^{n-1})
    const Vec g = fm - A.apply(tr.U[n - 1]);
    return (dbar - g) + (fm - ft) + s * A.apply(dbar);
}

Vec residual_R_direct(const Trajectory& tr, int n, double t, const ProblemSpec& p) {
    const Vec U = interpolant(tr, n, t);
    return tr.dbar(n) + p.op->apply(U) - p.rhs(t, U);
}

Vec residual_Rhat(const Trajectory& tr, int n, double t, const ProblemSpec& p) {
    const Vec Uh = reconstruction(tr, n, t);
    const double t0 = tr.grid.t(n - 1);
    const double t1 = tr.grid.t(n);
    const Vec dUh = tr.dbar(n) - ((t1 + t0 - 2.0 * t) / tr.grid.k(n)) * tr.delta_phi(n);
    return dUh + p.op->apply(Uh) - p.rhs(t, Uh);
}

Vec residual_Rf(const ProblemSpec& p, const TimeGrid& grid, int n, double t) {
    if (n < 1 || n > grid.steps()) throw RangeError("residual_Rf: step index out of range");
    const double t0 = grid.t(n - 1);
    const double tm = grid.mid(n);
    const double k = grid.k(n);
    const double tol = 1e-12 * std::max(1.0, std::abs(grid.t(n)));
    if (t < t0 - tol || t > grid.t(n) + tol) throw RangeError("residual_Rf: time outside step");
    const Vec f0 = p.f(t0);
    const Vec fm = p.f(tm);
    return p.f(t) - (fm + (2.0 / k) * (t - tm) * (fm - f0));
}

Vec residual_Rb(const Trajectory& tr, const ProblemSpec& p, int n, double t) {
    check_step(tr, n, t);
    const double t0 = tr.grid.t(n - 1);
    const double tm = tr.grid.mid(n);
    const double k = tr.grid.k(n);
    const Vec B0 = p.B(t0, tr.U[n - 1]);
    const Vec Bm = p.B(tm, tr.stage[n - 1]);
    return p.B(t, interpolant(tr, n, t)) - (Bm + (2.0 / k) * (t - tm) * (Bm - B0));
}

Vec dense_output(const Trajectory& tr, const ProblemSpec& p, const PhiEvaluator& phi, int n,
                 double t, const SemilinearConfig& cfg) {
    check_step(tr, n, t);
    const double t0 = tr.grid.t(n - 1);
    const double sigma = t - t0;
    if (sigma <= 0.0) return tr.U[n - 1];
    if (p.kind == ProblemKind::linear) return step_linear(phi, p.f, tr.U[n - 1], t0, sigma);
    return step_semilinear(phi, p.B, tr.U[n - 1], t0, sigma, cfg).U_next;
}

double epsU_closed_form(const Trajectory& tr, const SpdOperator& A, EnergyNorm norm) {
    double eps = 0.0;
    for (int n = 1; n <= tr.grid.steps(); ++n) {
        const double k = tr.grid.k(n);
        eps += std::pow(k, 5) / 30.0 * energy_sq(A, tr.delta_phi(n) / k, norm);
    }
    return eps;
}

double epsU_quadrature(const Trajectory& tr, const SpdOperator& A, EnergyNorm norm) {
    double eps = 0.0;
    for (int n = 1; n <= tr.grid.steps(); ++n)
        eps += Quadrature3::integrate(tr.grid.t(n - 1), tr.grid.t(n), [&](double s) {
            return energy_sq(A, reconstruction(tr, n, s) - interpolant(tr, n, s), norm);
        });
    return eps;
}

EstimatorValues accumulate_estimators(const Trajectory& tr, const ProblemSpec& p,
                                      const PhiEvaluator& phi, const EstimatorOptions& opts) {
    const SpdOperator& A = *p.op;
    double fb = 0.0;
    double zeta = 0.0;
    for (int n = 1; n <= tr.grid.steps(); ++n) {
        const double k = tr.grid.k(n);
        const auto x = Quadrature3::nodes(tr.grid.t(n - 1), tr.grid.t(n));
        const auto w = Quadrature3::weights(tr.grid.t(n - 1), tr.grid.t(n));
        for (int q = 0; q < 3; ++q) {
            try {
                const Vec r = p.kind == ProblemKind::linear ? residual_Rf(p, tr.grid, n, x[q])
                                                            : residual_Rb(tr, p, n, x[q]);
                fb += w[q] * vstar_sq(A, phi.phi_action(1, k, r));
                const Vec R = residual_R(tr, n, x[q], p);
                zeta += w[q] * vstar_sq(A, phi.phi_action(1, k, R) - R);
            } catch (const std::runtime_error& e) {
                throw std::runtime_error("estimator at step " + std::to_string(n) + ", node " +
                                         std::to_string(q) + ": " + e.what());
            }
        }
    }
    EstimatorValues out;
    out.estU = std::sqrt(epsU_closed_form(tr, A, opts.estU_norm));
    out.estFB = std::sqrt(fb);
    out.zetaU = std::sqrt(zeta);
    return out;
}

ErrorMetrics error_metrics(const Trajectory& tr, const ProblemSpec& p, const PhiEvaluator& phi,
                           const SolutionFn& exact, const MetricOptions& opts) {
    if (!exact) throw ConfigError("error_metrics: no exact or reference solution");
    const SpdOperator& A = *p.op;
    const int N = tr.grid.steps();
    ErrorMetrics m;
    for (int n = 0; n <= N; ++n) {
        const double e = norm_h(A, exact(tr.grid.t(n)) - tr.U[n]);
        m.E_inf = std::max(m.E_inf, e);
        if (n == N) m.E_T = e;
    }
    double e1 = 0.0;
    for (int n = 1; n <= N; ++n)
        e1 += Quadrature3::integrate(tr.grid.t(n - 1), tr.grid.t(n), [&](double s) {
            const Vec U = opts.e1 == E1Path::dense_output
                              ? dense_output(tr, p, phi, n, s, opts.semilinear)
                              : interpolant(tr, n, s);
            return v_sq(A, exact(s) - U);
        });
    m.E_1 = std::sqrt(e1);
    return m;
}

SolutionFn reference_solution(std::shared_ptr<const Trajectory> ref, const ProblemSpec& p,
                              std::shared_ptr<const PhiEvaluator> phi,
                              const SemilinearConfig& cfg) {
    if (!ref || !phi) throw ConfigError("reference_solution: null trajectory or evaluator");
    return [ref, p, phi, cfg](double t) -> Vec {
        const auto& nodes = ref->grid.nodes();
        const double tol = 1e-12 * std::max(1.0, std::abs(nodes.back()));
        auto it = std::lower_bound(nodes.begin(), nodes.end(), t - tol);
        if (it == nodes.end()) throw RangeError("reference_solution: time beyond the reference");
        const int j = static_cast<int>(it - nodes.begin());
        if (std::abs(*it - t) <= tol) return ref->U[j];
        if (j == 0) throw RangeError("reference_solution: time before the reference");
        return dense_output(*ref, p, *phi, j, t, cfg);
    };
}

Effectivity bounds_and_effectivity(const ErrorMetrics& m, const EstimatorValues& e,
                                   ProblemKind kind) {
    Effectivity r;
    double c = 0.0;
    if (kind == ProblemKind::linear) {
        r.lower = 2.0 * e.estU / 5.0;
        r.upper = e.estU + 6.0 * e.estFB + 6.0 * e.zetaU;
        c = 5.0 / 3.0;
    } else {
        r.lower = e.estU / 12.0;
        r.upper = 2.0 * e.estU + 6.0 * e.estFB + 6.0 * e.zetaU;
        c = 1.0 / 3.0;
    }
    if (r.lower > r.upper) throw DataError("lower estimator exceeds upper estimator");
    r.ei_L = r.lower / (c * m.E_1);
    r.ei_U = r.upper / (m.E_T + c * m.E_1);
    return r;
}

SuboptimalBounds suboptimal_bounds(const Trajectory& tr, const ProblemSpec& p) {
    const SpdOperator& A = *p.op;
    SuboptimalBounds b;
    double maxR = 0.0;
    for (int n = 1; n <= tr.grid.steps(); ++n) {
        b.l2v_bound += Quadrature3::integrate(tr.grid.t(n - 1), tr.grid.t(n), [&](double s) {
            const Vec R = residual_R(tr, n, s, p);
            maxR = std::max(maxR, h_sq(A, R));
            return vstar_sq(A, R);
        });
    }
    b.maxnorm_bound = maxR / sq(A.lambda1());
    return b;
}

SuboptimalMeasured suboptimal_measured(const Trajectory& tr, const ProblemSpec& p,
                                       const SolutionFn& exact) {
    if (!exact) throw ConfigError("suboptimal_measured: no exact solution");
    const SpdOperator& A = *p.op;
    const int N = tr.grid.steps();
    SuboptimalMeasured m;
    for (int n = 0; n <= N; ++n)
        m.max_err_sq = std::max(m.max_err_sq, h_sq(A, exact(tr.grid.t(n)) - tr.U[n]));
    m.l2v_err = h_sq(A, exact(tr.grid.t(N)) - tr.U[N]);
    for (int n = 1; n <= N; ++n)
        m.l2v_err += Quadrature3::integrate(tr.grid.t(n - 1), tr.grid.t(n), [&](double s) {
            return v_sq(A, exact(s) - interpolant(tr, n, s));
        });
    return m;
}

SemilinearBound semilinear_bound(const Trajectory& tr, const ProblemSpec& p,
                                 const PhiEvaluator& phi, const SolutionFn& exact) {
    if (p.kind != ProblemKind::semilinear) throw ConfigError("semilinear_bound: linear problem");
    if (!p.lipschitz) throw ConfigError("semilinear_bound: Lipschitz constants not configured");
    const auto& lc = *p.lipschitz;
    if (lc.mu != 0.0) throw ConfigError("semilinear_bound: only mu = 0 is supported");
    if (!(lc.theta > 0.0 && lc.theta < (1.0 - lc.lambda) / 4.0))
        throw ConfigError("semilinear_bound: theta must lie in (0, (1 - lambda)/4)");
    const SpdOperator& A = *p.op;
    const double c = 1.0 - lc.lambda - 4.0 * lc.theta;
    const double K = 1.0 + lc.L * lc.L / (4.0 * lc.theta);
    const int N = tr.grid.steps();

    SemilinearBound b;
    double diff = 0.0;
    double errs = 0.0;
    for (int n = 1; n <= N; ++n) {
        const double k = tr.grid.k(n);
        const double a = tr.grid.t(n - 1);
        const double z = tr.grid.t(n);
        diff += Quadrature3::integrate(a, z, [&](double s) {
            return v_sq(A, recon_minus_interp(tr, n, s));
        });
        b.upper += Quadrature3::integrate(a, z, [&](double s) {
            const Vec R = residual_R(tr, n, s, p);
            return (vstar_sq(A, phi.phi_action(1, k, residual_Rb(tr, p, n, s))) +
                    vstar_sq(A, phi.phi_action(1, k, R) - R)) /
                   lc.theta;
        });
        if (exact)
            errs += Quadrature3::integrate(a, z, [&](double s) {
                const Vec u = exact(s);
                return v_sq(A, u - interpolant(tr, n, s)) + v_sq(A, u - reconstruction(tr, n, s));
            });
    }
    b.upper += K * diff;
    b.lower = 0.5 * c * diff;
    if (exact) {
        b.lower_target = c * errs;
        b.measured = h_sq(A, exact(tr.grid.t(N)) - tr.U[N]) + c * errs;
    }
    return b;
}

}  // namespace expmid
