#include "expmid/integrators.hpp"

#include <cmath>
#include <string>

#include "expmid/errors.hpp"

namespace expmid {

TimeGrid::TimeGrid(std::vector<double> nodes) : t_(std::move(nodes)) {
    if (t_.size() < 2) throw ConfigError("TimeGrid: need at least two nodes");
    for (std::size_t i = 1; i < t_.size(); ++i)
        if (!(t_[i] > t_[i - 1])) throw ConfigError("TimeGrid: nodes must increase strictly");
}

TimeGrid TimeGrid::uniform(double T, int N) {
    if (N < 1) throw ConfigError("TimeGrid: N must be positive");
    std::vector<double> t(N + 1);
    for (int n = 0; n <= N; ++n) t[n] = T * n / N;
    return TimeGrid(std::move(t));
}

Vec step_linear(const PhiEvaluator& phi, const std::function<Vec(double)>& f, const Vec& U_prev,
                double t_prev, double k) {
    if (!(k > 0.0)) throw ConfigError("step_linear: k must be positive");
    const Vec a = phi.phi_action(1, k, f(t_prev + 0.5 * k));
    const Vec b = phi.phi_action(1, k, phi.op().apply(U_prev));
    return U_prev + k * (a - b);
}

SemilinearStep step_semilinear(const PhiEvaluator& phi,
                               const std::function<Vec(double, const Vec&)>& B,
                               const Vec& U_prev, double t_prev, double k,
                               const SemilinearConfig& cfg) {
    if (!(k > 0.0)) throw ConfigError("step_semilinear: k must be positive");
    if (!(cfg.fp_tol > 0.0)) throw ConfigError("step_semilinear: fp_tol must be positive");
    const double h = 0.5 * k;
    const double tm = t_prev + h;
    const double dx = phi.op().mesh_weight();
    const Vec base = phi.exp_action(h, U_prev);

    SemilinearStep out;
    Vec Y = U_prev;
    double inc = 0.0;
    for (int it = 1; it <= cfg.fp_max_iter; ++it) {
        Vec next = base + h * phi.phi_action(1, h, B(tm, Y));
        inc = std::sqrt(inner_h(next - Y, next - Y, dx));
        Y = std::move(next);
        if (inc < cfg.fp_tol) {
            out.iterations = it;
            out.last_increment = inc;
            out.stage = Y;
            out.cache.phi_rhs = phi.phi_action(1, k, B(tm, Y));
            out.cache.phi_AU = phi.phi_action(1, k, phi.op().apply(U_prev));
            out.U_next = U_prev + k * (out.cache.phi_rhs - out.cache.phi_AU);
            return out;
        }
    }
    throw ConvergenceError("fixed-point stage iteration exceeded " +
                               std::to_string(cfg.fp_max_iter) + " iterations",
                           inc);
}

namespace {

void check_nodes(const std::vector<double>& c) {
    if (c.empty() || c.size() > 3) throw ConfigError("quadrature nodes: need 1 to 3 nodes");
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] < 0.0 || c[i] > 1.0) throw ConfigError("quadrature nodes must lie in [0,1]");
        for (std::size_t j = 0; j < i; ++j)
            if (c[i] == c[j]) throw ConfigError("quadrature nodes must be distinct");
    }
}

// Monomial coefficients of the i-th Lagrange polynomial.
std::vector<double> lagrange_coeffs(const std::vector<double>& c, std::size_t i) {
    std::vector<double> p{1.0};
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (j == i) continue;
        const double d = c[i] - c[j];
        std::vector<double> q(p.size() + 1, 0.0);
        for (std::size_t m = 0; m < p.size(); ++m) {
            q[m + 1] += p[m] / d;
            q[m] -= c[j] * p[m] / d;
        }
        p = std::move(q);
    }
    return p;
}

}  // namespace

std::vector<WeightAction> exp_quadrature_weights(const PhiEvaluator& phi,
                                                 const std::vector<double>& c, double k) {
    check_nodes(c);
    if (!(k > 0.0)) throw ConfigError("exp_quadrature_weights: k must be positive");
    std::vector<WeightAction> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto coeff = lagrange_coeffs(c, i);
        out.push_back([&phi, coeff, k](const Vec& v) {
            Vec w = Vec::Zero(v.size());
            double fact = 1.0;
            for (std::size_t j = 0; j < coeff.size(); ++j) {
                if (j > 0) fact *= static_cast<double>(j);
                if (coeff[j] != 0.0) w += coeff[j] * fact * phi.phi_action(int(j) + 1, k, v);
            }
            return w;
        });
    }
    return out;
}

Vec step_quadrature(const PhiEvaluator& phi, const std::function<Vec(double)>& f,
                    const std::vector<double>& c, const Vec& U_prev, double t_prev, double k) {
    const auto b = exp_quadrature_weights(phi, c, k);
    Vec U = phi.exp_action(k, U_prev);
    for (std::size_t i = 0; i < c.size(); ++i) U += k * b[i](f(t_prev + c[i] * k));
    return U;
}

std::vector<double> lagrange_integrals(const std::vector<double>& c) {
    check_nodes(c);
    std::vector<double> b(c.size(), 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto p = lagrange_coeffs(c, i);
        for (std::size_t j = 0; j < p.size(); ++j) b[i] += p[j] / static_cast<double>(j + 1);
    }
    return b;
}

UpdateOrder check_update_order(const std::vector<double>& c) {
    const auto b = lagrange_integrals(c);
    UpdateOrder r;
    double fact_jm1 = 1.0;  // (j-1)!
    for (int j = 1; j <= 12; ++j) {
        if (j > 1) fact_jm1 *= (j - 1);
        double lhs = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) lhs += b[i] * std::pow(c[i], j - 1) / fact_jm1;
        const double rhs = 1.0 / (fact_jm1 * j);
        if (std::abs(lhs - rhs) > 1e-12) break;
        r.q = j;
    }
    const int s = static_cast<int>(c.size());
    double extra = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) extra += b[i] * std::pow(c[i], s);
    r.additional = std::abs(extra - 1.0 / (s + 1)) <= 1e-12;
    return r;
}

Trajectory run(const ProblemSpec& problem, const TimeGrid& grid, const PhiEvaluator& phi,
               const SemilinearConfig& cfg) {
    const SpdOperator& A = *problem.op;
    if (problem.u0.size() != A.dim())
        throw DimensionError("run: initial value length does not match the operator");
    Trajectory tr{grid, {}, {}, {}, {}};
    const int N = grid.steps();
    tr.U.reserve(N + 1);
    tr.U.push_back(problem.u0);
    tr.cache.reserve(N);
    for (int n = 1; n <= N; ++n) {
        const double t0 = grid.t(n - 1);
        const double k = grid.k(n);
        const Vec& Up = tr.U.back();
        try {
            StepCache c;
            Vec next;
            if (problem.kind == ProblemKind::linear) {
                c.phi_rhs = phi.phi_action(1, k, problem.f(t0 + 0.5 * k));
                c.phi_AU = phi.phi_action(1, k, A.apply(Up));
                next = Up + k * (c.phi_rhs - c.phi_AU);
            } else {
                auto st = step_semilinear(phi, problem.B, Up, t0, k, cfg);
                c = std::move(st.cache);
                next = std::move(st.U_next);
                tr.stage.push_back(std::move(st.stage));
                tr.fp_iterations.push_back(st.iterations);
            }
            c.phi_rhs_prev = phi.phi_action(1, k, problem.rhs(t0, Up));
            tr.cache.push_back(std::move(c));
            tr.U.push_back(std::move(next));
        } catch (const ConvergenceError& e) {
            throw ConvergenceError("step " + std::to_string(n) + ": " + e.what(), e.residual);
        } catch (const std::runtime_error& e) {
            throw std::runtime_error("step " + std::to_string(n) + ": " + e.what());
        }
    }
    return tr;
}

}  // namespace expmid
