#include "expmid/problems.hpp"

#include <cmath>
#include <numbers>

#include "expmid/errors.hpp"

namespace expmid {

namespace {

std::vector<double> grid_points(int M, double left, double length) {
    std::vector<double> x(M - 1);
    for (int i = 1; i < M; ++i) x[i - 1] = left + length * i / M;
    return x;
}

// x(1-x) at the interior points
Vec bubble(const std::vector<double>& x) {
    Vec b(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) b[i] = x[i] * (1.0 - x[i]);
    return b;
}

ProblemSpec unit_interval(int M, const char* label) {
    if (M < 4) throw ConfigError("M must be at least 4");
    ProblemSpec p;
    p.op = std::make_shared<DirichletLaplacian1D>(M, 1.0, 1.0);
    p.x = grid_points(M, 0.0, 1.0);
    p.u0 = bubble(p.x);
    p.label = label;
    return p;
}

}  // namespace

ProblemSpec example1(int M) {
    ProblemSpec p = unit_interval(M, "example1");
    const Vec b = p.u0;
    p.kind = ProblemKind::linear;
    p.f = [b](double t) -> Vec { return std::exp(t) * (b.array() + 2.0).matrix(); };
    p.exact = [b](double t) -> Vec { return std::exp(t) * b; };
    return p;
}

ProblemSpec example2(int M) {
    ProblemSpec p = unit_interval(M, "example2");
    const Vec b = p.u0;
    p.kind = ProblemKind::linear;
    p.f = [b](double t) -> Vec { return std::exp(-t) * (2.0 - b.array()).matrix(); };
    p.exact = [b](double t) -> Vec { return std::exp(-t) * b; };
    return p;
}

ProblemSpec example3(int M) {
    ProblemSpec p = unit_interval(M, "example3");
    const Vec b = p.u0;
    p.kind = ProblemKind::semilinear;
    p.B = [b](double t, const Vec& u) -> Vec {
        const double et = std::exp(t);
        const Vec ue = et * b;
        return (1.0 / (1.0 + u.array().square()) + ue.array() + 2.0 * et -
                1.0 / (1.0 + ue.array().square()))
            .matrix();
    };
    p.exact = [b](double t) -> Vec { return std::exp(t) * b; };
    // theta = lambda = 1/6 and 1 + L^2/(4 theta) = 2
    p.lipschitz = LipschitzConstants{std::sqrt(2.0 / 3.0), 1.0 / 6.0, 0.0, 1.0 / 6.0};
    return p;
}

double allen_cahn_initial(double x) {
    return 0.53 * x + 0.47 * std::sin(-1.5 * std::numbers::pi * x);
}

ProblemSpec example4(int M, double eps) {
    if (!(eps > 0.0)) throw ConfigError("example4: epsilon must be positive");
    if (M < 4) throw ConfigError("M must be at least 4");
    ProblemSpec p;
    auto op = std::make_shared<DirichletLaplacian1D>(M, 2.0, eps);
    const double dx = op->mesh_weight();
    p.op = op;
    p.x = grid_points(M, -1.0, 2.0);
    p.kind = ProblemKind::semilinear;
    p.label = "example4";

    const int n = M - 1;
    p.u0.resize(n);
    for (int i = 0; i < n; ++i)
        p.u0[i] = allen_cahn_initial(p.x[i]);

    // u(-1) = -1 and u(1) = 1 enter the difference stencil at the end rows.
    Vec g = Vec::Zero(n);
    g[0] = -eps / (dx * dx);
    g[n - 1] = eps / (dx * dx);
    p.B = [g](double, const Vec& u) -> Vec { return (u.array() - u.array().cube()).matrix() + g; };
    return p;
}

ProblemSpec make_example(int id, int M, double eps) {
    switch (id) {
        case 1: return example1(M);
        case 2: return example2(M);
        case 3: return example3(M);
        case 4: return example4(M, eps);
    }
    throw ConfigError("example must be 1, 2, 3 or 4");
}

}  // namespace expmid
