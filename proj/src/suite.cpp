#include "expmid/suite.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <memory>

#include "expmid/errors.hpp"
#include "expmid/problems.hpp"

namespace expmid {

RunConfig resolved(const RunConfig& cfg) {
    RunConfig c = cfg;
    if (c.example < 1 || c.example > 4) throw ConfigError("example must be 1, 2, 3 or 4");
    if (c.M == 0) c.M = c.example == 4 ? 80 : 100;
    if (c.steps.empty())
        c.steps = c.example == 4 ? std::vector<int>{10, 20, 40, 80}
                                 : std::vector<int>{10, 20, 40, 80, 160, 320};
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
        if (c.steps[i] < 1) throw ConfigError("step counts must be positive");
        if (i > 0 && c.steps[i] <= c.steps[i - 1])
            throw ConfigError("step counts must increase strictly");
    }
    if (c.M < 4) throw ConfigError("M must be at least 4");
    if (!(c.semilinear.fp_tol > 0.0)) throw ConfigError("fp-tol must be positive");
    if (c.semilinear.fp_max_iter < 1) throw ConfigError("fp-max-iter must be positive");
    return c;
}

std::vector<double> convergence_order(const std::vector<double>& values,
                                      const std::vector<int>& steps) {
    if (values.size() != steps.size()) throw DataError("convergence_order: length mismatch");
    if (values.size() < 2) throw DataError("convergence_order: need at least two values");
    std::vector<double> out;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!(values[i] > 0.0)) throw DataError("convergence_order: values must be positive");
    for (std::size_t i = 1; i < values.size(); ++i)
        out.push_back(std::log(values[i - 1] / values[i]) /
                      std::log(static_cast<double>(steps[i]) / steps[i - 1]));
    return out;
}

namespace {

std::vector<double> orders_or_nan(const std::vector<RunReport>& runs, double (*get)(const RunReport&)) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> out(runs.size(), nan);
    std::vector<double> v;
    std::vector<int> n;
    for (const auto& r : runs) {
        v.push_back(get(r));
        n.push_back(r.N);
    }
    bool positive = true;
    for (double x : v) positive = positive && x > 0.0;
    if (v.size() < 2 || !positive) return out;
    const auto o = convergence_order(v, n);
    for (std::size_t i = 0; i < o.size(); ++i) out[i + 1] = o[i];
    return out;
}

}  // namespace

SuiteResult run_suite(const RunConfig& cfg_in) {
    SuiteResult res;
    res.config = resolved(cfg_in);
    const RunConfig& cfg = res.config;
    const ProblemSpec p = make_example(cfg.example, cfg.M, cfg.epsilon);
    auto phi = std::make_shared<const PhiEvaluator>(p.op, cfg.phi);

    SolutionFn exact = p.exact;
    if (!exact) {
        auto ref = std::make_shared<const Trajectory>(
            run(p, TimeGrid::uniform(p.T, cfg.reference_steps), *phi, cfg.semilinear));
        exact = reference_solution(ref, p, phi, cfg.semilinear);
    }
    MetricOptions mopts;
    mopts.e1 = cfg.e1;
    mopts.semilinear = cfg.semilinear;

    for (int N : cfg.steps) {
        RunReport r;
        r.example = cfg.example;
        r.M = cfg.M;
        r.N = N;
        r.phi_method = to_string(cfg.phi.method);
        r.kind = p.kind;
        try {
            const Trajectory tr = run(p, TimeGrid::uniform(p.T, N), *phi, cfg.semilinear);
            for (int it : tr.fp_iterations) r.max_fp_iterations = std::max(r.max_fp_iterations, it);
            r.errors = error_metrics(tr, p, *phi, exact, mopts);
            r.est = accumulate_estimators(tr, p, *phi, cfg.estimator);
            r.eff = bounds_and_effectivity(r.errors, r.est, p.kind);
        } catch (const std::exception& e) {
            throw std::runtime_error(fmt::format("example {} M={} N={} phi={}: {}", cfg.example,
                                                 cfg.M, N, r.phi_method, e.what()));
        }
        res.runs.push_back(r);
    }
    res.order_ET = orders_or_nan(res.runs, [](const RunReport& r) { return r.errors.E_T; });
    res.order_Einf = orders_or_nan(res.runs, [](const RunReport& r) { return r.errors.E_inf; });
    res.order_E1 = orders_or_nan(res.runs, [](const RunReport& r) { return r.errors.E_1; });
    res.order_estU = orders_or_nan(res.runs, [](const RunReport& r) { return r.est.estU; });
    res.order_estFB = orders_or_nan(res.runs, [](const RunReport& r) { return r.est.estFB; });
    res.order_zetaU = orders_or_nan(res.runs, [](const RunReport& r) { return r.est.zetaU; });
    return res;
}

namespace {

std::string full(double x) {
    if (std::isnan(x)) return "";
    return fmt::format("{:.17g}", x);
}

std::string sci(double x) { return fmt::format("{:.4e}", x); }

std::string fixed4(double x) {
    if (std::isnan(x)) return "-";
    return fmt::format("{:.4f}", x);
}

}  // namespace

std::string render_csv(const SuiteResult& r) {
    std::string out =
        "example,M,N,phi_method,E_T,order_ET,E_inf,order_Einf,E_1,order_E1,est_U,order_estU,"
        "est_F_or_B,order_estFB,zeta_U,order_zetaU,lower,upper,ei_L,ei_U\n";
    for (std::size_t i = 0; i < r.runs.size(); ++i) {
        const auto& x = r.runs[i];
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                           x.example, x.M, x.N, x.phi_method, full(x.errors.E_T),
                           full(r.order_ET[i]), full(x.errors.E_inf), full(r.order_Einf[i]),
                           full(x.errors.E_1), full(r.order_E1[i]), full(x.est.estU),
                           full(r.order_estU[i]), full(x.est.estFB), full(r.order_estFB[i]),
                           full(x.est.zetaU), full(r.order_zetaU[i]), full(x.eff.lower),
                           full(x.eff.upper), full(x.eff.ei_L), full(x.eff.ei_U));
    }
    return out;
}

std::string render_text(const SuiteResult& r, const std::string& table) {
    const bool all = table == "all";
    if (!all && table != "errors" && table != "estimators" && table != "effectivity")
        throw ConfigError("table must be errors, estimators, effectivity or all");
    const auto& c = r.config;
    const bool linear = r.runs.empty() || r.runs.front().kind == ProblemKind::linear;
    std::string out = fmt::format("example {}  M={}  phi={}\n", c.example, c.M,
                                  to_string(c.phi.method));

    if (all || table == "errors") {
        out += fmt::format("\n{:>6} {:>11} {:>7} {:>11} {:>7} {:>11} {:>7}\n", "N", "E_T", "order",
                           "E_inf", "order", "E_1", "order");
        for (std::size_t i = 0; i < r.runs.size(); ++i) {
            const auto& x = r.runs[i];
            out += fmt::format("{:>6} {:>11} {:>7} {:>11} {:>7} {:>11} {:>7}\n", x.N,
                               sci(x.errors.E_T), fixed4(r.order_ET[i]), sci(x.errors.E_inf),
                               fixed4(r.order_Einf[i]), sci(x.errors.E_1), fixed4(r.order_E1[i]));
        }
    }
    if (all || table == "estimators") {
        out += fmt::format("\n{:>6} {:>11} {:>7} {:>11} {:>7} {:>11} {:>7}\n", "N", "est_U",
                           "order", linear ? "est_F" : "est_B", "order", "zeta_U", "order");
        for (std::size_t i = 0; i < r.runs.size(); ++i) {
            const auto& x = r.runs[i];
            out += fmt::format("{:>6} {:>11} {:>7} {:>11} {:>7} {:>11} {:>7}\n", x.N,
                               sci(x.est.estU), fixed4(r.order_estU[i]), sci(x.est.estFB),
                               fixed4(r.order_estFB[i]), sci(x.est.zetaU),
                               fixed4(r.order_zetaU[i]));
        }
    }
    if (all || table == "effectivity") {
        out += fmt::format("\n{:>6} {:>11} {:>11} {:>8} {:>8}\n", "N", "lower", "upper", "ei_L",
                           "ei_U");
        for (const auto& x : r.runs)
            out += fmt::format("{:>6} {:>11} {:>11} {:>8} {:>8}\n", x.N, sci(x.eff.lower),
                               sci(x.eff.upper), fixed4(x.eff.ei_L), fixed4(x.eff.ei_U));
    }
    return out;
}

}  // namespace expmid
