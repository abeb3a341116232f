#pragma once

#include <functional>
#include <vector>

#include "expmid/phifun.hpp"
#include "expmid/problem.hpp"

namespace expmid {

class TimeGrid {
public:
    explicit TimeGrid(std::vector<double> nodes);
    static TimeGrid uniform(double T, int N);

    int steps() const { return static_cast<int>(t_.size()) - 1; }
    double t(int n) const { return t_[n]; }
    /// k_n = t^n - t^{n-1}, n = 1..N
    double k(int n) const { return t_[n] - t_[n - 1]; }
    double mid(int n) const { return 0.5 * (t_[n - 1] + t_[n]); }
    const std::vector<double>& nodes() const { return t_; }

private:
    std::vector<double> t_;
};

/// Per-step vectors shared by the solver and the estimators.
struct StepCache {
    Vec phi_rhs;  // phi_1(-k_n A) f(t^{n-1/2})  or  phi_1(-k_n A) B(t^{n-1/2}, U^{n-1/2})
    Vec phi_AU;   // phi_1(-k_n A) A U^{n-1}
    Vec phi_rhs_prev;  // phi_1(-k_n A) f(t^{n-1})  or  phi_1(-k_n A) B(t^{n-1}, U^{n-1})
};

struct Trajectory {
    TimeGrid grid;
    std::vector<Vec> U;          // U^0..U^N
    std::vector<Vec> stage;      // U^{n-1/2} at index n-1 (semilinear runs only)
    std::vector<StepCache> cache;  // index n-1
    std::vector<int> fp_iterations;  // index n-1 (semilinear runs only)

    /// (U^n - U^{n-1}) / k_n
    Vec dbar(int n) const { return cache[n - 1].phi_rhs - cache[n - 1].phi_AU; }
    /// phi_1(-k_n A) [rhs(t^{n-1/2}) - rhs(t^{n-1})]
    Vec delta_phi(int n) const { return cache[n - 1].phi_rhs - cache[n - 1].phi_rhs_prev; }
};

struct SemilinearConfig {
    double fp_tol = 1e-10;
    int fp_max_iter = 100;
};

Vec step_linear(const PhiEvaluator& phi, const std::function<Vec(double)>& f, const Vec& U_prev,
                double t_prev, double k);

struct SemilinearStep {
    Vec stage;
    Vec U_next;
    StepCache cache;
    int iterations = 0;
    double last_increment = 0.0;
};

SemilinearStep step_semilinear(const PhiEvaluator& phi,
                               const std::function<Vec(double, const Vec&)>& B,
                               const Vec& U_prev, double t_prev, double k,
                               const SemilinearConfig& cfg);

using WeightAction = std::function<Vec(const Vec&)>;

/// b_i(-kA) as callables for nodes c (1 <= s <= 3, distinct, in (0,1]).
std::vector<WeightAction> exp_quadrature_weights(const PhiEvaluator& phi,
                                                 const std::vector<double>& c, double k);

/// One step U^n = e^{-kA} U^{n-1} + k sum_i b_i(-kA) f(t^{n-1} + c_i k).
Vec step_quadrature(const PhiEvaluator& phi, const std::function<Vec(double)>& f,
                    const std::vector<double>& c, const Vec& U_prev, double t_prev, double k);

/// b_i(0) = integral of the i-th Lagrange polynomial over [0,1].
std::vector<double> lagrange_integrals(const std::vector<double>& c);

struct UpdateOrder {
    int q = 0;                  // largest q with sum b_i c_i^{j-1}/(j-1)! = 1/j!, j <= q
    bool additional = false;    // sum b_i c_i^s = 1/(s+1)
};

UpdateOrder check_update_order(const std::vector<double>& c);

Trajectory run(const ProblemSpec& problem, const TimeGrid& grid, const PhiEvaluator& phi,
               const SemilinearConfig& cfg = {});

}  // namespace expmid
