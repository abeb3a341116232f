#pragma once

#include <string>
#include <vector>

#include "expmid/estimators.hpp"

namespace expmid {

struct RunConfig {
    int example = 1;
    int M = 0;               // 0: 100, or 80 for example 4
    std::vector<int> steps;  // empty: 10..320, or 10..80 for example 4
    PhiOptions phi{};
    SemilinearConfig semilinear{};
    double epsilon = 0.01;
    int reference_steps = 10000;
    EstimatorOptions estimator{};
    E1Path e1 = E1Path::dense_output;
};

/// Fills M and steps with the per-example defaults and validates the rest.
RunConfig resolved(const RunConfig& cfg);

struct RunReport {
    int example = 0;
    int M = 0;
    int N = 0;
    std::string phi_method;
    ProblemKind kind = ProblemKind::linear;
    ErrorMetrics errors{};
    EstimatorValues est{};
    Effectivity eff{};
    int max_fp_iterations = 0;
};

struct SuiteResult {
    RunConfig config;
    std::vector<RunReport> runs;
    // Aligned with runs; the first entry of each is NaN.
    std::vector<double> order_ET, order_Einf, order_E1, order_estU, order_estFB, order_zetaU;
};

/// order_i = log(v_{i-1}/v_i) / log(N_i/N_{i-1}); the result has one entry
/// fewer than the input.
std::vector<double> convergence_order(const std::vector<double>& values,
                                      const std::vector<int>& steps);

SuiteResult run_suite(const RunConfig& cfg);

std::string render_csv(const SuiteResult& r);
/// table: errors, estimators, effectivity or all.
std::string render_text(const SuiteResult& r, const std::string& table);

}  // namespace expmid
