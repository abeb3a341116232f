#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "expmid/operators.hpp"

namespace expmid {

/// Constants of the local Lipschitz and one-sided Lipschitz assumptions used
/// by the semilinear bounds. They are supplied, never checked.
struct LipschitzConstants {
    double L = 0.0;
    double lambda = 0.0;
    double mu = 0.0;
    double theta = 0.0;
};

enum class ProblemKind { linear, semilinear };

/// u' + A u = f(t)            (linear)
/// u' + A u = B(t, u)         (semilinear)
struct ProblemSpec {
    ProblemKind kind = ProblemKind::linear;
    std::shared_ptr<const SpdOperator> op;
    std::function<Vec(double)> f;
    std::function<Vec(double, const Vec&)> B;
    Vec u0;
    std::function<Vec(double)> exact;  // empty when unknown
    std::optional<LipschitzConstants> lipschitz;
    std::string label;
    std::vector<double> x;  // interior grid points
    double T = 1.0;

    /// f(t) or B(t, u), whichever applies.
    Vec rhs(double t, const Vec& u) const { return kind == ProblemKind::linear ? f(t) : B(t, u); }
    bool has_exact() const { return static_cast<bool>(exact); }
};

}  // namespace expmid
