#pragma once

#include <cmath>
#include <random>

#include "expmid/errors.hpp"
#include "expmid/operators.hpp"

namespace testing {

using expmid::Vec;

// Diagonal SPD operator with unit mesh weight; lets tests reach scalar limits.
class DiagonalOperator final : public expmid::SpdOperator {
public:
    explicit DiagonalOperator(Vec d) : d_(std::move(d)) {}
    int dim() const override { return static_cast<int>(d_.size()); }
    Vec apply(const Vec& v) const override { return (d_.array() * v.array()).matrix(); }
    Vec solve(const Vec& v) const override { return (v.array() / d_.array()).matrix(); }
    double lambda1() const override { return d_.minCoeff(); }
    double mesh_weight() const override { return 1.0; }

private:
    Vec d_;
};

inline Vec random_vec(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = u(rng);
    return v;
}

inline double rel_diff(const Vec& a, const Vec& b) {
    const double s = std::max(a.norm(), b.norm());
    return s == 0.0 ? 0.0 : (a - b).norm() / s;
}

inline double rel_diff(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

// Published values carry five significant digits; unit tests hold them to 1e-4.
inline bool near_published(double ours, double published) {
    return std::abs(ours - published) <= 1e-4 * std::abs(published);
}

}  // namespace testing
