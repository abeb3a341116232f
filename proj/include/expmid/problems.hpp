#pragma once

#include "expmid/problem.hpp"

namespace expmid {

/// u_t = u_xx + f on (0,1), u = x(1-x) e^t.
ProblemSpec example1(int M = 100);
/// u_t = u_xx + f on (0,1), u = x(1-x) e^{-t}.
ProblemSpec example2(int M = 100);
/// u_t = u_xx + 1/(1+u^2) + g on (0,1), u = x(1-x) e^t.
ProblemSpec example3(int M = 100);
/// Allen-Cahn u_t = eps u_xx + u - u^3 on (-1,1), u(-1) = -1, u(1) = 1.
ProblemSpec example4(int M = 80, double eps = 0.01);

/// 0.53 x + 0.47 sin(-1.5 pi x)
double allen_cahn_initial(double x);

ProblemSpec make_example(int id, int M, double eps = 0.01);

}  // namespace expmid
