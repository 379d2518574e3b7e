#pragma once

// Independent reference implementations used to cross-check the core
// library: slow, simple, and written without reusing its internals.

#include <cstddef>
#include <vector>

#include "wlab/series.hpp"

namespace wlab::verify {

/// Splits every segment at all column and row crossings and hashes the box
/// of each sub-piece midpoint. Half-open domain [x_0, x_last).
std::size_t box_count_bruteforce(const GraphSample& sample, double eps);

/// Partial sum over n < order with b_n x + theta_n reduced in 332-bit
/// binary floating point. Integer frequencies are exact; others use the
/// stored long double value of b_n.
double evaluate_high_precision(const FunctionSpec& spec, const CoefficientDraw& draw, double x,
                               std::size_t order);

/// Cell counts of B_{n0,n1} for n0 < n1 <= n_max, classifying each cell on
/// its own by the first two n with |g(b_n x + t) - g(b_n y + t)| >= epsilon
/// at the cell center.
std::vector<std::vector<std::size_t>> pair_counts_bruteforce(const FunctionSpec& spec, double epsilon,
                                                             std::size_t n_max, std::size_t resolution);

/// E|x - y|^{-t} for x, y independent uniform on [0,1]: 2 / ((1 - t)(2 - t)).
double energy_zero_closed_form(double t);

/// (1 / 2 pi) * integral over [-u_max, u_max] of |mu_hat|^2 for f(x) = x on
/// [0,1], where |mu_hat(u)|^2 = sinc^2(u / 2); by Simpson on a fine grid.
double parseval_identity_truncated(double u_max);

}  // namespace wlab::verify
