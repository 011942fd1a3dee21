#pragma once

/// q-analog combinatorics: Gaussian binomials and flag counts.

#include <lzeta/laurent.hpp>

#include <set>

namespace lzeta {

/// The Gaussian polynomial prod_{i=0}^{b-1} (1 - X^{a-i})/(1 - X^{b-i});
/// counts b-dimensional subspaces of F_q^a at X = q.  Requires a >= b.
LaurentPoly gaussian_binomial(int a, int b, const std::string& var = "X");

/// binom(n, i_l) * binom(i_l, i_{l-1}) * ... * binom(i_2, i_1); counts flags
/// of type I in F_q^n.  Every element of I must lie in [1, n-1].
LaurentPoly flag_binomial(int n, const std::set<int>& I, const std::string& var = "X");

}  // namespace lzeta
