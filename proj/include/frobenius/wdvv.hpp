#pragma once

#include <algorithm>
#include <vector>

#include "frobenius/linalg.hpp"

namespace frobenius {

/// max_{i<j} |F_i F_V^{-1} F_j - F_j F_V^{-1} F_i| with [F_i]_{jk} = F3(i,j,k)
/// and F_V = sum_k V_k F_k. Throws DegenerateError if F_V is near-singular.
inline double gen_wdvv_residual(const ComplexTensor& F3, const std::vector<Complex>& V) {
  const ComplexMatrix fv_inv = guarded_inverse(F3.contract(V));
  const std::size_t n = F3.dim();
  std::vector<ComplexMatrix> slices;
  for (std::size_t i = 0; i < n; ++i) slices.push_back(F3.slice(i));
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const ComplexMatrix a = slices[i] * fv_inv * slices[j];
      const ComplexMatrix b = slices[j] * fv_inv * slices[i];
      worst = std::max(worst, max_abs(a - b));
    }
  return worst;
}

}  // namespace frobenius
