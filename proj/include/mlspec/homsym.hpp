// Complete homogeneous symmetric polynomials H_r^(m).
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mlspec {

/// H_r^(0..max_m)(x_1, ..., x_r) for r = xs.size(), via
/// H_r^(m) = H_{r-1}^(m) + x_r H_r^(m-1).
template <class T>
std::vector<T> hom_sym_sequence(const std::vector<T>& xs, std::size_t max_m) {
  std::vector<T> h(max_m + 1, T(0));
  h[0] = T(1);
  for (const T& x : xs)
    for (std::size_t m = 1; m <= max_m; ++m) h[m] = h[m] + x * h[m - 1];
  return h;
}

/// H_r^(m) of the first r entries of xs.
template <class T>
T hom_sym(std::size_t r, std::size_t m, const std::vector<T>& xs) {
  if (r > xs.size()) throw std::invalid_argument("hom_sym: r exceeds number of variables");
  std::vector<T> head(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(r));
  return hom_sym_sequence(head, m)[m];
}

/// Lagrange weights w_i = prod_{j != i} x_i / (x_i - x_j); requires distinct xs.
template <class T>
std::vector<T> lagrange_weights(const std::vector<T>& xs) {
  std::vector<T> w(xs.size(), T(1));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (j != i) w[i] = w[i] * xs[i] / (xs[i] - xs[j]);
  return w;
}

/// H_r^(m) as sum_i w_i x_i^m.
template <class T>
T hom_sym_lagrange(std::size_t m, const std::vector<T>& xs) {
  const std::vector<T> w = lagrange_weights(xs);
  T total(0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    T p(1);
    for (std::size_t e = 0; e < m; ++e) p = p * xs[i];
    total = total + w[i] * p;
  }
  return total;
}

}  // namespace mlspec
