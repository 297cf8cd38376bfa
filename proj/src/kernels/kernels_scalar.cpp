#include "nehari/kernels.hpp"

namespace nehari::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i] * c[i];
  return s;
}

void matvec(const double* A, const double* x, double* y, std::size_t rows,
            std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = dot(A + i * cols, x, cols);
}

void hadamard(const double* a, const double* b, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a[i] * b[i];
}

}  // namespace nehari::kernels::scalar
