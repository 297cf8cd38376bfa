#pragma once

// Data-parallel inner loops used by the radial discretization: quadrature
// sums, weighted products and dense row-major matrix-vector products.
//
// Every kernel has a scalar reference implementation. Vector variants
// (AVX2+FMA on x86-64, NEON on AArch64) are compiled when the toolchain
// supports them and selected once at runtime from the CPU feature set.
// The NEHARI_ISA environment variable ("scalar", "avx2", "neon") forces a
// particular table, which is how the equivalence tests pin both paths.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace nehari::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i a[i] * b[i] * c[i]
  double (*dot3)(const double* a, const double* b, const double* c,
                 std::size_t n);
  // y = A x with A row-major, rows x cols
  void (*matvec)(const double* A, const double* x, double* y,
                 std::size_t rows, std::size_t cols);
  // y[i] = a[i] * b[i]
  void (*hadamard)(const double* a, const double* b, double* y,
                   std::size_t n);
};

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double dot3(const double* a, const double* b, const double* c, std::size_t n);
void matvec(const double* A, const double* x, double* y, std::size_t rows,
            std::size_t cols);
void hadamard(const double* a, const double* b, double* y, std::size_t n);
}  // namespace scalar

#if defined(NEHARI_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double dot3(const double* a, const double* b, const double* c, std::size_t n);
void matvec(const double* A, const double* x, double* y, std::size_t rows,
            std::size_t cols);
void hadamard(const double* a, const double* b, double* y, std::size_t n);
}  // namespace avx2
#endif

#if defined(NEHARI_HAVE_NEON)
namespace neon {
double dot(const double* a, const double* b, std::size_t n);
double dot3(const double* a, const double* b, const double* c, std::size_t n);
void matvec(const double* A, const double* x, double* y, std::size_t rows,
            std::size_t cols);
void hadamard(const double* a, const double* b, double* y, std::size_t n);
}  // namespace neon
#endif

// Tables compiled into this binary that the running CPU can execute.
std::vector<Isa> available_isas();

const KernelTable& table_for(Isa isa);

// The table chosen at first use (best available, or NEHARI_ISA override).
const KernelTable& active();

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline double dot3(std::span<const double> a, std::span<const double> b,
                   std::span<const double> c) {
  return active().dot3(a.data(), b.data(), c.data(), a.size());
}

}  // namespace nehari::kernels
