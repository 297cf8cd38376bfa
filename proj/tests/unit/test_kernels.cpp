#include <random>
#include <vector>

#include "doctest.h"
#include "nehari/kernels.hpp"

using namespace nehari::kernels;

namespace {

std::vector<double> noise(std::size_t n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar table is always available") {
  const auto isas = available_isas();
  REQUIRE(!isas.empty());
  CHECK(isas.front() == Isa::scalar);
  CHECK(table_for(Isa::scalar).isa == Isa::scalar);
}

TEST_CASE("vector kernels match the scalar reference") {
  const KernelTable& ref = table_for(Isa::scalar);
  for (Isa isa : available_isas()) {
    const KernelTable& t = table_for(isa);
    CAPTURE(isa_name(isa));
    // Lengths straddling every tail case of 2- and 4-wide lanes.
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 63u, 64u, 67u, 400u}) {
      CAPTURE(n);
      const auto a = noise(n, 1 + n), b = noise(n, 2 + n), c = noise(n, 3 + n);
      double scale = 0.0;
      for (std::size_t i = 0; i < n; ++i) scale += std::abs(a[i] * b[i]);
      CHECK(std::abs(t.dot(a.data(), b.data(), n) - ref.dot(a.data(), b.data(), n)) <=
            1e-14 * (1.0 + scale));
      CHECK(std::abs(t.dot3(a.data(), b.data(), c.data(), n) -
                     ref.dot3(a.data(), b.data(), c.data(), n)) <= 1e-14 * (1.0 + scale));

      std::vector<double> y1(n), y2(n);
      t.hadamard(a.data(), b.data(), y1.data(), n);
      ref.hadamard(a.data(), b.data(), y2.data(), n);
      CHECK(y1 == y2);

      const std::size_t rows = n / 2 + 1;
      const auto A = noise(rows * n, 7 + n);
      std::vector<double> z1(rows), z2(rows);
      t.matvec(A.data(), a.data(), z1.data(), rows, n);
      ref.matvec(A.data(), a.data(), z2.data(), rows, n);
      for (std::size_t i = 0; i < rows; ++i) CHECK(z1[i] == doctest::Approx(z2[i]).epsilon(1e-13));
    }
  }
}

TEST_CASE("dot is exact on small integers") {
  const std::vector<double> a{1, 2, 3, 4, 5}, b{5, 4, 3, 2, 1};
  CHECK(dot(a, b) == 35.0);
  CHECK(dot3(a, b, a) == 1 * 5 * 1 + 2 * 4 * 2 + 3 * 3 * 3 + 4 * 2 * 4 + 5 * 1 * 5);
}

}
