#include <cstdlib>
#include <stdexcept>
#include <string>

#include "nehari/kernels.hpp"

namespace nehari::kernels {

namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::dot, &scalar::dot3,
                              &scalar::matvec, &scalar::hadamard};
#if defined(NEHARI_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::avx2, &avx2::dot, &avx2::dot3, &avx2::matvec,
                            &avx2::hadamard};
#endif
#if defined(NEHARI_HAVE_NEON)
constexpr KernelTable kNeon{Isa::neon, &neon::dot, &neon::dot3, &neon::matvec,
                            &neon::hadamard};
#endif

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(NEHARI_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(NEHARI_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& select() {
  if (const char* forced = std::getenv("NEHARI_ISA")) {
    const std::string name(forced);
    for (Isa isa : available_isas())
      if (isa_name(isa) == name) return table_for(isa);
    if (name != "auto")
      throw std::runtime_error("NEHARI_ISA=" + name +
                               " is not available on this CPU/build");
  }
  return table_for(available_isas().back());
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::scalar};
  for (Isa isa : {Isa::avx2, Isa::neon})
    if (cpu_supports(isa)) out.push_back(isa);
  return out;
}

const KernelTable& table_for(Isa isa) {
  if (!cpu_supports(isa))
    throw std::runtime_error("kernel table '" + std::string(isa_name(isa)) +
                             "' unavailable");
  switch (isa) {
#if defined(NEHARI_HAVE_AVX2)
    case Isa::avx2:
      return kAvx2;
#endif
#if defined(NEHARI_HAVE_NEON)
    case Isa::neon:
      return kNeon;
#endif
    default:
      return kScalar;
  }
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace nehari::kernels
