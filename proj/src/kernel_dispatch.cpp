// kernel_dispatch.cpp — cpuid-gated kernel registry.
#include <stdexcept>

#include "gpchain/kernels.hpp"

namespace gpchain {

const std::vector<KernelInfo>& available_kernels() {
  static const std::vector<KernelInfo> kernels = [] {
    std::vector<KernelInfo> v;
    v.push_back({KernelKind::scalar, "scalar", &scalar_factor_kernel});
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_available())
      v.push_back({KernelKind::avx2, "avx2", &avx2_factor_kernel});
#endif
    return v;
  }();
  return kernels;
}

const KernelInfo& select_kernel(KernelKind kind) {
  const auto& kernels = available_kernels();
  if (kind == KernelKind::automatic) return kernels.back();
  for (const auto& k : kernels)
    if (k.kind == kind) return k;
  throw std::invalid_argument("requested kernel is not available on this cpu");
}

KernelKind parse_kernel_name(const std::string& name) {
  if (name == "auto" || name == "automatic") return KernelKind::automatic;
  if (name == "scalar") return KernelKind::scalar;
  if (name == "avx2") return KernelKind::avx2;
  throw std::invalid_argument("unknown kernel name: " + name);
}

}  // namespace gpchain
