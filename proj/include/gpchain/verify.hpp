// verify.hpp — Self-check suite behind the command-line verify mode:
// known limits, oracle agreement, scaling fits, diagonalization drift.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gpchain/kernels.hpp"
#include "gpchain/model.hpp"

namespace gpchain {

enum class VerifyLevel { quick, full };

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // measured numbers behind the verdict
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

// Replacement entry points so the runner can be pointed at a deliberately
// broken pipeline in its own tests. A null function keeps the library
// implementation.
struct VerifyHooks {
  std::function<double(const ModelParams&, double)> modulus;
};

// quick: decoupled-limit identities and small-chain oracle agreement,
// fractions of a second. full adds the long-chain oracle check, the
// coupling-power regression, agreement of the two phase routes, and the
// dense-diagonalization drift scan (minutes, dominated by the largest
// dense solve).
VerifyReport run_verify(VerifyLevel level,
                        KernelKind kernel = KernelKind::automatic,
                        const VerifyHooks& hooks = {});

}  // namespace gpchain
