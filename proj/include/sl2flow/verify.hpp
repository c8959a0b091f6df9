#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sl2flow/riccati.hpp"

namespace sl2flow {

// Pinned tolerances of the self-verification checks. These were calibrated
// once against the reference oracles and are part of the interface: loosening
// one to make a failing configuration pass defeats the point of the check.
namespace tolerances {
inline constexpr double kExact = 0.0;            // symbolic identities hold exactly
inline constexpr double kShuffleHom = 1e-9;      // signature homomorphism, relative
inline constexpr double kTwoRoute = 1e-6;        // xi_c quadrature route, exp identity
inline constexpr double kFlow = 1e-6;            // Frobenius error of the matched convention
inline constexpr double kRiccati = 1e-5;         // vs RK4 oracle (degree >= 10 recommended)
inline constexpr double kDerivative = 1e-4;      // central-difference residual
inline constexpr double kFlowOracleStep = 1e-4;  // matrix oracle step size
}  // namespace tolerances

struct CheckResult {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  int degree = 0;
  int steps = 0;
  int draws = 0;  // 0 when run on explicit controls
  std::uint64_t seed = 0;
  std::string convention;  // "left", "right" or "mixed"
  std::vector<CheckResult> checks;
  bool all_pass = false;
};

struct VerifyConfig {
  int degree = 8;
  int steps = 4000;
  int draws = 0;  // > 0: that many random piecewise-constant draws
  std::uint64_t seed = 1;
  std::optional<ControlSpec> controls;  // used when draws == 0
  int shuffle_pairs = 20;               // random word pairs per draw for the homomorphism check
};

// Runs the whole battery: exact symbolic identities at the configured degree,
// then numeric two-route checks on each control draw. See the individual
// check names in the report.
VerificationReport run_verification(const VerifyConfig& config);

std::string report_to_text(const VerificationReport& report);

}  // namespace sl2flow
