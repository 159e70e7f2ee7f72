#pragma once

#include <string>
#include <vector>

#include "tfd/config.hpp"
#include "tfd/su11.hpp"

namespace tfd {

struct CheckResult {
  std::string name;       // "NN.criterion/point/detail"
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  int cutoff = 0;         // 0 when not applicable
  bool converged = true;  // auto-cutoff convergence at this point
  double wall_ms = 0.0;   // console only, excluded from serialization
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

/// Runs the full verification suite (criteria 1-10) on the configured grid.
/// Non-convergence surfaces as failed checks with residuals, never as
/// exceptions.
VerifyReport run_verify(const RunConfig& cfg);

/// Canonical JSON serialization: resolved config, tolerance profile and the
/// deterministic check fields. Wall times are deliberately absent so reports
/// from different thread counts are byte-identical.
std::string serialize_report(const VerifyReport& report, const RunConfig& cfg);

/// One line per criterion, aggregated pass/fail with worst residual.
std::string report_console_summary(const VerifyReport& report);

/// Brute-force 2-D Simpson quadrature of the Gaussian integrand over a
/// square of half-width radius; the independent oracle for criterion 5.
Complex reference_gaussian_quadrature(const GaussianIntegralParams& g,
                                      double radius, int subdivisions);

}  // namespace tfd
