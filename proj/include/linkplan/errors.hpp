#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace linkplan {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Inputs outside an operation's mathematical domain (gain <= 1, zero
// dispersion, negative SNR, ...).
struct domain_error : error {
  using error::error;
};

// Per-span noise meets or exceeds the launch power: no positive survival
// factor exists for this span.
struct unsustainable_span_error : error {
  using error::error;
};

// Link parameters collapse the droop equation (denominator underflow).
struct degenerate_link_error : error {
  using error::error;
};

// No launch power in the sweep range sustains the link.
struct infeasible_geometry_error : error {
  using error::error;
};

// Requested GSNR unreachable even at the minimum span length.
struct target_too_high_error : error {
  using error::error;
};

// Requested shaping entropy exceeds the constellation bit width.
struct infeasible_entropy_error : error {
  using error::error;
};

// Carries every violation found while validating a config.
struct config_error : error {
  explicit config_error(std::vector<std::string> found)
      : error(join(found)), issues(std::move(found)) {}

  std::vector<std::string> issues;

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& e : v) {
      if (!s.empty()) s += "; ";
      s += e;
    }
    return s.empty() ? std::string("invalid config") : s;
  }
};

}  // namespace linkplan
