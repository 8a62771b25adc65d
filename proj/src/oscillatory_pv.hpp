#pragma once

#include "levybox/types.hpp"

namespace levybox::detail {

enum class Trig { Sine, Cosine };

struct PvIntegral {
  double value = 0.0;
  double quadrature_error = 0.0;  // summed per-segment quadrature estimates
  double tail_bound = 0.0;        // remainder after the asymptotic tail expansion
  double cutoff = 0.0;            // k where the explicit quadrature stopped
};

/// Principal value of  int_0^inf k^power trig(k a) / (k^2 - z^2) dk  for a > 0, z > 0.
///
/// The pole at k = z is removed by subtracting the numerator's value there on
/// the symmetric window [z/2, 3z/2] (its PV is ln(3/5)/(2z) in closed form).
/// Beyond k_cutoff the integrand is k^(power-2) times an oscillation, so the
/// tail is summed from its integration-by-parts expansion; `tail_bound`
/// bounds what that expansion leaves out. Requires power < 3.
PvIntegral pv_power_trig(double power, double z, double a, Trig trig, const QuadratureSpec& quad);

}  // namespace levybox::detail
