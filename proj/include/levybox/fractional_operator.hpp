#pragma once

#include <array>
#include <string>
#include <vector>

#include "levybox/types.hpp"

namespace levybox {

/// C_alpha = hbar^alpha D_alpha / (2 Gamma(2 - alpha) cos(alpha pi / 2)), the
/// prefactor of the finite-interval operator. Negative on 1 < alpha < 2.
/// alpha = 2 is rejected: that case is the local Laplacian branch.
double riesz_prefactor(const BoxParams& params);

/// I(x_i) = int_{-L}^{L} |x_i - y|^{1-alpha} f(y) dy at every node, by product
/// integration: the kernel is integrated exactly against the piecewise-linear
/// interpolant of f. Requires 1 < alpha < 2.
GridFunction riesz_interval_integral(const GridFunction& f, const BoxParams& params);

struct OperatorApplication {
  GridFunction values;                   // all nodes; endpoints from one-sided stencils
  std::array<Complex, 2> endpoint_values{};  // same as values[0], values[n-1]
  bool endpoints_reliable = false;
  double refinement_change = 0.0;        // max interior |fine - coarse| / max |fine|; -1 if not computed
  std::vector<std::string> warnings;
};

/// Finite-interval fractional Laplace operator applied to a box wavefunction.
/// For 1 < alpha < 2: C_alpha * d^2/dx^2 of riesz_interval_integral, by
/// 3-point central differences. For alpha = 2: -hbar^2 D_2 psi''.
/// The refinement sentinel compares against the same computation on every
/// second node (needs an odd node count) and warns above `rel_tol`.
OperatorApplication apply_operator_realspace(const GridFunction& psi, const BoxParams& params,
                                             double rel_tol = 1e-3);

/// int_{-L}^{L} e^{iky} sin(m pi y / L) dy
///   = i (-1)^m (2 m pi / L) sin(kL) / ((k + z)(k - z)),  z = m pi / L.
/// The removable poles at k = +-z are cancelled analytically (kL = +-m pi + delta).
Complex appendix_y_integral(int m, double k, const BoxParams& params);

struct AppendixKIntegral {
  Complex value;
  double quadrature_error = 0.0;
  double tail_bound = 0.0;
  double error_budget() const { return quadrature_error + tail_bound; }
};

/// (1/2pi) PV int k|k|^(alpha-2) / ((k+z)(k-z)) [e^{ik(L-x)} - e^{-ik(L+x)}] dk
/// evaluated numerically for |x| <= L. Throws ToleranceFailure if the error
/// budget exceeds quad.abs_tol.
AppendixKIntegral appendix_k_integral(int m, double x, const BoxParams& params,
                                      const QuadratureSpec& quad);

/// Residue-theorem value i (-1)^m (m pi / L)^(alpha-2) cos(m pi x / L).
Complex appendix_residue_value(int m, double x, const BoxParams& params);

/// Eigenvalue recovered from the k-space route at a set of interior nodes.
struct EigenActionReport {
  int m = 0;
  std::vector<double> nodes;
  std::vector<double> values;     // recovered E at each node
  std::vector<double> errors;     // quadrature error budget at each node
  double eigenvalue = 0.0;        // mean over nodes
  double closed_form = 0.0;       // D hbar^alpha (m pi / L)^alpha
  double spread = 0.0;            // (max - min) / |mean|
  double max_rel_deviation = 0.0; // max |E_j - closed_form| / closed_form
};

/// Applies (-1)^m D hbar^alpha (m pi/L) (i d/dx) to the k-integral, with the
/// x-derivative taken under the integral sign, and divides by sin(m pi x/L).
/// Nodes are midpoints of `n_nodes` equal cells of [-L, L], skipping points
/// where |sin(m pi x / L)| < 0.2.
EigenActionReport appendix_eigen_action_report(int m, const BoxParams& params, const QuadratureSpec& quad,
                                               std::size_t n_nodes = 9);

/// As the report, but returns the mean eigenvalue and throws ToleranceFailure
/// when the recovered values spread by more than quad.rel_tol.
double appendix_eigen_action(int m, const BoxParams& params, const QuadratureSpec& quad);

}  // namespace levybox
