#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "levybox/types.hpp"

namespace levybox {

// ---------------------------------------------------------------------------
// Symmetric stable kernel (diffusion analog)
// ---------------------------------------------------------------------------

/// p(x, t) = (1/2pi) int e^{ikx} e^{-K t |k|^alpha} dk with 0 < alpha <= 2.
struct StableKernelParams {
  double alpha = 1.5;
  double k_coeff = 1.0;
  double t = 1.0;

  void validate() const;
  /// (K t)^(1/alpha), the natural length of the kernel.
  double scale() const;
};

/// Symmetric stable density at x. Uses Fourier inversion by quadrature for
/// |x| <= 40 scale and the convergent/asymptotic power series beyond it
/// (the Gaussian tail past 40 scale is below 1e-170 and returned as 0).
/// Throws ToleranceFailure when neither route is reliable at x.
double stable_density(double x, const StableKernelParams& p);

/// Periodized density sum_n p(x + n P) at the points x_i = half_steps[i] * h / 2,
/// where h = period / n_cells, from its Fourier series.
std::vector<double> periodic_stable_density(std::span<const long> half_steps, std::size_t n_cells, double period,
                                            const StableKernelParams& p);

/// L1 distance over the window between p(., t) and the discrete convolution
/// p(., t/2) * p(., t/2). The window nodes are treated as one period of
/// length n_points * spacing, so the densities are periodized and no mass is
/// lost to truncation.
double chapman_kolmogorov_residual(double alpha, double t, const Grid& window, double k_coeff = 1.0);

// ---------------------------------------------------------------------------
// Box Green's function
// ---------------------------------------------------------------------------

enum class GreenMethod { Spectral, Images, Alpha2Closed };
enum class Sector { Odd, Even, Both };

std::string to_string(GreenMethod m);
std::string to_string(Sector s);

struct GreenEvaluation {
  Complex value;
  double error_budget = 0.0;
  GreenMethod method = GreenMethod::Spectral;
  Sector sector = Sector::Odd;
  std::vector<std::string> warnings;
};

/// sum over modes of the sector (lowest m_max per parity) of
/// e^{-iEt/hbar} Psi(x) Psi(x0). The value is the mean of the partial sums
/// over the last decade of terms; the budget is their largest deviation
/// from that mean.
GreenEvaluation green_spectral(double x, double x0, double t, const BoxParams& params, int m_max, Sector sector,
                               double abs_tol = 1e-6);

/// Same mode sum with every term damped by e^{-eta k^2}, summed until the
/// damping drops below 1e-17. This is the exact spectral image of the
/// eta-regularized winding sum.
GreenEvaluation green_spectral_damped(double x, double x0, double t, const BoxParams& params, double eta,
                                      Sector sector);

struct ImageSeries {
  std::vector<double> etas;
  std::vector<Complex> values;  // winding sum at each eta
};

/// Winding sum (1/2) sum_{|l| <= l_max} [F(x - x0 + 2lL) - F(x + x0 + 2lL)] of free
/// kernels F(s) = (1/pi) int_0^inf e^{-eta k^2} e^{-i D hbar^(alpha-1) k^alpha t} cos(ks) dk
/// at one regularization eta > 0. The image contributions are accumulated at
/// each quadrature node. `truncation` receives |sum(l_max) - sum(l_max / 2)|.
Complex green_images_at_eta(double x, double x0, double t, const BoxParams& params, int l_max, double eta,
                            double* truncation = nullptr);

/// Image-sum Green's function. alpha = 2 uses the closed Gaussian-Fresnel
/// form per image at eta = 0. Otherwise the winding sum is evaluated at
/// eta = quad.eta * {10, 1, 0.1} * (L/pi)^2 and extrapolated to eta = 0 by a
/// quadratic fit; throws ToleranceFailure when successive differences do not
/// shrink (non-monotone extrapolation).
GreenEvaluation green_images(double x, double x0, double t, const BoxParams& params, int l_max,
                             const QuadratureSpec& quad, ImageSeries* series = nullptr);

struct Alpha2Evaluation {
  GreenEvaluation averaged;  // Cesaro mean of the symmetric partial sums
  Complex raw;               // plain partial sum with |l| <= l_max
  double raw_increment = 0.0;     // |raw(l_max) - raw(l_max / 2)|
  double cesaro_increment = 0.0;  // same for the Cesaro means
};

/// Closed-form box propagator at alpha = 2:
/// sum_l sqrt(m / (8 pi i hbar t)) [e^{im(x-x0+2lL)^2/(2 hbar t)} - e^{im(x+x0+2lL)^2/(2 hbar t)}].
Alpha2Evaluation green_box_alpha2(double x, double x0, double t, double mass, int l_max, double half_width = 1.0,
                                  double hbar = 1.0);

struct BoxKernelComposition {
  Eigen::MatrixXd composed;  // n_steps-fold product of the single-step kernel
  Eigen::MatrixXd direct;    // kernel at the full time t
  double residual = 0.0;     // max |composed - direct|
  double boundary_max = 0.0; // max |composed| over the wall rows
  double min_same_side = 0.0;  // min composed entry over interior pairs with x_i x_j > 0
  double leaked_mass = 0.0;  // single-step mass beyond the retained windings
  std::vector<std::string> warnings;
};

/// Diffusion-analog box kernel K(x_i, x_j) = (1/2) sum_{|l| <= l_max} [p(x_i - x_j + 2lL) - p(x_i + x_j + 2lL)]
/// with dt = t / n_steps, composed n_steps times with trapezoid weights and
/// compared against the kernel built directly at t.
BoxKernelComposition compose_box_kernel(int n_steps, double t, double alpha, double k_coeff, const Grid& grid,
                                        int l_max = 50, double leak_tol = 1e-10);

}  // namespace levybox
