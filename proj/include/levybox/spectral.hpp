#pragma once

#include <string>
#include <vector>

#include "levybox/types.hpp"

namespace levybox {

enum class Parity { Odd, Even };

std::string to_string(Parity p);

/// One eigenpair label of the box operator.
///   odd,  index m >= 1: k = m pi / L,         psi = sin(k x) / sqrt(L)
///   even, index m >= 0: k = (2m+1) pi / (2L), psi = cos(k x) / sqrt(L)
/// and E = D_alpha (hbar k)^alpha in both cases.
struct EigenMode {
  Parity parity = Parity::Odd;
  int index = 1;
  double wavenumber = 0.0;
  double energy = 0.0;

  bool operator==(const EigenMode&) const = default;
};

EigenMode make_mode(Parity parity, int index, const BoxParams& params);

double eigenvalue(Parity parity, int index, const BoxParams& params);

/// Value of the normalized eigenfunction at x; exactly zero at |x| = L.
double eigenfunction_value(const EigenMode& mode, double x, double half_width);

GridFunction eigenfunction(const EigenMode& mode, const BoxParams& params, const Grid& grid);

/// The first `per_parity` modes of each parity (odd m = 1..n, even m = 0..n-1),
/// merged by energy with ties broken odd before even.
std::vector<EigenMode> lowest_modes(const BoxParams& params, int per_parity);

struct SpectralEntry {
  EigenMode mode;
  Complex coeff;
};

struct SpectralState {
  BoxParams params;
  std::vector<SpectralEntry> entries;
  double truncation_residual = 0.0;  // ||psi0||^2 - sum |a|^2 at projection time
  std::vector<std::string> warnings;

  double norm_squared() const;
};

/// a_E = <Psi_E, psi0> by the trapezoid rule for the lowest `m_max` modes of
/// each parity. psi0 must vanish exactly at both walls.
SpectralState project(const GridFunction& psi0, const BoxParams& params, int m_max, double rel_tol = 1e-6);

/// Multiplies each coefficient by exp(-i E t / hbar).
SpectralState evolve(const SpectralState& state, double t);

/// sum a_E Psi_E(x) on the grid; endpoints exactly zero.
GridFunction reconstruct(const SpectralState& state, const Grid& grid);

}  // namespace levybox
