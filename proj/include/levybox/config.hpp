#pragma once

#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "levybox/moving_walls.hpp"
#include "levybox/propagator.hpp"
#include "levybox/spectral.hpp"
#include "levybox/table.hpp"
#include "levybox/types.hpp"

namespace levybox {

enum class Command { Eigen, Evolve, Green, ApplyOp, VerifyAppendix, CkCheck, Dos, Walls };

std::string to_string(Command c);
Command command_from_string(const std::string& s);
/// Name of the command's options section in the config ("apply-op" -> "apply_op").
std::string section_name(Command c);

struct IoConfig {
  std::filesystem::path output_dir = "out";
  TableFormat format = TableFormat::Csv;
};

struct EvolveOptions {
  double center = 0.0;  // psi0 = (L^2 - x^2) exp(-(x - center)^2 / (2 width^2)), normalized
  double width = 0.15;
  std::vector<double> times{0.0, 0.25, 0.5};
};

enum class GreenRoute { Spectral, Images, Alpha2 };

struct GreenOptions {
  std::vector<double> x;  // empty: 41 evenly spaced points on [-L, L]
  double x0 = 0.3;
  double t = 0.5;
  GreenRoute method = GreenRoute::Spectral;
  Sector sector = Sector::Odd;
  double mass = 1.0;  // alpha2 route only
};

struct ApplyOpOptions {
  Parity parity = Parity::Odd;
  int m = 1;
};

struct AppendixOptions {
  std::vector<int> m{1, 2, 3, 4, 5};
  std::vector<double> alpha{1.25, 1.5, 1.75};
  std::vector<double> x{-0.5, 0.0, 0.5};  // in units of L
};

struct CkOptions {
  std::vector<double> alpha{1.0, 1.5, 2.0};
  double t = 1.0;
  double k_coeff = 1.0;
  int n_points = 16384;
  double half_width = 100.0;
};

struct DosOptions {
  double e_min = 0.0;
  double e_max = 60.0;
  int n_points = 2001;
  double sigma = 0.1;
  int xi_samples = 4096;
  QuasiOrder order = QuasiOrder::Exact;
};

struct WallsOptions {
  MovingWallParams params;
  int n_lo = 0;
  int n_hi = 0;
};

struct RunConfig {
  Command command = Command::Eigen;
  BoxParams params;
  std::optional<WallsOptions> walls;
  QuadratureSpec quad;
  Grid grid{1025, 1.0};
  IoConfig io;
  int m_max = 200;
  int l_max = 50;
  EvolveOptions evolve;
  GreenOptions green;
  ApplyOpOptions apply_op;
  AppendixOptions appendix;
  CkOptions ck;
  DosOptions dos;
};

/// Validates and fills defaults. Unknown keys, wrong types and invariant
/// violations throw InvalidArgument naming the dotted field path.
RunConfig parse_config(const nlohmann::json& doc);

/// Reads a JSON file, applies `overrides` as a merge patch, then parses.
/// Throws IoError if the file cannot be read and InvalidArgument if it is not JSON.
RunConfig parse_config_file(const std::filesystem::path& path, const nlohmann::json& overrides = nlohmann::json::object());

/// Fully expanded config, defaults included, in the input layout.
nlohmann::json config_to_json(const RunConfig& cfg);

}  // namespace levybox
