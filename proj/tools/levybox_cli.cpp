#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "levybox/errors.hpp"
#include "levybox/run.hpp"

namespace {

using nlohmann::json;

enum ExitCode { kOk = 0, kInternal = 1, kConfig = 2, kTolerance = 3, kIo = 4 };

int report(const char* error_class, const std::string& key, const std::string& value, const std::string& message,
           int code) {
  json j{{"error_class", error_class}, {"message", message}};
  if (!key.empty()) j[key] = value;
  std::cerr << j.dump() << "\n";
  return code;
}

template <typename T>
void put(json& doc, std::initializer_list<const char*> path, const std::optional<T>& v) {
  if (!v) return;
  json* node = &doc;
  for (const char* p : path) node = &(*node)[p];
  *node = *v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional quantum box toolkit"};
  app.set_version_flag("--version", levybox::kToolkitVersion);

  std::optional<std::string> config_path, command, output_dir, format;
  std::optional<double> alpha, d_alpha, hbar, half_width, eta, abs_tol, rel_tol, k_cutoff, epsilon, nu;
  std::optional<int> n_points, m_max, l_max;

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--command", command, "eigen | evolve | green | apply-op | verify-appendix | ck-check | dos | walls");
  app.add_option("--alpha", alpha, "Levy index in (1, 2]");
  app.add_option("--d-alpha", d_alpha, "scale coefficient D_alpha");
  app.add_option("--hbar", hbar, "Planck constant");
  app.add_option("--half-width", half_width, "box half-width L");
  app.add_option("--n-points", n_points, "grid points on [-L, L]");
  app.add_option("--m-max", m_max, "modes per parity");
  app.add_option("--l-max", l_max, "image windings");
  app.add_option("--eta", eta, "regularization base for image sums");
  app.add_option("--abs-tol", abs_tol, "absolute quadrature tolerance");
  app.add_option("--rel-tol", rel_tol, "relative quadrature tolerance");
  app.add_option("--k-cutoff", k_cutoff, "k-space cutoff");
  app.add_option("--epsilon", epsilon, "wall amplitude");
  app.add_option("--nu", nu, "wall frequency");
  app.add_option("--output-dir", output_dir, "output directory");
  app.add_option("--format", format, "csv | json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report("config", "", "", e.what(), kConfig);
  }

  json overrides = json::object();
  put(overrides, {"command"}, command);
  put(overrides, {"params", "alpha"}, alpha);
  put(overrides, {"params", "d_alpha"}, d_alpha);
  put(overrides, {"params", "hbar"}, hbar);
  put(overrides, {"params", "half_width"}, half_width);
  put(overrides, {"grid", "n_points"}, n_points);
  put(overrides, {"m_max"}, m_max);
  put(overrides, {"l_max"}, l_max);
  put(overrides, {"quad", "eta"}, eta);
  put(overrides, {"quad", "abs_tol"}, abs_tol);
  put(overrides, {"quad", "rel_tol"}, rel_tol);
  put(overrides, {"quad", "k_cutoff"}, k_cutoff);
  put(overrides, {"walls", "epsilon"}, epsilon);
  put(overrides, {"walls", "nu"}, nu);
  put(overrides, {"io", "output_dir"}, output_dir);
  put(overrides, {"io", "format"}, format);

  try {
    const levybox::RunConfig cfg =
        config_path ? levybox::parse_config_file(*config_path, overrides) : levybox::parse_config(overrides);
    const auto manifest = levybox::run(cfg);
    const auto dir = levybox::resolve_output_dir(cfg.io);
    for (const auto& w : manifest.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << (dir / "manifest.json").string() << "\n";
    if (manifest.status != "ok") return report("tolerance", "operation", levybox::to_string(cfg.command),
                                               manifest.failure, kTolerance);
    return kOk;
  } catch (const levybox::InvalidArgument& e) {
    return report("config", "field", e.field(), e.what(), kConfig);
  } catch (const levybox::ToleranceFailure& e) {
    return report("tolerance", "operation", e.operation(), e.what(), kTolerance);
  } catch (const levybox::IoError& e) {
    return report("io", "", "", e.what(), kIo);
  } catch (const std::exception& e) {
    return report("internal", "", "", e.what(), kInternal);
  }
}
