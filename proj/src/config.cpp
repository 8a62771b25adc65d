#include "levybox/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "levybox/errors.hpp"

namespace levybox {

namespace {

using nlohmann::json;

constexpr std::array<Command, 8> kCommands{Command::Eigen,          Command::Evolve,  Command::Green,
                                           Command::ApplyOp,        Command::VerifyAppendix,
                                           Command::CkCheck,        Command::Dos,     Command::Walls};

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Typed access to one JSON object; finish() rejects every key not read.
class Reader {
public:
  Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw InvalidArgument(path_.empty() ? "config" : path_, "must be a JSON object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  double real(const std::string& key, double fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_number()) throw InvalidArgument(join(path_, key), "must be a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) throw InvalidArgument(join(path_, key), "must be finite");
    return d;
  }

  int integer(const std::string& key, int fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) throw InvalidArgument(join(path_, key), "must be an integer");
    return v->get<int>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_string()) throw InvalidArgument(join(path_, key), "must be a string");
    return v->get<std::string>();
  }

  std::vector<double> reals(const std::string& key, std::vector<double> fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_array()) throw InvalidArgument(join(path_, key), "must be an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const auto& e = (*v)[i];
      const std::string field = join(path_, key) + "[" + std::to_string(i) + "]";
      if (!e.is_number()) throw InvalidArgument(field, "must be a number");
      const double d = e.get<double>();
      if (!std::isfinite(d)) throw InvalidArgument(field, "must be finite");
      out.push_back(d);
    }
    return out;
  }

  std::vector<int> integers(const std::string& key, std::vector<int> fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_array()) throw InvalidArgument(join(path_, key), "must be an array of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (!(*v)[i].is_number_integer())
        throw InvalidArgument(join(path_, key) + "[" + std::to_string(i) + "]", "must be an integer");
      out.push_back((*v)[i].get<int>());
    }
    return out;
  }

  const json* section(const std::string& key) { return take(key); }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.contains(key)) throw InvalidArgument(join(path_, key), "unknown key");
    }
  }

  std::string field(const std::string& key) const { return join(path_, key); }

private:
  const json* take(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw InvalidArgument(field, message);
}

void read_evolve(const json& j, RunConfig& cfg) {
  Reader r(j, "evolve");
  auto& o = cfg.evolve;
  o.center = r.real("center", o.center);
  o.width = r.real("width", o.width);
  o.times = r.reals("times", o.times);
  r.finish();
  const double L = cfg.params.half_width;
  require(std::abs(o.center) < L, "evolve.center", "must lie inside (-L, L)");
  require(o.width > 0.0, "evolve.width", "must be > 0");
  require(!o.times.empty(), "evolve.times", "must not be empty");
}

GreenRoute green_route(const std::string& s) {
  if (s == "spectral") return GreenRoute::Spectral;
  if (s == "images") return GreenRoute::Images;
  if (s == "alpha2_closed") return GreenRoute::Alpha2;
  throw InvalidArgument("green.method", "must be spectral, images or alpha2_closed");
}

Sector sector_from_string(const std::string& s) {
  if (s == "odd") return Sector::Odd;
  if (s == "even") return Sector::Even;
  if (s == "both") return Sector::Both;
  throw InvalidArgument("green.sector", "must be odd, even or both");
}

std::string to_string(GreenRoute g) {
  switch (g) {
    case GreenRoute::Spectral: return "spectral";
    case GreenRoute::Images: return "images";
    case GreenRoute::Alpha2: return "alpha2_closed";
  }
  return "spectral";
}

void read_green(const json& j, RunConfig& cfg) {
  Reader r(j, "green");
  auto& o = cfg.green;
  o.x = r.reals("x", o.x);
  o.x0 = r.real("x0", o.x0);
  o.t = r.real("t", o.t);
  o.method = green_route(r.text("method", to_string(o.method)));
  o.sector = sector_from_string(r.text("sector", to_string(o.sector)));
  o.mass = r.real("mass", o.mass);
  r.finish();
  const double L = cfg.params.half_width;
  for (std::size_t i = 0; i < o.x.size(); ++i)
    require(std::abs(o.x[i]) <= L, "green.x[" + std::to_string(i) + "]", "must lie in [-L, L]");
  require(std::abs(o.x0) <= L, "green.x0", "must lie in [-L, L]");
  require(o.t != 0.0, "green.t", "must be nonzero");
  require(o.mass > 0.0, "green.mass", "must be > 0");
  if (o.method == GreenRoute::Images) require(cfg.l_max >= 10, "l_max", "image sums need at least 10 windings");
  if (o.method == GreenRoute::Alpha2) require(cfg.params.alpha == 2.0, "params.alpha", "alpha2_closed requires alpha = 2");
}

void read_apply_op(const json& j, RunConfig& cfg) {
  Reader r(j, "apply_op");
  auto& o = cfg.apply_op;
  const std::string parity = r.text("parity", to_string(o.parity));
  require(parity == "odd" || parity == "even", "apply_op.parity", "must be odd or even");
  o.parity = parity == "odd" ? Parity::Odd : Parity::Even;
  o.m = r.integer("m", o.m);
  r.finish();
  require(o.m >= (o.parity == Parity::Odd ? 1 : 0), "apply_op.m", "odd modes start at 1, even modes at 0");
}

void read_appendix(const json& j, RunConfig& cfg) {
  Reader r(j, "verify_appendix");
  auto& o = cfg.appendix;
  o.m = r.integers("m", o.m);
  o.alpha = r.reals("alpha", o.alpha);
  o.x = r.reals("x", o.x);
  r.finish();
  for (std::size_t i = 0; i < o.m.size(); ++i)
    require(o.m[i] >= 1, "verify_appendix.m[" + std::to_string(i) + "]", "must be >= 1");
  for (std::size_t i = 0; i < o.alpha.size(); ++i)
    require(o.alpha[i] > 1.0 && o.alpha[i] <= 2.0, "verify_appendix.alpha[" + std::to_string(i) + "]",
            "must lie in (1, 2]");
  for (std::size_t i = 0; i < o.x.size(); ++i)
    require(std::abs(o.x[i]) <= 1.0, "verify_appendix.x[" + std::to_string(i) + "]", "must lie in [-1, 1] (units of L)");
}

void read_ck(const json& j, RunConfig& cfg) {
  Reader r(j, "ck_check");
  auto& o = cfg.ck;
  o.alpha = r.reals("alpha", o.alpha);
  o.t = r.real("t", o.t);
  o.k_coeff = r.real("k_coeff", o.k_coeff);
  o.n_points = r.integer("n_points", o.n_points);
  o.half_width = r.real("half_width", o.half_width);
  r.finish();
  for (std::size_t i = 0; i < o.alpha.size(); ++i)
    require(o.alpha[i] > 0.0 && o.alpha[i] <= 2.0, "ck_check.alpha[" + std::to_string(i) + "]", "must lie in (0, 2]");
  require(o.t > 0.0, "ck_check.t", "must be > 0");
  require(o.k_coeff > 0.0, "ck_check.k_coeff", "must be > 0");
  require(o.n_points >= 16, "ck_check.n_points", "must be >= 16");
  require(o.half_width > 0.0, "ck_check.half_width", "must be > 0");
}

void read_dos(const json& j, RunConfig& cfg) {
  Reader r(j, "dos");
  auto& o = cfg.dos;
  o.e_min = r.real("e_min", o.e_min);
  o.e_max = r.real("e_max", o.e_max);
  o.n_points = r.integer("n_points", o.n_points);
  o.sigma = r.real("sigma", o.sigma);
  o.xi_samples = r.integer("xi_samples", o.xi_samples);
  const std::string order = r.text("order", o.order == QuasiOrder::Exact ? "exact" : "first");
  r.finish();
  require(order == "exact" || order == "first", "dos.order", "must be exact or first");
  o.order = order == "exact" ? QuasiOrder::Exact : QuasiOrder::First;
  require(o.e_max > o.e_min, "dos.e_max", "must exceed dos.e_min");
  require(o.n_points >= 2, "dos.n_points", "must be >= 2");
  require(o.sigma > 0.0, "dos.sigma", "must be > 0");
  require(o.xi_samples >= 64, "dos.xi_samples", "must be >= 64");
}

void read_walls(const json& j, RunConfig& cfg) {
  Reader r(j, "walls");
  WallsOptions o;
  o.params.base = cfg.params;
  o.params.epsilon = r.real("epsilon", 0.0);
  o.params.nu = r.real("nu", 1.0);
  o.n_lo = r.integer("n_lo", 0);
  o.n_hi = r.integer("n_hi", 0);
  r.finish();
  o.params.validate("walls");
  require(o.n_hi >= o.n_lo, "walls.n_hi", "must be >= walls.n_lo");
  cfg.walls = o;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::Eigen: return "eigen";
    case Command::Evolve: return "evolve";
    case Command::Green: return "green";
    case Command::ApplyOp: return "apply-op";
    case Command::VerifyAppendix: return "verify-appendix";
    case Command::CkCheck: return "ck-check";
    case Command::Dos: return "dos";
    case Command::Walls: return "walls";
  }
  return "eigen";
}

Command command_from_string(const std::string& s) {
  for (Command c : kCommands)
    if (to_string(c) == s) return c;
  throw InvalidArgument("command",
                        "must be one of eigen, evolve, green, apply-op, verify-appendix, ck-check, dos, walls");
}

std::string section_name(Command c) {
  std::string s = to_string(c);
  for (char& ch : s)
    if (ch == '-') ch = '_';
  return s;
}

RunConfig parse_config(const json& doc) {
  Reader top(doc, "");
  RunConfig cfg;
  if (!top.has("command")) throw InvalidArgument("command", "is required");
  cfg.command = command_from_string(top.text("command", ""));

  if (const json* p = top.section("params")) {
    Reader r(*p, "params");
    cfg.params.alpha = r.real("alpha", cfg.params.alpha);
    cfg.params.d_alpha = r.real("d_alpha", cfg.params.d_alpha);
    cfg.params.hbar = r.real("hbar", cfg.params.hbar);
    cfg.params.half_width = r.real("half_width", cfg.params.half_width);
    r.finish();
  }
  cfg.params.validate("params");

  int n_points = 1025;
  if (const json* g = top.section("grid")) {
    Reader r(*g, "grid");
    n_points = r.integer("n_points", n_points);
    r.finish();
  }
  require(n_points >= 3, "grid.n_points", "must be >= 3");
  cfg.grid = Grid(static_cast<std::size_t>(n_points), cfg.params.half_width);

  if (const json* q = top.section("quad")) {
    Reader r(*q, "quad");
    cfg.quad.k_cutoff = r.real("k_cutoff", cfg.quad.k_cutoff);
    cfg.quad.eta = r.real("eta", cfg.quad.eta);
    cfg.quad.abs_tol = r.real("abs_tol", cfg.quad.abs_tol);
    cfg.quad.rel_tol = r.real("rel_tol", cfg.quad.rel_tol);
    cfg.quad.max_subdivisions = r.integer("max_subdivisions", cfg.quad.max_subdivisions);
    r.finish();
  }
  cfg.quad.validate("quad");

  if (const json* io = top.section("io")) {
    Reader r(*io, "io");
    const std::string dir = r.text("output_dir", cfg.io.output_dir.string());
    require(!dir.empty(), "io.output_dir", "must not be empty");
    cfg.io.output_dir = dir;
    cfg.io.format = table_format_from_string(r.text("format", to_string(cfg.io.format)));
    r.finish();
  }

  cfg.m_max = top.integer("m_max", cfg.m_max);
  cfg.l_max = top.integer("l_max", cfg.l_max);
  require(cfg.m_max >= 1, "m_max", "must be >= 1");
  require(cfg.l_max >= 1, "l_max", "must be >= 1");

  if (const json* w = top.section("walls")) {
    if (cfg.command != Command::Walls && cfg.command != Command::Dos)
      throw InvalidArgument("walls", "walls requires command=walls or dos");
    read_walls(*w, cfg);
  } else if (cfg.command == Command::Walls) {
    throw InvalidArgument("walls", "command=walls requires a walls section");
  }

  for (Command c : kCommands) {
    const std::string name = section_name(c);
    if (name == "walls") continue;
    const json* s = top.section(name);
    if (!s) continue;
    if (c != cfg.command) throw InvalidArgument(name, name + " requires command=" + to_string(c));
    switch (c) {
      case Command::Evolve: read_evolve(*s, cfg); break;
      case Command::Green: read_green(*s, cfg); break;
      case Command::ApplyOp: read_apply_op(*s, cfg); break;
      case Command::VerifyAppendix: read_appendix(*s, cfg); break;
      case Command::CkCheck: read_ck(*s, cfg); break;
      case Command::Dos: read_dos(*s, cfg); break;
      case Command::Eigen: Reader(*s, name).finish(); break;
      case Command::Walls: break;
    }
  }
  // Sections left at their defaults still pass through the same checks.
  const json empty = json::object();
  if (!top.has(section_name(cfg.command))) {
    switch (cfg.command) {
      case Command::Evolve: read_evolve(empty, cfg); break;
      case Command::Green: read_green(empty, cfg); break;
      case Command::ApplyOp: read_apply_op(empty, cfg); break;
      case Command::VerifyAppendix: read_appendix(empty, cfg); break;
      case Command::CkCheck: read_ck(empty, cfg); break;
      case Command::Dos: read_dos(empty, cfg); break;
      default: break;
    }
  }
  top.finish();
  return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path, const json& overrides) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config " + path.string());
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("config", std::string("not valid JSON: ") + e.what());
  }
  doc.merge_patch(overrides);
  return parse_config(doc);
}

json config_to_json(const RunConfig& cfg) {
  json j;
  j["command"] = to_string(cfg.command);
  j["params"] = {{"alpha", cfg.params.alpha},
                 {"d_alpha", cfg.params.d_alpha},
                 {"hbar", cfg.params.hbar},
                 {"half_width", cfg.params.half_width}};
  j["grid"] = {{"n_points", cfg.grid.size()}};
  j["quad"] = {{"k_cutoff", cfg.quad.k_cutoff},
               {"eta", cfg.quad.eta},
               {"abs_tol", cfg.quad.abs_tol},
               {"rel_tol", cfg.quad.rel_tol},
               {"max_subdivisions", cfg.quad.max_subdivisions}};
  j["io"] = {{"output_dir", cfg.io.output_dir.string()}, {"format", to_string(cfg.io.format)}};
  j["m_max"] = cfg.m_max;
  j["l_max"] = cfg.l_max;
  if (cfg.walls) {
    j["walls"] = {{"epsilon", cfg.walls->params.epsilon},
                  {"nu", cfg.walls->params.nu},
                  {"n_lo", cfg.walls->n_lo},
                  {"n_hi", cfg.walls->n_hi}};
  }
  switch (cfg.command) {
    case Command::Evolve:
      j["evolve"] = {{"center", cfg.evolve.center}, {"width", cfg.evolve.width}, {"times", cfg.evolve.times}};
      break;
    case Command::Green:
      j["green"] = {{"x", cfg.green.x},
                    {"x0", cfg.green.x0},
                    {"t", cfg.green.t},
                    {"method", to_string(cfg.green.method)},
                    {"sector", to_string(cfg.green.sector)},
                    {"mass", cfg.green.mass}};
      break;
    case Command::ApplyOp:
      j["apply_op"] = {{"parity", to_string(cfg.apply_op.parity)}, {"m", cfg.apply_op.m}};
      break;
    case Command::VerifyAppendix:
      j["verify_appendix"] = {{"m", cfg.appendix.m}, {"alpha", cfg.appendix.alpha}, {"x", cfg.appendix.x}};
      break;
    case Command::CkCheck:
      j["ck_check"] = {{"alpha", cfg.ck.alpha},
                       {"t", cfg.ck.t},
                       {"k_coeff", cfg.ck.k_coeff},
                       {"n_points", cfg.ck.n_points},
                       {"half_width", cfg.ck.half_width}};
      break;
    case Command::Dos:
      j["dos"] = {{"e_min", cfg.dos.e_min},
                  {"e_max", cfg.dos.e_max},
                  {"n_points", cfg.dos.n_points},
                  {"sigma", cfg.dos.sigma},
                  {"xi_samples", cfg.dos.xi_samples},
                  {"order", cfg.dos.order == QuasiOrder::Exact ? "exact" : "first"}};
      break;
    default: break;
  }
  return j;
}

}  // namespace levybox
