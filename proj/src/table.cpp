#include "levybox/table.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <sstream>

#include "levybox/errors.hpp"

namespace levybox {

namespace {

std::string format_real(double v) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.16e", v);
  return buf.data();
}

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void validate_rows(const std::vector<Row>& rows, const Schema& schema) {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != schema.columns.size()) {
      throw InvalidArgument("rows[" + std::to_string(r) + "]", "expected " + std::to_string(schema.columns.size()) +
                                                                  " cells for schema " + schema.name + ", got " +
                                                                  std::to_string(row.size()));
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto& col = schema.columns[c];
      const bool ok = (col.kind == ColumnKind::Real && std::holds_alternative<double>(row[c])) ||
                      (col.kind == ColumnKind::Integer && std::holds_alternative<long>(row[c])) ||
                      (col.kind == ColumnKind::Text && std::holds_alternative<std::string>(row[c]));
      if (!ok) throw InvalidArgument("rows[" + std::to_string(r) + "]." + col.name, "cell type does not match schema");
      if (const double* v = std::get_if<double>(&row[c]); v && !std::isfinite(*v))
        throw InvalidArgument("rows[" + std::to_string(r) + "]." + col.name, "non-finite value");
    }
  }
}

std::string cell_text(const Cell& cell, bool json) {
  if (const double* v = std::get_if<double>(&cell)) return format_real(*v);
  if (const long* v = std::get_if<long>(&cell)) return std::to_string(*v);
  const auto& s = std::get<std::string>(cell);
  return json ? nlohmann::json(s).dump() : csv_text(s);
}

Schema make(std::string name, std::vector<Column> cols) { return Schema{std::move(name), std::move(cols)}; }

constexpr auto R = ColumnKind::Real;
constexpr auto I = ColumnKind::Integer;
constexpr auto T = ColumnKind::Text;

}  // namespace

std::string to_string(TableFormat f) { return f == TableFormat::Csv ? "csv" : "json"; }

TableFormat table_format_from_string(const std::string& s) {
  if (s == "csv") return TableFormat::Csv;
  if (s == "json") return TableFormat::Json;
  throw InvalidArgument("io.format", "must be csv or json");
}

namespace schemas {
const Schema& eigen() {
  static const Schema s = make("eigen", {{"parity", "1", T}, {"m", "1", I}, {"k", "1/length", R}, {"E", "energy", R}});
  return s;
}
const Schema& green() {
  static const Schema s = make("green", {{"x", "length", R},
                                         {"x0", "length", R},
                                         {"t", "time", R},
                                         {"re", "1/length", R},
                                         {"im", "1/length", R},
                                         {"error_budget", "1/length", R},
                                         {"method", "1", T},
                                         {"sector", "1", T}});
  return s;
}
const Schema& dos() {
  static const Schema s = make("dos", {{"E", "energy", R}, {"rho", "1/energy", R}});
  return s;
}
const Schema& walls() {
  static const Schema s = make("walls", {{"m", "1", I},
                                         {"n", "1", I},
                                         {"e_min", "energy", R},
                                         {"e_max", "energy", R},
                                         {"center", "energy", R},
                                         {"half_width_first_order", "energy", R}});
  return s;
}
const Schema& evolve() {
  static const Schema s =
      make("evolve", {{"x", "length", R}, {"re", "length^-1/2", R}, {"im", "length^-1/2", R}, {"t", "time", R}});
  return s;
}
const Schema& apply_op() {
  static const Schema s = make("apply_op", {{"x", "length", R},
                                            {"re", "energy length^-1/2", R},
                                            {"im", "energy length^-1/2", R},
                                            {"e_psi", "energy length^-1/2", R}});
  return s;
}
const Schema& appendix() {
  static const Schema s = make("appendix", {{"m", "1", I},
                                            {"alpha", "1", R},
                                            {"x", "length", R},
                                            {"quadrature_im", "1", R},
                                            {"residue_im", "1", R},
                                            {"abs_diff", "1", R},
                                            {"error_budget", "1", R}});
  return s;
}
const Schema& ck() {
  static const Schema s = make("ck", {{"alpha", "1", R},
                                      {"t", "time", R},
                                      {"n_points", "1", I},
                                      {"half_width", "length", R},
                                      {"residual", "1", R}});
  return s;
}
}  // namespace schemas

std::string render_table(const std::vector<Row>& rows, const Schema& schema, TableFormat format) {
  validate_rows(rows, schema);
  std::ostringstream out;
  if (format == TableFormat::Csv) {
    for (std::size_t c = 0; c < schema.columns.size(); ++c)
      out << (c ? "," : "") << schema.columns[c].name << " [" << schema.columns[c].unit << "]";
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell_text(row[c], false);
      out << '\n';
    }
    return out.str();
  }
  out << "{\n  \"schema\": " << nlohmann::json(schema.name).dump() << ",\n  \"columns\": [";
  for (std::size_t c = 0; c < schema.columns.size(); ++c) {
    out << (c ? ", " : "") << "{\"name\": " << nlohmann::json(schema.columns[c].name).dump()
        << ", \"unit\": " << nlohmann::json(schema.columns[c].unit).dump() << "}";
  }
  out << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << (r ? ",\n    [" : "\n    [");
    for (std::size_t c = 0; c < rows[r].size(); ++c) out << (c ? ", " : "") << cell_text(rows[r][c], true);
    out << "]";
  }
  out << (rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return out.str();
}

void write_table(const std::filesystem::path& path, const std::vector<Row>& rows, const Schema& schema,
                 TableFormat format) {
  const std::string text = render_table(rows, schema, format);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw IoError("write failed for " + path.string());
}

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw IoError("sha256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xF];
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return sha256_hex(bytes);
}

}  // namespace levybox
