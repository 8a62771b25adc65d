#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace levybox {

enum class ColumnKind { Real, Integer, Text };

struct Column {
  std::string name;
  std::string unit;  // "1" for dimensionless
  ColumnKind kind = ColumnKind::Real;
};

struct Schema {
  std::string name;
  std::vector<Column> columns;
};

using Cell = std::variant<double, long, std::string>;
using Row = std::vector<Cell>;

enum class TableFormat { Csv, Json };

std::string to_string(TableFormat f);
TableFormat table_format_from_string(const std::string& s);

/// Fixed schemas for every artifact the CLI writes.
namespace schemas {
const Schema& eigen();
const Schema& green();
const Schema& dos();
const Schema& walls();
const Schema& evolve();
const Schema& apply_op();
const Schema& appendix();
const Schema& ck();
}  // namespace schemas

/// Renders rows in the given format. Reals use 17 significant digits, lines
/// end in LF, and CSV opens with a "name [unit]" header. Throws
/// InvalidArgument on a schema mismatch or a non-finite value, naming the row.
std::string render_table(const std::vector<Row>& rows, const Schema& schema, TableFormat format);

/// render_table followed by a single write. Nothing is written when
/// validation fails. Throws IoError if the file cannot be written.
void write_table(const std::filesystem::path& path, const std::vector<Row>& rows, const Schema& schema,
                 TableFormat format);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(const std::string& bytes);

}  // namespace levybox
