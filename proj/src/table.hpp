#pragma once

#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "spectra.hpp"

namespace virial {

enum class TableFormat { Csv, Json };

TableFormat parse_table_format(std::string_view name);

struct ColumnFormat {
  enum class Kind { Integer, Fixed, Significant, Exact };
  Kind kind = Kind::Exact;
  int digits = 17;

  static ColumnFormat integer() { return {Kind::Integer, 0}; }
  static ColumnFormat fixed(int d) { return {Kind::Fixed, d}; }
  static ColumnFormat significant(int d) { return {Kind::Significant, d}; }
  static ColumnFormat exact() { return {Kind::Exact, 17}; }
};

// Column-major description, row-major values. CSV uses '.' decimals and the
// column order given here; JSON carries the same rows plus `metadata`.
struct Table {
  std::vector<std::string> columns;
  std::vector<ColumnFormat> formats;
  std::vector<std::vector<double>> rows;
  nlohmann::json metadata = nlohmann::json::object();

  void add_column(std::string name, ColumnFormat format);
  std::size_t column_index(std::string_view name) const;
  double at(std::size_t row, std::string_view column) const;
};

std::string format_value(double v, const ColumnFormat& format);

std::string to_csv(const Table& table);
std::string to_json(const Table& table);
std::string serialize(const Table& table, TableFormat format);

// Formats are not recoverable from the text; parsed tables use Exact.
Table parse_csv(std::string_view text);
Table parse_json(std::string_view text);
Table parse_table(std::string_view text, TableFormat format);

/// Columns n, E_ref, E_virial, E_rayleigh, eps_percent, gamma.
Table to_table(const SpectrumReport& report);
SpectrumReport spectrum_from_table(const Table& table);

/// One row per (lambda, n) with the four residual families.
Table to_table(const ScalingAuditReport& report);

}  // namespace virial
