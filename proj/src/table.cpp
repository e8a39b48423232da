#include "table.hpp"

#include <charconv>
#include <cmath>
#include <fmt/format.h>

#include "error.hpp"

namespace virial {

namespace {

double parse_number(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  if (s == "nan" || s == "NaN") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::ParseError, fmt::format("'{}' is not a number", s));
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

nlohmann::json solver_json(const SolverOptions& s, double tol) {
  return {{"half_width", s.half_width},
          {"step", s.step},
          {"tol", tol},
          {"numerov", s.numerov},
          {"max_refinements", s.max_refinements},
          {"richardson_depth", s.richardson_depth}};
}

}  // namespace

TableFormat parse_table_format(std::string_view name) {
  if (name == "csv") return TableFormat::Csv;
  if (name == "json") return TableFormat::Json;
  throw Error(ErrorCode::InvalidArgument, fmt::format("unknown format '{}'", name));
}

void Table::add_column(std::string name, ColumnFormat format) {
  columns.push_back(std::move(name));
  formats.push_back(format);
}

std::size_t Table::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw Error(ErrorCode::InvalidArgument, fmt::format("no column '{}'", name));
}

double Table::at(std::size_t row, std::string_view column) const {
  return rows.at(row).at(column_index(column));
}

std::string format_value(double v, const ColumnFormat& format) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  switch (format.kind) {
    case ColumnFormat::Kind::Integer: return fmt::format("{}", static_cast<long long>(std::llround(v)));
    case ColumnFormat::Kind::Fixed: return fmt::format("{:.{}f}", v, format.digits);
    case ColumnFormat::Kind::Significant: return fmt::format("{:#.{}g}", v, format.digits);
    case ColumnFormat::Kind::Exact: return fmt::format("{}", v);
  }
  return fmt::format("{}", v);
}

std::string to_csv(const Table& table) {
  std::string out = fmt::format("{}\n", fmt::join(table.columns, ","));
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_value(row[c], table.formats[c]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& table) {
  nlohmann::json doc;
  doc["metadata"] = table.metadata;
  doc["columns"] = table.columns;
  auto rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto& f = table.formats[c];
      if (f.kind == ColumnFormat::Kind::Integer)
        obj[table.columns[c]] = std::llround(row[c]);
      else if (std::isfinite(row[c]))
        obj[table.columns[c]] = parse_number(format_value(row[c], f));
      else
        obj[table.columns[c]] = nullptr;
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string serialize(const Table& table, TableFormat format) {
  return format == TableFormat::Csv ? to_csv(table) : to_json(table);
}

Table parse_csv(std::string_view text) {
  Table t;
  bool header = true;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (header) {
      for (auto c : cells) t.add_column(std::string(c), ColumnFormat::exact());
      header = false;
      continue;
    }
    if (cells.size() != t.columns.size())
      throw Error(ErrorCode::ParseError,
                  fmt::format("row has {} cells, header has {}", cells.size(), t.columns.size()));
    std::vector<double> row;
    for (auto c : cells) row.push_back(parse_number(c));
    t.rows.push_back(std::move(row));
  }
  if (header) throw Error(ErrorCode::ParseError, "empty CSV document");
  return t;
}

Table parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("columns") || !doc.contains("rows"))
    throw Error(ErrorCode::ParseError, "JSON table needs 'columns' and 'rows'");
  Table t;
  for (const auto& c : doc["columns"]) t.add_column(c.get<std::string>(), ColumnFormat::exact());
  if (doc.contains("metadata")) t.metadata = doc["metadata"];
  for (const auto& r : doc["rows"]) {
    std::vector<double> row;
    for (const auto& name : t.columns) {
      if (!r.contains(name)) throw Error(ErrorCode::ParseError, fmt::format("row lacks '{}'", name));
      const auto& v = r[name];
      row.push_back(v.is_null() ? std::nan("") : v.get<double>());
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table parse_table(std::string_view text, TableFormat format) {
  return format == TableFormat::Csv ? parse_csv(text) : parse_json(text);
}

Table to_table(const SpectrumReport& report) {
  Table t;
  t.add_column("n", ColumnFormat::integer());
  t.add_column("E_ref", ColumnFormat::fixed(8));
  t.add_column("E_virial", ColumnFormat::fixed(8));
  t.add_column("E_rayleigh", ColumnFormat::fixed(8));
  t.add_column("eps_percent", ColumnFormat::significant(5));
  t.add_column("gamma", ColumnFormat::fixed(8));
  for (const auto& r : report.rows)
    t.rows.push_back({static_cast<double>(r.n), r.e_ref, r.e_virial, r.e_rayleigh, r.eps_percent,
                      r.gamma});
  t.metadata = {{"kind", "spectrum"},
                {"potential", report.potential},
                {"n_max", report.n_max},
                {"basis", report.method == BasisMethod::ThreeTerm ? "three-term" : "gram-schmidt"},
                {"weight_mode", report.weight_mode},
                {"solver", solver_json(report.solver, report.solver_tol)}};
  return t;
}

SpectrumReport spectrum_from_table(const Table& table) {
  SpectrumReport r;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    SpectrumRow row;
    row.n = static_cast<int>(std::llround(table.at(i, "n")));
    row.e_ref = table.at(i, "E_ref");
    row.e_virial = table.at(i, "E_virial");
    row.e_rayleigh = table.at(i, "E_rayleigh");
    row.eps_percent = table.at(i, "eps_percent");
    row.gamma = table.at(i, "gamma");
    r.rows.push_back(row);
  }
  r.n_max = r.rows.empty() ? 0 : r.rows.back().n;
  if (table.metadata.contains("potential")) r.potential = table.metadata["potential"].get<std::string>();
  return r;
}

Table to_table(const ScalingAuditReport& report) {
  Table t;
  t.add_column("lambda", ColumnFormat::exact());
  t.add_column("n", ColumnFormat::integer());
  t.add_column("E_ans", ColumnFormat::fixed(8));
  t.add_column("E_ans_scaled", ColumnFormat::fixed(8));
  t.add_column("E_ref", ColumnFormat::fixed(8));
  t.add_column("eps_percent", ColumnFormat::significant(8));
  t.add_column("energy_residual", ColumnFormat::significant(3));
  t.add_column("coefficient_residual", ColumnFormat::significant(3));
  t.add_column("amplitude_residual", ColumnFormat::significant(3));
  t.add_column("eps_spread", ColumnFormat::significant(3));
  for (const auto& r : report.rows)
    t.rows.push_back({r.lambda, static_cast<double>(r.n), r.e_ans, r.e_ans_scaled, r.e_ref,
                      r.eps_percent, r.energy_residual, r.coefficient_residual,
                      r.amplitude_residual, report.eps_spread[static_cast<std::size_t>(r.n)]});
  const auto& th = report.thresholds;
  t.metadata = {{"kind", "scaling-audit"},
                {"kappa", report.kappa},
                {"n_max", report.n_max},
                {"lambdas", report.lambdas},
                {"thresholds",
                 {{"energy", th.energy},
                  {"coefficient", th.coefficient},
                  {"amplitude", th.amplitude},
                  {"eps_spread", th.eps_spread}}},
                {"max_energy_residual", report.max_energy_residual()},
                {"max_coefficient_residual", report.max_coefficient_residual()},
                {"max_amplitude_residual", report.max_amplitude_residual()},
                {"max_eps_spread", report.max_eps_spread()},
                {"passed", report.passed()}};
  return t;
}

}  // namespace virial
