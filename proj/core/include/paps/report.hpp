#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "paps/evosolve.hpp"
#include "paps/fixedpoint.hpp"
#include "paps/fracsolve.hpp"
#include "paps/funcspace.hpp"
#include "paps/kernel.hpp"

namespace paps {

enum class ReportFormat { csv, json };

/// "csv" or "json"; anything else is a ConfigError.
ReportFormat parse_format(std::string_view text);

/// 12 significant digits, "inf", "-inf" or "nan".
std::string format_number(double v);

/// Rectangular data with a header row. Cells are stored preformatted.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  explicit Table(std::vector<std::string> cols = {}) : columns(std::move(cols)) {}
  void add(const std::vector<double>& row);
  void add_cells(std::vector<std::string> row);
};

/// Ordered key/value report. Values are numbers, flags, strings, numeric
/// arrays, nested records or arrays of records.
class Record {
 public:
  struct Value;
  Record& set(std::string key, double v);
  Record& set(std::string key, int v) { return set(std::move(key), static_cast<double>(v)); }
  Record& set(std::string key, std::size_t v) { return set(std::move(key), static_cast<double>(v)); }
  Record& set(std::string key, bool v);
  Record& set(std::string key, std::string v);
  Record& set(std::string key, const char* v) { return set(std::move(key), std::string(v)); }
  Record& set(std::string key, std::vector<double> v);
  Record& set(std::string key, Record v);
  Record& set(std::string key, std::vector<Record> v);
  /// Absent optional values are written as null.
  Record& set_null(std::string key);

  const std::vector<std::pair<std::string, std::shared_ptr<const Value>>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::shared_ptr<const Value>>> entries_;
};

struct Record::Value {
  std::variant<std::monostate, double, bool, std::string, std::vector<double>, Record,
               std::vector<Record>>
      data;
};

std::string to_csv(const Table& table);
/// Array of objects keyed by column; numeric cells stay numbers.
std::string to_json(const Table& table);
std::string to_json(const Record& record);
/// Two columns key,value; nested keys are joined with '.', arrays with ';'.
std::string to_csv(const Record& record);

/// Writes to path, or standard output when path is "-". IoError on failure.
void write_text(const std::string& path, const std::string& content);
void emit_report(const Table& table, ReportFormat format, const std::string& path);
void emit_report(const Record& record, ReportFormat format, const std::string& path);

/// JSON schema: {"iterations", "residuals", "ratios", "converged",
/// "final_residual", "tolerance", "burn_in"}.
Record to_record(const IterationReport& report);
IterationReport iteration_report_from_json(const std::string& text);

Record to_record(const SGammaConstant& c);
Record to_record(const FractionalOperatorReport& r);
Record to_record(const FractionalSolveReport& r);
Record to_record(const EvolutionHypothesisReport& r);
Record to_record(const LotkaVolterraReport& r);
Record to_record(const ProbeReport& r);
Record to_record(const TranslationScan& scan);

Table decay_table(const DecayCurve& curve, const std::string& value_column = "value");
Table constants_table(const std::vector<SGammaConstant>& rows);
Table field_table(const FieldOutput& field);
/// Columns t, u0, u1, ...
Table grid_table(const GridField& field);
Table modulus_table(const std::vector<ModulusEntry>& entries);

}  // namespace paps
