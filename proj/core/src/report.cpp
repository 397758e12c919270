#include "paps/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "paps/error.hpp"

namespace paps {

using ojson = nlohmann::ordered_json;

ReportFormat parse_format(std::string_view text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "json") return ReportFormat::json;
  throw ConfigError("unknown report format '" + std::string(text) + "' (expected csv or json)");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void Table::add(const std::vector<double>& row) {
  std::vector<std::string> cells;
  cells.reserve(row.size());
  for (double v : row) cells.push_back(format_number(v));
  add_cells(std::move(cells));
}

void Table::add_cells(std::vector<std::string> row) {
  if (row.size() != columns.size()) {
    throw ArgumentError("Table: row has " + std::to_string(row.size()) + " cells, expected " +
                        std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

namespace {

Record& put(Record& r, std::vector<std::pair<std::string, std::shared_ptr<const Record::Value>>>& e,
            std::string key, Record::Value v) {
  for (auto& [k, old] : e) {
    if (k == key) {
      old = std::make_shared<const Record::Value>(std::move(v));
      return r;
    }
  }
  e.emplace_back(std::move(key), std::make_shared<const Record::Value>(std::move(v)));
  return r;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Round to the 12 digits the text formats use, so JSON and CSV agree.
ojson number_json(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == std::floor(v) && std::abs(v) < 1e15) return static_cast<std::int64_t>(v);
  return std::stod(format_number(v));
}

ojson cell_json(const std::string& s) {
  if (s == "nan") return nullptr;
  if (s == "inf" || s == "-inf") return s;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (!s.empty() && end == s.c_str() + s.size()) return v;
  return s;
}

ojson record_json(const Record& r);

ojson value_json(const Record::Value& v) {
  return std::visit(
      [](const auto& x) -> ojson {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          return number_json(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x;
        } else if constexpr (std::is_same_v<T, std::string>) {
          return x;
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
          ojson a = ojson::array();
          for (double d : x) a.push_back(number_json(d));
          return a;
        } else if constexpr (std::is_same_v<T, Record>) {
          return record_json(x);
        } else {
          ojson a = ojson::array();
          for (const Record& r : x) a.push_back(record_json(r));
          return a;
        }
      },
      v.data);
}

ojson record_json(const Record& r) {
  ojson o = ojson::object();
  for (const auto& [k, v] : r.entries()) o[k] = value_json(*v);
  return o;
}

void flatten(const Record& r, const std::string& prefix, Table& out) {
  for (const auto& [k, v] : r.entries()) {
    const std::string key = prefix.empty() ? k : prefix + "." + k;
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, std::monostate>) {
            out.add_cells({key, ""});
          } else if constexpr (std::is_same_v<T, double>) {
            out.add_cells({key, format_number(x)});
          } else if constexpr (std::is_same_v<T, bool>) {
            out.add_cells({key, x ? "true" : "false"});
          } else if constexpr (std::is_same_v<T, std::string>) {
            out.add_cells({key, x});
          } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            std::string joined;
            for (std::size_t i = 0; i < x.size(); ++i) {
              if (i) joined += ';';
              joined += format_number(x[i]);
            }
            out.add_cells({key, joined});
          } else if constexpr (std::is_same_v<T, Record>) {
            flatten(x, key, out);
          } else {
            for (std::size_t i = 0; i < x.size(); ++i) flatten(x[i], key + "." + std::to_string(i), out);
          }
        },
        v->data);
  }
}

}  // namespace

Record& Record::set(std::string key, double v) { return put(*this, entries_, std::move(key), {v}); }
Record& Record::set(std::string key, bool v) { return put(*this, entries_, std::move(key), {v}); }
Record& Record::set(std::string key, std::string v) {
  return put(*this, entries_, std::move(key), {std::move(v)});
}
Record& Record::set(std::string key, std::vector<double> v) {
  return put(*this, entries_, std::move(key), {std::move(v)});
}
Record& Record::set(std::string key, Record v) {
  return put(*this, entries_, std::move(key), {std::move(v)});
}
Record& Record::set(std::string key, std::vector<Record> v) {
  return put(*this, entries_, std::move(key), {std::move(v)});
}
Record& Record::set_null(std::string key) {
  return put(*this, entries_, std::move(key), {std::monostate{}});
}

std::string to_csv(const Table& table) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(cells[i]);
    }
    out += '\n';
  };
  line(table.columns);
  for (const auto& row : table.rows) line(row);
  return out;
}

std::string to_json(const Table& table) {
  ojson a = ojson::array();
  for (const auto& row : table.rows) {
    ojson o = ojson::object();
    for (std::size_t i = 0; i < row.size(); ++i) o[table.columns[i]] = cell_json(row[i]);
    a.push_back(std::move(o));
  }
  return a.dump(2) + "\n";
}

std::string to_json(const Record& record) { return record_json(record).dump(2) + "\n"; }

std::string to_csv(const Record& record) {
  Table t({"key", "value"});
  flatten(record, "", t);
  return to_csv(t);
}

void write_text(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

void emit_report(const Table& table, ReportFormat format, const std::string& path) {
  write_text(path, format == ReportFormat::csv ? to_csv(table) : to_json(table));
}

void emit_report(const Record& record, ReportFormat format, const std::string& path) {
  write_text(path, format == ReportFormat::csv ? to_csv(record) : to_json(record));
}

Record to_record(const IterationReport& r) {
  Record out;
  out.set("iterations", r.iterations)
      .set("residuals", r.residuals)
      .set("ratios", r.ratios)
      .set("converged", r.converged)
      .set("final_residual", r.final_residual)
      .set("tolerance", r.tolerance)
      .set("burn_in", r.burn_in);
  return out;
}

IterationReport iteration_report_from_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("iteration report: ") + e.what());
  }
  auto need = [&](const char* key) -> const ojson& {
    if (!j.is_object() || !j.contains(key)) {
      throw ConfigError(std::string("iteration report: missing field '") + key + "'");
    }
    return j.at(key);
  };
  auto numbers = [&](const char* key) {
    std::vector<double> v;
    for (const auto& x : need(key)) v.push_back(x.is_null() ? std::nan("") : x.get<double>());
    return v;
  };
  IterationReport r;
  try {
    r.iterations = need("iterations").get<std::size_t>();
    r.residuals = numbers("residuals");
    r.ratios = numbers("ratios");
    r.converged = need("converged").get<bool>();
    r.final_residual = need("final_residual").get<double>();
    r.tolerance = need("tolerance").get<double>();
    r.burn_in = need("burn_in").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("iteration report: ") + e.what());
  }
  return r;
}

Record to_record(const SGammaConstant& c) {
  Record out;
  out.set("gamma", c.gamma)
      .set("p", c.p)
      .set("q", c.q)
      .set("series", c.series)
      .set("series_tail_lower", c.series_tail_lower)
      .set("series_tail_upper", c.series_tail_upper)
      .set("integral_direct", c.integral_direct)
      .set("integral_printed", c.integral_printed)
      .set("total", c.total);
  return out;
}

Record to_record(const FractionalOperatorReport& r) {
  Record out;
  out.set("t_trunc", r.t_trunc)
      .set("t_trunc_derived", r.t_trunc_derived)
      .set("tail_mass", r.tail_mass)
      .set("history_fine", r.history_fine)
      .set("coarse_history_mass", r.coarse_history_mass)
      .set("nodes", r.nodes)
      .set("output_nodes", r.output_nodes)
      .set("exponentials", r.exponentials);
  return out;
}

namespace {
Record window_record(const Interval& w) {
  Record out;
  out.set("lo", w.lo).set("hi", w.hi);
  return out;
}
}  // namespace

Record to_record(const FractionalSolveReport& r) {
  Record out;
  out.set("route", r.route)
      .set("p", r.p)
      .set("constants", to_record(r.constants))
      .set("lipschitz_bsp", r.lipschitz_bsp)
      .set("product", r.product)
      .set("margin", r.margin)
      .set("equality_case", r.equality_case)
      .set("observed_subgeometric", r.observed_subgeometric)
      .set("max_ratio", r.max_ratio)
      .set("operator", to_record(r.operator_report))
      .set("sup_solution", r.sup_solution)
      .set("forcing_bsp", r.forcing_bsp)
      .set("bound_direct", r.bound_direct)
      .set("bound_printed", r.bound_printed)
      .set("norm_window", window_record(r.norm_window));
  return out;
}

Record to_record(const EvolutionHypothesisReport& r) {
  Record out;
  out.set("p", r.p)
      .set("c_p", r.c_p)
      .set("rho", r.rho)
      .set("zero_section_bsp", r.zero_section_bsp)
      .set("lipschitz_bsp", r.lipschitz_bsp)
      .set("radius_margin", r.radius_margin)
      .set("lipschitz_margin", r.lipschitz_margin)
      .set("contraction_bound", r.contraction_bound)
      .set("max_iterate_norm", r.max_iterate_norm)
      .set("ball_invariant", r.ball_invariant)
      .set("t_trunc", r.t_trunc)
      .set("tail_bound", r.tail_bound)
      .set("norm_window", window_record(r.norm_window));
  return out;
}

Record to_record(const LotkaVolterraReport& r) {
  Record out;
  out.set("a_min", r.a_min)
      .set("a_max", r.a_max)
      .set("omega", r.omega)
      .set("delta", r.delta)
      .set("delta_choice", r.delta_choice)
      .set("N", r.N)
      .set("b_bs1", r.b_bs1)
      .set("C_bs1", r.C_bs1)
      .set("printed_bound", r.printed_bound)
      .set("printed_margin", r.printed_margin)
      .set("radius_margin", r.radius_margin)
      .set("sup_field", r.sup_field)
      .set("within_ball", r.within_ball);
  return out;
}

Record to_record(const ProbeReport& r) {
  Record out;
  out.set("sup_ratio", r.sup_ratio)
      .set("argmax", std::vector<double>{r.argmax.first, r.argmax.second})
      .set("pairs", r.pairs)
      .set("all_passed", r.all_passed);
  std::vector<Record> checks;
  for (const auto& c : r.checks) {
    Record rc;
    rc.set("epsilon", c.epsilon)
        .set("pairs", c.pairs)
        .set("worst_image", c.worst_image)
        .set("vacuous", c.vacuous)
        .set("passed", c.passed);
    checks.push_back(std::move(rc));
  }
  out.set("checks", std::move(checks));
  return out;
}

Record to_record(const TranslationScan& scan) {
  Record out;
  out.set("epsilon", scan.epsilon)
      .set("search", window_record(scan.search))
      .set("window", window_record(scan.window))
      .set("empty", scan.empty)
      .set("hits", scan.hits.size());
  if (scan.largest_gap) {
    out.set("largest_gap", *scan.largest_gap);
  } else {
    out.set_null("largest_gap");
  }
  out.set("clusters_truncated", scan.clusters_truncated);
  std::vector<Record> clusters;
  for (const auto& c : scan.clusters) {
    Record rc;
    rc.set("lo", c.lo).set("hi", c.hi).set("best_tau", c.best_tau).set("best_defect", c.best_defect);
    clusters.push_back(std::move(rc));
  }
  out.set("clusters", std::move(clusters));
  return out;
}

Table decay_table(const DecayCurve& curve, const std::string& value_column) {
  Table t({"r", value_column});
  for (const auto& p : curve) t.add({p.r, p.value});
  return t;
}

Table constants_table(const std::vector<SGammaConstant>& rows) {
  Table t({"gamma", "p", "q", "series", "series_tail_lower", "series_tail_upper", "integral_direct",
           "integral_printed", "total"});
  for (const auto& c : rows) {
    t.add({c.gamma, c.p, c.q, c.series, c.series_tail_lower, c.series_tail_upper, c.integral_direct,
           c.integral_printed, c.total});
  }
  return t;
}

Table field_table(const FieldOutput& field) {
  Table t({"t", "x", "u"});
  const std::size_t nx = field.x.size();
  for (std::size_t i = 0; i < field.times.size(); ++i) {
    for (std::size_t j = 0; j < nx; ++j) t.add({field.times[i], field.x[j], field.values[i * nx + j]});
  }
  return t;
}

Table grid_table(const GridField& field) {
  std::vector<std::string> cols{"t"};
  for (std::size_t k = 0; k < field.dim; ++k) cols.push_back("u" + std::to_string(k));
  Table t(std::move(cols));
  std::vector<double> row(field.dim + 1);
  for (std::size_t i = 0; i < field.size(); ++i) {
    row[0] = field.times[i];
    const auto r = field.row(i);
    std::copy(r.begin(), r.end(), row.begin() + 1);
    t.add(row);
  }
  return t;
}

Table modulus_table(const std::vector<ModulusEntry>& entries) {
  Table t({"delta", "modulus"});
  for (const auto& e : entries) t.add({e.delta, e.modulus});
  return t;
}

}  // namespace paps
