#pragma once

// Report emission: labeled scalar rows to CSV and JSON mirrors.  Formatting
// is pinned (17 significant digits, fixed column order, insertion-ordered
// keys) so identical runs produce byte-identical files.

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "diraclab/counterexample.hpp"
#include "diraclab/gaussian.hpp"
#include "diraclab/lattice.hpp"
#include "diraclab/verify.hpp"

namespace diraclab {

using ordered_json = nlohmann::ordered_json;

struct IoError : Error {
  using Error::Error;
};

struct ExperimentReport {
  std::vector<std::pair<std::string, std::string>> meta;  // provenance, in order
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

namespace detail {

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace detail

inline std::string to_csv(const ExperimentReport& report) {
  std::string out;
  for (const auto& [key, value] : report.meta) out += "# " + key + " = " + value + "\n";
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i) out += ",";
    out += detail::csv_escape(report.columns[i]);
  }
  out += "\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += format_g17(row[i]);
    }
    out += "\n";
  }
  return out;
}

inline ordered_json rows_json(const ExperimentReport& report) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < report.columns.size() && i < row.size(); ++i)
      obj[report.columns[i]] = row[i];
    rows.push_back(std::move(obj));
  }
  return rows;
}

inline ordered_json checks_json(const std::vector<CheckResult>& checks) {
  ordered_json arr = ordered_json::array();
  for (const CheckResult& c : checks) {
    ordered_json obj = ordered_json::object();
    obj["name"] = c.name;
    obj["kind"] = c.kind == CheckKind::identity ? "identity" : "probe";
    obj["passed"] = c.passed;
    obj["measured"] = c.measured;
    obj["tolerance"] = c.tolerance;
    obj["details"] = c.details;
    arr.push_back(std::move(obj));
  }
  return arr;
}

inline ExperimentReport checks_report(const std::vector<CheckResult>& checks,
                                      std::vector<std::pair<std::string, std::string>> meta) {
  ExperimentReport rep;
  rep.meta = std::move(meta);
  rep.columns = {"index", "passed", "measured", "tolerance"};
  for (std::size_t i = 0; i < checks.size(); ++i)
    rep.rows.push_back({double(i), checks[i].passed ? 1.0 : 0.0, checks[i].measured,
                        checks[i].tolerance});
  return rep;
}

inline ExperimentReport sweep_report(const std::vector<SweepRow>& rows,
                                     std::vector<std::pair<std::string, std::string>> meta) {
  ExperimentReport rep;
  rep.meta = std::move(meta);
  rep.columns = {"f", "linear_prediction", "exact_peierls", "exact_linear",
                 "transformed_free", "gap"};
  for (const SweepRow& r : rows)
    rep.rows.push_back({r.f, r.linear_prediction, r.exact_peierls_energy,
                        r.exact_linear_scheme_energy, r.transformed_free_energy, r.gap});
  return rep;
}

// debug serialization: row-major complex pairs
inline ordered_json kernel_json(const SingleParticleOperator& op) {
  ordered_json obj = ordered_json::object();
  obj["label"] = op.label;
  obj["dim"] = op.dim();
  ordered_json entries = ordered_json::array();
  for (int i = 0; i < op.dim(); ++i)
    for (int j = 0; j < op.dim(); ++j)
      entries.push_back(ordered_json::array({op.kernel(i, j).real(), op.kernel(i, j).imag()}));
  obj["entries"] = std::move(entries);
  return obj;
}

inline ordered_json state_json(const CorrelationState& state) {
  ordered_json obj = ordered_json::object();
  obj["label"] = state.label;
  obj["dim"] = state.dim();
  ordered_json entries = ordered_json::array();
  for (int i = 0; i < state.dim(); ++i)
    for (int j = 0; j < state.dim(); ++j)
      entries.push_back(ordered_json::array({state.corr(i, j).real(), state.corr(i, j).imag()}));
  obj["entries"] = std::move(entries);
  return obj;
}

inline SingleParticleOperator kernel_from_json(const ordered_json& obj) {
  const int dim = obj.at("dim").get<int>();
  const auto& entries = obj.at("entries");
  if (static_cast<int>(entries.size()) != dim * dim)
    throw InvalidArgumentError("kernel_from_json: entry count does not match dim^2");
  cmatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const auto& e = entries[i * dim + j];
      m(i, j) = complex(e[0].get<double>(), e[1].get<double>());
    }
  return {std::move(m), obj.value("label", std::string{})};
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace diraclab
