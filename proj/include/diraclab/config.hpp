#pragma once

// Run configuration: a line-oriented key-value file with [section] headers.
// Runs have ~20 parameters and every output embeds the resolved values, so a
// structured file beats positional flags.
//
//   # comment
//   [lattice]
//   n_sites = 32
//   spacing = 0.5
//
// Parse errors (malformed lines, bad numbers) and schema errors (unknown or
// missing keys, out-of-range values) are distinct, and both carry the line.

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "diraclab/gauge.hpp"
#include "diraclab/gaussian.hpp"
#include "diraclab/lattice.hpp"
#include "diraclab/report.hpp"

namespace diraclab {

struct ConfigParseError : Error {
  int line;
  ConfigParseError(int line_, const std::string& msg)
      : Error("config parse error at line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct ConfigSchemaError : Error {
  int line;  // 0 when the field is absent
  ConfigSchemaError(int line_, const std::string& field, const std::string& msg)
      : Error("config schema error" +
              (line_ > 0 ? " at line " + std::to_string(line_) : std::string{}) + ": field '" +
              field + "': " + msg),
        line(line_) {}
};

struct RunConfig {
  LatticeConfig lattice;
  StateRecipe state = StateRecipe::vacuum();
  ChiRecipe chi = ChiRecipe::sine(0.4, 0.0);  // wavelength resolved to L below
  bool scheme_peierls = true;
  bool scheme_linear = true;
  std::uint64_t seed = 1;
  std::string output_prefix = "out/run";
  bool format_csv = true;
  bool format_json = true;
  bool oracle = false;
  int vacuum_trials = 1000;
  int oracle_trials = 50;
  int refinements = 4;
  std::vector<double> sweep_f;

  // resolved provenance
  ordered_json to_json() const;
  std::vector<std::pair<std::string, std::string>> meta() const;
};

namespace cfgdetail {

struct Entry {
  std::string value;
  int line = 0;
  mutable bool used = false;
};

using Section = std::map<std::string, Entry>;
using Tree = std::map<std::string, std::pair<Section, int>>;  // section -> (entries, line)

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline Tree parse_tree(std::istream& in) {
  Tree tree;
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigParseError(line_no, "unterminated section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigParseError(line_no, "empty section name");
      tree.emplace(section, std::make_pair(Section{}, line_no));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigParseError(line_no, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigParseError(line_no, "empty key");
    if (section.empty())
      throw ConfigParseError(line_no, "key '" + key + "' appears before any [section]");
    auto& entries = tree[section].first;
    if (entries.count(key))
      throw ConfigParseError(line_no, "duplicate key '" + key + "' in [" + section + "]");
    entries[key] = Entry{value, line_no, false};
  }
  return tree;
}

inline double parse_double(const Entry& e, const std::string& field) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(e.value, &pos);
  } catch (const std::exception&) {
    throw ConfigParseError(e.line, "field '" + field + "': cannot parse '" + e.value + "' as a number");
  }
  if (pos != e.value.size())
    throw ConfigParseError(e.line, "field '" + field + "': trailing characters in '" + e.value + "'");
  return v;
}

inline long long parse_int(const Entry& e, const std::string& field) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(e.value, &pos);
  } catch (const std::exception&) {
    throw ConfigParseError(e.line, "field '" + field + "': cannot parse '" + e.value + "' as an integer");
  }
  if (pos != e.value.size())
    throw ConfigParseError(e.line, "field '" + field + "': trailing characters in '" + e.value + "'");
  return v;
}

inline std::uint64_t parse_u64(const Entry& e, const std::string& field) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(e.value, &pos);
  } catch (const std::exception&) {
    throw ConfigParseError(e.line, "field '" + field + "': cannot parse '" + e.value + "' as an unsigned integer");
  }
  if (pos != e.value.size())
    throw ConfigParseError(e.line, "field '" + field + "': trailing characters in '" + e.value + "'");
  return v;
}

inline bool parse_bool(const Entry& e, const std::string& field) {
  if (e.value == "on" || e.value == "true" || e.value == "yes" || e.value == "1") return true;
  if (e.value == "off" || e.value == "false" || e.value == "no" || e.value == "0") return false;
  throw ConfigSchemaError(e.line, field, "expected on/off, got '" + e.value + "'");
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class SectionReader {
 public:
  SectionReader(const Tree& tree, std::string name) : name_(std::move(name)) {
    auto it = tree.find(name_);
    section_ = it == tree.end() ? nullptr : &it->second.first;
  }

  bool present() const { return section_ != nullptr; }

  const Entry* find(const std::string& key) const {
    if (!section_) return nullptr;
    auto it = section_->find(key);
    if (it == section_->end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  const Entry& require(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) throw ConfigSchemaError(0, name_ + "." + key, "required field is missing");
    return *e;
  }

  double number(const std::string& key, double fallback) const {
    const Entry* e = find(key);
    return e ? parse_double(*e, name_ + "." + key) : fallback;
  }

  void check_all_used() const {
    if (!section_) return;
    for (const auto& [key, entry] : *section_)
      if (!entry.used)
        throw ConfigSchemaError(entry.line, name_ + "." + key, "unknown field");
  }

  const std::string& name() const { return name_; }

 private:
  std::string name_;
  const Section* section_;
};

}  // namespace cfgdetail

inline RunConfig parse_run_config(std::istream& in) {
  using namespace cfgdetail;
  const Tree tree = parse_tree(in);
  for (const auto& [name, sec] : tree) {
    if (name != "lattice" && name != "state" && name != "chi" && name != "run" && name != "sweep")
      throw ConfigSchemaError(sec.second, name, "unknown section");
  }

  RunConfig rc;

  SectionReader lattice(tree, "lattice");
  if (!lattice.present()) throw ConfigSchemaError(0, "lattice", "required section is missing");
  rc.lattice.n_sites = static_cast<int>(parse_int(lattice.require("n_sites"), "lattice.n_sites"));
  rc.lattice.spacing = parse_double(lattice.require("spacing"), "lattice.spacing");
  rc.lattice.mass = parse_double(lattice.require("mass"), "lattice.mass");
  rc.lattice.wilson_r = lattice.number("wilson_r", 1.0);
  if (const Entry* e = lattice.find("boundary")) {
    if (e->value == "periodic") rc.lattice.boundary = Boundary::periodic;
    else if (e->value == "open") rc.lattice.boundary = Boundary::open_chain;
    else throw ConfigSchemaError(e->line, "lattice.boundary", "expected periodic|open");
  }
  lattice.check_all_used();
  try {
    rc.lattice.validate();
  } catch (const InvalidArgumentError& err) {
    throw ConfigSchemaError(0, "lattice", err.what());
  }
  const double len = rc.lattice.length();

  SectionReader state(tree, "state");
  std::string state_kind = "vacuum";
  if (const Entry* e = state.find("recipe")) state_kind = e->value;
  if (state_kind == "vacuum") {
    rc.state = StateRecipe::vacuum();
  } else if (state_kind == "wavepacket") {
    rc.state = StateRecipe::wavepacket(state.number("center", len / 2.0),
                                       state.number("width", len / 8.0),
                                       state.number("momentum", 0.9));
  } else if (state_kind == "random") {
    const Entry* se = state.find("seed");
    rc.state = StateRecipe::random(se ? parse_u64(*se, "state.seed") : 1);
  } else if (state_kind == "boosted_sea") {
    rc.state = StateRecipe::boosted_sea(state.number("boost", 0.5));
  } else if (state.present()) {
    throw ConfigSchemaError(state.find("recipe") ? state.find("recipe")->line : 0, "state.recipe",
                            "expected vacuum|wavepacket|random|boosted_sea, got '" + state_kind + "'");
  }
  state.check_all_used();

  SectionReader chi(tree, "chi");
  std::string chi_kind = "sine";
  if (const Entry* e = chi.find("recipe")) chi_kind = e->value;
  if (chi_kind == "sine") {
    rc.chi = ChiRecipe::sine(chi.number("amplitude", 0.4), chi.number("wavelength", len));
  } else if (chi_kind == "constant") {
    rc.chi = ChiRecipe::constant(chi.number("c", 0.0));
  } else if (chi_kind == "bump") {
    rc.chi = ChiRecipe::bump(chi.number("center", len / 2.0), chi.number("width", len / 8.0),
                             chi.number("amplitude", 0.4));
  } else if (chi_kind == "from_current") {
    rc.chi = ChiRecipe::from_current(chi.number("f", 1.0));
  } else if (chi_kind == "samples") {
    const Entry& e = chi.require("samples");
    const auto items = split_list(e.value);
    rvector values(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
      Entry item{items[i], e.line, true};
      values[i] = parse_double(item, "chi.samples");
    }
    rc.chi = ChiRecipe::from_samples(std::move(values));
  } else {
    throw ConfigSchemaError(chi.find("recipe") ? chi.find("recipe")->line : 0, "chi.recipe",
                            "expected constant|sine|bump|from_current|samples, got '" + chi_kind + "'");
  }
  chi.check_all_used();

  SectionReader run(tree, "run");
  if (const Entry* e = run.find("seed")) rc.seed = parse_u64(*e, "run.seed");
  if (const Entry* e = run.find("scheme")) {
    if (e->value == "peierls") { rc.scheme_peierls = true; rc.scheme_linear = false; }
    else if (e->value == "linear") { rc.scheme_peierls = false; rc.scheme_linear = true; }
    else if (e->value == "both") { rc.scheme_peierls = true; rc.scheme_linear = true; }
    else throw ConfigSchemaError(e->line, "run.scheme", "expected peierls|linear|both");
  }
  if (const Entry* e = run.find("output")) rc.output_prefix = e->value;
  if (const Entry* e = run.find("formats")) {
    rc.format_csv = rc.format_json = false;
    for (const std::string& f : split_list(e->value)) {
      if (f == "csv") rc.format_csv = true;
      else if (f == "json") rc.format_json = true;
      else if (f == "both") rc.format_csv = rc.format_json = true;
      else throw ConfigSchemaError(e->line, "run.formats", "expected csv|json|both, got '" + f + "'");
    }
    if (!rc.format_csv && !rc.format_json)
      throw ConfigSchemaError(e->line, "run.formats", "no output format selected");
  }
  if (const Entry* e = run.find("oracle")) rc.oracle = parse_bool(*e, "run.oracle");
  if (const Entry* e = run.find("vacuum_trials")) {
    rc.vacuum_trials = static_cast<int>(parse_int(*e, "run.vacuum_trials"));
    if (rc.vacuum_trials < 1) throw ConfigSchemaError(e->line, "run.vacuum_trials", "must be >= 1");
  }
  if (const Entry* e = run.find("oracle_trials")) {
    rc.oracle_trials = static_cast<int>(parse_int(*e, "run.oracle_trials"));
    if (rc.oracle_trials < 1) throw ConfigSchemaError(e->line, "run.oracle_trials", "must be >= 1");
  }
  if (const Entry* e = run.find("refinements")) {
    rc.refinements = static_cast<int>(parse_int(*e, "run.refinements"));
    if (rc.refinements < 2) throw ConfigSchemaError(e->line, "run.refinements", "must be >= 2");
  }
  run.check_all_used();

  SectionReader sweep(tree, "sweep");
  const Entry* f_values = sweep.find("f_values");
  const Entry* f_min = sweep.find("f_min");
  const Entry* f_max = sweep.find("f_max");
  const Entry* f_count = sweep.find("f_count");
  if (f_values && (f_min || f_max || f_count))
    throw ConfigSchemaError(f_values->line, "sweep.f_values",
                            "give either f_values or f_min/f_max/f_count, not both");
  if (f_values) {
    for (const std::string& item : split_list(f_values->value)) {
      Entry e{item, f_values->line, true};
      rc.sweep_f.push_back(parse_double(e, "sweep.f_values"));
    }
    if (rc.sweep_f.empty())
      throw ConfigSchemaError(f_values->line, "sweep.f_values", "empty list");
  } else if (f_min || f_max || f_count) {
    if (!f_min || !f_max || !f_count)
      throw ConfigSchemaError(f_min ? f_min->line : (f_max ? f_max->line : f_count->line),
                              "sweep", "f_min, f_max and f_count must be given together");
    const double lo = parse_double(*f_min, "sweep.f_min");
    const double hi = parse_double(*f_max, "sweep.f_max");
    const long long n = parse_int(*f_count, "sweep.f_count");
    if (n < 2) throw ConfigSchemaError(f_count->line, "sweep.f_count", "must be >= 2");
    if (!(hi > lo)) throw ConfigSchemaError(f_max->line, "sweep.f_max", "must exceed f_min");
    for (long long i = 0; i < n; ++i)
      rc.sweep_f.push_back(lo + (hi - lo) * double(i) / double(n - 1));
  }
  sweep.check_all_used();

  return rc;
}

inline RunConfig parse_run_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  return parse_run_config(in);
}

// ---------------------------------------------------------------------------
// resolved provenance

inline ordered_json RunConfig::to_json() const {
  ordered_json j = ordered_json::object();
  ordered_json lat = ordered_json::object();
  lat["n_sites"] = lattice.n_sites;
  lat["spacing"] = lattice.spacing;
  lat["mass"] = lattice.mass;
  lat["wilson_r"] = lattice.wilson_r;
  lat["boundary"] = lattice.boundary == Boundary::periodic ? "periodic" : "open";
  j["lattice"] = std::move(lat);

  ordered_json st = ordered_json::object();
  switch (state.kind) {
    case StateRecipe::Kind::vacuum:
      st["recipe"] = "vacuum";
      break;
    case StateRecipe::Kind::wavepacket:
      st["recipe"] = "wavepacket";
      st["center"] = state.center;
      st["width"] = state.width;
      st["momentum"] = state.momentum;
      break;
    case StateRecipe::Kind::random:
      st["recipe"] = "random";
      st["seed"] = state.seed;
      break;
    case StateRecipe::Kind::boosted_sea:
      st["recipe"] = "boosted_sea";
      st["boost"] = state.boost;
      break;
  }
  j["state"] = std::move(st);

  ordered_json ch = ordered_json::object();
  switch (chi.kind) {
    case ChiRecipe::Kind::constant:
      ch["recipe"] = "constant";
      ch["c"] = chi.value;
      break;
    case ChiRecipe::Kind::sine:
      ch["recipe"] = "sine";
      ch["amplitude"] = chi.amplitude;
      ch["wavelength"] = chi.wavelength;
      break;
    case ChiRecipe::Kind::bump:
      ch["recipe"] = "bump";
      ch["center"] = chi.center;
      ch["width"] = chi.width;
      ch["amplitude"] = chi.amplitude;
      break;
    case ChiRecipe::Kind::from_current:
      ch["recipe"] = "from_current";
      ch["f"] = chi.f;
      break;
    case ChiRecipe::Kind::samples: {
      ch["recipe"] = "samples";
      ordered_json arr = ordered_json::array();
      for (Eigen::Index i = 0; i < chi.samples.size(); ++i) arr.push_back(chi.samples[i]);
      ch["samples"] = std::move(arr);
      break;
    }
  }
  j["chi"] = std::move(ch);

  ordered_json rn = ordered_json::object();
  rn["scheme"] = scheme_peierls && scheme_linear ? "both" : (scheme_peierls ? "peierls" : "linear");
  rn["oracle"] = oracle;
  rn["vacuum_trials"] = vacuum_trials;
  rn["oracle_trials"] = oracle_trials;
  rn["refinements"] = refinements;
  rn["output"] = output_prefix;
  std::string fmts;
  if (format_csv) fmts += "csv";
  if (format_json) fmts += fmts.empty() ? "json" : ",json";
  rn["formats"] = fmts;
  j["run"] = std::move(rn);

  if (!sweep_f.empty()) {
    ordered_json sw = ordered_json::object();
    ordered_json arr = ordered_json::array();
    for (double f : sweep_f) arr.push_back(f);
    sw["f_values"] = std::move(arr);
    j["sweep"] = std::move(sw);
  }
  return j;
}

inline std::vector<std::pair<std::string, std::string>> RunConfig::meta() const {
  std::vector<std::pair<std::string, std::string>> out;
  const ordered_json j = to_json();
  for (const auto& [section, entries] : j.items()) {
    for (const auto& [key, value] : entries.items()) {
      std::string text;
      if (value.is_string()) text = value.get<std::string>();
      else if (value.is_number_float()) text = format_g17(value.get<double>());
      else text = value.dump();
      out.emplace_back(section + "." + key, std::move(text));
    }
  }
  out.emplace_back("seed", std::to_string(seed));
  return out;
}

}  // namespace diraclab
