#include "schurmarc/report_io.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>

#include "schurmarc/symbol_io.hpp"

namespace schurmarc {

using nlohmann::json;

namespace {

/// JSON has no infinities; they are written as strings
json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

std::string csv_number(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string base_label(const std::vector<double>& b) {
  std::string s;
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? " " : "") + csv_number(b[i]);
  return s;
}

std::string base_label(const Point& b) {
  std::string s;
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? " " : "") + std::to_string(b[i]);
  return s;
}

}  // namespace

json to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["symbol_source"] = c.symbol_source;
  j["symbol"] = c.symbol;
  j["d"] = c.dim;
  if (c.n_max) j["nmax"] = *c.n_max;
  if (c.k_max) j["kmax"] = *c.k_max;
  if (c.j_min) j["jmin"] = *c.j_min;
  if (c.j_max) j["jmax"] = *c.j_max;
  if (c.base_range) j["base_range"] = box_to_json(*c.base_range);
  j["p"] = c.p_list;
  j["n"] = c.n_list;
  j["restarts"] = c.restarts;
  j["iterations"] = c.iterations;
  j["seed"] = c.seed;
  j["amp"] = c.amp;
  j["trials"] = c.trials;
  j["threshold"] = c.threshold ? number(*c.threshold) : json(nullptr);
  j["out"] = c.out;
  j["format"] = c.format;
  j["extra"] = c.extra;
  return j;
}

json to_json(const ConditionReport& r) {
  json j;
  j["checker"] = r.checker;
  j["symbol"] = r.symbol;
  j["d"] = r.dim;
  j["constants"] = {{"C1", number(r.C1)}, {"C2", number(r.C2)}, {"C3", number(r.C3)}, {"A", number(r.A)}};
  j["overall"] = number(r.overall());
  j["levels"] = {r.level_min, r.level_max};
  json sup = json::array();
  for (double v : r.level_sup) sup.push_back(number(v));
  j["level_sup"] = sup;
  j["non_uniform"] = r.non_uniform;
  if (!r.table.empty()) {
    j["base_range"] = box_to_json(r.base_range);
    j["differences"] = r.differences;
    json rows = json::array();
    for (const auto& e : r.table)
      rows.push_back({{"level", e.level}, {"orientation", to_string(e.orientation)}, {"term", e.term},
                      {"base", e.base}, {"sum", number(e.sum)}});
    j["table"] = rows;
  }
  if (!r.continuous_table.empty()) {
    j["partials"] = r.partials;
    json rows = json::array();
    for (const auto& e : r.continuous_table)
      rows.push_back({{"level", e.level}, {"orientation", to_string(e.orientation)}, {"term", e.term},
                      {"base", e.base}, {"integral", number(e.integral)}});
    j["continuous_table"] = rows;
  }
  return j;
}

json labeled_matrix_to_json(const LabeledMatrix& A) {
  json entries = json::array();
  for (Index i = 0; i < A.entries().rows(); ++i)
    for (Index k = 0; k < A.entries().cols(); ++k) entries.push_back(complex_to_json(A.entries()(i, k)));
  return {{"rows", box_to_json(A.rows())}, {"cols", box_to_json(A.cols())}, {"entries", entries}};
}

json to_json(const EstimateResult& r, bool with_witness) {
  json j;
  j["value"] = number(r.value);
  j["p"] = number(r.p);
  j["window"] = box_to_json(r.window);
  j["amplification"] = r.amplification;
  j["restarts"] = r.restarts;
  j["iterations"] = r.iterations;
  j["seed"] = r.seed;
  j["zero_symbol"] = r.zero_symbol;
  if (with_witness) j["witness"] = labeled_matrix_to_json(r.witness);
  return j;
}

json to_json(const GrowthRow& row) {
  return {{"symbol", row.symbol},
          {"d", row.dim},
          {"p", number(row.p)},
          {"N", row.N},
          {"k_amp", row.amplification},
          {"estimate", number(row.estimate)},
          {"reference", number(row.reference)},
          {"ratio", number(row.ratio)},
          {"restarts", row.restarts},
          {"iterations", row.iterations},
          {"seed", row.seed}};
}

json to_json(const LittlewoodPaleyReport& r) {
  json ratios = json::array();
  for (double v : r.rectangle_ratios) ratios.push_back(number(v));
  return {{"p", number(r.p)},
          {"grid_points", r.grid_points},
          {"lp_norm", number(r.lp_norm)},
          {"block_ratio", number(r.block_ratio)},
          {"smooth_ratio", number(r.smooth_ratio)},
          {"rectangle_ratios", ratios},
          {"reference", number(r.reference)},
          {"levels", r.levels}};
}

std::string exponent_label(double p, const std::vector<std::string>& typed) {
  for (const auto& t : typed) {
    try {
      if (parse_exponent(t) == p) return t;
    } catch (const std::exception&) {
    }
  }
  return format_exponent(p);
}

std::string condition_report_csv(const ConditionReport& r) {
  std::ostringstream os;
  os << "kind,level,orientation,term,base,value\n";
  for (const auto& [name, v] : {std::pair{"C1", r.C1}, {"C2", r.C2}, {"C3", r.C3}, {"A", r.A}})
    os << "constant,,," << name << ",," << csv_number(v) << "\n";
  for (const auto& e : r.table)
    os << "block," << e.level << "," << to_string(e.orientation) << "," << e.term << "," << base_label(e.base) << ","
       << csv_number(e.sum) << "\n";
  for (const auto& e : r.continuous_table)
    os << "continuous," << e.level << "," << to_string(e.orientation) << "," << e.term << "," << base_label(e.base)
       << "," << csv_number(e.integral) << "\n";
  return os.str();
}

std::string growth_csv(const std::vector<GrowthRow>& rows, const std::vector<std::string>& p_labels) {
  std::ostringstream os;
  os << "symbol,d,p,N,k_amp,estimate,reference,ratio,restarts,iterations,seed\n";
  for (const auto& r : rows)
    os << r.symbol << "," << r.dim << "," << exponent_label(r.p, p_labels) << "," << r.N << "," << r.amplification
       << "," << csv_number(r.estimate) << "," << csv_number(r.reference) << "," << csv_number(r.ratio) << ","
       << r.restarts << "," << r.iterations << "," << r.seed << "\n";
  return os.str();
}

std::string growth_gnuplot(const std::vector<GrowthRow>& rows, const std::vector<std::string>& p_labels) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i == 0 || rows[i].p != rows[i - 1].p) {
      if (!first) os << "\n\n";
      first = false;
      os << "# p = " << exponent_label(rows[i].p, p_labels) << "\n# N estimate reference\n";
    }
    os << rows[i].N << " " << csv_number(rows[i].estimate) << " " << csv_number(rows[i].reference) << "\n";
  }
  return os.str();
}

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string json_document(const RunConfig& c, const json& data, const std::string& generated) {
  json doc;
  doc["header"] = {{"tool", "schurmarc"}, {"generated", generated}};
  doc["config"] = to_json(c);
  doc["data"] = data;
  return doc.dump(2) + "\n";
}

std::string csv_document(const RunConfig& c, const std::string& body, const std::string& generated,
                         const std::string& comment) {
  return comment + " generated: " + generated + "\n" + comment + " config: " + to_json(c).dump() + "\n" + body;
}

std::string data_section(const std::string& document) {
  if (!document.empty() && document.front() == '{') return json::parse(document).at("data").dump();
  std::istringstream in(document);
  std::string line, rest;
  bool header = true;
  while (std::getline(in, line)) {
    if (header && !line.empty() && line.front() == '#') continue;
    header = false;
    rest += line + "\n";
  }
  return rest;
}

}  // namespace schurmarc
