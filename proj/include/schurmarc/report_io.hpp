// Machine-readable outputs: every document carries the resolved run
// configuration, and only the header holds a timestamp, so equal configs give
// byte-identical data sections.

#ifndef SCHURMARC_REPORT_IO_HPP
#define SCHURMARC_REPORT_IO_HPP

#include "json.hpp"
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schurmarc/estimator.hpp"
#include "schurmarc/marcinkiewicz.hpp"
#include "schurmarc/transference.hpp"

namespace schurmarc {

struct RunConfig {
  std::string command;
  /// "catalog" or "spec"
  std::string symbol_source;
  /// catalog name or spec path
  std::string symbol;
  int dim = 1;
  std::optional<int> n_max;
  std::optional<int> k_max;
  std::optional<int> j_min;
  std::optional<int> j_max;
  std::optional<Box> base_range;
  /// exponents as typed ("4/3" stays "4/3")
  std::vector<std::string> p_list;
  std::vector<Index> n_list;
  int restarts = 0;
  int iterations = 0;
  std::uint64_t seed = 0;
  int amp = 1;
  int trials = 0;
  std::optional<double> threshold;
  std::string out;
  std::string format = "json";
  /// command-specific settings
  nlohmann::json extra = nlohmann::json::object();
};

nlohmann::json to_json(const RunConfig& c);
nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const EstimateResult& r, bool with_witness = false);
nlohmann::json to_json(const GrowthRow& row);
nlohmann::json to_json(const LittlewoodPaleyReport& r);

nlohmann::json labeled_matrix_to_json(const LabeledMatrix& A);

/// label for an exponent: the typed form when one is known, else the decimal
std::string exponent_label(double p, const std::vector<std::string>& typed);

/// kind,level,orientation,term,base,value; constants first, then every sum
std::string condition_report_csv(const ConditionReport& r);

/// symbol,d,p,N,k_amp,estimate,reference,ratio,restarts,iterations,seed
std::string growth_csv(const std::vector<GrowthRow>& rows, const std::vector<std::string>& p_labels = {});

/// One block per p ("N estimate reference"), blocks separated by two blank
/// lines for gnuplot's `index`.
std::string growth_gnuplot(const std::vector<GrowthRow>& rows, const std::vector<std::string>& p_labels = {});

/// UTC, ISO 8601, seconds
std::string timestamp_utc();

/// {"header": {"tool", "generated"}, "config": ..., "data": ...}
std::string json_document(const RunConfig& c, const nlohmann::json& data, const std::string& generated);
/// "# " header lines (generated, config as one JSON line), then the CSV body
std::string csv_document(const RunConfig& c, const std::string& body, const std::string& generated,
                         const std::string& comment = "#");

/// The part of a document after its header: "data" for JSON, everything past
/// the comment lines for CSV.
std::string data_section(const std::string& document);

}  // namespace schurmarc

#endif  // SCHURMARC_REPORT_IO_HPP
