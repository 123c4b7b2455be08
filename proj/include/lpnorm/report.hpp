#ifndef LPNORM_REPORT_HPP
#define LPNORM_REPORT_HPP

// JSON and CSV serialization of every report type. Non-finite doubles become
// JSON null; CSV rows use the fixed column set of csv_header().

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpnorm/certificates.hpp"
#include "lpnorm/copson.hpp"
#include "lpnorm/factorable.hpp"
#include "lpnorm/hlp.hpp"
#include "lpnorm/norm_probe.hpp"
#include "lpnorm/strengthened.hpp"

namespace lpnorm {

using Json = nlohmann::ordered_json;

/// A double, or null when it is NaN or infinite.
Json number(double v);
Json index_or_null(const std::optional<std::size_t>& v);

Json to_json(const FactorableSpec& spec);
Json to_json(const NormEstimate& est);
Json to_json(const CertificateReport& r);
/// Traces longer than 1000 keep every index up to 1000, then powers of two,
/// the last index and any violation index.
Json to_json(const MuTrace& t);
Json to_json(const RootResult& r);
Json to_json(const Ineq36Report& r);
Json to_json(const CopsonReport& r);
Json to_json(const StrengthenedReport& r);
Json to_json(const MuChoiceReport& r);
Json to_json(const Thm114Result& r);
Json to_json(const Thm115Report& r);
Json to_json(const SearchCResult& r);
Json to_json(const DualTrialReport& r);

/// Indices (1-based) retained when a trace of length n is decimated.
std::vector<std::size_t> decimated_indices(std::size_t n, const std::vector<std::size_t>& keep = {});

/// One line of the fixed CSV layout method,p,L,c,alpha,N,pass,first_fail,worst_margin,bound.
struct CsvRow {
  std::string method;
  double p = kNaN;
  double L = kNaN;
  double c = kNaN;
  double alpha = kNaN;
  std::size_t n = 0;
  bool pass = true;
  std::optional<std::size_t> first_fail;
  double worst_margin = kNaN;
  double bound = kNaN;
};

std::string csv_header();
std::string csv_line(const CsvRow& row);
CsvRow csv_row(const CertificateReport& r);

/// Shortest round-trip decimal form; empty for non-finite values.
std::string format_double(double v);

}  // namespace lpnorm

#endif  // LPNORM_REPORT_HPP
