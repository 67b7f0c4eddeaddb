#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "strengthlab/analytic.hpp"
#include "strengthlab/calculus.hpp"
#include "strengthlab/experiments.hpp"
#include "strengthlab/poly.hpp"
#include "strengthlab/rank.hpp"

namespace strengthlab {

using Json = nlohmann::ordered_json;

/// {"p", "s", "n", "terms": [{"exps": [...], "coeff": c}]}, plus "d" when a
/// degree is declared. For s > 1 the coefficient is its digit array over
/// F_p, lowest power of the generator first.
Json poly_to_json(const Polynomial& P, std::optional<unsigned> declared_degree = std::nullopt);

struct PolynomialInput {
  Polynomial poly;
  std::optional<unsigned> declared_degree;
};

/// Throws InvalidArgument on malformed documents.
PolynomialInput poly_from_json(const Json& j);

/// {"d", "n", "p", "s", "coeffs": [{"idx": [...], "coeff": c}]}
Json form_to_json(const MultilinearForm& M);
Json counts_to_json(const CharacterCountVector& c);
Json norm_to_json(const NormValue& v);
Json rational_to_json(const Rational& r);
Json rank_to_json(const RankResult& r);
Json profile_to_json(const DerivativeProfile& prof);
Json extension_summary_to_json(const ExtensionRankSummary& summary);
Json point_to_json(const VectorPoint& x, const Field& field);

Json report_to_json(const VerificationReport& report, const ExperimentOptions& options);
Json record_to_json(const ScanRecord& rec);
/// Throws InvalidArgument on malformed documents; the derived fields are
/// taken as stored.
ScanRecord record_from_json(const Json& j);
Json records_to_json(const std::vector<ScanRecord>& records);
std::vector<ScanRecord> records_from_json(const Json& j);
Json table_to_json(const EmpiricalCTable& table, const std::vector<ScanRecord>& records);

/// p,n,d,index_or_seed,poly_json,max_deriv_rank,rank,gowers_top_num,gowers_top_den
std::string records_to_csv(const std::vector<ScanRecord>& records);
/// r,count,max_rank,witness_poly_json
std::string table_to_csv(const EmpiricalCTable& table, const std::vector<ScanRecord>& records);

/// Two-space indented JSON followed by a newline.
std::string dump(const Json& j);

}  // namespace strengthlab
