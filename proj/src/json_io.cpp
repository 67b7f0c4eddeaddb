#include "strengthlab/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "strengthlab/error.hpp"

namespace strengthlab {

namespace {

// Presentation rounding to 15 significant digits; far below every reported
// error bound, and keeps values like 0.2 from printing as 0.19999999999999998.
double present(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr);
}

Json coeff_to_json(const Field& f, Elem c) {
  if (f.degree() == 1) return c;
  return f.digits(c);
}

[[noreturn]] void malformed(const std::string& what) { fail(ErrorKind::InvalidArgument, "malformed JSON: " + what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing \"") + key + "\"");
  return j.at(key);
}

std::uint64_t get_uint(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) malformed(std::string("\"") + key + "\" must be a non-negative integer");
  return v.get<std::uint64_t>();
}

Elem coeff_from_json(const Field& f, const Json& c) {
  if (c.is_number_integer()) return f.from_int(c.get<std::int64_t>());
  if (c.is_array() && f.degree() > 1) {
    if (c.size() > f.degree()) malformed("coefficient has too many digits");
    std::vector<Elem> digits;
    for (const auto& d : c) {
      if (!d.is_number_integer()) malformed("coefficient digits must be integers");
      digits.push_back(f.modulus().reduce(d.get<std::int64_t>()));
    }
    return f.from_digits(digits);
  }
  malformed("coefficient must be an integer" + std::string(f.degree() > 1 ? " or digit array" : ""));
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

const char* mode_name(ScanMode m) { return m == ScanMode::Exhaustive ? "exhaustive" : "sample"; }

}  // namespace

Json poly_to_json(const Polynomial& P, std::optional<unsigned> declared_degree) {
  const Field& f = P.field();
  Json j;
  j["p"] = f.characteristic();
  j["s"] = f.degree();
  j["n"] = P.num_vars();
  if (declared_degree) j["d"] = *declared_degree;
  Json terms = Json::array();
  for (const auto& [m, c] : P.terms()) {
    terms.push_back({{"exps", m.exps}, {"coeff", coeff_to_json(f, c)}});
  }
  j["terms"] = std::move(terms);
  return j;
}

PolynomialInput poly_from_json(const Json& j) {
  const auto p = get_uint(j, "p");
  const auto n = get_uint(j, "n");
  const unsigned s = j.contains("s") ? static_cast<unsigned>(get_uint(j, "s")) : 1;
  const Field f = s == 1 ? Field::prime(p) : Field::of_degree(p, s);
  Polynomial P(f, n);
  const Json& terms = member(j, "terms");
  if (!terms.is_array()) malformed("\"terms\" must be an array");
  for (const auto& t : terms) {
    const Json& exps = member(t, "exps");
    if (!exps.is_array() || exps.size() != n) malformed("\"exps\" must list one exponent per variable");
    MultiIndex m;
    for (const auto& e : exps) {
      if (!e.is_number_integer() || e.get<std::int64_t>() < 0) malformed("exponents must be non-negative integers");
      m.exps.push_back(e.get<std::uint32_t>());
    }
    P.add_term(m, coeff_from_json(f, member(t, "coeff")));
  }
  std::optional<unsigned> d;
  if (j.contains("d")) d = static_cast<unsigned>(get_uint(j, "d"));
  return {std::move(P), d};
}

Json form_to_json(const MultilinearForm& M) {
  Json j;
  j["d"] = M.arity();
  j["n"] = M.num_vars();
  j["p"] = M.field().characteristic();
  j["s"] = M.field().degree();
  Json coeffs = Json::array();
  for (const auto& [key, c] : M.coeffs()) {
    Json idx = Json::array();
    for (auto i : key) idx.push_back(i + 1);  // 1-based like x1
    coeffs.push_back({{"idx", idx}, {"coeff", coeff_to_json(M.field(), c)}});
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

Json counts_to_json(const CharacterCountVector& c) {
  return {{"p", c.p},
          {"counts", c.counts},
          {"total", c.total},
          {"magnitude", present(c.magnitude())},
          {"error_bound", character_error_bound(c.p)}};
}

Json norm_to_json(const NormValue& v) {
  return {{"m", v.m},
          {"counts", v.counts.counts},
          {"total", v.counts.total},
          {"value", present(v.value)},
          {"norm", present(v.norm())},
          {"error_bound", v.error_bound}};
}

Json rational_to_json(const Rational& r) { return {{"num", r.num()}, {"den", r.den()}}; }

Json rank_to_json(const RankResult& r) {
  Json j;
  if (r.rank) {
    j["rank"] = *r.rank;
    j["field"] = {{"p", r.p}, {"s", r.s}};
    Json cert = Json::array();
    for (const auto& summand : r.certificate) {
      cert.push_back({{"L", poly_to_json(summand.L)}, {"R", poly_to_json(summand.R)}});
    }
    j["certificate"] = std::move(cert);
  } else {
    j["rank_gt"] = r.searched_up_to;
    j["field"] = {{"p", r.p}, {"s", r.s}};
    Json patterns = Json::array();
    for (const auto& pat : r.exhaustion.patterns) patterns.push_back({pat.low, pat.high});
    j["exhausted"] = {{"patterns", patterns}, {"tuples_searched", r.exhaustion.tuples_searched}};
  }
  j["method"] = r.method;
  return j;
}

Json point_to_json(const VectorPoint& x, const Field& field) {
  Json j = Json::array();
  for (auto c : x.coords) j.push_back(coeff_to_json(field, c));
  return j;
}

Json profile_to_json(const DerivativeProfile& prof) {
  // Directions are over the prime field here, so codes print as integers.
  Json entries = Json::array();
  for (const auto& e : prof.entries) {
    entries.push_back({{"t", e.direction.coords}, {"rank", e.rank}, {"zero_derivative", e.zero_derivative}});
  }
  Json zeros = Json::array();
  for (const auto& t : prof.zero_directions) zeros.push_back(t.coords);
  return {{"max_rank", prof.max_rank}, {"directions", entries}, {"zero_directions", zeros}};
}

Json extension_summary_to_json(const ExtensionRankSummary& summary) {
  Json results = Json::array();
  for (const auto& r : summary.results) results.push_back(rank_to_json(r));
  Json j;
  j["results"] = std::move(results);
  if (summary.closure_upper_bound) {
    j["closure_upper_bound"] = *summary.closure_upper_bound;
  } else {
    j["closure_upper_bound"] = nullptr;
  }
  return j;
}

Json report_to_json(const VerificationReport& report, const ExperimentOptions& options) {
  Json j;
  j["generator"] = {{"algorithm", CounterRng::kAlgorithm},
                    {"golden_gamma", "0x9E3779B97F4A7C15"},
                    {"stream_shift", 32},
                    {"seed", report.seed}};
  j["params"] = {{"p", report.p}, {"n", report.n}, {"d", report.d}, {"trials", report.trials},
                 {"budget", options.budget}, {"rank_budget", options.rank_budget}};
  Json checks = Json::object();
  for (const auto& c : report.checks) checks[c.name] = {{"passed", c.passed}, {"failed", c.failed}};
  j["checks"] = std::move(checks);
  j["exceptional_directions"] = report.exceptional_directions;
  j["all_passed"] = report.all_passed();
  if (report.first_failure) {
    const auto& f = *report.first_failure;
    j["first_failure"] = {{"check", f.check},
                          {"trial", f.trial},
                          {"seed", report.seed},
                          {"poly", poly_to_json(f.poly, report.d)},
                          {"poly_text", to_string(f.poly)},
                          {"detail", f.detail}};
  } else {
    j["first_failure"] = nullptr;
  }
  return j;
}

Json record_to_json(const ScanRecord& rec) {
  Json j;
  j["p"] = rec.p;
  j["n"] = rec.n;
  j["d"] = rec.d;
  j["mode"] = mode_name(rec.mode);
  j["index"] = rec.index;
  if (rec.mode == ScanMode::Sample) j["seed"] = rec.seed;
  j["poly"] = poly_to_json(rec.poly);
  j["max_derivative_rank"] = rec.max_derivative_rank;
  j["rank"] = rec.rank;
  j["gowers_top"] = rational_to_json(rec.gowers_top);
  return j;
}

ScanRecord record_from_json(const Json& j) {
  ScanRecord rec;
  rec.p = static_cast<std::uint32_t>(get_uint(j, "p"));
  rec.n = get_uint(j, "n");
  rec.d = static_cast<unsigned>(get_uint(j, "d"));
  const Json& mode = member(j, "mode");
  if (mode == "exhaustive") {
    rec.mode = ScanMode::Exhaustive;
  } else if (mode == "sample") {
    rec.mode = ScanMode::Sample;
    rec.seed = get_uint(j, "seed");
  } else {
    malformed("\"mode\" must be \"exhaustive\" or \"sample\"");
  }
  rec.index = get_uint(j, "index");
  rec.poly = poly_from_json(member(j, "poly")).poly;
  rec.max_derivative_rank = static_cast<unsigned>(get_uint(j, "max_derivative_rank"));
  rec.rank = static_cast<unsigned>(get_uint(j, "rank"));
  const Json& g = member(j, "gowers_top");
  const Json& num = member(g, "num");
  if (!num.is_number_integer()) malformed("\"num\" must be an integer");
  rec.gowers_top = Rational(num.get<std::int64_t>(), static_cast<std::int64_t>(get_uint(g, "den")));
  return rec;
}

Json records_to_json(const std::vector<ScanRecord>& records) {
  Json arr = Json::array();
  for (const auto& r : records) arr.push_back(record_to_json(r));
  return {{"generator", CounterRng::kAlgorithm}, {"records", arr}};
}

std::vector<ScanRecord> records_from_json(const Json& j) {
  const Json& arr = j.is_array() ? j : member(j, "records");
  if (!arr.is_array()) malformed("\"records\" must be an array");
  std::vector<ScanRecord> out;
  out.reserve(arr.size());
  for (const auto& r : arr) out.push_back(record_from_json(r));
  return out;
}

Json table_to_json(const EmpiricalCTable& table, const std::vector<ScanRecord>& records) {
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json r;
    r["r"] = row.r;
    r["count"] = row.count;
    if (row.max_rank) {
      r["max_rank"] = *row.max_rank;
      r["witness"] = record_to_json(records.at(*row.witness));
    } else {
      r["max_rank"] = nullptr;
      r["witness"] = nullptr;
    }
    rows.push_back(std::move(r));
  }
  Json minima = Json::array();
  for (const auto& m : table.gowers_top_minima) {
    minima.push_back({{"rank", m.rank},
                      {"count", m.count},
                      {"min_gowers_top", rational_to_json(m.minimum)},
                      {"witness", record_to_json(records.at(m.witness))}});
  }
  Json j;
  j["label"] = "empirical lower bounds: row r is the largest rank seen among polynomials whose derivative ranks are all <= r";
  j["params"] = {{"p", table.p}, {"n", table.n}, {"d", table.d}, {"records", records.size()}};
  j["rows"] = std::move(rows);
  j["gowers_top_minima"] = std::move(minima);
  return j;
}

std::string records_to_csv(const std::vector<ScanRecord>& records) {
  std::ostringstream out;
  out << "p,n,d,index_or_seed,poly_json,max_deriv_rank,rank,gowers_top_num,gowers_top_den\n";
  for (const auto& r : records) {
    out << r.p << ',' << r.n << ',' << r.d << ',';
    if (r.mode == ScanMode::Exhaustive) {
      out << r.index;
    } else {
      out << r.seed << ':' << r.index;
    }
    out << ',' << csv_quote(poly_to_json(r.poly).dump()) << ',' << r.max_derivative_rank << ',' << r.rank << ','
        << r.gowers_top.num() << ',' << r.gowers_top.den() << '\n';
  }
  return out.str();
}

std::string table_to_csv(const EmpiricalCTable& table, const std::vector<ScanRecord>& records) {
  std::ostringstream out;
  out << "r,count,max_rank,witness_poly_json\n";
  for (const auto& row : table.rows) {
    out << row.r << ',' << row.count << ',';
    if (row.max_rank) {
      out << *row.max_rank << ',' << csv_quote(poly_to_json(records.at(*row.witness).poly).dump());
    } else {
      out << ',';
    }
    out << '\n';
  }
  return out.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace strengthlab
