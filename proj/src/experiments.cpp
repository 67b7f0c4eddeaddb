#include "strengthlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "strengthlab/calculus.hpp"
#include "strengthlab/error.hpp"
#include "strengthlab/parallel.hpp"

namespace strengthlab {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::vector<MultiIndex> monomials_up_to(std::size_t n, unsigned d) {
  std::vector<MultiIndex> all;
  for (unsigned e = d + 1; e-- > 0;) {
    auto part = monomials_of_degree(n, e);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

std::vector<Elem> random_vector(const Field& f, std::size_t len, CounterRng& rng) {
  std::vector<Elem> v(len);
  for (auto& c : v) c = static_cast<Elem>(rng.uniform(f.size()));
  return v;
}

bool all_zero(const std::vector<Elem>& v) {
  return std::all_of(v.begin(), v.end(), [](Elem c) { return c == 0; });
}

Rational exact_top_from_counts(const CharacterCountVector& c) {
  // A nonzero multilinear form takes every nonzero residue equally often on
  // its last slot, so the character sum collapses to c_0 - c_1.
  for (std::size_t j = 2; j < c.counts.size(); ++j) {
    if (c.counts[j] != c.counts[1]) fail(ErrorKind::Internal, "nonuniform residue counts");
  }
  const auto c1 = c.counts.size() > 1 ? c.counts[1] : 0;
  return Rational(static_cast<std::int64_t>(c.counts[0]) - static_cast<std::int64_t>(c1),
                  static_cast<std::int64_t>(c.total));
}

void check_scan_params(std::uint32_t p, unsigned d, const std::string& what) {
  if (d < 3) fail(ErrorKind::DegreeTooSmall, what + ": degree must be at least 3");
  PrimeModulus(p).require_char_above(d, what);
}

}  // namespace

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::next_word() {
  const std::uint64_t k = (stream_ << 32) + counter_ + 1;
  ++counter_;
  return splitmix64_mix(seed_ + kGolden * k);
}

std::uint64_t CounterRng::uniform(std::uint64_t bound) {
  if (bound == 0) fail(ErrorKind::InvalidArgument, "uniform: empty range");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % bound + 1) % bound;  // accept x <= limit
  for (;;) {
    const std::uint64_t x = next_word();
    if (x <= limit) return x % bound;
  }
}

Polynomial random_homogeneous(const Field& field, std::size_t n, unsigned d, CounterRng& rng) {
  const auto basis = monomials_of_degree(n, d);
  for (;;) {
    auto coeffs = random_vector(field, basis.size(), rng);
    if (!all_zero(coeffs)) return from_coefficients(field, n, basis, coeffs);
  }
}

Polynomial random_polynomial(const Field& field, std::size_t n, unsigned d, CounterRng& rng) {
  const auto basis = monomials_up_to(n, d);
  return from_coefficients(field, n, basis, random_vector(field, basis.size(), rng));
}

bool VerificationReport::all_passed() const {
  return !first_failure && std::all_of(checks.begin(), checks.end(), [](const CheckTally& c) { return c.failed == 0; });
}

VerificationReport verify_identities(std::uint32_t p, std::size_t n, unsigned d, std::uint64_t trials,
                                     std::uint64_t seed, const ExperimentOptions& options) {
  const Field field = Field::prime(p);
  field.modulus().require_char_above(d, "verify");
  if (d < 1) fail(ErrorKind::InvalidDegree, "verify: degree must be positive");

  VerificationReport report;
  report.p = p;
  report.n = n;
  report.d = d;
  report.trials = trials;
  report.seed = seed;
  for (const char* name : {"diagonal_reconstruction", "gowers_recursion", "top_degree", "derivative_rank",
                           "phase_invariance"}) {
    report.checks.push_back({name, 0, 0});
  }
  if (trials == 0) return report;

  const AnalyticOptions analytic{options.budget, options.threads};
  const RankOptions rank_opts{options.rank_budget, options.threads};
  const PointSpace space(field, n);
  const auto directions = space.projective_points();

  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    CounterRng rng(seed, trial);
    const Polynomial P = random_homogeneous(field, n, d, rng);
    const Polynomial Q = random_polynomial(field, n, d - 1, rng);

    auto record = [&](std::size_t check, bool ok, const std::string& detail) {
      auto& tally = report.checks[check];
      (ok ? tally.passed : tally.failed) += 1;
      if (!ok && !report.first_failure) {
        report.first_failure = VerificationFailure{tally.name, trial, P, detail};
      }
    };

    record(0, diagonal_reconstruct(multilinearize(P)) == P, "diagonal reconstruction differs from P");

    const NormValue direct = gowers_norm(value_table(P), d, analytic);
    const NormValue recursive = gowers_recursive(P, d, analytic);
    record(1, direct.counts == recursive.counts, "direct and recursive U_d count vectors differ");

    const Rational top = gowers_top_exact(P, d, analytic);
    const bool exact_ok = exact_top_from_counts(direct.counts) == top;
    const bool float_ok = std::abs(top.to_double() - direct.value) <= direct.error_bound;
    record(2, exact_ok && float_ok, "top-degree value " + top.str() + " disagrees with direct enumeration");

    bool ranks_ok = true;
    std::string rank_detail;
    if (d >= 3) {
      for (const auto& t : directions) {
        const Polynomial Pt = directional_derivative(P, t);
        if (Pt.is_zero()) {
          ++report.exceptional_directions;
          continue;
        }
        const auto via_delta = rank(homogeneous_part(delta(P, t), d - 1), d - 1, rank_opts).rank;
        const auto via_deriv = rank(Pt, d - 1, rank_opts).rank;
        if (via_delta != via_deriv) {
          ranks_ok = false;
          rank_detail = "rank mismatch at direction index " + std::to_string(space.encode(t));
          break;
        }
      }
    }
    record(3, ranks_ok, rank_detail);

    const NormValue shifted = gowers_norm(value_table(P + Q), d, analytic);
    record(4, shifted.counts == direct.counts, "U_d counts change after adding a lower-degree polynomial");
  }
  return report;
}

ScanRecord recompute_record(const ScanRecord& record, const ExperimentOptions& options) {
  ScanRecord out = record;
  const RankOptions rank_opts{options.rank_budget, options.threads};
  out.max_derivative_rank = derivative_rank_profile(record.poly, record.d, rank_opts).max_rank;
  const auto r = rank(record.poly, record.d, rank_opts);
  if (!r.rank) fail(ErrorKind::Internal, "rank search did not terminate below n");
  out.rank = *r.rank;
  out.gowers_top = gowers_top_exact(record.poly, record.d, {options.budget, options.threads});
  return out;
}

std::vector<ScanRecord> scan(const ScanParams& params, const ExperimentOptions& options) {
  check_scan_params(params.p, params.d, "scan");
  const Field field = Field::prime(params.p);
  const auto basis = monomials_of_degree(params.n, params.d);

  std::uint64_t count = 0;
  if (params.mode == ScanMode::Exhaustive) {
    const std::uint64_t vectors = saturating_power(params.p, basis.size());
    if (vectors > params.budget) {
      fail(ErrorKind::BudgetExceeded, "scan: " + std::to_string(params.p) + "^" + std::to_string(basis.size()) +
                                          " coefficient vectors exceed budget " + std::to_string(params.budget));
    }
    count = vectors - 1;
  } else {
    count = params.samples;
  }

  std::vector<ScanRecord> records(count);
  ExperimentOptions inner = options;
  inner.threads = 1;
  parallel_ranges(count, resolve_threads(options.threads), [&](unsigned, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      ScanRecord rec;
      rec.p = params.p;
      rec.n = params.n;
      rec.d = params.d;
      rec.mode = params.mode;
      if (params.mode == ScanMode::Exhaustive) {
        rec.index = i + 1;
        std::vector<Elem> coeffs(basis.size());
        std::uint64_t rest = rec.index;
        for (auto& c : coeffs) {
          c = static_cast<Elem>(rest % params.p);
          rest /= params.p;
        }
        rec.poly = from_coefficients(field, params.n, basis, coeffs);
      } else {
        rec.index = i;
        rec.seed = params.seed;
        CounterRng rng(params.seed, i);
        rec.poly = random_homogeneous(field, params.n, params.d, rng);
      }
      records[i] = recompute_record(rec, inner);
    }
  });
  return records;
}

EmpiricalCTable empirical_C(const std::vector<ScanRecord>& records) {
  EmpiricalCTable table;
  if (records.empty()) return table;
  table.p = records.front().p;
  table.n = records.front().n;
  table.d = records.front().d;
  unsigned top_r = 0;
  for (const auto& rec : records) {
    if (rec.p != table.p || rec.n != table.n || rec.d != table.d) {
      fail(ErrorKind::MixedParameters, "empirical_C: records mix (p, n, d) parameters");
    }
    top_r = std::max(top_r, rec.max_derivative_rank);
  }

  for (unsigned r = 0; r <= top_r; ++r) {
    EmpiricalCRow row;
    row.r = r;
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (records[i].max_derivative_rank > r) continue;
      ++row.count;
      if (!row.max_rank || records[i].rank > *row.max_rank) {
        row.max_rank = records[i].rank;
        row.witness = i;
      }
    }
    table.rows.push_back(row);
  }

  std::map<unsigned, GowersTopMinimum> minima;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    auto [it, inserted] = minima.try_emplace(rec.rank, GowersTopMinimum{rec.rank, 0, rec.gowers_top, i});
    auto& m = it->second;
    ++m.count;
    if (rec.gowers_top < m.minimum) {
      m.minimum = rec.gowers_top;
      m.witness = i;
    }
  }
  for (auto& [_, m] : minima) table.gowers_top_minima.push_back(m);
  return table;
}

}  // namespace strengthlab
