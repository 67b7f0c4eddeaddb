#pragma once

// Brute-force reference computations used to freeze expected values. They
// work on value tables over F_p and share no code with the library beyond
// reading a polynomial's term map.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <unordered_set>
#include <vector>

#include "strengthlab/poly.hpp"

namespace oracle {

using Table = std::vector<std::uint32_t>;

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

inline std::vector<std::uint32_t> point(std::uint64_t idx, std::uint32_t p, std::size_t n) {
  std::vector<std::uint32_t> x(n);
  for (auto& c : x) {
    c = static_cast<std::uint32_t>(idx % p);
    idx /= p;
  }
  return x;
}

inline std::uint64_t index_of(const std::vector<std::uint32_t>& x, std::uint32_t p) {
  std::uint64_t idx = 0;
  for (std::size_t k = x.size(); k-- > 0;) idx = idx * p + x[k];
  return idx;
}

/// Values of P at every point of F_p^n, x1 least significant.
inline Table table(const strengthlab::Polynomial& P) {
  const std::uint32_t p = P.field().characteristic();
  const std::size_t n = P.num_vars();
  Table out(ipow(p, static_cast<unsigned>(n)));
  for (std::uint64_t i = 0; i < out.size(); ++i) {
    const auto x = point(i, p, n);
    std::uint64_t acc = 0;
    for (const auto& [m, c] : P.terms()) {
      std::uint64_t v = c;
      for (std::size_t k = 0; k < n; ++k) {
        for (unsigned e = 0; e < m.exps[k]; ++e) v = v * x[k] % p;
      }
      acc = (acc + v) % p;
    }
    out[i] = static_cast<std::uint32_t>(acc);
  }
  return out;
}

/// counts[j] = #{(v, h_1..h_m) : m-fold alternating sum of F equals j}.
inline std::vector<std::uint64_t> gowers_counts(const Table& F, std::uint32_t p, std::size_t n, unsigned m) {
  const std::uint64_t N = F.size();
  std::vector<std::uint64_t> counts(p, 0);
  std::vector<std::uint64_t> tuple(m + 1, 0);
  for (;;) {
    const auto v = point(tuple[0], p, n);
    std::int64_t acc = 0;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      auto x = v;
      for (unsigned k = 0; k < m; ++k) {
        if (mask >> k & 1) {
          const auto h = point(tuple[k + 1], p, n);
          for (std::size_t i = 0; i < n; ++i) x[i] = (x[i] + h[i]) % p;
        }
      }
      const int sign = (m - static_cast<unsigned>(__builtin_popcount(mask))) % 2 ? -1 : 1;
      acc += sign * static_cast<std::int64_t>(F[index_of(x, p)]);
    }
    ++counts[static_cast<std::size_t>(((acc % p) + p) % p)];
    std::size_t k = 0;
    while (k <= m && ++tuple[k] == N) tuple[k++] = 0;
    if (k > m) break;
  }
  return counts;
}

inline double character_average(const std::vector<std::uint64_t>& counts) {
  double re = 0, total = 0;
  const double p = static_cast<double>(counts.size());
  for (std::size_t j = 0; j < counts.size(); ++j) {
    re += static_cast<double>(counts[j]) * std::cos(2 * std::numbers::pi * static_cast<double>(j) / p);
    total += static_cast<double>(counts[j]);
  }
  return re / total;
}

/// Tables of all homogeneous forms of degree e in n variables over F_p.
inline std::vector<Table> forms_of_degree(std::uint32_t p, std::size_t n, unsigned e) {
  const auto basis = strengthlab::monomials_of_degree(n, e);
  const std::uint64_t N = ipow(p, static_cast<unsigned>(n));
  std::vector<Table> monos;
  for (const auto& m : basis) {
    Table t(N);
    for (std::uint64_t i = 0; i < N; ++i) {
      const auto x = point(i, p, n);
      std::uint64_t v = 1;
      for (std::size_t k = 0; k < n; ++k) {
        for (unsigned a = 0; a < m.exps[k]; ++a) v = v * x[k] % p;
      }
      t[i] = static_cast<std::uint32_t>(v);
    }
    monos.push_back(std::move(t));
  }
  std::vector<Table> out;
  const std::uint64_t count = ipow(p, static_cast<unsigned>(basis.size()));
  for (std::uint64_t c = 0; c < count; ++c) {
    const auto coeffs = point(c, p, basis.size());
    Table t(N, 0);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      for (std::uint64_t i = 0; i < N; ++i) t[i] = static_cast<std::uint32_t>((t[i] + coeffs[k] * monos[k][i]) % p);
    }
    out.push_back(std::move(t));
  }
  return out;
}

inline std::string key(const Table& t) { return std::string(t.begin(), t.end()); }

/// Rank of a homogeneous degree-d function (d < p, so functions and reduced
/// polynomials correspond) by matching against sums of at most two products
/// of lower-degree forms. Returns 3 when the rank exceeds 2.
class RankOracle {
 public:
  RankOracle(std::uint32_t p, std::size_t n, unsigned d) : p_(p) {
    for (unsigned e = 1; 2 * e <= d; ++e) {
      const auto low = forms_of_degree(p, n, e);
      const auto high = forms_of_degree(p, n, d - e);
      for (const auto& a : low) {
        for (const auto& b : high) {
          Table t(a.size());
          for (std::size_t i = 0; i < t.size(); ++i) t[i] = a[i] * b[i] % p;
          if (products_.insert(key(t)).second) list_.push_back(std::move(t));
        }
      }
    }
  }

  unsigned rank(const Table& f) const {
    if (std::all_of(f.begin(), f.end(), [](std::uint32_t v) { return v == 0; })) return 0;
    if (products_.count(key(f))) return 1;
    Table diff(f.size());
    for (const auto& s : list_) {
      for (std::size_t i = 0; i < f.size(); ++i) diff[i] = (f[i] + p_ - s[i]) % p_;
      if (products_.count(key(diff))) return 2;
    }
    return 3;
  }

 private:
  std::uint32_t p_;
  std::unordered_set<std::string> products_;
  std::vector<Table> list_;
};

}  // namespace oracle
