#include "strengthlab/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace strengthlab {

unsigned MultiIndex::degree() const noexcept {
  return std::accumulate(exps.begin(), exps.end(), 0u);
}

bool GradedLexGreater::operator()(const MultiIndex& a, const MultiIndex& b) const noexcept {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return std::lexicographical_compare(b.exps.begin(), b.exps.end(), a.exps.begin(), a.exps.end());
}

std::vector<MultiIndex> monomials_of_degree(std::size_t n, unsigned d) {
  std::vector<MultiIndex> out;
  if (n == 0) {
    if (d == 0) out.push_back(MultiIndex{});
    return out;
  }
  // exponents of x1 from high to low give graded-lex descending order
  std::vector<std::uint32_t> exps(n, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned remaining) -> void {
    if (i + 1 == n) {
      exps[i] = remaining;
      out.push_back(MultiIndex{exps});
      return;
    }
    for (unsigned e = remaining + 1; e-- > 0;) {
      exps[i] = e;
      self(self, i + 1, remaining - e);
    }
  };
  rec(rec, 0, d);
  return out;
}

// ---------------------------------------------------------------------------

PointSpace::PointSpace(Field field, std::size_t n) : field_(std::move(field)), n_(n), size_(1) {
  for (std::size_t i = 0; i < n_; ++i) {
    if (size_ > (std::uint64_t{1} << 62) / field_.size()) {
      fail(ErrorKind::SizeCap, "vector space too large to index");
    }
    size_ *= field_.size();
  }
}

std::uint64_t PointSpace::encode(const VectorPoint& x) const {
  if (x.coords.size() != n_) {
    fail(ErrorKind::DimensionMismatch, "point has " + std::to_string(x.coords.size()) +
                                           " coordinates, expected " + std::to_string(n_));
  }
  std::uint64_t index = 0;
  for (std::size_t i = n_; i-- > 0;) {
    if (x.coords[i] >= field_.size()) fail(ErrorKind::InvalidArgument, "coordinate is not a field element");
    index = index * field_.size() + x.coords[i];
  }
  return index;
}

VectorPoint PointSpace::decode(std::uint64_t index) const {
  VectorPoint x{std::vector<Elem>(n_, 0)};
  for (auto& c : x.coords) {
    c = static_cast<Elem>(index % field_.size());
    index /= field_.size();
  }
  return x;
}

std::uint64_t PointSpace::add(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t out = 0, scale = 1;
  const std::uint32_t q = field_.size();
  for (std::size_t i = 0; i < n_; ++i) {
    out += scale * field_.add(static_cast<Elem>(a % q), static_cast<Elem>(b % q));
    a /= q;
    b /= q;
    scale *= q;
  }
  return out;
}

std::uint64_t PointSpace::sub(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t out = 0, scale = 1;
  const std::uint32_t q = field_.size();
  for (std::size_t i = 0; i < n_; ++i) {
    out += scale * field_.sub(static_cast<Elem>(a % q), static_cast<Elem>(b % q));
    a /= q;
    b /= q;
    scale *= q;
  }
  return out;
}

std::vector<VectorPoint> PointSpace::projective_points() const {
  std::vector<VectorPoint> out;
  const std::uint32_t q = field_.size();
  for (std::size_t lead = 0; lead < n_; ++lead) {
    std::uint64_t tail_count = 1;
    for (std::size_t i = lead + 1; i < n_; ++i) tail_count *= q;
    for (std::uint64_t tail = 0; tail < tail_count; ++tail) {
      VectorPoint t{std::vector<Elem>(n_, 0)};
      t.coords[lead] = 1;
      std::uint64_t rest = tail;
      for (std::size_t i = lead + 1; i < n_; ++i) {
        t.coords[i] = static_cast<Elem>(rest % q);
        rest /= q;
      }
      out.push_back(std::move(t));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::optional<unsigned> Polynomial::degree() const noexcept {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first.degree();
}

bool Polynomial::is_homogeneous() const noexcept {
  if (terms_.empty()) return true;
  const unsigned d = terms_.begin()->first.degree();
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& kv) { return kv.first.degree() == d; });
}

Elem Polynomial::coefficient(const MultiIndex& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void Polynomial::add_term(const MultiIndex& m, Elem c) {
  if (m.exps.size() != n_) {
    fail(ErrorKind::DimensionMismatch, "monomial arity does not match polynomial");
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = field_.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::require_compatible(const Polynomial& o) const {
  if (!(field_ == o.field_)) fail(ErrorKind::InvalidArgument, "polynomials over different fields");
  if (n_ != o.n_) fail(ErrorKind::DimensionMismatch, "polynomials in different numbers of variables");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_compatible(o);
  Polynomial out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
  Polynomial out(field_, n_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, field_.neg(c));
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_compatible(o);
  Polynomial out(field_, n_);
  MultiIndex m{std::vector<std::uint32_t>(n_, 0)};
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      for (std::size_t i = 0; i < n_; ++i) m.exps[i] = ma.exps[i] + mb.exps[i];
      out.add_term(m, field_.mul(ca, cb));
    }
  }
  return out;
}

Polynomial Polynomial::scaled(Elem c) const {
  Polynomial out(field_, n_);
  if (c == 0) return out;
  for (const auto& [m, coeff] : terms_) out.terms_.emplace(m, field_.mul(coeff, c));
  return out;
}

// ---------------------------------------------------------------------------
// parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Field& field, std::size_t n)
      : text_(text), field_(field), n_(n) {}

  Polynomial run() {
    Polynomial out(field_, n_);
    skip_ws();
    if (at_end()) throw SyntaxError(pos_, "empty input");
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    for (;;) {
      parse_term(negate, out);
      skip_ws();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') throw SyntaxError(pos_, "expected '+' or '-'");
      negate = peek() == '-';
      ++pos_;
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool digit_ahead() const { return !at_end() && std::isdigit(static_cast<unsigned char>(peek())); }

  std::uint64_t read_small(const char* what) {
    if (!digit_ahead()) throw SyntaxError(pos_, std::string("expected ") + what);
    std::uint64_t v = 0;
    const std::size_t start = pos_;
    while (digit_ahead()) {
      v = v * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (v > (std::uint64_t{1} << 32)) throw SyntaxError(start, std::string(what) + " too large");
      ++pos_;
    }
    return v;
  }

  std::uint64_t optional_power() {
    skip_ws();
    if (at_end() || peek() != '^') return 1;
    ++pos_;
    skip_ws();
    return read_small("exponent");
  }

  void parse_term(bool negate, Polynomial& out) {
    Elem coeff = 1;
    MultiIndex m{std::vector<std::uint32_t>(n_, 0)};
    parse_factor(coeff, m);
    for (;;) {
      skip_ws();
      if (at_end() || peek() != '*') break;
      ++pos_;
      parse_factor(coeff, m);
    }
    out.add_term(m, negate ? field_.neg(coeff) : coeff);
  }

  void parse_factor(Elem& coeff, MultiIndex& m) {
    skip_ws();
    if (at_end()) throw SyntaxError(pos_, "expected a factor");
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t residue = 0;
      const std::uint32_t p = field_.characteristic();
      while (digit_ahead()) {
        residue = (residue * 10 + static_cast<std::uint64_t>(peek() - '0')) % p;
        ++pos_;
      }
      coeff = field_.mul(coeff, static_cast<Elem>(residue));
    } else if (c == 'x') {
      const std::size_t start = pos_;
      ++pos_;
      const std::uint64_t index = read_small("variable index");
      if (index < 1 || index > n_) {
        fail(ErrorKind::IndexOutOfRange, "variable x" + std::to_string(index) + " at offset " +
                                             std::to_string(start) + " outside x1..x" +
                                             std::to_string(n_));
      }
      m.exps[index - 1] += static_cast<std::uint32_t>(optional_power());
    } else if (c == 'a' && field_.degree() > 1) {
      ++pos_;
      const Elem generator = field_.characteristic();  // digit 1 set
      coeff = field_.mul(coeff, field_.pow(generator, optional_power()));
    } else {
      throw SyntaxError(pos_, std::string("unexpected character '") + c + "'");
    }
  }

  std::string_view text_;
  const Field& field_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

std::string monomial_text(const MultiIndex& m) {
  std::string out;
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    if (m.exps[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'x' + std::to_string(i + 1);
    if (m.exps[i] > 1) out += '^' + std::to_string(m.exps[i]);
  }
  return out;
}

}  // namespace

Polynomial parse(std::string_view text, const Field& field, std::size_t n) {
  return Parser(text, field, n).run();
}

Polynomial parse(std::string_view text, std::uint64_t p, std::size_t n) {
  return parse(text, Field::prime(p), n);
}

std::string to_string(const Polynomial& P) {
  if (P.is_zero()) return "0";
  const Field& field = P.field();
  std::string out;
  auto emit = [&](Elem digit, unsigned gen_power, const std::string& mono) {
    std::string term;
    auto append = [&](const std::string& factor) {
      if (!term.empty()) term += '*';
      term += factor;
    };
    if (digit != 1 || (gen_power == 0 && mono.empty())) append(std::to_string(digit));
    if (gen_power == 1) append("a");
    if (gen_power > 1) append("a^" + std::to_string(gen_power));
    if (!mono.empty()) append(mono);
    if (!out.empty()) out += " + ";
    out += term;
  };
  for (const auto& [m, c] : P.terms()) {
    const std::string mono = monomial_text(m);
    const auto digits = field.digits(c);
    for (unsigned k = 0; k < digits.size(); ++k) {
      if (digits[k] != 0) emit(digits[k], k, mono);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Elem evaluate(const Polynomial& P, const VectorPoint& x) {
  if (x.coords.size() != P.num_vars()) {
    fail(ErrorKind::DimensionMismatch, "point has " + std::to_string(x.coords.size()) +
                                           " coordinates, polynomial has " +
                                           std::to_string(P.num_vars()) + " variables");
  }
  const Field& f = P.field();
  Elem total = 0;
  for (const auto& [m, c] : P.terms()) {
    Elem term = c;
    for (std::size_t i = 0; i < m.exps.size() && term != 0; ++i) {
      if (m.exps[i] != 0) term = f.mul(term, f.pow(x.coords[i], m.exps[i]));
    }
    total = f.add(total, term);
  }
  return total;
}

namespace {

void require_dimension(const Polynomial& P, const VectorPoint& t) {
  if (t.coords.size() != P.num_vars()) {
    fail(ErrorKind::DimensionMismatch, "direction has " + std::to_string(t.coords.size()) +
                                           " coordinates, polynomial has " +
                                           std::to_string(P.num_vars()) + " variables");
  }
}

// Pascal row C(e, 0..e) mod p
std::vector<Elem> binomial_row(unsigned e, const PrimeModulus& p) {
  std::vector<Elem> row{1 % p.value()};
  for (unsigned k = 1; k <= e; ++k) {
    std::vector<Elem> next(k + 1, 0);
    next[0] = next[k] = 1 % p.value();
    for (unsigned j = 1; j < k; ++j) next[j] = p.add(row[j - 1], row[j]);
    row = std::move(next);
  }
  return row;
}

}  // namespace

Polynomial delta(const Polynomial& P, const VectorPoint& t) {
  require_dimension(P, t);
  const Field& f = P.field();
  const std::size_t n = P.num_vars();
  Polynomial shifted(f, n);
  MultiIndex m{std::vector<std::uint32_t>(n, 0)};
  for (const auto& [mono, c] : P.terms()) {
    // expand prod_i (x_i + t_i)^{e_i}
    std::vector<std::vector<Elem>> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = binomial_row(mono.exps[i], f.modulus());
    auto rec = [&](auto&& self, std::size_t i, Elem coeff) -> void {
      if (coeff == 0) return;
      if (i == n) {
        shifted.add_term(m, coeff);
        return;
      }
      const unsigned e = mono.exps[i];
      for (unsigned k = 0; k <= e; ++k) {
        m.exps[i] = k;
        Elem factor = f.mul(rows[i][k], f.pow(t.coords[i], e - k));
        self(self, i + 1, f.mul(coeff, factor));
      }
      m.exps[i] = 0;
    };
    rec(rec, 0, c);
  }
  return shifted - P;
}

Polynomial directional_derivative(const Polynomial& P, const VectorPoint& t) {
  require_dimension(P, t);
  const Field& f = P.field();
  Polynomial out(f, P.num_vars());
  for (const auto& [mono, c] : P.terms()) {
    for (std::size_t i = 0; i < mono.exps.size(); ++i) {
      if (mono.exps[i] == 0 || t.coords[i] == 0) continue;
      MultiIndex lowered = mono;
      lowered.exps[i] -= 1;
      Elem coeff = f.mul(c, f.mul(f.from_int(mono.exps[i]), t.coords[i]));
      out.add_term(lowered, coeff);
    }
  }
  return out;
}

Polynomial homogeneous_part(const Polynomial& P, unsigned d) {
  Polynomial out(P.field(), P.num_vars());
  for (const auto& [m, c] : P.terms()) {
    if (m.degree() == d) out.add_term(m, c);
  }
  return out;
}

Polynomial linear_form(const Field& field, const std::vector<Elem>& coeffs) {
  Polynomial out(field, coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    MultiIndex m{std::vector<std::uint32_t>(coeffs.size(), 0)};
    m.exps[i] = 1;
    out.add_term(m, coeffs[i]);
  }
  return out;
}

Polynomial compose_linear(const Polynomial& P, const std::vector<std::vector<Elem>>& A) {
  const std::size_t n = P.num_vars();
  if (A.size() != n) fail(ErrorKind::DimensionMismatch, "substitution matrix has wrong size");
  const Field& f = P.field();
  std::vector<std::vector<Polynomial>> powers(n);  // powers[i][e] = (A_i x)^e
  auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) {
      if (A[i].size() != n) fail(ErrorKind::DimensionMismatch, "substitution matrix has wrong size");
      Polynomial one(f, n);
      one.add_term(MultiIndex{std::vector<std::uint32_t>(n, 0)}, 1);
      cache.push_back(std::move(one));
    }
    while (cache.size() <= e) cache.push_back(cache.back() * linear_form(f, A[i]));
    return cache[e];
  };
  Polynomial out(f, n);
  for (const auto& [mono, c] : P.terms()) {
    Polynomial term(f, n);
    term.add_term(MultiIndex{std::vector<std::uint32_t>(n, 0)}, c);
    for (std::size_t i = 0; i < n; ++i) {
      if (mono.exps[i] != 0) term = term * power(i, mono.exps[i]);
    }
    out = out + term;
  }
  return out;
}

ValueTable value_table(const Polynomial& P, std::uint64_t cap) {
  const Field& f = P.field();
  PointSpace space(f, P.num_vars());
  if (space.size() > cap) {
    fail(ErrorKind::SizeCap, "value table needs " + std::to_string(space.size()) +
                                 " entries, cap is " + std::to_string(cap));
  }
  const std::size_t n = P.num_vars();
  const std::uint32_t q = f.size();

  // pw[i][v * (max_i + 1) + e] = v^e
  std::vector<unsigned> max_exp(n, 0);
  for (const auto& [m, c] : P.terms()) {
    for (std::size_t i = 0; i < n; ++i) max_exp[i] = std::max(max_exp[i], m.exps[i]);
  }
  std::vector<std::vector<Elem>> pw(n);
  for (std::size_t i = 0; i < n; ++i) {
    pw[i].resize(std::size_t{q} * (max_exp[i] + 1));
    for (Elem v = 0; v < q; ++v) {
      Elem acc = 1;
      for (unsigned e = 0; e <= max_exp[i]; ++e) {
        pw[i][v * (max_exp[i] + 1) + e] = acc;
        acc = f.mul(acc, v);
      }
    }
  }
  struct FlatTerm {
    Elem coeff;
    std::vector<std::pair<std::size_t, unsigned>> factors;
  };
  std::vector<FlatTerm> flat;
  for (const auto& [m, c] : P.terms()) {
    FlatTerm t{c, {}};
    for (std::size_t i = 0; i < n; ++i) {
      if (m.exps[i] != 0) t.factors.emplace_back(i, m.exps[i]);
    }
    flat.push_back(std::move(t));
  }

  ValueTable table{f, n, std::vector<Elem>(space.size(), 0)};
  std::vector<Elem> x(n, 0);
  for (std::uint64_t index = 0; index < space.size(); ++index) {
    Elem total = 0;
    for (const auto& t : flat) {
      Elem term = t.coeff;
      for (const auto& [i, e] : t.factors) term = f.mul(term, pw[i][x[i] * (max_exp[i] + 1) + e]);
      total = f.add(total, term);
    }
    table.values[index] = total;
    for (std::size_t i = 0; i < n; ++i) {
      if (++x[i] < q) break;
      x[i] = 0;
    }
  }
  return table;
}

std::vector<Elem> coefficient_vector(const Polynomial& P, const std::vector<MultiIndex>& basis) {
  std::vector<Elem> out;
  out.reserve(basis.size());
  for (const auto& m : basis) out.push_back(P.coefficient(m));
  return out;
}

Polynomial from_coefficients(const Field& field, std::size_t n, const std::vector<MultiIndex>& basis,
                             const std::vector<Elem>& coeffs) {
  Polynomial out(field, n);
  for (std::size_t k = 0; k < basis.size(); ++k) out.add_term(basis[k], coeffs[k]);
  return out;
}

}  // namespace strengthlab
