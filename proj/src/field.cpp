#include "strengthlab/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

namespace strengthlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::ZeroInverse: return "ZeroInverse";
    case ErrorKind::InvalidDegree: return "InvalidDegree";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::WrongDegree: return "WrongDegree";
    case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::CharTooSmall: return "CharTooSmall";
    case ErrorKind::CharTwo: return "CharTwo";
    case ErrorKind::MixedParameters: return "MixedParameters";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SizeCap: return "SizeCap";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(0) {
  if (p > (std::uint64_t{1} << 31) || !is_prime(p)) {
    fail(ErrorKind::NotPrime, "modulus " + std::to_string(p) + " is not a prime in [2, 2^31]");
  }
  p_ = static_cast<std::uint32_t>(p);
}

Elem PrimeModulus::pow(Elem a, std::uint64_t e) const noexcept {
  Elem result = 1 % p_;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Elem PrimeModulus::inv(Elem a) const {
  if (a % p_ == 0) fail(ErrorKind::ZeroInverse, "inverse of zero");
  // extended Euclid on (a, p)
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t quotient = r / new_r;
    t = std::exchange(new_t, t - quotient * new_t);
    r = std::exchange(new_r, r - quotient * new_r);
  }
  return reduce(t);
}

void PrimeModulus::require_char_above(unsigned d, const std::string& context) const {
  if (p_ <= d) {
    fail(ErrorKind::CharTooSmall, context + ": characteristic " + std::to_string(p_) +
                                      " must exceed degree " + std::to_string(d));
  }
}

FieldElement inv(const FieldElement& a) {
  return FieldElement(a.modulus().inv(a.residue()), a.modulus());
}

// ---------------------------------------------------------------------------
// univariate helpers over F_p, coefficient vectors low-to-high

namespace {

using UPoly = std::vector<Elem>;

void trim(UPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

UPoly poly_mod(UPoly a, const UPoly& m, const PrimeModulus& p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const Elem lead_inv = p.inv(m.back());
  while (a.size() > dm) {
    Elem factor = p.mul(a.back(), lead_inv);
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = p.sub(a[shift + i], p.mul(factor, m[i]));
    }
    trim(a);
  }
  return a;
}

UPoly poly_mulmod(const UPoly& a, const UPoly& b, const UPoly& m, const PrimeModulus& p) {
  if (a.empty() || b.empty()) return {};
  UPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = p.add(out[i + j], p.mul(a[i], b[j]));
    }
  }
  return poly_mod(std::move(out), m, p);
}

UPoly poly_gcd(UPoly a, UPoly b, const PrimeModulus& p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

UPoly poly_powmod(UPoly base, std::uint64_t e, const UPoly& m, const PrimeModulus& p) {
  UPoly result{1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

std::uint64_t checked_power(std::uint64_t p, unsigned s, std::uint64_t cap) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < s; ++i) {
    q *= p;
    if (q > cap) return cap + 1;
  }
  return q;
}

}  // namespace

bool is_irreducible(const PrimeModulus& p, const std::vector<Elem>& monic) {
  if (monic.size() < 2 || monic.back() != 1) return false;
  const std::size_t deg = monic.size() - 1;
  UPoly x_power{0, 1};  // x^{p^k} mod f
  for (std::size_t k = 1; k <= deg / 2; ++k) {
    x_power = poly_powmod(x_power, p.value(), monic, p);
    UPoly diff = x_power;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = p.sub(diff[1], 1);
    trim(diff);
    UPoly g = poly_gcd(monic, diff, p);
    if (g.size() > 1) return false;
  }
  return true;
}

std::vector<Elem> find_irreducible(const PrimeModulus& p, unsigned s) {
  if (s < 2) fail(ErrorKind::InvalidDegree, "extension degree must be >= 2, got " + std::to_string(s));
  const std::uint64_t q = checked_power(p.value(), s, kExtensionSizeCap);
  if (q > kExtensionSizeCap) {
    fail(ErrorKind::SizeCap, "field size " + std::to_string(p.value()) + "^" + std::to_string(s) +
                                 " exceeds cap 2^20");
  }
  // code c = sum_k c_k p^k enumerates (c_{s-1}, ..., c_0) lexicographically
  for (std::uint64_t code = 0; code < q; ++code) {
    std::vector<Elem> f(s + 1, 0);
    std::uint64_t rest = code;
    for (unsigned k = 0; k < s; ++k) {
      f[k] = static_cast<Elem>(rest % p.value());
      rest /= p.value();
    }
    f[s] = 1;
    if (f[0] == 0) continue;  // divisible by x
    if (is_irreducible(p, f)) return f;
  }
  fail(ErrorKind::Internal, "no irreducible polynomial found");
}

// ---------------------------------------------------------------------------

ExtensionField::ExtensionField(PrimeModulus p, unsigned s)
    : ExtensionField(p, find_irreducible(p, s)) {}

ExtensionField::ExtensionField(PrimeModulus p, std::vector<Elem> modulus_poly)
    : base_(p), s_(0), q_(0), modulus_(std::move(modulus_poly)) {
  if (modulus_.size() < 3) fail(ErrorKind::InvalidDegree, "extension degree must be >= 2");
  s_ = static_cast<unsigned>(modulus_.size() - 1);
  const std::uint64_t q = checked_power(p.value(), s_, kExtensionSizeCap);
  if (q > kExtensionSizeCap) fail(ErrorKind::SizeCap, "extension field exceeds cap 2^20");
  q_ = static_cast<std::uint32_t>(q);
  for (Elem& c : modulus_) c %= p.value();
  if (!is_irreducible(p, modulus_)) {
    fail(ErrorKind::InvalidArgument, "modulus polynomial is not monic irreducible");
  }
  build_tables();
}

ExtElement ExtensionField::embed(Elem residue) const {
  ExtElement a{std::vector<Elem>(s_, 0)};
  a.coeffs[0] = residue % base_.value();
  return a;
}

ExtElement ExtensionField::generator() const {
  ExtElement a{std::vector<Elem>(s_, 0)};
  a.coeffs[1] = 1;
  return a;
}

ExtElement ExtensionField::add(const ExtElement& a, const ExtElement& b) const {
  ExtElement out{std::vector<Elem>(s_, 0)};
  for (unsigned k = 0; k < s_; ++k) out.coeffs[k] = base_.add(a.coeffs[k], b.coeffs[k]);
  return out;
}

ExtElement ExtensionField::mul(const ExtElement& a, const ExtElement& b) const {
  UPoly prod = poly_mulmod(a.coeffs, b.coeffs, modulus_, base_);
  prod.resize(s_, 0);
  return ExtElement{std::move(prod)};
}

ExtElement ExtensionField::pow(ExtElement a, std::uint64_t e) const {
  ExtElement result = embed(1);
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

FieldElement ExtensionField::trace(const ExtElement& a) const {
  ExtElement sum = embed(0);
  ExtElement conj = a;
  for (unsigned k = 0; k < s_; ++k) {
    sum = add(sum, conj);
    conj = pow(conj, base_.value());
  }
  for (unsigned k = 1; k < s_; ++k) {
    if (sum.coeffs[k] != 0) fail(ErrorKind::Internal, "trace left the prime field");
  }
  return FieldElement(sum.coeffs[0], base_);
}

Elem ExtensionField::encode(const ExtElement& a) const {
  Elem code = 0;
  for (unsigned k = s_; k-- > 0;) code = code * base_.value() + a.coeffs[k];
  return code;
}

ExtElement ExtensionField::decode(Elem code) const {
  ExtElement a{std::vector<Elem>(s_, 0)};
  for (unsigned k = 0; k < s_; ++k) {
    a.coeffs[k] = code % base_.value();
    code /= base_.value();
  }
  return a;
}

Elem ExtensionField::inv_code(Elem a) const {
  if (a == 0) fail(ErrorKind::ZeroInverse, "inverse of zero");
  std::uint32_t k = log_[a];
  return exp_[k == 0 ? 0 : q_ - 1 - k];
}

void ExtensionField::build_tables() {
  const std::uint32_t order = q_ - 1;
  std::vector<std::uint32_t> prime_factors;
  {
    std::uint32_t rest = order;
    for (std::uint32_t f = 2; f * f <= rest; ++f) {
      if (rest % f == 0) {
        prime_factors.push_back(f);
        while (rest % f == 0) rest /= f;
      }
    }
    if (rest > 1) prime_factors.push_back(rest);
  }
  ExtElement g;
  for (Elem code = 2;; ++code) {
    if (code >= q_) fail(ErrorKind::Internal, "no primitive element");
    g = decode(code);
    bool primitive = std::all_of(prime_factors.begin(), prime_factors.end(), [&](std::uint32_t f) {
      return pow(g, order / f) != embed(1);
    });
    if (primitive) break;
  }
  exp_.assign(order, 0);
  log_.assign(q_, 0);
  ExtElement acc = embed(1);
  for (std::uint32_t k = 0; k < order; ++k) {
    Elem code = encode(acc);
    exp_[k] = code;
    log_[code] = k;
    acc = mul(acc, g);
  }
  basis_trace_.assign(s_, 0);
  ExtElement basis = embed(1);
  for (unsigned k = 0; k < s_; ++k) {
    basis_trace_[k] = trace(basis).residue();
    basis = mul(basis, generator());
  }
}

// ---------------------------------------------------------------------------

Field::Field(std::shared_ptr<const ExtensionField> ext) : p_(ext->base()), ext_(std::move(ext)) {}

Field Field::of_degree(std::uint64_t p, unsigned s) {
  PrimeModulus modulus(p);
  if (s == 0) fail(ErrorKind::InvalidDegree, "extension degree must be >= 1");
  if (s == 1) return Field(modulus);
  static std::mutex cache_mutex;
  static std::map<std::pair<std::uint64_t, unsigned>, std::shared_ptr<const ExtensionField>> cache;
  std::lock_guard lock(cache_mutex);
  auto& slot = cache[{p, s}];
  if (!slot) slot = std::make_shared<const ExtensionField>(modulus, s);
  return Field(slot);
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
  if (!ext_) return p_.pow(a, e);
  if (e == 0) return 1;
  if (a == 0) return 0;
  return ext_->exp_code(std::uint64_t{ext_->log_code(a)} * (e % (ext_->size() - 1)));
}

Elem Field::inv(Elem a) const { return ext_ ? ext_->inv_code(a) : p_.inv(a); }

std::optional<Elem> Field::sqrt(Elem a) const {
  if (a == 0) return Elem{0};
  const std::uint32_t p = p_.value();
  if (p == 2) {
    // Frobenius is bijective in characteristic 2
    return pow(a, (std::uint64_t{size()}) / 2);
  }
  Elem root = 0;
  if (ext_) {
    std::uint32_t k = ext_->log_code(a);
    if (k % 2 != 0) return std::nullopt;
    root = ext_->exp_code(k / 2);
  } else {
    if (p_.pow(a, (p - 1) / 2) != 1) return std::nullopt;
    // Tonelli-Shanks
    std::uint32_t q = p - 1, s = 0;
    while (q % 2 == 0) {
      q /= 2;
      ++s;
    }
    Elem z = 2;
    while (p_.pow(z, (p - 1) / 2) != p - 1) ++z;
    Elem c = p_.pow(z, q);
    Elem t = p_.pow(a, q);
    root = p_.pow(a, (q + 1) / 2);
    std::uint32_t m = s;
    while (t != 1) {
      std::uint32_t i = 0;
      Elem t2 = t;
      while (t2 != 1) {
        t2 = p_.mul(t2, t2);
        ++i;
      }
      Elem b = c;
      for (std::uint32_t j = 0; j + i + 1 < m; ++j) b = p_.mul(b, b);
      m = i;
      c = p_.mul(b, b);
      t = p_.mul(t, c);
      root = p_.mul(root, b);
    }
  }
  return std::min(root, neg(root));
}

Elem Field::trace(Elem a) const noexcept {
  if (!ext_) return a;
  Elem acc = 0;
  for (unsigned k = 0; k < ext_->degree(); ++k) {
    acc = p_.add(acc, p_.mul(a % p_.value(), ext_->basis_trace(k)));
    a /= p_.value();
  }
  return acc;
}

std::vector<Elem> Field::digits(Elem a) const {
  std::vector<Elem> out(degree(), 0);
  for (auto& d : out) {
    d = a % p_.value();
    a /= p_.value();
  }
  return out;
}

Elem Field::from_digits(const std::vector<Elem>& digits) const {
  Elem code = 0;
  for (std::size_t k = digits.size(); k-- > 0;) code = code * p_.value() + digits[k] % p_.value();
  return code;
}

Elem Field::digitwise(Elem a, Elem b, bool subtract) const noexcept {
  const std::uint32_t p = p_.value();
  Elem out = 0, scale = 1;
  for (unsigned k = 0; k < ext_->degree(); ++k) {
    Elem da = a % p, db = b % p;
    a /= p;
    b /= p;
    out += scale * (subtract ? p_.sub(da, db) : p_.add(da, db));
    scale *= p;
  }
  return out;
}

}  // namespace strengthlab
