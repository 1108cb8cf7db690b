#include "hk/field.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace hk {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parse: return 2;
    case ErrorKind::precondition: return 3;
    case ErrorKind::resource: return 4;
    case ErrorKind::internal: return 5;
  }
  return 5;
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using UPoly = std::vector<std::uint32_t>;  // low to high, over F_p

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

// a mod b over F_p, b nonzero.
UPoly upoly_mod(UPoly a, const UPoly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() > db && !a.empty()) {
    const std::size_t shift = a.size() - 1 - db;
    const std::uint64_t c = std::uint64_t{a.back()} * lead_inv % p;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = c * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

UPoly upoly_mulmod(const UPoly& a, const UPoly& b, const UPoly& mod,
                   std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>(
          (r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  return upoly_mod(std::move(r), mod, p);
}

UPoly upoly_gcd(UPoly a, UPoly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = upoly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_irreducible(std::uint32_t p, const UPoly& poly_in) {
  UPoly f = poly_in;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t m = f.size() - 1;
  if (m == 1) return true;
  // Ben-Or: f is irreducible iff gcd(f, x^{p^i} - x) = 1 for i <= m/2.
  UPoly x_pow = {0, 1};
  for (std::size_t i = 1; i <= m / 2; ++i) {
    // x_pow <- x_pow^p mod f
    UPoly base = x_pow, acc = {1};
    std::uint64_t e = p;
    while (e > 0) {
      if (e & 1) acc = upoly_mulmod(acc, base, f, p);
      base = upoly_mulmod(base, base, f, p);
      e >>= 1;
    }
    x_pow = acc;
    UPoly diff = x_pow;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    UPoly g = upoly_gcd(f, diff, p);
    if (g.size() > 1) return false;
  }
  return true;
}

std::vector<std::uint32_t> find_irreducible(std::uint32_t p, std::uint32_t m,
                                            std::uint64_t seed) {
  if (!is_prime(p)) throw PreconditionError("p must be prime");
  if (m < 1) throw PreconditionError("extension degree must be >= 1");
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    if (count > (std::uint64_t{1} << 40) / p)
      throw ResourceError("irreducible search space too large");
    count *= p;
  }
  const std::uint64_t start = seed == 0 ? 0 : splitmix64(seed) % count;
  for (std::uint64_t k = 0; k < count; ++k) {
    std::uint64_t code = (start + k) % count;
    UPoly f(m + 1, 0);
    for (std::uint32_t i = 0; i < m; ++i) {
      f[i] = static_cast<std::uint32_t>(code % p);
      code /= p;
    }
    f[m] = 1;
    if (is_irreducible(p, f)) return f;
  }
  throw InternalError("no irreducible polynomial found");
}

std::string FieldSpec::to_string() const {
  std::ostringstream os;
  os << "F_" << p;
  if (m > 1) {
    os << "^" << m << "[" << generator << "]/(";
    bool first = true;
    for (std::size_t i = modulus.size(); i-- > 0;) {
      if (modulus[i] == 0) continue;
      if (!first) os << "+";
      first = false;
      if (modulus[i] != 1 || i == 0) os << modulus[i];
      if (modulus[i] != 1 && i > 0) os << "*";
      if (i > 0) os << generator;
      if (i > 1) os << "^" << i;
    }
    os << ")";
  }
  return os.str();
}

FieldPtr FiniteField::create(const FieldSpec& spec) {
  if (!is_prime(spec.p)) throw PreconditionError("characteristic must be prime");
  if (spec.m < 1) throw PreconditionError("extension degree must be >= 1");
  if (spec.m == 1) {
    if (!spec.modulus.empty())
      throw PreconditionError("prime field takes no modulus");
  } else {
    if (spec.modulus.size() != spec.m + 1 || spec.modulus.back() != 1)
      throw PreconditionError("modulus must be monic of degree m");
    for (auto c : spec.modulus)
      if (c >= spec.p) throw PreconditionError("modulus coefficient out of range");
    if (!is_irreducible(spec.p, spec.modulus))
      throw PreconditionError("modulus is not irreducible over F_p");
  }
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < spec.m; ++i) {
    q *= spec.p;
    if (q > kMaxOrder) throw ResourceError("field too large (p^m > 2^20)");
  }
  return FieldPtr(new FiniteField(spec));
}

FieldPtr FiniteField::prime(std::uint32_t p) {
  FieldSpec s;
  s.p = p;
  s.m = 1;
  return create(s);
}

FieldPtr FiniteField::extension(std::uint32_t p, std::uint32_t m,
                                const std::string& generator,
                                std::uint64_t seed) {
  if (m == 1) return prime(p);
  FieldSpec s;
  s.p = p;
  s.m = m;
  s.modulus = find_irreducible(p, m, seed);
  s.generator = generator;
  return create(s);
}

FiniteField::FiniteField(FieldSpec spec) : spec_(std::move(spec)) {
  order_ = 1;
  for (std::uint32_t i = 0; i < spec_.m; ++i) order_ *= spec_.p;
  const std::uint32_t n = order_ - 1;
  if (spec_.p != 2 && spec_.m > 1) {
    neg_table_.resize(order_);
    for (Raw a = 0; a < order_; ++a) {
      auto c = coefficients(a);
      for (auto& x : c) x = (spec_.p - x) % spec_.p;
      neg_table_[a] = from_coefficients(c);
    }
    if (order_ <= 1024) {
      add_table_.resize(std::size_t{order_} * order_);
      for (Raw a = 0; a < order_; ++a)
        for (Raw b = 0; b < order_; ++b)
          add_table_[std::size_t{a} * order_ + b] = add_digits(a, b);
    }
  }
  // Primitive element: smallest encoding whose order is p^m - 1.
  exp_.assign(2 * std::size_t{n} + 1, 1);
  log_.assign(order_, 0);
  if (n == 1) {
    exp_.assign(3, 1);
    return;
  }
  const auto factors = prime_factors(n);
  Raw g = 0;
  for (Raw cand = 2; cand < order_ + 1; ++cand) {
    const Raw c = cand % order_;
    if (c == 0) continue;
    bool primitive = true;
    for (auto r : factors) {
      // slow exponentiation
      Raw acc = 1, base = c;
      std::uint64_t e = n / r;
      while (e) {
        if (e & 1) acc = slow_mul(acc, base);
        base = slow_mul(base, base);
        e >>= 1;
      }
      if (acc == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = c;
      break;
    }
  }
  if (g == 0) throw InternalError("no primitive element");
  Raw acc = 1;
  for (std::uint32_t k = 0; k < n; ++k) {
    exp_[k] = acc;
    log_[acc] = k;
    acc = slow_mul(acc, g);
  }
  for (std::uint32_t k = n; k < 2 * n + 1; ++k) exp_[k] = exp_[k - n];
}

FiniteField::Raw FiniteField::add_digits(Raw a, Raw b) const noexcept {
  Raw r = 0, place = 1;
  const Raw p = spec_.p;
  for (std::uint32_t i = 0; i < spec_.m; ++i) {
    const Raw s = (a % p + b % p) % p;
    r += s * place;
    place *= p;
    a /= p;
    b /= p;
  }
  return r;
}

FiniteField::Raw FiniteField::slow_mul(Raw a, Raw b) const {
  if (spec_.m == 1) return static_cast<Raw>(std::uint64_t{a} * b % spec_.p);
  auto ca = coefficients(a), cb = coefficients(b);
  UPoly prod = upoly_mulmod(ca, cb, spec_.modulus, spec_.p);
  prod.resize(spec_.m, 0);
  return from_coefficients(prod);
}

FiniteField::Raw FiniteField::from_int(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(spec_.p);
  if (r < 0) r += spec_.p;
  return static_cast<Raw>(r);
}

FiniteField::Raw FiniteField::inv(Raw a) const {
  if (a == 0) throw DivisionByZero();
  if (spec_.m == 1) return inv_mod(a, spec_.p);
  const std::uint32_t n = order_ - 1;
  return exp_[(n - log_[a]) % n];
}

FiniteField::Raw FiniteField::pow(Raw a, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (spec_.m == 1) {
    std::uint64_t acc = 1, base = a;
    while (e) {
      if (e & 1) acc = acc * base % spec_.p;
      base = base * base % spec_.p;
      e >>= 1;
    }
    return static_cast<Raw>(acc);
  }
  const std::uint64_t n = order_ - 1;
  return exp_[(std::uint64_t{log_[a]} * (e % n)) % n];
}

std::uint32_t FiniteField::log(Raw a) const {
  if (a == 0) throw DivisionByZero();
  if (spec_.m == 1 && log_.size() == order_ && order_ > 2) return log_[a];
  return log_[a];
}

std::vector<std::uint32_t> FiniteField::coefficients(Raw a) const {
  std::vector<std::uint32_t> c(spec_.m, 0);
  for (std::uint32_t i = 0; i < spec_.m; ++i) {
    c[i] = a % spec_.p;
    a /= spec_.p;
  }
  return c;
}

FiniteField::Raw FiniteField::from_coefficients(
    const std::vector<std::uint32_t>& c) const {
  Raw r = 0, place = 1;
  for (std::uint32_t i = 0; i < spec_.m; ++i) {
    const Raw ci = i < c.size() ? c[i] % spec_.p : 0;
    r += ci * place;
    place *= spec_.p;
  }
  return r;
}

bool FiniteField::coeff_less(Raw a, Raw b) const {
  auto ca = coefficients(a), cb = coefficients(b);
  return ca < cb;
}

bool FiniteField::is_square(Raw a) const {
  if (a == 0) return true;
  if (spec_.p == 2) return true;
  return pow(a, (order_ - 1) / 2) == 1;
}

std::optional<FiniteField::Raw> FiniteField::sqrt(Raw a) const {
  if (spec_.p == 2)
    throw UnsupportedCharacteristic("square roots require p != 2");
  if (a == 0) return Raw{0};
  if (!is_square(a)) return std::nullopt;
  const std::uint64_t q = order_;
  Raw r;
  if (q % 4 == 3) {
    r = pow(a, (q + 1) / 4);
  } else {
    // Tonelli-Shanks in the cyclic group of order q - 1.
    std::uint64_t t = q - 1;
    unsigned s = 0;
    while (t % 2 == 0) {
      t /= 2;
      ++s;
    }
    const Raw z = canonical_nonsquare();
    Raw c = pow(z, t);
    Raw x = pow(a, (t + 1) / 2);
    Raw b = pow(a, t);
    unsigned m = s;
    while (b != 1) {
      unsigned i = 0;
      Raw bb = b;
      while (bb != 1) {
        bb = mul(bb, bb);
        ++i;
      }
      Raw w = c;
      for (unsigned j = 0; j + 1 < m - i; ++j) w = mul(w, w);
      x = mul(x, w);
      c = mul(w, w);
      b = mul(b, c);
      m = i;
    }
    r = x;
  }
  const Raw other = neg(r);
  return coeff_less(other, r) ? other : r;
}

std::optional<FiniteField::Raw> FiniteField::kth_root(Raw a,
                                                      std::uint64_t k) const {
  if (k == 0) throw PreconditionError("root index must be positive");
  if (k % spec_.p == 0)
    throw UnsupportedCharacteristic("root index divisible by p");
  if (a == 0) return Raw{0};
  const std::uint64_t n = order_ - 1;
  const std::uint64_t d = std::gcd(k, n);
  if (d == 1) {
    // k is invertible mod n: the root is unique.
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(n),
                 nr = static_cast<std::int64_t>(k % n);
    while (nr != 0) {
      std::int64_t qq = r / nr;
      std::tie(t, nt) = std::make_pair(nt, t - qq * nt);
      std::tie(r, nr) = std::make_pair(nr, r - qq * nr);
    }
    if (t < 0) t += static_cast<std::int64_t>(n);
    return pow(a, static_cast<std::uint64_t>(t));
  }
  // Cyclic-group fallback through discrete logs.
  const std::uint64_t L = log_[a];
  if (L % d != 0) return std::nullopt;
  const std::uint64_t nd = n / d;
  const std::uint64_t kd = (k / d) % nd;
  std::uint64_t kd_inv = 0;
  if (nd > 1) {
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(nd),
                 nr = static_cast<std::int64_t>(kd);
    while (nr != 0) {
      std::int64_t qq = r / nr;
      std::tie(t, nt) = std::make_pair(nt, t - qq * nt);
      std::tie(r, nr) = std::make_pair(nr, r - qq * nr);
    }
    if (t < 0) t += static_cast<std::int64_t>(nd);
    kd_inv = static_cast<std::uint64_t>(t);
  }
  const std::uint64_t x0 = nd > 1 ? (L / d) % nd * kd_inv % nd : 0;
  Raw best = exp_[x0 % n];
  for (std::uint64_t j = 1; j < d; ++j) {
    const Raw cand = exp_[(x0 + j * nd) % n];
    if (coeff_less(cand, best)) best = cand;
  }
  return best;
}

std::uint32_t FiniteField::element_degree(Raw a) const noexcept {
  std::uint32_t d = 1;
  Raw b = frobenius(a);
  while (b != a) {
    b = frobenius(b);
    ++d;
  }
  return d;
}

std::optional<FiniteField::Raw> FiniteField::artin_schreier(Raw a) const {
  if (spec_.p != 2)
    throw UnsupportedCharacteristic("Artin-Schreier solving requires p == 2");
  // b -> b^2 + b is F_2-linear; solve L b = a on bit vectors.
  const std::uint32_t m = spec_.m;
  std::vector<std::uint32_t> cols(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    const Raw e = Raw{1} << i;
    cols[i] = mul(e, e) ^ e;
  }
  // Row-reduce the augmented system: rows indexed by output bit.
  std::vector<std::uint64_t> rows(m, 0);
  for (std::uint32_t r = 0; r < m; ++r) {
    std::uint64_t row = 0;
    for (std::uint32_t c = 0; c < m; ++c)
      if ((cols[c] >> r) & 1U) row |= std::uint64_t{1} << c;
    if ((a >> r) & 1U) row |= std::uint64_t{1} << m;
    rows[r] = row;
  }
  std::vector<int> pivot_col_of_row;
  std::uint32_t rank = 0;
  std::vector<int> pivot_row(m, -1);
  for (std::uint32_t c = m; c-- > 0;) {
    // Eliminate from highest bit downwards so that free variable is bit 0.
    std::uint32_t sel = rank;
    while (sel < m && !((rows[sel] >> c) & 1U)) ++sel;
    if (sel == m) continue;
    std::swap(rows[sel], rows[rank]);
    for (std::uint32_t r = 0; r < m; ++r)
      if (r != rank && ((rows[r] >> c) & 1U)) rows[r] ^= rows[rank];
    pivot_row[c] = static_cast<int>(rank);
    ++rank;
  }
  for (std::uint32_t r = rank; r < m; ++r)
    if ((rows[r] >> m) & 1U) return std::nullopt;
  // Free variables set to zero.
  Raw b = 0;
  for (std::uint32_t c = 0; c < m; ++c) {
    if (pivot_row[c] < 0) continue;
    if ((rows[pivot_row[c]] >> m) & 1U) b |= Raw{1} << c;
  }
  if (mul(b, b) ^ b ^ a) throw InternalError("Artin-Schreier solve failed");
  // The other root is b + 1; keep the one with c_0 == 0.
  if (b & 1U) b ^= 1U;
  return b;
}

FiniteField::Raw FiniteField::canonical_nonsquare() const {
  if (spec_.p == 2) throw UnsupportedCharacteristic("no non-squares for p == 2");
  for (Raw a = 1; a < order_; ++a)
    if (!is_square(a)) return a;
  throw InternalError("no non-square found");
}

std::string FiniteField::format(Raw a) const {
  if (spec_.m == 1) return std::to_string(a);
  auto c = coefficients(a);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << c[i];
      continue;
    }
    if (c[i] != 1) os << c[i] << "*";
    os << spec_.generator;
    if (i > 1) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

// --- FieldElement ---------------------------------------------------------

namespace {
void check_same(const FieldElement& a, const FieldElement& b) {
  if (!a.field() || !b.field() || !a.field()->same_as(*b.field()))
    throw SpecMismatch("field elements from different fields");
}
}  // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  check_same(a, b);
  return {a.field_, a.field_->add(a.value_, b.value_)};
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  check_same(a, b);
  return {a.field_, a.field_->sub(a.value_, b.value_)};
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  check_same(a, b);
  return {a.field_, a.field_->mul(a.value_, b.value_)};
}
bool operator==(const FieldElement& a, const FieldElement& b) {
  if (!a.field_ || !b.field_) return a.field_ == b.field_ && a.value_ == b.value_;
  return a.field_->same_as(*b.field_) && a.value_ == b.value_;
}

FieldElement field_arith(const FieldElement& a, const FieldElement& b,
                         ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
  }
  throw InternalError("bad op");
}

FieldElement ff_inv(const FieldElement& a) {
  return {a.field(), a.field()->inv(a.raw())};
}

std::optional<FieldElement> ff_sqrt(const FieldElement& a) {
  auto r = a.field()->sqrt(a.raw());
  if (!r) return std::nullopt;
  return FieldElement(a.field(), *r);
}

std::optional<FieldElement> ff_kth_root(const FieldElement& a,
                                        std::uint64_t k) {
  auto r = a.field()->kth_root(a.raw(), k);
  if (!r) return std::nullopt;
  return FieldElement(a.field(), *r);
}

std::uint32_t element_degree(const FieldElement& a) {
  return a.field()->element_degree(a.raw());
}

std::optional<FieldElement> artin_schreier_solve(const FieldElement& alpha) {
  auto r = alpha.field()->artin_schreier(alpha.raw());
  if (!r) return std::nullopt;
  return FieldElement(alpha.field(), *r);
}

// --- embeddings -----------------------------------------------------------

FieldEmbedding::FieldEmbedding(FieldPtr small, FieldPtr big)
    : small_(std::move(small)), big_(std::move(big)) {
  if (small_->characteristic() != big_->characteristic() ||
      big_->degree() % small_->degree() != 0)
    throw SpecMismatch("no embedding between these fields");
  using Raw = FiniteField::Raw;
  Raw root = 0;
  if (small_->degree() > 1) {
    const auto& mod = small_->spec().modulus;
    bool found = false;
    for (Raw r = 0; r < big_->order() && !found; ++r) {
      Raw acc = 0;
      for (std::size_t i = mod.size(); i-- > 0;)
        acc = big_->add(big_->mul(acc, r), big_->from_int(mod[i]));
      if (acc == 0) {
        root = r;
        found = true;
      }
    }
    if (!found) throw InternalError("modulus has no root in extension");
  }
  image_.resize(small_->order());
  for (Raw a = 0; a < small_->order(); ++a) {
    auto c = small_->coefficients(a);
    Raw acc = 0;
    for (std::size_t i = c.size(); i-- > 0;)
      acc = big_->add(big_->mul(acc, root), big_->from_int(c[i]));
    image_[a] = acc;
  }
}

FieldElement FieldEmbedding::operator()(const FieldElement& a) const {
  if (!a.field()->same_as(*small_)) throw SpecMismatch("element not in source");
  return {big_, image_.at(a.raw())};
}

FieldEmbedding extend_field(const FieldPtr& base, std::uint32_t factor) {
  const std::uint32_t m = base->degree() * factor;
  const std::string gen = base->spec().generator + std::to_string(m);
  auto big = FiniteField::extension(base->characteristic(), m, gen);
  return FieldEmbedding(base, big);
}

}  // namespace hk
