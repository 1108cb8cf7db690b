#include "hk/poly.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace hk {

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    const std::uint64_t s = std::uint64_t{a.e[i]} + b.e[i];
    if (s > std::numeric_limits<std::uint32_t>::max())
      throw OverflowError("monomial exponent overflow");
    r.e[i] = static_cast<std::uint32_t>(s);
  }
  const std::uint64_t d = std::uint64_t{a.deg} + b.deg;
  if (d > std::numeric_limits<std::uint32_t>::max())
    throw OverflowError("monomial degree overflow");
  r.deg = static_cast<std::uint32_t>(d);
  return r;
}

Monomial mono_div(const Monomial& a, const Monomial& b) noexcept {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = a.e[i] - b.e[i];
  r.deg = a.deg - b.deg;
  return r;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) noexcept {
  Monomial r;
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.e[i] = std::max(a.e[i], b.e[i]);
    d += r.e[i];
  }
  r.deg = d;
  return r;
}

Monomial mono_pow(const Monomial& a, std::uint64_t k) {
  Monomial r;
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    const std::uint64_t x = std::uint64_t{a.e[i]} * k;
    if (a.e[i] != 0 && (x / a.e[i] != k || x > std::numeric_limits<std::uint32_t>::max()))
      throw OverflowError("monomial exponent overflow");
    r.e[i] = static_cast<std::uint32_t>(x);
    d += x;
  }
  if (d > std::numeric_limits<std::uint32_t>::max())
    throw OverflowError("monomial degree overflow");
  r.deg = static_cast<std::uint32_t>(d);
  return r;
}

bool mono_coprime(const Monomial& a, const Monomial& b) noexcept {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}

std::size_t mono_hash(const Monomial& m) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto x : m.e) {
    h ^= x;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

// --- orders ---------------------------------------------------------------

MonomialOrder::MonomialOrder(Kind kind, std::vector<std::uint8_t> perm)
    : kind_(kind), perm_(std::move(perm)) {
  std::vector<std::uint8_t> sorted = perm_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw PreconditionError("order permutation is invalid");
}

MonomialOrder MonomialOrder::degrevlex(std::size_t n) {
  std::vector<std::uint8_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  return {Kind::degrevlex, p};
}

MonomialOrder MonomialOrder::negdegrevlex(std::size_t n) {
  std::vector<std::uint8_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  return {Kind::negdegrevlex, p};
}

MonomialOrder MonomialOrder::lex(std::size_t n) {
  std::vector<std::uint8_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  return {Kind::lex, p};
}

// --- rings ----------------------------------------------------------------

Ring::Ring(FieldPtr field, std::vector<std::string> vars, MonomialOrder order)
    : field_(std::move(field)), vars_(std::move(vars)), order_(std::move(order)) {}

RingPtr Ring::create(FieldPtr field, std::vector<std::string> vars) {
  const auto n = vars.size();
  return create(std::move(field), std::move(vars), MonomialOrder::degrevlex(n));
}

RingPtr Ring::create(FieldPtr field, std::vector<std::string> vars,
                     MonomialOrder order) {
  if (vars.size() > kMaxVars)
    throw ResourceError("at most " + std::to_string(kMaxVars) + " variables");
  if (order.perm().size() != vars.size())
    throw PreconditionError("order arity does not match variable count");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].empty()) throw PreconditionError("empty variable name");
    if (field->degree() > 1 && vars[i] == field->spec().generator)
      throw PreconditionError("variable name clashes with field generator");
    for (std::size_t j = 0; j < i; ++j)
      if (vars[i] == vars[j])
        throw PreconditionError("duplicate variable " + vars[i]);
  }
  return RingPtr(new Ring(std::move(field), std::move(vars), std::move(order)));
}

int Ring::var_index(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  return -1;
}

RingPtr Ring::with_order(MonomialOrder order) const {
  return create(field_, vars_, std::move(order));
}

RingPtr Ring::with_field(FieldPtr field) const {
  return create(std::move(field), vars_, order_);
}

RingPtr Ring::subring(const std::vector<std::size_t>& keep) const {
  std::vector<std::string> names;
  for (auto k : keep) names.push_back(vars_.at(k));
  return create(field_, std::move(names));
}

// --- polynomials ----------------------------------------------------------

namespace {

void sort_terms(std::vector<Term>& t, const MonomialOrder& ord) {
  std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) {
    return ord.greater(a.m, b.m);
  });
}

std::vector<Term> normalize(std::vector<Term> t, const FiniteField& f,
                            const MonomialOrder& ord) {
  sort_terms(t, ord);
  std::vector<Term> out;
  out.reserve(t.size());
  for (const auto& x : t) {
    if (!out.empty() && out.back().m == x.m) {
      out.back().c = f.add(out.back().c, x.c);
      if (out.back().c == 0) out.pop_back();
    } else if (x.c != 0) {
      out.push_back(x);
    }
  }
  return out;
}

void check_ring(const Polynomial& a, const Polynomial& b) {
  if (!a.ring() || !b.ring() || !a.ring()->same_as(*b.ring()))
    throw SpecMismatch("polynomials from different rings");
}

std::vector<Term> from_map(const std::unordered_map<Monomial, FiniteField::Raw,
                                                    MonomialHash>& acc) {
  std::vector<Term> t;
  t.reserve(acc.size());
  for (const auto& [m, c] : acc)
    if (c != 0) t.push_back({m, c});
  return t;
}

}  // namespace

Polynomial::Polynomial(RingPtr ring, std::vector<Term> terms)
    : ring_(std::move(ring)) {
  terms_ = normalize(std::move(terms), *ring_->field(), ring_->order());
}

Polynomial Polynomial::constant(RingPtr ring, Raw c) {
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t i) {
  if (i >= ring->nvars()) throw PreconditionError("variable index out of range");
  return monomial(std::move(ring), Monomial::var(i), 1);
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m, Raw c) {
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_sorted(RingPtr ring, std::vector<Term> terms) {
  Polynomial p(std::move(ring));
  p.terms_ = std::move(terms);
  return p;
}

Polynomial::Raw Polynomial::constant_term() const noexcept {
  if (!terms_.empty() && terms_.back().m.is_one()) return terms_.back().c;
  return 0;
}

Polynomial::Raw Polynomial::coefficient(const Monomial& m) const noexcept {
  for (const auto& t : terms_)
    if (t.m == m) return t.c;
  return 0;
}

int Polynomial::total_degree() const noexcept {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.m.deg));
  return d;
}

int Polynomial::order() const noexcept {
  if (terms_.empty()) return -1;
  int d = std::numeric_limits<int>::max();
  for (const auto& t : terms_) d = std::min(d, static_cast<int>(t.m.deg));
  return d;
}

int Polynomial::degree_in(std::size_t var) const noexcept {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.m.e[var]));
  return d;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  const auto& f = *field();
  for (auto& t : r.terms_) t.c = f.neg(t.c);
  return r;
}

Polynomial Polynomial::scaled(Raw c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial r = *this;
  const auto& f = *field();
  for (auto& t : r.terms_) t.c = f.mul(t.c, c);
  return r;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return scaled(field()->inv(lc()));
}

Polynomial Polynomial::mul_term(const Monomial& m, Raw c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  const auto& f = *field();
  for (const auto& t : terms_) r.terms_.push_back({mono_mul(t.m, m), f.mul(t.c, c)});
  return r;
}

Polynomial Polynomial::pow(std::uint64_t k) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Polynomial Polynomial::with_ring(RingPtr ring) const {
  if (ring->nvars() != ring_->nvars() || !ring->field()->same_as(*field()))
    throw SpecMismatch("ring change needs same field and arity");
  return Polynomial(std::move(ring), terms_);
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (!ring_ || !o.ring_) return terms_.empty() && o.terms_.empty();
  if (!ring_->same_as(*o.ring_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c) return false;
  return true;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  check_ring(a, b);
  const auto& ord = a.ring()->order();
  const auto& f = *a.field();
  const auto& x = a.terms();
  const auto& y = b.terms();
  std::vector<Term> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const int c = ord.compare(x[i].m, y[j].m);
    if (c > 0) {
      out.push_back(x[i++]);
    } else if (c < 0) {
      out.push_back(y[j++]);
    } else {
      const auto s = f.add(x[i].c, y[j].c);
      if (s != 0) out.push_back({x[i].m, s});
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), x.begin() + i, x.end());
  out.insert(out.end(), y.begin() + j, y.end());
  return Polynomial::from_sorted(a.ring(), std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  check_ring(a, b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring());
  const auto& f = *a.field();
  std::unordered_map<Monomial, FiniteField::Raw, MonomialHash> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& s : a.terms())
    for (const auto& t : b.terms()) {
      auto& slot = acc[mono_mul(s.m, t.m)];
      slot = f.add(slot, f.mul(s.c, t.c));
    }
  return Polynomial(a.ring(), from_map(acc));
}

Polynomial poly_arith(const Polynomial& a, const Polynomial& b, PolyOp op) {
  switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::sub: return a - b;
    case PolyOp::mul: return a * b;
  }
  throw InternalError("bad op");
}

std::string format_monomial(const Monomial& m, const Ring& ring) {
  std::string s;
  for (std::size_t i = 0; i < ring.nvars(); ++i) {
    if (!m.e[i]) continue;
    if (!s.empty()) s += "*";
    s += ring.vars()[i];
    if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
  }
  return s.empty() ? "1" : s;
}

std::string format_coefficient(FiniteField::Raw c, const FiniteField& f) {
  auto s = f.format(c);
  if (f.degree() > 1 && s.find('+') != std::string::npos) return "(" + s + ")";
  return s;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& t : terms_) {
    if (!s.empty()) s += " + ";
    if (t.m.is_one()) {
      s += format_coefficient(t.c, *field());
    } else {
      if (t.c != 1) s += format_coefficient(t.c, *field()) + "*";
      s += format_monomial(t.m, *ring_);
    }
  }
  return s;
}

// --- Frobenius ------------------------------------------------------------

std::uint32_t q_exponent(std::uint64_t p, std::uint64_t q) {
  if (q == 0) throw InvalidQ("q must be a power of p");
  std::uint32_t e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) throw InvalidQ("q must be a power of p");
  return e;
}

Polynomial frobenius_power(const Polynomial& f, std::uint32_t e) {
  if (e == 0 || f.is_zero()) return f;
  const auto& field = *f.field();
  const std::uint32_t p = field.characteristic();
  std::vector<Term> t = f.terms();
  for (std::uint32_t k = 0; k < e; ++k)
    for (auto& x : t) {
      x.m = mono_pow(x.m, p);
      x.c = field.frobenius(x.c);
    }
  // Scaling all exponents by p preserves any monomial order.
  return Polynomial::from_sorted(f.ring(), std::move(t));
}

std::vector<Polynomial> bracket_power(const std::vector<Polynomial>& gens,
                                      std::uint64_t q) {
  std::vector<Polynomial> out;
  if (gens.empty()) return out;
  const auto e = q_exponent(gens.front().field()->characteristic(), q);
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(frobenius_power(g, e));
  return out;
}

// --- substitution ---------------------------------------------------------

Polynomial substitute(const Polynomial& f, const Substitution& s) {
  const auto& ring = f.ring();
  if (s.size() != ring->nvars()) throw PreconditionError("substitution arity mismatch");
  if (f.is_zero()) return f;
  const RingPtr& target = s.empty() ? ring : s.front().ring();
  for (const auto& img : s)
    if (!img.ring()->same_as(*target)) throw SpecMismatch("substitution images disagree on ring");
  std::vector<std::vector<Polynomial>> powers(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) powers[i].push_back(Polynomial::constant(target, 1));
  auto power = [&](std::size_t i, std::uint32_t k) -> const Polynomial& {
    while (powers[i].size() <= k) powers[i].push_back(powers[i].back() * s[i]);
    return powers[i][k];
  };
  const auto& field = *target->field();
  std::unordered_map<Monomial, FiniteField::Raw, MonomialHash> acc;
  for (const auto& t : f.terms()) {
    Polynomial prod = Polynomial::constant(target, t.c);
    for (std::size_t i = 0; i < s.size() && !prod.is_zero(); ++i)
      if (t.m.e[i]) prod = prod * power(i, t.m.e[i]);
    for (const auto& x : prod.terms()) {
      auto& slot = acc[x.m];
      slot = field.add(slot, x.c);
    }
  }
  return Polynomial(target, from_map(acc));
}

Polynomial homogeneous_component(const Polynomial& f, std::uint32_t d) {
  std::vector<Term> t;
  for (const auto& x : f.terms())
    if (x.m.deg == d) t.push_back(x);
  return Polynomial::from_sorted(f.ring(), std::move(t));
}

// --- matrices -------------------------------------------------------------

FieldMatrix FieldMatrix::identity(std::size_t n) {
  FieldMatrix m;
  m.n = n;
  m.a.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) m.a[i * n + i] = 1;
  return m;
}

FieldMatrix mat_mul(const FieldMatrix& x, const FieldMatrix& y,
                    const FiniteField& f) {
  if (x.n != y.n) throw PreconditionError("matrix size mismatch");
  FieldMatrix r;
  r.n = x.n;
  r.a.assign(x.n * x.n, 0);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k) {
      const auto xik = x.at(i, k);
      if (!xik) continue;
      for (std::size_t j = 0; j < x.n; ++j)
        r.at(i, j) = f.add(r.at(i, j), f.mul(xik, y.at(k, j)));
    }
  return r;
}

FieldMatrix mat_inverse(const FieldMatrix& m, const FiniteField& f) {
  const std::size_t n = m.n;
  FieldMatrix a = m, inv = FieldMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a.at(piv, c) == 0) ++piv;
    if (piv == n) throw SingularMatrix();
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a.at(piv, j), a.at(c, j));
      std::swap(inv.at(piv, j), inv.at(c, j));
    }
    const auto s = f.inv(a.at(c, c));
    for (std::size_t j = 0; j < n; ++j) {
      a.at(c, j) = f.mul(a.at(c, j), s);
      inv.at(c, j) = f.mul(inv.at(c, j), s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a.at(r, c) == 0) continue;
      const auto k = a.at(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a.at(r, j) = f.sub(a.at(r, j), f.mul(k, a.at(c, j)));
        inv.at(r, j) = f.sub(inv.at(r, j), f.mul(k, inv.at(c, j)));
      }
    }
  }
  return inv;
}

bool mat_invertible(const FieldMatrix& m, const FiniteField& f) {
  try {
    mat_inverse(m, f);
    return true;
  } catch (const SingularMatrix&) {
    return false;
  }
}

Substitution linear_substitution(const FieldMatrix& m, const RingPtr& ring) {
  if (m.n != ring->nvars()) throw PreconditionError("matrix size mismatch");
  Substitution s;
  for (std::size_t i = 0; i < m.n; ++i) {
    std::vector<Term> t;
    for (std::size_t j = 0; j < m.n; ++j)
      if (m.at(i, j)) t.push_back({Monomial::var(j), m.at(i, j)});
    s.emplace_back(ring, std::move(t));
  }
  return s;
}

Polynomial linear_change(const Polynomial& f, const FieldMatrix& m) {
  if (!mat_invertible(m, *f.field())) throw SingularMatrix();
  return substitute(f, linear_substitution(m, f.ring()));
}

Polynomial map_coefficients(const Polynomial& f, const RingPtr& target,
                            const FieldEmbedding& emb) {
  if (target->nvars() != f.ring()->nvars()) throw SpecMismatch("arity mismatch");
  std::vector<Term> t = f.terms();
  for (auto& x : t) x.c = emb(x.c);
  return Polynomial(target, std::move(t));
}

}  // namespace hk
