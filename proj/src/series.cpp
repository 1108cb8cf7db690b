#include "hk/series.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace hk {

namespace {

using Raw = FiniteField::Raw;
using Acc = std::unordered_map<Monomial, Raw, MonomialHash>;

std::vector<Term> acc_terms(const Acc& acc) {
  std::vector<Term> t;
  t.reserve(acc.size());
  for (const auto& [m, c] : acc)
    if (c) t.push_back({m, c});
  return t;
}

std::vector<Term> by_degree(const Polynomial& p) {
  std::vector<Term> t = p.terms();
  std::stable_sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return a.m.deg < b.m.deg; });
  return t;
}

// Product with terms of total degree >= N dropped; sets lossy when a
// nonzero product term was dropped.
Polynomial mul_trunc(const Polynomial& a, const Polynomial& b, std::uint32_t N, bool& lossy) {
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring());
  const auto& f = *a.field();
  const auto x = by_degree(a), y = by_degree(b);
  Acc acc;
  for (const auto& s : x) {
    if (s.m.deg >= N) {
      lossy = true;
      break;
    }
    for (const auto& t : y) {
      if (s.m.deg + t.m.deg >= N) {
        lossy = true;
        break;
      }
      auto& slot = acc[mono_mul(s.m, t.m)];
      slot = f.add(slot, f.mul(s.c, t.c));
    }
  }
  return Polynomial(a.ring(), acc_terms(acc));
}

Polynomial truncate_poly(const Polynomial& p, std::uint32_t N, bool& lossy) {
  std::vector<Term> t;
  for (const auto& x : p.terms()) {
    if (x.m.deg < N) {
      t.push_back(x);
    } else {
      lossy = true;
    }
  }
  return Polynomial::from_sorted(p.ring(), std::move(t));
}

void check_same(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (!a.ring() || !b.ring() || !a.ring()->same_as(*b.ring()))
    throw SpecMismatch("series from different rings");
}

// Homogeneous components 0..N-1.
std::vector<Polynomial> components(const Polynomial& p, std::uint32_t N) {
  std::vector<std::vector<Term>> parts(N);
  for (const auto& t : p.terms())
    if (t.m.deg < N) parts[t.m.deg].push_back(t);
  std::vector<Polynomial> out;
  out.reserve(N);
  for (auto& x : parts) out.push_back(Polynomial::from_sorted(p.ring(), std::move(x)));
  return out;
}

// Degree-d part of sum_{i+j=d, lo<=i<=hi} A_i B_j.
Polynomial graded_product(const std::vector<Polynomial>& A, const std::vector<Polynomial>& B,
                          std::size_t d, std::size_t lo, std::size_t hi, const RingPtr& ring) {
  Polynomial acc(ring);
  for (std::size_t i = lo; i <= hi && i <= d; ++i) {
    if (i >= A.size() || d - i >= B.size()) continue;
    if (A[i].is_zero() || B[d - i].is_zero()) continue;
    acc = acc + A[i] * B[d - i];
  }
  return acc;
}

Polynomial sum_components(const std::vector<Polynomial>& parts, const RingPtr& ring) {
  std::vector<Term> t;
  for (const auto& p : parts) t.insert(t.end(), p.terms().begin(), p.terms().end());
  return Polynomial(ring, std::move(t));
}

}  // namespace

TruncatedSeries::TruncatedSeries(Polynomial p, std::uint32_t N) : n_(N) {
  if (N == 0) throw PreconditionError("series precision must be positive");
  bool lossy = false;
  p_ = truncate_poly(p, N, lossy);
  lossy_ = lossy;
}

TruncatedSeries TruncatedSeries::with_precision(std::uint32_t N) const {
  TruncatedSeries s(p_, std::min(N, n_));
  if (N > n_) s.n_ = N;
  s.lossy_ = s.lossy_ || lossy_;
  return s;
}

TruncatedSeries TruncatedSeries::with_lossy(bool lossy) const {
  TruncatedSeries s = *this;
  s.lossy_ = lossy;
  return s;
}

bool TruncatedSeries::equals_mod(const TruncatedSeries& o) const {
  if (!ring() || !o.ring() || !ring()->same_as(*o.ring())) return false;
  const std::uint32_t N = std::min(n_, o.n_);
  bool l = false;
  return truncate_poly(p_, N, l) == truncate_poly(o.p_, N, l);
}

std::string TruncatedSeries::to_string() const { return p_.to_string() + "@" + std::to_string(n_); }

TruncatedSeries parse_series(std::string_view text, const RingPtr& ring,
                             std::uint32_t default_precision) {
  const auto at = text.rfind('@');
  if (at == std::string_view::npos) {
    if (default_precision == 0) throw ParseError("missing precision annotation '@N'", text.size());
    return TruncatedSeries(parse_poly(text, ring), default_precision);
  }
  std::uint64_t N = 0;
  std::size_t i = at + 1;
  while (i < text.size() && text[i] == ' ') ++i;
  if (i == text.size()) throw ParseError("malformed precision", i);
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == ' ') continue;
    if (c < '0' || c > '9') throw ParseError("malformed precision", i);
    N = N * 10 + static_cast<std::uint64_t>(c - '0');
    if (N > 1000) throw ParseError("precision too large", i);
  }
  if (N == 0) throw ParseError("precision must be positive", at + 1);
  return TruncatedSeries(parse_poly(text.substr(0, at), ring), static_cast<std::uint32_t>(N));
}

TruncatedSeries ts_arith(const TruncatedSeries& a, const TruncatedSeries& b, SeriesOp op) {
  check_same(a, b);
  const std::uint32_t N = std::min(a.precision(), b.precision());
  bool lossy = a.lossy() || b.lossy();
  Polynomial p(a.ring());
  switch (op) {
    case SeriesOp::add: p = a.poly() + b.poly(); break;
    case SeriesOp::sub: p = a.poly() - b.poly(); break;
    case SeriesOp::mul: p = mul_trunc(a.poly(), b.poly(), N, lossy); break;
  }
  TruncatedSeries s(p, N);
  return s.with_lossy(s.lossy() || lossy);
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  return ts_arith(a, b, SeriesOp::add);
}
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  return ts_arith(a, b, SeriesOp::sub);
}
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  return ts_arith(a, b, SeriesOp::mul);
}

TruncatedSeries ts_scale(const TruncatedSeries& a, Raw c) {
  return TruncatedSeries(a.poly().scaled(c), a.precision()).with_lossy(a.lossy());
}

TruncatedSeries ts_pow(const TruncatedSeries& a, std::uint64_t k) {
  TruncatedSeries result(Polynomial::constant(a.ring(), 1), a.precision());
  TruncatedSeries base = a;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

TruncatedSeries ts_inverse(const TruncatedSeries& f) {
  const Raw f0 = f.constant_term();
  if (f0 == 0) throw NotAUnit("series with zero constant term is not invertible");
  const auto& field = *f.field();
  const std::uint32_t N = f.precision();
  const auto F = components(f.poly(), N);
  std::vector<Polynomial> G(N, Polynomial(f.ring()));
  const Raw inv0 = field.inv(f0);
  G[0] = Polynomial::constant(f.ring(), inv0);
  for (std::size_t d = 1; d < N; ++d)
    G[d] = graded_product(F, G, d, 1, d, f.ring()).scaled(field.neg(inv0));
  TruncatedSeries g(sum_components(G, f.ring()), N);
  bool exact = !f.lossy();
  if (exact) {
    bool l = false;
    mul_trunc(f.poly(), g.poly(), 2 * N, l);
    exact = (f.poly() * g.poly()) == Polynomial::constant(f.ring(), 1);
  }
  return g.with_lossy(!exact);
}

TruncatedSeries ts_sqrt(const TruncatedSeries& f) {
  const auto& field = *f.field();
  if (field.characteristic() == 2) throw UnsupportedCharacteristic("square roots need p != 2");
  const Raw f0 = f.constant_term();
  if (f0 == 0) throw NotAUnit("square root needs a unit");
  const auto r0 = field.sqrt(f0);
  if (!r0) throw NotASquare();
  const std::uint32_t N = f.precision();
  const auto F = components(f.poly(), N);
  std::vector<Polynomial> G(N, Polynomial(f.ring()));
  G[0] = Polynomial::constant(f.ring(), *r0);
  const Raw inv2g0 = field.inv(field.add(*r0, *r0));
  for (std::size_t d = 1; d < N; ++d) {
    const Polynomial cross = d >= 2 ? graded_product(G, G, d, 1, d - 1, f.ring()) : Polynomial(f.ring());
    G[d] = (F[d] - cross).scaled(inv2g0);
  }
  TruncatedSeries g(sum_components(G, f.ring()), N);
  const bool exact = !f.lossy() && (g.poly() * g.poly()) == f.poly();
  return g.with_lossy(!exact);
}

TruncatedSeries ts_kth_root(const TruncatedSeries& f, std::uint64_t k) {
  const auto& field = *f.field();
  if (k == 0) throw PreconditionError("root index must be positive");
  if (k % field.characteristic() == 0)
    throw UnsupportedCharacteristic("root index divisible by the characteristic");
  if (k == 1) return f;
  const Raw f0 = f.constant_term();
  if (f0 == 0) throw NotAUnit("k-th root needs a unit");
  const auto r0 = field.kth_root(f0, k);
  if (!r0) throw NoRoot();
  const std::uint32_t N = f.precision();
  const auto F = components(f.poly(), N);
  std::vector<Polynomial> G(N, Polynomial(f.ring()));
  G[0] = Polynomial::constant(f.ring(), *r0);
  const Raw denom = field.inv(field.mul(field.from_int(static_cast<std::int64_t>(k % field.characteristic())),
                                        field.pow(*r0, k - 1)));
  for (std::size_t d = 1; d < N; ++d) {
    // Degree-d part of (G_0 + ... + G_{d-1})^k.
    const TruncatedSeries lower(sum_components(std::vector<Polynomial>(G.begin(), G.begin() + d), f.ring()),
                                static_cast<std::uint32_t>(d + 1));
    const Polynomial c = homogeneous_component(ts_pow(lower, k).poly(), static_cast<std::uint32_t>(d));
    G[d] = (F[d] - c).scaled(denom);
  }
  TruncatedSeries g(sum_components(G, f.ring()), N);
  const bool exact = !f.lossy() && g.poly().pow(k) == f.poly();
  return g.with_lossy(!exact);
}

// --- substitution ---------------------------------------------------------

namespace {

class Composer {
 public:
  Composer(const std::vector<const TruncatedSeries*>& images, const RingPtr& target, std::uint32_t N)
      : images_(images), target_(target), n_(N) {
    powers_.resize(images.size());
  }

  // Horner evaluation of the given terms in variables v, v+1, ...
  Polynomial eval(std::vector<Term> terms, std::size_t v) {
    if (terms.empty()) return Polynomial(target_);
    while (v < images_.size() && !images_[v]) ++v;
    if (v == images_.size()) {
      return Polynomial(target_, std::move(terms));
    }
    std::map<std::uint32_t, std::vector<Term>, std::greater<>> groups;
    for (auto& t : terms) {
      const std::uint32_t k = t.m.e[v];
      t.m.e[v] = 0;
      t.m.deg -= k;
      groups[k].push_back(t);
    }
    Polynomial acc(target_);
    std::uint32_t prev = groups.begin()->first;
    for (auto& [k, sub] : groups) {
      if (prev > k) acc = mul_trunc(acc, power(v, prev - k), n_, lossy_);
      acc = acc + eval(std::move(sub), v + 1);
      prev = k;
    }
    if (prev > 0) acc = mul_trunc(acc, power(v, prev), n_, lossy_);
    return acc;
  }

  bool lossy() const { return lossy_; }

 private:
  const Polynomial& power(std::size_t v, std::uint32_t k) {
    auto& pw = powers_[v];
    if (pw.empty()) pw.push_back(Polynomial::constant(target_, 1));
    while (pw.size() <= k) pw.push_back(mul_trunc(pw.back(), images_[v]->poly(), n_, lossy_));
    return pw[k];
  }

  std::vector<const TruncatedSeries*> images_;
  RingPtr target_;
  std::uint32_t n_;
  std::vector<std::vector<Polynomial>> powers_;
  bool lossy_ = false;
};

}  // namespace

TruncatedSeries ts_substitute(const TruncatedSeries& f, const std::vector<TruncatedSeries>& images) {
  if (images.size() != f.ring()->nvars()) throw PreconditionError("substitution arity mismatch");
  if (images.empty()) return f;
  const RingPtr& target = images.front().ring();
  std::uint32_t N = f.precision();
  bool lossy = f.lossy();
  std::vector<const TruncatedSeries*> ptrs;
  for (const auto& img : images) {
    if (!img.ring()->same_as(*target)) throw SpecMismatch("substitution images disagree on ring");
    if (img.constant_term() != 0 && f.lossy())
      throw PreconditionError("non-local substitution into a truncated series");
    N = std::min(N, img.precision());
    lossy = lossy || img.lossy();
    ptrs.push_back(&img);
  }
  if (!target->field()->same_as(*f.field())) throw SpecMismatch("substitution changes the field");
  Composer c(ptrs, target, N);
  Polynomial p = c.eval(f.poly().terms(), 0);
  return TruncatedSeries(p, N).with_lossy(lossy || c.lossy());
}

TruncatedSeries ts_substitute_var(const TruncatedSeries& f, std::size_t var, const TruncatedSeries& image) {
  if (var >= f.ring()->nvars()) throw PreconditionError("variable index out of range");
  check_same(f, image);
  if (image.constant_term() != 0 && f.lossy())
    throw PreconditionError("non-local substitution into a truncated series");
  const std::uint32_t N = std::min(f.precision(), image.precision());
  std::vector<const TruncatedSeries*> ptrs(f.ring()->nvars(), nullptr);
  ptrs[var] = &image;
  Composer c(ptrs, f.ring(), N);
  Polynomial p = c.eval(f.poly().terms(), 0);
  return TruncatedSeries(p, N).with_lossy(f.lossy() || image.lossy() || c.lossy());
}

// --- Weierstrass preparation ----------------------------------------------

int distinguished_degree(const TruncatedSeries& f, std::size_t var) {
  int best = -1;
  for (const auto& t : f.poly().terms())
    if (t.m.deg == t.m.e[var] && (best < 0 || static_cast<int>(t.m.deg) < best))
      best = static_cast<int>(t.m.deg);
  return best;
}

std::vector<TruncatedSeries> coefficients_in(const TruncatedSeries& f, std::size_t var) {
  std::vector<std::vector<Term>> parts;
  for (auto t : f.poly().terms()) {
    const std::uint32_t k = t.m.e[var];
    if (parts.size() <= k) parts.resize(k + 1);
    t.m.e[var] = 0;
    t.m.deg -= k;
    parts[k].push_back(t);
  }
  std::vector<TruncatedSeries> out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const std::uint32_t N = f.precision() > k ? f.precision() - static_cast<std::uint32_t>(k) : 1;
    out.push_back(TruncatedSeries(Polynomial(f.ring(), std::move(parts[k])), N).with_lossy(f.lossy()));
  }
  return out;
}

namespace {

// Weighted truncation: weight(var) = 1, every other variable weighs w.
struct Weights {
  std::size_t var;
  std::uint32_t w;
  std::uint64_t of(const Monomial& m) const noexcept {
    return m.e[var] + std::uint64_t{w} * (m.deg - m.e[var]);
  }
};

Polynomial wtrunc(const Polynomial& p, const Weights& wt, std::uint64_t W) {
  std::vector<Term> t;
  for (const auto& x : p.terms())
    if (wt.of(x.m) < W) t.push_back(x);
  return Polynomial::from_sorted(p.ring(), std::move(t));
}

Polynomial wmul(const Polynomial& a, const Polynomial& b, const Weights& wt, std::uint64_t W) {
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring());
  const auto& f = *a.field();
  auto x = a.terms(), y = b.terms();
  auto byw = [&](const Term& s, const Term& t) { return wt.of(s.m) < wt.of(t.m); };
  std::sort(x.begin(), x.end(), byw);
  std::sort(y.begin(), y.end(), byw);
  Acc acc;
  for (const auto& s : x) {
    const auto ws = wt.of(s.m);
    if (ws >= W) break;
    for (const auto& t : y) {
      if (ws + wt.of(t.m) >= W) break;
      auto& slot = acc[mono_mul(s.m, t.m)];
      slot = f.add(slot, f.mul(s.c, t.c));
    }
  }
  return Polynomial(a.ring(), acc_terms(acc));
}

// Inverse of a unit modulo weight W, by Newton iteration.
Polynomial winv(const Polynomial& u, const Weights& wt, std::uint64_t W) {
  const auto& f = *u.field();
  Polynomial g = Polynomial::constant(u.ring(), f.inv(u.constant_term()));
  const Polynomial two = Polynomial::constant(u.ring(), f.from_int(2));
  for (std::uint64_t prec = 1; prec < W;) {
    prec = std::min<std::uint64_t>(2 * prec + 1, W);
    g = wmul(g, two - wmul(u, g, wt, prec), wt, prec);
  }
  return wtrunc(g, wt, W);
}

// Splits p as low + var^n * high with deg_var(low) < n.
std::pair<Polynomial, Polynomial> split_at(const Polynomial& p, std::size_t var, std::uint32_t n) {
  std::vector<Term> lo, hi;
  for (auto t : p.terms()) {
    if (t.m.e[var] < n) {
      lo.push_back(t);
    } else {
      t.m.e[var] -= n;
      t.m.deg -= n;
      hi.push_back(t);
    }
  }
  return {Polynomial(p.ring(), std::move(lo)), Polynomial(p.ring(), std::move(hi))};
}

}  // namespace

PreparedForm weierstrass_prepare(const TruncatedSeries& f, std::size_t var) {
  const auto& ring = f.ring();
  if (var >= ring->nvars()) throw PreconditionError("variable index out of range");
  const int nd = distinguished_degree(f, var);
  if (nd < 0) throw NotPreparable("no unit coefficient in " + ring->vars()[var] + " below precision");
  const std::uint32_t n = static_cast<std::uint32_t>(nd);
  const std::uint32_t N = f.precision();
  const auto& field = *f.field();

  PreparedForm out;
  out.var = var;
  out.degree = n;
  if (n == 0) {
    out.unit = f;
    out.distinguished = TruncatedSeries(Polynomial::constant(ring, 1), N);
    return out;
  }

  // Every term of total degree < N has weight at most (n + 1)(N - 1).
  const Weights wt{var, n + 1};
  const std::uint64_t W = std::uint64_t{n + 1} * (N - 1) + 1;
  const auto [P, U] = split_at(f.poly(), var, n);
  const Polynomial Uinv = winv(U, wt, W + n);
  const Polynomial M = wmul(Uinv, P, wt, W + n);  // weight >= n + 1

  // V solves V = 1 - beta(V M), where beta keeps terms with var-degree >= n
  // and divides by var^n. Each round raises the weight, so V is built one
  // weight layer at a time.
  std::vector<std::vector<Term>> Mw(W + n);
  for (const auto& t : M.terms()) Mw[wt.of(t.m)].push_back(t);
  std::vector<std::vector<Term>> Vw(W);
  Vw[0].push_back({Monomial{}, 1});
  for (std::uint64_t w = 1; w < W; ++w) {
    Acc acc;
    for (std::uint64_t i = 0; i < w; ++i) {
      const std::uint64_t j = w + n - i;
      if (j >= Mw.size() || Vw[i].empty() || Mw[j].empty()) continue;
      for (const auto& s : Vw[i])
        for (const auto& t : Mw[j]) {
          Monomial m = mono_mul(s.m, t.m);
          if (m.e[var] < n) continue;
          m.e[var] -= n;
          m.deg -= n;
          auto& slot = acc[m];
          slot = field.sub(slot, field.mul(s.c, t.c));
        }
    }
    Vw[w] = acc_terms(acc);
  }
  std::vector<Term> vt;
  for (auto& layer : Vw) vt.insert(vt.end(), layer.begin(), layer.end());
  const Polynomial V(ring, std::move(vt));

  const Polynomial Q = wmul(V, Uinv, wt, W);
  const Polynomial low = split_at(wmul(Q, P, wt, W), var, n).first;
  const Polynomial fo = Polynomial::monomial(ring, Monomial::var(var, n)) + low;
  const Polynomial u = wmul(U, winv(V, wt, W), wt, W);

  out.unit = TruncatedSeries(u, N);
  out.distinguished = TruncatedSeries(fo, N);
  const bool exact = !f.lossy() && (out.unit.poly() * out.distinguished.poly()) == f.poly();
  out.unit = out.unit.with_lossy(!exact);
  out.distinguished = out.distinguished.with_lossy(!exact);
  auto coeffs = coefficients_in(out.distinguished, var);
  coeffs.resize(n, TruncatedSeries(Polynomial(ring), N));
  for (auto& c : coeffs) c = c.with_precision(N).with_lossy(!exact);
  out.coefficients = std::move(coeffs);
  return out;
}

}  // namespace hk
