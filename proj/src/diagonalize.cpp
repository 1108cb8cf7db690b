#include "hk/diagonalize.hpp"

#include <algorithm>
#include <bit>

namespace hk {

namespace {

using Raw = FiniteField::Raw;

TruncatedSeries series(const Polynomial& p, std::uint32_t N, bool lossy = false) {
  TruncatedSeries s(p, N);
  return s.with_lossy(s.lossy() || lossy);
}

TruncatedSeries zero_like(const TruncatedSeries& f) { return TruncatedSeries(Polynomial(f.ring()), f.precision()); }

TruncatedSeries var_like(const TruncatedSeries& f, std::size_t i) {
  return TruncatedSeries(Polynomial::variable(f.ring(), i), f.precision());
}

void require_odd(const FiniteField& field) {
  if (field.characteristic() == 2) throw UnsupportedCharacteristic("quadratic forms need p != 2");
}

bool is_diagonal_quadratic(const Polynomial& q) {
  for (const auto& t : q.terms())
    if (std::popcount(t.m.support()) != 1) return false;
  return true;
}

// Ring of the same variables over an extension field.
struct Extended {
  RingPtr ring;
  FieldEmbedding emb;
};

TruncatedSeries map_series(const TruncatedSeries& f, const Extended& ext) {
  return series(map_coefficients(f.poly(), ext.ring, ext.emb), f.precision(), f.lossy());
}

// Solves S = y * winv(S) - a(S) for the image of x_i.
TruncatedSeries invert_completion(const TruncatedSeries& winv, const TruncatedSeries& a, std::size_t i) {
  const std::uint32_t N = winv.precision();
  const TruncatedSeries y = var_like(winv, i);
  TruncatedSeries S = y;
  for (std::uint32_t k = 0; k <= N; ++k) {
    const TruncatedSeries next = y * ts_substitute_var(winv, i, S) - ts_substitute_var(a, i, S);
    if (next.poly() == S.poly()) return next;
    S = next;
  }
  throw InternalError("inverse of the completing change did not converge");
}

}  // namespace

QuadricCompletion quadric_complete(const TruncatedSeries& F, std::size_t i) {
  const auto& field = *F.field();
  require_odd(field);
  const std::size_t n = F.ring()->nvars();
  if (i >= n) throw PreconditionError("variable index out of range");
  const std::uint32_t N = F.precision();
  if (N < 3) throw PreconditionError("quadric completion needs precision at least 3");
  auto c = coefficients_in(F, i);
  c.resize(std::max<std::size_t>(c.size(), 3), zero_like(F));
  // v = sum_{j>=2} c_j x_i^{j-2}
  Polynomial vp(F.ring());
  for (std::size_t j = 2; j < c.size(); ++j)
    vp = vp + c[j].poly().mul_term(Monomial::var(i, static_cast<std::uint32_t>(j - 2)), 1);
  const TruncatedSeries v = series(vp, N, F.lossy());
  if (v.constant_term() == 0)
    throw PreconditionError("coefficient of " + F.ring()->vars()[i] + "^2 is not a unit");
  const TruncatedSeries& c1 = c[1];
  if (!c1.is_zero() && c1.order() < 2)
    throw PreconditionError("coefficient of " + F.ring()->vars()[i] + " is not in m^2");
  const TruncatedSeries c0 = c[0].with_precision(N);
  if (c0.order() >= 0 && c0.order() < 2) throw PreconditionError("F has terms of order below 2");
  const Polynomial Qp = homogeneous_component(c0.poly(), 2);
  if (!is_diagonal_quadratic(Qp))
    throw PreconditionError("quadratic part of the remaining variables is not diagonal");
  const TruncatedSeries Q(Qp, N);

  const TruncatedSeries a = c1.with_precision(N) * ts_scale(ts_inverse(v), field.inv(field.from_int(2)));
  QuadricCompletion out;
  out.v = v;
  out.a = a;
  out.G1 = c0 - Q - v * a * a;
  out.Q = Q;
  return out;
}

QuadraticDiagonalization diagonalize_quadratic_part(const TruncatedSeries& F) {
  const auto& field = *F.field();
  require_odd(field);
  const std::size_t n = F.ring()->nvars();
  const Raw half = field.inv(field.from_int(2));
  // Gram matrix of the degree-2 part.
  std::vector<Raw> A(n * n, 0);
  const Polynomial quad = homogeneous_component(F.poly(), 2);
  for (const auto& t : quad.terms()) {
    std::vector<std::size_t> s;
    for (std::size_t v = 0; v < n; ++v)
      for (std::uint32_t k = 0; k < t.m.e[v]; ++k) s.push_back(v);
    if (s[0] == s[1]) {
      A[s[0] * n + s[0]] = t.c;
    } else {
      A[s[0] * n + s[1]] = A[s[1] * n + s[0]] = field.mul(t.c, half);
    }
  }
  // Columns w_k of M, as coefficient vectors; B(u, v) = u^T A v.
  std::vector<std::vector<Raw>> W(n, std::vector<Raw>(n, 0));
  for (std::size_t k = 0; k < n; ++k) W[k][k] = 1;
  auto B = [&](const std::vector<Raw>& u, const std::vector<Raw>& v) {
    Raw s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!u[i]) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (v[j] && A[i * n + j]) s = field.add(s, field.mul(u[i], field.mul(A[i * n + j], v[j])));
    }
    return s;
  };
  auto axpy = [&](std::vector<Raw>& y, Raw c, const std::vector<Raw>& x) {
    for (std::size_t i = 0; i < n; ++i) y[i] = field.add(y[i], field.mul(c, x[i]));
  };

  std::vector<Raw> d(n, 0);
  std::size_t rank = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n && piv == n; ++i)
      if (B(W[i], W[i])) piv = i;
    if (piv == n) {
      // No anisotropic column left; use w_i + w_j for a nonzero pairing.
      for (std::size_t i = k; i < n && piv == n; ++i)
        for (std::size_t j = i + 1; j < n && piv == n; ++j)
          if (B(W[i], W[j])) {
            axpy(W[i], 1, W[j]);
            piv = i;
          }
    }
    if (piv == n) break;
    std::swap(W[k], W[piv]);
    d[k] = B(W[k], W[k]);
    const Raw inv = field.inv(d[k]);
    for (std::size_t j = k + 1; j < n; ++j) {
      const Raw b = B(W[k], W[j]);
      if (b) axpy(W[j], field.neg(field.mul(b, inv)), W[k]);
    }
    ++rank;
  }

  auto rescale = [&](std::size_t k, Raw s) {
    for (auto& x : W[k]) x = field.mul(x, s);
    d[k] = field.mul(d[k], field.mul(s, s));
  };
  std::vector<std::size_t> nonsquares;
  for (std::size_t k = 0; k < rank; ++k) {
    if (auto r = field.sqrt(d[k])) {
      rescale(k, field.inv(*r));
    } else {
      nonsquares.push_back(k);
    }
  }
  while (nonsquares.size() >= 2) {
    const std::size_t i = nonsquares[nonsquares.size() - 2], j = nonsquares.back();
    nonsquares.resize(nonsquares.size() - 2);
    const Raw di = d[i], dj = d[j];
    // Smallest a (in encoding order) with (1 - di a^2) / dj a square.
    bool done = false;
    for (Raw a = 0; a < field.order() && !done; ++a) {
      const Raw rest = field.div(field.sub(1, field.mul(di, field.mul(a, a))), dj);
      const auto b = field.sqrt(rest);
      if (!b) continue;
      std::vector<Raw> wi(n, 0), wj(n, 0);
      axpy(wi, a, W[i]);
      axpy(wi, *b, W[j]);
      axpy(wj, field.neg(field.mul(dj, *b)), W[i]);
      axpy(wj, field.mul(di, a), W[j]);
      W[i] = wi;
      W[j] = wj;
      d[i] = 1;
      d[j] = field.mul(di, dj);
      rescale(j, field.inv(*field.sqrt(d[j])));
      done = true;
    }
    if (!done) throw InternalError("no representation of 1 by a binary form");
  }
  QuadraticDiagonalization out;
  out.l = static_cast<int>(rank) - 1;
  if (!nonsquares.empty()) {
    const std::size_t k = nonsquares.front();
    const Raw eta = field.canonical_nonsquare();
    rescale(k, *field.sqrt(field.div(eta, d[k])));
    std::swap(W[k], W[rank - 1]);
    std::swap(d[k], d[rank - 1]);
    out.needs_extension = true;
  }
  out.M = FieldMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) out.M.at(i, k) = W[k][i];
  out.coeffs = d;
  return out;
}

std::string to_string(NormalForm f) {
  switch (f) {
    case NormalForm::sum_of_squares: return "sum-of-squares";
    case NormalForm::squares_plus_cube: return "squares-plus-cube";
    case NormalForm::degenerate: return "degenerate";
  }
  return "degenerate";
}

TruncatedSeries ts_linear_change(const TruncatedSeries& f, const FieldMatrix& m) {
  return TruncatedSeries(linear_change(f.poly(), m), f.precision()).with_lossy(f.lossy());
}

bool verify_substitution(const TruncatedSeries& F, const std::vector<TruncatedSeries>& phi,
                         const TruncatedSeries& target) {
  const std::size_t n = F.ring()->nvars();
  if (phi.size() != n) throw PreconditionError("substitution arity mismatch");
  const auto& field = *F.field();
  FieldMatrix L = FieldMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (phi[i].constant_term() != 0) throw PreconditionError("non-local substitution");
    for (std::size_t j = 0; j < n; ++j) L.at(i, j) = phi[i].poly().coefficient(Monomial::var(j, 1));
  }
  if (!mat_invertible(L, field)) throw PreconditionError("substitution has a singular linear part");
  const TruncatedSeries lhs = ts_substitute(F, phi);
  return lhs.equals_mod(target);
}

DiagonalizationCertificate diagonalize_hypersurface(const TruncatedSeries& F0, NormalForm target) {
  if (target == NormalForm::degenerate) throw PreconditionError("target must be a normal form");
  require_odd(*F0.field());
  if (target == NormalForm::squares_plus_cube && F0.field()->characteristic() == 3)
    throw UnsupportedCharacteristic("the cube target needs p != 3");
  if (F0.constant_term() != 0 || (F0.order() >= 0 && F0.order() < 2))
    throw PreconditionError("F must lie in m^2");
  const std::size_t n = F0.ring()->nvars();
  const std::uint32_t N = F0.precision();

  DiagonalizationCertificate cert;
  TruncatedSeries input = F0;
  auto qd = diagonalize_quadratic_part(input);
  if (qd.needs_extension) {
    const auto emb = extend_field(input.field(), 2);
    const Extended e2{input.ring()->with_field(emb.target()), emb};
    input = map_series(input, e2);
    cert.extensions.push_back(emb.target()->spec().to_string());
    cert.steps.push_back("extend field to " + emb.target()->spec().to_string() + " for a non-square coefficient");
    qd = diagonalize_quadratic_part(input);
  }
  const auto& field = *input.field();
  const int rank = qd.l + 1;
  cert.rank = rank;

  // phi as series images; starts as the linear change.
  std::vector<TruncatedSeries> phi;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial img(input.ring());
    for (std::size_t j = 0; j < n; ++j)
      if (qd.M.at(i, j)) img = img + Polynomial::variable(input.ring(), j).scaled(qd.M.at(i, j));
    phi.push_back(TruncatedSeries(img, N));
  }
  TruncatedSeries F = ts_linear_change(input, qd.M);
  if (!(qd.M.a == FieldMatrix::identity(n).a)) cert.steps.push_back("linear change to a diagonal quadratic part");

  auto apply = [&](std::size_t i, const TruncatedSeries& S) {
    F = ts_substitute_var(F, i, S);
    for (auto& img : phi) img = ts_substitute_var(img, i, S);
  };

  std::vector<Raw> coeffs(n, 0);
  for (int i = 0; i < rank; ++i) {
    const auto comp = quadric_complete(F, static_cast<std::size_t>(i));
    const Raw ci = comp.v.constant_term();
    coeffs[i] = ci;
    const TruncatedSeries w = ts_sqrt(ts_scale(comp.v, field.inv(ci)));
    const bool trivial = comp.a.is_zero() && w.poly() == Polynomial::constant(F.ring(), 1);
    if (!trivial) {
      apply(static_cast<std::size_t>(i), invert_completion(ts_inverse(w), comp.a, static_cast<std::size_t>(i)));
      cert.steps.push_back("complete the square in " + F.ring()->vars()[i]);
    }
  }

  NormalForm tag = NormalForm::degenerate;
  Polynomial nf(F.ring());
  for (int i = 0; i < rank; ++i)
    nf = nf + Polynomial::variable(F.ring(), i).pow(2).scaled(coeffs[i]);
  if (rank == static_cast<int>(n)) {
    tag = NormalForm::sum_of_squares;
  } else if (target == NormalForm::squares_plus_cube && rank + 1 == static_cast<int>(n)) {
    // Remainder is x_d^3 U; look for a unit U and take its cube root.
    const std::size_t dvar = n - 1;
    const TruncatedSeries rest = F - TruncatedSeries(nf, N);
    bool divisible = true;
    std::vector<Term> ut;
    for (auto t : rest.poly().terms()) {
      if (t.m.e[dvar] < 3) {
        divisible = false;
        break;
      }
      t.m.e[dvar] -= 3;
      t.m.deg -= 3;
      ut.push_back(t);
    }
    const TruncatedSeries U = series(Polynomial(F.ring(), std::move(ut)), N, rest.lossy());
    if (divisible && U.constant_term() != 0) {
      FieldPtr fld = F.field();
      TruncatedSeries Uc = U;
      if (!fld->kth_root(U.constant_term(), 3)) {
        const auto emb = extend_field(fld, 3);
        const Extended e3{F.ring()->with_field(emb.target()), emb};
        input = map_series(input, e3);
        F = map_series(F, e3);
        for (auto& img : phi) img = map_series(img, e3);
        for (auto& c : coeffs) c = emb(c);
        Uc = map_series(U, e3);
        nf = map_coefficients(nf, e3.ring, emb);
        cert.extensions.push_back(emb.target()->spec().to_string());
        cert.steps.push_back("extend field to " + emb.target()->spec().to_string() + " for a cube root");
      }
      const TruncatedSeries w = ts_kth_root(Uc, 3);
      if (!(w.poly() == Polynomial::constant(F.ring(), 1))) {
        const TruncatedSeries winv = ts_inverse(w);
        apply(dvar, invert_completion(winv, zero_like(winv), dvar));
        cert.steps.push_back("take a cube root in " + F.ring()->vars()[dvar]);
      }
      nf = nf + Polynomial::variable(F.ring(), dvar).pow(3);
      tag = NormalForm::squares_plus_cube;
    }
  }
  if (tag == NormalForm::degenerate) {
    nf = F.poly();  // the achieved partial form
    cert.steps.push_back("rank " + std::to_string(rank) + " of " + std::to_string(n) + ": degenerate");
  }
  cert.input = input;
  cert.substitution = phi;
  cert.tag = tag;
  cert.coefficients = coeffs;
  cert.normal_form = TruncatedSeries(nf, N);
  cert.residual = F - cert.normal_form;
  cert.verified = verify_substitution(cert.input, cert.substitution, cert.normal_form);
  if (!cert.verified) throw InternalError("diagonalization certificate failed its own check");
  return cert;
}

}  // namespace hk
