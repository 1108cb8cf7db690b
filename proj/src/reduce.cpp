#include "hk/reduce.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <functional>
#include <random>

#include "hk/diagonalize.hpp"
#include "hk/groebner.hpp"

namespace hk {

namespace {

using Raw = FiniteField::Raw;

int deg_in(const TruncatedSeries& g, std::size_t var) { return g.poly().degree_in(var); }

// Coefficient of var^j, as a series free of var.
TruncatedSeries coeff_in(const TruncatedSeries& g, std::size_t var, int j) {
  std::vector<Term> t;
  for (auto x : g.poly().terms()) {
    if (static_cast<int>(x.m.e[var]) != j) continue;
    x.m.e[var] = 0;
    x.m.deg -= static_cast<std::uint32_t>(j);
    t.push_back(x);
  }
  return TruncatedSeries(Polynomial(g.ring(), std::move(t)), g.precision()).with_lossy(g.lossy());
}

TruncatedSeries leading_coeff(const TruncatedSeries& g, std::size_t var) {
  return coeff_in(g, var, deg_in(g, var));
}

TruncatedSeries var_power(const TruncatedSeries& like, std::size_t var, std::uint32_t k, Raw c = 1) {
  return TruncatedSeries(Polynomial::monomial(like.ring(), Monomial::var(var, k), c), like.precision());
}

// (u/c) G - (v/c) X^{s-t} F with u, v the leading coefficients of F and G.
TruncatedSeries alpha_reduce(const TruncatedSeries& F, const TruncatedSeries& G, std::size_t var) {
  const int t = deg_in(F, var), s = deg_in(G, var);
  if (t < 0 || s < t) throw InternalError("alpha step needs deg F <= deg G");
  const auto& field = *F.field();
  const TruncatedSeries u = leading_coeff(F, var), v = leading_coeff(G, var);
  const Raw c = u.constant_term();
  if (c == 0) throw InternalError("alpha step with a non-unit pivot");
  const Raw ci = field.inv(c);
  const TruncatedSeries out =
      G * ts_scale(u, ci) - ts_scale(v, ci) * var_power(F, var, static_cast<std::uint32_t>(s - t)) * F;
  for (const auto& x : out.poly().terms())
    if (static_cast<int>(x.m.e[var]) >= s) throw InternalError("alpha step did not cancel the top term");
  return out;
}

TruncatedSeries drop_var(const TruncatedSeries& g, std::size_t var, const RingPtr& sub) {
  std::vector<Term> t;
  for (auto x : g.poly().terms()) {
    if (x.m.e[var] != 0) throw InternalError("eliminated variable still present");
    for (std::size_t i = var; i + 1 < kMaxVars; ++i) x.m.e[i] = x.m.e[i + 1];
    x.m.e[kMaxVars - 1] = 0;
    t.push_back(x);
  }
  return TruncatedSeries(Polynomial(sub, std::move(t)), g.precision()).with_lossy(g.lossy());
}

void run_step(CIPresentation& state, ReductionTrace& trace, ReductionStep s) {
  s.vars_before = state.ring->vars();
  s.before = state.snapshot();
  state = apply_step(state, s);
  s.vars_after = state.ring->vars();
  s.after = state.snapshot();
  trace.steps.push_back(std::move(s));
}

ReductionTrace start_trace(const CIPresentation& P) {
  ReductionTrace t;
  t.field = P.ring->field()->spec().to_string();
  t.initial_vars = P.ring->vars();
  t.initial = P.snapshot();
  return t;
}

// Homogeneous monomials of degree D in n variables.
void monomials_of_degree(std::size_t n, std::uint32_t D, std::vector<Monomial>& out) {
  Monomial m;
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
    if (i + 1 == n) {
      m.e[i] = left;
      Monomial x = m;
      x.deg = D;
      out.push_back(x);
      m.e[i] = 0;
      return;
    }
    for (std::uint32_t k = 0; k <= left; ++k) {
      m.e[i] = left - k;
      rec(i + 1, k);
    }
    m.e[i] = 0;
  };
  if (n == 0) return;
  rec(0, D);
}

FieldMatrix random_generic_change(std::size_t n, const FiniteField& field, std::mt19937_64& rng) {
  std::uniform_int_distribution<Raw> pick(0, field.order() - 1);
  FieldMatrix U = FieldMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) U.at(i, j) = pick(rng);
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  FieldMatrix P;
  P.n = n;
  P.a.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) P.at(perm[i], i) = 1;
  return mat_mul(U, P, field);
}

std::vector<Raw> shuffled_units(const FiniteField& field, std::mt19937_64& rng) {
  std::vector<Raw> a;
  for (Raw x = 1; x < field.order(); ++x) a.push_back(x);
  std::shuffle(a.begin(), a.end(), rng);
  if (a.size() > 64) a.resize(64);
  return a;
}

std::vector<AuditRow> run_audit(const CIPresentation& before, const CIPresentation& after,
                                const AuditOptions& opts) {
  auto report = [&](const CIPresentation& P) {
    const auto L = LocalRingPresentation::create(P.ring, P.polys());
    HKOptions o = opts.hk;
    if (P.lossy()) o.truncation = P.precision();
    return hk_function(L, maximal_ideal(P.ring), opts.e_max, o);
  };
  const HKReport rb = report(before), ra = report(after);
  if (rb.d != ra.d) throw InternalError("elimination changed the dimension");
  std::vector<AuditRow> rows;
  for (std::size_t k = 0; k < rb.rows.size(); ++k) {
    AuditRow r;
    r.e = rb.rows[k].e;
    r.q = rb.rows[k].q;
    r.before = rb.rows[k].f_e;
    r.after = ra.rows[k].f_e;
    r.exact = rb.rows[k].exact && ra.rows[k].exact;
    r.holds = r.after <= r.before + 1e-9;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

// --- presentations --------------------------------------------------------

CIPresentation CIPresentation::create(RingPtr ring, std::vector<TruncatedSeries> gens, bool verify) {
  for (const auto& g : gens) {
    if (!g.ring()->same_as(*ring)) throw SpecMismatch("generator from a different ring");
    if (g.constant_term() != 0) throw PreconditionError("generator " + g.to_string() + " is not in m");
  }
  CIPresentation P;
  P.ring = std::move(ring);
  P.gens = std::move(gens);
  if (verify) {
    if (!is_regular_sequence(P.ring, {}, P.polys()))
      throw PreconditionError("generators do not form a regular sequence");
    P.regular_sequence = true;
  }
  return P;
}

CIPresentation CIPresentation::from_polynomials(const std::vector<Polynomial>& gens, std::uint32_t precision,
                                                bool verify) {
  if (gens.empty()) throw PreconditionError("no generators");
  std::vector<TruncatedSeries> s;
  for (const auto& g : gens) s.push_back(TruncatedSeries(g, precision));
  return create(gens.front().ring(), std::move(s), verify);
}

std::vector<Polynomial> CIPresentation::polys() const {
  std::vector<Polynomial> out;
  for (const auto& g : gens) out.push_back(g.poly());
  return out;
}

bool CIPresentation::lossy() const {
  return std::any_of(gens.begin(), gens.end(), [](const TruncatedSeries& g) { return g.lossy(); });
}

std::uint32_t CIPresentation::precision() const {
  std::uint32_t N = 0;
  for (const auto& g : gens) N = N ? std::min(N, g.precision()) : g.precision();
  return N;
}

std::vector<std::string> CIPresentation::snapshot() const {
  std::vector<std::string> out;
  for (const auto& g : gens) out.push_back(g.to_string());
  return out;
}

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::alpha: return "alpha-step";
    case StepKind::beta: return "beta-step";
    case StepKind::weierstrass: return "weierstrass";
    case StepKind::linear_change: return "linear-change";
    case StepKind::drop_regular: return "drop-regular-generator";
    case StepKind::add_linear: return "add-linear-term";
    case StepKind::eliminate: return "eliminate-variable";
  }
  return "?";
}

StepKind step_kind_from_string(const std::string& s) {
  for (auto k : {StepKind::alpha, StepKind::beta, StepKind::weierstrass, StepKind::linear_change,
                 StepKind::drop_regular, StepKind::add_linear, StepKind::eliminate})
    if (to_string(k) == s) return k;
  throw ParseError("unknown step kind '" + s + "'", 0);
}

void ReductionTrace::append(const ReductionTrace& other) {
  steps.insert(steps.end(), other.steps.begin(), other.steps.end());
  flags.insert(flags.end(), other.flags.begin(), other.flags.end());
}

// --- steps ----------------------------------------------------------------

CIPresentation eliminate_linear_variable(const CIPresentation& P, std::size_t index, std::size_t var) {
  if (index >= P.gens.size()) throw PreconditionError("generator index out of range");
  if (var >= P.ring->nvars()) throw PreconditionError("variable index out of range");
  const TruncatedSeries& f = P.gens[index];
  if (deg_in(f, var) != 1) throw PreconditionError("generator is not linear in the variable");
  const TruncatedSeries u = coeff_in(f, var, 1), v = coeff_in(f, var, 0);
  if (u.constant_term() == 0) throw NotAUnit("coefficient of the eliminated variable is not a unit");
  const auto& field = *P.ring->field();
  const Raw ci = field.inv(u.constant_term());
  const TruncatedSeries uh = ts_scale(u, ci);               // u / u(0)
  const TruncatedSeries image = ts_scale(v, field.neg(ci));  // -v / u(0)

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < P.ring->nvars(); ++i)
    if (i != var) keep.push_back(i);
  const RingPtr sub = P.ring->subring(keep);

  CIPresentation out;
  out.ring = sub;
  out.regular_sequence = P.regular_sequence;
  for (std::size_t i = 0; i < P.gens.size(); ++i) {
    if (i == index) continue;
    const TruncatedSeries& g = P.gens[i];
    const int k = std::max(deg_in(g, var), 0);
    // sum_j g_j image^j uh^(k-j)
    TruncatedSeries sum = TruncatedSeries(Polynomial(g.ring()), g.precision());
    TruncatedSeries ip = var_power(g, var, 0);
    for (int j = 0; j <= k; ++j) {
      sum = sum + coeff_in(g, var, j) * ip * ts_pow(uh, static_cast<std::uint64_t>(k - j));
      ip = ip * image;
    }
    out.gens.push_back(drop_var(sum.with_precision(std::min(g.precision(), f.precision())), var, sub));
  }
  return out;
}

CIPresentation apply_step(const CIPresentation& P, const ReductionStep& s) {
  CIPresentation out = P;
  auto need = [&](std::size_t i) {
    if (i >= out.gens.size()) throw PreconditionError("step refers to a missing generator");
  };
  switch (s.kind) {
    case StepKind::linear_change:
      for (auto& g : out.gens) g = ts_linear_change(g, s.M);
      break;
    case StepKind::weierstrass:
      need(s.target);
      out.gens[s.target] = weierstrass_prepare(out.gens[s.target], s.var).distinguished;
      break;
    case StepKind::alpha:
      need(s.target);
      need(s.pivot);
      out.gens[s.target] = alpha_reduce(out.gens[s.pivot], out.gens[s.target], s.var);
      break;
    case StepKind::beta: {
      need(s.target);
      auto& g = out.gens[s.target];
      g = g + var_power(g, s.var, static_cast<std::uint32_t>(std::max(deg_in(g, s.var), 0)), s.a);
      break;
    }
    case StepKind::add_linear: {
      need(s.target);
      auto& g = out.gens[s.target];
      g = g + var_power(g, s.var, 1, s.a);
      break;
    }
    case StepKind::drop_regular: {
      need(s.target);
      if (deg_in(out.gens[s.target], s.var) != 1 ||
          coeff_in(out.gens[s.target], s.var, 1).constant_term() == 0)
        out.gens[s.target] = weierstrass_prepare(out.gens[s.target], s.var).distinguished;
      out = eliminate_linear_variable(out, s.target, s.var);
      break;
    }
    case StepKind::eliminate:
      out = eliminate_linear_variable(out, s.target, s.var);
      break;
  }
  return out;
}

ReplayResult replay(const ReductionTrace& trace, const CIPresentation& initial) {
  ReplayResult r;
  r.final = initial;
  if (initial.snapshot() != trace.initial || initial.ring->vars() != trace.initial_vars) {
    r.matches = false;
    return r;
  }
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const auto& s = trace.steps[k];
    if (r.final.snapshot() != s.before || r.final.ring->vars() != s.vars_before) {
      r.matches = false;
      r.first_mismatch = k;
      return r;
    }
    r.final = apply_step(r.final, s);
    if (r.final.snapshot() != s.after || r.final.ring->vars() != s.vars_after) {
      r.matches = false;
      r.first_mismatch = k;
      return r;
    }
  }
  return r;
}

// --- pipeline -------------------------------------------------------------

std::pair<CIPresentation, ReductionTrace> drop_regular_generators(const CIPresentation& P) {
  ReductionTrace trace = start_trace(P);
  CIPresentation state = P;
  for (;;) {
    bool found = false;
    for (std::size_t i = 0; i < state.gens.size() && !found; ++i) {
      const Polynomial lin = homogeneous_component(state.gens[i].poly(), 1);
      if (lin.is_zero()) continue;
      std::size_t var = 0;
      while (lin.coefficient(Monomial::var(var, 1)) == 0) ++var;
      ReductionStep s;
      s.kind = StepKind::drop_regular;
      s.target = i;
      s.var = var;
      s.note = "generator " + std::to_string(i) + " is regular; solve for " + state.ring->vars()[var];
      run_step(state, trace, s);
      found = true;
    }
    if (!found) break;
  }
  if (state.gens.empty()) trace.flags.push_back("all generators dropped: the ring is regular");
  return {state, trace};
}

std::pair<CIPresentation, ReductionTrace> prepare_distinguished(const CIPresentation& P,
                                                                const PrepareOptions& opts) {
  ReductionTrace trace = start_trace(P);
  for (const auto& g : P.gens)
    if (g.order() < 2) throw PreconditionError("generator " + g.to_string() + " is not in m^2");
  const std::size_t n = P.ring->nvars();
  const auto& field = *P.ring->field();
  std::mt19937_64 rng(opts.seed);
  auto works = [&](const FieldMatrix& M) {
    for (const auto& g : P.gens) {
      const auto t = static_cast<std::uint32_t>(g.order());
      const Polynomial h = linear_change(homogeneous_component(g.poly(), t), M);
      if (h.coefficient(Monomial::var(0, t)) == 0) return false;
    }
    return true;
  };
  CIPresentation state = P;
  bool ok = false;
  for (int attempt = 0; attempt < opts.max_attempts && !ok; ++attempt) {
    const FieldMatrix M = attempt == 0 ? FieldMatrix::identity(n) : random_generic_change(n, field, rng);
    if (!works(M)) continue;
    ok = true;
    if (attempt > 0) {
      ReductionStep s;
      s.kind = StepKind::linear_change;
      s.M = M;
      s.note = "generic change, attempt " + std::to_string(attempt);
      run_step(state, trace, s);
    }
  }
  if (!ok)
    throw GenericChangeFailure("no linear change in " + std::to_string(opts.max_attempts) +
                               " attempts gives every generator a pure power of " + P.ring->vars()[0] +
                               " of its order over " + field.spec().to_string());
  for (std::size_t i = 0; i < state.gens.size(); ++i) {
    const auto prepared = weierstrass_prepare(state.gens[i], 0);
    if (prepared.distinguished.poly() == state.gens[i].poly()) continue;
    ReductionStep s;
    s.kind = StepKind::weierstrass;
    s.target = i;
    s.var = 0;
    s.note = "distinguished of degree " + std::to_string(prepared.degree);
    run_step(state, trace, s);
  }
  return {state, trace};
}

PairResult reduce_pair(const CIPresentation& P, std::uint64_t seed) {
  if (P.gens.size() < 2) throw PreconditionError("reduce_pair needs two generators");
  PairResult res;
  res.trace = start_trace(P);
  CIPresentation state = P;
  const auto& field = *P.ring->field();
  std::mt19937_64 rng(seed);
  const auto all = P.polys();
  const std::vector<Polynomial> context(all.begin() + 2, all.end());

  auto regular_with = [&](std::size_t target, const TruncatedSeries& g) {
    std::vector<Polynomial> seq = {state.gens[0].poly(), state.gens[1].poly()};
    seq[target] = g.poly();
    return is_regular_sequence(state.ring, context, seq);
  };
  // Samples a for target + a X1^k, keeping the leading coefficient a unit
  // and the pair a regular sequence.
  auto perturb = [&](std::size_t target, std::uint32_t k, StepKind kind) {
    const auto& g = state.gens[target];
    const Raw lc0 = deg_in(g, 0) == static_cast<int>(k) ? leading_coeff(g, 0).constant_term() : 0;
    int tried = 0;
    for (Raw a : shuffled_units(field, rng)) {
      if (field.add(a, lc0) == 0) continue;
      ++tried;
      if (!regular_with(target, g + var_power(g, 0, k, a))) continue;
      ReductionStep s;
      s.kind = kind;
      s.target = target;
      s.var = 0;
      s.a = a;
      s.note = "sampled a = " + field.format(a) + " after " + std::to_string(tried) + " tries";
      run_step(state, res.trace, s);
      return;
    }
    throw ReductionFailure("no sampled a in k^x keeps a regular sequence over " + field.spec().to_string());
  };
  auto alpha = [&](std::size_t pivot, std::size_t target) {
    ReductionStep s;
    s.kind = StepKind::alpha;
    s.pivot = pivot;
    s.target = target;
    s.var = 0;
    run_step(state, res.trace, s);
  };

  const int bound = std::max(deg_in(state.gens[0], 0), 0) + std::max(deg_in(state.gens[1], 0), 0) + 2;
  for (int round = 0;; ++round) {
    if (round > bound) throw InternalError("degree reduction did not terminate");
    const int d0 = deg_in(state.gens[0], 0), d1 = deg_in(state.gens[1], 0);
    if (state.gens[0].is_zero() || state.gens[1].is_zero()) throw InternalError("a generator vanished");
    if (std::min(d0, d1) <= 1) {
      const std::size_t idx = d0 <= d1 ? 0 : 1;
      const int d = std::min(d0, d1);
      if (d == 0) {
        if (state.gens[idx].lossy())
          res.trace.flags.push_back("generator treated as free of " + state.ring->vars()[0] +
                                    " within precision");
        perturb(idx, 1, StepKind::add_linear);
      } else if (leading_coeff(state.gens[idx], 0).constant_term() == 0) {
        perturb(idx, 1, StepKind::beta);
      }
      res.linear_index = idx;
      break;
    }
    const bool u0 = leading_coeff(state.gens[0], 0).constant_term() != 0;
    const bool u1 = leading_coeff(state.gens[1], 0).constant_term() != 0;
    std::size_t pivot;
    if (u0 && u1) {
      pivot = d0 <= d1 ? 0 : 1;
    } else if (u0 || u1) {
      pivot = u0 ? 0 : 1;
    } else {
      throw InternalError("no generator with a unit leading coefficient");
    }
    const std::size_t other = 1 - pivot;
    if (deg_in(state.gens[pivot], 0) <= deg_in(state.gens[other], 0)) {
      alpha(pivot, other);
    } else {
      perturb(other, static_cast<std::uint32_t>(deg_in(state.gens[other], 0)), StepKind::beta);
      alpha(other, pivot);
    }
  }
  const auto& partner = state.gens[1 - res.linear_index];
  if (partner.order() < 2) res.trace.flags.push_back("partner of the linear generator is not in m^2");
  res.presentation = state;
  return res;
}

HypersurfaceResult ci_to_hypersurface(const CIPresentation& P, std::uint64_t seed, const AuditOptions& audit) {
  HypersurfaceResult res;
  res.trace = start_trace(P);
  CIPresentation state = P;
  for (std::uint64_t round = 0; state.gens.size() > 1; ++round) {
    const CIPresentation round_input = state;
    auto [a, t1] = drop_regular_generators(state);
    res.trace.append(t1);
    state = a;
    if (state.gens.size() <= 1) break;
    auto [b, t2] = prepare_distinguished(state, {seed + 7919 * round, 64});
    res.trace.append(t2);
    auto pr = reduce_pair(b, seed + 104729 * (round + 1));
    res.trace.append(pr.trace);
    ReductionStep s;
    s.kind = StepKind::eliminate;
    s.target = pr.linear_index;
    s.var = 0;
    s.vars_before = pr.presentation.ring->vars();
    s.before = pr.presentation.snapshot();
    const CIPresentation after = apply_step(pr.presentation, s);
    s.vars_after = after.ring->vars();
    s.after = after.snapshot();
    if (audit.enabled) {
      s.audit = run_audit(round_input, after, audit);
      for (const auto& r : s.audit)
        if (!r.holds)
          res.trace.flags.push_back("audit inequality failed at q = " + std::to_string(r.q));
    }
    res.trace.steps.push_back(std::move(s));
    state = after;
  }
  res.presentation = state;
  if (state.gens.size() == 1) {
    res.hypersurface = state.gens[0];
    if (state.gens[0].order() < 2) {
      res.regular = true;
      res.trace.flags.push_back("final hypersurface is regular");
    }
  } else {
    res.regular = true;
    res.trace.flags.push_back("no generator left: the ring is regular");
  }
  return res;
}

// --- sampling and the scan ------------------------------------------------

std::vector<Polynomial> random_complete_intersection(const RingPtr& ring, const std::vector<std::uint32_t>& degrees,
                                                     std::uint64_t seed) {
  const auto& field = *ring->field();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Raw> coef(1, field.order() - 1);
  std::bernoulli_distribution keep(0.5);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<Polynomial> gens;
    for (auto D : degrees) {
      if (D < 2) throw PreconditionError("degrees must be at least 2");
      std::vector<Monomial> mons;
      monomials_of_degree(ring->nvars(), D, mons);
      std::vector<Term> t;
      for (const auto& m : mons)
        if (keep(rng)) t.push_back({m, coef(rng)});
      gens.push_back(Polynomial(ring, std::move(t)));
    }
    if (std::any_of(gens.begin(), gens.end(), [](const Polynomial& g) { return g.is_zero(); })) continue;
    if (is_regular_sequence(ring, {}, gens)) return gens;
  }
  throw ResourceError("no regular sequence found among 200 random samples");
}

Polynomial random_singular_hypersurface(const RingPtr& ring, std::uint64_t seed) {
  // Quasi-homogeneous: x_i has weight L / a_i and every term has weighted
  // degree L = lcm(a_i). The pure powers are always present.
  const auto& field = *ring->field();
  const std::size_t n = ring->nvars();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Raw> coef(1, field.order() - 1);
  std::uniform_int_distribution<std::uint32_t> expo(2, 5);
  std::bernoulli_distribution keep(0.5);
  std::vector<std::uint32_t> a(n);
  std::uint32_t L = 1;
  for (auto& x : a) {
    x = expo(rng);
    L = std::lcm(L, x);
  }
  std::vector<std::uint32_t> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = L / a[i];
  std::vector<Term> t;
  Monomial m;
  std::function<void(std::size_t, std::uint32_t)> walk = [&](std::size_t i, std::uint32_t left) {
    if (i == n) {
      if (left != 0 || m.deg < 2) return;
      const bool pure = std::popcount(m.support()) == 1;
      if (pure || keep(rng)) t.push_back({m, coef(rng)});
      return;
    }
    for (std::uint32_t b = 0; b * w[i] <= left; ++b) {
      m.e[i] = b;
      m.deg += b;
      walk(i + 1, left - b * w[i]);
      m.deg -= b;
    }
    m.e[i] = 0;
  };
  walk(0, L);
  return Polynomial(ring, std::move(t));
}

ScanReport conjecture_scan(int d, const FieldPtr& field, std::size_t count, std::uint64_t seed,
                           const ScanOptions& opts) {
  if (field->characteristic() == 2) throw UnsupportedCharacteristic("the scan needs p != 2");
  if (d < 1 || d + 1 > static_cast<int>(kMaxVars)) throw PreconditionError("dimension out of range");
  if (opts.e_max < 3) throw PreconditionError("the estimate needs e_max >= 3");
  std::vector<std::string> names;
  for (int i = 0; i <= d; ++i) names.push_back("x" + std::to_string(i));
  const RingPtr ring = Ring::create(field, names);
  const auto m = maximal_ideal(ring);
  auto estimate = [&](const Polynomial& f) {
    const auto P = LocalRingPresentation::create(ring, {f});
    HKReport rep = hk_function(P, m, opts.e_max, opts.hk);
    return hk_estimate(rep);
  };
  Polynomial quadric(ring);
  for (int i = 0; i <= d; ++i) quadric = quadric + Polynomial::variable(ring, i).pow(2);

  ScanReport out;
  out.d = d;
  out.field = field->spec().to_string();
  out.e_max = opts.e_max;
  out.tolerance = opts.tolerance;
  out.quadric_estimate = estimate(quadric).estimate;
  std::vector<Polynomial> samples;
  if (!opts.samples.empty()) {
    for (const auto& s : opts.samples) samples.push_back(s.ring()->same_as(*ring) ? s : s.with_ring(ring));
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) samples.push_back(random_singular_hypersurface(ring, rng()));
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto est = estimate(samples[i]);
    ScanRow row;
    row.index = i;
    row.f = samples[i].to_string();
    row.estimate = est.estimate;
    row.uncertainty = est.uncertainty;
    row.passes = est.estimate >= out.quadric_estimate - opts.tolerance;
    out.all_pass = out.all_pass && row.passes;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace hk
