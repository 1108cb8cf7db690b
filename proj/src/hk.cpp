#include "hk/hk.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <random>

namespace hk {

LocalRingPresentation LocalRingPresentation::create(RingPtr ring, std::vector<Polynomial> J,
                                                    std::optional<int> expected_codim) {
  for (const auto& g : J) {
    if (!g.ring()->same_as(*ring)) throw SpecMismatch("generator from a different ring");
    if (g.constant_term() != 0)
      throw PreconditionError("generator " + g.to_string() + " is not in the maximal ideal");
  }
  LocalRingPresentation P;
  P.ring = std::move(ring);
  P.J = std::move(J);
  P.d = krull_dimension(buchberger(P.ring, P.J));
  if (P.d < 0) throw PreconditionError("defining ideal is the unit ideal");
  if (expected_codim) {
    const int codim = static_cast<int>(P.ring->nvars()) - P.d;
    if (codim != *expected_codim)
      throw PreconditionError("expected codimension " + std::to_string(*expected_codim) +
                              " but the computed dimension gives " + std::to_string(codim));
  }
  return P;
}

std::vector<Polynomial> maximal_ideal(const RingPtr& ring) {
  std::vector<Polynomial> m;
  for (std::size_t i = 0; i < ring->nvars(); ++i) m.push_back(Polynomial::variable(ring, i));
  return m;
}

namespace {

void check_ideal(const LocalRingPresentation& P, const std::vector<Polynomial>& I) {
  for (const auto& g : I) {
    if (!g.ring()->same_as(*P.ring)) throw SpecMismatch("ideal generator from a different ring");
    if (g.constant_term() != 0) throw PreconditionError("ideal is not contained in m");
  }
}

ColengthJob make_job(const LocalRingPresentation& P, const std::vector<Polynomial>& I,
                     std::uint64_t q) {
  ColengthJob job;
  job.ring = P.ring;
  job.q = q;
  job.gens = P.J;
  const auto br = bracket_power(I, q);
  job.gens.insert(job.gens.end(), br.begin(), br.end());
  return job;
}

// Diagonal hypersurfaces sum a_i x_i^{d_i} with I = m. Over k[T_i] with
// T_i = x_i^{d_i}, k[x_i]/(x_i^q) is a sum of cyclic modules k[T]/(T^c),
// c = ceil((q - r) / d_i) for r < d_i, so the colength is a sum over choices
// of lambda(k[T]/(T_i^{c_i}, sum a_i T_i)). Rescaling the T_i removes the a_i,
// so each term depends only on the multiset of c_i.
struct DiagonalShape {
  std::vector<std::uint32_t> degrees;  // of the variables present in f
  std::size_t absent = 0;
};

std::optional<DiagonalShape> diagonal_shape(const LocalRingPresentation& P,
                                            const std::vector<Polynomial>& I) {
  const std::size_t n = P.ring->nvars();
  if (P.J.size() != 1 || P.J[0].is_zero()) return std::nullopt;
  std::uint32_t seen = 0;
  for (const auto& g : I) {
    if (g.terms().size() != 1 || g.terms()[0].m.deg != 1) return std::nullopt;
    seen |= g.terms()[0].m.support();
  }
  if (seen != (n >= 32 ? ~0u : (1u << n) - 1)) return std::nullopt;
  DiagonalShape s;
  std::uint32_t used = 0;
  for (const auto& t : P.J[0].terms()) {
    const auto sup = t.m.support();
    if (std::popcount(sup) != 1 || (used & sup)) return std::nullopt;
    used |= sup;
    s.degrees.push_back(t.m.deg);
  }
  s.absent = n - s.degrees.size();
  return s;
}

struct DiagonalPlan {
  std::vector<ColengthJob> jobs;
  std::vector<std::uint64_t> mult;  // per job
  std::uint64_t constant = 0;       // terms with no variable left
  std::uint64_t factor = 1;         // q^absent
};

DiagonalPlan diagonal_plan(const LocalRingPresentation& P, const DiagonalShape& s, std::uint64_t q) {
  DiagonalPlan plan;
  for (std::size_t i = 0; i < s.absent; ++i) plan.factor *= q;
  std::vector<std::vector<std::uint64_t>> blocks;
  for (auto d : s.degrees) {
    std::vector<std::uint64_t> b;
    for (std::uint64_t r = 0; r < d && r < q; ++r) b.push_back((q - r + d - 1) / d);
    blocks.push_back(std::move(b));
  }
  const std::size_t m = blocks.size();
  std::map<std::vector<std::uint64_t>, std::uint64_t> tally;
  std::vector<std::uint64_t> pick(m);
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == m) {
      auto key = pick;
      std::sort(key.begin(), key.end());
      ++tally[key];
      return;
    }
    for (auto c : blocks[i]) {
      pick[i] = c;
      walk(i + 1);
    }
  };
  walk(0);
  if (m == 1) {
    for (const auto& [key, cnt] : tally) plan.constant += cnt;
    return plan;
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i + 1 < m; ++i) names.push_back("_T" + std::to_string(i));
  const auto ring = Ring::create(P.ring->field(), names);
  Polynomial sum(ring);
  for (std::size_t i = 0; i + 1 < m; ++i) sum = sum + Polynomial::variable(ring, i);
  for (const auto& [key, cnt] : tally) {
    ColengthJob job;
    job.ring = ring;
    job.q = q;
    for (std::size_t i = 0; i + 1 < m; ++i)
      job.gens.push_back(Polynomial::monomial(ring, Monomial::var(i, static_cast<std::uint32_t>(key[i]))));
    job.gens.push_back(sum.pow(static_cast<std::uint32_t>(key.back())));
    plan.jobs.push_back(std::move(job));
    plan.mult.push_back(cnt);
  }
  return plan;
}

std::uint64_t checked_power(std::uint64_t p, std::uint32_t e) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    if (q > (std::uint64_t{1} << 32) / p) throw OverflowError("q exceeds 2^32");
    q *= p;
  }
  return q;
}

std::vector<ColengthResult> run_jobs(const std::vector<ColengthJob>& jobs, const HKOptions& opts) {
  return opts.parallel ? kernels::colengths_parallel(jobs, opts.cache, opts.groebner)
                       : kernels::colengths_serial(jobs, opts.cache, opts.groebner);
}

// One result per q, via the diagonal kernel when it applies.
std::vector<ColengthResult> colengths_for(const LocalRingPresentation& P, const std::vector<Polynomial>& I,
                                          const std::vector<std::uint64_t>& qs, const HKOptions& opts) {
  const auto shape = opts.diagonal_kernel ? diagonal_shape(P, I) : std::nullopt;
  if (!shape) {
    std::vector<ColengthJob> jobs;
    for (auto q : qs) {
      jobs.push_back(make_job(P, I, q));
      jobs.back().local_order = opts.local_order;
    }
    return run_jobs(jobs, opts);
  }
  std::vector<DiagonalPlan> plans;
  std::vector<ColengthJob> jobs;
  for (auto q : qs) {
    plans.push_back(diagonal_plan(P, *shape, q));
    jobs.insert(jobs.end(), plans.back().jobs.begin(), plans.back().jobs.end());
  }
  for (auto& j : jobs) j.local_order = opts.local_order;
  const auto res = run_jobs(jobs, opts);
  std::vector<ColengthResult> out;
  std::size_t k = 0;
  for (const auto& plan : plans) {
    ColengthResult r;
    std::uint64_t total = plan.constant;
    for (std::size_t i = 0; i < plan.jobs.size(); ++i, ++k) {
      total += plan.mult[i] * *res[k].colength;
      r.basis_size = std::max(r.basis_size, res[k].basis_size);
      r.seconds += res[k].seconds;
    }
    r.colength = total * plan.factor;
    out.push_back(r);
  }
  return out;
}

HKRow make_row(const LocalRingPresentation& P, std::uint32_t e, std::uint64_t q,
               const ColengthResult& r, const HKOptions& opts) {
  if (!r.colength) throw NotMPrimary("colength is infinite at q = " + std::to_string(q));
  HKRow row;
  row.e = e;
  row.q = q;
  row.colength = *r.colength;
  row.f_e = static_cast<double>(static_cast<long double>(row.colength) /
                                std::pow(static_cast<long double>(q), P.d));
  row.basis_size = r.basis_size;
  row.seconds = r.seconds;
  const std::uint64_t n = P.ring->nvars();
  row.exact = !opts.truncation || *opts.truncation > n * (q - 1);
  return row;
}

HKReport report_header(const LocalRingPresentation& P) {
  HKReport rep;
  rep.field = P.ring->field()->spec().to_string();
  rep.vars = P.ring->vars();
  for (const auto& g : P.J) rep.ideal.push_back(g.to_string());
  rep.d = P.d;
  return rep;
}

}  // namespace

std::uint64_t hk_colength(const LocalRingPresentation& P, const std::vector<Polynomial>& I,
                          std::uint64_t q, const HKOptions& opts) {
  check_ideal(P, I);
  q_exponent(P.ring->field()->characteristic(), q);
  const auto res = colengths_for(P, I, {q}, opts);
  if (!res[0].colength) throw NotMPrimary("ideal is not m-primary modulo J");
  return *res[0].colength;
}

HKReport hk_function(const LocalRingPresentation& P, const std::vector<Polynomial>& I,
                     std::uint32_t e_max, const HKOptions& opts) {
  if (e_max < 1) throw PreconditionError("e_max must be at least 1");
  if (opts.e_min > e_max) throw PreconditionError("e_min exceeds e_max");
  check_ideal(P, I);
  const std::uint64_t p = P.ring->field()->characteristic();
  std::vector<std::uint64_t> qs;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> eq;
  for (std::uint32_t e = opts.e_min; e <= e_max; ++e) {
    const std::uint64_t q = checked_power(p, e);
    qs.push_back(q);
    eq.emplace_back(e, q);
  }
  const auto res = colengths_for(P, I, qs, opts);
  HKReport rep = report_header(P);
  for (std::size_t i = 0; i < res.size(); ++i)
    rep.rows.push_back(make_row(P, eq[i].first, eq[i].second, res[i], opts));
  return rep;
}

HKEstimate hk_estimate(const HKReport& report) {
  const auto& rows = report.rows;
  if (rows.size() < 3) throw PreconditionError("insufficient data: need at least 3 rows");
  double xs[3], ys[3];
  for (int k = 0; k < 3; ++k) {
    const auto& r = rows[rows.size() - 3 + k];
    xs[k] = 1.0 / static_cast<double>(r.q);
    ys[k] = r.f_e;
  }
  const double mx = (xs[0] + xs[1] + xs[2]) / 3, my = (ys[0] + ys[1] + ys[2]) / 3;
  double sxx = 0, sxy = 0;
  for (int k = 0; k < 3; ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  const double b = sxx > 0 ? sxy / sxx : 0.0;
  const double a = my - b * mx;
  double resid = 0;
  for (int k = 0; k < 3; ++k) resid = std::max(resid, std::fabs(ys[k] - (a + b * xs[k])));
  // Extrapolation from the last two rows alone.
  const double q1 = 1.0 / xs[1], q2 = 1.0 / xs[2];
  const double a2 = (q2 * ys[2] - q1 * ys[1]) / (q2 - q1);
  return {a, std::max(std::fabs(a - a2), resid)};
}

void attach_estimate(HKReport& report) {
  if (report.rows.size() < 3) return;
  const auto est = hk_estimate(report);
  report.estimate = est.estimate;
  report.uncertainty = est.uncertainty;
}

std::vector<FiniteField::Raw> default_alphas(const FiniteField& field, std::uint64_t seed) {
  std::vector<FiniteField::Raw> out;
  if (field.degree() <= 4) {
    for (FiniteField::Raw a = 1; a < field.order(); ++a) out.push_back(a);
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<FiniteField::Raw> pick(1, field.order() - 1);
  while (out.size() < 16 && out.size() + 1 < field.order()) {
    const auto a = pick(rng);
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

FamilyScanResult family_scan(const Polynomial& f, const Polynomial& g,
                             std::vector<FiniteField::Raw> alphas, std::uint32_t e_max,
                             const HKOptions& opts) {
  if (!f.ring()->same_as(*g.ring())) throw SpecMismatch("f and g from different rings");
  if (g.is_zero()) throw PreconditionError("g must be nonzero");
  if (g.constant_term() != 0) throw PreconditionError("g must vanish at the origin");
  if (!f.is_zero() && g.monic() == f.monic()) throw PreconditionError("g lies in k*f");
  if (e_max < 1) throw PreconditionError("e_max must be at least 1");
  const auto& field = *f.field();
  alphas.erase(std::remove(alphas.begin(), alphas.end(), FiniteField::Raw{0}), alphas.end());
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
  alphas.insert(alphas.begin(), 0);
  for (auto a : alphas)
    if (a >= field.order()) throw PreconditionError("alpha outside the field");

  const RingPtr& ring = f.ring();
  const auto I = maximal_ideal(ring);
  const std::uint64_t p = field.characteristic();
  std::vector<LocalRingPresentation> fibers;
  for (auto a : alphas)
    fibers.push_back(LocalRingPresentation::create(ring, {f + g.scaled(a)}));
  std::vector<ColengthJob> jobs;
  for (const auto& P : fibers)
    for (std::uint32_t e = opts.e_min; e <= e_max; ++e) {
      jobs.push_back(make_job(P, I, checked_power(p, e)));
      jobs.back().local_order = opts.local_order;
    }
  const auto res = run_jobs(jobs, opts);

  FamilyScanResult out;
  out.f = f.to_string();
  out.g = g.to_string();
  std::size_t k = 0;
  for (std::size_t i = 0; i < fibers.size(); ++i) {
    FamilyFiber fb;
    fb.alpha = alphas[i];
    fb.alpha_text = field.format(alphas[i]);
    fb.report = report_header(fibers[i]);
    for (std::uint32_t e = opts.e_min; e <= e_max; ++e, ++k)
      fb.report.rows.push_back(make_row(fibers[i], e, checked_power(p, e), res[k], opts));
    attach_estimate(fb.report);
    out.fibers.push_back(std::move(fb));
  }
  const auto& base = out.fibers.front().report.rows;
  for (auto& fb : out.fibers) {
    for (std::size_t r = 0; r < base.size(); ++r)
      fb.le_base.push_back(fb.report.rows[r].colength <= base[r].colength);
    if (fb.le_base.back()) out.holds_at_emax.push_back(fb.alpha);
  }
  return out;
}

std::uint32_t monsky_degree(const FieldElement& alpha) {
  const auto& field = alpha.field();
  if (field->characteristic() != 2)
    throw UnsupportedCharacteristic("the Artin-Schreier reference needs characteristic 2");
  if (auto beta = artin_schreier_solve(alpha)) return element_degree(*beta);
  const FieldEmbedding emb = extend_field(field, 2);
  const auto beta = artin_schreier_solve(emb(alpha));
  if (!beta) throw InternalError("no Artin-Schreier root after a quadratic extension");
  return element_degree(*beta);
}

std::optional<Rational> monsky_reference(const FieldElement& alpha) {
  if (alpha.field()->characteristic() != 2)
    throw UnsupportedCharacteristic("the Monsky reference needs characteristic 2");
  if (alpha.is_zero()) return std::nullopt;
  const std::uint32_t m = monsky_degree(alpha);
  if (m > 30) throw OverflowError("4^m does not fit the rational type");
  return Rational(3) + Rational(1, 1LL << (2 * m));
}

}  // namespace hk
