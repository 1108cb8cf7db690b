#include "hk/kernels.hpp"

#include <bit>
#include <chrono>
#include <exception>

#include "hk/cache.hpp"

#ifdef HK_HAVE_OPENMP
#include <omp.h>
#endif

namespace hk {

namespace {

// With a pure power of every variable among the generators, the quotient
// is spanned by finitely many monomials and a local order is safe. It keeps
// the low degree part leading, which is much cheaper for inhomogeneous input.
bool has_all_pure_powers(const ColengthJob& job) {
  std::uint32_t seen = 0;
  for (const auto& g : job.gens)
    if (g.size() == 1 && std::popcount(g.lm().support()) == 1) seen |= g.lm().support();
  const std::size_t n = job.ring->nvars();
  return seen == (1u << n) - 1;
}

// For homogeneous input the graded order already works degree by degree and
// the local order only slows the reduction down.
bool has_inhomogeneous_generator(const ColengthJob& job) {
  for (const auto& g : job.gens) {
    if (g.is_zero()) continue;
    const auto d = g.terms().front().m.deg;
    for (const auto& t : g.terms())
      if (t.m.deg != d) return true;
  }
  return false;
}

ColengthResult run_job(const ColengthJob& job, ColengthCache* cache,
                       const GroebnerOptions& opts) {
  std::string key;
  if (cache) {
    key = cache_key(*job.ring, job.gens, job.q);
    if (auto hit = cache->get(key)) {
      ColengthResult r;
      r.colength = hit->colength;
      r.basis_size = hit->basis_size;
      r.seconds = hit->seconds;
      r.cached = true;
      return r;
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  GroebnerBasis gb;
  if (job.local_order && has_all_pure_powers(job) && has_inhomogeneous_generator(job)) {
    const auto ring = job.ring->with_order(MonomialOrder::negdegrevlex(job.ring->nvars()));
    std::vector<Polynomial> gens;
    for (const auto& g : job.gens) gens.push_back(g.with_ring(ring));
    gb = buchberger(ring, gens, opts);
  } else {
    gb = buchberger(job.ring, job.gens, opts);
  }
  ColengthResult r;
  r.colength = colength(gb);
  r.basis_size = gb.basis.size();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (cache && r.colength) cache->put(key, {*r.colength, r.basis_size, r.seconds});
  return r;
}

}  // namespace

namespace kernels {

std::vector<ColengthResult> colengths_serial(const std::vector<ColengthJob>& jobs,
                                             ColengthCache* cache,
                                             const GroebnerOptions& opts) {
  std::vector<ColengthResult> out;
  out.reserve(jobs.size());
  for (const auto& j : jobs) out.push_back(run_job(j, cache, opts));
  return out;
}

std::vector<ColengthResult> colengths_parallel(const std::vector<ColengthJob>& jobs,
                                               ColengthCache* cache,
                                               const GroebnerOptions& opts) {
  const long n = static_cast<long>(jobs.size());
  std::vector<ColengthResult> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  // Later jobs are usually the expensive ones; hand them out first.
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < n; ++k) {
    const long i = n - 1 - k;
    try {
      out[i] = run_job(jobs[i], cache, opts);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

int max_threads() noexcept {
#ifdef HK_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace kernels
}  // namespace hk
