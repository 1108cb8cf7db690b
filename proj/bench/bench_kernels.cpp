// Serial against OpenMP colength batches on the same job lists.

#include <benchmark/benchmark.h>

#include "hk/hk.hpp"
#include "hk/reduce.hpp"

namespace {

using namespace hk;

// Bracket powers of m added to each generator list, one job per q.
std::vector<ColengthJob> jobs_for(const RingPtr& R, const std::vector<Polynomial>& J, std::uint32_t e_max) {
  std::vector<ColengthJob> jobs;
  const auto p = R->field()->characteristic();
  std::uint64_t q = 1;
  for (std::uint32_t e = 1; e <= e_max; ++e) {
    q *= p;
    ColengthJob j;
    j.ring = R;
    j.gens = J;
    for (std::size_t i = 0; i < R->nvars(); ++i)
      j.gens.push_back(Polynomial::monomial(R, Monomial::var(i, static_cast<std::uint32_t>(q))));
    j.q = q;
    jobs.push_back(std::move(j));
  }
  return jobs;
}

std::vector<ColengthJob> monsky_batch() {
  const auto R = Ring::create(FiniteField::extension(2, 2), {"x", "y", "z"});
  return jobs_for(R, parse_poly_list("z^4 + x*y*z^2 + (x^3 + y^3)*z + x^2*y^2", R), 5);
}

std::vector<ColengthJob> scan_batch() {
  const auto R = Ring::create(FiniteField::prime(3), {"x0", "x1", "x2"});
  std::vector<ColengthJob> jobs;
  for (std::uint64_t seed = 1; seed <= 8; ++seed)
    for (auto& j : jobs_for(R, {random_singular_hypersurface(R, seed)}, 3)) jobs.push_back(std::move(j));
  return jobs;
}

template <class Kernel>
void run(benchmark::State& state, const std::vector<ColengthJob>& jobs, Kernel kernel) {
  for (auto _ : state) {
    auto r = kernel(jobs, nullptr, GroebnerOptions{});
    benchmark::DoNotOptimize(r);
  }
  state.counters["jobs"] = static_cast<double>(jobs.size());
  state.counters["threads"] = kernels::max_threads();
}

void BM_MonskySerial(benchmark::State& s) { run(s, monsky_batch(), kernels::colengths_serial); }
void BM_MonskyParallel(benchmark::State& s) { run(s, monsky_batch(), kernels::colengths_parallel); }
void BM_ScanSerial(benchmark::State& s) { run(s, scan_batch(), kernels::colengths_serial); }
void BM_ScanParallel(benchmark::State& s) { run(s, scan_batch(), kernels::colengths_parallel); }

}  // namespace

BENCHMARK(BM_MonskySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonskyParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
