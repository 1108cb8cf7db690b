#pragma once

// Colength batches. The parallel kernel distributes independent jobs over
// OpenMP threads; the serial kernel is the reference it is tested against.
// Results are always returned in job order.

#include <cstdint>
#include <vector>

#include "hk/groebner.hpp"

namespace hk {

class ColengthCache;

struct ColengthJob {
  RingPtr ring;
  std::vector<Polynomial> gens;  // J together with the bracket power
  std::uint64_t q = 0;           // only used to form cache keys
  bool local_order = true;       // negdegrevlex for inhomogeneous J when safe
};

struct ColengthResult {
  Colength colength;
  std::uint64_t basis_size = 0;
  double seconds = 0.0;
  bool cached = false;
};

namespace kernels {

std::vector<ColengthResult> colengths_serial(const std::vector<ColengthJob>& jobs,
                                             ColengthCache* cache = nullptr,
                                             const GroebnerOptions& opts = {});
std::vector<ColengthResult> colengths_parallel(const std::vector<ColengthJob>& jobs,
                                               ColengthCache* cache = nullptr,
                                               const GroebnerOptions& opts = {});
int max_threads() noexcept;

}  // namespace kernels
}  // namespace hk
