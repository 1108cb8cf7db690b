#pragma once

// Reduction of a complete intersection to a hypersurface: dropping regular
// generators, making generators distinguished in the first variable, the
// pairwise degree-reduction loop and elimination of that variable.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hk/hk.hpp"
#include "hk/series.hpp"

namespace hk {

class GenericChangeFailure : public PreconditionError {
 public:
  explicit GenericChangeFailure(const std::string& what) : PreconditionError(what) {}
};

class ReductionFailure : public PreconditionError {
 public:
  explicit ReductionFailure(const std::string& what) : PreconditionError(what) {}
};

struct CIPresentation {
  RingPtr ring;
  std::vector<TruncatedSeries> gens;
  bool regular_sequence = false;  // verified at creation

  // Checks that every generator lies in m and, when verify is set, that the
  // generators form a regular sequence.
  static CIPresentation create(RingPtr ring, std::vector<TruncatedSeries> gens, bool verify = true);
  static CIPresentation from_polynomials(const std::vector<Polynomial>& gens, std::uint32_t precision,
                                         bool verify = true);

  std::vector<Polynomial> polys() const;
  bool lossy() const;
  std::uint32_t precision() const;
  std::vector<std::string> snapshot() const;
};

enum class StepKind { alpha, beta, weierstrass, linear_change, drop_regular, add_linear, eliminate };
std::string to_string(StepKind k);
StepKind step_kind_from_string(const std::string& s);

struct AuditRow {
  std::uint32_t e = 0;
  std::uint64_t q = 0;
  double before = 0.0;
  double after = 0.0;
  bool exact = true;
  bool holds = true;  // after <= before + 1e-9
};

struct ReductionStep {
  StepKind kind = StepKind::alpha;
  std::size_t target = 0;  // generator changed or removed
  std::size_t pivot = 0;   // alpha: generator used to cancel
  std::size_t var = 0;     // variable eliminated or distinguished
  FiniteField::Raw a = 0;  // beta / add_linear scalar
  FieldMatrix M;           // linear_change
  std::vector<std::string> vars_before, before;
  std::vector<std::string> vars_after, after;
  std::vector<AuditRow> audit;
  std::string note;
};

struct ReductionTrace {
  std::string field;
  std::vector<std::string> initial_vars;
  std::vector<std::string> initial;
  std::vector<ReductionStep> steps;
  std::vector<std::string> flags;

  void append(const ReductionTrace& other);
};

// Applies one recorded step.
CIPresentation apply_step(const CIPresentation& P, const ReductionStep& step);

struct ReplayResult {
  CIPresentation final;
  bool matches = true;
  std::size_t first_mismatch = 0;
};
ReplayResult replay(const ReductionTrace& trace, const CIPresentation& initial);

std::pair<CIPresentation, ReductionTrace> drop_regular_generators(const CIPresentation& P);

struct PrepareOptions {
  std::uint64_t seed = 0;
  int max_attempts = 64;
};
std::pair<CIPresentation, ReductionTrace> prepare_distinguished(const CIPresentation& P,
                                                                const PrepareOptions& opts = {});

struct PairResult {
  CIPresentation presentation;  // gens[0], gens[1] replaced by f', g'
  std::size_t linear_index = 0;  // which of the two is u' X1 + v'
  ReductionTrace trace;
};
// Works on gens[0] and gens[1]; the rest is the context ring.
PairResult reduce_pair(const CIPresentation& P, std::uint64_t seed);

// f' = u' X_var + v' with u' a unit. Substitutes X_var -> -v'/u' into the
// other generators, scaled by (u'/u'(0))^k so polynomial inputs stay
// polynomial; X_var and f' are removed.
CIPresentation eliminate_linear_variable(const CIPresentation& P, std::size_t index, std::size_t var);

struct AuditOptions {
  bool enabled = false;
  std::uint32_t e_max = 3;
  HKOptions hk;
};

struct HypersurfaceResult {
  CIPresentation presentation;  // one generator unless regular
  std::optional<TruncatedSeries> hypersurface;
  bool regular = false;
  ReductionTrace trace;
};
HypersurfaceResult ci_to_hypersurface(const CIPresentation& P, std::uint64_t seed,
                                      const AuditOptions& audit = {});

// Homogeneous forms of the given degrees forming a regular sequence.
std::vector<Polynomial> random_complete_intersection(const RingPtr& ring,
                                                     const std::vector<std::uint32_t>& degrees,
                                                     std::uint64_t seed);

struct ScanRow {
  std::size_t index = 0;
  std::string f;
  double estimate = 0.0;
  double uncertainty = 0.0;
  bool passes = true;
};

struct ScanReport {
  int d = 0;
  std::string field;
  std::uint32_t e_max = 0;
  double tolerance = 0.0;
  double quadric_estimate = 0.0;
  std::vector<ScanRow> rows;
  bool all_pass = true;
};

struct ScanOptions {
  std::uint32_t e_max = 3;
  double tolerance = 0.02;
  HKOptions hk;
  // Samples to use instead of random ones.
  std::vector<Polynomial> samples;
};

// Random singular hypersurface in n variables with order >= 2.
Polynomial random_singular_hypersurface(const RingPtr& ring, std::uint64_t seed);

ScanReport conjecture_scan(int d, const FieldPtr& field, std::size_t count, std::uint64_t seed,
                           const ScanOptions& opts = {});

}  // namespace hk
