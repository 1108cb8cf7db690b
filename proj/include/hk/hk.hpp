#pragma once

// Hilbert-Kunz functions of k[x_1..x_n]/J localized at the origin.

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hk/groebner.hpp"
#include "hk/kernels.hpp"

namespace hk {

struct LocalRingPresentation {
  RingPtr ring;
  std::vector<Polynomial> J;
  int d = 0;  // Krull dimension of k[x]/J, computed

  // Validates that J lies in the maximal ideal and computes d. When
  // expected_codim is given, n - d must match it.
  static LocalRingPresentation create(RingPtr ring, std::vector<Polynomial> J,
                                      std::optional<int> expected_codim = std::nullopt);
};

std::vector<Polynomial> maximal_ideal(const RingPtr& ring);

struct HKOptions {
  bool parallel = true;
  // Set when J came from a truncated series at total degree N; rows are
  // exact only while N > n (q - 1).
  std::optional<std::uint32_t> truncation;
  ColengthCache* cache = nullptr;
  GroebnerOptions groebner;
  std::uint32_t e_min = 1;
  // Route sum a_i x_i^{d_i} with I = m through the splitting kernel.
  bool diagonal_kernel = true;
  // Compute colengths in a local order when every variable has a pure power.
  bool local_order = true;
};

struct HKRow {
  std::uint32_t e = 0;
  std::uint64_t q = 0;
  std::uint64_t colength = 0;
  double f_e = 0.0;
  bool exact = true;
  std::uint64_t basis_size = 0;
  double seconds = 0.0;
};

struct HKReport {
  std::string field;
  std::vector<std::string> vars;
  std::vector<std::string> ideal;  // J as strings
  int d = 0;
  std::vector<HKRow> rows;
  std::optional<double> estimate;
  std::optional<double> uncertainty;
};

// lambda(k[x]/(J + I^[q])); throws NotMPrimary when infinite.
std::uint64_t hk_colength(const LocalRingPresentation& P, const std::vector<Polynomial>& I,
                          std::uint64_t q, const HKOptions& opts = {});
HKReport hk_function(const LocalRingPresentation& P, const std::vector<Polynomial>& I,
                     std::uint32_t e_max, const HKOptions& opts = {});

struct HKEstimate {
  double estimate = 0.0;
  double uncertainty = 0.0;
};
// Least-squares fit of f_e = a + b/q over the last three rows.
HKEstimate hk_estimate(const HKReport& report);
// Convenience: runs the fit and stores it in the report.
void attach_estimate(HKReport& report);

struct FamilyFiber {
  FiniteField::Raw alpha = 0;
  std::string alpha_text;
  HKReport report;
  std::vector<bool> le_base;  // per row: lambda_alpha(q) <= lambda_0(q)
};

struct FamilyScanResult {
  std::string f, g;
  std::vector<FamilyFiber> fibers;  // alpha = 0 first
  // Alphas whose inequality holds at the last row.
  std::vector<FiniteField::Raw> holds_at_emax;
};

// Validates g != 0, g(0) = 0 and g not in k*f. alpha = 0 is always added.
FamilyScanResult family_scan(const Polynomial& f, const Polynomial& g,
                             std::vector<FiniteField::Raw> alphas, std::uint32_t e_max,
                             const HKOptions& opts = {});
// All of F^x when the extension degree is at most 4, else 16 seeded picks.
std::vector<FiniteField::Raw> default_alphas(const FiniteField& field, std::uint64_t seed);

using Rational = boost::rational<long long>;
// 3 + 4^{-m} with m the degree of a root of b^2 + b = alpha; nullopt for
// alpha == 0. Requires characteristic 2.
std::optional<Rational> monsky_reference(const FieldElement& alpha);
// Degree of the Artin-Schreier root, extending by degree 2 if needed.
std::uint32_t monsky_degree(const FieldElement& alpha);

}  // namespace hk
