#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hk/poly.hpp"

namespace hk {

struct GroebnerOptions {
  // Abort with ResourceError once this many S-pairs have been reduced
  // (0 = unlimited).
  std::uint64_t max_pairs = 0;
};

struct GroebnerStats {
  std::uint64_t pairs_reduced = 0;
  std::uint64_t zero_reductions = 0;
  std::uint64_t pairs_pruned = 0;
};

struct GroebnerBasis {
  RingPtr ring;
  // Reduced, monic, sorted by increasing leading monomial.
  std::vector<Polynomial> basis;
  GroebnerStats stats;

  bool is_unit() const {
    return basis.size() == 1 && basis[0].lm().is_one();
  }
  std::vector<Monomial> leading_monomials() const;
};

GroebnerBasis buchberger(const std::vector<Polynomial>& gens,
                         const GroebnerOptions& opts = {});
// Buchberger for an explicitly given ring (needed when gens may be empty).
GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens,
                         const GroebnerOptions& opts = {});

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& g);
bool ideal_contains(const GroebnerBasis& g, const Polynomial& f);

// Number of standard monomials; nullopt means infinite.
using Colength = std::optional<std::uint64_t>;

// Minimal generators of a monomial ideal and counts over it.
class Staircase {
 public:
  Staircase(std::vector<Monomial> gens, std::size_t nvars);
  const std::vector<Monomial>& generators() const noexcept { return gens_; }
  std::size_t nvars() const noexcept { return n_; }
  bool contains(const Monomial& m) const noexcept;
  Colength colength() const;
  int dimension() const;
  // Largest degree of a standard monomial: -1 when there is none, nullopt
  // when there are infinitely many.
  std::optional<std::int64_t> max_degree() const;

 private:
  std::vector<Monomial> gens_;
  std::size_t n_;
};

// Removes generators divisible by others; result sorted and unique.
std::vector<Monomial> minimize_monomials(std::vector<Monomial> gens);

Colength colength(const GroebnerBasis& g);
int krull_dimension(const GroebnerBasis& g);
// Dimension criterion: dim(base + seq) == dim(base) - |seq|, with affine
// dimensions. When base + seq lies in the maximal ideal and the affine
// dimension equals n - |base| - |seq|, every component through the origin
// has that dimension too, so a "true" answer holds locally. Components
// away from the origin can only cause false negatives.
bool is_regular_sequence(const RingPtr& ring, const std::vector<Polynomial>& base,
                         const std::vector<Polynomial>& seq);

}  // namespace hk
