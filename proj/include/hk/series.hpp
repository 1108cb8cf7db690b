#pragma once

// Multivariate power series truncated at total degree N.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hk/poly.hpp"

namespace hk {

class NotASquare : public PreconditionError {
 public:
  NotASquare() : PreconditionError("constant term is not a square in this field") {}
};

class NoRoot : public PreconditionError {
 public:
  NoRoot() : PreconditionError("constant term has no root of this order in this field") {}
};

class NotPreparable : public PreconditionError {
 public:
  explicit NotPreparable(const std::string& what) : PreconditionError(what) {}
};

// Terms of total degree < N. lossy() is set once any nonzero term has been
// discarded; a series that is not lossy equals the polynomial it stores.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(Polynomial p, std::uint32_t N);

  const Polynomial& poly() const noexcept { return p_; }
  const RingPtr& ring() const noexcept { return p_.ring(); }
  const FieldPtr& field() const noexcept { return p_.field(); }
  std::uint32_t precision() const noexcept { return n_; }
  bool lossy() const noexcept { return lossy_; }
  bool is_zero() const noexcept { return p_.is_zero(); }
  FiniteField::Raw constant_term() const noexcept { return p_.constant_term(); }
  int order() const noexcept { return p_.order(); }

  TruncatedSeries with_precision(std::uint32_t N) const;
  TruncatedSeries with_lossy(bool lossy) const;
  // Equality of all coefficients below min of the two precisions.
  bool equals_mod(const TruncatedSeries& o) const;
  bool operator==(const TruncatedSeries& o) const {
    return n_ == o.n_ && p_ == o.p_;
  }
  std::string to_string() const;  // "<poly>@N"

 private:
  Polynomial p_;
  std::uint32_t n_ = 0;
  bool lossy_ = false;
};

// "expr@N"; the annotation is optional when default_precision > 0.
TruncatedSeries parse_series(std::string_view text, const RingPtr& ring,
                             std::uint32_t default_precision = 0);

enum class SeriesOp { add, sub, mul };
TruncatedSeries ts_arith(const TruncatedSeries& a, const TruncatedSeries& b, SeriesOp op);
TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries ts_scale(const TruncatedSeries& a, FiniteField::Raw c);
TruncatedSeries ts_pow(const TruncatedSeries& a, std::uint64_t k);

// Throws NotAUnit for zero constant term.
TruncatedSeries ts_inverse(const TruncatedSeries& f);
// Throws UnsupportedCharacteristic for p == 2, NotAUnit, NotASquare.
TruncatedSeries ts_sqrt(const TruncatedSeries& f);
// Throws UnsupportedCharacteristic when p | k, NotAUnit, NoRoot.
TruncatedSeries ts_kth_root(const TruncatedSeries& f, std::uint64_t k);

// Series substitution x_i -> images[i]; images must have zero constant term
// unless f is a polynomial (not lossy) of degree < N.
TruncatedSeries ts_substitute(const TruncatedSeries& f, const std::vector<TruncatedSeries>& images);
// Substitutes a single variable.
TruncatedSeries ts_substitute_var(const TruncatedSeries& f, std::size_t var,
                                  const TruncatedSeries& image);

// f = u * f_o with u a unit and f_o = var^n + sum_{j<n} a_j var^j,
// a_j in the maximal ideal of the other variables.
struct PreparedForm {
  TruncatedSeries unit;
  TruncatedSeries distinguished;
  std::size_t var = 0;
  std::uint32_t degree = 0;
  // a_0..a_{n-1} as series in the remaining variables (same ring).
  std::vector<TruncatedSeries> coefficients;
};

// Throws NotPreparable when no pure power of var appears below precision.
PreparedForm weierstrass_prepare(const TruncatedSeries& f, std::size_t var);
// Least n with var^n in f, or -1.
int distinguished_degree(const TruncatedSeries& f, std::size_t var);
// Splits f into coefficients of var^0, var^1, ... (series free of var).
std::vector<TruncatedSeries> coefficients_in(const TruncatedSeries& f, std::size_t var);

}  // namespace hk
