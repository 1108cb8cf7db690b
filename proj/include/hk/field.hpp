#pragma once

// Arithmetic in F_p and F_{p^m}.
//
// Elements are encoded as integers in [0, p^m): the coefficient vector
// (c_0, ..., c_{m-1}) in the power basis of the modulus is read as base-p
// digits, c_0 least significant. Multiplication goes through log/antilog
// tables built once per field, so fields are limited to p^m <= 2^20; that
// covers every field these experiments touch.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hk/error.hpp"

namespace hk {

struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t m = 1;
  // Monic modulus, coefficients low to high (size m + 1). Empty iff m == 1.
  std::vector<std::uint32_t> modulus;
  std::string generator = "t";

  bool operator==(const FieldSpec&) const = default;
  std::string to_string() const;
};

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

class FiniteField {
 public:
  using Raw = std::uint32_t;

  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 20;

  // Validates primality of p and irreducibility of the modulus.
  static FieldPtr create(const FieldSpec& spec);
  static FieldPtr prime(std::uint32_t p);
  // F_{p^m} with the modulus chosen by find_irreducible(p, m, seed).
  static FieldPtr extension(std::uint32_t p, std::uint32_t m,
                            const std::string& generator = "t",
                            std::uint64_t seed = 0);

  const FieldSpec& spec() const noexcept { return spec_; }
  std::uint32_t characteristic() const noexcept { return spec_.p; }
  std::uint32_t degree() const noexcept { return spec_.m; }
  std::uint32_t order() const noexcept { return order_; }
  bool is_prime_field() const noexcept { return spec_.m == 1; }
  bool same_as(const FiniteField& other) const noexcept {
    return this == &other || spec_ == other.spec_;
  }

  Raw zero() const noexcept { return 0; }
  Raw one() const noexcept { return 1; }
  Raw from_int(std::int64_t v) const noexcept;
  // Element t (the class of the variable) of the power basis.
  Raw generator() const noexcept { return spec_.m == 1 ? 0 : spec_.p; }

  Raw add(Raw a, Raw b) const noexcept {
    if (spec_.m == 1) {
      Raw s = a + b;
      return s >= spec_.p ? s - spec_.p : s;
    }
    if (spec_.p == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[a * order_ + b];
    return add_digits(a, b);
  }
  Raw neg(Raw a) const noexcept {
    if (a == 0) return 0;
    if (spec_.m == 1) return spec_.p - a;
    if (spec_.p == 2) return a;
    return neg_table_[a];
  }
  Raw sub(Raw a, Raw b) const noexcept { return add(a, neg(b)); }
  Raw mul(Raw a, Raw b) const noexcept {
    if (a == 0 || b == 0) return 0;
    if (spec_.m == 1)
      return static_cast<Raw>(std::uint64_t{a} * b % spec_.p);
    return exp_[log_[a] + log_[b]];
  }
  // Throws DivisionByZero for a == 0.
  Raw inv(Raw a) const;
  Raw div(Raw a, Raw b) const { return mul(a, inv(b)); }
  Raw pow(Raw a, std::uint64_t e) const noexcept;
  Raw frobenius(Raw a) const noexcept { return pow(a, spec_.p); }

  // Discrete log and antilog relative to primitive_element().
  std::uint32_t log(Raw a) const;
  Raw exp(std::uint64_t k) const noexcept { return exp_[k % (order_ - 1)]; }
  Raw primitive_element() const noexcept { return exp_[1 % (order_ - 1)]; }

  std::vector<std::uint32_t> coefficients(Raw a) const;
  Raw from_coefficients(const std::vector<std::uint32_t>& c) const;
  // Lexicographic comparison of coefficient vectors, c_0 first.
  bool coeff_less(Raw a, Raw b) const;

  bool is_square(Raw a) const;
  // Canonical: the lexicographically smallest root.
  std::optional<Raw> sqrt(Raw a) const;
  std::optional<Raw> kth_root(Raw a, std::uint64_t k) const;
  // Size of the Frobenius orbit of a, i.e. its degree over F_p.
  std::uint32_t element_degree(Raw a) const noexcept;
  // Solves b^2 + b = a (p == 2 only); canonical root has c_0 == 0.
  std::optional<Raw> artin_schreier(Raw a) const;
  // Smallest non-square in encoding order (p odd).
  Raw canonical_nonsquare() const;

  std::string format(Raw a) const;

 private:
  explicit FiniteField(FieldSpec spec);
  Raw slow_mul(Raw a, Raw b) const;
  Raw add_digits(Raw a, Raw b) const noexcept;

  FieldSpec spec_;
  std::uint32_t order_ = 0;
  std::vector<Raw> exp_;            // size 2 * (order - 1)
  std::vector<std::uint32_t> log_;  // log_[0] unused
  std::vector<Raw> add_table_;      // only for small non-prime, odd p
  std::vector<Raw> neg_table_;
};

// An element bundled with its field; operations check that fields agree.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, FiniteField::Raw value)
      : field_(std::move(field)), value_(value) {}

  const FieldPtr& field() const noexcept { return field_; }
  FiniteField::Raw raw() const noexcept { return value_; }
  bool is_zero() const noexcept { return value_ == 0; }
  std::vector<std::uint32_t> coefficients() const {
    return field_->coefficients(value_);
  }
  std::string to_string() const { return field_->format(value_); }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  FieldPtr field_;
  FiniteField::Raw value_ = 0;
};

enum class ArithOp { add, sub, mul };

FieldElement field_arith(const FieldElement& a, const FieldElement& b,
                         ArithOp op);
FieldElement ff_inv(const FieldElement& a);
// nullopt means "not a square here"; throws for p == 2.
std::optional<FieldElement> ff_sqrt(const FieldElement& a);
// nullopt means "no k-th root here"; throws when p divides k.
std::optional<FieldElement> ff_kth_root(const FieldElement& a, std::uint64_t k);
std::uint32_t element_degree(const FieldElement& a);
// nullopt means "no solution in this field"; throws for p != 2.
std::optional<FieldElement> artin_schreier_solve(const FieldElement& alpha);

// Monic irreducible polynomial of degree m over F_p, low-to-high
// coefficients. seed == 0 scans monic polynomials in increasing encoding
// order; other seeds start the scan at a seeded offset.
std::vector<std::uint32_t> find_irreducible(std::uint32_t p, std::uint32_t m,
                                            std::uint64_t seed = 0);
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly);
bool is_prime(std::uint64_t n) noexcept;

// Field embedding F_{p^m} -> F_{p^{mk}}: sends the generator to the
// smallest root of the small field's modulus in the big field.
class FieldEmbedding {
 public:
  FieldEmbedding(FieldPtr small, FieldPtr big);
  FiniteField::Raw operator()(FiniteField::Raw a) const { return image_.at(a); }
  FieldElement operator()(const FieldElement& a) const;
  const FieldPtr& source() const noexcept { return small_; }
  const FieldPtr& target() const noexcept { return big_; }

 private:
  FieldPtr small_;
  FieldPtr big_;
  std::vector<FiniteField::Raw> image_;
};

// F_{p^{m*factor}} together with the embedding of base.
FieldEmbedding extend_field(const FieldPtr& base, std::uint32_t factor);

}  // namespace hk
