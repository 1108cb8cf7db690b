#pragma once

// Sparse multivariate polynomials over a FiniteField.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hk/field.hpp"

namespace hk {

constexpr std::size_t kMaxVars = 8;

struct Monomial {
  std::array<std::uint32_t, kMaxVars> e{};
  std::uint32_t deg = 0;

  static Monomial var(std::size_t i, std::uint32_t power = 1) {
    Monomial m;
    m.e[i] = power;
    m.deg = power;
    return m;
  }

  bool is_one() const noexcept { return deg == 0; }
  bool divides(const Monomial& o) const noexcept {
    if (deg > o.deg) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  // Support as a bitmask of variables with positive exponent.
  std::uint32_t support() const noexcept {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i]) s |= 1U << i;
    return s;
  }
  bool operator==(const Monomial& o) const noexcept {
    return deg == o.deg && e == o.e;
  }
  bool operator!=(const Monomial& o) const noexcept { return !(*this == o); }
};

// Throws OverflowError if an exponent leaves uint32.
Monomial mono_mul(const Monomial& a, const Monomial& b);
// a / b; requires b | a.
Monomial mono_div(const Monomial& a, const Monomial& b) noexcept;
Monomial mono_lcm(const Monomial& a, const Monomial& b) noexcept;
Monomial mono_pow(const Monomial& a, std::uint64_t k);
bool mono_coprime(const Monomial& a, const Monomial& b) noexcept;
std::size_t mono_hash(const Monomial& m) noexcept;

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    return mono_hash(m);
  }
};

class MonomialOrder {
 public:
  // negdegrevlex is a local order (1 is the largest monomial). It is only
  // used where every variable has a pure power in the ideal, so the set of
  // surviving monomials is finite and reductions terminate.
  enum class Kind { degrevlex, lex, negdegrevlex };

  MonomialOrder() = default;
  // perm[k] is the variable ranked k-th (perm[0] is the largest variable).
  MonomialOrder(Kind kind, std::vector<std::uint8_t> perm);
  static MonomialOrder degrevlex(std::size_t n);
  static MonomialOrder lex(std::size_t n);
  static MonomialOrder negdegrevlex(std::size_t n);

  Kind kind() const noexcept { return kind_; }
  const std::vector<std::uint8_t>& perm() const noexcept { return perm_; }

  // Negative, zero or positive as a <, =, > b.
  int compare(const Monomial& a, const Monomial& b) const noexcept {
    if (kind_ != Kind::lex) {
      if (a.deg != b.deg) return (a.deg < b.deg) == (kind_ == Kind::degrevlex) ? -1 : 1;
      for (std::size_t k = perm_.size(); k-- > 0;) {
        const auto v = perm_[k];
        if (a.e[v] != b.e[v]) return a.e[v] > b.e[v] ? -1 : 1;
      }
      return 0;
    }
    for (auto v : perm_)
      if (a.e[v] != b.e[v]) return a.e[v] < b.e[v] ? -1 : 1;
    return 0;
  }
  bool greater(const Monomial& a, const Monomial& b) const noexcept {
    return compare(a, b) > 0;
  }
  bool operator==(const MonomialOrder&) const = default;

 private:
  Kind kind_ = Kind::degrevlex;
  std::vector<std::uint8_t> perm_;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Ring {
 public:
  static RingPtr create(FieldPtr field, std::vector<std::string> vars);
  static RingPtr create(FieldPtr field, std::vector<std::string> vars,
                        MonomialOrder order);

  const FieldPtr& field() const noexcept { return field_; }
  const std::vector<std::string>& vars() const noexcept { return vars_; }
  std::size_t nvars() const noexcept { return vars_.size(); }
  const MonomialOrder& order() const noexcept { return order_; }
  // Index of a variable name, or -1.
  int var_index(std::string_view name) const noexcept;

  bool same_as(const Ring& o) const noexcept {
    return this == &o ||
           (field_->same_as(*o.field_) && vars_ == o.vars_ && order_ == o.order_);
  }
  RingPtr with_order(MonomialOrder order) const;
  RingPtr with_field(FieldPtr field) const;
  // Ring on the variables listed in keep (in that order).
  RingPtr subring(const std::vector<std::size_t>& keep) const;

 private:
  Ring(FieldPtr field, std::vector<std::string> vars, MonomialOrder order);
  FieldPtr field_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

struct Term {
  Monomial m;
  FiniteField::Raw c;
};

class Polynomial {
 public:
  using Raw = FiniteField::Raw;

  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  // Combines duplicate monomials, drops zeros and sorts.
  Polynomial(RingPtr ring, std::vector<Term> terms);

  static Polynomial constant(RingPtr ring, Raw c);
  static Polynomial variable(RingPtr ring, std::size_t i);
  static Polynomial monomial(RingPtr ring, const Monomial& m, Raw c = 1);
  // Trusts that terms are sorted descending, unique and nonzero.
  static Polynomial from_sorted(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const noexcept { return ring_; }
  const FieldPtr& field() const noexcept { return ring_->field(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one());
  }
  const Term& leading() const { return terms_.front(); }
  const Monomial& lm() const { return terms_.front().m; }
  Raw lc() const { return terms_.front().c; }
  Raw constant_term() const noexcept;
  Raw coefficient(const Monomial& m) const noexcept;

  // Largest total degree (-1 for zero).
  int total_degree() const noexcept;
  // Smallest total degree of a term (-1 for zero).
  int order() const noexcept;
  int degree_in(std::size_t var) const noexcept;

  Polynomial operator-() const;
  Polynomial scaled(Raw c) const;
  Polynomial monic() const;
  Polynomial mul_term(const Monomial& m, Raw c) const;
  Polynomial pow(std::uint64_t k) const;

  Polynomial with_ring(RingPtr ring) const;  // same variables, new order
  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);

enum class PolyOp { add, sub, mul };
Polynomial poly_arith(const Polynomial& a, const Polynomial& b, PolyOp op);

std::string format_monomial(const Monomial& m, const Ring& ring);
std::string format_coefficient(FiniteField::Raw c, const FiniteField& f);

// Parses the expression grammar (integers, the field generator, variables,
// + - * ^, parentheses). Throws ParseError with a byte offset.
Polynomial parse_poly(std::string_view text, const RingPtr& ring);
// Parses a comma-separated list of expressions.
std::vector<Polynomial> parse_poly_list(std::string_view text,
                                        const RingPtr& ring);
// Parses a field element literal (integer or generator expression).
FiniteField::Raw parse_field_element(std::string_view text,
                                     const FieldPtr& field);

Polynomial frobenius_power(const Polynomial& f, std::uint32_t e);
// q must be a power of the characteristic.
std::vector<Polynomial> bracket_power(const std::vector<Polynomial>& gens,
                                      std::uint64_t q);
// Returns e with p^e == q, or throws InvalidQ.
std::uint32_t q_exponent(std::uint64_t p, std::uint64_t q);

using Substitution = std::vector<Polynomial>;
Polynomial substitute(const Polynomial& f, const Substitution& s);
Polynomial homogeneous_component(const Polynomial& f, std::uint32_t d);

// Square matrix over a field, row-major.
struct FieldMatrix {
  std::size_t n = 0;
  std::vector<FiniteField::Raw> a;

  static FieldMatrix identity(std::size_t n);
  FiniteField::Raw& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  FiniteField::Raw at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

FieldMatrix mat_mul(const FieldMatrix& x, const FieldMatrix& y,
                    const FiniteField& f);
// Throws SingularMatrix.
FieldMatrix mat_inverse(const FieldMatrix& m, const FiniteField& f);
bool mat_invertible(const FieldMatrix& m, const FiniteField& f);

// Images x_i -> sum_j M_ij x_j.
Substitution linear_substitution(const FieldMatrix& m, const RingPtr& ring);
Polynomial linear_change(const Polynomial& f, const FieldMatrix& m);

// Maps a polynomial to an extension field through an embedding.
Polynomial map_coefficients(const Polynomial& f, const RingPtr& target,
                            const FieldEmbedding& emb);

}  // namespace hk
