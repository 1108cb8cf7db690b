#pragma once

// Quadric completion and reduction of a hypersurface to a diagonal normal
// form by analytic changes of variables.

#include <string>
#include <vector>

#include "hk/series.hpp"

namespace hk {

// F = v (x_i + a)^2 + Q + G1 where Q is the diagonal quadratic part of the
// x_i-free coefficient of F.
struct QuadricCompletion {
  TruncatedSeries v;
  TruncatedSeries a;
  TruncatedSeries G1;
  TruncatedSeries Q;
};

// Throws UnsupportedCharacteristic for p == 2 and PreconditionError naming
// the failing condition.
QuadricCompletion quadric_complete(const TruncatedSeries& F, std::size_t i);

struct QuadraticDiagonalization {
  FieldMatrix M;                          // x -> M x
  int l = -1;                             // rank - 1
  std::vector<FiniteField::Raw> coeffs;   // diagonal entries, 0 past l
  bool needs_extension = false;           // some coefficient is a non-square
};

// Symmetric Gaussian elimination on the degree-2 part. Coefficients are 1
// except possibly one canonical non-square, placed at slot l.
QuadraticDiagonalization diagonalize_quadratic_part(const TruncatedSeries& F);

enum class NormalForm { sum_of_squares, squares_plus_cube, degenerate };
std::string to_string(NormalForm f);

struct DiagonalizationCertificate {
  // F in the ring of the final field (after any extension).
  TruncatedSeries input;
  // Images of the variables, in the same ring as input.
  std::vector<TruncatedSeries> substitution;
  NormalForm tag = NormalForm::degenerate;
  std::vector<FiniteField::Raw> coefficients;
  TruncatedSeries normal_form;
  TruncatedSeries residual;  // input o substitution - normal_form
  int rank = 0;
  std::vector<std::string> extensions;
  std::vector<std::string> steps;
  bool verified = false;
};

// target must be sum_of_squares or squares_plus_cube. Rank deficiencies come
// back tagged degenerate with the partial diagonal form.
DiagonalizationCertificate diagonalize_hypersurface(const TruncatedSeries& F,
                                                    NormalForm target = NormalForm::sum_of_squares);

// True iff F o phi agrees with target below min of the precisions. Throws
// PreconditionError for images with constant terms or a singular linear
// part.
bool verify_substitution(const TruncatedSeries& F, const std::vector<TruncatedSeries>& phi,
                         const TruncatedSeries& target);

TruncatedSeries ts_linear_change(const TruncatedSeries& f, const FieldMatrix& m);

}  // namespace hk
