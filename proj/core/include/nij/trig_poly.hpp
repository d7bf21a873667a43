#pragma once

#include <map>
#include <vector>

#include "nij/base.hpp"

namespace nij {

// Laurent polynomial sum_j c_j z^j on the unit circle, stored densely over
// [min_degree, max_degree]. Only exact zeros are trimmed from the ends.
class TrigPoly {
 public:
  TrigPoly() = default;

  static TrigPoly constant(Scalar c);
  static TrigPoly monomial(int degree, Scalar c = 1.0);
  static TrigPoly from_coeffs(const std::map<int, Scalar>& coeffs);

  Scalar coeff(int degree) const;
  bool is_zero() const { return c_.empty(); }
  // Meaningless for the zero polynomial; callers check is_zero() first.
  int min_degree() const { return lo_; }
  int max_degree() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  // max(|min_degree|, |max_degree|), 0 for the zero polynomial.
  int degree_bound() const;
  // Largest positive / negative degree present (0 if none).
  int positive_extent() const;
  int negative_extent() const;

  double l1_norm() const;
  Scalar at_angle(double theta) const;
  std::map<int, Scalar> coeffs() const;

  TrigPoly operator+(const TrigPoly& o) const;
  TrigPoly operator-(const TrigPoly& o) const;
  TrigPoly operator*(const TrigPoly& o) const;
  TrigPoly scaled(Scalar s) const;
  // Symbol of the adjoint: coefficients conj(c_{-j}).
  TrigPoly adjoint() const;

  bool operator==(const TrigPoly& o) const = default;

 private:
  void trim();

  int lo_ = 0;
  std::vector<Scalar> c_;
};

}  // namespace nij
