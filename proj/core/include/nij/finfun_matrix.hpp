#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "nij/algebra.hpp"

namespace nij {

// C(X) for X = {0, ..., n-1} with the ideal k_Y of functions vanishing on Y.
class FinFunAlgebra final : public Algebra {
 public:
  struct Params {
    int n = 1;
    std::vector<int> y_set;
    // Require {} != Y != X, i.e. a non-trivial ideal.
    bool proper = true;
  };

  static std::shared_ptr<const FinFunAlgebra> create(Params params, TolerancePolicy tol = {});

  ModelKind kind() const override { return ModelKind::FinFun; }
  int size() const { return params_.n; }
  const std::vector<int>& y_set() const { return params_.y_set; }
  bool in_y(int x) const { return in_y_[static_cast<std::size_t>(x)]; }

  Element function(std::vector<Scalar> values) const;
  Element delta(int x) const;
  // Values at the points of Y, in increasing order of the point.
  std::vector<Scalar> restrict_to_y(const Element& a) const;

  // Pointwise reciprocal; the norm cap does not apply.
  Element neumann_inverse(const Element& one_plus_k, const Element& k_part) const override;

  std::vector<Element> generators(int window) const override;
  std::vector<Element> ideal_generators(int window) const override;
  Element random_element(Rng& rng, int window) const override;
  Element random_ideal_element(Rng& rng, int window) const override;
  std::string describe(const Element& a) const override;

  explicit FinFunAlgebra(Params params, TolerancePolicy tol);

 protected:
  Payload unit_payload() const override;
  Payload zero_payload() const override;
  Payload add_payload(const Payload& a, const Payload& b) const override;
  Payload scale_payload(Scalar c, const Payload& a) const override;
  Payload mul_payload(const Payload& a, const Payload& b) const override;
  Payload star_payload(const Payload& a) const override;
  double norm_payload(const Payload& a) const override;
  double residual_payload(const Payload& a) const override;
  void validate_payload(const Payload& a) const override;

 private:
  Params params_;
  std::vector<bool> in_y_;
};

// H = H_+ (+) H_-, P the projection onto the first dim_plus coordinates.
struct BlockProjection {
  int dim_plus = 1;
  int dim_minus = 1;

  int size() const { return dim_plus + dim_minus; }
  Eigen::MatrixXcd matrix() const;
};

// M_n(C) with the zero ideal.
class MatrixAlgebra final : public Algebra {
 public:
  struct Params {
    int n = 2;
    // Optional block decomposition used by the co-diagonal functional and
    // the partial isometry; its size must equal n.
    std::optional<BlockProjection> block;
  };

  static std::shared_ptr<const MatrixAlgebra> create(Params params, TolerancePolicy tol = {});

  ModelKind kind() const override { return ModelKind::Matrix; }
  int size() const { return params_.n; }
  const std::optional<BlockProjection>& block() const { return params_.block; }

  Element matrix(Eigen::MatrixXcd entries) const;
  Element elementary(int i, int j) const;

  // Direct linear solve; the norm cap does not apply.
  Element neumann_inverse(const Element& one_plus_k, const Element& k_part) const override;

  std::vector<Element> generators(int window) const override;
  std::vector<Element> ideal_generators(int window) const override;
  Element random_element(Rng& rng, int window) const override;
  Element random_ideal_element(Rng& rng, int window) const override;
  std::string describe(const Element& a) const override;

  explicit MatrixAlgebra(Params params, TolerancePolicy tol);

 protected:
  Payload unit_payload() const override;
  Payload zero_payload() const override;
  Payload add_payload(const Payload& a, const Payload& b) const override;
  Payload scale_payload(Scalar c, const Payload& a) const override;
  Payload mul_payload(const Payload& a, const Payload& b) const override;
  Payload star_payload(const Payload& a) const override;
  double norm_payload(const Payload& a) const override;
  double residual_payload(const Payload& a) const override;
  void validate_payload(const Payload& a) const override;

 private:
  Params params_;
};

// A e_j = e_{j + dim_plus} for j < dim_plus; requires dim_plus == dim_minus.
Eigen::MatrixXcd make_partial_isometry(const BlockProjection& p);

// i A + i A^*, a skew-adjoint unitary squaring to -1.
Eigen::MatrixXcd partial_isometry_complex_structure(const BlockProjection& p);

// trace((1-P) a) / trace(1-P). Vanishes on P and on the co-diagonal blocks.
Scalar codiag_functional(const BlockProjection& p, const Eigen::MatrixXcd& a);

}  // namespace nij
