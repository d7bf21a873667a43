#pragma once

#include <memory>

#include "nij/algebra.hpp"

namespace nij {

// Toeplitz algebra on H^2 restricted to trigonometric-polynomial symbols
// plus finite-rank corrections. The ideal is the compacts, i.e. the
// elements with zero symbol.
class ToeplitzAlgebra final : public Algebra {
 public:
  struct Params {
    // Degree window for generators and random sampling.
    int degree_cap = 4;
    // Correction block size for generators and random sampling.
    int correction_dim = 4;
  };

  static std::shared_ptr<const ToeplitzAlgebra> create(Params params, TolerancePolicy tol = {});

  ModelKind kind() const override { return ModelKind::Toeplitz; }
  const Params& params() const { return params_; }

  Element element(TrigPoly symbol, Eigen::MatrixXcd correction = {}) const;
  // T_{z^j}
  Element shift_power(int j) const;

  std::vector<Element> generators(int window) const override;
  std::vector<Element> ideal_generators(int window) const override;
  Element random_element(Rng& rng, int window) const override;
  Element random_ideal_element(Rng& rng, int window) const override;
  std::string describe(const Element& a) const override;

  explicit ToeplitzAlgebra(Params params, TolerancePolicy tol);

 protected:
  Payload unit_payload() const override;
  Payload zero_payload() const override;
  Payload add_payload(const Payload& a, const Payload& b) const override;
  Payload scale_payload(Scalar c, const Payload& a) const override;
  Payload mul_payload(const Payload& a, const Payload& b) const override;
  Payload star_payload(const Payload& a) const override;
  // 2 * l1(symbol) + spectral norm of the correction.
  double norm_payload(const Payload& a) const override;
  // l1 norm of the symbol.
  double residual_payload(const Payload& a) const override;
  void validate_payload(const Payload& a) const override;

 private:
  Params params_;
};

// Entries (T_phi)_{ij} = phi_hat(i - j) for i < rows, j < cols.
Eigen::MatrixXcd toeplitz_block(const TrigPoly& phi, int rows, int cols);

// T_phi T_psi - T_{phi psi}, returned as a square block of side
// max(positive extent of phi, negative extent of psi); zero elsewhere.
Eigen::MatrixXcd semicommutator(const TrigPoly& phi, const TrigPoly& psi);

// Product in closed form: symbol phi*psi, correction
// H(phi, psi) + T_phi G + F T_psi + F G, trimmed below 1e-14.
ToeplitzData toeplitz_mul(const ToeplitzData& a, const ToeplitzData& b);

// dim x dim compression of a to span{e_0, ..., e_{dim-1}}. Requires
// dim >= 2 * degree_bound + correction size + 8.
Eigen::MatrixXcd truncation_oracle(const Element& a, int dim);

// Winding number of phi around 0 from phase increments on a uniform grid
// of the given size (at least 16 * (degree_bound + 1)). Throws
// NotInvertibleError when |phi| <= 100 * abs_tol on the grid and
// GridTooCoarseError when a phase step between neighbouring samples
// exceeds pi/2 or the sum is more than 0.1 away from an integer.
int winding_on_grid(const TrigPoly& phi, int grid, double abs_tol = 1e-9);
// Same, doubling the grid (up to 12 times) while it is too coarse.
int winding(const TrigPoly& phi, double abs_tol = 1e-9);

// -winding(symbol); finite-rank corrections do not contribute.
int fredholm_index(const Element& a);

}  // namespace nij
