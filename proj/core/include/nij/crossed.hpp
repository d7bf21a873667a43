#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "nij/algebra.hpp"

namespace nij {

// A permutation alpha of X = {0, ..., n-1} with an alpha-invariant set Y.
class DynSystem {
 public:
  DynSystem(int n, std::vector<int> alpha, std::vector<int> y_set);

  int size() const { return n_; }
  const std::vector<int>& alpha() const { return alpha_; }
  const std::vector<int>& y_set() const { return y_set_; }
  bool in_y(int x) const { return in_y_[static_cast<std::size_t>(x)]; }

  // alpha^power(x); negative powers iterate the inverse.
  int apply(int x, int power) const;
  const std::vector<std::vector<int>>& orbits() const { return orbits_; }
  int orbit_length(int x) const;
  bool is_fixed(int x) const { return alpha_[static_cast<std::size_t>(x)] == x; }
  // alpha restricted to Y is the identity.
  bool y_pointwise_fixed() const;
  int max_orbit_length() const;

  // (Y, alpha|_Y) relabelled to {0, ..., |Y|-1} in increasing order, with
  // the whole of the new space as its invariant set.
  DynSystem restricted_to_y() const;

 private:
  int n_;
  std::vector<int> alpha_;
  std::vector<int> y_set_;
  std::vector<bool> in_y_;
  std::vector<std::vector<int>> orbits_;
  std::vector<int> orbit_id_;
  std::vector<int> orbit_pos_;
};

// C(X) x_alpha Z over finite X with the ideal k_Y x Z.
class CrossedAlgebra final : public Algebra {
 public:
  struct Params {
    DynSystem system;
    // Power window |k| <= window for generators and random sampling.
    int window = 3;
  };

  static std::shared_ptr<const CrossedAlgebra> create(Params params, TolerancePolicy tol = {});

  ModelKind kind() const override { return ModelKind::Crossed; }
  const DynSystem& system() const { return params_.system; }
  int window() const { return params_.window; }

  Element term(std::vector<Scalar> f, int power) const;
  // delta_x u^power
  Element monomial(int x, int power) const;
  Element u_power(int power) const;
  Element function(std::vector<Scalar> f) const { return term(std::move(f), 0); }

  // max over k and y in Y of |f_k(y)|.
  double sup_ideal_residual(const Element& a) const;

  // Coefficient functions restricted to Y, as an element of the algebra
  // built over (Y, alpha|_Y).
  Element quotient_restrict(const Element& a) const;
  std::shared_ptr<const CrossedAlgebra> quotient_algebra() const;

  std::vector<Element> generators(int window) const override;
  std::vector<Element> ideal_generators(int window) const override;
  Element random_element(Rng& rng, int window) const override;
  Element random_ideal_element(Rng& rng, int window) const override;
  std::string describe(const Element& a) const override;

  CrossedAlgebra(Params params, TolerancePolicy tol);

 protected:
  Payload unit_payload() const override;
  Payload zero_payload() const override;
  Payload add_payload(const Payload& a, const Payload& b) const override;
  Payload scale_payload(Scalar c, const Payload& a) const override;
  Payload mul_payload(const Payload& a, const Payload& b) const override;
  Payload star_payload(const Payload& a) const override;
  // sum over k of sup_x |f_k(x)|
  double norm_payload(const Payload& a) const override;
  // sum over k of sup_{y in Y} |f_k(y)|
  double residual_payload(const Payload& a) const override;
  void validate_payload(const Payload& a) const override;

 private:
  Element random_with(Rng& rng, int window, bool ideal) const;

  Params params_;
  mutable std::once_flag quotient_once_;
  mutable std::shared_ptr<const CrossedAlgebra> quotient_;
};

// The product rule  (f u^k)(g u^l) = f (g o alpha^k) u^{k+l}.
CrossedData crossed_mul(const DynSystem& sys, const CrossedData& a, const CrossedData& b);
// (f u^k)^* = (conj(f) o alpha^{-k}) u^{-k}
CrossedData crossed_star(const DynSystem& sys, const CrossedData& a);

}  // namespace nij
