#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "nij/base.hpp"
#include "nij/trig_poly.hpp"

namespace nij {

enum class ModelKind { FinFun, Matrix, Toeplitz, Crossed };

std::string_view to_string(ModelKind kind);

// Values of a function on the points {0, ..., n-1}.
struct FinFunData {
  std::vector<Scalar> values;
};

struct MatrixData {
  Eigen::MatrixXcd entries;
};

// T_symbol + correction on H^2; the correction acts on e_0..e_{s-1}.
struct ToeplitzData {
  TrigPoly symbol;
  Eigen::MatrixXcd correction;
};

// Finite formal sum  sum_k f_k u^k.
struct CrossedData {
  std::map<int, std::vector<Scalar>> terms;
};

using Payload = std::variant<FinFunData, MatrixData, ToeplitzData, CrossedData>;

class Algebra;

// A value owned by one algebra context. Arithmetic between elements of
// different contexts raises StructuralError.
class Element {
 public:
  Element(std::shared_ptr<const Algebra> context, Payload payload);

  const Algebra& context() const { return *context_; }
  const std::shared_ptr<const Algebra>& context_ptr() const { return context_; }
  const Payload& payload() const { return payload_; }

  template <class T>
  const T& as() const {
    if (const T* p = std::get_if<T>(&payload_)) return *p;
    throw StructuralError("element payload does not match the requested model");
  }

 private:
  std::shared_ptr<const Algebra> context_;
  Payload payload_;
};

// A unital C*-algebra model together with a closed two-sided ideal.
//
// The public surface checks context ownership and then forwards to the
// model hooks, which only ever see payloads of their own kind.
class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  explicit Algebra(TolerancePolicy tol);
  virtual ~Algebra() = default;

  Algebra(const Algebra&) = delete;
  Algebra& operator=(const Algebra&) = delete;

  virtual ModelKind kind() const = 0;
  const TolerancePolicy& tol() const { return tol_; }

  Element unit() const;
  Element zero() const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element scale(Scalar c, const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  Element star(const Element& a) const;
  Element commutator(const Element& a, const Element& b) const;

  // Submultiplicative upper bound for the C*-norm.
  double norm_surrogate(const Element& a) const;
  // Size of the image of a in the quotient by the ideal; zero iff a is in
  // the ideal.
  double ideal_residual(const Element& a) const;
  bool in_ideal(const Element& a) const;
  // residual <= abs_tol + rel_tol * scale
  bool within_tolerance(double residual, double scale) const;

  // Inverse of 1 + k with k = one_plus_k - 1. The default uses the Neumann
  // series and needs norm_surrogate(k) <= neumann_norm_cap.
  virtual Element neumann_inverse(const Element& one_plus_k, const Element& k_part) const;
  // g a g^{-1}; g_inv must invert g to within abs_tol.
  Element ad_conjugate(const Element& g, const Element& g_inv, const Element& a) const;

  // Spanning set of the finite-dimensional subspace used for exhaustive
  // checks (window = power window or degree cap where the model has one).
  virtual std::vector<Element> generators(int window) const = 0;
  // Spanning set of the ideal inside that subspace.
  virtual std::vector<Element> ideal_generators(int window) const = 0;
  virtual Element random_element(Rng& rng, int window) const = 0;
  virtual Element random_ideal_element(Rng& rng, int window) const = 0;

  virtual std::string describe(const Element& a) const = 0;

  // Wraps a payload of this model's kind; rejects non-finite entries.
  Element make(Payload payload) const;

 protected:
  virtual Payload unit_payload() const = 0;
  virtual Payload zero_payload() const = 0;
  virtual Payload add_payload(const Payload& a, const Payload& b) const = 0;
  virtual Payload scale_payload(Scalar c, const Payload& a) const = 0;
  virtual Payload mul_payload(const Payload& a, const Payload& b) const = 0;
  virtual Payload star_payload(const Payload& a) const = 0;
  virtual double norm_payload(const Payload& a) const = 0;
  virtual double residual_payload(const Payload& a) const = 0;
  virtual void validate_payload(const Payload& a) const = 0;

  void require_owned(const Element& a) const;

 private:
  TolerancePolicy tol_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

Element operator+(const Element& a, const Element& b);
Element operator-(const Element& a, const Element& b);
Element operator-(const Element& a);
Element operator*(const Element& a, const Element& b);
Element operator*(Scalar c, const Element& a);

Element commutator(const Element& a, const Element& b);
Element star(const Element& a);
double norm_surrogate(const Element& a);
double ideal_residual(const Element& a);
bool in_ideal(const Element& a);

// Formats a complex number as "a+bi" with round-trip precision.
std::string format_scalar(Scalar z);

}  // namespace nij
