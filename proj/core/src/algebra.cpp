#include "nij/algebra.hpp"

#include <cmath>
#include <cstdio>

namespace nij {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::FinFun: return "finfun";
    case ModelKind::Matrix: return "matrix";
    case ModelKind::Toeplitz: return "toeplitz";
    case ModelKind::Crossed: return "crossed";
  }
  return "unknown";
}

Element::Element(std::shared_ptr<const Algebra> context, Payload payload)
    : context_(std::move(context)), payload_(std::move(payload)) {
  if (!context_) throw StructuralError("element without a context");
}

Algebra::Algebra(TolerancePolicy tol) : tol_(tol) { tol_.validate(); }

void Algebra::require_owned(const Element& a) const {
  if (&a.context() != this) throw StructuralError("element belongs to a different algebra context");
}

Element Algebra::make(Payload payload) const {
  validate_payload(payload);
  return Element(shared_from_this(), std::move(payload));
}

Element Algebra::unit() const { return Element(shared_from_this(), unit_payload()); }
Element Algebra::zero() const { return Element(shared_from_this(), zero_payload()); }

Element Algebra::add(const Element& a, const Element& b) const {
  require_owned(a);
  require_owned(b);
  return Element(shared_from_this(), add_payload(a.payload(), b.payload()));
}

Element Algebra::sub(const Element& a, const Element& b) const { return add(a, scale(-1.0, b)); }

Element Algebra::scale(Scalar c, const Element& a) const {
  require_owned(a);
  if (!is_finite(c)) throw InputError("non-finite scalar");
  return Element(shared_from_this(), scale_payload(c, a.payload()));
}

Element Algebra::mul(const Element& a, const Element& b) const {
  require_owned(a);
  require_owned(b);
  return Element(shared_from_this(), mul_payload(a.payload(), b.payload()));
}

Element Algebra::star(const Element& a) const {
  require_owned(a);
  return Element(shared_from_this(), star_payload(a.payload()));
}

Element Algebra::commutator(const Element& a, const Element& b) const {
  return sub(mul(a, b), mul(b, a));
}

double Algebra::norm_surrogate(const Element& a) const {
  require_owned(a);
  return norm_payload(a.payload());
}

double Algebra::ideal_residual(const Element& a) const {
  require_owned(a);
  return residual_payload(a.payload());
}

bool Algebra::within_tolerance(double residual, double scale) const {
  return residual <= tol_.abs_tol + tol_.rel_tol * scale;
}

bool Algebra::in_ideal(const Element& a) const {
  return within_tolerance(ideal_residual(a), norm_surrogate(a));
}

Element Algebra::neumann_inverse(const Element& one_plus_k, const Element& k_part) const {
  require_owned(one_plus_k);
  require_owned(k_part);
  const Element one = unit();
  if (norm_surrogate(sub(sub(one_plus_k, one), k_part)) > tol_.abs_tol * (1.0 + norm_surrogate(k_part)))
    throw InputError("neumann_inverse: k_part must equal one_plus_k - 1");
  const double r = norm_surrogate(k_part);
  if (r > tol_.neumann_norm_cap) throw NotInvertibleError("not invertible by Neumann: ||k|| exceeds the norm cap");

  // sum_{j>=0} (-k)^j, truncated once r^{j+1}/(1-r) < tail_tol
  const Element minus_k = scale(-1.0, k_part);
  Element sum = one;
  Element term = one;
  double bound = r / (1.0 - r);
  while (bound >= tol_.neumann_tail_tol) {
    term = mul(term, minus_k);
    sum = add(sum, term);
    bound *= r;
  }
  return sum;
}

Element Algebra::ad_conjugate(const Element& g, const Element& g_inv, const Element& a) const {
  const Element defect = sub(mul(g, g_inv), unit());
  if (norm_surrogate(defect) > tol_.abs_tol)
    throw InputError("ad_conjugate: g_inv is not an inverse of g");
  return mul(mul(g, a), g_inv);
}

Element operator+(const Element& a, const Element& b) { return a.context().add(a, b); }
Element operator-(const Element& a, const Element& b) { return a.context().sub(a, b); }
Element operator-(const Element& a) { return a.context().scale(-1.0, a); }
Element operator*(const Element& a, const Element& b) { return a.context().mul(a, b); }
Element operator*(Scalar c, const Element& a) { return a.context().scale(c, a); }

Element commutator(const Element& a, const Element& b) { return a.context().commutator(a, b); }
Element star(const Element& a) { return a.context().star(a); }
double norm_surrogate(const Element& a) { return a.context().norm_surrogate(a); }
double ideal_residual(const Element& a) { return a.context().ideal_residual(a); }
bool in_ideal(const Element& a) { return a.context().in_ideal(a); }

std::string format_scalar(Scalar z) {
  char buf[64];
  // Adding 0.0 turns a negative zero into +0.
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real() + 0.0, z.imag() + 0.0);
  return buf;
}

}  // namespace nij
