#include "nij/finfun_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nij {

namespace {

const std::vector<Scalar>& values_of(const Payload& p) { return std::get<FinFunData>(p).values; }
const Eigen::MatrixXcd& entries_of(const Payload& p) { return std::get<MatrixData>(p).entries; }

}  // namespace

// ---------------------------------------------------------------- FinFun

FinFunAlgebra::FinFunAlgebra(Params params, TolerancePolicy tol) : Algebra(tol), params_(std::move(params)) {
  if (params_.n < 1) throw InputError("finfun: n must be positive");
  in_y_.assign(static_cast<std::size_t>(params_.n), false);
  for (int y : params_.y_set) {
    if (y < 0 || y >= params_.n) throw InputError("finfun: point of Y outside X");
    if (in_y_[static_cast<std::size_t>(y)]) throw InputError("finfun: duplicate point in Y");
    in_y_[static_cast<std::size_t>(y)] = true;
  }
  std::sort(params_.y_set.begin(), params_.y_set.end());
  if (params_.proper && (params_.y_set.empty() || static_cast<int>(params_.y_set.size()) == params_.n))
    throw InputError("finfun: a proper ideal needs Y nonempty and Y != X");
}

std::shared_ptr<const FinFunAlgebra> FinFunAlgebra::create(Params params, TolerancePolicy tol) {
  return std::make_shared<const FinFunAlgebra>(std::move(params), tol);
}

Element FinFunAlgebra::function(std::vector<Scalar> values) const { return make(FinFunData{std::move(values)}); }

Element FinFunAlgebra::delta(int x) const {
  if (x < 0 || x >= params_.n) throw InputError("finfun: point outside X");
  std::vector<Scalar> v(static_cast<std::size_t>(params_.n));
  v[static_cast<std::size_t>(x)] = 1.0;
  return function(std::move(v));
}

std::vector<Scalar> FinFunAlgebra::restrict_to_y(const Element& a) const {
  require_owned(a);
  const auto& v = a.as<FinFunData>().values;
  std::vector<Scalar> out;
  out.reserve(params_.y_set.size());
  for (int y : params_.y_set) out.push_back(v[static_cast<std::size_t>(y)]);
  return out;
}

Element FinFunAlgebra::neumann_inverse(const Element& one_plus_k, const Element& k_part) const {
  require_owned(one_plus_k);
  require_owned(k_part);
  std::vector<Scalar> inv = one_plus_k.as<FinFunData>().values;
  for (auto& x : inv) {
    if (x == Scalar{}) throw NotInvertibleError("not invertible: function has a zero value");
    x = 1.0 / x;
  }
  return function(std::move(inv));
}

std::vector<Element> FinFunAlgebra::generators(int) const {
  std::vector<Element> out;
  for (int x = 0; x < params_.n; ++x) out.push_back(delta(x));
  return out;
}

std::vector<Element> FinFunAlgebra::ideal_generators(int) const {
  std::vector<Element> out;
  for (int x = 0; x < params_.n; ++x)
    if (!in_y(x)) out.push_back(delta(x));
  return out;
}

Element FinFunAlgebra::random_element(Rng& rng, int) const {
  std::vector<Scalar> v(static_cast<std::size_t>(params_.n));
  for (auto& x : v) x = rng.complex_square();
  return function(std::move(v));
}

Element FinFunAlgebra::random_ideal_element(Rng& rng, int) const {
  std::vector<Scalar> v(static_cast<std::size_t>(params_.n));
  for (std::size_t x = 0; x < v.size(); ++x) {
    const Scalar c = rng.complex_square();
    if (!in_y_[x]) v[x] = c;
  }
  return function(std::move(v));
}

std::string FinFunAlgebra::describe(const Element& a) const {
  require_owned(a);
  std::ostringstream os;
  os << "finfun[";
  const auto& v = a.as<FinFunData>().values;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << format_scalar(v[i]);
  os << "]";
  return os.str();
}

Payload FinFunAlgebra::unit_payload() const {
  return FinFunData{std::vector<Scalar>(static_cast<std::size_t>(params_.n), 1.0)};
}

Payload FinFunAlgebra::zero_payload() const {
  return FinFunData{std::vector<Scalar>(static_cast<std::size_t>(params_.n))};
}

Payload FinFunAlgebra::add_payload(const Payload& a, const Payload& b) const {
  std::vector<Scalar> v = values_of(a);
  const auto& w = values_of(b);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += w[i];
  return FinFunData{std::move(v)};
}

Payload FinFunAlgebra::scale_payload(Scalar c, const Payload& a) const {
  std::vector<Scalar> v = values_of(a);
  for (auto& x : v) x *= c;
  return FinFunData{std::move(v)};
}

Payload FinFunAlgebra::mul_payload(const Payload& a, const Payload& b) const {
  std::vector<Scalar> v = values_of(a);
  const auto& w = values_of(b);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= w[i];
  return FinFunData{std::move(v)};
}

Payload FinFunAlgebra::star_payload(const Payload& a) const {
  std::vector<Scalar> v = values_of(a);
  for (auto& x : v) x = std::conj(x);
  return FinFunData{std::move(v)};
}

double FinFunAlgebra::norm_payload(const Payload& a) const {
  double m = 0.0;
  for (const auto& x : values_of(a)) m = std::max(m, std::abs(x));
  return m;
}

double FinFunAlgebra::residual_payload(const Payload& a) const {
  const auto& v = values_of(a);
  double m = 0.0;
  for (int y : params_.y_set) m = std::max(m, std::abs(v[static_cast<std::size_t>(y)]));
  return m;
}

void FinFunAlgebra::validate_payload(const Payload& a) const {
  const auto* d = std::get_if<FinFunData>(&a);
  if (!d) throw StructuralError("finfun: wrong payload kind");
  if (static_cast<int>(d->values.size()) != params_.n) throw InputError("finfun: value count differs from |X|");
  for (const auto& x : d->values)
    if (!is_finite(x)) throw InputError("finfun: non-finite value");
}

// ---------------------------------------------------------------- Matrix

Eigen::MatrixXcd BlockProjection::matrix() const {
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(size(), size());
  for (int i = 0; i < dim_plus; ++i) p(i, i) = 1.0;
  return p;
}

MatrixAlgebra::MatrixAlgebra(Params params, TolerancePolicy tol) : Algebra(tol), params_(std::move(params)) {
  if (params_.n < 1) throw InputError("matrix: n must be positive");
  if (params_.block) {
    if (params_.block->dim_plus < 1 || params_.block->dim_minus < 1)
      throw InputError("matrix: block dimensions must be positive");
    if (params_.block->size() != params_.n) throw InputError("matrix: block dimensions must sum to n");
  }
}

std::shared_ptr<const MatrixAlgebra> MatrixAlgebra::create(Params params, TolerancePolicy tol) {
  return std::make_shared<const MatrixAlgebra>(std::move(params), tol);
}

Element MatrixAlgebra::matrix(Eigen::MatrixXcd entries) const { return make(MatrixData{std::move(entries)}); }

Element MatrixAlgebra::elementary(int i, int j) const {
  if (i < 0 || j < 0 || i >= params_.n || j >= params_.n) throw InputError("matrix: index out of range");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(params_.n, params_.n);
  m(i, j) = 1.0;
  return matrix(std::move(m));
}

Element MatrixAlgebra::neumann_inverse(const Element& one_plus_k, const Element& k_part) const {
  require_owned(one_plus_k);
  require_owned(k_part);
  const auto& m = one_plus_k.as<MatrixData>().entries;
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
  if (!lu.isInvertible()) throw NotInvertibleError("not invertible: singular matrix");
  return matrix(lu.inverse());
}

std::vector<Element> MatrixAlgebra::generators(int) const {
  std::vector<Element> out;
  for (int i = 0; i < params_.n; ++i)
    for (int j = 0; j < params_.n; ++j) out.push_back(elementary(i, j));
  return out;
}

std::vector<Element> MatrixAlgebra::ideal_generators(int) const { return {}; }

Element MatrixAlgebra::random_element(Rng& rng, int) const {
  Eigen::MatrixXcd m(params_.n, params_.n);
  for (int j = 0; j < params_.n; ++j)
    for (int i = 0; i < params_.n; ++i) m(i, j) = rng.complex_square();
  return matrix(std::move(m));
}

Element MatrixAlgebra::random_ideal_element(Rng&, int) const { return zero(); }

std::string MatrixAlgebra::describe(const Element& a) const {
  require_owned(a);
  const auto& m = a.as<MatrixData>().entries;
  std::ostringstream os;
  os << "matrix[";
  for (int i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << format_scalar(m(i, j));
  }
  os << "]";
  return os.str();
}

Payload MatrixAlgebra::unit_payload() const { return MatrixData{Eigen::MatrixXcd::Identity(params_.n, params_.n)}; }
Payload MatrixAlgebra::zero_payload() const { return MatrixData{Eigen::MatrixXcd::Zero(params_.n, params_.n)}; }

Payload MatrixAlgebra::add_payload(const Payload& a, const Payload& b) const {
  return MatrixData{entries_of(a) + entries_of(b)};
}

Payload MatrixAlgebra::scale_payload(Scalar c, const Payload& a) const { return MatrixData{c * entries_of(a)}; }

Payload MatrixAlgebra::mul_payload(const Payload& a, const Payload& b) const {
  return MatrixData{entries_of(a) * entries_of(b)};
}

Payload MatrixAlgebra::star_payload(const Payload& a) const { return MatrixData{entries_of(a).adjoint()}; }

double MatrixAlgebra::norm_payload(const Payload& a) const { return entries_of(a).norm(); }

// The ideal is {0}, so the quotient image is the element itself.
double MatrixAlgebra::residual_payload(const Payload& a) const { return entries_of(a).norm(); }

void MatrixAlgebra::validate_payload(const Payload& a) const {
  const auto* d = std::get_if<MatrixData>(&a);
  if (!d) throw StructuralError("matrix: wrong payload kind");
  if (d->entries.rows() != params_.n || d->entries.cols() != params_.n)
    throw InputError("matrix: entries must be n x n");
  if (!d->entries.allFinite()) throw InputError("matrix: non-finite entry");
}

// ---------------------------------------------------------------- helpers

Eigen::MatrixXcd make_partial_isometry(const BlockProjection& p) {
  if (p.dim_plus != p.dim_minus) throw InputError("partial isometry: block dimensions differ");
  if (p.dim_plus < 1) throw InputError("partial isometry: empty block");
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(p.size(), p.size());
  for (int j = 0; j < p.dim_plus; ++j) a(j + p.dim_plus, j) = 1.0;
  return a;
}

Eigen::MatrixXcd partial_isometry_complex_structure(const BlockProjection& p) {
  const Eigen::MatrixXcd a = make_partial_isometry(p);
  const Scalar i(0.0, 1.0);
  // A^2 = 0 and A A* + A* A = 1, so (iA + iA*)^2 = -1. The difference
  // iA - iA* is self-adjoint and squares to +1.
  return i * a + i * a.adjoint();
}

Scalar codiag_functional(const BlockProjection& p, const Eigen::MatrixXcd& a) {
  if (a.rows() != p.size() || a.cols() != p.size()) throw InputError("codiag functional: size mismatch");
  Scalar tr{};
  for (int i = p.dim_plus; i < p.size(); ++i) tr += a(i, i);
  return tr / static_cast<double>(p.dim_minus);
}

}  // namespace nij
