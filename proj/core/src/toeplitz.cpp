#include "nij/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace nij {

namespace {

constexpr double kTrimThreshold = 1e-14;

const ToeplitzData& data_of(const Payload& p) { return std::get<ToeplitzData>(p); }

Eigen::MatrixXcd embed(const Eigen::MatrixXcd& m, int size) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(size, size);
  out.topLeftCorner(m.rows(), m.cols()) = m;
  return out;
}

Eigen::MatrixXcd trimmed(Eigen::MatrixXcd m) {
  Eigen::Index s = std::max(m.rows(), m.cols());
  m = embed(m, static_cast<int>(s));
  while (s > 0) {
    const double row = m.row(s - 1).head(s).cwiseAbs().maxCoeff();
    const double col = m.col(s - 1).head(s).cwiseAbs().maxCoeff();
    if (std::max(row, col) >= kTrimThreshold) break;
    --s;
  }
  return m.topLeftCorner(s, s);
}

Eigen::MatrixXcd sum_embedded(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const int s = static_cast<int>(std::max({a.rows(), a.cols(), b.rows(), b.cols()}));
  return embed(a, s) + embed(b, s);
}

}  // namespace

ToeplitzAlgebra::ToeplitzAlgebra(Params params, TolerancePolicy tol) : Algebra(tol), params_(params) {
  if (params_.degree_cap < 0) throw InputError("toeplitz: degree_cap must be >= 0");
  if (params_.correction_dim < 0) throw InputError("toeplitz: correction_dim must be >= 0");
}

std::shared_ptr<const ToeplitzAlgebra> ToeplitzAlgebra::create(Params params, TolerancePolicy tol) {
  return std::make_shared<const ToeplitzAlgebra>(params, tol);
}

Element ToeplitzAlgebra::element(TrigPoly symbol, Eigen::MatrixXcd correction) const {
  return make(ToeplitzData{std::move(symbol), std::move(correction)});
}

Element ToeplitzAlgebra::shift_power(int j) const { return element(TrigPoly::monomial(j)); }

std::vector<Element> ToeplitzAlgebra::generators(int window) const {
  const int d = window > 0 ? window : params_.degree_cap;
  std::vector<Element> out;
  for (int j = -d; j <= d; ++j) out.push_back(shift_power(j));
  for (Element& e : ideal_generators(window)) out.push_back(std::move(e));
  return out;
}

std::vector<Element> ToeplitzAlgebra::ideal_generators(int) const {
  const int s = params_.correction_dim;
  std::vector<Element> out;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(s, s);
      m(i, j) = 1.0;
      out.push_back(element(TrigPoly{}, std::move(m)));
    }
  return out;
}

Element ToeplitzAlgebra::random_element(Rng& rng, int window) const {
  const int d = window > 0 ? window : params_.degree_cap;
  std::map<int, Scalar> coeffs;
  for (int j = -d; j <= d; ++j) coeffs[j] = rng.complex_square();
  const int s = rng.uniform_int(0, params_.correction_dim);
  Eigen::MatrixXcd f(s, s);
  for (int c = 0; c < s; ++c)
    for (int r = 0; r < s; ++r) f(r, c) = rng.complex_square();
  return element(TrigPoly::from_coeffs(coeffs), std::move(f));
}

Element ToeplitzAlgebra::random_ideal_element(Rng& rng, int) const {
  const int s = std::max(1, rng.uniform_int(1, std::max(1, params_.correction_dim)));
  Eigen::MatrixXcd f(s, s);
  for (int c = 0; c < s; ++c)
    for (int r = 0; r < s; ++r) f(r, c) = rng.complex_square();
  return element(TrigPoly{}, std::move(f));
}

std::string ToeplitzAlgebra::describe(const Element& a) const {
  require_owned(a);
  const auto& d = a.as<ToeplitzData>();
  std::ostringstream os;
  os << "toeplitz{symbol:";
  bool first = true;
  for (const auto& [j, c] : d.symbol.coeffs()) {
    os << (first ? " " : " + ") << "(" << format_scalar(c) << ")z^" << j;
    first = false;
  }
  if (first) os << " 0";
  os << "; correction " << d.correction.rows() << "x" << d.correction.cols() << "[";
  for (int i = 0; i < d.correction.rows(); ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < d.correction.cols(); ++j) os << (j ? ", " : "") << format_scalar(d.correction(i, j));
  }
  os << "]}";
  return os.str();
}

Payload ToeplitzAlgebra::unit_payload() const { return ToeplitzData{TrigPoly::constant(1.0), {}}; }
Payload ToeplitzAlgebra::zero_payload() const { return ToeplitzData{}; }

Payload ToeplitzAlgebra::add_payload(const Payload& a, const Payload& b) const {
  const auto& x = data_of(a);
  const auto& y = data_of(b);
  return ToeplitzData{x.symbol + y.symbol, trimmed(sum_embedded(x.correction, y.correction))};
}

Payload ToeplitzAlgebra::scale_payload(Scalar c, const Payload& a) const {
  const auto& x = data_of(a);
  return ToeplitzData{x.symbol.scaled(c), trimmed(c * x.correction)};
}

Payload ToeplitzAlgebra::mul_payload(const Payload& a, const Payload& b) const {
  return toeplitz_mul(data_of(a), data_of(b));
}

Payload ToeplitzAlgebra::star_payload(const Payload& a) const {
  const auto& x = data_of(a);
  return ToeplitzData{x.symbol.adjoint(), x.correction.adjoint()};
}

double ToeplitzAlgebra::norm_payload(const Payload& a) const {
  const auto& x = data_of(a);
  double op = 0.0;
  if (x.correction.size() > 0) op = Eigen::JacobiSVD<Eigen::MatrixXcd>(x.correction).singularValues()(0);
  return 2.0 * x.symbol.l1_norm() + op;
}

double ToeplitzAlgebra::residual_payload(const Payload& a) const { return data_of(a).symbol.l1_norm(); }

void ToeplitzAlgebra::validate_payload(const Payload& a) const {
  const auto* d = std::get_if<ToeplitzData>(&a);
  if (!d) throw StructuralError("toeplitz: wrong payload kind");
  if (d->correction.rows() != d->correction.cols()) throw InputError("toeplitz: correction must be square");
  if (!d->correction.allFinite()) throw InputError("toeplitz: non-finite correction entry");
  for (const auto& [j, c] : d->symbol.coeffs())
    if (!is_finite(c)) throw InputError("toeplitz: non-finite symbol coefficient");
}

Eigen::MatrixXcd toeplitz_block(const TrigPoly& phi, int rows, int cols) {
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(rows, cols);
  if (phi.is_zero()) return t;
  for (const auto& [k, c] : phi.coeffs())
    for (int j = std::max(0, -k); j < cols && j + k < rows; ++j) t(j + k, j) = c;
  return t;
}

Eigen::MatrixXcd semicommutator(const TrigPoly& phi, const TrigPoly& psi) {
  const int rows = phi.positive_extent();
  const int cols = psi.negative_extent();
  const int m = std::max(rows, cols);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m, m);
  // H_{jk} = -sum_{l>=1} phi_hat(j+l) psi_hat(-l-k)
  for (int j = 0; j < rows; ++j)
    for (int k = 0; k < cols; ++k) {
      Scalar s{};
      for (int l = 1; j + l <= rows && l + k <= cols; ++l) s += phi.coeff(j + l) * psi.coeff(-l - k);
      h(j, k) = -s;
    }
  return h;
}

ToeplitzData toeplitz_mul(const ToeplitzData& a, const ToeplitzData& b) {
  const TrigPoly& phi = a.symbol;
  const TrigPoly& psi = b.symbol;
  const Eigen::MatrixXcd& f = a.correction;
  const Eigen::MatrixXcd& g = b.correction;

  Eigen::MatrixXcd corr = semicommutator(phi, psi);
  if (g.size() > 0 && !phi.is_zero()) {
    const int s = static_cast<int>(g.rows());
    corr = sum_embedded(corr, toeplitz_block(phi, s + phi.positive_extent(), s) * g);
  }
  if (f.size() > 0 && !psi.is_zero()) {
    const int s = static_cast<int>(f.rows());
    corr = sum_embedded(corr, f * toeplitz_block(psi, s, s + psi.negative_extent()));
  }
  if (f.size() > 0 && g.size() > 0) {
    const int s = static_cast<int>(std::max(f.rows(), g.rows()));
    corr = sum_embedded(corr, embed(f, s) * embed(g, s));
  }
  return ToeplitzData{phi * psi, trimmed(std::move(corr))};
}

Eigen::MatrixXcd truncation_oracle(const Element& a, int dim) {
  const auto& d = a.as<ToeplitzData>();
  const int needed = 2 * d.symbol.degree_bound() + static_cast<int>(d.correction.rows()) + 8;
  if (dim < needed) throw InputError("truncation_oracle: dim too small for the symbol degree and correction");
  Eigen::MatrixXcd t = toeplitz_block(d.symbol, dim, dim);
  t.topLeftCorner(d.correction.rows(), d.correction.cols()) += d.correction;
  return t;
}

int winding_on_grid(const TrigPoly& phi, int grid, double abs_tol) {
  const int minimum = 16 * (phi.degree_bound() + 1);
  if (grid < minimum) grid = minimum;
  const double floor = 100.0 * abs_tol;
  const double step = 2.0 * std::numbers::pi / grid;
  Scalar prev = phi.at_angle(0.0);
  if (std::abs(prev) <= floor) throw NotInvertibleError("not invertible in C(T): symbol nearly vanishes on the circle");
  const Scalar start = prev;
  double total = 0.0;
  for (int k = 1; k <= grid; ++k) {
    const Scalar cur = k == grid ? start : phi.at_angle(step * k);
    if (std::abs(cur) <= floor)
      throw NotInvertibleError("not invertible in C(T): symbol nearly vanishes on the circle");
    // The principal increments of a closed loop always sum to a multiple
    // of 2 pi, so resolution is judged per step instead.
    const double d = std::arg(cur / prev);
    if (std::abs(d) > 0.5 * std::numbers::pi) throw GridTooCoarseError("winding: phase step exceeds pi/2");
    total += d;
    prev = cur;
  }
  const double turns = total / (2.0 * std::numbers::pi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) >= 0.1) throw GridTooCoarseError("winding: grid too coarse");
  return static_cast<int>(rounded);
}

int winding(const TrigPoly& phi, double abs_tol) {
  int grid = 16 * (phi.degree_bound() + 1);
  for (int attempt = 0; attempt < 12; ++attempt, grid *= 2) {
    try {
      return winding_on_grid(phi, grid, abs_tol);
    } catch (const GridTooCoarseError&) {
    }
  }
  throw GridTooCoarseError("winding: grid too coarse after repeated doubling");
}

int fredholm_index(const Element& a) {
  return -winding(a.as<ToeplitzData>().symbol, a.context().tol().abs_tol);
}

}  // namespace nij
