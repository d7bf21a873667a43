#include "nij/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace nij {

TrigPoly TrigPoly::constant(Scalar c) { return monomial(0, c); }

TrigPoly TrigPoly::monomial(int degree, Scalar c) {
  TrigPoly p;
  p.lo_ = degree;
  p.c_ = {c};
  p.trim();
  return p;
}

TrigPoly TrigPoly::from_coeffs(const std::map<int, Scalar>& coeffs) {
  TrigPoly p;
  if (coeffs.empty()) return p;
  p.lo_ = coeffs.begin()->first;
  p.c_.assign(static_cast<std::size_t>(coeffs.rbegin()->first - p.lo_ + 1), Scalar{});
  for (const auto& [j, c] : coeffs) p.c_[static_cast<std::size_t>(j - p.lo_)] = c;
  p.trim();
  return p;
}

Scalar TrigPoly::coeff(int degree) const {
  if (c_.empty() || degree < lo_ || degree > max_degree()) return {};
  return c_[static_cast<std::size_t>(degree - lo_)];
}

int TrigPoly::degree_bound() const {
  if (c_.empty()) return 0;
  return std::max(std::abs(lo_), std::abs(max_degree()));
}

int TrigPoly::positive_extent() const { return c_.empty() ? 0 : std::max(0, max_degree()); }

int TrigPoly::negative_extent() const { return c_.empty() ? 0 : std::max(0, -lo_); }

double TrigPoly::l1_norm() const {
  double s = 0.0;
  for (const auto& c : c_) s += std::abs(c);
  return s;
}

Scalar TrigPoly::at_angle(double theta) const {
  Scalar s{};
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const double k = static_cast<double>(lo_ + static_cast<int>(i));
    s += c_[i] * std::polar(1.0, k * theta);
  }
  return s;
}

std::map<int, Scalar> TrigPoly::coeffs() const {
  std::map<int, Scalar> out;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != Scalar{}) out.emplace(lo_ + static_cast<int>(i), c_[i]);
  return out;
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
  if (c_.empty()) return o;
  if (o.c_.empty()) return *this;
  TrigPoly r;
  r.lo_ = std::min(lo_, o.lo_);
  const int hi = std::max(max_degree(), o.max_degree());
  r.c_.assign(static_cast<std::size_t>(hi - r.lo_ + 1), Scalar{});
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i + static_cast<std::size_t>(lo_ - r.lo_)] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i)
    r.c_[i + static_cast<std::size_t>(o.lo_ - r.lo_)] += o.c_[i];
  r.trim();
  return r;
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const { return *this + o.scaled(-1.0); }

TrigPoly TrigPoly::operator*(const TrigPoly& o) const {
  if (c_.empty() || o.c_.empty()) return {};
  TrigPoly r;
  r.lo_ = lo_ + o.lo_;
  r.c_.assign(c_.size() + o.c_.size() - 1, Scalar{});
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  r.trim();
  return r;
}

TrigPoly TrigPoly::scaled(Scalar s) const {
  TrigPoly r = *this;
  for (auto& c : r.c_) c *= s;
  r.trim();
  return r;
}

TrigPoly TrigPoly::adjoint() const {
  TrigPoly r;
  if (c_.empty()) return r;
  r.lo_ = -max_degree();
  r.c_.assign(c_.rbegin(), c_.rend());
  for (auto& c : r.c_) c = std::conj(c);
  return r;
}

void TrigPoly::trim() {
  std::size_t first = 0;
  while (first < c_.size() && c_[first] == Scalar{}) ++first;
  if (first == c_.size()) {
    c_.clear();
    lo_ = 0;
    return;
  }
  std::size_t last = c_.size();
  while (c_[last - 1] == Scalar{}) --last;
  c_ = std::vector<Scalar>(c_.begin() + static_cast<std::ptrdiff_t>(first),
                           c_.begin() + static_cast<std::ptrdiff_t>(last));
  lo_ += static_cast<int>(first);
}

}  // namespace nij
