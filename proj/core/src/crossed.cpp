#include "nij/crossed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace nij {

namespace {

const CrossedData& data_of(const Payload& p) { return std::get<CrossedData>(p); }

bool all_zero(const std::vector<Scalar>& f) {
  return std::all_of(f.begin(), f.end(), [](Scalar c) { return c == Scalar{}; });
}

void drop_zero_terms(CrossedData& d) {
  std::erase_if(d.terms, [](const auto& kv) { return all_zero(kv.second); });
}

void accumulate(CrossedData& d, int power, const std::vector<Scalar>& f) {
  auto [it, inserted] = d.terms.try_emplace(power, f);
  if (!inserted)
    for (std::size_t i = 0; i < f.size(); ++i) it->second[i] += f[i];
}

}  // namespace

// ---------------------------------------------------------------- DynSystem

DynSystem::DynSystem(int n, std::vector<int> alpha, std::vector<int> y_set)
    : n_(n), alpha_(std::move(alpha)), y_set_(std::move(y_set)) {
  if (n_ < 1) throw InputError("dynamical system: n must be positive");
  if (static_cast<int>(alpha_.size()) != n_) throw InputError("dynamical system: alpha must have n entries");
  std::vector<bool> hit(static_cast<std::size_t>(n_), false);
  for (int a : alpha_) {
    if (a < 0 || a >= n_ || hit[static_cast<std::size_t>(a)])
      throw InputError("dynamical system: alpha is not a permutation of {0..n-1}");
    hit[static_cast<std::size_t>(a)] = true;
  }
  in_y_.assign(static_cast<std::size_t>(n_), false);
  for (int y : y_set_) {
    if (y < 0 || y >= n_) throw InputError("dynamical system: point of Y outside X");
    if (in_y_[static_cast<std::size_t>(y)]) throw InputError("dynamical system: duplicate point in Y");
    in_y_[static_cast<std::size_t>(y)] = true;
  }
  if (y_set_.empty()) throw InputError("dynamical system: Y must be nonempty");
  std::sort(y_set_.begin(), y_set_.end());
  for (int y : y_set_)
    if (!in_y(alpha_[static_cast<std::size_t>(y)])) throw InputError("dynamical system: Y is not alpha-invariant");

  orbit_id_.assign(static_cast<std::size_t>(n_), -1);
  orbit_pos_.assign(static_cast<std::size_t>(n_), 0);
  for (int x = 0; x < n_; ++x) {
    if (orbit_id_[static_cast<std::size_t>(x)] >= 0) continue;
    std::vector<int> orbit;
    for (int p = x; orbit_id_[static_cast<std::size_t>(p)] < 0; p = alpha_[static_cast<std::size_t>(p)]) {
      orbit_id_[static_cast<std::size_t>(p)] = static_cast<int>(orbits_.size());
      orbit_pos_[static_cast<std::size_t>(p)] = static_cast<int>(orbit.size());
      orbit.push_back(p);
    }
    orbits_.push_back(std::move(orbit));
  }
}

int DynSystem::apply(int x, int power) const {
  const auto& orbit = orbits_[static_cast<std::size_t>(orbit_id_[static_cast<std::size_t>(x)])];
  const int len = static_cast<int>(orbit.size());
  int pos = (orbit_pos_[static_cast<std::size_t>(x)] + power) % len;
  if (pos < 0) pos += len;
  return orbit[static_cast<std::size_t>(pos)];
}

int DynSystem::orbit_length(int x) const {
  return static_cast<int>(orbits_[static_cast<std::size_t>(orbit_id_[static_cast<std::size_t>(x)])].size());
}

bool DynSystem::y_pointwise_fixed() const {
  return std::all_of(y_set_.begin(), y_set_.end(), [this](int y) { return is_fixed(y); });
}

int DynSystem::max_orbit_length() const {
  std::size_t m = 0;
  for (const auto& o : orbits_) m = std::max(m, o.size());
  return static_cast<int>(m);
}

DynSystem DynSystem::restricted_to_y() const {
  std::vector<int> label(static_cast<std::size_t>(n_), -1);
  for (std::size_t i = 0; i < y_set_.size(); ++i) label[static_cast<std::size_t>(y_set_[i])] = static_cast<int>(i);
  std::vector<int> alpha;
  std::vector<int> all;
  for (std::size_t i = 0; i < y_set_.size(); ++i) {
    alpha.push_back(label[static_cast<std::size_t>(alpha_[static_cast<std::size_t>(y_set_[i])])]);
    all.push_back(static_cast<int>(i));
  }
  return DynSystem(static_cast<int>(y_set_.size()), std::move(alpha), std::move(all));
}

// ---------------------------------------------------------------- products

CrossedData crossed_mul(const DynSystem& sys, const CrossedData& a, const CrossedData& b) {
  CrossedData out;
  const auto n = static_cast<std::size_t>(sys.size());
  std::vector<Scalar> h(n);
  for (const auto& [k, f] : a.terms)
    for (const auto& [l, g] : b.terms) {
      for (std::size_t x = 0; x < n; ++x) h[x] = f[x] * g[static_cast<std::size_t>(sys.apply(static_cast<int>(x), k))];
      accumulate(out, k + l, h);
    }
  drop_zero_terms(out);
  return out;
}

CrossedData crossed_star(const DynSystem& sys, const CrossedData& a) {
  CrossedData out;
  const auto n = static_cast<std::size_t>(sys.size());
  for (const auto& [k, f] : a.terms) {
    std::vector<Scalar> h(n);
    for (std::size_t x = 0; x < n; ++x) h[x] = std::conj(f[static_cast<std::size_t>(sys.apply(static_cast<int>(x), -k))]);
    out.terms.emplace(-k, std::move(h));
  }
  return out;
}

// ---------------------------------------------------------------- algebra

CrossedAlgebra::CrossedAlgebra(Params params, TolerancePolicy tol) : Algebra(tol), params_(std::move(params)) {
  if (params_.window < 0) throw InputError("crossed: window must be >= 0");
}

std::shared_ptr<const CrossedAlgebra> CrossedAlgebra::create(Params params, TolerancePolicy tol) {
  return std::make_shared<const CrossedAlgebra>(std::move(params), tol);
}

Element CrossedAlgebra::term(std::vector<Scalar> f, int power) const {
  CrossedData d;
  d.terms.emplace(power, std::move(f));
  validate_payload(d);
  drop_zero_terms(d);
  return make(std::move(d));
}

Element CrossedAlgebra::monomial(int x, int power) const {
  if (x < 0 || x >= system().size()) throw InputError("crossed: point outside X");
  std::vector<Scalar> f(static_cast<std::size_t>(system().size()));
  f[static_cast<std::size_t>(x)] = 1.0;
  return term(std::move(f), power);
}

Element CrossedAlgebra::u_power(int power) const {
  return term(std::vector<Scalar>(static_cast<std::size_t>(system().size()), 1.0), power);
}

double CrossedAlgebra::sup_ideal_residual(const Element& a) const {
  require_owned(a);
  double m = 0.0;
  for (const auto& [k, f] : a.as<CrossedData>().terms)
    for (int y : system().y_set()) m = std::max(m, std::abs(f[static_cast<std::size_t>(y)]));
  return m;
}

std::shared_ptr<const CrossedAlgebra> CrossedAlgebra::quotient_algebra() const {
  std::call_once(quotient_once_, [this] {
    quotient_ = create(Params{system().restricted_to_y(), params_.window}, tol());
  });
  return quotient_;
}

Element CrossedAlgebra::quotient_restrict(const Element& a) const {
  require_owned(a);
  const auto q = quotient_algebra();
  CrossedData out;
  for (const auto& [k, f] : a.as<CrossedData>().terms) {
    std::vector<Scalar> r;
    r.reserve(system().y_set().size());
    for (int y : system().y_set()) r.push_back(f[static_cast<std::size_t>(y)]);
    out.terms.emplace(k, std::move(r));
  }
  drop_zero_terms(out);
  return q->make(std::move(out));
}

std::vector<Element> CrossedAlgebra::generators(int window) const {
  const int w = window > 0 ? window : params_.window;
  std::vector<Element> out;
  for (int k = -w; k <= w; ++k)
    for (int x = 0; x < system().size(); ++x) out.push_back(monomial(x, k));
  return out;
}

std::vector<Element> CrossedAlgebra::ideal_generators(int window) const {
  const int w = window > 0 ? window : params_.window;
  std::vector<Element> out;
  for (int k = -w; k <= w; ++k)
    for (int x = 0; x < system().size(); ++x)
      if (!system().in_y(x)) out.push_back(monomial(x, k));
  return out;
}

Element CrossedAlgebra::random_with(Rng& rng, int window, bool ideal) const {
  const int w = window > 0 ? window : params_.window;
  const auto n = static_cast<std::size_t>(system().size());
  CrossedData d;
  for (int k = -w; k <= w; ++k) {
    if (!rng.coin()) continue;
    std::vector<Scalar> f(n);
    for (std::size_t x = 0; x < n; ++x) {
      const Scalar c = rng.complex_square();
      if (!ideal || !system().in_y(static_cast<int>(x))) f[x] = c;
    }
    d.terms.emplace(k, std::move(f));
  }
  if (d.terms.empty()) {
    std::vector<Scalar> f(n);
    for (std::size_t x = 0; x < n; ++x) {
      const Scalar c = rng.complex_square();
      if (!ideal || !system().in_y(static_cast<int>(x))) f[x] = c;
    }
    d.terms.emplace(rng.uniform_int(-w, w), std::move(f));
  }
  drop_zero_terms(d);
  return make(std::move(d));
}

Element CrossedAlgebra::random_element(Rng& rng, int window) const { return random_with(rng, window, false); }
Element CrossedAlgebra::random_ideal_element(Rng& rng, int window) const { return random_with(rng, window, true); }

std::string CrossedAlgebra::describe(const Element& a) const {
  require_owned(a);
  std::ostringstream os;
  os << "crossed{";
  bool first = true;
  for (const auto& [k, f] : a.as<CrossedData>().terms) {
    os << (first ? "" : " + ") << "[";
    for (std::size_t i = 0; i < f.size(); ++i) os << (i ? ", " : "") << format_scalar(f[i]);
    os << "] u^" << k;
    first = false;
  }
  if (first) os << "0";
  os << "}";
  return os.str();
}

Payload CrossedAlgebra::unit_payload() const {
  CrossedData d;
  d.terms.emplace(0, std::vector<Scalar>(static_cast<std::size_t>(system().size()), 1.0));
  return d;
}

Payload CrossedAlgebra::zero_payload() const { return CrossedData{}; }

Payload CrossedAlgebra::add_payload(const Payload& a, const Payload& b) const {
  CrossedData out = data_of(a);
  for (const auto& [k, g] : data_of(b).terms) accumulate(out, k, g);
  drop_zero_terms(out);
  return out;
}

Payload CrossedAlgebra::scale_payload(Scalar c, const Payload& a) const {
  CrossedData out = data_of(a);
  for (auto& [k, f] : out.terms)
    for (auto& x : f) x *= c;
  drop_zero_terms(out);
  return out;
}

Payload CrossedAlgebra::mul_payload(const Payload& a, const Payload& b) const {
  return crossed_mul(system(), data_of(a), data_of(b));
}

Payload CrossedAlgebra::star_payload(const Payload& a) const { return crossed_star(system(), data_of(a)); }

double CrossedAlgebra::norm_payload(const Payload& a) const {
  double s = 0.0;
  for (const auto& [k, f] : data_of(a).terms) {
    double m = 0.0;
    for (const auto& x : f) m = std::max(m, std::abs(x));
    s += m;
  }
  return s;
}

double CrossedAlgebra::residual_payload(const Payload& a) const {
  double s = 0.0;
  for (const auto& [k, f] : data_of(a).terms) {
    double m = 0.0;
    for (int y : system().y_set()) m = std::max(m, std::abs(f[static_cast<std::size_t>(y)]));
    s += m;
  }
  return s;
}

void CrossedAlgebra::validate_payload(const Payload& a) const {
  const auto* d = std::get_if<CrossedData>(&a);
  if (!d) throw StructuralError("crossed: wrong payload kind");
  for (const auto& [k, f] : d->terms) {
    if (static_cast<int>(f.size()) != system().size()) throw InputError("crossed: coefficient length differs from |X|");
    for (const auto& x : f)
      if (!is_finite(x)) throw InputError("crossed: non-finite coefficient");
  }
}

}  // namespace nij
