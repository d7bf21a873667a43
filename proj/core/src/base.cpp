#include "nij/base.hpp"

#include <cmath>

namespace nij {

void TolerancePolicy::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0))
    throw InputError("tolerance: abs_tol and rel_tol must be >= 0");
  if (!(neumann_norm_cap > 0.0 && neumann_norm_cap < 1.0))
    throw InputError("tolerance: neumann_norm_cap must lie in (0, 1)");
  if (!(neumann_tail_tol > 0.0)) throw InputError("tolerance: neumann_tail_tol must be > 0");
}

Rng Rng::substream(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over (seed, index) so neighbouring indices give
  // unrelated engine states.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return Rng(z);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int Rng::uniform_int(int lo, int hi) {
  if (hi <= lo) return lo;
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

Scalar Rng::complex_square() {
  const double re = 2.0 * uniform() - 1.0;
  const double im = 2.0 * uniform() - 1.0;
  return {re, im};
}

}  // namespace nij
