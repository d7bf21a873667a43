#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace nij {

using Scalar = std::complex<double>;

inline bool is_finite(Scalar z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

struct TolerancePolicy {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  double neumann_norm_cap = 0.5;
  double neumann_tail_tol = 1e-12;

  // Throws InputError when a field is out of range.
  void validate() const;
};

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Elements from different contexts, wrong payload kind for a model.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Bad caller input: non-finite scalars, violated preconditions.
class InputError : public Error {
 public:
  using Error::Error;
};

class NotInvertibleError : public Error {
 public:
  using Error::Error;
};

// Winding sample grid could not resolve the phase increments.
class GridTooCoarseError : public Error {
 public:
  using Error::Error;
};

// A counterexample constructor does not apply to the given system.
class InapplicableError : public Error {
 public:
  using Error::Error;
};

// Deterministic random source. Trial i of a run with seed s uses
// Rng::substream(s, i), so trials are independent of evaluation order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng substream(std::uint64_t seed, std::uint64_t index);

  // Uniform on [0, 1) from the top 53 bits of the engine output.
  double uniform();
  // Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  bool coin() { return (engine_() >> 63) != 0; }
  // Uniform on the square [-1, 1] x [-1, 1].
  Scalar complex_square();

 private:
  std::mt19937_64 engine_;
};

}  // namespace nij
