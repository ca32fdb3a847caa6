#pragma once

// Weyl symbols of qubit states.  A state with Bloch vector (alpha, beta,
// gamma) has the symbol
//
//   rho = 1/2 (1 + alpha*i*xi_r xi_q + beta*i*xi_p xi_q + gamma*i*xi_p xi_r),
//
// a fixed point of generalized conjugation.  The pair measure mu and the
// derived six-tuple of rectified pair probabilities live here too.

#include "gwwm/grassmann.hpp"
#include "gwwm/rational.hpp"

#include <array>
#include <string>
#include <vector>

namespace gwwm {

struct InvalidState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BlochVector {
  Rational alpha{0};
  Rational beta{0};
  Rational gamma{0};

  Rational norm_squared() const { return alpha * alpha + beta * beta + gamma * gamma; }
  friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

// Ordered pair of distinct generators naming the quadratic xi_j xi_k.
struct OnticLabel {
  Generator first;
  Generator second;
};

// Measurement axes, identified with the quadratic slots of the symbol:
// X <-> xi_r xi_q, Y <-> xi_p xi_q, Z <-> xi_p xi_r.
enum class PairAxis { X = 0, Y = 1, Z = 2 };

inline constexpr std::array<PairAxis, 3> kPairAxes = {PairAxis::X, PairAxis::Y, PairAxis::Z};

// The label read in the order that carries the positive side of the axis.
OnticLabel axis_label(PairAxis axis);

// Rectified pair probabilities (g_+x, g_+y, g_+z, g_-x, g_-y, g_-z): for each
// axis, g_+ = P(xi_j xi_k minus its reverse) and g_- the reverse.  Exactly one
// of g_+, g_- is nonzero per axis and both lie in [0, 1].
class SixTuple {
 public:
  SixTuple();  // all zeros (maximally mixed)
  explicit SixTuple(std::array<Rational, 6> g);

  const Rational& plus(PairAxis a) const { return g_[static_cast<int>(a)]; }
  const Rational& minus(PairAxis a) const { return g_[3 + static_cast<int>(a)]; }
  const std::array<Rational, 6>& values() const { return g_; }

  bool is_zero() const;
  friend bool operator==(const SixTuple&, const SixTuple&) = default;
  std::string str() const;

 private:
  std::array<Rational, 6> g_;
};

class WeylState {
 public:
  // Validates the symbol shape: scalar part 1/2, purely imaginary quadratic
  // parts, no other monomials, Bloch norm <= 1.
  explicit WeylState(const GrassmannElement& symbol);

  static WeylState from_bloch(const BlochVector& b);

  const GrassmannElement& symbol() const { return symbol_; }
  const BlochVector& bloch() const { return bloch_; }
  bool is_pure() const { return bloch_.norm_squared() == 1; }

  // mu(xi_j xi_k): antisymmetric under label reversal, in [-1/2, 1/2].
  Rational mu(const OnticLabel& label) const;

  // P(xi_j xi_k \ xi_k xi_j) = max{2 mu, 0}.
  Rational prob_setminus(const OnticLabel& label) const;

  SixTuple six_tuple() const;

  std::string str() const { return symbol_.str(); }
  friend bool operator==(const WeylState&, const WeylState&) = default;

 private:
  GrassmannElement symbol_;
  BlochVector bloch_;
};

// Signed axis of a stabilizer state, ordered (+x, +y, +z, -x, -y, -z) so the
// k-th state's six-tuple is the k-th unit vector.
enum class StabilizerAxis { PlusX = 0, PlusY, PlusZ, MinusX, MinusY, MinusZ };

const std::array<WeylState, 6>& stabilizer_states();
WeylState stabilizer_state(StabilizerAxis axis);
std::string stabilizer_name(StabilizerAxis axis);  // "+x", "-z", ...

using WeightedState = std::pair<Rational, WeylState>;
using WeightedTuple = std::pair<Rational, SixTuple>;

// Convex combination on symbols.  Weights must be nonnegative and sum to 1.
WeylState convex_combine(const std::vector<WeightedState>& entries);

// Convex combination on six-tuples: per axis, the signed net g_+ - g_- is
// mixed linearly and then rectified back into (g_+, g_-).
SixTuple convex_combine_tuples(const std::vector<WeightedTuple>& entries);

}  // namespace gwwm
