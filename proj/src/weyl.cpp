#include "gwwm/weyl.hpp"

#include <sstream>
#include <utility>

namespace gwwm {

namespace {

const Rational kHalf = Rational(1, 2);

// Canonical storage masks of the three quadratic slots.
constexpr std::uint8_t kMaskQR = 6;  // xi_q xi_r; the x slot displays xi_r xi_q
constexpr std::uint8_t kMaskPQ = 3;  // xi_p xi_q, the y slot
constexpr std::uint8_t kMaskPR = 5;  // xi_p xi_r, the z slot

void check_weights(const std::vector<Rational>& w) {
  Rational total = 0;
  for (const Rational& v : w) {
    if (v < 0) throw std::invalid_argument("mixture weight is negative");
    total += v;
  }
  if (total != 1) throw std::invalid_argument("mixture weights do not sum to 1");
}

}  // namespace

OnticLabel axis_label(PairAxis axis) {
  switch (axis) {
    case PairAxis::X: return {Generator::R, Generator::Q};
    case PairAxis::Y: return {Generator::P, Generator::Q};
    case PairAxis::Z: return {Generator::P, Generator::R};
  }
  throw std::logic_error("bad axis");
}

SixTuple::SixTuple() : g_{} {}

SixTuple::SixTuple(std::array<Rational, 6> g) : g_(std::move(g)) {
  for (int i = 0; i < 3; ++i) {
    const Rational& plus = g_[i];
    const Rational& minus = g_[3 + i];
    if (plus < 0 || plus > 1 || minus < 0 || minus > 1) {
      throw InvalidState("six-tuple entry outside [0, 1]");
    }
    if (plus != 0 && minus != 0) {
      throw InvalidState("six-tuple has both sides of one axis nonzero");
    }
  }
}

bool SixTuple::is_zero() const {
  for (const Rational& v : g_) {
    if (v != 0) return false;
  }
  return true;
}

std::string SixTuple::str() const {
  std::ostringstream out;
  out << "(";
  for (int i = 0; i < 6; ++i) out << (i ? ", " : "") << g_[i].str();
  out << ")";
  return out.str();
}

WeylState::WeylState(const GrassmannElement& symbol) : symbol_(symbol) {
  if (symbol.coefficient(CanonicalMonomial::unit()) != ExactComplex(Rational(1, 2))) {
    throw InvalidState("scalar part of a state symbol must be 1/2");
  }
  for (std::uint8_t mask : {1, 2, 4, 7}) {
    if (!symbol.coefficient(CanonicalMonomial(mask)).is_zero()) {
      throw InvalidState("state symbol has odd-degree terms");
    }
  }
  for (std::uint8_t mask : {kMaskQR, kMaskPQ, kMaskPR}) {
    if (!symbol.coefficient(CanonicalMonomial(mask)).is_imaginary()) {
      throw InvalidState("quadratic part of a state symbol must be imaginary");
    }
  }
  // xi_r xi_q = -xi_q xi_r, so the x component flips sign out of storage.
  bloch_.alpha = -2 * symbol.coefficient(CanonicalMonomial(kMaskQR)).im;
  bloch_.beta = 2 * symbol.coefficient(CanonicalMonomial(kMaskPQ)).im;
  bloch_.gamma = 2 * symbol.coefficient(CanonicalMonomial(kMaskPR)).im;
  if (bloch_.norm_squared() > 1) {
    throw InvalidState("Bloch vector lies outside the unit ball");
  }
}

WeylState WeylState::from_bloch(const BlochVector& b) {
  GrassmannElement symbol = GrassmannElement::scalar(ExactComplex(kHalf));
  symbol += GrassmannElement::term(ExactComplex(Rational(0), -b.alpha * kHalf),
                                   CanonicalMonomial(kMaskQR));
  symbol += GrassmannElement::term(ExactComplex(Rational(0), b.beta * kHalf),
                                   CanonicalMonomial(kMaskPQ));
  symbol += GrassmannElement::term(ExactComplex(Rational(0), b.gamma * kHalf),
                                   CanonicalMonomial(kMaskPR));
  return WeylState(symbol);
}

Rational WeylState::mu(const OnticLabel& label) const {
  if (label.first == label.second) throw std::invalid_argument("pair generators must differ");
  SignedMonomial canon = canonicalize({label.first, label.second});
  Rational written = symbol_.coefficient(canon.monomial).im;
  if (canon.sign < 0) written = -written;
  return written;
}

Rational WeylState::prob_setminus(const OnticLabel& label) const {
  Rational two_mu = 2 * mu(label);
  return two_mu > 0 ? two_mu : Rational(0);
}

SixTuple WeylState::six_tuple() const {
  std::array<Rational, 6> g;
  for (PairAxis axis : kPairAxes) {
    OnticLabel fwd = axis_label(axis);
    OnticLabel rev{fwd.second, fwd.first};
    g[static_cast<int>(axis)] = prob_setminus(fwd);
    g[3 + static_cast<int>(axis)] = prob_setminus(rev);
  }
  return SixTuple(g);
}

const std::array<WeylState, 6>& stabilizer_states() {
  static const std::array<WeylState, 6> states = {
      WeylState::from_bloch({1, 0, 0}), WeylState::from_bloch({0, 1, 0}),
      WeylState::from_bloch({0, 0, 1}), WeylState::from_bloch({-1, 0, 0}),
      WeylState::from_bloch({0, -1, 0}), WeylState::from_bloch({0, 0, -1}),
  };
  return states;
}

WeylState stabilizer_state(StabilizerAxis axis) {
  return stabilizer_states()[static_cast<int>(axis)];
}

std::string stabilizer_name(StabilizerAxis axis) {
  static const char* names[] = {"+x", "+y", "+z", "-x", "-y", "-z"};
  return names[static_cast<int>(axis)];
}

WeylState convex_combine(const std::vector<WeightedState>& entries) {
  if (entries.empty()) throw std::invalid_argument("empty mixture");
  std::vector<Rational> w;
  w.reserve(entries.size());
  for (auto& e : entries) w.push_back(e.first);
  check_weights(w);
  GrassmannElement acc;
  for (auto& [weight, state] : entries) {
    acc += state.symbol().scaled(ExactComplex(weight));
  }
  return WeylState(acc);
}

SixTuple convex_combine_tuples(const std::vector<WeightedTuple>& entries) {
  if (entries.empty()) throw std::invalid_argument("empty mixture");
  std::vector<Rational> w;
  w.reserve(entries.size());
  for (auto& e : entries) w.push_back(e.first);
  check_weights(w);
  std::array<Rational, 6> g{};
  for (PairAxis axis : kPairAxes) {
    Rational net = 0;
    for (auto& [weight, tuple] : entries) {
      net += weight * (tuple.plus(axis) - tuple.minus(axis));
    }
    int i = static_cast<int>(axis);
    if (net > 0) {
      g[i] = net;
    } else {
      g[3 + i] = -net;
    }
  }
  return SixTuple(g);
}

}  // namespace gwwm
