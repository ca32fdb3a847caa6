#include "gwwm/clifford.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace gwwm {

namespace {

const ExactComplex kMinusI{Rational(0), Rational(-1)};

GrassmannElement quad(Generator a, Generator b) {
  return GrassmannElement::generator(a) * GrassmannElement::generator(b);
}

FlowMatrix zero_matrix() { return {{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}}; }

FlowMatrix identity_matrix() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

FlowMatrix mul(const FlowMatrix& a, const FlowMatrix& b) {
  FlowMatrix out = zero_matrix();
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

FlowMatrix add(const FlowMatrix& a, const FlowMatrix& b) {
  FlowMatrix out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = a[i][j] + b[i][j];
  return out;
}

FlowMatrix scale(const FlowMatrix& a, double s) {
  FlowMatrix out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = a[i][j] * s;
  return out;
}

double max_abs(const FlowMatrix& a) {
  double m = 0;
  for (auto& row : a)
    for (double v : row) m = std::max(m, std::abs(v));
  return m;
}

// Scaling-and-squaring Taylor exponential; ample for 3x3 rotation generators.
FlowMatrix expm(FlowMatrix a) {
  int squarings = 0;
  while (max_abs(a) > 0.5) {
    a = scale(a, 0.5);
    ++squarings;
  }
  FlowMatrix result = identity_matrix();
  FlowMatrix term = identity_matrix();
  for (int k = 1; k <= 24; ++k) {
    term = scale(mul(term, a), 1.0 / k);
    result = add(result, term);
  }
  for (int s = 0; s < squarings; ++s) result = mul(result, result);
  return result;
}

}  // namespace

char gate_letter(Gate g) {
  switch (g) {
    case Gate::I: return 'I';
    case Gate::X: return 'X';
    case Gate::Y: return 'Y';
    case Gate::Z: return 'Z';
    case Gate::H: return 'H';
  }
  return '?';
}

std::optional<Gate> gate_from_letter(char c) {
  switch (c) {
    case 'I': return Gate::I;
    case 'X': return Gate::X;
    case 'Y': return Gate::Y;
    case 'Z': return Gate::Z;
    case 'H': return Gate::H;
    default: return std::nullopt;
  }
}

CliffordMap::CliffordMap()
    : images_{SignedGenerator{Generator::P, 1}, SignedGenerator{Generator::Q, 1},
              SignedGenerator{Generator::R, 1}} {}

CliffordMap::CliffordMap(const GeneratorMap& images) : images_(images) {
  if (!is_signed_permutation(images_)) {
    throw NotSignedPermutation("generator images do not form a signed permutation");
  }
}

CliffordMap CliffordMap::then(const CliffordMap& next) const {
  GeneratorMap out;
  for (int g = 0; g < 3; ++g) {
    const SignedGenerator& mid = images_[g];
    const SignedGenerator& end = next.images_[static_cast<int>(mid.target)];
    out[g] = {end.target, mid.sign * end.sign};
  }
  return CliffordMap(out);
}

CliffordMap CliffordMap::inverse() const {
  GeneratorMap out;
  for (int g = 0; g < 3; ++g) {
    const SignedGenerator& image = images_[g];
    out[static_cast<int>(image.target)] = {static_cast<Generator>(g), image.sign};
  }
  return CliffordMap(out);
}

std::string CliffordMap::str() const {
  std::ostringstream s;
  s << "(";
  for (int g = 0; g < 3; ++g) {
    if (g) s << ", ";
    if (images_[g].sign < 0) s << "-";
    s << "xi_" << generator_letter(images_[g].target);
  }
  s << ")";
  return s.str();
}

CliffordMap named_map(Gate g) {
  using SG = SignedGenerator;
  switch (g) {
    case Gate::I:
      return CliffordMap::identity();
    case Gate::X:
      return CliffordMap({SG{Generator::P, 1}, SG{Generator::Q, -1}, SG{Generator::R, -1}});
    case Gate::Y:
      return CliffordMap({SG{Generator::P, -1}, SG{Generator::Q, -1}, SG{Generator::R, 1}});
    case Gate::Z:
      return CliffordMap({SG{Generator::P, -1}, SG{Generator::Q, 1}, SG{Generator::R, -1}});
    case Gate::H:
      return CliffordMap({SG{Generator::Q, 1}, SG{Generator::P, 1}, SG{Generator::R, -1}});
  }
  throw std::logic_error("bad gate");
}

WeylState apply_clifford(const CliffordMap& m, const WeylState& s) {
  return WeylState(substitute_generators(s.symbol(), m.images()));
}

WeylState blowtorch_t1(const WeylState& s) {
  const Rational quarter(1, 4);
  std::vector<WeightedState> mix;
  for (Gate g : {Gate::I, Gate::X, Gate::Y, Gate::Z}) {
    mix.emplace_back(quarter, apply_clifford(named_map(g), s));
  }
  return convex_combine(mix);
}

WeylState blowtorch_t2(const WeylState& s) {
  return apply_clifford(named_map(Gate::H), blowtorch_t1(s));
}

QuadraticHamiltonian named_hamiltonian(Gate g) {
  const double half_pi = std::numbers::pi / 2;
  switch (g) {
    case Gate::I:
      return {GrassmannElement::scalar(ExactComplex(1)), 1.0, half_pi, Gate::I};
    case Gate::X:
      return {quad(Generator::R, Generator::Q).scaled(kMinusI), 1.0, half_pi, Gate::X};
    case Gate::Y:
      return {quad(Generator::P, Generator::Q).scaled(kMinusI), 1.0, half_pi, Gate::Y};
    case Gate::Z:
      return {quad(Generator::P, Generator::R).scaled(kMinusI), 1.0, half_pi, Gate::Z};
    case Gate::H:
      return {(quad(Generator::R, Generator::Q) + quad(Generator::P, Generator::R))
                  .scaled(kMinusI),
              1.0 / std::numbers::sqrt2, std::numbers::pi, Gate::H};
  }
  throw std::logic_error("bad gate");
}

FlowMatrix integrate_generator_flow(const QuadraticHamiltonian& h, double t) {
  FlowMatrix a = zero_matrix();
  for (auto& [mono, c] : h.element.terms()) {
    if (mono.degree() == 0) continue;  // scalar part generates no flow
    if (mono.degree() != 2) {
      throw std::invalid_argument("Hamiltonian must be quadratic (plus a scalar)");
    }
    // i * (b*i) = -b must be the real bracket coefficient.
    if (!c.is_imaginary()) {
      throw std::invalid_argument("quadratic coefficients must be imaginary");
    }
    double v = -to_double(c.im);
    auto gens = mono.generators();
    int lo = static_cast<int>(gens[0]);
    int hi = static_cast<int>(gens[1]);
    // Right derivative of xi_lo xi_hi: +xi_lo toward xi_hi, -xi_hi toward xi_lo.
    a[hi][lo] += v;
    a[lo][hi] -= v;
  }
  return expm(scale(a, kBracketFactor * h.scale * t));
}

CliffordMap integrate_eom(const QuadraticHamiltonian& h, double tol) {
  FlowMatrix m = integrate_generator_flow(h, h.duration);
  GeneratorMap images;
  // Row g of the flow expands xi_g(t) over the initial generators.
  for (int row = 0; row < 3; ++row) {
    int hits = 0;
    for (int col = 0; col < 3; ++col) {
      double v = m[row][col];
      if (std::abs(v) <= tol) continue;
      if (std::abs(std::abs(v) - 1.0) <= tol) {
        images[row] = {static_cast<Generator>(col), v > 0 ? 1 : -1};
        ++hits;
      } else {
        std::ostringstream msg;
        msg << "flow entry " << v << " does not round to -1, 0, or 1";
        throw NotSignedPermutation(msg.str());
      }
    }
    if (hits != 1) {
      throw NotSignedPermutation("flow row does not single out one generator");
    }
  }
  CliffordMap map(images);
  if (h.expected) {
    CliffordMap want = named_map(*h.expected);
    if (!(map == want)) {
      std::ostringstream msg;
      msg << "flow of the " << gate_letter(*h.expected) << " Hamiltonian over t="
          << h.duration << " yields " << map.str() << ", expected " << want.str();
      throw ConventionMismatch(msg.str());
    }
  }
  return map;
}

}  // namespace gwwm
