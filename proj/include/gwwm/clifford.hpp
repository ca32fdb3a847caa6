#pragma once

// Single-qubit Clifford conjugations as signed permutations of the Grassmann
// generators, the depolarizing "blowtorch" channels built from them, and a
// floating-point cross-check that integrates the classical equations of
// motion of quadratic Hamiltonians and rounds the flow back to a map.

#include "gwwm/grassmann.hpp"
#include "gwwm/weyl.hpp"

#include <array>
#include <optional>
#include <string>

namespace gwwm {

struct NotSignedPermutation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConventionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Gate { I = 0, X, Y, Z, H };

inline constexpr std::array<Gate, 5> kGates = {Gate::I, Gate::X, Gate::Y, Gate::Z, Gate::H};

char gate_letter(Gate g);
std::optional<Gate> gate_from_letter(char c);

class CliffordMap {
 public:
  CliffordMap();  // identity
  explicit CliffordMap(const GeneratorMap& images);

  static CliffordMap identity() { return CliffordMap(); }

  const SignedGenerator& image(Generator g) const { return images_[static_cast<int>(g)]; }
  const GeneratorMap& images() const { return images_; }

  // Composition in application order: (a.then(b)) applies a first.
  CliffordMap then(const CliffordMap& next) const;
  CliffordMap inverse() const;

  friend bool operator==(const CliffordMap&, const CliffordMap&) = default;
  std::string str() const;  // e.g. "(xi_q, xi_p, -xi_r)"

 private:
  GeneratorMap images_;
};

// The conjugation maps of the five named gates.
CliffordMap named_map(Gate g);

inline CliffordMap compose(const CliffordMap& first, const CliffordMap& second) {
  return first.then(second);
}

WeylState apply_clifford(const CliffordMap& m, const WeylState& s);

// T1 = 1/4 (rho + X rho X + Y rho Y + Z rho Z); T2 = H T1(rho) H.
WeylState blowtorch_t1(const WeylState& s);
WeylState blowtorch_t2(const WeylState& s);

// Quadratic Hamiltonian whose flow should reproduce a named conjugation map.
// `element` holds the exact complex-rational part; `scale` isolates the one
// irrational prefactor (1/sqrt(2) for the Hadamard axis) in the float zone.
struct QuadraticHamiltonian {
  GrassmannElement element;
  double scale = 1.0;
  double duration = 0.0;
  std::optional<Gate> expected;
};

QuadraticHamiltonian named_hamiltonian(Gate g);

// Bracket normalization of the generator flow d(xi_k)/dt, fixed once by
// requiring that the X Hamiltonian reach its map at its tabulated duration.
inline constexpr double kBracketFactor = 2.0;

using FlowMatrix = std::array<std::array<double, 3>, 3>;

// exp(t * A) for the generator flow matrix A of h (columns act on
// (xi_p, xi_q, xi_r)).  Requires the quadratic coefficients of i*h.element
// to be real.
FlowMatrix integrate_generator_flow(const QuadraticHamiltonian& h, double t);

// Integrates h over h.duration, rounds entries within `tol` to {-1, 0, 1},
// and validates a signed permutation.  When h names an expected gate and the
// rounded map differs from named_map(expected), raises ConventionMismatch.
CliffordMap integrate_eom(const QuadraticHamiltonian& h, double tol = 1e-9);

}  // namespace gwwm
