#pragma once

// Exact arithmetic in the Grassmann algebra generated by three anticommuting
// generators xi_p, xi_q, xi_r (xi_j xi_k = -xi_k xi_j, xi_j^2 = 0).  Every
// element is a complex-rational combination of the eight canonical monomials,
// the products of generators in strictly increasing index order.

#include "gwwm/rational.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace gwwm {

enum class Generator : std::uint8_t { P = 0, Q = 1, R = 2 };

inline constexpr std::array<Generator, 3> kGenerators = {Generator::P, Generator::Q,
                                                         Generator::R};

char generator_letter(Generator g);

// Product of distinct generators in increasing order, stored as a 3-bit set
// (bit 0 = xi_p, bit 1 = xi_q, bit 2 = xi_r).  Mask 0 is the scalar unit.
class CanonicalMonomial {
 public:
  constexpr CanonicalMonomial() = default;
  explicit constexpr CanonicalMonomial(std::uint8_t mask) : mask_(mask & 0x7u) {}

  static CanonicalMonomial unit() { return CanonicalMonomial{0}; }
  static CanonicalMonomial single(Generator g) {
    return CanonicalMonomial(static_cast<std::uint8_t>(1u << static_cast<int>(g)));
  }

  std::uint8_t mask() const { return mask_; }
  int degree() const;
  bool contains(Generator g) const { return mask_ & (1u << static_cast<int>(g)); }
  std::vector<Generator> generators() const;  // ascending

  friend auto operator<=>(CanonicalMonomial, CanonicalMonomial) = default;

 private:
  std::uint8_t mask_ = 0;
};

// A canonical monomial together with the sign of the reordering permutation.
// sign == 0 marks a vanished word (repeated generator).
struct SignedMonomial {
  CanonicalMonomial monomial;
  int sign = 1;
};

// Sorts a generator word into canonical order, tracking the permutation sign.
SignedMonomial canonicalize(std::vector<Generator> word);

// Product of two canonical monomials; zero when they share a generator.
SignedMonomial monomial_product(CanonicalMonomial a, CanonicalMonomial b);

// Image of one generator under a signed generator permutation.
struct SignedGenerator {
  Generator target = Generator::P;
  int sign = 1;
};

// Images of (xi_p, xi_q, xi_r) in that order.  A valid map is a signed
// permutation: targets distinct, signs in {-1, +1}.
using GeneratorMap = std::array<SignedGenerator, 3>;

bool is_signed_permutation(const GeneratorMap& m);

class GrassmannElement {
 public:
  GrassmannElement() = default;  // zero

  static GrassmannElement zero() { return {}; }
  static GrassmannElement scalar(ExactComplex c);
  static GrassmannElement generator(Generator g);
  static GrassmannElement term(ExactComplex c, CanonicalMonomial m);

  const ExactComplex& coefficient(CanonicalMonomial m) const {
    return coeff_[m.mask()];
  }
  bool is_zero() const;

  // Nonzero terms in ascending canonical-monomial order.
  std::vector<std::pair<CanonicalMonomial, ExactComplex>> terms() const;

  GrassmannElement& operator+=(const GrassmannElement& o);
  GrassmannElement& operator-=(const GrassmannElement& o);
  friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) {
    return a += b;
  }
  friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) {
    return a -= b;
  }
  GrassmannElement operator-() const;

  friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b);

  GrassmannElement scaled(const ExactComplex& c) const;

  // Conjugates every coefficient and reverses each monomial's generator
  // order; a degree-d monomial picks up the sign (-1)^(d(d-1)/2).
  GrassmannElement conjugate() const;

  friend bool operator==(const GrassmannElement&, const GrassmannElement&) = default;

  // Display form, e.g. "1/2 + 1/2*i*xi_r xi_q".  The three quadratic
  // monomials are shown in the slot order xi_r xi_q, xi_p xi_q, xi_p xi_r
  // used throughout the state layer; parse() accepts any generator order.
  std::string str() const;
  static GrassmannElement parse(const std::string& text);

 private:
  std::array<ExactComplex, 8> coeff_{};
};

// Replaces each generator by its image under a signed permutation and
// recanonicalizes.  Acts as an algebra homomorphism.
GrassmannElement substitute_generators(const GrassmannElement& a, const GeneratorMap& m);

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gwwm
