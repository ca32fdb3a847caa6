#include "gwwm/grassmann.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <optional>
#include <sstream>
#include <utility>

namespace gwwm {

char generator_letter(Generator g) {
  switch (g) {
    case Generator::P: return 'p';
    case Generator::Q: return 'q';
    case Generator::R: return 'r';
  }
  return '?';
}

int CanonicalMonomial::degree() const { return std::popcount(static_cast<unsigned>(mask_)); }

std::vector<Generator> CanonicalMonomial::generators() const {
  std::vector<Generator> out;
  for (Generator g : kGenerators) {
    if (contains(g)) out.push_back(g);
  }
  return out;
}

SignedMonomial canonicalize(std::vector<Generator> word) {
  int sign = 1;
  // Insertion sort; each adjacent transposition of distinct generators flips
  // the sign, a repeated generator kills the word.
  for (std::size_t i = 1; i < word.size(); ++i) {
    std::size_t j = i;
    while (j > 0 && word[j] < word[j - 1]) {
      std::swap(word[j], word[j - 1]);
      sign = -sign;
      --j;
    }
  }
  std::uint8_t mask = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0 && word[i] == word[i - 1]) return {CanonicalMonomial{}, 0};
    mask |= static_cast<std::uint8_t>(1u << static_cast<int>(word[i]));
  }
  return {CanonicalMonomial(mask), sign};
}

SignedMonomial monomial_product(CanonicalMonomial a, CanonicalMonomial b) {
  if (a.mask() & b.mask()) return {CanonicalMonomial{}, 0};
  // Concatenating a|b and resorting moves every generator of b past the
  // generators of a that exceed it.
  int swaps = 0;
  for (int i = 0; i < 3; ++i) {
    if (b.mask() & (1u << i)) {
      swaps += std::popcount(static_cast<unsigned>(a.mask() >> (i + 1)));
    }
  }
  return {CanonicalMonomial(static_cast<std::uint8_t>(a.mask() | b.mask())),
          (swaps % 2) ? -1 : 1};
}

bool is_signed_permutation(const GeneratorMap& m) {
  std::array<bool, 3> seen{};
  for (const SignedGenerator& sg : m) {
    if (sg.sign != 1 && sg.sign != -1) return false;
    if (seen[static_cast<int>(sg.target)]) return false;
    seen[static_cast<int>(sg.target)] = true;
  }
  return true;
}

GrassmannElement GrassmannElement::scalar(ExactComplex c) {
  return term(std::move(c), CanonicalMonomial::unit());
}

GrassmannElement GrassmannElement::generator(Generator g) {
  return term(ExactComplex(1), CanonicalMonomial::single(g));
}

GrassmannElement GrassmannElement::term(ExactComplex c, CanonicalMonomial m) {
  GrassmannElement e;
  e.coeff_[m.mask()] = std::move(c);
  return e;
}

bool GrassmannElement::is_zero() const {
  return std::all_of(coeff_.begin(), coeff_.end(),
                     [](const ExactComplex& c) { return c.is_zero(); });
}

std::vector<std::pair<CanonicalMonomial, ExactComplex>> GrassmannElement::terms() const {
  std::vector<std::pair<CanonicalMonomial, ExactComplex>> out;
  for (std::uint8_t mask = 0; mask < 8; ++mask) {
    if (!coeff_[mask].is_zero()) out.emplace_back(CanonicalMonomial(mask), coeff_[mask]);
  }
  return out;
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& o) {
  for (int m = 0; m < 8; ++m) coeff_[m] += o.coeff_[m];
  return *this;
}

GrassmannElement& GrassmannElement::operator-=(const GrassmannElement& o) {
  for (int m = 0; m < 8; ++m) coeff_[m] -= o.coeff_[m];
  return *this;
}

GrassmannElement GrassmannElement::operator-() const {
  GrassmannElement out;
  for (int m = 0; m < 8; ++m) out.coeff_[m] = -coeff_[m];
  return out;
}

GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
  GrassmannElement out;
  for (std::uint8_t ma = 0; ma < 8; ++ma) {
    if (a.coeff_[ma].is_zero()) continue;
    for (std::uint8_t mb = 0; mb < 8; ++mb) {
      if (b.coeff_[mb].is_zero()) continue;
      SignedMonomial prod = monomial_product(CanonicalMonomial(ma), CanonicalMonomial(mb));
      if (prod.sign == 0) continue;
      ExactComplex c = a.coeff_[ma] * b.coeff_[mb];
      if (prod.sign < 0) c = -c;
      out.coeff_[prod.monomial.mask()] += c;
    }
  }
  return out;
}

GrassmannElement GrassmannElement::scaled(const ExactComplex& c) const {
  GrassmannElement out;
  for (int m = 0; m < 8; ++m) out.coeff_[m] = coeff_[m] * c;
  return out;
}

GrassmannElement GrassmannElement::conjugate() const {
  GrassmannElement out;
  for (std::uint8_t m = 0; m < 8; ++m) {
    int d = CanonicalMonomial(m).degree();
    ExactComplex c = coeff_[m].conj();
    // Reversing a degree-d monomial costs d(d-1)/2 transpositions.
    if ((d * (d - 1) / 2) % 2) c = -c;
    out.coeff_[m] = c;
  }
  return out;
}

GrassmannElement substitute_generators(const GrassmannElement& a, const GeneratorMap& m) {
  if (!is_signed_permutation(m)) {
    throw std::invalid_argument("generator map is not a signed permutation");
  }
  GrassmannElement out;
  for (auto& [mono, c] : a.terms()) {
    int sign = 1;
    std::vector<Generator> word;
    for (Generator g : mono.generators()) {
      const SignedGenerator& image = m[static_cast<int>(g)];
      sign *= image.sign;
      word.push_back(image.target);
    }
    SignedMonomial canon = canonicalize(std::move(word));
    ExactComplex coeff = c;
    if (sign * canon.sign < 0) coeff = -coeff;
    out += GrassmannElement::term(coeff, canon.monomial);
  }
  return out;
}

namespace {

// Presentation slots: scalar, singles, then the quadratics in the order the
// state layer uses (xi_r xi_q carries the opposite sign of its canonical
// form xi_q xi_r).
struct DisplaySlot {
  std::uint8_t mask;
  bool negate;
  const char* text;
};

constexpr DisplaySlot kDisplaySlots[] = {
    {0, false, ""},
    {1, false, "xi_p"},
    {2, false, "xi_q"},
    {4, false, "xi_r"},
    {6, true, "xi_r xi_q"},
    {3, false, "xi_p xi_q"},
    {5, false, "xi_p xi_r"},
    {7, false, "xi_p xi_q xi_r"},
};

std::string rational_str(const Rational& r) { return r.str(); }

// Renders one term; `sign_out` receives the sign pulled in front of it.
std::string term_str(const ExactComplex& c, const std::string& mono, int& sign_out) {
  sign_out = 1;
  std::string coeff;
  if (c.is_real()) {
    Rational v = c.re;
    if (v < 0) {
      sign_out = -1;
      v = -v;
    }
    if (v == 1 && !mono.empty()) {
      coeff.clear();
    } else {
      coeff = rational_str(v);
    }
  } else if (c.is_imaginary()) {
    Rational v = c.im;
    if (v < 0) {
      sign_out = -1;
      v = -v;
    }
    coeff = (v == 1) ? "i" : rational_str(v) + "*i";
  } else {
    Rational mag = c.im < 0 ? -c.im : c.im;
    coeff = "(" + rational_str(c.re) + (c.im < 0 ? " - " : " + ") +
            (mag == 1 ? "i" : rational_str(mag) + "*i") + ")";
  }
  if (mono.empty()) return coeff.empty() ? "1" : coeff;
  if (coeff.empty()) return mono;
  return coeff + "*" + mono;
}

}  // namespace

std::string to_string(const ExactComplex& c) {
  int sign = 1;
  std::string body = term_str(c, "", sign);
  return sign < 0 ? "-" + body : body;
}

std::string GrassmannElement::str() const {
  std::string out;
  for (const DisplaySlot& slot : kDisplaySlots) {
    ExactComplex c = coeff_[slot.mask];
    if (c.is_zero()) continue;
    if (slot.negate) c = -c;
    int sign = 1;
    std::string body = term_str(c, slot.text, sign);
    if (out.empty()) {
      out = (sign < 0 ? "-" : "") + body;
    } else {
      out += (sign < 0 ? " - " : " + ") + body;
    }
  }
  return out.empty() ? "0" : out;
}

namespace {

enum class Tok { Number, Imag, Gen, Plus, Minus, Star, Slash, LParen, RParen, End };

struct Token {
  Tok kind;
  BigInt number;
  Generator gen = Generator::P;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_));
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok_.pos = pos_;
    if (pos_ >= text_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      tok_.kind = Tok::Number;
      tok_.number = BigInt(text_.substr(start, pos_ - start));
      return;
    }
    switch (c) {
      case '+': tok_.kind = Tok::Plus; ++pos_; return;
      case '-': tok_.kind = Tok::Minus; ++pos_; return;
      case '*': tok_.kind = Tok::Star; ++pos_; return;
      case '/': tok_.kind = Tok::Slash; ++pos_; return;
      case '(': tok_.kind = Tok::LParen; ++pos_; return;
      case ')': tok_.kind = Tok::RParen; ++pos_; return;
      default: break;
    }
    if (text_.compare(pos_, 3, "xi_") == 0 && pos_ + 3 < text_.size()) {
      char g = text_[pos_ + 3];
      tok_.kind = Tok::Gen;
      switch (g) {
        case 'p': tok_.gen = Generator::P; break;
        case 'q': tok_.gen = Generator::Q; break;
        case 'r': tok_.gen = Generator::R; break;
        default: fail("unknown generator 'xi_" + std::string(1, g) + "'");
      }
      pos_ += 4;
      return;
    }
    if (c == 'i') {
      tok_.kind = Tok::Imag;
      ++pos_;
      return;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  GrassmannElement parse() {
    GrassmannElement e = element();
    if (lex_.peek().kind != Tok::End) {
      throw ParseError("trailing input at position " + std::to_string(lex_.peek().pos));
    }
    return e;
  }

 private:
  GrassmannElement element() {
    int sign = 1;
    if (lex_.peek().kind == Tok::Plus) {
      lex_.take();
    } else if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      sign = -1;
    }
    GrassmannElement acc = term();
    if (sign < 0) acc = -acc;
    while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      bool minus = lex_.take().kind == Tok::Minus;
      GrassmannElement t = term();
      if (minus) {
        acc -= t;
      } else {
        acc += t;
      }
    }
    return acc;
  }

  GrassmannElement term() {
    GrassmannElement acc = factor();
    for (;;) {
      Tok k = lex_.peek().kind;
      if (k == Tok::Star) {
        lex_.take();
        acc = acc * factor();
      } else if (k == Tok::Number || k == Tok::Imag || k == Tok::Gen || k == Tok::LParen) {
        acc = acc * factor();  // juxtaposition, e.g. "xi_r xi_q"
      } else {
        break;
      }
    }
    return acc;
  }

  GrassmannElement factor() {
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::Number: {
        Rational value(t.number);
        if (lex_.peek().kind == Tok::Slash) {
          lex_.take();
          Token den = lex_.take();
          if (den.kind != Tok::Number) {
            throw ParseError("expected denominator at position " + std::to_string(den.pos));
          }
          if (den.number == 0) throw ParseError("zero denominator");
          value = Rational(t.number, den.number);
        }
        return GrassmannElement::scalar(ExactComplex(value));
      }
      case Tok::Imag:
        return GrassmannElement::scalar(ExactComplex::i());
      case Tok::Gen:
        return GrassmannElement::generator(t.gen);
      case Tok::LParen: {
        GrassmannElement inner = element();
        Token close = lex_.take();
        if (close.kind != Tok::RParen) {
          throw ParseError("expected ')' at position " + std::to_string(close.pos));
        }
        return inner;
      }
      default:
        throw ParseError("expected a factor at position " + std::to_string(t.pos));
    }
  }

  Lexer lex_;
};

}  // namespace

GrassmannElement GrassmannElement::parse(const std::string& text) {
  return Parser(text).parse();
}

}  // namespace gwwm
