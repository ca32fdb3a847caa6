#pragma once

// Finite ontological models: atom sets, region expressions, exact
// probability distributions, Kolmogorov checks, and constraint systems whose
// equalities may involve min/max of region probabilities.  Solving such a
// system enumerates parametric families of distributions by splitting every
// min/max into its two linear branches.

#include "gwwm/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gwwm {

struct UnknownAtom : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InfeasibleSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a branch's feasible region is not a parameter box; the shipped
// systems never trigger it, and emitting a wrong family would be worse.
struct NonBoxRegion : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AtomSet {
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(labels.size()); }
  int index_of(const std::string& name) const;  // throws UnknownAtom
  bool contains(const std::string& name) const;
};

// Set-algebra expression over atoms; evaluates to a bitmask of atom indices.
class RegionExpr {
 public:
  RegionExpr() = default;  // empty region

  static RegionExpr empty();
  static RegionExpr atom(std::string name);
  static RegionExpr all();

  friend RegionExpr operator|(const RegionExpr& a, const RegionExpr& b);
  friend RegionExpr operator&(const RegionExpr& a, const RegionExpr& b);
  RegionExpr operator~() const;  // complement w.r.t. the full atom set
  friend RegionExpr difference(const RegionExpr& a, const RegionExpr& b);

  std::uint32_t evaluate(const AtomSet& atoms) const;
  std::string str() const;

 private:
  struct Node;
  explicit RegionExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Nonnegative weights indexed like the owning AtomSet.
struct AtomDistribution {
  std::vector<Rational> weights;

  const Rational& operator[](int i) const { return weights[i]; }
  friend bool operator==(const AtomDistribution&, const AtomDistribution&) = default;
};

AtomDistribution make_distribution(const AtomSet& atoms,
                                   const std::map<std::string, Rational>& weights);

Rational region_probability(const AtomSet& atoms, const AtomDistribution& d,
                            const RegionExpr& region);

// sum_i coeff_i * P(region_i) = rhs
struct LinearConstraint {
  std::vector<std::pair<Rational, RegionExpr>> terms;
  Rational rhs;
  std::string label;
};

enum class MinMaxKind { Max, Min };

// P(target) = max/min { P(lhs), P(rhs) }
struct MinMaxConstraint {
  RegionExpr target;
  RegionExpr lhs;
  RegionExpr rhs;
  MinMaxKind kind;
  std::string label;
};

struct ConstraintSystem {
  AtomSet atoms;
  // Partition classes of mutually exclusive atoms.  Atoms of different
  // blocks describe overlapping coarse-grainings of the same space, so
  // region arithmetic is only meaningful within one block.
  std::vector<std::vector<int>> blocks;
  // When false the "atoms" are non-exclusive states (pair form); only linear
  // constraints and bounds apply, and no region sampling is performed.
  bool atoms_disjoint = true;
  std::vector<RegionExpr> normalization;  // each has probability 1
  std::vector<LinearConstraint> equalities;
  std::vector<MinMaxConstraint> minmax;
  std::map<std::string, RegionExpr> named_regions;

  // All constraints, bounds included; fills `why` with the first violation.
  bool satisfies(const AtomDistribution& d, std::string* why = nullptr) const;
};

struct CheckItem {
  std::string axiom;
  bool pass;
  std::string detail;
};

struct KolmogorovReport {
  std::vector<CheckItem> items;
  bool ok() const;
};

// Non-negativity, unit normalization, additivity over disjoint atom regions,
// the sum rule, and monotonicity, on deterministically sampled regions.
KolmogorovReport check_kolmogorov(const ConstraintSystem& sys, const AtomDistribution& d);

// Affine function of a family's parameters.
struct AffineExpr {
  Rational constant;
  std::vector<Rational> coeffs;  // one per parameter

  Rational eval(const std::vector<Rational>& params) const;
  bool is_constant() const;
  std::string str(const std::vector<std::string>& param_names) const;
  friend bool operator==(const AffineExpr&, const AffineExpr&) = default;
};

// One parametric family of solutions: every atom weight is affine in the
// parameters, and every parameter choice inside the ranges satisfies the
// originating system.
struct SolutionFamily {
  std::vector<int> param_atoms;             // free atoms, ascending label order
  std::vector<std::string> param_names;     // alpha, beta, gamma, t3, ...
  std::vector<std::pair<Rational, Rational>> ranges;
  std::vector<AffineExpr> atom_exprs;       // one per atom

  int param_count() const { return static_cast<int>(param_atoms.size()); }
  AtomDistribution instantiate(const std::vector<Rational>& params) const;
  // Reads parameter values off the free atoms; true when d lies in the family.
  bool contains(const AtomDistribution& d) const;
  std::vector<std::vector<Rational>> corner_params() const;
  // Corner, midpoint, and endpoint samples per parameter (lo, mid, hi).
  std::vector<std::vector<Rational>> sample_params() const;
  std::string str(const AtomSet& atoms) const;
  friend bool operator==(const SolutionFamily&, const SolutionFamily&) = default;
};

// Splits every min/max constraint into its two branches, solves each linear
// branch exactly, and returns deduplicated families (families contained in
// another are dropped).  Throws InfeasibleSystem when nothing satisfies the
// system.
std::vector<SolutionFamily> enumerate_families(const ConstraintSystem& sys);

struct ConvexityCounterexample {
  AtomDistribution from_first;
  AtomDistribution from_second;
  AtomDistribution midpoint;
  std::string violated;
  int first_family;
  int second_family;
};

struct ConvexityVerdict {
  bool single_convex_set;
  std::optional<ConvexityCounterexample> counterexample;
};

// True when every midpoint of cross-family samples still satisfies the
// system, i.e. the solution set cannot be split into separate convex pieces.
ConvexityVerdict is_single_convex_set(const ConstraintSystem& sys,
                                      const std::vector<SolutionFamily>& families);

// Disjoint refinement (W, X, Y, Z) of one non-disjoint pair of regions
// A = W|Y, B = X|Y inside one block.
struct PairBlock {
  int w;
  int x;
  int y;
  int z;
};

// Convex combination in the non-disjoint description: per pair, the region
// probabilities a = P(A), b = P(B) mix linearly; the overlap and complement
// cells are then re-derived from min/max.  Entries must satisfy the system.
AtomDistribution nondisjoint_convex_combine(
    const ConstraintSystem& sys, const std::vector<PairBlock>& pairs,
    const std::vector<std::pair<Rational, AtomDistribution>>& entries);

// Textual form of a constraint system.  Statements, one per line:
//   atoms W X Y Z
//   nondisjoint
//   block W X Y Z
//   region A = W | Y
//   normalize A | B
//   eq P(A) + P(B) = 1
//   max P(A | B) = P(A), P(B)
//   min P(A & B) = P(A), P(B)
//   pair W X Y Z
// '#' starts a comment.  Returns the system plus any declared pair blocks.
struct ParsedSystem {
  ConstraintSystem system;
  std::vector<PairBlock> pairs;
};

ParsedSystem parse_system(const std::string& text);

}  // namespace gwwm
