#include "gwwm/ontic.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>
#include <utility>

namespace gwwm {

namespace {

void check_convex_weights(const std::vector<Rational>& w) {
  Rational total = 0;
  for (const Rational& v : w) {
    if (v < 0) throw std::invalid_argument("mixture weight is negative");
    total += v;
  }
  if (total != 1) throw std::invalid_argument("mixture weights do not sum to 1");
}

}  // namespace

int AtomSet::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i) {
    if (labels[i] == name) return i;
  }
  throw UnknownAtom("unknown atom '" + name + "'");
}

bool AtomSet::contains(const std::string& name) const {
  return std::find(labels.begin(), labels.end(), name) != labels.end();
}

struct RegionExpr::Node {
  enum class Kind { Empty, All, Atom, Union, Intersect, Complement, Difference };
  Kind kind;
  std::string name;
  std::shared_ptr<const Node> left;
  std::shared_ptr<const Node> right;
};

RegionExpr RegionExpr::empty() {
  return RegionExpr(std::make_shared<Node>(Node{Node::Kind::Empty, {}, nullptr, nullptr}));
}

RegionExpr RegionExpr::atom(std::string name) {
  return RegionExpr(
      std::make_shared<Node>(Node{Node::Kind::Atom, std::move(name), nullptr, nullptr}));
}

RegionExpr RegionExpr::all() {
  return RegionExpr(std::make_shared<Node>(Node{Node::Kind::All, {}, nullptr, nullptr}));
}

RegionExpr operator|(const RegionExpr& a, const RegionExpr& b) {
  return RegionExpr(
      std::make_shared<RegionExpr::Node>(RegionExpr::Node{RegionExpr::Node::Kind::Union, {}, a.node_, b.node_}));
}

RegionExpr operator&(const RegionExpr& a, const RegionExpr& b) {
  return RegionExpr(std::make_shared<RegionExpr::Node>(
      RegionExpr::Node{RegionExpr::Node::Kind::Intersect, {}, a.node_, b.node_}));
}

RegionExpr RegionExpr::operator~() const {
  return RegionExpr(std::make_shared<Node>(Node{Node::Kind::Complement, {}, node_, nullptr}));
}

RegionExpr difference(const RegionExpr& a, const RegionExpr& b) {
  return RegionExpr(std::make_shared<RegionExpr::Node>(
      RegionExpr::Node{RegionExpr::Node::Kind::Difference, {}, a.node_, b.node_}));
}

std::uint32_t RegionExpr::evaluate(const AtomSet& atoms) const {
  if (!node_) return 0;
  const std::uint32_t full = atoms.size() >= 32 ? ~0u : (1u << atoms.size()) - 1u;
  switch (node_->kind) {
    case Node::Kind::Empty: return 0;
    case Node::Kind::All: return full;
    case Node::Kind::Atom: return 1u << atoms.index_of(node_->name);
    case Node::Kind::Union:
      return RegionExpr(node_->left).evaluate(atoms) | RegionExpr(node_->right).evaluate(atoms);
    case Node::Kind::Intersect:
      return RegionExpr(node_->left).evaluate(atoms) & RegionExpr(node_->right).evaluate(atoms);
    case Node::Kind::Complement:
      return full & ~RegionExpr(node_->left).evaluate(atoms);
    case Node::Kind::Difference:
      return RegionExpr(node_->left).evaluate(atoms) &
             ~RegionExpr(node_->right).evaluate(atoms);
  }
  return 0;
}

std::string RegionExpr::str() const {
  if (!node_) return "{}";
  switch (node_->kind) {
    case Node::Kind::Empty: return "{}";
    case Node::Kind::All: return "ALL";
    case Node::Kind::Atom: return node_->name;
    case Node::Kind::Union:
      return "(" + RegionExpr(node_->left).str() + " | " + RegionExpr(node_->right).str() + ")";
    case Node::Kind::Intersect:
      return "(" + RegionExpr(node_->left).str() + " & " + RegionExpr(node_->right).str() + ")";
    case Node::Kind::Complement: return "~" + RegionExpr(node_->left).str();
    case Node::Kind::Difference:
      return "(" + RegionExpr(node_->left).str() + " \\ " + RegionExpr(node_->right).str() + ")";
  }
  return "{}";
}

AtomDistribution make_distribution(const AtomSet& atoms,
                                   const std::map<std::string, Rational>& weights) {
  AtomDistribution d;
  d.weights.assign(atoms.size(), Rational(0));
  for (auto& [name, w] : weights) {
    if (w < 0) throw std::invalid_argument("atom weight for '" + name + "' is negative");
    d.weights[atoms.index_of(name)] = w;
  }
  return d;
}

Rational region_probability(const AtomSet& atoms, const AtomDistribution& d,
                            const RegionExpr& region) {
  if (static_cast<int>(d.weights.size()) != atoms.size()) {
    throw std::invalid_argument("distribution size does not match atom set");
  }
  std::uint32_t mask = region.evaluate(atoms);
  Rational total = 0;
  for (int i = 0; i < atoms.size(); ++i) {
    if (mask & (1u << i)) total += d.weights[i];
  }
  return total;
}

namespace {

Rational linear_value(const ConstraintSystem& sys, const AtomDistribution& d,
                      const LinearConstraint& c) {
  Rational v = 0;
  for (auto& [coef, region] : c.terms) {
    v += coef * region_probability(sys.atoms, d, region);
  }
  return v;
}

}  // namespace

bool ConstraintSystem::satisfies(const AtomDistribution& d, std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (static_cast<int>(d.weights.size()) != atoms.size()) {
    return fail("distribution size does not match atom set");
  }
  for (int i = 0; i < atoms.size(); ++i) {
    if (d.weights[i] < 0) return fail("negative weight on atom " + atoms.labels[i]);
  }
  for (const RegionExpr& r : normalization) {
    Rational p = region_probability(atoms, d, r);
    if (p != 1) {
      return fail("P(" + r.str() + ") = " + p.str() + ", expected 1");
    }
  }
  for (const LinearConstraint& c : equalities) {
    Rational v = linear_value(*this, d, c);
    if (v != c.rhs) {
      return fail(c.label + ": value " + v.str() + ", expected " + c.rhs.str());
    }
  }
  for (const MinMaxConstraint& c : minmax) {
    Rational t = region_probability(atoms, d, c.target);
    Rational a = region_probability(atoms, d, c.lhs);
    Rational b = region_probability(atoms, d, c.rhs);
    Rational want = c.kind == MinMaxKind::Max ? std::max(a, b) : std::min(a, b);
    if (t != want) {
      return fail(c.label + ": value " + t.str() + ", expected " + want.str());
    }
  }
  return true;
}

bool KolmogorovReport::ok() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.pass; });
}

KolmogorovReport check_kolmogorov(const ConstraintSystem& sys, const AtomDistribution& d) {
  KolmogorovReport report;
  auto push = [&](const std::string& axiom, bool pass, std::string detail) {
    report.items.push_back({axiom, pass, std::move(detail)});
  };

  bool nonneg = true;
  std::string nonneg_detail = "all atom weights nonnegative";
  for (int i = 0; i < sys.atoms.size() && i < static_cast<int>(d.weights.size()); ++i) {
    if (d.weights[i] < 0) {
      nonneg = false;
      nonneg_detail = "P(" + sys.atoms.labels[i] + ") = " + d.weights[i].str();
      break;
    }
  }
  push("non-negativity", nonneg, nonneg_detail);

  bool unit = true;
  std::string unit_detail = "every normalization region has probability 1";
  for (const RegionExpr& r : sys.normalization) {
    Rational p = region_probability(sys.atoms, d, r);
    if (p != 1) {
      unit = false;
      unit_detail = "P(" + r.str() + ") = " + p.str();
      break;
    }
  }
  push("unit measure", unit, unit_detail);

  if (!sys.atoms_disjoint) return report;

  // Blocks are partitions, so sampled regions stay inside one block.
  bool additivity = true, sum_rule = true, monotone = true;
  std::string add_detail = "P(a|b) = P(a) + P(b) on disjoint atom pairs";
  std::string sum_detail = "P(A|B) + P(A&B) = P(A) + P(B) on sampled pairs";
  std::string mono_detail = "P(B) <= P(A) for sampled B inside A";
  for (const std::vector<int>& block : sys.blocks) {
    for (std::size_t i = 0; i < block.size(); ++i) {
      RegionExpr ai = RegionExpr::atom(sys.atoms.labels[block[i]]);
      for (std::size_t j = i + 1; j < block.size(); ++j) {
        RegionExpr aj = RegionExpr::atom(sys.atoms.labels[block[j]]);
        Rational lhs = region_probability(sys.atoms, d, ai | aj);
        Rational rhs = d.weights[block[i]] + d.weights[block[j]];
        if (additivity && lhs != rhs) {
          additivity = false;
          add_detail = "P(" + (ai | aj).str() + ") = " + lhs.str() + " but the parts sum to " +
                       rhs.str();
        }
        // Overlapping pair (a_i | a_j) vs (a_j | a_k) exercises the sum rule.
        for (std::size_t k = j + 1; k < block.size(); ++k) {
          RegionExpr ak = RegionExpr::atom(sys.atoms.labels[block[k]]);
          RegionExpr u = ai | aj;
          RegionExpr v = aj | ak;
          Rational left = region_probability(sys.atoms, d, u | v) +
                          region_probability(sys.atoms, d, u & v);
          Rational right =
              region_probability(sys.atoms, d, u) + region_probability(sys.atoms, d, v);
          if (sum_rule && left != right) {
            sum_rule = false;
            sum_detail = "sum rule fails on " + u.str() + ", " + v.str();
          }
        }
        Rational whole = region_probability(sys.atoms, d, ai | aj);
        if (monotone && (d.weights[block[i]] > whole || d.weights[block[j]] > whole)) {
          monotone = false;
          mono_detail = "an atom outweighs a region containing it: " + (ai | aj).str();
        }
      }
    }
  }
  push("additivity", additivity, add_detail);
  push("sum rule", sum_rule, sum_detail);
  push("monotonicity", monotone, mono_detail);
  return report;
}

Rational AffineExpr::eval(const std::vector<Rational>& params) const {
  Rational v = constant;
  for (std::size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * params[i];
  return v;
}

bool AffineExpr::is_constant() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
}

std::string AffineExpr::str(const std::vector<std::string>& param_names) const {
  std::string out;
  if (constant != 0 || is_constant()) out = constant.str();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    Rational mag = coeffs[i] < 0 ? -coeffs[i] : coeffs[i];
    std::string piece = (mag == 1 ? "" : mag.str() + "*") + param_names[i];
    if (out.empty()) {
      out = (coeffs[i] < 0 ? "-" : "") + piece;
    } else {
      out += (coeffs[i] < 0 ? " - " : " + ") + piece;
    }
  }
  return out;
}

AtomDistribution SolutionFamily::instantiate(const std::vector<Rational>& params) const {
  if (static_cast<int>(params.size()) != param_count()) {
    throw std::invalid_argument("wrong number of parameters");
  }
  for (int i = 0; i < param_count(); ++i) {
    if (params[i] < ranges[i].first || params[i] > ranges[i].second) {
      throw std::invalid_argument("parameter " + param_names[i] + " outside its range");
    }
  }
  AtomDistribution d;
  d.weights.reserve(atom_exprs.size());
  for (const AffineExpr& e : atom_exprs) d.weights.push_back(e.eval(params));
  return d;
}

bool SolutionFamily::contains(const AtomDistribution& d) const {
  if (d.weights.size() != atom_exprs.size()) return false;
  std::vector<Rational> params;
  params.reserve(param_atoms.size());
  for (std::size_t i = 0; i < param_atoms.size(); ++i) {
    const Rational& v = d.weights[param_atoms[i]];
    if (v < ranges[i].first || v > ranges[i].second) return false;
    params.push_back(v);
  }
  for (std::size_t a = 0; a < atom_exprs.size(); ++a) {
    if (atom_exprs[a].eval(params) != d.weights[a]) return false;
  }
  return true;
}

namespace {

std::vector<std::vector<Rational>> cartesian_samples(
    const std::vector<std::vector<Rational>>& per_param) {
  std::vector<std::vector<Rational>> out{{}};
  for (const std::vector<Rational>& choices : per_param) {
    std::vector<std::vector<Rational>> next;
    for (const std::vector<Rational>& prefix : out) {
      for (const Rational& c : choices) {
        std::vector<Rational> row = prefix;
        row.push_back(c);
        next.push_back(std::move(row));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<std::vector<Rational>> SolutionFamily::corner_params() const {
  std::vector<std::vector<Rational>> per;
  for (auto& [lo, hi] : ranges) {
    std::vector<Rational> choices{lo};
    if (hi != lo) choices.push_back(hi);
    per.push_back(std::move(choices));
  }
  return cartesian_samples(per);
}

std::vector<std::vector<Rational>> SolutionFamily::sample_params() const {
  std::vector<std::vector<Rational>> per;
  for (auto& [lo, hi] : ranges) {
    std::vector<Rational> choices{lo};
    if (hi != lo) {
      choices.push_back((lo + hi) / 2);
      choices.push_back(hi);
    }
    per.push_back(std::move(choices));
  }
  return cartesian_samples(per);
}

std::string SolutionFamily::str(const AtomSet& atoms) const {
  std::ostringstream out;
  out << "(";
  for (std::size_t a = 0; a < atom_exprs.size(); ++a) {
    if (a) out << ", ";
    out << atoms.labels[a] << " = " << atom_exprs[a].str(param_names);
  }
  out << ")";
  for (int i = 0; i < param_count(); ++i) {
    out << (i ? ", " : " with ") << ranges[i].first.str() << " <= " << param_names[i]
        << " <= " << ranges[i].second.str();
  }
  return out.str();
}

namespace {

using Row = std::vector<Rational>;  // n coefficients then the constant term

Row region_row(const ConstraintSystem& sys, const RegionExpr& region) {
  Row row(sys.atoms.size() + 1, Rational(0));
  std::uint32_t mask = region.evaluate(sys.atoms);
  for (int i = 0; i < sys.atoms.size(); ++i) {
    if (mask & (1u << i)) row[i] = 1;
  }
  return row;
}

void add_scaled(Row& dst, const Row& src, const Rational& s) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += s * src[i];
}

// Reduced row echelon form, pivoting right-to-left over the atom columns so
// the free variables land on the earliest atoms.  Returns false when a row
// reduces to 0 = nonzero.
bool rref_reversed(std::vector<Row>& rows, int n, std::vector<int>& pivot_col_of_row) {
  int rank = 0;
  pivot_col_of_row.clear();
  for (int col = n - 1; col >= 0; --col) {
    int found = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][col] != 0) {
        found = r;
        break;
      }
    }
    if (found < 0) continue;
    std::swap(rows[rank], rows[found]);
    Rational inv = rows[rank][col];
    for (Rational& v : rows[rank]) v /= inv;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r != rank && rows[r][col] != 0) {
        Rational factor = -rows[r][col];
        add_scaled(rows[r], rows[rank], factor);
      }
    }
    pivot_col_of_row.push_back(col);
    ++rank;
  }
  for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
    bool all_zero = true;
    for (int c = 0; c < n; ++c) {
      if (rows[r][c] != 0) {
        all_zero = false;
        break;
      }
    }
    if (all_zero && rows[r][n] != 0) return false;
  }
  rows.resize(rank);
  return true;
}

std::string param_name(int i) {
  static const char* greek[] = {"alpha", "beta", "gamma"};
  if (i < 3) return greek[i];
  return "t" + std::to_string(i);
}

struct Bounds {
  std::optional<Rational> lo;
  std::optional<Rational> hi;

  bool tighten_lo(const Rational& v) {
    if (!lo || v > *lo) lo = v;
    return !hi || *lo <= *hi;
  }
  bool tighten_hi(const Rational& v) {
    if (!hi || v < *hi) hi = v;
    return !lo || *lo <= *hi;
  }
};

}  // namespace

std::vector<SolutionFamily> enumerate_families(const ConstraintSystem& sys) {
  const int n = sys.atoms.size();
  std::vector<Row> base;
  for (const RegionExpr& r : sys.normalization) {
    Row row = region_row(sys, r);
    row[n] = 1;
    base.push_back(std::move(row));
  }
  for (const LinearConstraint& c : sys.equalities) {
    Row row(n + 1, Rational(0));
    for (auto& [coef, region] : c.terms) {
      add_scaled(row, region_row(sys, region), coef);
    }
    row[n] = c.rhs;
    base.push_back(std::move(row));
  }

  const int k = static_cast<int>(sys.minmax.size());
  std::vector<SolutionFamily> families;

  for (std::uint32_t branch = 0; branch < (1u << k); ++branch) {
    std::vector<Row> rows = base;
    std::vector<Row> inequalities;  // row . w >= 0, constant column unused
    bool使用 = true;
    (void)使用;
    for (int i = 0; i < k; ++i) {
      const MinMaxConstraint& mm = sys.minmax[i];
      bool take_rhs = branch & (1u << i);
      const RegionExpr& chosen = take_rhs ? mm.rhs : mm.lhs;
      const RegionExpr& other = take_rhs ? mm.lhs : mm.rhs;
      Row eq = region_row(sys, mm.target);
      add_scaled(eq, region_row(sys, chosen), Rational(-1));
      rows.push_back(std::move(eq));
      Row ineq = region_row(sys, chosen);
      add_scaled(ineq, region_row(sys, other), Rational(-1));
      if (mm.kind == MinMaxKind::Min) {
        for (Rational& v : ineq) v = -v;
      }
      inequalities.push_back(std::move(ineq));
    }

    std::vector<int> pivot_cols;
    if (!rref_reversed(rows, n, pivot_cols)) continue;  // inconsistent branch

    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_cols) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < n; ++c) {
      if (!is_pivot[c]) free_cols.push_back(c);
    }
    const int p = static_cast<int>(free_cols.size());
    std::vector<int> free_index(n, -1);
    for (int i = 0; i < p; ++i) free_index[free_cols[i]] = i;

    std::vector<AffineExpr> exprs(n);
    for (int c = 0; c < n; ++c) {
      exprs[c].constant = 0;
      exprs[c].coeffs.assign(p, Rational(0));
    }
    for (int i = 0; i < p; ++i) exprs[free_cols[i]].coeffs[i] = 1;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      int c = pivot_cols[r];
      exprs[c].constant = rows[r][n];
      for (int f = 0; f < p; ++f) {
        exprs[c].coeffs[f] = -rows[r][free_cols[f]];
      }
    }

    // Non-negativity of every atom plus the branch inequalities, expressed
    // over the parameters.
    std::vector<AffineExpr> conditions;
    for (int c = 0; c < n; ++c) conditions.push_back(exprs[c]);
    for (const Row& ineq : inequalities) {
      AffineExpr cond{Rational(0), std::vector<Rational>(p, Rational(0))};
      for (int c = 0; c < n; ++c) {
        if (ineq[c] == 0) continue;
        cond.constant += ineq[c] * exprs[c].constant;
        for (int f = 0; f < p; ++f) cond.coeffs[f] += ineq[c] * exprs[c].coeffs[f];
      }
      conditions.push_back(std::move(cond));
    }

    std::vector<Bounds> bounds(p);
    std::vector<AffineExpr> multivar;
    bool feasible = true;
    for (const AffineExpr& cond : conditions) {
      int nonzero = 0, var = -1;
      for (int f = 0; f < p; ++f) {
        if (cond.coeffs[f] != 0) {
          ++nonzero;
          var = f;
        }
      }
      if (nonzero == 0) {
        if (cond.constant < 0) {
          feasible = false;
          break;
        }
      } else if (nonzero == 1) {
        Rational bound = -cond.constant / cond.coeffs[var];
        bool ok = cond.coeffs[var] > 0 ? bounds[var].tighten_lo(bound)
                                       : bounds[var].tighten_hi(bound);
        if (!ok) {
          feasible = false;
          break;
        }
      } else {
        multivar.push_back(cond);
      }
    }
    if (!feasible) continue;

    SolutionFamily fam;
    fam.param_atoms = free_cols;
    for (int i = 0; i < p; ++i) fam.param_names.push_back(param_name(i));
    for (int i = 0; i < p; ++i) {
      if (!bounds[i].lo || !bounds[i].hi) {
        throw NonBoxRegion("parameter " + param_name(i) + " is unbounded");
      }
      fam.ranges.emplace_back(*bounds[i].lo, *bounds[i].hi);
    }
    fam.atom_exprs = std::move(exprs);

    bool corners_ok = true;
    if (!multivar.empty()) {
      for (const std::vector<Rational>& corner : fam.corner_params()) {
        for (const AffineExpr& cond : multivar) {
          if (cond.eval(corner) < 0) {
            throw NonBoxRegion("branch feasible region is not a parameter box");
          }
        }
      }
    }
    if (corners_ok) families.push_back(std::move(fam));
  }

  if (families.empty()) {
    throw InfeasibleSystem("no distribution satisfies the system");
  }

  // Exact duplicates first, then families whose box sits inside another.
  std::sort(families.begin(), families.end(),
            [](const SolutionFamily& a, const SolutionFamily& b) {
              if (a.param_atoms != b.param_atoms) return a.param_atoms < b.param_atoms;
              return false;
            });
  families.erase(std::unique(families.begin(), families.end()), families.end());

  std::vector<bool> drop(families.size(), false);
  for (std::size_t i = 0; i < families.size(); ++i) {
    for (std::size_t j = 0; j < families.size() && !drop[i]; ++j) {
      if (i == j || drop[j]) continue;
      if (families[i].param_count() > families[j].param_count()) continue;
      if (families[i] == families[j]) continue;
      bool inside = true;
      for (const std::vector<Rational>& corner : families[i].corner_params()) {
        if (!families[j].contains(families[i].instantiate(corner))) {
          inside = false;
          break;
        }
      }
      if (inside) drop[i] = true;
    }
  }
  std::vector<SolutionFamily> kept;
  for (std::size_t i = 0; i < families.size(); ++i) {
    if (!drop[i]) kept.push_back(std::move(families[i]));
  }
  return kept;
}

ConvexityVerdict is_single_convex_set(const ConstraintSystem& sys,
                                      const std::vector<SolutionFamily>& families) {
  for (std::size_t i = 0; i < families.size(); ++i) {
    auto samples_i = families[i].sample_params();
    for (std::size_t j = i + 1; j < families.size(); ++j) {
      auto samples_j = families[j].sample_params();
      for (const auto& pi : samples_i) {
        AtomDistribution di = families[i].instantiate(pi);
        for (const auto& pj : samples_j) {
          AtomDistribution dj = families[j].instantiate(pj);
          AtomDistribution mid;
          mid.weights.reserve(di.weights.size());
          for (std::size_t a = 0; a < di.weights.size(); ++a) {
            mid.weights.push_back((di.weights[a] + dj.weights[a]) / 2);
          }
          std::string why;
          if (!sys.satisfies(mid, &why)) {
            return {false,
                    ConvexityCounterexample{di, dj, mid, why, static_cast<int>(i),
                                            static_cast<int>(j)}};
          }
        }
      }
    }
  }
  return {true, std::nullopt};
}

AtomDistribution nondisjoint_convex_combine(
    const ConstraintSystem& sys, const std::vector<PairBlock>& pairs,
    const std::vector<std::pair<Rational, AtomDistribution>>& entries) {
  if (entries.empty()) throw std::invalid_argument("empty mixture");
  std::vector<Rational> w;
  for (auto& e : entries) w.push_back(e.first);
  check_convex_weights(w);
  for (auto& [weight, d] : entries) {
    std::string why;
    if (!sys.satisfies(d, &why)) {
      throw std::invalid_argument("mixture entry violates the system: " + why);
    }
  }

  AtomDistribution out;
  out.weights.assign(sys.atoms.size(), Rational(0));
  std::vector<bool> covered(sys.atoms.size(), false);
  for (const PairBlock& pb : pairs) {
    Rational a = 0, b = 0, total = 0;
    for (auto& [weight, d] : entries) {
      a += weight * (d.weights[pb.w] + d.weights[pb.y]);
      b += weight * (d.weights[pb.x] + d.weights[pb.y]);
      total += weight *
               (d.weights[pb.w] + d.weights[pb.x] + d.weights[pb.y] + d.weights[pb.z]);
    }
    Rational overlap = std::min(a, b);
    out.weights[pb.w] = a - overlap;
    out.weights[pb.x] = b - overlap;
    out.weights[pb.y] = overlap;
    out.weights[pb.z] = total - std::max(a, b);
    covered[pb.w] = covered[pb.x] = covered[pb.y] = covered[pb.z] = true;
  }
  for (int i = 0; i < sys.atoms.size(); ++i) {
    if (covered[i]) continue;
    for (auto& [weight, d] : entries) out.weights[i] += weight * d.weights[i];
  }
  return out;
}

namespace {

struct DslError : ParseErrorBase {};

}  // namespace

}  // namespace gwwm
