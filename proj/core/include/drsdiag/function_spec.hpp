#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drsdiag/linalg.hpp"
#include "drsdiag/sets.hpp"

namespace drsdiag {

enum class AtomKind { Abs, NegLog, InvSqrtNeg, ExpNegSqrtProd };

std::string atom_kind_name(AtomKind k);

/// One scalar atom applied through an inner affine reparametrization:
///   weight * phi(inner_scale * x[i] + inner_shift)
/// ExpNegSqrtProd acts on the coordinate pair (i, j) with identity inner map.
struct AtomTerm {
  AtomKind kind;
  std::size_t i = 0;
  std::size_t j = 0;  // second coordinate, ExpNegSqrtProd only
  double weight = 1.0;
  double inner_scale = 1.0;
  double inner_shift = 0.0;
};

/// Extended-real value of rec f along a direction. Positively homogeneous.
struct RecessionValue {
  double value = 0.0;  // +inf when the direction leaves the recession domain
  bool finite() const { return value < kInf; }
};

/// Symbolic closed proper convex function:
///   f(x) = linear'x + offset + delta_indicator(x) + sum of scalar atoms,
/// with atoms on coordinates disjoint from each other and from the
/// indicator's constrained coordinates (so the prox splits exactly).
class FunctionSpec {
 public:
  FunctionSpec() = default;  // empty zero-dimensional spec

  static FunctionSpec zero(std::size_t dim);
  static FunctionSpec linear(Vec c, double offset = 0.0);
  static FunctionSpec indicator(SetSpec s);

  FunctionSpec with_linear(Vec c, double offset = 0.0) const;
  FunctionSpec with_indicator(SetSpec s) const;
  FunctionSpec with_atom(AtomTerm atom) const;

  /// Validates the composite (dimension checks, coordinate disjointness,
  /// prox resolvability, witness feasibility). Throws on failure.
  void validate() const;

  std::size_t dim() const { return dim_; }
  const Vec& linear_part() const { return linear_; }
  double offset() const { return offset_; }
  const std::optional<SetSpec>& indicator_part() const { return indicator_; }
  const std::vector<AtomTerm>& atoms() const { return atoms_; }

  /// Extended-real evaluation; indicator violations within feas_tol are
  /// forgiven (the objective-sampling convention of the trace recorder).
  double eval(const Vec& x, double feas_tol = 0.0) const;

  /// Unique minimizer of f(x) + (1/(2 gamma)) ||x - z||^2.
  Vec prox(double gamma, const Vec& z) const;

  /// Exact recession-function value along d (per-atom closed forms).
  RecessionValue recession(const Vec& d) const;

  /// closure(dom f) as a projectable set.
  SetSpec domain() const;

  /// dist(x, closure(dom f)).
  double domain_distance(const Vec& x, const ProjectOptions& opts = {}) const;

  /// A point of dom f (atoms push the stored indicator witness inside their
  /// own domains when needed).
  Vec domain_witness() const;

  /// || Prox_{gamma f}(z) + gamma Prox_{f*/gamma}(z/gamma) - z ||, computed
  /// with a conjugate prox derived independently of the primal prox rule.
  /// nullopt when no conjugate rule is available for this composite.
  std::optional<double> moreau_residual(const Vec& z, double gamma) const;

  /// Description of dom f* as shift + per-structure pieces, for the ADMM
  /// regularity check. nullopt when the composite has no closed form.
  std::optional<Vec> conjugate_domain_ri_point() const;
  TriState conjugate_domain_ri_contains(const Vec& y) const;

  /// Applies the coordinatewise affine substitution x = alpha * x' + beta,
  /// returning the spec of x' -> f(alpha x' + beta). Throws CapabilityError
  /// when the indicator cannot absorb the map (e.g. reflected cones).
  FunctionSpec substitute_affine(double alpha, const Vec& beta) const;

 private:
  explicit FunctionSpec(std::size_t dim);

  std::size_t dim_ = 0;
  Vec linear_;
  double offset_ = 0.0;
  std::optional<SetSpec> indicator_;
  std::vector<AtomTerm> atoms_;
};

// Free-function spellings used throughout the solvers and tests.
inline Vec prox(const FunctionSpec& f, double gamma, const Vec& z) { return f.prox(gamma, z); }
inline RecessionValue recession(const FunctionSpec& f, const Vec& d) { return f.recession(d); }
inline double domain_distance(const FunctionSpec& f, const Vec& x) { return f.domain_distance(x); }
inline std::optional<double> moreau_check(const FunctionSpec& f, const Vec& z, double gamma) {
  return f.moreau_residual(z, gamma);
}

/// Scalar prox kernels (exposed for the ADMM subproblem solver and tests).
double soft_threshold(double t, double lam);
double prox_neg_log_1d(double t, double lam);       // argmin -lam log(u) + (u-t)^2/2
double prox_inv_sqrt_neg_1d(double t, double lam);  // argmin lam (-u)^(-1/2) + (u-t)^2/2

}  // namespace drsdiag
