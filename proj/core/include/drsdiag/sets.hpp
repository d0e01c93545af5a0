#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "drsdiag/linalg.hpp"

namespace drsdiag {

struct SetSpec;

/// {x : A x = b}. Rows must be linearly independent.
struct AffineSet {
  Mat a;
  Vec b;
};

/// {x : a'x <= b}
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

/// Componentwise bounds; entries are extended reals (+-inf allowed).
struct BoxSet {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// {x : ||x - center|| <= radius}
struct BallSet {
  Vec center;
  double radius = 1.0;
};

/// {x : x[coords.back()] >= || x[coords[:-1]] ||}; other coordinates free.
struct SocSet {
  std::vector<std::size_t> coords;
};

/// {x : smat(x[coords]) is positive semidefinite}; coords in svec packing.
struct PsdSet {
  std::vector<std::size_t> coords;
  std::size_t order = 0;
};

struct IntersectionSet {
  std::vector<SetSpec> members;
};

/// Nonempty closed convex set with a stored witness point certifying
/// nonemptiness (checked at construction).
struct SetSpec {
  using Node = std::variant<AffineSet, Halfspace, BoxSet, BallSet, SocSet, PsdSet, IntersectionSet>;

  SetSpec(Node node, Vec witness, std::size_t dim);

  static SetSpec affine(Mat a, Vec b, Vec witness);
  static SetSpec halfspace(Vec normal, double offset, Vec witness);
  static SetSpec box(std::vector<double> lo, std::vector<double> hi, Vec witness);
  static SetSpec ball(Vec center, double radius, Vec witness);
  static SetSpec soc(std::size_t dim, std::vector<std::size_t> coords, Vec witness);
  static SetSpec psd(std::size_t dim, std::vector<std::size_t> coords, std::size_t order,
                     Vec witness);
  static SetSpec intersection(std::vector<SetSpec> members, Vec witness);
  static SetSpec whole_space(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const Node& node() const { return *node_; }
  const Vec& witness() const { return witness_; }

  /// Coordinates the membership test actually looks at.
  std::vector<bool> constrained_coords() const;

 private:
  std::shared_ptr<const Node> node_;
  Vec witness_;
  std::size_t dim_ = 0;
};

struct ProjectOptions {
  bool allow_dykstra = true;
  std::size_t dykstra_max_sweeps = 100000;
  double dykstra_stall_tol = 1e-12;
};

/// Euclidean projection onto the set. Firmly nonexpansive as a map.
/// Intersections are handled by Dykstra's algorithm unless disabled.
Vec project(const SetSpec& s, const Vec& z, const ProjectOptions& opts = {});

/// Max constraint violation of x (0 means member). Used for extended-real
/// objective evaluation with a feasibility slack.
double violation(const SetSpec& s, const Vec& x);

/// Recession cone as a SetSpec (always contains 0, witness 0).
SetSpec recession_cone(const SetSpec& s);

/// Support function sigma_S(y) = sup_{x in S} y'x, when a closed form exists.
/// Returns nullopt for intersections (no general formula).
std::optional<double> support_value(const SetSpec& s, const Vec& y);

/// A point in the relative interior of dom sigma_S (used by the ADMM
/// regularity check); nullopt when not available in closed form.
std::optional<Vec> support_domain_ri_point(const SetSpec& s);

/// Tri-state test whether y lies in ri(dom sigma_S).
enum class TriState { Yes, No, Unknown };
TriState support_domain_ri_contains(const SetSpec& s, const Vec& y);

/// Projection onto the second-order cone {(w, t) : t >= ||w||} given the
/// stacked vector with the cone height last.
Vec project_soc_block(const Vec& wt);

}  // namespace drsdiag
