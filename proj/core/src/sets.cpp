#include "drsdiag/sets.hpp"

#include <algorithm>
#include <cmath>

#include "drsdiag/errors.hpp"

namespace drsdiag {

namespace {

constexpr double kWitnessTol = 1e-9;
constexpr double kMemberTol = 1e-9;

Vec gather(const Vec& x, const std::vector<std::size_t>& coords) {
  Vec sub(coords.size());
  for (std::size_t k = 0; k < coords.size(); ++k) sub[k] = x[coords[k]];
  return sub;
}

void scatter(Vec& x, const std::vector<std::size_t>& coords, const Vec& sub) {
  for (std::size_t k = 0; k < coords.size(); ++k) x[coords[k]] = sub[k];
}

double psd_min_eigenvalue(const Vec& sub) {
  EigDecomp d = eigh(smat(sub));
  return d.eigenvalues.front();
}

}  // namespace

SetSpec::SetSpec(Node node, Vec witness, std::size_t dim)
    : node_(std::make_shared<const Node>(std::move(node))), witness_(std::move(witness)), dim_(dim) {
  if (witness_.size() != dim_) throw InputError("set witness dimension mismatch");
  double v = violation(*this, witness_);
  if (v > kWitnessTol * (1.0 + norm(witness_))) {
    throw InputError("set witness does not belong to the set");
  }
}

SetSpec SetSpec::affine(Mat a, Vec b, Vec witness) {
  if (a.rows() != b.size()) throw InputError("affine set: row/rhs mismatch");
  std::size_t dim = a.cols();
  return SetSpec(AffineSet{std::move(a), std::move(b)}, std::move(witness), dim);
}

SetSpec SetSpec::halfspace(Vec normal, double offset, Vec witness) {
  if (norm(normal) == 0.0) throw InputError("halfspace: zero normal");
  std::size_t dim = normal.size();
  return SetSpec(Halfspace{std::move(normal), offset}, std::move(witness), dim);
}

SetSpec SetSpec::box(std::vector<double> lo, std::vector<double> hi, Vec witness) {
  if (lo.size() != hi.size()) throw InputError("box: bound size mismatch");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw InputError("box: empty interval");
  }
  std::size_t dim = lo.size();
  return SetSpec(BoxSet{std::move(lo), std::move(hi)}, std::move(witness), dim);
}

SetSpec SetSpec::ball(Vec center, double radius, Vec witness) {
  if (radius < 0) throw InputError("ball: negative radius");
  std::size_t dim = center.size();
  return SetSpec(BallSet{std::move(center), radius}, std::move(witness), dim);
}

SetSpec SetSpec::soc(std::size_t dim, std::vector<std::size_t> coords, Vec witness) {
  if (coords.size() < 2) throw InputError("soc: needs at least two coordinates");
  for (auto c : coords) {
    if (c >= dim) throw InputError("soc: coordinate out of range");
  }
  return SetSpec(SocSet{std::move(coords)}, std::move(witness), dim);
}

SetSpec SetSpec::psd(std::size_t dim, std::vector<std::size_t> coords, std::size_t order,
                     Vec witness) {
  if (coords.size() != svec_dim(order)) throw InputError("psd: coords/order mismatch");
  for (auto c : coords) {
    if (c >= dim) throw InputError("psd: coordinate out of range");
  }
  return SetSpec(PsdSet{std::move(coords), order}, std::move(witness), dim);
}

SetSpec SetSpec::intersection(std::vector<SetSpec> members, Vec witness) {
  if (members.empty()) throw InputError("intersection: no members");
  std::size_t dim = members.front().dim();
  for (const auto& m : members) {
    if (m.dim() != dim) throw InputError("intersection: member dimension mismatch");
  }
  return SetSpec(IntersectionSet{std::move(members)}, std::move(witness), dim);
}

SetSpec SetSpec::whole_space(std::size_t dim) {
  std::vector<double> lo(dim, -kInf), hi(dim, kInf);
  return SetSpec(BoxSet{std::move(lo), std::move(hi)}, Vec::zeros(dim), dim);
}

std::vector<bool> SetSpec::constrained_coords() const {
  std::vector<bool> mask(dim_, false);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, AffineSet>) {
          for (std::size_t i = 0; i < s.a.rows(); ++i) {
            for (std::size_t j = 0; j < s.a.cols(); ++j) {
              if (s.a(i, j) != 0.0) mask[j] = true;
            }
          }
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          for (std::size_t j = 0; j < s.normal.size(); ++j) {
            if (s.normal[j] != 0.0) mask[j] = true;
          }
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          for (std::size_t j = 0; j < s.lo.size(); ++j) {
            if (std::isfinite(s.lo[j]) || std::isfinite(s.hi[j])) mask[j] = true;
          }
        } else if constexpr (std::is_same_v<T, BallSet>) {
          for (std::size_t j = 0; j < mask.size(); ++j) mask[j] = true;
        } else if constexpr (std::is_same_v<T, SocSet>) {
          for (auto c : s.coords) mask[c] = true;
        } else if constexpr (std::is_same_v<T, PsdSet>) {
          for (auto c : s.coords) mask[c] = true;
        } else if constexpr (std::is_same_v<T, IntersectionSet>) {
          for (const auto& m : s.members) {
            auto sub = m.constrained_coords();
            for (std::size_t j = 0; j < mask.size(); ++j) {
              if (sub[j]) mask[j] = true;
            }
          }
        }
      },
      node());
  return mask;
}

Vec project_soc_block(const Vec& wt) {
  const std::size_t m = wt.size();
  double t = wt[m - 1];
  double wn = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) wn += wt[i] * wt[i];
  wn = std::sqrt(wn);
  if (wn <= t) return wt;
  Vec out(m);
  if (wn <= -t) return out;  // polar cone: project to apex
  double scale = (wn + t) / (2.0 * wn);
  for (std::size_t i = 0; i + 1 < m; ++i) out[i] = scale * wt[i];
  out[m - 1] = scale * wn;
  return out;
}

namespace {

Vec project_affine(const AffineSet& s, const Vec& z) {
  const std::size_t m = s.a.rows();
  Vec r = s.a.apply(z) - s.b;
  Mat aat(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < s.a.cols(); ++k) v += s.a(i, k) * s.a(j, k);
      aat(i, j) = v;
    }
  }
  Vec mu = solve_spd(aat, r);
  return z - s.a.apply_t(mu);
}

Vec project_psd(const PsdSet& s, const Vec& z) {
  Vec sub = gather(z, s.coords);
  EigDecomp d = eigh(smat(sub));
  const std::size_t n = s.order;
  SymMat clipped(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        double lam = std::max(d.eigenvalues[k], 0.0);
        if (lam != 0.0) v += lam * d.eigenvectors(i, k) * d.eigenvectors(j, k);
      }
      clipped.set(i, j, v);
    }
  }
  Vec out = z;
  scatter(out, s.coords, svec(clipped));
  return out;
}

Vec project_dykstra(const IntersectionSet& s, const Vec& z, const ProjectOptions& opts) {
  const std::size_t nm = s.members.size();
  Vec x = z;
  std::vector<Vec> increments(nm, Vec::zeros(z.size()));
  for (std::size_t sweep = 0; sweep < opts.dykstra_max_sweeps; ++sweep) {
    Vec x_before = x;
    for (std::size_t i = 0; i < nm; ++i) {
      Vec y = project(s.members[i], x + increments[i], opts);
      increments[i] = x + increments[i] - y;
      x = y;
    }
    if (dist(x, x_before) <= opts.dykstra_stall_tol * (1.0 + norm(x))) break;
  }
  return x;
}

}  // namespace

Vec project(const SetSpec& s, const Vec& z, const ProjectOptions& opts) {
  if (z.size() != s.dim()) throw InputError("project: dimension mismatch");
  return std::visit(
      [&](const auto& node) -> Vec {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, AffineSet>) {
          return project_affine(node, z);
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          double g = dot(node.normal, z) - node.offset;
          if (g <= 0.0) return z;
          return z - (g / dot(node.normal, node.normal)) * node.normal;
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          Vec out = z;
          for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = std::min(std::max(out[i], node.lo[i]), node.hi[i]);
          }
          return out;
        } else if constexpr (std::is_same_v<T, BallSet>) {
          Vec d = z - node.center;
          double n = norm(d);
          if (n <= node.radius) return z;
          return node.center + (node.radius / n) * d;
        } else if constexpr (std::is_same_v<T, SocSet>) {
          Vec out = z;
          scatter(out, node.coords, project_soc_block(gather(z, node.coords)));
          return out;
        } else if constexpr (std::is_same_v<T, PsdSet>) {
          return project_psd(node, z);
        } else {
          if (!opts.allow_dykstra) {
            throw CapabilityError("intersection projection requires Dykstra (disabled)");
          }
          return project_dykstra(node, z, opts);
        }
      },
      s.node());
}

double violation(const SetSpec& s, const Vec& x) {
  if (x.size() != s.dim()) throw InputError("violation: dimension mismatch");
  return std::visit(
      [&](const auto& node) -> double {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, AffineSet>) {
          return norm_inf(node.a.apply(x) - node.b);
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          return std::max(0.0, dot(node.normal, x) - node.offset);
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          double v = 0.0;
          for (std::size_t i = 0; i < x.size(); ++i) {
            if (std::isfinite(node.lo[i])) v = std::max(v, node.lo[i] - x[i]);
            if (std::isfinite(node.hi[i])) v = std::max(v, x[i] - node.hi[i]);
          }
          return v;
        } else if constexpr (std::is_same_v<T, BallSet>) {
          return std::max(0.0, norm(x - node.center) - node.radius);
        } else if constexpr (std::is_same_v<T, SocSet>) {
          Vec wt = gather(x, node.coords);
          double t = wt[wt.size() - 1];
          double wn = 0.0;
          for (std::size_t i = 0; i + 1 < wt.size(); ++i) wn += wt[i] * wt[i];
          return std::max(0.0, std::sqrt(wn) - t);
        } else if constexpr (std::is_same_v<T, PsdSet>) {
          return std::max(0.0, -psd_min_eigenvalue(gather(x, node.coords)));
        } else {
          double v = 0.0;
          for (const auto& m : node.members) v = std::max(v, violation(m, x));
          return v;
        }
      },
      s.node());
}

SetSpec recession_cone(const SetSpec& s) {
  const std::size_t dim = s.dim();
  return std::visit(
      [&](const auto& node) -> SetSpec {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, AffineSet>) {
          return SetSpec::affine(node.a, Vec::zeros(node.b.size()), Vec::zeros(dim));
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          return SetSpec::halfspace(node.normal, 0.0, Vec::zeros(dim));
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          std::vector<double> lo(dim), hi(dim);
          for (std::size_t i = 0; i < dim; ++i) {
            lo[i] = std::isfinite(node.lo[i]) ? 0.0 : -kInf;
            hi[i] = std::isfinite(node.hi[i]) ? 0.0 : kInf;
          }
          return SetSpec::box(std::move(lo), std::move(hi), Vec::zeros(dim));
        } else if constexpr (std::is_same_v<T, BallSet>) {
          return SetSpec::box(std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0),
                              Vec::zeros(dim));
        } else if constexpr (std::is_same_v<T, SocSet>) {
          return SetSpec::soc(dim, node.coords, Vec::zeros(dim));
        } else if constexpr (std::is_same_v<T, PsdSet>) {
          return SetSpec::psd(dim, node.coords, node.order, Vec::zeros(dim));
        } else {
          std::vector<SetSpec> cones;
          cones.reserve(node.members.size());
          for (const auto& m : node.members) cones.push_back(recession_cone(m));
          return SetSpec::intersection(std::move(cones), Vec::zeros(dim));
        }
      },
      s.node());
}

namespace {

bool free_coords_zero(const SetSpec& s, const std::vector<std::size_t>& coords, const Vec& y,
                      double tol) {
  std::vector<bool> used(s.dim(), false);
  for (auto c : coords) used[c] = true;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!used[i] && std::abs(y[i]) > tol) return false;
  }
  return true;
}

}  // namespace

std::optional<double> support_value(const SetSpec& s, const Vec& y) {
  const double scale = 1.0 + norm(y);
  return std::visit(
      [&](const auto& node) -> std::optional<double> {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, AffineSet>) {
          const std::size_t m = node.a.rows();
          Mat aat(m, m);
          for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
              double v = 0.0;
              for (std::size_t k = 0; k < node.a.cols(); ++k) v += node.a(i, k) * node.a(j, k);
              aat(i, j) = v;
            }
          }
          Vec mu = solve_spd(aat, node.a.apply(y));
          if (dist(node.a.apply_t(mu), y) > kMemberTol * scale) return kInf;
          return dot(node.b, mu);
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          double t = dot(y, node.normal) / dot(node.normal, node.normal);
          if (t < -kMemberTol || dist(y, t * node.normal) > kMemberTol * scale) return kInf;
          return std::max(t, 0.0) * node.offset;
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          double v = 0.0;
          for (std::size_t i = 0; i < y.size(); ++i) {
            if (y[i] > 0) {
              if (!std::isfinite(node.hi[i])) return kInf;
              v += y[i] * node.hi[i];
            } else if (y[i] < 0) {
              if (!std::isfinite(node.lo[i])) return kInf;
              v += y[i] * node.lo[i];
            }
          }
          return v;
        } else if constexpr (std::is_same_v<T, BallSet>) {
          return dot(node.center, y) + node.radius * norm(y);
        } else if constexpr (std::is_same_v<T, SocSet>) {
          if (!free_coords_zero(s, node.coords, y, kMemberTol * scale)) return kInf;
          Vec wt = gather(y, node.coords);
          double t = wt[wt.size() - 1];
          double wn = 0.0;
          for (std::size_t i = 0; i + 1 < wt.size(); ++i) wn += wt[i] * wt[i];
          // polar cone membership: t <= -||w||
          if (t <= -std::sqrt(wn) + kMemberTol * scale) return 0.0;
          return kInf;
        } else if constexpr (std::is_same_v<T, PsdSet>) {
          if (!free_coords_zero(s, node.coords, y, kMemberTol * scale)) return kInf;
          EigDecomp d = eigh(smat(gather(y, node.coords)));
          if (d.eigenvalues.back() <= kMemberTol * scale) return 0.0;
          return kInf;
        } else {
          return std::nullopt;
        }
      },
      s.node());
}

std::optional<Vec> support_domain_ri_point(const SetSpec& s) {
  const std::size_t dim = s.dim();
  return std::visit(
      [&](const auto& node) -> std::optional<Vec> {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, AffineSet>) {
          Vec ones(node.a.rows());
          for (std::size_t i = 0; i < ones.size(); ++i) ones[i] = 1.0;
          return node.a.apply_t(ones);
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          return node.normal;
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          Vec p(dim);
          for (std::size_t i = 0; i < dim; ++i) {
            bool lo_f = std::isfinite(node.lo[i]), hi_f = std::isfinite(node.hi[i]);
            if (lo_f && hi_f) {
              p[i] = 0.0;  // bounded interval: dom sigma is all of R
            } else if (lo_f) {
              p[i] = -1.0;  // [lo, inf): dom sigma = (-inf, 0]
            } else if (hi_f) {
              p[i] = 1.0;
            } else {
              p[i] = 0.0;  // free coordinate: dom sigma = {0}
            }
          }
          return p;
        } else if constexpr (std::is_same_v<T, BallSet>) {
          return Vec::zeros(dim);
        } else if constexpr (std::is_same_v<T, SocSet>) {
          Vec p(dim);
          p[node.coords.back()] = -1.0;
          return p;
        } else if constexpr (std::is_same_v<T, PsdSet>) {
          SymMat neg_i(node.order);
          for (std::size_t i = 0; i < node.order; ++i) neg_i.set(i, i, -1.0);
          Vec p(dim);
          scatter(p, node.coords, svec(neg_i));
          return p;
        } else {
          return std::nullopt;
        }
      },
      s.node());
}

TriState support_domain_ri_contains(const SetSpec& s, const Vec& y) {
  const double tol = kMemberTol * (1.0 + norm(y));
  return std::visit(
      [&](const auto& node) -> TriState {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, AffineSet>) {
          const std::size_t m = node.a.rows();
          Mat aat(m, m);
          for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
              double v = 0.0;
              for (std::size_t k = 0; k < node.a.cols(); ++k) v += node.a(i, k) * node.a(j, k);
              aat(i, j) = v;
            }
          }
          Vec mu = solve_spd(aat, node.a.apply(y));
          return dist(node.a.apply_t(mu), y) <= tol ? TriState::Yes : TriState::No;
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          double t = dot(y, node.normal) / dot(node.normal, node.normal);
          if (dist(y, t * node.normal) > tol) return TriState::No;
          return t > tol ? TriState::Yes : TriState::No;
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          for (std::size_t i = 0; i < y.size(); ++i) {
            bool lo_f = std::isfinite(node.lo[i]), hi_f = std::isfinite(node.hi[i]);
            if (lo_f && hi_f) continue;
            if (lo_f && y[i] >= -tol) return TriState::No;
            if (hi_f && !lo_f && y[i] <= tol) return TriState::No;
            if (!lo_f && !hi_f && std::abs(y[i]) > tol) return TriState::No;
          }
          return TriState::Yes;
        } else if constexpr (std::is_same_v<T, BallSet>) {
          return TriState::Yes;
        } else if constexpr (std::is_same_v<T, SocSet>) {
          if (!free_coords_zero(s, node.coords, y, tol)) return TriState::No;
          Vec wt = gather(y, node.coords);
          double t = wt[wt.size() - 1];
          double wn = 0.0;
          for (std::size_t i = 0; i + 1 < wt.size(); ++i) wn += wt[i] * wt[i];
          return (t < -std::sqrt(wn) - tol) ? TriState::Yes : TriState::No;
        } else if constexpr (std::is_same_v<T, PsdSet>) {
          if (!free_coords_zero(s, node.coords, y, tol)) return TriState::No;
          EigDecomp d = eigh(smat(gather(y, node.coords)));
          return (d.eigenvalues.back() < -tol) ? TriState::Yes : TriState::No;
        } else {
          return TriState::Unknown;
        }
      },
      s.node());
}

}  // namespace drsdiag
