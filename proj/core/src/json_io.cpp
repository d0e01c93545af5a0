#include "drsdiag/json_io.hpp"

#include <cmath>
#include <ostream>

#include "drsdiag/errors.hpp"

namespace drsdiag {

namespace {

json num_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

double num_from(const json& j) {
  if (j.is_null()) return std::nan("");
  if (j.is_string()) {
    if (j == "inf") return kInf;
    if (j == "-inf") return -kInf;
    throw InputError("unrecognized numeric string: " + j.get<std::string>());
  }
  return j.get<double>();
}

}  // namespace

json to_json(const Vec& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of numbers");
  std::vector<double> xs;
  xs.reserve(j.size());
  for (const auto& e : j) xs.push_back(e.get<double>());
  return Vec(std::move(xs));
}

json to_json(const SetSpec& s) {
  json j;
  j["witness"] = to_json(s.witness());
  j["dim"] = s.dim();
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, AffineSet>) {
          j["type"] = "affine";
          json rows = json::array();
          for (std::size_t i = 0; i < node.a.rows(); ++i) {
            json row = json::array();
            for (std::size_t k = 0; k < node.a.cols(); ++k) row.push_back(node.a(i, k));
            rows.push_back(row);
          }
          j["rows"] = rows;
          j["rhs"] = to_json(node.b);
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          j["type"] = "halfspace";
          j["normal"] = to_json(node.normal);
          j["offset"] = node.offset;
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          j["type"] = "box";
          json lo = json::array(), hi = json::array();
          for (std::size_t i = 0; i < node.lo.size(); ++i) {
            lo.push_back(num_or_null(node.lo[i]));
            hi.push_back(num_or_null(node.hi[i]));
          }
          j["lo"] = lo;
          j["hi"] = hi;
        } else if constexpr (std::is_same_v<T, BallSet>) {
          j["type"] = "ball";
          j["center"] = to_json(node.center);
          j["radius"] = node.radius;
        } else if constexpr (std::is_same_v<T, SocSet>) {
          j["type"] = "soc";
          j["coords"] = node.coords;
        } else if constexpr (std::is_same_v<T, PsdSet>) {
          j["type"] = "psd";
          j["coords"] = node.coords;
          j["order"] = node.order;
        } else {
          j["type"] = "intersection";
          json members = json::array();
          for (const auto& m : node.members) members.push_back(to_json(m));
          j["members"] = members;
        }
      },
      s.node());
  return j;
}

SetSpec set_from_json(const json& j) {
  const std::string type = j.at("type");
  Vec witness = vec_from_json(j.at("witness"));
  const std::size_t dim = j.at("dim");
  if (type == "affine") {
    const auto& rows = j.at("rows");
    Mat a(rows.size(), dim);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t k = 0; k < dim; ++k) a(i, k) = rows[i][k].get<double>();
    }
    return SetSpec::affine(std::move(a), vec_from_json(j.at("rhs")), std::move(witness));
  }
  if (type == "halfspace") {
    return SetSpec::halfspace(vec_from_json(j.at("normal")), j.at("offset").get<double>(),
                              std::move(witness));
  }
  if (type == "box") {
    std::vector<double> lo(dim), hi(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      lo[i] = num_from(j.at("lo")[i]);
      hi[i] = num_from(j.at("hi")[i]);
      if (std::isnan(lo[i])) lo[i] = -kInf;
      if (std::isnan(hi[i])) hi[i] = kInf;
    }
    return SetSpec::box(std::move(lo), std::move(hi), std::move(witness));
  }
  if (type == "ball") {
    return SetSpec::ball(vec_from_json(j.at("center")), j.at("radius").get<double>(),
                         std::move(witness));
  }
  if (type == "soc") {
    return SetSpec::soc(dim, j.at("coords").get<std::vector<std::size_t>>(), std::move(witness));
  }
  if (type == "psd") {
    return SetSpec::psd(dim, j.at("coords").get<std::vector<std::size_t>>(),
                        j.at("order").get<std::size_t>(), std::move(witness));
  }
  if (type == "intersection") {
    std::vector<SetSpec> members;
    for (const auto& m : j.at("members")) members.push_back(set_from_json(m));
    return SetSpec::intersection(std::move(members), std::move(witness));
  }
  throw InputError("unknown set type: " + type);
}

json to_json(const FunctionSpec& f) {
  json j;
  j["dim"] = f.dim();
  j["linear"] = to_json(f.linear_part());
  j["offset"] = f.offset();
  j["indicator"] = f.indicator_part() ? to_json(*f.indicator_part()) : json(nullptr);
  json atoms = json::array();
  for (const auto& a : f.atoms()) {
    json ja;
    ja["kind"] = atom_kind_name(a.kind);
    ja["i"] = a.i;
    if (a.kind == AtomKind::ExpNegSqrtProd) ja["j"] = a.j;
    ja["weight"] = a.weight;
    ja["inner_scale"] = a.inner_scale;
    ja["inner_shift"] = a.inner_shift;
    atoms.push_back(ja);
  }
  j["atoms"] = atoms;
  return j;
}

FunctionSpec function_from_json(const json& j) {
  const std::size_t dim = j.at("dim");
  FunctionSpec f = FunctionSpec::zero(dim);
  if (j.contains("linear") && !j.at("linear").is_null()) {
    f = f.with_linear(vec_from_json(j.at("linear")),
                      j.contains("offset") ? j.at("offset").get<double>() : 0.0);
  }
  if (j.contains("indicator") && !j.at("indicator").is_null()) {
    f = f.with_indicator(set_from_json(j.at("indicator")));
  }
  if (j.contains("atoms")) {
    for (const auto& ja : j.at("atoms")) {
      AtomTerm a;
      const std::string kind = ja.at("kind");
      if (kind == "abs") a.kind = AtomKind::Abs;
      else if (kind == "neg_log") a.kind = AtomKind::NegLog;
      else if (kind == "inv_sqrt_neg") a.kind = AtomKind::InvSqrtNeg;
      else if (kind == "exp_neg_sqrt_prod") a.kind = AtomKind::ExpNegSqrtProd;
      else throw InputError("unknown atom kind: " + kind);
      a.i = ja.at("i").get<std::size_t>();
      if (ja.contains("j")) a.j = ja.at("j").get<std::size_t>();
      if (ja.contains("weight")) a.weight = ja.at("weight").get<double>();
      if (ja.contains("inner_scale")) a.inner_scale = ja.at("inner_scale").get<double>();
      if (ja.contains("inner_shift")) a.inner_shift = ja.at("inner_shift").get<double>();
      f = f.with_atom(a);
    }
  }
  f.validate();
  return f;
}

json to_json(const DrsPair& p) {
  json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "drs";
  j["f"] = to_json(p.f);
  j["g"] = to_json(p.g);
  return j;
}

namespace {

json mat_to_json(const Mat& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = m.data();  // row-major
  return j;
}

Mat mat_from_json(const json& j) {
  return Mat(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
             j.at("data").get<std::vector<double>>());
}

}  // namespace

json to_json(const AdmmProblem& p) {
  json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "admm";
  j["f"] = to_json(p.f);
  j["g"] = to_json(p.g);
  j["A"] = mat_to_json(p.a);
  j["B"] = mat_to_json(p.b);
  j["c"] = to_json(p.c);
  return j;
}

ParsedProblem problem_from_json(const json& j) {
  if (!j.contains("schema") || j.at("schema").get<int>() != kSchemaVersion) {
    throw InputError("unsupported problem schema (expected schema: 1)");
  }
  const std::string kind = j.at("kind");
  if (kind == "drs") {
    return ParsedProblem{DrsPair{function_from_json(j.at("f")), function_from_json(j.at("g"))}};
  }
  if (kind == "admm") {
    AdmmProblem p{function_from_json(j.at("f")), function_from_json(j.at("g")),
                  mat_from_json(j.at("A")), mat_from_json(j.at("B")), vec_from_json(j.at("c"))};
    p.validate();
    return ParsedProblem{std::move(p)};
  }
  throw InputError("unknown problem kind: " + kind);
}

json to_json(const Certificate& c) {
  json j;
  j["kind"] = c.kind == Certificate::Kind::DualStrongInfeasibility
                  ? "dual_strong_infeasibility"
                  : "primal_strong_infeasibility";
  j["direction"] = to_json(c.direction);
  double dn = norm(c.direction);
  j["direction_unit"] = to_json(dn > 0 ? (1.0 / dn) * c.direction : c.direction);
  j["rec_f"] = num_or_null(c.rec_f);
  j["rec_g"] = num_or_null(c.rec_g);
  j["margin"] = c.margin;
  j["valid"] = c.valid;
  j["method"] = c.method;
  return j;
}

json to_json(const IdvEstimate& e) {
  json j;
  j["v_from_slope"] = to_json(e.v_from_slope);
  j["v_from_diff"] = to_json(e.v_from_diff);
  j["agreement"] = e.agreement;
  j["window"] = e.window;
  j["fixed_point"] = e.fixed_point;
  j["zero_verdict"] = e.zero_verdict();
  return j;
}

json to_json(const ObjectiveStats& s) {
  json j;
  j["running_mean_final"] = num_or_null(s.running_mean_final);
  j["mean_over_tail"] = num_or_null(s.mean_over_tail);
  j["min_over_tail"] = num_or_null(s.min_over_tail);
  j["min_over_run"] = num_or_null(s.min_over_run);
  j["slope_tail"] = num_or_null(s.slope_tail);
  j["window"] = s.window;
  j["finite_samples"] = s.finite_samples;
  j["all_infinite"] = s.all_infinite;
  return j;
}

json diagnosis_to_json(const Diagnosis& d) {
  json j;
  j["label"] = case_label_name(d.label);
  j["case_definition"] = case_definition(d.label);
  j["b_or_a_boundary"] = d.b_or_a_boundary;
  if (!d.caveat.empty()) j["caveat"] = d.caveat;
  j["idv"] = to_json(d.idv);
  j["v_analytic"] = d.v_analytic ? to_json(*d.v_analytic) : json(nullptr);
  j["certificate"] = d.certificate ? to_json(*d.certificate) : json(nullptr);
  j["objective"] = to_json(d.objective);
  j["displacement_tail_mean"] = d.displacement_tail_mean;
  j["displacement_final"] = d.displacement_final;
  j["shadow_step_tail_max"] = d.shadow_step_tail_max;
  j["shadow_iterates_convergent"] = d.shadow_iterates_convergent;
  j["observed_limit"] = d.observed_limit ? json(*d.observed_limit) : json(nullptr);
  j["evidence"] = d.evidence;
  return j;
}

namespace {

void csv_value(std::ostream& os, double v) {
  if (std::isnan(v)) {
    os << "nan";
  } else if (v == kInf) {
    os << "inf";
  } else if (v == -kInf) {
    os << "-inf";
  } else {
    os << v;
  }
}

}  // namespace

void write_trace_csv(std::ostream& os, const DrsTrace& trace, std::size_t stride) {
  if (stride < 1) throw InputError("stride must be >= 1");
  os << "k,dz_norm,obj,obj_runmean,obj_runmin,distdom_f,distdom_g\n";
  os.precision(17);
  double sum = 0.0, runmin = kInf;
  for (std::size_t k = 0; k < trace.iterations; ++k) {
    sum += trace.objective[k];
    runmin = std::min(runmin, trace.objective[k]);
    if (k % stride != 0) continue;
    os << k << ',' << trace.dz_norms[k] << ',';
    csv_value(os, trace.objective[k]);
    os << ',';
    csv_value(os, sum / static_cast<double>(k + 1));
    os << ',';
    csv_value(os, runmin);
    os << ',';
    csv_value(os, trace.dist_dom_f.empty() ? std::nan("") : trace.dist_dom_f[k]);
    os << ',';
    csv_value(os, trace.dist_dom_g.empty() ? std::nan("") : trace.dist_dom_g[k]);
    os << '\n';
  }
}

void write_trace_csv(std::ostream& os, const AdmmTrace& trace, std::size_t stride) {
  if (stride < 1) throw InputError("stride must be >= 1");
  os << "k,residual_norm,obj,obj_runmean,obj_runmin\n";
  os.precision(17);
  double sum = 0.0, runmin = kInf;
  for (std::size_t k = 0; k < trace.iterations; ++k) {
    sum += trace.objective[k];
    runmin = std::min(runmin, trace.objective[k]);
    if (k % stride != 0) continue;
    os << k << ',' << trace.residual_norms[k] << ',';
    csv_value(os, trace.objective[k]);
    os << ',';
    csv_value(os, sum / static_cast<double>(k + 1));
    os << ',';
    csv_value(os, runmin);
    os << '\n';
  }
}

}  // namespace drsdiag
