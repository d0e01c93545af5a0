#include "drsdiag/zoo.hpp"

#include <cmath>

#include "drsdiag/errors.hpp"

namespace drsdiag {

namespace {

Vec sym_from_entries(std::size_t order,
                     std::initializer_list<std::tuple<std::size_t, std::size_t, double>> entries) {
  SymMat m(order);
  for (const auto& [i, j, v] : entries) m.set(i, j, v);
  return svec(m);
}

Mat rows_to_mat(const std::vector<Vec>& rows) {
  Mat m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.front().size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

FunctionSpec psd_indicator(std::size_t order) {
  const std::size_t n = svec_dim(order);
  SymMat eye(order);
  for (std::size_t i = 0; i < order; ++i) eye.set(i, i, 1.0);
  std::vector<std::size_t> coords(n);
  for (std::size_t i = 0; i < n; ++i) coords[i] = i;
  return FunctionSpec::indicator(SetSpec::psd(n, coords, order, svec(eye)));
}

ZooEntry make_case_a() {
  ZooEntry e;
  e.id = "case-a";
  e.source = "scalar objective x - log x";
  FunctionSpec f = FunctionSpec::linear({1.0});
  FunctionSpec g = FunctionSpec::zero(1).with_atom({AtomKind::NegLog, 0});
  e.problem = DrsPair{f, g};
  e.truth.p_star = 1.0;
  e.truth.d_star = 1.0;
  e.truth.p_minus = 1.0;
  e.truth.label = CaseLabel::A;
  e.truth.primal = FeasStatus::Feasible;
  e.truth.dual = FeasStatus::Feasible;
  e.truth.primal_solution = true;
  e.truth.dual_solution = true;
  return e;
}

ZooEntry make_case_b() {
  ZooEntry e;
  e.id = "case-b";
  e.source = "unit disk against its tangent line x1 = 1";
  FunctionSpec f = FunctionSpec::indicator(SetSpec::ball(Vec::zeros(2), 1.0, {1.0, 0.0}));
  FunctionSpec g = FunctionSpec::linear({0.0, 1.0})
                       .with_indicator(SetSpec::affine(Mat(1, 2, {1.0, 0.0}), {1.0}, {1.0, 0.0}));
  e.problem = DrsPair{f, g};
  e.truth.p_star = 0.0;
  e.truth.d_star = 0.0;
  e.truth.p_minus = 0.0;
  e.truth.label = CaseLabel::B;
  e.truth.primal = FeasStatus::Feasible;
  e.truth.dual = FeasStatus::Feasible;
  e.truth.primal_solution = true;
  e.truth.dual_solution = false;
  return e;
}

ZooEntry make_case_c() {
  // second-order-cone lift of the dual of the disk/tangent-line pair:
  //   minimize t - v1  over  t >= ||(v1, v2)||,  v2 = -1
  ZooEntry e;
  e.id = "case-c";
  e.source = "cone lift of the dual of case-b";
  FunctionSpec f = FunctionSpec::linear({0.0, 0.0, 1.0})
                       .with_indicator(SetSpec::soc(3, {0, 1, 2}, {0.0, 0.0, 1.0}));
  FunctionSpec g =
      FunctionSpec::linear({-1.0, 0.0, 0.0})
          .with_indicator(SetSpec::affine(Mat(1, 3, {0.0, 1.0, 0.0}), {-1.0}, {0.0, -1.0, 1.5}));
  e.problem = DrsPair{f, g};
  e.truth.p_star = 0.0;
  e.truth.d_star = 0.0;
  e.truth.p_minus = 0.0;
  e.truth.label = CaseLabel::C;
  e.truth.primal = FeasStatus::Feasible;
  e.truth.dual = FeasStatus::Feasible;
  e.truth.primal_solution = false;
  e.truth.dual_solution = true;
  return e;
}

ZooEntry make_case_d() {
  ZooEntry e;
  e.id = "case-d";
  e.source = "log objective restricted to x >= 1";
  FunctionSpec f = FunctionSpec::indicator(SetSpec::halfspace({-1.0}, -1.0, {1.0}));
  FunctionSpec g = FunctionSpec::zero(1).with_atom({AtomKind::NegLog, 0});
  e.problem = DrsPair{f, g};
  e.truth.p_star = -kInf;
  e.truth.d_star = -kInf;
  e.truth.p_minus = -kInf;
  e.truth.label = CaseLabel::D;
  e.truth.primal = FeasStatus::Feasible;
  e.truth.dual = FeasStatus::WeaklyInfeasible;
  return e;
}

ZooEntry make_case_e() {
  ZooEntry e;
  e.id = "case-e";
  e.source = "doubled linear objective x + x";
  FunctionSpec f = FunctionSpec::linear({1.0});
  FunctionSpec g = FunctionSpec::linear({1.0});
  e.problem = DrsPair{f, g};
  e.truth.p_star = -kInf;
  e.truth.d_star = -kInf;
  e.truth.p_minus = -kInf;
  e.truth.label = CaseLabel::E;
  e.truth.primal = FeasStatus::Feasible;
  e.truth.dual = FeasStatus::StronglyInfeasible;
  e.truth.known_direction = Vec{-2.0};
  return e;
}

ZooEntry make_case_f() {
  ZooEntry e;
  e.id = "case-f";
  e.source = "tangent open domains x < 0 and x > 0";
  FunctionSpec f = FunctionSpec::zero(1).with_atom({AtomKind::InvSqrtNeg, 0});
  FunctionSpec g = FunctionSpec::zero(1).with_atom({AtomKind::NegLog, 0});
  e.problem = DrsPair{f, g};
  e.truth.p_star = kInf;
  e.truth.d_star = kInf;
  e.truth.p_minus = kInf;
  e.truth.label = CaseLabel::F;
  e.truth.primal = FeasStatus::WeaklyInfeasible;
  e.truth.dual = FeasStatus::Feasible;
  return e;
}

ZooEntry make_soc() {
  ZooEntry e;
  e.id = "sd-fail-soc";
  e.source = "analytical second-order-cone counterexample";
  FunctionSpec f = FunctionSpec::indicator(SetSpec::soc(3, {0, 1, 2}, {0.0, 0.0, 1.0}));
  FunctionSpec g =
      FunctionSpec::linear({1.0, 0.0, 0.0})
          .with_indicator(SetSpec::affine(Mat(1, 3, {0.0, 1.0, -1.0}), {0.0}, Vec::zeros(3)));
  e.problem = DrsPair{f, g};
  e.truth.p_star = 0.0;
  e.truth.d_star = -kInf;
  e.truth.p_minus = -kInf;
  e.truth.label = CaseLabel::G;
  e.truth.primal = FeasStatus::Feasible;
  e.truth.dual = FeasStatus::WeaklyInfeasible;
  e.truth.primal_solution = true;
  return e;
}

ZooEntry make_bertsekas() {
  ZooEntry e;
  e.id = "sd-fail-bertsekas";
  e.source = "Bertsekas duality-gap example";
  FunctionSpec f = FunctionSpec::zero(2).with_atom({AtomKind::ExpNegSqrtProd, 0, 1});
  FunctionSpec g =
      FunctionSpec::indicator(SetSpec::affine(Mat(1, 2, {1.0, 0.0}), {0.0}, Vec::zeros(2)));
  e.problem = DrsPair{f, g};
  e.truth.p_star = 1.0;
  e.truth.d_star = 0.0;
  e.truth.p_minus = 0.0;
  e.truth.label = CaseLabel::G;
  e.truth.primal = FeasStatus::Feasible;
  e.truth.dual = FeasStatus::Feasible;
  e.truth.primal_solution = true;
  return e;
}

ZooEntry make_drusvyatskiy() {
  // minimize X22 over PSD X with X33 = 0 and X22 + 2 X13 = 1
  ZooEntry e;
  e.id = "sd-fail-drusvyatskiy";
  e.source = "Drusvyatskiy-Wolkowicz pathological SDP";
  FunctionSpec f = psd_indicator(3);
  std::vector<Vec> rows = {
      sym_from_entries(3, {{2, 2, 1.0}}),               // X33 = 0
      sym_from_entries(3, {{1, 1, 1.0}, {2, 0, 1.0}}),  // X22 + 2 X13 = 1
  };
  FunctionSpec g =
      FunctionSpec::linear(sym_from_entries(3, {{1, 1, 1.0}}))
          .with_indicator(SetSpec::affine(rows_to_mat(rows), {0.0, 1.0},
                                          sym_from_entries(3, {{1, 1, 1.0}})));
  e.problem = DrsPair{f, g};
  e.truth.p_star = 1.0;
  e.truth.d_star = 0.0;
  e.truth.p_minus = 0.0;
  e.truth.label = CaseLabel::G;
  e.truth.primal = FeasStatus::Feasible;
  e.truth.dual = FeasStatus::Feasible;
  e.truth.primal_solution = true;
  e.truth.gamma_threshold = 0.5;
  return e;
}

ZooEntry make_ye() {
  // minimize 2 X12 over PSD X with X22 = 0 and -2 X12 + 2 X33 = 2
  ZooEntry e;
  e.id = "sd-fail-ye";
  e.source = "Ye pathological SDP";
  FunctionSpec f = psd_indicator(3);
  std::vector<Vec> rows = {
      sym_from_entries(3, {{1, 1, 1.0}}),                // X22 = 0
      sym_from_entries(3, {{1, 0, -1.0}, {2, 2, 2.0}}),  // -2 X12 + 2 X33 = 2
  };
  FunctionSpec g = FunctionSpec::linear(sym_from_entries(3, {{1, 0, 1.0}}))
                       .with_indicator(SetSpec::affine(rows_to_mat(rows), {0.0, 2.0},
                                                       sym_from_entries(3, {{2, 2, 1.0}})));
  e.problem = DrsPair{f, g};
  e.truth.p_star = 0.0;
  e.truth.d_star = -2.0;
  e.truth.p_minus = -2.0;
  e.truth.label = CaseLabel::G;
  e.truth.primal = FeasStatus::Feasible;
  e.truth.dual = FeasStatus::Feasible;
  e.truth.primal_solution = true;
  e.truth.gamma_threshold = 1.0;
  return e;
}

ZooEntry make_tuncel() {
  // minimize X44 + X55 over PSD X in S^5 with
  //   X11 = 0, X22 = 1, X34 = 1, 2 X13 + 2 X45 + X55 = 1
  ZooEntry e;
  e.id = "sd-fail-tuncel";
  e.source = "Tuncel-Wolkowicz pathological SDP";
  FunctionSpec f = psd_indicator(5);
  std::vector<Vec> rows = {
      sym_from_entries(5, {{0, 0, 1.0}}),
      sym_from_entries(5, {{1, 1, 1.0}}),
      sym_from_entries(5, {{3, 2, 0.5}}),  // trace form of the single entry X34
      sym_from_entries(5, {{2, 0, 1.0}, {4, 3, 1.0}, {4, 4, 1.0}}),
  };
  Vec witness = sym_from_entries(5, {{1, 1, 1.0}, {3, 2, 1.0}, {4, 4, 1.0}});
  FunctionSpec g =
      FunctionSpec::linear(sym_from_entries(5, {{3, 3, 1.0}, {4, 4, 1.0}}))
          .with_indicator(
              SetSpec::affine(rows_to_mat(rows), {0.0, 1.0, 1.0, 1.0}, std::move(witness)));
  e.problem = DrsPair{f, g};
  e.truth.p_star = (std::sqrt(5.0) - 1.0) / 2.0;
  e.truth.d_star = 0.0;
  e.truth.p_minus = 0.0;
  e.truth.label = CaseLabel::G;
  e.truth.primal = FeasStatus::Feasible;
  e.truth.dual = FeasStatus::Feasible;
  e.truth.primal_solution = true;
  e.truth.gamma_threshold = 0.8;
  return e;
}

ZooEntry make_admm_a() {
  ZooEntry e;
  e.id = "admm-a";
  e.source = "scalar l1 pair |x| + |y| with x - y = 1";
  AdmmProblem p{FunctionSpec::zero(1).with_atom({AtomKind::Abs, 0}),
                FunctionSpec::zero(1).with_atom({AtomKind::Abs, 0}), Mat(1, 1, {1.0}),
                Mat(1, 1, {-1.0}), Vec{1.0}};
  p.validate();
  e.problem = std::move(p);
  e.truth.p_star = 1.0;
  e.truth.d_star = 1.0;
  e.truth.p_minus = 1.0;
  e.truth.label = CaseLabel::A;
  e.truth.primal = FeasStatus::Feasible;
  e.truth.dual = FeasStatus::Feasible;
  e.truth.primal_solution = true;
  e.truth.dual_solution = true;
  return e;
}

ZooEntry make_admm_d() {
  ZooEntry e;
  e.id = "admm-d";
  e.source = "separated half-lines x <= 0, y >= 1 with x = y";
  AdmmProblem p{FunctionSpec::indicator(SetSpec::halfspace({1.0}, 0.0, {-1.0})),
                FunctionSpec::indicator(SetSpec::halfspace({-1.0}, -1.0, {2.0})),
                Mat(1, 1, {1.0}), Mat(1, 1, {-1.0}), Vec{0.0}};
  p.validate();
  e.problem = std::move(p);
  e.truth.p_star = kInf;
  e.truth.d_star = kInf;
  e.truth.p_minus = kInf;
  e.truth.label = CaseLabel::D;  // ADMM taxonomy: infeasible with a positive gap
  e.truth.primal = FeasStatus::StronglyInfeasible;
  e.truth.dual = FeasStatus::Feasible;
  return e;
}

ZooEntry make_admm_c() {
  // constraint-coupled restatement of case-c: x + y = 0 with g(y) = g_c(-y)
  ZooEntry e;
  e.id = "admm-c";
  e.source = "constraint-coupled form of case-c";
  FunctionSpec f = FunctionSpec::linear({0.0, 0.0, 1.0})
                       .with_indicator(SetSpec::soc(3, {0, 1, 2}, {0.0, 0.0, 1.0}));
  FunctionSpec g =
      FunctionSpec::linear({1.0, 0.0, 0.0})
          .with_indicator(SetSpec::affine(Mat(1, 3, {0.0, 1.0, 0.0}), {1.0}, {0.0, 1.0, -1.5}));
  AdmmProblem p{std::move(f), std::move(g), Mat::identity(3), Mat::identity(3), Vec::zeros(3)};
  p.validate();
  e.problem = std::move(p);
  e.truth.p_star = 0.0;
  e.truth.d_star = 0.0;
  e.truth.p_minus = 0.0;
  e.truth.label = CaseLabel::C;  // ADMM taxonomy: feasible, no solution
  e.truth.primal = FeasStatus::Feasible;
  e.truth.dual = FeasStatus::Feasible;
  e.truth.primal_solution = false;
  e.truth.dual_solution = true;
  return e;
}

std::vector<ZooEntry> build_catalog() {
  std::vector<ZooEntry> zoo;
  zoo.push_back(make_case_a());
  zoo.push_back(make_case_b());
  zoo.push_back(make_case_c());
  zoo.push_back(make_case_d());
  zoo.push_back(make_case_e());
  zoo.push_back(make_case_f());
  zoo.push_back(make_soc());
  zoo.push_back(make_bertsekas());
  zoo.push_back(make_drusvyatskiy());
  zoo.push_back(make_ye());
  zoo.push_back(make_tuncel());
  zoo.push_back(make_admm_a());
  zoo.push_back(make_admm_d());
  zoo.push_back(make_admm_c());
  for (const auto& e : zoo) {
    e.truth.validate();
    if (e.is_admm()) {
      e.admm().validate();
    } else {
      e.drs().f.validate();
      e.drs().g.validate();
    }
  }
  return zoo;
}

}  // namespace

const std::vector<ZooEntry>& catalog() {
  static const std::vector<ZooEntry> zoo = build_catalog();
  return zoo;
}

const ZooEntry* find_entry(const std::string& id) {
  for (const auto& e : catalog()) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

}  // namespace drsdiag
