#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "wedgelab/models.hpp"
#include "wedgelab/roots.hpp"

using namespace wl;

namespace {

Vec ambient_coords(const LieAlgebra& g, const Mat& m) {
  double res = 0.0;
  Vec c = to_coords(g, m, &res);
  REQUIRE(res < 1e-9);
  return c;
}

Mat unit(int n, int i, int j) {
  Mat m = Mat::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

Mat realified(const Mat& re, const Mat& im) {
  const Eigen::Index m = re.rows();
  Mat r = Mat::Zero(2 * m, 2 * m);
  r.topLeftCorner(m, m) = re;
  r.bottomRightCorner(m, m) = re;
  r.topRightCorner(m, m) = -im;
  r.bottomLeftCorner(m, m) = im;
  return r;
}

struct Pipeline {
  ModelBundle bundle;
  RootSystem rs;
  CausalStructure cs;
  ConePairA cones;
};

Pipeline run_pipeline(const std::string& id) {
  Pipeline p{make_model(id), {}, {}, {}};
  p.rs = restricted_roots(p.bundle.pair, p.bundle.a_basis);
  classify_roots(p.bundle.pair, p.rs);
  compute_coroots(p.bundle.pair, p.rs);
  p.cs = causal_structure(p.bundle.pair, p.rs, p.bundle.cone_margin);
  p.cones = cone_min_max(p.rs, p.cs);
  return p;
}

int find_root(const RootSystem& rs, const std::vector<double>& alpha) {
  Vec v(static_cast<Eigen::Index>(alpha.size()));
  Eigen::Index i = 0;
  for (double a : alpha) v[i++] = a;
  for (size_t k = 0; k < rs.roots.size(); ++k)
    if ((rs.roots[k].alpha - v).lpNorm<Eigen::Infinity>() < 1e-6) return static_cast<int>(k);
  return -1;
}

}  // namespace

TEST_CASE("cartan subspace ranks per model") {
  const std::map<std::string, int> expected = {
      {"sl2-cayley", 1}, {"sl2-split", 1},   {"sl4-split", 3},   {"sl6-split", 5},
      {"sp2-cayley", 1}, {"sp4-cayley", 2},  {"sp6-cayley", 3},  {"so22-cayley", 2},
      {"so23-cayley", 2}, {"so24-cayley", 2}, {"su11-cayley", 1}, {"su22-cayley", 2},
      {"slC4-su22", 3},  {"ds2", 1},         {"ds3", 1},         {"ds4", 1},
      {"gl2", 2},        {"sl2xsl2", 2}};
  for (const auto& [id, rank] : expected) {
    CAPTURE(id);
    ModelBundle b = make_model(id);
    CHECK(b.a_basis.cols() == rank);
    Mat found = find_max_abelian_hyperbolic(b.pair);
    CHECK(found.cols() == rank);
  }
}

TEST_CASE("grading dimensions of the structural element") {
  const std::map<std::string, int> expected = {
      {"sl2-cayley", 1}, {"sl2-split", 1},   {"sl4-split", 4},   {"sl6-split", 9},
      {"sp2-cayley", 1}, {"sp4-cayley", 3},  {"sp6-cayley", 6},  {"so22-cayley", 2},
      {"so23-cayley", 3}, {"so24-cayley", 4}, {"su11-cayley", 1}, {"su22-cayley", 4},
      {"slC4-su22", 8},  {"ds2", 1},         {"ds3", 2},         {"ds4", 3},
      {"gl2", 1},        {"sl2xsl2", 2}};
  for (const auto& [id, dim_plus] : expected) {
    CAPTURE(id);
    ModelBundle b = make_model(id);
    EulerInfo info = is_euler(b.pair.g, b.pair.h);
    CHECK(info.euler);
    CHECK(info.split.dim_plus == dim_plus);
    CHECK(info.split.dim_minus == dim_plus);
  }
}

TEST_CASE("rank one cayley pipeline") {
  Pipeline p = run_pipeline("sl2-cayley");
  REQUIRE(p.rs.roots.size() == 2);
  CHECK(p.rs.centralizer.cols() == 1);
  for (const auto& r : p.rs.roots) {
    CHECK(r.space.cols() == 1);
    CHECK_FALSE(r.compact);
  }
  int plus = find_root(p.rs, {2.0});
  REQUIRE(plus >= 0);
  Vec ef = Vec::Zero(3);
  ef[1] = ef[2] = 1.0;
  CHECK((p.rs.roots[plus].coroot - ef).norm() < 1e-8);
  CHECK((p.cs.h_causal - 0.5 * ef).norm() < 1e-8);
  CHECK(p.cs.pos_noncompact.size() == 1);
  CHECK(p.cs.gamma.size() == 1);
  CHECK(weyl_group_k(p.rs).size() == 1);

  ConeChecks cc = certify_cones(p.cones);
  CHECK(cc.min_pointed);
  CHECK(cc.min_generating);
  CHECK(cc.max_solid);
  CHECK(cc.inclusion);

  CHECK(s_of(p.rs, p.cs.h_causal_a) == doctest::Approx(1.0));
  Vec x(1);
  x[0] = 1.5;
  CPiEval in = c_pi_eval(p.rs, p.cones, x);
  CHECK(in.cone_margin > 0);
  CHECK(in.s_value == doctest::Approx(3.0));
  x[0] = 1.7;
  CHECK(c_pi_eval(p.rs, p.cones, x).s_value > 3.14159265358979);
}

TEST_CASE("rank one split pipeline") {
  Pipeline p = run_pipeline("sl2-split");
  REQUIRE(p.rs.roots.size() == 2);
  for (const auto& r : p.rs.roots) CHECK_FALSE(r.compact);
  int plus = find_root(p.rs, {2.0});
  REQUIRE(plus >= 0);
  Vec twoh = Vec::Zero(3);
  twoh[0] = 2.0;
  CHECK((p.rs.roots[plus].coroot - twoh).norm() < 1e-8);
  CHECK((p.cs.h_causal - 0.5 * twoh).norm() < 1e-8);
  CHECK(s_of(p.rs, Vec::Constant(1, 1.0)) == doctest::Approx(2.0));
}

TEST_CASE("product model pipeline") {
  Pipeline p = run_pipeline("sl2xsl2");
  REQUIRE(p.rs.roots.size() == 4);
  CHECK(p.rs.centralizer.cols() == 2);
  Vec expected = Vec::Zero(6);
  expected[1] = expected[2] = expected[4] = expected[5] = 0.5;
  CHECK((p.cs.h_causal - expected).norm() < 1e-8);
  CHECK(p.cs.pos_noncompact.size() == 2);
  CHECK(p.cs.gamma.size() == 2);
  ConeChecks cc = certify_cones(p.cones);
  CHECK(cc.min_pointed);
  CHECK(cc.min_generating);
  CHECK(cc.max_solid);
  CHECK(cc.inclusion);
}

TEST_CASE("doubled complex realization frozen root data") {
  Pipeline p = run_pipeline("slC4-su22");
  const LieAlgebra& g = p.bundle.pair.g;
  REQUIRE(p.rs.roots.size() == 12);
  CHECK(p.rs.centralizer.cols() == 6);
  for (const auto& r : p.rs.roots) CHECK(r.space.cols() == 2);

  std::set<int> compact;
  for (size_t i = 0; i < p.rs.roots.size(); ++i)
    if (p.rs.roots[i].compact) compact.insert(static_cast<int>(i));
  CHECK(compact.size() == 4);
  CHECK(compact.count(find_root(p.rs, {2, -1, 0})) == 1);
  CHECK(compact.count(find_root(p.rs, {-2, 1, 0})) == 1);
  CHECK(compact.count(find_root(p.rs, {0, -1, 2})) == 1);
  CHECK(compact.count(find_root(p.rs, {0, 1, -2})) == 1);

  auto diag4 = [&](double a, double b, double c, double d) {
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    m(3, 3) = d;
    return ambient_coords(g, realified(m, Mat::Zero(4, 4)));
  };

  struct CorootCase {
    std::vector<double> alpha;
    Vec ambient;
  };
  const std::vector<CorootCase> coroots = {
      {{1, 1, -1}, diag4(1, 0, -1, 0)},
      {{1, 0, 1}, diag4(1, 0, 0, -1)},
      {{-1, 2, -1}, diag4(0, 1, -1, 0)},
      {{-1, 1, 1}, diag4(0, 1, 0, -1)}};
  for (const auto& c : coroots) {
    int idx = find_root(p.rs, c.alpha);
    REQUIRE(idx >= 0);
    CHECK((p.rs.roots[idx].coroot - c.ambient).norm() < 1e-7);
  }

  CHECK((p.cs.h_causal - diag4(0.5, 0.5, -0.5, -0.5)).norm() < 1e-7);
  Vec hc_a(3);
  hc_a << 0.5, 1.0, 0.5;
  CHECK((p.cs.h_causal_a - hc_a).norm() < 1e-7);

  std::set<int> pos(p.cs.pos_noncompact.begin(), p.cs.pos_noncompact.end());
  CHECK(pos.size() == 4);
  for (const auto& c : coroots) CHECK(pos.count(find_root(p.rs, c.alpha)) == 1);

  REQUIRE(p.cs.gamma.size() == 2);
  std::set<int> gam(p.cs.gamma.begin(), p.cs.gamma.end());
  CHECK(gam.count(find_root(p.rs, {1, 1, -1})) == 1);
  CHECK(gam.count(find_root(p.rs, {-1, 1, 1})) == 1);
  CHECK(gamma_subalgebra_dim(p.bundle.pair, p.rs, p.cs.gamma) == 6);

  auto weyl = weyl_group_k(p.rs);
  CHECK(weyl.size() == 4);
  for (const auto& w : weyl) CHECK((w * p.cs.h_causal_a - p.cs.h_causal_a).norm() < 1e-8);

  Vec z = ambient_coords(g, realified(
      (Mat(4, 4) << 2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 1, 0, 0, 0, 0, -5).finished(),
      Mat::Zero(4, 4)));
  Vec z_a = a_coefficients(p.rs, z);
  Vec z_expected(3);
  z_expected << 2, 4, 5;
  CHECK((z_a - z_expected).norm() < 1e-8);

  std::set<std::pair<long, long>> orbit;
  for (const auto& w : weyl) {
    Vec wz = w * z_a;
    orbit.insert({llround(wz[1] * 1e6), llround(wz[2] * 1e6)});
  }
  CHECK(orbit.size() == 2);
  CHECK(orbit.count({4000000, 5000000}) == 1);
  CHECK(orbit.count({4000000, -1000000}) == 1);

  CHECK(s_of(p.rs, z_a) == doctest::Approx(12.0));
  CHECK(max_cone_margin(p.cones, z_a) == doctest::Approx(1.0));

  ConeChecks cc = certify_cones(p.cones);
  CHECK(cc.min_pointed);
  CHECK(cc.min_generating);
  CHECK(cc.max_solid);
  CHECK(cc.inclusion);

  RatMat gens;
  for (Eigen::Index j = 0; j < p.cones.min_generators.cols(); ++j)
    gens.push_back(to_rational_vec(p.cones.min_generators.col(j)));
  RatVec z_rat = to_rational_vec(z_a);
  CHECK_FALSE(cone_member(gens, z_rat));
  RatVec phi;
  REQUIRE(separating_functional(gens, z_rat, &phi));
  Rat at_z = 0;
  for (size_t i = 0; i < phi.size(); ++i) at_z += phi[i] * z_rat[i];
  CHECK(at_z < 0);
  for (const auto& gen : gens) {
    Rat at_g = 0;
    for (size_t i = 0; i < phi.size(); ++i) at_g += phi[i] * gen[i];
    CHECK(at_g >= 0);
  }
  CHECK(cone_member(gens, to_rational_vec(p.cs.h_causal_a)));

  Mat tau_h = tau_from_euler(g, p.bundle.pair.h);
  Vec swapped = ambient_coords(g, realified(
      (Mat(4, 4) << -1, 0, 0, 0, 0, 5, 0, 0, 0, 0, -2, 0, 0, 0, 0, -2).finished(),
      Mat::Zero(4, 4)));
  CHECK((-(tau_h * z) - swapped).norm() < 1e-7);
}

TEST_CASE("rank two symplectic pipeline") {
  Pipeline p = run_pipeline("sp4-cayley");
  const LieAlgebra& g = p.bundle.pair.g;
  REQUIRE(p.rs.roots.size() == 8);
  CHECK(p.rs.centralizer.cols() == 2);

  std::set<int> compact;
  for (size_t i = 0; i < p.rs.roots.size(); ++i)
    if (p.rs.roots[i].compact) compact.insert(static_cast<int>(i));
  CHECK(compact.size() == 2);
  CHECK(compact.count(find_root(p.rs, {1, -1})) == 1);
  CHECK(compact.count(find_root(p.rs, {-1, 1})) == 1);

  Mat hm = Mat::Zero(4, 4);
  hm.topRightCorner(2, 2) = 0.5 * Mat::Identity(2, 2);
  hm.bottomLeftCorner(2, 2) = 0.5 * Mat::Identity(2, 2);
  CHECK((p.cs.h_causal - ambient_coords(g, hm)).norm() < 1e-8);
  CHECK(p.cs.pos_noncompact.size() == 3);
  REQUIRE(p.cs.gamma.size() == 1);
  CHECK(find_root(p.rs, {1, 1}) == p.cs.gamma[0]);
  CHECK(gamma_subalgebra_dim(p.bundle.pair, p.rs, p.cs.gamma) == 3);
  CHECK(weyl_group_k(p.rs).size() == 2);

  ConeChecks cc = certify_cones(p.cones);
  CHECK(cc.min_pointed);
  CHECK(cc.min_generating);
  CHECK(cc.max_solid);
  CHECK(cc.inclusion);

  Vec quadrant(2);
  quadrant << 1.0, 0.25;
  CHECK(max_cone_margin(p.cones, quadrant) > 0);
  Vec outside(2);
  outside << 1.0, -0.25;
  CHECK(max_cone_margin(p.cones, outside) < 0);
  CHECK(s_of(p.rs, quadrant) == doctest::Approx(2.0));
}

TEST_CASE("de sitter pipeline per dimension") {
  for (int d : {2, 3, 4}) {
    CAPTURE(d);
    Pipeline p = run_pipeline("ds" + std::to_string(d));
    REQUIRE(p.rs.roots.size() == 2);
    for (const auto& r : p.rs.roots) {
      CHECK(r.space.cols() == d - 1);
      CHECK_FALSE(r.compact);
    }
    CHECK(p.rs.centralizer.cols() == p.bundle.pair.g.dim - 2 * (d - 1));
    int plus = find_root(p.rs, {1.0});
    REQUIRE(plus >= 0);
    CHECK((p.rs.roots[plus].coroot - 2.0 * p.bundle.a_basis.col(0)).norm() < 1e-7);
    CHECK((p.cs.h_causal - p.bundle.a_basis.col(0)).norm() < 1e-7);
    CHECK(weyl_group_k(p.rs).size() == 1);
    CHECK(gamma_subalgebra_dim(p.bundle.pair, p.rs, p.cs.gamma) == 3);
    ConeChecks cc = certify_cones(p.cones);
    CHECK(cc.min_pointed);
    CHECK(cc.min_generating);
    CHECK(cc.max_solid);
    CHECK(cc.inclusion);
    Vec x(1);
    x[0] = 3.0;
    CPiEval in = c_pi_eval(p.rs, p.cones, x);
    CHECK(in.cone_margin > 0);
    CHECK(in.s_value == doctest::Approx(3.0));
    x[0] = 3.2;
    CHECK(c_pi_eval(p.rs, p.cones, x).s_value > 3.14159265358979);
  }
}

TEST_CASE("counts for the remaining models") {
  struct Expect {
    std::string id;
    int n_roots;
    int centralizer;
    int pos_noncompact;
  };
  const std::vector<Expect> table = {
      {"sp2-cayley", 2, 1, 1},   {"sp6-cayley", 18, 3, 6},  {"so22-cayley", 4, 2, 2},
      {"so23-cayley", 8, 2, 3},  {"so24-cayley", 8, 3, 3},  {"su11-cayley", 2, 1, 1},
      {"su22-cayley", 8, 3, 3},  {"sl4-split", 12, 3, 4},   {"gl2", 2, 2, 1}};
  for (const auto& e : table) {
    CAPTURE(e.id);
    Pipeline p = run_pipeline(e.id);
    CHECK(p.rs.roots.size() == static_cast<size_t>(e.n_roots));
    CHECK(p.rs.centralizer.cols() == e.centralizer);
    CHECK(p.cs.pos_noncompact.size() == static_cast<size_t>(e.pos_noncompact));
    ConeChecks cc = certify_cones(p.cones);
    CHECK(cc.min_pointed);
    CHECK(cc.max_solid);
    CHECK(cc.inclusion);
  }
}

TEST_CASE("compact root reflections arise from explicit conjugations") {
  for (const std::string& id : {std::string("slC4-su22"), std::string("sp4-cayley")}) {
    CAPTURE(id);
    Pipeline p = run_pipeline(id);
    const LieAlgebra& g = p.bundle.pair.g;
    int beta = -1;
    for (size_t i = 0; i < p.rs.roots.size(); ++i)
      if (p.rs.roots[i].compact && p.rs.roots[i].alpha[0] > 0.5) beta = static_cast<int>(i);
    REQUIRE(beta >= 0);
    const auto& root = p.rs.roots[beta];

    Vec x = root.space.col(0);
    Vec z = x + p.bundle.pair.tau * x;
    REQUIRE(z.norm() > 1e-8);
    CHECK((p.bundle.pair.tau * z - z).norm() < 1e-8);

    Mat adz = ad(g, z);
    Vec w = adz * (adz * root.coroot);
    double omega2 = w.norm() / root.coroot.norm();
    CHECK((w + omega2 * root.coroot).norm() < 1e-6 * root.coroot.norm());
    double tstar = 3.14159265358979323846 / std::sqrt(omega2);

    Mat conj = ad_group(g, exp_ambient(g, Vec(tstar * z)));
    Mat moved = conj * p.rs.a_basis;
    Mat coeff = p.rs.a_basis.colPivHouseholderQr().solve(moved);
    CHECK((p.rs.a_basis * coeff - moved).norm() < 1e-7);
    Mat reflection =
        Mat::Identity(p.rs.a_basis.cols(), p.rs.a_basis.cols()) -
        root.coroot_a * root.alpha.transpose();
    CHECK((coeff - reflection).norm() < 1e-6);
  }
}

TEST_CASE("subgroup flows keep the orbit inside the subspace only trivially") {
  Pipeline p = run_pipeline("ds3");
  const LieAlgebra& g = p.bundle.pair.g;
  Mat h_basis = nullspace(p.bundle.pair.tau - Mat::Identity(g.dim, g.dim));
  std::mt19937 rng(7);
  std::normal_distribution<double> dist(0.0, 0.7);
  int inside = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Vec y;
    if (trial == 0) {
      // Rotation in a plane not meeting the subspace: commutes with it.
      y = 0.9 * ambient_coords(g, -unit(4, 1, 3) + unit(4, 3, 1));
    } else {
      Vec c(h_basis.cols());
      for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = dist(rng);
      y = h_basis * c;
    }
    Mat conj = ad_group(g, exp_ambient(g, y));
    Vec moved = conj * p.cs.h_causal;
    Vec coeff = p.rs.a_basis.colPivHouseholderQr().solve(moved);
    if ((p.rs.a_basis * coeff - moved).norm() < 1e-8 * std::max(1.0, moved.norm())) {
      ++inside;
      CHECK((moved - p.cs.h_causal).norm() < 1e-6);
    }
  }
  CHECK(inside >= 1);
}

TEST_CASE("exact rational cone helpers") {
  CHECK(to_rational(0.5) == Rat(1, 2));
  CHECK(to_rational(-0.25) == Rat(-1, 4));
  CHECK(to_rational(1.0 / 3.0) == Rat(1, 3));
  double pi_err = std::fabs(to_double(to_rational(3.14159265358979, 1000)) - 3.14159265358979);
  CHECK(pi_err < 1e-5);

  RatMat quadrant = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
  CHECK(cone_member(quadrant, {Rat(1), Rat(1)}));
  CHECK(cone_member(quadrant, {Rat(0), Rat(0)}));
  CHECK_FALSE(cone_member(quadrant, {Rat(-1), Rat(0)}));
  RatVec phi;
  CHECK(separating_functional(quadrant, {Rat(-1), Rat(1)}, &phi));
  CHECK_FALSE(separating_functional(quadrant, {Rat(2), Rat(3)}, &phi));

  ConeCertificates cc = cone_certificates(quadrant);
  CHECK(cc.pointed);
  CHECK(cc.generating);
  RatMat with_line = {{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}, {Rat(0), Rat(1)}};
  ConeCertificates cl = cone_certificates(with_line);
  CHECK_FALSE(cl.pointed);
  CHECK(cl.generating);

  CHECK(inequality_cone_solid({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}));
  CHECK_FALSE(inequality_cone_solid({{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}}));

  LpResult lp = solve_lp({{Rat(1), Rat(1)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}},
                         {Rat(4), Rat(3), Rat(3)}, {}, {}, {Rat(1), Rat(2)});
  REQUIRE(lp.status == LpStatus::Optimal);
  CHECK(lp.value == Rat(7));  // x = (1, 3)
  CHECK(lp.x[0] == Rat(1));
  CHECK(lp.x[1] == Rat(3));

  LpResult infeasible = solve_lp({{Rat(1)}, {Rat(-1)}}, {Rat(-2), Rat(1)}, {}, {}, {Rat(0)});
  CHECK(infeasible.status == LpStatus::Infeasible);
  LpResult unbounded = solve_lp({{Rat(-1)}}, {Rat(0)}, {}, {}, {Rat(1)});
  CHECK(unbounded.status == LpStatus::Unbounded);
}
