#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "wedgelab/liealg.hpp"
#include "wedgelab/roots.hpp"
#include "wedgelab/tolerances.hpp"
#include "wedgelab/wedge.hpp"

using namespace wl;

namespace {

Mat unit(int n, int i, int j) {
  Mat m = Mat::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

Vec ray(const CausalSymmetricSpec& spec, double a, double b) {
  return a * spec.c_plus.generators.col(0) + b * spec.c_minus.generators.col(0);
}

}  // namespace

TEST_CASE("spec construction and cone cross checks") {
  std::map<std::string, int> gens = {{"ds2", 1}, {"ds3", 1}, {"ds4", 1},
                                     {"sl2-cayley", 1}, {"sl2xsl2", 2}, {"gl2", 1}};
  std::map<std::string, std::array<int, 3>> grades = {
      {"ds2", {1, 1, 1}}, {"ds3", {2, 2, 2}}, {"ds4", {3, 4, 3}},
      {"sl2-cayley", {1, 1, 1}}, {"sl2xsl2", {2, 2, 2}}, {"gl2", {1, 2, 1}}};
  for (const auto& id : wedge_spec_ids()) {
    CAPTURE(id);
    CausalSymmetricSpec spec = make_wedge_spec(id);
    CHECK(spec.id == id);
    CHECK(spec.c_plus.generators.cols() == gens[id]);
    CHECK(spec.c_minus.generators.cols() == gens[id]);
    CHECK(spec.grading.dim_plus == grades[id][0]);
    CHECK(spec.grading.dim_zero == grades[id][1]);
    CHECK(spec.grading.dim_minus == grades[id][2]);
    CHECK(spec.h_basis.cols() + spec.q_basis.cols() == spec.model.pair.g.dim);
    if (id == "gl2") {
      CHECK(spec.factors.empty());
    } else if (id == "sl2xsl2") {
      REQUIRE(spec.factors.size() == 2);
      CHECK(spec.factors[1].offset == 3);
    } else {
      REQUIRE(spec.factors.size() == 1);
    }
    int rot = 0;
    if (id == "ds3") rot = 1;
    if (id == "ds4") rot = 3;
    CHECK(spec.rot_basis.cols() == rot);
  }
  CHECK_THROWS_AS(make_wedge_spec("sp4-cayley"), std::invalid_argument);
}

TEST_CASE("transport carries the modular data to the lorentz frame") {
  for (const std::string id : {"sl2-cayley", "sl2xsl2"}) {
    CAPTURE(id);
    CausalSymmetricSpec spec = make_wedge_spec(id);
    for (const auto& f : spec.factors) {
      REQUIRE_FALSE(f.native);
      Mat m01 = unit(3, 0, 1) + unit(3, 1, 0);
      Mat m02 = unit(3, 0, 2) + unit(3, 2, 0);
      Mat m12 = unit(3, 1, 2) - unit(3, 2, 1);
      Vec h = Vec::Zero(3), e = Vec::Zero(3), fv = Vec::Zero(3);
      h[0] = 1.0;
      e[1] = 1.0;
      fv[2] = 1.0;
      CHECK((from_coords(spec.target, Vec(f.transport * h)) - m01).norm() < 1e-12);
      CHECK((from_coords(spec.target, Vec(f.transport * e)) - (m02 + m12)).norm() < 1e-12);
      CHECK((from_coords(spec.target, Vec(f.transport * fv)) - (m02 - m12)).norm() < 1e-12);
    }
  }

  // exp(t(e - f)) moves the base point along the polar ray rho = 2t.
  CausalSymmetricSpec spec = make_wedge_spec("sl2-cayley");
  const LieAlgebra& g = spec.model.pair.g;
  for (double t : {0.1, 0.4, 0.7, 1.2}) {
    Vec x = Vec::Zero(3);
    x[1] = 1.0;
    x[2] = -1.0;
    PointRep p = make_point(g, {{x, t}});
    Vec pt = factor_point(spec, spec.factors[0], p);
    CHECK(std::fabs(pt[0]) < 1e-12);
    CHECK(pt[1] == doctest::Approx(std::sin(2.0 * t)).epsilon(1e-12));
    CHECK(pt[2] == doctest::Approx(std::cos(2.0 * t)).epsilon(1e-12));
  }
}

TEST_CASE("group words act by automorphisms") {
  CausalSymmetricSpec spec = make_wedge_spec("ds3");
  const LieAlgebra& g = spec.model.pair.g;
  IndexSampler smp{17};
  for (std::uint64_t i = 0; i < 16; ++i) {
    Vec a(g.dim), b(g.dim);
    for (int j = 0; j < g.dim; ++j) {
      a[j] = 2.0 * smp.uniform(i, j) - 1.0;
      b[j] = 2.0 * smp.uniform(i, 32 + j) - 1.0;
    }
    PointRep p = make_point(g, {{a, 0.8}, {b, -0.6}});
    CHECK(automorphism_residual(g, p.ad) < 1e-10);
  }
  PointRep id_pt = make_point(g, {});
  CHECK((id_pt.ad - Mat::Identity(g.dim, g.dim)).norm() < 1e-14);
}

TEST_CASE("modular vector field margins at planted points") {
  CausalSymmetricSpec ds = make_wedge_spec("ds2");
  const LieAlgebra& g = ds.model.pair.g;

  // The base point and the modular flow itself sit on the boundary: the
  // field there is tangent to the flow, with vanishing q-part.
  CHECK(modular_vector_field(ds, make_point(g, {})).norm() < 1e-12);
  CHECK(modular_vector_field(ds, make_point(g, {{ds.model.pair.h, 1.3}})).norm() < 1e-12);
  CHECK_FALSE(in_positivity_domain(ds, make_point(g, {})));

  // Along the polar ray the margin is sin(rho).
  for (double t : {0.3, 0.9, 1.5, 2.4}) {
    Vec x = 0.5 * t * ray(ds, 1.0, 1.0);
    PointRep p = polar_wedge_sample(ds, {0.0}, x);
    CHECK(positivity_margin(ds, p) == doctest::Approx(std::sin(t)).epsilon(1e-9));
  }

  CausalSymmetricSpec sl2 = make_wedge_spec("sl2-cayley");
  const LieAlgebra& gs = sl2.model.pair.g;
  Vec emf = Vec::Zero(3);
  emf[1] = 1.0;
  emf[2] = -1.0;
  PointRep quarter = make_point(gs, {{emf, M_PI / 4.0}});
  CHECK(positivity_margin(sl2, quarter) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(in_positivity_domain(sl2, quarter));
}

TEST_CASE("polar domain sampling and margins") {
  for (const auto& id : wedge_spec_ids()) {
    CAPTURE(id);
    CausalSymmetricSpec spec = make_wedge_spec(id);
    IndexSampler smp{2026};
    for (std::uint64_t i = 0; i < 200; ++i) {
      Vec x = polar_domain_sample(spec, smp, i);
      CHECK(polar_domain_margin(spec, x) > 0.0);
      Vec xp = spec.grading.p_plus * x, xm = spec.grading.p_minus * x;
      CHECK(s_of_element(spec, Vec(xp - xm)) < 0.95 * M_PI);
      Vec again = polar_domain_sample(spec, smp, i);
      CHECK((x - again).norm() == 0.0);
    }
  }

  CausalSymmetricSpec ds = make_wedge_spec("ds2");
  CHECK_THROWS_AS(polar_domain_margin(ds, ds.model.pair.h), std::invalid_argument);
  CHECK(polar_domain_margin(ds, ray(ds, 1.0, -0.4)) < 0.0);
  CHECK(polar_domain_margin(ds, ray(ds, 1.7, 1.7)) < 0.0);  // s exceeds pi
  CHECK(polar_domain_margin(ds, ray(ds, 0.5, 0.5)) > 0.0);
  CHECK_THROWS_AS(polar_wedge_sample(ds, {0.0}, ray(ds, 1.0, -0.4)), std::invalid_argument);
  CHECK_THROWS_AS(polar_wedge_sample(ds, {0.0, 0.0}, ray(ds, 0.5, 0.5)),
                  std::invalid_argument);

  CausalSymmetricSpec gl = make_wedge_spec("gl2");
  CHECK_THROWS_AS(polar_wedge_sample(gl, {}, polar_domain_sample(gl, IndexSampler{1}, 0)),
                  std::invalid_argument);
}

TEST_CASE("wedge membership is invariant under the centralizer words") {
  for (const std::string id : {"ds3", "sl2xsl2"}) {
    CAPTURE(id);
    CausalSymmetricSpec spec = make_wedge_spec(id);
    IndexSampler smp{5};
    const std::size_t nf = spec.factors.size();
    const std::size_t nr = static_cast<std::size_t>(spec.rot_basis.cols());
    for (std::uint64_t i = 0; i < 12; ++i) {
      Vec x = polar_domain_sample(spec, smp, i);
      for (double shift : {-2.0, 0.0, 1.4}) {
        std::vector<double> kp(nf + nr, 0.0);
        for (std::size_t f = 0; f < nf; ++f) kp[f] = shift + 0.3 * double(f);
        for (std::size_t r = 0; r < nr; ++r) kp[nf + r] = 0.9 - 0.4 * double(r);
        PointRep p = polar_wedge_sample(spec, kp, x);
        TripleMargins t = wedge_memberships(spec, p);
        CHECK(t.verdict == 1);
      }
    }
  }
}

TEST_CASE("polar wedge samples satisfy cone positivity") {
  for (const std::string id : {"sl2-cayley", "sl2xsl2", "ds2", "ds4"}) {
    CAPTURE(id);
    CausalSymmetricSpec spec = make_wedge_spec(id);
    WedgeReport rep = polar_implies_positive(spec, 800, 40 + id.size());
    CHECK(rep.samples == 800);
    CHECK(rep.interior == 800);
    CHECK(rep.witnesses.empty());
  }
}

TEST_CASE("three way equality harness finds no disagreements") {
  for (const std::string id : {"ds2", "ds3", "ds4", "sl2-cayley", "sl2xsl2"}) {
    CAPTURE(id);
    CausalSymmetricSpec spec = make_wedge_spec(id);
    WedgeReport rep = verify_wedge_equalities(spec, 900, 2026);
    CHECK(rep.samples == 900);
    CHECK(rep.disagreements == 0);
    CHECK(rep.witnesses.empty());
    CHECK(rep.interior > 150);
    CHECK(rep.exterior > 50);
    CHECK(rep.interior + rep.exterior + rep.indeterminate == 900);
    for (int j = 0; j < 3; ++j)
      CHECK(rep.agreement[j][j] == rep.interior + rep.exterior);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) CHECK(rep.agreement[j][k] == rep.agreement[j][j]);
    // every source is represented among the interior verdicts
    std::set<int> interior_sources;
    for (const auto& row : rep.rows)
      if (row.tests.verdict == 1) interior_sources.insert(row.source);
    CHECK(interior_sources.size() == 3);
  }
  CausalSymmetricSpec gl = make_wedge_spec("gl2");
  CHECK_THROWS_AS(verify_wedge_equalities(gl, 10, 1), std::invalid_argument);
}

TEST_CASE("band source straddles the decision surface") {
  CausalSymmetricSpec spec = make_wedge_spec("ds2");
  WedgeReport rep = verify_wedge_equalities(spec, 900, 7);
  int banded = 0, band_in = 0, band_out = 0;
  for (const auto& row : rep.rows) {
    if (row.source != 2) continue;
    if (row.tests.verdict == 0) ++banded;
    if (row.tests.verdict == 1) ++band_in;
    if (row.tests.verdict == -1) ++band_out;
  }
  CHECK(banded > 10);
  CHECK(band_in > 20);
  CHECK(band_out > 20);
}

TEST_CASE("reflected wedge points leave the positivity domain") {
  for (const std::string id : {"ds2", "sl2-cayley"}) {
    CAPTURE(id);
    CausalSymmetricSpec spec = make_wedge_spec(id);
    const LieAlgebra& g = spec.model.pair.g;
    Mat tau_h = tau_from_euler(g, spec.model.pair.h);
    IndexSampler smp{99};
    int flipped = 0;
    for (std::uint64_t i = 0; i < 40; ++i) {
      Vec x = polar_domain_sample(spec, smp, i);
      PointRep p = polar_wedge_sample(spec, {0.4}, x);
      double m = positivity_margin(spec, p);
      REQUIRE(m > 1e-6);
      std::vector<std::pair<Vec, double>> word;
      for (const auto& [y, t] : p.word) word.emplace_back(Vec(tau_h * y), t);
      PointRep q = make_point(g, word);
      CHECK(positivity_margin(spec, q) < -1e-6);
      // the reflection intertwines the two modular fields
      Vec v = modular_vector_field(spec, q);
      CHECK((v - tau_h * modular_vector_field(spec, p)).norm() < 1e-9);
      CHECK(spec.model.cone_margin(Vec(-v)) > 1e-6);
      ++flipped;
    }
    CHECK(flipped == 40);
  }
}

TEST_CASE("cone projections of interior causal elements") {
  for (const auto& id : wedge_spec_ids()) {
    CAPTURE(id);
    CausalSymmetricSpec spec = make_wedge_spec(id);
    IndexSampler smp{314};
    const Mat& theta = spec.model.pair.theta;
    for (std::uint64_t i = 0; i < 64; ++i) {
      Vec c = cone_interior_sample(spec, smp, i);
      CHECK(spec.model.cone_margin(c) > 0.0);
      CHECK(relative_margin(spec.c_plus, Vec(spec.grading.p_plus * c)) > 0.0);
      CHECK(relative_margin(spec.c_minus, Vec(-(spec.grading.p_minus * c))) > 0.0);
      Vec v = cone_ray_sample(spec.c_plus, smp, i, 16);
      CHECK(relative_margin(spec.c_minus, Vec(theta * v)) > 0.0);
      CHECK(spec.model.cone_margin(Vec(v - theta * v)) > 0.0);
    }
  }
}

TEST_CASE("spectral gauge matches the restricted root values") {
  for (const std::string id : {"ds2", "ds3", "ds4", "sl2-cayley", "sl2xsl2", "gl2"}) {
    CAPTURE(id);
    CausalSymmetricSpec spec = make_wedge_spec(id);
    RootSystem rs = restricted_roots(spec.model.pair, spec.model.a_basis);
    IndexSampler smp{8};
    for (std::uint64_t i = 0; i < 32; ++i) {
      Vec xa(spec.model.a_basis.cols());
      for (int j = 0; j < xa.size(); ++j) xa[j] = 2.0 * smp.uniform(i, j) - 1.0;
      Vec x = spec.model.a_basis * xa;
      CHECK(s_of_element(spec, x) == doctest::Approx(s_of(rs, xa)).epsilon(1e-9));
    }
  }
  CausalSymmetricSpec ds = make_wedge_spec("ds2");
  Vec rot = ray(ds, 1.0, 1.0);  // elliptic: e + f maps to a rotation
  Vec xp = ds.grading.p_plus * rot, xm = ds.grading.p_minus * rot;
  CHECK_THROWS_AS(s_of_element(ds, Vec(xp + xm)), std::invalid_argument);
}

TEST_CASE("kms grid membership at planted points") {
  const std::vector<double>& grid = kms_time_grid();
  Vec in(3), out(3), pole(3), boosted(3);
  in << 0.0, 1.0, 0.0;
  out << 0.0, -1.0, 0.0;
  pole << 0.0, 0.0, 1.0;
  boosted << std::sinh(0.7), std::cosh(0.7), 0.0;
  CHECK(kms_membership_grid(in, grid));
  CHECK(kms_membership_grid(boosted, grid));
  CHECK_FALSE(kms_membership_grid(out, grid));
  CHECK_FALSE(kms_membership_grid(pole, grid));
}

TEST_CASE("tube fixed points match the real wedge") {
  WedgeReport rep = cayley_fixedpoint_check(500, 11);
  CHECK(rep.samples == 1000);
  CHECK(rep.domain_counts[0] == 500);
  CHECK(rep.domain_counts[1] == 500);
  CHECK(rep.witnesses.empty());
}

TEST_CASE("matrix cone family is nested") {
  auto margin_m = [](double up, double lo, double z, double m) {
    return std::min(std::min(up, lo), up * lo - m * z * z);
  };
  IndexSampler smp{23};
  int positives = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    double up = 2.0 * smp.uniform(i, 0);
    double lo = 2.0 * smp.uniform(i, 1);
    double z = 2.0 * smp.uniform(i, 2) - 1.0;
    if (margin_m(up, lo, z, 1.0) > 0.0) {
      ++positives;
      CHECK(margin_m(up, lo, z, 0.5) > 0.0);
      CHECK(margin_m(up, lo, z, 0.0) > 0.0);
    }
  }
  CHECK(positives > 30);
}

TEST_CASE("equality reports rerun identically and in parallel") {
  CausalSymmetricSpec spec = make_wedge_spec("ds3");
  WedgeReport serial = verify_wedge_equalities(spec, 600, 13, false);
  WedgeReport again = verify_wedge_equalities(spec, 600, 13, false);
  WedgeReport par = verify_wedge_equalities(spec, 600, 13, true);
  REQUIRE(serial.rows.size() == par.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      CHECK(serial.rows[i].tests.margin[k] == par.rows[i].tests.margin[k]);
      CHECK(serial.rows[i].tests.margin[k] == again.rows[i].tests.margin[k]);
      CHECK(serial.rows[i].tests.member[k] == par.rows[i].tests.member[k]);
    }
    CHECK(serial.rows[i].tests.verdict == par.rows[i].tests.verdict);
    CHECK((serial.rows[i].point - par.rows[i].point).norm() == 0.0);
  }
  CHECK(serial.interior == par.interior);
  CHECK(serial.exterior == par.exterior);
  CHECK(serial.indeterminate == par.indeterminate);
}
