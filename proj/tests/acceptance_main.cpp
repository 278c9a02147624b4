// Exit-gated acceptance battery: ten fixed-budget property checks with
// pinned tolerances, one verdict line each. Returns nonzero if any fails.

#include <cmath>
#include <cstdio>
#include <string>

#include "wedgelab/catalog.hpp"
#include "wedgelab/liealg.hpp"
#include "wedgelab/linop.hpp"
#include "wedgelab/models.hpp"
#include "wedgelab/polar.hpp"
#include "wedgelab/quadric.hpp"
#include "wedgelab/ratlp.hpp"
#include "wedgelab/roots.hpp"
#include "wedgelab/sampling.hpp"
#include "wedgelab/wedge.hpp"

using namespace wl;

namespace {

int failures = 0;

void verdict(int k, bool pass, const char* name, const std::string& detail) {
  std::printf("[%2d/10] %s  %-34s %s\n", k, pass ? "PASS" : "FAIL", name,
              detail.c_str());
  failures += pass ? 0 : 1;
}

std::string residual_line(double worst, const char* tol) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "max residual %.2e (tol %s)", worst, tol);
  return buf;
}

Mat rand_mat(const IndexSampler& smp, std::uint64_t index, int rows, int cols,
             int lane0, double scale) {
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m(r, c) = scale * smp.normal(index, lane0 + r * cols + c);
  return m;
}

Vec rand_vec(const IndexSampler& smp, std::uint64_t index, int dim, int lane0,
             double scale) {
  Vec v(dim);
  for (int j = 0; j < dim; ++j) v[j] = scale * smp.normal(index, lane0 + j);
  return v;
}

Mat planted_kernel_matrix(const IndexSampler& smp, std::uint64_t index) {
  Mat d = Mat::Zero(6, 6);
  d(0, 1) = M_PI;
  d(1, 0) = -M_PI;
  d(2, 3) = M_PI / 2.0;
  d(3, 2) = -M_PI / 2.0;
  d(4, 4) = 0.5 + smp.uniform(index, 30);
  d(5, 5) = -(0.5 + smp.uniform(index, 31));
  Mat s = Mat::Identity(6, 6) + rand_mat(smp, index, 6, 6, 32, 0.2);
  if (std::fabs(s.determinant()) < 0.05)
    s = Mat::Identity(6, 6) + rand_mat(smp, index, 6, 6, 32, 0.05);
  return s * d * s.inverse();
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

void criterion_1() {
  LieAlgebra sl2 = make_realization("sl(2)");
  double worst = sl2_conjugation_residual(sl2);
  for (int i = 0; i < 64; ++i) {
    double t = -M_PI + 2.0 * M_PI * i / 63.0;
    worst = std::max(worst, sl2_turn_residual(sl2, t));
  }
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j) {
      double lambda = (0.03 + 0.94 * i / 31.0) * M_PI / 2.0;
      double mu = (0.03 + 0.94 * j / 31.0) * M_PI / 2.0;
      worst = std::max(worst, sl2_sin_formula_residual(sl2, lambda, mu));
    }
  verdict(1, worst < 1e-9, "sl2 identity battery",
          residual_line(worst, "1e-9"));
}

void criterion_2() {
  IndexSampler smp{101};
  double worst = 0.0;
  bool dims = true;
  for (int i = 0; i < 200; ++i) {
    Mat a = rand_mat(smp, i, 6, 6, 0, 0.8);
    KernelResult ks = kernel_sinhc(a);
    KernelResult kc = kernel_cosh(a);
    dims = dims && ks.dim == ks.numeric_dim && kc.dim == kc.numeric_dim;
    worst = std::max({worst, ks.max_principal_angle, kc.max_principal_angle});
  }
  for (int i = 0; i < 200; ++i) {
    Mat a = planted_kernel_matrix(smp, 1000 + i);
    KernelResult ks = kernel_sinhc(a);
    KernelResult kc = kernel_cosh(a);
    dims = dims && ks.dim == 2 && ks.numeric_dim == 2 && kc.dim == 2 &&
           kc.numeric_dim == 2;
    worst = std::max({worst, ks.max_principal_angle, kc.max_principal_angle});
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max principal angle %.2e (tol 1e-7)",
                worst);
  verdict(2, dims && worst < 1e-7, "analytic kernels", buf);
}

void criterion_3() {
  QuadraticSpace ds2 = lorentz_space(2);
  Vec e0 = Vec::Zero(3), e1 = Vec::Zero(3), e2 = Vec::Zero(3);
  e0[0] = 1.0;
  e1[1] = 1.0;
  e2[2] = 1.0;
  Vec dirs[] = {e2, e0, Vec(e0 + e2)};
  double spans[] = {M_PI, 2.0, 3.0};
  double worst = 0.0;
  for (int b = 0; b < 3; ++b)
    for (int i = 0; i < 32; ++i)
      for (int j = 0; j < 32; ++j) {
        double t = -spans[b] + 2.0 * spans[b] * i / 31.0;
        double u = -spans[b] + 2.0 * spans[b] * j / 31.0;
        worst = std::max(worst, geodesic_residual(ds2, e1, dirs[b], t, u));
      }

  IndexSampler smp{303};
  QuadraticSpace s3 = lorentz_space(3);
  double closure = 0.0;
  for (int i = 0; i < 10000; ++i) {
    Vec p = sample_ds_point(smp, i, 3);
    const double ch = std::sqrt(1.0 + p[0] * p[0]);
    Vec u = p.tail(3) / ch;
    Vec timelike(4);
    timelike[0] = ch;
    timelike.tail(3) = p[0] * u;
    Vec w = rand_vec(smp, i, 3, 16, 1.0);
    w -= w.dot(u) * u;
    if (w.norm() < 1e-8) {
      w.setZero();
      w[(std::fabs(u[0]) > 0.5) ? 1 : 0] = 1.0;
      w -= w.dot(u) * u;
    }
    w /= w.norm();
    Vec spacelike = Vec::Zero(4);
    spacelike.tail(3) = w;
    Vec v = (smp.uniform(i, 40) - 0.5) * timelike +
            (smp.uniform(i, 41) - 0.5) * spacelike;
    double t = 3.0 * smp.uniform(i, 42) - 1.5;
    Vec x = quadric_exp(s3, p, Vec(t * v));
    closure = std::max(closure, std::fabs(lorentz_form(x, x) + 1.0));
  }
  char buf[120];
  std::snprintf(buf, sizeof buf,
                "law %.2e on 3x1024 grid, closure %.2e on 1e4 (tol 1e-9)",
                worst, closure);
  verdict(3, worst < 1e-9 && closure < 1e-9, "geodesic law and closure", buf);
}

void criterion_4() {
  int d2 = minkowski_wedge_equalities(2, 5000, 44, true).disagreements;
  int d4 = minkowski_wedge_equalities(4, 5000, 45, true).disagreements;
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "%d disagreements in 2x5000 samples (band 1e-6)", d2 + d4);
  verdict(4, d2 == 0 && d4 == 0, "minkowski four-way equality", buf);
}

void criterion_5() {
  int total = 0;
  for (int d = 2; d <= 4; ++d)
    total += desitter_wedge_equalities(d, 2000, 50 + d, true).disagreements;

  // The modular flow fixes e2; every route must exclude it.
  bool excluded = true;
  auto grid = kms_time_grid();
  for (int d = 2; d <= 4; ++d) {
    Vec e2 = Vec::Zero(d + 1);
    e2[2] = 1.0;
    excluded = excluded && !in_right_wedge(e2);
    Vec hx = Vec::Zero(d + 1);
    hx[0] = e2[1];
    hx[1] = e2[0];
    excluded = excluded && !in_future_cone(hx);
    bool kms = true;
    for (double t : grid)
      kms = kms && in_tube(boost_flow(complexify(e2), Cplx(0.0, t)), true);
    excluded = excluded && !kms;
    excluded = excluded && !in_tube(kappa_h_inv(complexify(e2)), true);
    excluded = excluded && !invert_wedge_chart(e2).inside;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "%d disagreements in 3x2000 samples, base point excluded: %s",
                total, excluded ? "yes" : "NO");
  verdict(5, total == 0 && excluded, "de Sitter five-way equality", buf);
}

void criterion_6() {
  int disagreements = 0;
  std::size_t pos_fail = 0;
  for (const char* id : {"sl2-cayley", "sl2xsl2"}) {
    CausalSymmetricSpec spec = make_wedge_spec(id);
    disagreements += verify_wedge_equalities(spec, 2000, 66, true)
                         .disagreements;
    pos_fail += polar_implies_positive(spec, 1000, 67).witnesses.size();
  }
  char buf[110];
  std::snprintf(buf, sizeof buf,
                "%d disagreements in 2x2000, %zu inclusion failures in 2x1000",
                disagreements, pos_fail);
  verdict(6, disagreements == 0 && pos_fail == 0,
          "transported wedge equality", buf);
}

void criterion_7() {
  Pipeline p = run_pipeline("slC4-su22");
  const LieAlgebra& g = p.bundle.pair.g;
  Mat diag = Mat::Zero(4, 4);
  diag(0, 0) = 2.0;
  diag(1, 1) = 2.0;
  diag(2, 2) = 1.0;
  diag(3, 3) = -5.0;
  Vec z = to_coords(g, realified(diag, Mat::Zero(4, 4)));
  Vec z_a = a_coefficients(p.rs, z);

  bool in_max = max_cone_margin(p.cones, z_a) > 0.0;
  RatMat gens;
  for (Eigen::Index j = 0; j < p.cones.min_generators.cols(); ++j)
    gens.push_back(to_rational_vec(p.cones.min_generators.col(j)));
  bool out_min = !cone_member(gens, to_rational_vec(z_a));
  std::size_t weyl = weyl_group_k(p.rs).size();
  int ncomp = 0, comp = 0;
  for (const auto& r : p.rs.roots) (r.compact ? comp : ncomp) += 1;

  int inclusion_fail = 0;
  for (const std::string& id : model_ids())
    if (!certify_cones(run_pipeline(id).cones).inclusion) inclusion_fail += 1;

  char buf[140];
  std::snprintf(buf, sizeof buf,
                "element in Cmax\\Cmin: %s, |W_k|=%zu, split 8+4: %s, "
                "inclusion certified 18/%d",
                in_max && out_min ? "yes" : "NO", weyl,
                ncomp == 8 && comp == 4 ? "yes" : "NO", 18 - inclusion_fail);
  verdict(7, in_max && out_min && weyl == 4 && ncomp == 8 && comp == 4 &&
                 inclusion_fail == 0,
          "root and cone worked example", buf);
}

void criterion_8() {
  IndexSampler smp{808};
  double limit_worst = 0.0;
  const char* reals[] = {"sl2-cayley", "sl2xsl2", "gl2",       "ds2",
                         "ds3",        "ds4",     "slC4-su22", "sl4-split"};
  for (const char* id : reals) {
    ModelBundle b = make_model(id);
    for (int i = 0; i < 200; ++i) {
      Vec x = rand_vec(smp, i, static_cast<int>(b.pair.g.dim), 0, 0.6);
      limit_worst =
          std::max(limit_worst, grading_limit_error(b.pair.g, b.pair.h, x, 1));
      limit_worst = std::max(
          limit_worst, grading_limit_error(b.pair.g, b.pair.h, x, -1));
    }
  }

  int proj_fail = 0;
  for (const std::string& id : wedge_spec_ids()) {
    CausalSymmetricSpec spec = make_wedge_spec(id);
    for (int i = 0; i < 200; ++i) {
      Vec c = cone_interior_sample(spec, smp, 4000 + i);
      Vec up = spec.grading.p_plus * c;
      Vec dn = spec.grading.p_minus * c;
      if (!(relative_margin(spec.c_plus, up) > 0.0)) proj_fail += 1;
      if (!(relative_margin(spec.c_minus, Vec(-dn)) > 0.0)) proj_fail += 1;
    }
  }

  double cayley_worst = 0.0;
  for (int k = 0; k < 32; ++k) {
    double t = M_PI * (k + 1) / 33.0;
    CVec z(3);
    z << Cplx(0.0, std::sin(t)), Cplx(0.0, 0.0), Cplx(std::cos(t), 0.0);
    CVec w = kappa_h(z);
    Vec expected(3);
    expected << 0.0, std::sin(t), std::cos(t);
    cayley_worst = std::max(cayley_worst, (w - expected.cast<Cplx>()).norm());
    ChartInversion ch = invert_wedge_chart(w.real());
    cayley_worst = std::max(cayley_worst, std::fabs(ch.rho - t));
  }

  char buf[140];
  std::snprintf(buf, sizeof buf,
                "limit %.2e (tol 1e-8), %d projection failures, "
                "cayley ray %.2e (tol 1e-9)",
                limit_worst, proj_fail, cayley_worst);
  verdict(8, limit_worst < 1e-8 && proj_fail == 0 && cayley_worst < 1e-9,
          "grading projections and wick ray", buf);
}

void criterion_9() {
  ModelBundle sl2 = make_model("sl2-cayley");
  PolarContext ell = make_polar_context(sl2.pair.g, sl2.pair.tau,
                                        Mat(sl2.pair.theta * sl2.pair.tau));

  LieAlgebra gl2 = make_realization("gl(2)");
  Mat half = Mat::Zero(2, 2);
  half(0, 0) = 0.5;
  half(1, 1) = -0.5;
  Vec hg = to_coords(gl2, half);
  Mat taug = tau_from_euler(gl2, hg);
  PolarContext gell =
      make_polar_context(gl2, taug, Mat(cartan_theta(gl2) * taug));

  ModelBundle ds3 = make_model("ds3");
  PolarContext dctx =
      make_polar_context(ds3.pair.g, ds3.pair.tau, ds3.pair.theta);

  IndexSampler smp{909};
  int mismatches = 0;
  const PolarContext* ctxs[] = {&ell, &gell, &dctx};
  int offset = 0;
  for (const PolarContext* ctx : ctxs) {
    const int qdim = static_cast<int>(ctx->q_basis.cols());
    const int m = static_cast<int>(ctx->qms_basis.cols());
    for (int i = 0; i < 500; ++i) {
      Vec x = ctx->qms_basis * rand_vec(smp, i, m, offset, 0.8);
      if (!exp_regular(*ctx, x)) continue;
      bool spectral = polar_regular(*ctx, x);
      bool direct = tangent_polar_rank(*ctx, x) == qdim;
      mismatches += spectral == direct ? 0 : 1;
    }
    offset += 12;
  }

  Vec emf = Vec::Zero(3);
  emf[1] = 1.0;
  emf[2] = -1.0;
  auto pol = singular_parameters(ell, emf, 2.0, SingularKind::PolarMap);
  auto ex = singular_parameters(ell, emf, 2.0, SingularKind::ExponentialMap);
  bool rays = !pol.empty() && !ex.empty() &&
              std::fabs(pol[0] - M_PI / 4.0) < 1e-3 &&
              std::fabs(ex[0] - M_PI / 2.0) < 1e-3;
  char buf[120];
  std::snprintf(buf, sizeof buf,
                "%d mismatches in 3x500, ray at pi/4 and pi/2: %s",
                mismatches, rays ? "yes" : "NO");
  verdict(9, mismatches == 0 && rays, "regularity criteria", buf);
}

void criterion_10() {
  const char* ids[] = {"sl2-split",   "sl4-split",   "sl6-split",
                       "sp2-cayley",  "sp4-cayley",  "sp6-cayley",
                       "so22-cayley", "so23-cayley", "so24-cayley"};
  int bad = 0;
  for (const char* id : ids) {
    RealizedCheck rc = check_realization(id);
    if (!rc.ok || rc.dim_g1 != rc.expected_dim_g1 ||
        rc.rank_a != rc.expected_rank)
      bad += 1;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d/9 series realizations match exactly",
                9 - bad);
  verdict(10, bad == 0, "catalog dimension cross-check", buf);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("acceptance: %d/10 passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
