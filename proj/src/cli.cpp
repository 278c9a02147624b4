#include "wedgelab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "wedgelab/catalog.hpp"
#include "wedgelab/liealg.hpp"
#include "wedgelab/linop.hpp"
#include "wedgelab/models.hpp"
#include "wedgelab/polar.hpp"
#include "wedgelab/quadric.hpp"
#include "wedgelab/ratlp.hpp"
#include "wedgelab/report.hpp"
#include "wedgelab/roots.hpp"
#include "wedgelab/sampling.hpp"
#include "wedgelab/wedge.hpp"

namespace wl {

namespace {

std::string trimmed(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_int(const std::string& s, long long* out) {
  auto res = std::from_chars(s.data(), s.data() + s.size(), *out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool parse_u64(const std::string& s, std::uint64_t* out) {
  auto res = std::from_chars(s.data(), s.data() + s.size(), *out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool parse_real(const std::string& s, double* out) {
  char* end = nullptr;
  *out = std::strtod(s.c_str(), &end);
  return end != nullptr && *end == '\0' && !s.empty();
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

// 6x6 with eigenvalues +-i pi, +-i pi/2 and two reals, conjugated by a
// well-conditioned similarity.
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

Mat realified(const Mat& re, const Mat& im) {
  const Eigen::Index m = re.rows();
  Mat r = Mat::Zero(2 * m, 2 * m);
  r.topLeftCorner(m, m) = re;
  r.bottomRightCorner(m, m) = re;
  r.topRightCorner(m, m) = -im;
  r.bottomLeftCorner(m, m) = im;
  return r;
}

PolarContext sl2_elliptic_context() {
  ModelBundle b = make_model("sl2-cayley");
  Mat sigma = b.pair.theta * b.pair.tau;
  return make_polar_context(b.pair.g, b.pair.tau, sigma);
}

PolarContext gl2_elliptic_context() {
  LieAlgebra g = make_realization("gl(2)");
  Mat half = Mat::Zero(2, 2);
  half(0, 0) = 0.5;
  half(1, 1) = -0.5;
  Vec h = to_coords(g, half);
  Mat tau = tau_from_euler(g, h);
  Mat sigma = cartan_theta(g) * tau;
  return make_polar_context(g, tau, sigma);
}

SuiteReport suite_linop(int n, std::uint64_t seed, double ts) {
  SuiteReport rep{"linop", seed, n, {}};

  double worst = 0.0;
  for (int i = 0; i <= 60; ++i) {
    double t = 3.0 * i / 60.0;
    Cplx z(t * t, 0.0);
    worst = std::max(worst,
                     std::abs(entire_scalar(Entire::CBig, z) - std::cos(t)));
    worst = std::max(
        worst, std::abs(t * entire_scalar(Entire::SBig, z) - std::sin(t)));
    worst = std::max(worst, std::abs(entire_scalar(Entire::Exp, Cplx(0, t)) -
                                     Cplx(std::cos(t), std::sin(t))));
  }
  rep.checks.push_back(
      {"entire-scalar-grid", worst <= 1e-12 * ts, worst, 1e-12 * ts});

  if (n <= 0) return rep;
  IndexSampler smp{seed};

  double w2 = 0.0;
  const Entire fs[] = {Entire::Exp,   Entire::Cosh, Entire::Sinh,
                       Entire::Sinhc, Entire::CBig, Entire::SBig};
  for (int i = 0; i < n; ++i) {
    Mat a = rand_mat(smp, i, 5, 5, 0, 0.6);
    for (Entire f : fs) {
      Mat series = apply_entire(f, a);
      Mat spectral = apply_entire_spectral(f, a);
      w2 = std::max(w2, (series - spectral).norm() /
                            std::max(1.0, series.norm()));
    }
  }
  rep.checks.push_back({"series-vs-spectral", w2 <= 1e-8 * ts, w2, 1e-8 * ts});

  double w3 = 0.0;
  bool dims_ok = true;
  for (int i = 0; i < n; ++i) {
    Mat a = planted_kernel_matrix(smp, i);
    KernelResult ks = kernel_sinhc(a);
    KernelResult kc = kernel_cosh(a);
    dims_ok = dims_ok && ks.dim == 2 && ks.numeric_dim == 2 && kc.dim == 2 &&
              kc.numeric_dim == 2;
    w3 = std::max({w3, ks.max_principal_angle, kc.max_principal_angle});
  }
  rep.checks.push_back(
      {"planted-kernels", dims_ok && w3 <= 1e-7 * ts, w3, 1e-7 * ts});

  double w4 = 0.0;
  bool rank_ok = true;
  for (int i = 0; i < n; ++i) {
    Mat b = rand_mat(smp, i, 6, 3, 70, 1.0);
    Mat c = rand_mat(smp, i, 3, 6, 90, 1.0);
    Mat left = nullspace(Mat(b * c));
    Mat right = nullspace(c);
    rank_ok = rank_ok && left.cols() == 3 && right.cols() == 3;
    if (left.cols() == right.cols() && left.cols() > 0) {
      Vec ang = principal_angles(left, right);
      w4 = std::max(w4, ang.maxCoeff());
    }
  }
  rep.checks.push_back(
      {"product-nullspace", rank_ok && w4 <= 1e-7 * ts, w4, 1e-7 * ts});
  return rep;
}

SuiteReport suite_liealg(int n, std::uint64_t seed, double ts) {
  SuiteReport rep{"liealg", seed, n, {}};

  double w1 = 0.0, w2 = 0.0;
  for (const std::string& id : model_ids()) {
    ModelBundle b = make_model(id);
    w1 = std::max({w1, closure_residual(b.pair.g),
                   jacobi_residual(b.pair.g, 12, 3)});
    w2 = std::max({w2, symmetric_pair_residual(b.pair),
                   h_equals_qq_residual(b.pair.g, b.pair.tau)});
  }
  rep.checks.push_back({"closure-jacobi", w1 <= 1e-8 * ts, w1, 1e-8 * ts});
  rep.checks.push_back({"pair-involutions", w2 <= 1e-7 * ts, w2, 1e-7 * ts});

  LieAlgebra sl2 = make_realization("sl(2)");
  double w3 = sl2_conjugation_residual(sl2);
  for (int i = 0; i < 64; ++i) {
    double t = -M_PI + 2.0 * M_PI * i / 63.0;
    w3 = std::max(w3, sl2_turn_residual(sl2, t));
  }
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j) {
      double lambda = 0.05 + 1.45 * i / 31.0;
      double mu = 0.05 + 1.45 * j / 31.0;
      if (4.0 * lambda * mu < M_PI * M_PI * 0.98)
        w3 = std::max(w3, sl2_sin_formula_residual(sl2, lambda, mu));
    }
  rep.checks.push_back({"sl2-battery", w3 <= 1e-9 * ts, w3, 1e-9 * ts});

  if (n <= 0) return rep;
  IndexSampler smp{seed};

  Vec h_sl2 = Vec::Zero(3);
  h_sl2[0] = 1.0;
  double w4 = 0.0;
  Mat tau_sl2 = tau_from_euler(sl2, h_sl2);
  for (int i = 0; i < std::min(n, 64); ++i) {
    Vec x = rand_vec(smp, i, 3, 0, 1.0);
    CVec z = x.cast<Cplx>();
    CVec k1 = kappa_apply(sl2, h_sl2, z);
    CVec k2 = kappa_apply(sl2, h_sl2, k1);
    CVec k4 = kappa_apply(sl2, h_sl2, kappa_apply(sl2, h_sl2, k2));
    w4 = std::max(w4, (k4 - z).norm());
    w4 = std::max(w4, (k2 - (tau_sl2 * x).cast<Cplx>()).norm());
    w4 = std::max(w4, (kappa_inv_apply(sl2, h_sl2, k1) - z).norm());
  }
  rep.checks.push_back({"kappa-order-four", w4 <= 1e-9 * ts, w4, 1e-9 * ts});

  double w5 = 0.0;
  const char* ids[] = {"sl2-cayley", "ds3", "sl4-split", "gl2"};
  for (const char* id : ids) {
    ModelBundle b = make_model(id);
    for (int i = 0; i < n; ++i) {
      Vec x = rand_vec(smp, i, static_cast<int>(b.pair.g.dim), 8, 0.6);
      w5 = std::max(w5, grading_limit_error(b.pair.g, b.pair.h, x, +1));
      w5 = std::max(w5, grading_limit_error(b.pair.g, b.pair.h, x, -1));
    }
  }
  rep.checks.push_back({"grading-limit", w5 <= 1e-7 * ts, w5, 1e-7 * ts});
  return rep;
}

SuiteReport suite_roots(int n, std::uint64_t seed, double ts) {
  SuiteReport rep{"roots", seed, n, {}};

  int fail = 0;
  for (const std::string& id : model_ids()) {
    Pipeline p = run_pipeline(id);
    ConeChecks cc = certify_cones(p.cones);
    bool ok = cc.min_pointed && cc.max_solid && cc.inclusion;
    // The LP generating certificate must agree with the numeric rank of the
    // coroot span; a central direction (gl2) legitimately breaks generation.
    int grank = static_cast<int>(
        Mat(p.cones.min_generators).colPivHouseholderQr().rank());
    ok = ok && cc.min_generating ==
                   (grank == static_cast<int>(p.bundle.a_basis.cols()));
    ok = ok && !weyl_group_k(p.rs).empty();
    ok = ok && max_cone_margin(p.cones, p.cs.h_causal_a) > 0.0;
    RatMat gens;
    for (Eigen::Index j = 0; j < p.cones.min_generators.cols(); ++j)
      gens.push_back(to_rational_vec(p.cones.min_generators.col(j)));
    ok = ok && cone_member(gens, to_rational_vec(p.cs.h_causal_a));
    fail += ok ? 0 : 1;
  }
  rep.checks.push_back({"pipelines-certified", fail == 0, double(fail), 0.0});

  {
    Pipeline p = run_pipeline("slC4-su22");
    const LieAlgebra& g = p.bundle.pair.g;
    Mat diag = Mat::Zero(4, 4);
    diag(0, 0) = 2.0;
    diag(1, 1) = 2.0;
    diag(2, 2) = 1.0;
    diag(3, 3) = -5.0;
    Vec z = to_coords(g, realified(diag, Mat::Zero(4, 4)));
    Vec z_a = a_coefficients(p.rs, z);
    Vec z_expected(3);
    z_expected << 2, 4, 5;

    int ncomp = 0, comp = 0;
    for (const auto& r : p.rs.roots) (r.compact ? comp : ncomp) += 1;

    double dev = (z_a - z_expected).norm();
    dev = std::max(dev, std::fabs(s_of(p.rs, z_a) - 12.0));
    dev = std::max(dev, std::fabs(max_cone_margin(p.cones, z_a) - 1.0));
    dev = std::max(dev, std::fabs(double(weyl_group_k(p.rs).size()) - 4.0));
    dev = std::max(dev, std::fabs(double(p.rs.roots.size()) - 12.0));
    dev = std::max(dev, std::fabs(double(ncomp) - 8.0));
    dev = std::max(dev, std::fabs(double(comp) - 4.0));

    RatMat gens;
    for (Eigen::Index j = 0; j < p.cones.min_generators.cols(); ++j)
      gens.push_back(to_rational_vec(p.cones.min_generators.col(j)));
    RatVec z_rat = to_rational_vec(z_a);
    bool outside_min = !cone_member(gens, z_rat);
    RatVec phi;
    bool separated = separating_functional(gens, z_rat, &phi);
    bool ok = outside_min && separated && dev <= 1e-7 * ts;
    rep.checks.push_back({"worked-example", ok, dev, 1e-7 * ts});
  }

  if (n <= 0) return rep;
  IndexSampler smp{seed};
  double w = 0.0;
  const char* ids[] = {"slC4-su22", "sp4-cayley", "ds3"};
  int offset = 0;
  for (const char* id : ids) {
    Pipeline p = run_pipeline(id);
    auto weyl = weyl_group_k(p.rs);
    const int r = static_cast<int>(p.rs.a_basis.cols());
    for (int i = 0; i < n; ++i) {
      Vec x = p.cs.h_causal_a + rand_vec(smp, i, r, offset, 0.35);
      double s0 = s_of(p.rs, x);
      double m0 = max_cone_margin(p.cones, x);
      for (const Mat& wmat : weyl) {
        Vec wx = wmat * x;
        w = std::max(w, std::fabs(s_of(p.rs, wx) - s0));
        w = std::max(w, std::fabs(max_cone_margin(p.cones, wx) - m0));
      }
    }
    offset += 8;
  }
  rep.checks.push_back({"weyl-invariance", w <= 1e-8 * ts, w, 1e-8 * ts});
  return rep;
}

SuiteReport suite_polar(int n, std::uint64_t seed, double ts) {
  SuiteReport rep{"polar", seed, n, {}};

  PolarContext ell = sl2_elliptic_context();
  Vec emf = Vec::Zero(3), epf = Vec::Zero(3);
  emf[1] = 1.0;
  emf[2] = -1.0;
  epf[1] = 1.0;
  epf[2] = 1.0;
  auto pol = singular_parameters(ell, emf, 2.5, SingularKind::PolarMap);
  auto ex = singular_parameters(ell, emf, 2.5, SingularKind::ExponentialMap);
  bool sizes = pol.size() == 2 && ex.size() == 1 &&
               singular_parameters(ell, epf, 2.5, SingularKind::PolarMap)
                   .empty() &&
               singular_parameters(ell, epf, 2.5,
                                   SingularKind::ExponentialMap)
                   .empty();
  double dev = 1.0;
  if (sizes)
    dev = std::max({std::fabs(pol[0] - M_PI / 4.0),
                    std::fabs(pol[1] - 3.0 * M_PI / 4.0),
                    std::fabs(ex[0] - M_PI / 2.0)});
  rep.checks.push_back(
      {"singular-ray", sizes && dev <= 1e-3 * ts, dev, 1e-3 * ts});

  if (n <= 0) return rep;
  IndexSampler smp{seed};
  int mismatches = 0;
  ModelBundle ds3 = make_model("ds3");
  PolarContext ctxs[] = {std::move(ell), gl2_elliptic_context(),
                         make_polar_context(ds3.pair.g, ds3.pair.tau,
                                            ds3.pair.theta)};
  int offset = 0;
  for (const PolarContext& ctx : ctxs) {
    const int qdim = static_cast<int>(ctx.q_basis.cols());
    const int m = static_cast<int>(ctx.qms_basis.cols());
    for (int i = 0; i < n; ++i) {
      Vec x = ctx.qms_basis * rand_vec(smp, i, m, offset, 0.8);
      bool spectral = polar_regular(ctx, x);
      bool direct = tangent_polar_rank(ctx, x) == qdim;
      mismatches += spectral == direct ? 0 : 1;
    }
    offset += 12;
  }
  rep.checks.push_back(
      {"regularity-agreement", mismatches == 0, double(mismatches), 0.0});
  return rep;
}

SuiteReport suite_quadric(int n, std::uint64_t seed, double ts) {
  SuiteReport rep{"quadric", seed, n, {}};

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
  rep.checks.push_back(
      {"geodesic-law", worst <= 1e-9 * ts, worst, 1e-9 * ts});

  if (n <= 0) return rep;

  int d1 = minkowski_wedge_equalities(2, n, seed, true).disagreements +
           minkowski_wedge_equalities(4, n, seed + 1, true).disagreements;
  rep.checks.push_back({"minkowski-four-way", d1 == 0, double(d1), 0.0});

  int d2 = 0;
  for (int d = 2; d <= 4; ++d)
    d2 += desitter_wedge_equalities(d, n, seed + d, true).disagreements;
  rep.checks.push_back({"desitter-five-way", d2 == 0, double(d2), 0.0});

  IndexSampler smp{seed + 9};
  QuadraticSpace s3 = lorentz_space(3);
  double w2 = 0.0, w3 = 0.0;
  for (int i = 0; i < n; ++i) {
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
    w2 = std::max(w2, std::fabs(lorentz_form(x, x) + 1.0));
    Vec xs = quadric_exp_series(s3, p, Vec(t * v));
    w3 = std::max(w3, (x - xs).norm());
  }
  rep.checks.push_back({"exp-closure", w2 <= 1e-9 * ts, w2, 1e-9 * ts});
  rep.checks.push_back(
      {"exp-series-agreement", w3 <= 1e-8 * ts, w3, 1e-8 * ts});
  return rep;
}

SuiteReport suite_wedge(int n, std::uint64_t seed, double ts) {
  SuiteReport rep{"wedge", seed, n, {}};

  int construct_fail = 0;
  for (const std::string& id : wedge_spec_ids()) {
    try {
      make_wedge_spec(id);
    } catch (const std::exception&) {
      construct_fail += 1;
    }
  }
  rep.checks.push_back({"spec-construction", construct_fail == 0,
                        double(construct_fail), 0.0});

  if (n <= 0) return rep;

  for (const std::string& id : wedge_spec_ids()) {
    if (id == "gl2") continue;
    CausalSymmetricSpec spec = make_wedge_spec(id);
    WedgeReport wr = verify_wedge_equalities(spec, n, seed, true);
    rep.checks.push_back({"equalities-" + id, wr.disagreements == 0,
                          double(wr.disagreements), 0.0});
  }

  int pos_fail = 0;
  for (const char* id : {"sl2-cayley", "sl2xsl2", "ds3"}) {
    CausalSymmetricSpec spec = make_wedge_spec(id);
    WedgeReport wr = polar_implies_positive(spec, n, seed);
    pos_fail += static_cast<int>(wr.witnesses.size());
  }
  rep.checks.push_back(
      {"polar-implies-positive", pos_fail == 0, double(pos_fail), 0.0});

  WedgeReport cr = cayley_fixedpoint_check(n, seed);
  int tube_fail = 2 * n - cr.domain_counts[0] - cr.domain_counts[1];
  rep.checks.push_back(
      {"tube-fixed-points", tube_fail == 0, double(tube_fail), 0.0});
  return rep;
}

SuiteReport build_suite(const std::string& s, const RunConfig& cfg) {
  const double ts = cfg.tol_scale;
  auto eff = [&](int dflt) { return cfg.n < 0 ? dflt : cfg.n; };
  if (s == "linop") return suite_linop(eff(200), cfg.seed, ts);
  if (s == "liealg") return suite_liealg(eff(96), cfg.seed, ts);
  if (s == "roots") return suite_roots(eff(64), cfg.seed, ts);
  if (s == "polar") return suite_polar(eff(500), cfg.seed, ts);
  if (s == "quadric") return suite_quadric(eff(2000), cfg.seed, ts);
  if (s == "wedge") return suite_wedge(eff(900), cfg.seed, ts);
  throw ConfigError("unknown suite: " + s);
}

PointRep word_point(const CausalSymmetricSpec& spec, const IndexSampler& smp,
                    std::uint64_t i) {
  const LieAlgebra& g = spec.model.pair.g;
  std::vector<std::pair<Vec, double>> word;
  word.push_back({spec.h_causal, 2.0 * smp.uniform(i, 0) - 1.0});
  Vec dir = Vec::Zero(g.dim);
  for (int j = 0; j < g.dim; ++j) dir[j] = smp.normal(i, 8 + j);
  double nrm = dir.norm();
  if (nrm > 1.0) dir /= nrm;
  word.push_back({dir, 0.8 * smp.uniform(i, 2)});
  return make_point(g, word);
}

void factor_headers(const CausalSymmetricSpec& spec,
                    std::vector<std::string>* header) {
  if (spec.factors.empty()) {
    const int na = static_cast<int>(spec.model.pair.g.n);
    for (int r = 0; r < na; ++r)
      for (int c = 0; c < na; ++c)
        header->push_back("a" + std::to_string(r) + std::to_string(c));
    return;
  }
  for (std::size_t f = 0; f < spec.factors.size(); ++f)
    for (int k = 0; k <= spec.factors[f].d; ++k)
      header->push_back("f" + std::to_string(f) + "_x" + std::to_string(k));
}

void factor_cells(const CausalSymmetricSpec& spec, const PointRep& p,
                  std::vector<std::string>* cells) {
  if (spec.factors.empty()) {
    for (Eigen::Index r = 0; r < p.ambient.rows(); ++r)
      for (Eigen::Index c = 0; c < p.ambient.cols(); ++c)
        cells->push_back(shortest_decimal(p.ambient(r, c)));
    return;
  }
  for (const auto& f : spec.factors) {
    Vec x = factor_point(spec, f, p);
    for (int k = 0; k < x.size(); ++k)
      cells->push_back(shortest_decimal(x[k]));
  }
}

}  // namespace

RunConfig parse_config_text(const std::string& text,
                            const std::string& origin) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key=value, got '" + line + "'");
    std::string key = trimmed(line.substr(0, eq));
    std::string val = trimmed(line.substr(eq + 1));
    if (key.empty()) fail("missing key before '='");
    if (val.empty()) fail("missing value for key '" + key + "'");
    if (key == "n") {
      long long v = 0;
      if (!parse_int(val, &v) || v < 0)
        fail("value for 'n' must be a non-negative integer, got '" + val +
             "'");
      cfg.n = static_cast<int>(v);
    } else if (key == "seed") {
      std::uint64_t v = 0;
      if (!parse_u64(val, &v))
        fail("value for 'seed' must be an unsigned integer, got '" + val +
             "'");
      cfg.seed = v;
    } else if (key == "tol_scale") {
      double v = 0.0;
      if (!parse_real(val, &v) || !(v > 0.0))
        fail("value for 'tol_scale' must be a positive real, got '" + val +
             "'");
      cfg.tol_scale = v;
    } else if (key == "out") {
      cfg.out = val;
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

int run_catalog(std::ostream& os, const std::string& family) {
  std::vector<CatalogEntry> rows =
      family.empty() ? catalog() : catalog_family(family);

  os << std::left << std::setw(10) << "family" << std::setw(24) << "g"
     << std::setw(28) << "dual" << std::setw(28) << "fixed" << std::setw(26)
     << "roots" << std::setw(20) << "euler" << "g1" << '\n';
  for (const auto& e : rows) {
    os << std::left << std::setw(10) << e.family << std::setw(24) << e.g_label
       << std::setw(28) << e.gc_label << std::setw(28) << e.h_label
       << std::setw(26) << e.root_type << std::setw(20) << e.euler_label
       << e.g1_label << '\n';
    if (!e.note.empty()) os << "    note: " << e.note << '\n';
    if (!e.realized) {
      os << "    realized: none (data only)" << '\n';
      continue;
    }
    std::string joined;
    for (const auto& id : e.model_ids)
      joined += (joined.empty() ? "" : " ") + id;
    os << "    realized: " << joined << '\n';
  }

  int bad = 0;
  os << '\n' << "realized checks:" << '\n';
  for (const auto& e : rows)
    for (const auto& id : e.model_ids) {
      RealizedCheck c = check_realization(id);
      os << "  " << std::left << std::setw(14) << c.model_id << "rank "
         << c.rank_a << "/" << c.expected_rank << "   dim g1 " << c.dim_g1
         << "/" << c.expected_dim_g1 << "   pair residual "
         << shortest_decimal(c.pair_residual) << "   "
         << (c.ok ? "ok" : "MISMATCH") << '\n';
      bad += c.ok ? 0 : 1;
    }
  os << (bad == 0 ? "all realized rows verified"
                  : std::to_string(bad) + " realized rows failed")
     << '\n';
  return bad == 0 ? 0 : 1;
}

int run_verify(std::ostream& os, const std::string& suite,
               const RunConfig& cfg) {
  static const char* order[] = {"linop", "liealg", "roots",
                                "polar", "quadric", "wedge"};
  bool known = suite == "all";
  for (const char* s : order) known = known || suite == s;
  if (!known) throw ConfigError("unknown suite: " + suite);

  nlohmann::json j;
  int failures = 0;
  if (suite == "all") {
    j["suites"] = nlohmann::json::array();
    for (const char* s : order) {
      SuiteReport rep = build_suite(s, cfg);
      failures += rep.failures();
      j["suites"].push_back(report_json(rep));
    }
    j["failures"] = failures;
  } else {
    SuiteReport rep = build_suite(suite, cfg);
    failures = rep.failures();
    j = report_json(rep);
  }

  std::string text = j.dump(2) + "\n";
  os << text;
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ConfigError("cannot open output path: " + cfg.out);
    f << text;
  }
  return failures == 0 ? 0 : 1;
}

int run_sample(std::ostream& os, const std::string& spec_id,
               const std::string& domain, int n, std::uint64_t seed,
               const std::string& out_path) {
  if (n < 0) throw ConfigError("n must be non-negative");

  auto ids = wedge_spec_ids();
  if (std::find(ids.begin(), ids.end(), spec_id) == ids.end()) {
    auto models = model_ids();
    if (std::find(models.begin(), models.end(), spec_id) != models.end())
      throw ConfigError("spec '" + spec_id +
                        "' has no sampling domains attached");
    throw ConfigError("unknown spec: " + spec_id);
  }
  if (domain != "positivity" && domain != "polar" && domain != "kms" &&
      domain != "tube")
    throw ConfigError("unknown domain: " + domain);
  if (domain == "kms" && spec_id == "gl2")
    throw ConfigError(
        "domain 'kms' needs a causal factor decomposition; 'gl2' has none");
  if (domain == "tube" && spec_id != "ds2")
    throw ConfigError("domain 'tube' is only realized for spec 'ds2'");

  CausalSymmetricSpec spec = make_wedge_spec(spec_id);
  IndexSampler smp{seed};
  std::vector<std::string> header{"index"};
  std::vector<std::vector<std::string>> rows;
  rows.reserve(n);

  if (domain == "positivity") {
    factor_headers(spec, &header);
    header.push_back("margin_pos");
    header.push_back("member_pos");
    for (int i = 0; i < n; ++i) {
      PointRep p = word_point(spec, smp, i);
      std::vector<std::string> cells{std::to_string(i)};
      factor_cells(spec, p, &cells);
      double m = positivity_margin(spec, p);
      cells.push_back(shortest_decimal(m));
      cells.push_back(m > 0 ? "1" : "0");
      rows.push_back(std::move(cells));
    }
  } else if (domain == "polar") {
    for (int k = 0; k < spec.model.pair.g.dim; ++k)
      header.push_back("x" + std::to_string(k));
    header.push_back("margin_polar");
    header.push_back("s_value");
    header.push_back("member_polar");
    for (int i = 0; i < n; ++i) {
      Vec x = polar_domain_sample(spec, smp, i);
      std::vector<std::string> cells{std::to_string(i)};
      for (int k = 0; k < x.size(); ++k)
        cells.push_back(shortest_decimal(x[k]));
      double m = polar_domain_margin(spec, x);
      cells.push_back(shortest_decimal(m));
      Vec xh = spec.grading.p_plus * x - spec.grading.p_minus * x;
      cells.push_back(shortest_decimal(s_of_element(spec, xh)));
      cells.push_back(m > 0 ? "1" : "0");
      rows.push_back(std::move(cells));
    }
  } else if (domain == "kms") {
    factor_headers(spec, &header);
    header.push_back("margin_kms");
    header.push_back("member_kms");
    auto grid = kms_time_grid();
    const double tmid = grid[grid.size() / 2];
    for (int i = 0; i < n; ++i) {
      PointRep p = word_point(spec, smp, i);
      std::vector<std::string> cells{std::to_string(i)};
      factor_cells(spec, p, &cells);
      double margin = std::numeric_limits<double>::infinity();
      bool member = true;
      for (const auto& f : spec.factors) {
        Vec xf = factor_point(spec, f, p);
        margin = std::min(
            margin, tube_margin(boost_flow(complexify(xf), Cplx(0.0, tmid))));
        member = member && kms_membership_grid(xf, grid);
      }
      cells.push_back(shortest_decimal(margin));
      cells.push_back(member ? "1" : "0");
      rows.push_back(std::move(cells));
    }
  } else {
    header.insert(header.end(),
                  {"x0", "x1", "x2", "rho", "boost", "margin_tube",
                   "member_tube"});
    for (int i = 0; i < n; ++i) {
      double s = 5.0 * smp.uniform(i, 0) - 2.5;
      double rho = 0.03 + (M_PI - 0.06) * smp.uniform(i, 1);
      Vec x(3);
      x << std::sin(rho) * std::sinh(s), std::sin(rho) * std::cosh(s),
          std::cos(rho);
      CVec z = kappa_h_inv(complexify(x));
      std::vector<std::string> cells{std::to_string(i)};
      for (int k = 0; k < 3; ++k) cells.push_back(shortest_decimal(x[k]));
      cells.push_back(shortest_decimal(rho));
      cells.push_back(shortest_decimal(s));
      cells.push_back(shortest_decimal(tube_margin(z)));
      cells.push_back(in_tube(z, true) ? "1" : "0");
      rows.push_back(std::move(cells));
    }
  }

  std::ostringstream buf;
  write_csv(buf, header, rows);
  if (out_path.empty()) {
    os << buf.str();
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output path: " + out_path);
    f << buf.str();
  }
  return 0;
}

}  // namespace wl
