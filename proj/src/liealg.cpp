#include "wedgelab/liealg.hpp"

#include "wedgelab/tolerances.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace wl {

namespace {

constexpr double kPi = 3.14159265358979323846;

Mat unit(int n, int i, int j) {
  Mat e = Mat::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

void finalize(LieAlgebra& g) {
  g.dim = int(g.basis.size());
  g.n = int(g.basis.front().rows());
  g.gram.resize(g.dim, g.dim);
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j <= i; ++j)
      g.gram(i, j) = g.gram(j, i) = (g.basis[i].transpose() * g.basis[j]).trace();
  g.gram_inv = g.gram.ldlt().solve(Mat::Identity(g.dim, g.dim));

  g.ad_basis.resize(g.dim);
  for (int i = 0; i < g.dim; ++i) {
    Mat m(g.dim, g.dim);
    for (int j = 0; j < g.dim; ++j) {
      double res = 0.0;
      m.col(j) = to_coords(g, bracket(g.basis[i], g.basis[j]), &res);
      if (res > 1e-9)
        throw std::runtime_error(g.name + ": basis is not bracket-closed");
    }
    g.ad_basis[i] = m;
  }

  // theta(X) = -X^T maps the span into itself for every shipped family.
  Mat th(g.dim, g.dim);
  for (int j = 0; j < g.dim; ++j) {
    double res = 0.0;
    th.col(j) = to_coords(g, Mat(-g.basis[j].transpose()), &res);
    if (res > 1e-9)
      throw std::runtime_error(g.name + ": not stable under negative transpose");
  }
  g.theta = th;
}

LieAlgebra make_sl(int n) {
  LieAlgebra g;
  g.name = "sl(" + std::to_string(n) + ")";
  if (n == 2) {
    Mat h(2, 2), e(2, 2), f(2, 2);
    h << 0.5, 0, 0, -0.5;
    e << 0, 1, 0, 0;
    f << 0, 0, 1, 0;
    g.basis = {h, e, f};
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) g.basis.push_back(unit(n, i, j));
    for (int i = 0; i + 1 < n; ++i)
      g.basis.push_back(unit(n, i, i) - unit(n, i + 1, i + 1));
  }
  finalize(g);
  return g;
}

LieAlgebra make_gl(int n) {
  LieAlgebra g;
  g.name = "gl(" + std::to_string(n) + ")";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.basis.push_back(unit(n, i, j));
  finalize(g);
  return g;
}

LieAlgebra make_so(int p, int q) {
  const int n = p + q;
  Vec eta(n);
  for (int i = 0; i < n; ++i) eta(i) = i < p ? 1.0 : -1.0;
  LieAlgebra g;
  g.name = "so(" + std::to_string(p) + "," + std::to_string(q) + ")";
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      g.basis.push_back(unit(n, a, b) * eta(b) - unit(n, b, a) * eta(a));
  finalize(g);
  return g;
}

LieAlgebra make_sp(int two_n) {
  if (two_n % 2 != 0) throw std::runtime_error("sp size must be even");
  const int n = two_n / 2;
  LieAlgebra g;
  g.name = "sp(" + std::to_string(two_n) + ")";
  auto embed = [&](const Mat& a, const Mat& b, const Mat& c) {
    Mat x = Mat::Zero(2 * n, 2 * n);
    x.topLeftCorner(n, n) = a;
    x.topRightCorner(n, n) = b;
    x.bottomLeftCorner(n, n) = c;
    x.bottomRightCorner(n, n) = -a.transpose();
    return x;
  };
  const Mat z = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.basis.push_back(embed(unit(n, i, j), z, z));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Mat s = unit(n, i, j) + unit(n, j, i);
      if (i == j) s = unit(n, i, i);
      g.basis.push_back(embed(z, s, z));
    }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Mat s = unit(n, i, j) + unit(n, j, i);
      if (i == j) s = unit(n, i, i);
      g.basis.push_back(embed(z, z, s));
    }
  finalize(g);
  return g;
}

// Realification  Z = X + iY  ->  [[X, -Y], [Y, X]].
Mat realify(const Mat& x, const Mat& y) {
  const int m = int(x.rows());
  Mat r = Mat::Zero(2 * m, 2 * m);
  r.topLeftCorner(m, m) = x;
  r.bottomRightCorner(m, m) = x;
  r.topRightCorner(m, m) = -y;
  r.bottomLeftCorner(m, m) = y;
  return r;
}

void attach_complex_structure(LieAlgebra& g, int m) {
  Mat jm = realify(Mat::Zero(m, m), Mat::Identity(m, m));
  Mat jc(g.dim, g.dim);
  for (int j = 0; j < g.dim; ++j) {
    double res = 0.0;
    jc.col(j) = to_coords(g, Mat(jm * g.basis[j]), &res);
    if (res > 1e-9)
      throw std::runtime_error(g.name + ": ambient i does not preserve the span");
  }
  g.cplx = jc;
}

LieAlgebra make_su(int p, int q) {
  const int m = p + q;
  LieAlgebra g;
  g.name = "su(" + std::to_string(p) + "," + std::to_string(q) + ")";
  auto cross = [&](int j, int k) { return (j < p) != (k < p); };
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) {
      Mat sym = unit(m, j, k) + unit(m, k, j);
      Mat skw = unit(m, j, k) - unit(m, k, j);
      if (cross(j, k)) {
        g.basis.push_back(realify(sym, Mat::Zero(m, m)));
        g.basis.push_back(realify(Mat::Zero(m, m), skw));
      } else {
        g.basis.push_back(realify(skw, Mat::Zero(m, m)));
        g.basis.push_back(realify(Mat::Zero(m, m), sym));
      }
    }
  for (int j = 0; j + 1 < m; ++j)
    g.basis.push_back(realify(Mat::Zero(m, m), unit(m, j, j) - unit(m, j + 1, j + 1)));
  finalize(g);
  return g;
}

LieAlgebra make_slC(int m) {
  LieAlgebra g;
  g.name = "slC(" + std::to_string(m) + ")";
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k)
      if (j != k) {
        g.basis.push_back(realify(unit(m, j, k), Mat::Zero(m, m)));
        g.basis.push_back(realify(Mat::Zero(m, m), unit(m, j, k)));
      }
  for (int j = 0; j + 1 < m; ++j) {
    Mat d = unit(m, j, j) - unit(m, j + 1, j + 1);
    g.basis.push_back(realify(d, Mat::Zero(m, m)));
    g.basis.push_back(realify(Mat::Zero(m, m), d));
  }
  finalize(g);
  attach_complex_structure(g, m);
  return g;
}

}  // namespace

Mat bracket(const Mat& x, const Mat& y) { return x * y - y * x; }

Vec to_coords(const LieAlgebra& g, const Mat& x, double* residual) {
  Vec rhs(g.dim);
  for (int i = 0; i < g.dim; ++i) rhs(i) = (g.basis[i].transpose() * x).trace();
  Vec c = g.gram_inv * rhs;
  if (residual) *residual = (x - from_coords(g, c)).norm();
  return c;
}

Mat from_coords(const LieAlgebra& g, const Vec& c) {
  Mat x = Mat::Zero(g.n, g.n);
  for (int i = 0; i < g.dim; ++i) x += c(i) * g.basis[i];
  return x;
}

Mat ad(const LieAlgebra& g, const Vec& x) {
  Mat m = Mat::Zero(g.dim, g.dim);
  for (int i = 0; i < g.dim; ++i)
    if (x(i) != 0.0) m += x(i) * g.ad_basis[i];
  return m;
}

Mat ad_group(const LieAlgebra& g, const Mat& gm) {
  Eigen::PartialPivLU<Mat> lu(gm);
  Mat m(g.dim, g.dim);
  for (int j = 0; j < g.dim; ++j) {
    double res = 0.0;
    Mat conj = gm * g.basis[j] * lu.inverse();
    m.col(j) = to_coords(g, conj, &res);
    if (res > 1e-7 * std::max(1.0, conj.norm()))
      throw std::runtime_error(g.name + ": conjugation leaves the algebra");
  }
  return m;
}

Mat exp_ambient(const LieAlgebra& g, const Vec& x) {
  return apply_entire(Entire::Exp, from_coords(g, x));
}

LieAlgebra make_product(const LieAlgebra& a, const LieAlgebra& b) {
  LieAlgebra g;
  g.name = a.name + "x" + b.name;
  const int n = a.n + b.n;
  for (const Mat& m : a.basis) {
    Mat x = Mat::Zero(n, n);
    x.topLeftCorner(a.n, a.n) = m;
    g.basis.push_back(x);
  }
  for (const Mat& m : b.basis) {
    Mat x = Mat::Zero(n, n);
    x.bottomRightCorner(b.n, b.n) = m;
    g.basis.push_back(x);
  }
  finalize(g);
  if (a.cplx && b.cplx) {
    Mat j = Mat::Zero(g.dim, g.dim);
    j.topLeftCorner(a.dim, a.dim) = *a.cplx;
    j.bottomRightCorner(b.dim, b.dim) = *b.cplx;
    g.cplx = j;
  }
  return g;
}

LieAlgebra make_realization(const std::string& name) {
  auto px = name.find(")x");
  if (px != std::string::npos) {
    return make_product(make_realization(name.substr(0, px + 1)),
                        make_realization(name.substr(px + 2)));
  }
  auto args = [&](size_t at) {
    std::vector<int> out;
    size_t close = name.find(')', at);
    std::string inner = name.substr(at + 1, close - at - 1);
    size_t pos = 0;
    while (pos < inner.size()) {
      size_t comma = inner.find(',', pos);
      if (comma == std::string::npos) comma = inner.size();
      out.push_back(std::stoi(inner.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    return out;
  };
  size_t open = name.find('(');
  if (open == std::string::npos) throw std::runtime_error("bad realization name: " + name);
  std::string fam = name.substr(0, open);
  std::vector<int> a = args(open);
  if (fam == "sl" && a.size() == 1) return make_sl(a[0]);
  if (fam == "gl" && a.size() == 1) return make_gl(a[0]);
  if (fam == "so" && a.size() == 2) return make_so(a[0], a[1]);
  if (fam == "sp" && a.size() == 1) return make_sp(a[0]);
  if (fam == "su" && a.size() == 2) return make_su(a[0], a[1]);
  if (fam == "slC" && a.size() == 1) return make_slC(a[0]);
  throw std::runtime_error("unknown realization: " + name);
}

double closure_residual(const LieAlgebra& g) {
  double worst = 0.0;
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) {
      double res = 0.0;
      to_coords(g, bracket(g.basis[i], g.basis[j]), &res);
      worst = std::max(worst, res);
    }
  return worst;
}

double jacobi_residual(const LieAlgebra& g, int samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Vec x(g.dim), y(g.dim), z(g.dim);
    for (int i = 0; i < g.dim; ++i) {
      x(i) = dist(rng);
      y(i) = dist(rng);
      z(i) = dist(rng);
    }
    Mat xm = from_coords(g, x), ym = from_coords(g, y), zm = from_coords(g, z);
    Mat r = bracket(xm, bracket(ym, zm)) + bracket(ym, bracket(zm, xm)) +
            bracket(zm, bracket(xm, ym));
    worst = std::max(worst, r.norm());
  }
  return worst;
}

EulerInfo is_euler(const LieAlgebra& g, const Vec& h) {
  EulerInfo info;
  const Mat a = ad(g, h);
  info.defect = (a * a * a - a).norm();
  const double scale = std::max(1.0, a.norm());
  if (info.defect > tol::euler_detect * scale) return info;

  const Spectrum sp = spectrum(a);
  for (int i = 0; i < sp.values.size(); ++i) {
    const Cplx lam = sp.values(i);
    const double d = std::min({std::abs(lam - Cplx(1, 0)), std::abs(lam),
                               std::abs(lam + Cplx(1, 0))});
    if (d > tol::euler_detect) return info;
  }

  const Mat id = Mat::Identity(g.dim, g.dim);
  GradedSplit s;
  s.p_plus = 0.5 * (a * (a + id));
  s.p_minus = 0.5 * (a * (a - id));
  s.p_zero = id - a * a;
  auto rank_of = [](const Mat& p) {
    double t = p.trace();
    return int(std::lround(t));
  };
  s.dim_plus = rank_of(s.p_plus);
  s.dim_zero = rank_of(s.p_zero);
  s.dim_minus = rank_of(s.p_minus);
  if (s.dim_plus + s.dim_zero + s.dim_minus != g.dim) return info;
  info.euler = true;
  info.split = s;
  return info;
}

Mat tau_from_euler(const LieAlgebra& g, const Vec& h) {
  const Mat a = ad(g, h);
  return Mat::Identity(g.dim, g.dim) - 2.0 * (a * a);
}

CVec kappa_apply(const LieAlgebra& g, const Vec& h, const CVec& x) {
  EulerInfo e = is_euler(g, h);
  if (!e.euler) throw std::runtime_error("kappa_apply: h is not Euler");
  const Cplx i(0.0, 1.0);
  return e.split.p_zero.cast<Cplx>() * x - i * (e.split.p_plus.cast<Cplx>() * x) +
         i * (e.split.p_minus.cast<Cplx>() * x);
}

CVec kappa_inv_apply(const LieAlgebra& g, const Vec& h, const CVec& x) {
  EulerInfo e = is_euler(g, h);
  if (!e.euler) throw std::runtime_error("kappa_inv_apply: h is not Euler");
  const Cplx i(0.0, 1.0);
  return e.split.p_zero.cast<Cplx>() * x + i * (e.split.p_plus.cast<Cplx>() * x) -
         i * (e.split.p_minus.cast<Cplx>() * x);
}

Mat grading_projection(const LieAlgebra& g, const Vec& h, int s) {
  EulerInfo e = is_euler(g, h);
  if (!e.euler) throw std::runtime_error("grading_projection: h is not Euler");
  if (s > 0) return e.split.p_plus;
  if (s < 0) return e.split.p_minus;
  return e.split.p_zero;
}

double grading_limit_error(const LieAlgebra& g, const Vec& h, const Vec& x,
                           int s, double t) {
  if (s == 0) throw std::runtime_error("grading_limit_error: s must be +-1");
  const double sign = s > 0 ? 1.0 : -1.0;
  const Mat flow = apply_entire(Entire::Exp, Mat(sign * t * ad(g, h)));
  const Vec lim = std::exp(-t) * (flow * x);
  const Vec proj = grading_projection(g, h, s) * x;
  return (lim - proj).norm();
}

Mat killing_form(const LieAlgebra& g) {
  Mat k(g.dim, g.dim);
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j <= i; ++j)
      k(i, j) = k(j, i) = (g.ad_basis[i] * g.ad_basis[j]).trace();
  return k;
}

Mat cartan_theta(const LieAlgebra& g) {
  if (!g.theta) throw std::runtime_error("cartan_theta: none stored");
  const Mat& th = *g.theta;
  const Mat id = Mat::Identity(g.dim, g.dim);
  if ((th * th - id).norm() > 1e-9 * g.dim)
    throw std::runtime_error("cartan_theta: not an involution");
  return th;
}

Mat eigenspace_basis(const Mat& invol, int s) {
  const Mat id = Mat::Identity(invol.rows(), invol.cols());
  return nullspace(Mat(invol - double(s) * id));
}

double h_equals_qq_residual(const LieAlgebra& g, const Mat& tau) {
  Mat hb = eigenspace_basis(tau, +1);
  Mat qb = eigenspace_basis(tau, -1);
  Mat spans(g.dim, qb.cols() * qb.cols());
  int c = 0;
  for (int i = 0; i < qb.cols(); ++i)
    for (int j = 0; j < qb.cols(); ++j) {
      Mat br = bracket(from_coords(g, qb.col(i)), from_coords(g, qb.col(j)));
      spans.col(c++) = to_coords(g, br);
    }
  Vec ang = principal_angles(hb, spans);
  int rank_qq = 0;
  {
    Eigen::JacobiSVD<Mat> svd(spans);
    const auto& sv = svd.singularValues();
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-9 * sv(0)) ++rank_qq;
  }
  if (rank_qq != hb.cols()) return 1.0;
  return ang.size() ? ang.maxCoeff() : 0.0;
}

namespace {

void sl2_elements(const LieAlgebra& sl2, Vec& h, Vec& e, Vec& f) {
  if (sl2.dim != 3) throw std::runtime_error("not sl(2)");
  h = Vec::Zero(3);
  e = Vec::Zero(3);
  f = Vec::Zero(3);
  h(0) = 1.0;
  e(1) = 1.0;
  f(2) = 1.0;
}

}  // namespace

double sl2_conjugation_residual(const LieAlgebra& sl2) {
  Vec h, e, f;
  sl2_elements(sl2, h, e, f);
  const Vec x0 = (kPi / 4.0) * (e - f);
  const Mat g0 = exp_ambient(sl2, x0);
  const Mat h1 = 0.5 * (from_coords(sl2, e) + from_coords(sl2, f));
  const Mat lhs = g0 * h1 * g0.inverse();
  const Mat h0 = from_coords(sl2, h);
  double amb = (lhs - h0).norm();
  // Same statement through the coordinate adjoint flow.
  const Vec lhs2 = apply_entire(Entire::Exp, ad(sl2, x0)) * to_coords(sl2, h1);
  return std::max(amb, (lhs2 - h).norm());
}

double sl2_turn_residual(const LieAlgebra& sl2, double t) {
  Vec h, e, f;
  sl2_elements(sl2, h, e, f);
  const Vec h1 = 0.5 * (e + f);
  const Vec lhs = apply_entire(Entire::Exp, Mat(t * ad(sl2, Vec(e - f)))) * h1;
  const Vec rhs = std::cos(2 * t) * h1 + std::sin(2 * t) * h;
  return (lhs - rhs).norm();
}

double sl2_sin_formula_residual(const LieAlgebra& sl2, double lambda, double mu) {
  Vec h, e, f;
  sl2_elements(sl2, h, e, f);
  const Mat a = ad(sl2, Vec(lambda * e + mu * f));
  // sin(A) = A S(A^2).
  const Mat sin_a = a * apply_entire(Entire::SBig, Mat(a * a));
  const Vec lhs = sin_a * h;
  const Cplx s = entire_scalar(Entire::SBig, Cplx(4.0 * lambda * mu, 0.0));
  const Vec rhs = s.real() * (-lambda * e + mu * f);
  return (lhs - rhs).norm();
}

nlohmann::json lie_to_json(const LieAlgebra& g) {
  nlohmann::json j;
  j["name"] = g.name;
  j["ambient"] = g.n;
  j["dim"] = g.dim;
  auto mat_rows = [](const Mat& m) {
    std::vector<std::vector<double>> rows;
    for (int r = 0; r < m.rows(); ++r) {
      std::vector<double> row(m.cols());
      for (int c = 0; c < m.cols(); ++c) row[c] = m(r, c);
      rows.push_back(std::move(row));
    }
    return rows;
  };
  for (const Mat& b : g.basis) j["basis"].push_back(mat_rows(b));
  if (g.theta) j["theta"] = mat_rows(*g.theta);
  if (g.cplx) j["complex_structure"] = mat_rows(*g.cplx);
  return j;
}

LieAlgebra lie_from_json(const nlohmann::json& j) {
  LieAlgebra g;
  g.name = j.at("name").get<std::string>();
  const int n = j.at("ambient").get<int>();
  for (const auto& rows : j.at("basis")) {
    Mat m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = rows.at(r).at(c).get<double>();
    g.basis.push_back(m);
  }
  g.dim = int(g.basis.size());
  g.n = n;
  g.gram.resize(g.dim, g.dim);
  for (int i = 0; i < g.dim; ++i)
    for (int k = 0; k <= i; ++k)
      g.gram(i, k) = g.gram(k, i) = (g.basis[i].transpose() * g.basis[k]).trace();
  g.gram_inv = g.gram.ldlt().solve(Mat::Identity(g.dim, g.dim));
  g.ad_basis.resize(g.dim);
  for (int i = 0; i < g.dim; ++i) {
    Mat m(g.dim, g.dim);
    for (int k = 0; k < g.dim; ++k)
      m.col(k) = to_coords(g, bracket(g.basis[i], g.basis[k]));
    g.ad_basis[i] = m;
  }
  auto load = [&](const char* key) -> std::optional<Mat> {
    if (!j.contains(key)) return std::nullopt;
    Mat m(g.dim, g.dim);
    for (int r = 0; r < g.dim; ++r)
      for (int c = 0; c < g.dim; ++c) m(r, c) = j.at(key).at(r).at(c).get<double>();
    return m;
  };
  g.theta = load("theta");
  g.cplx = load("complex_structure");
  return g;
}

double symmetric_pair_residual(const SymmetricPair& p) {
  const int d = p.g.dim;
  const Mat id = Mat::Identity(d, d);
  double worst = 0.0;
  worst = std::max(worst, (p.tau * p.tau - id).norm());
  worst = std::max(worst, (p.theta * p.theta - id).norm());
  worst = std::max(worst, (p.tau * p.theta - p.theta * p.tau).norm());
  worst = std::max(worst, (p.tau * p.h - p.h).norm());
  // Automorphism property on basis pairs, for both involutions.
  for (const Mat* m : {&p.tau, &p.theta}) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Vec lhs = (*m) * Vec(ad(p.g, Vec(Vec::Unit(d, i))) * Vec::Unit(d, j));
        Vec rhs = ad(p.g, Vec((*m) * Vec::Unit(d, i))) * Vec((*m) * Vec::Unit(d, j));
        worst = std::max(worst, (lhs - rhs).norm());
      }
  }
  if (!is_euler(p.g, p.h).euler) worst = std::max(worst, 1.0);
  return worst;
}

}  // namespace wl
