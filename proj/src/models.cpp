#include "wedgelab/models.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "wedgelab/roots.hpp"

namespace wl {

namespace {

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

Vec coords_of(const LieAlgebra& g, const Mat& ambient) {
  double res = 0.0;
  Vec c = to_coords(g, ambient, &res);
  if (res > 1e-9 * std::max(1.0, ambient.norm()))
    throw std::logic_error(g.name + ": ambient element is outside the realization");
  return c;
}

Mat map_from_ambient(const LieAlgebra& g, const std::function<Mat(const Mat&)>& fn) {
  Mat out(g.dim, g.dim);
  for (int j = 0; j < g.dim; ++j) out.col(j) = coords_of(g, fn(g.basis[static_cast<size_t>(j)]));
  return out;
}

void check_pair(const ModelBundle& b) {
  double res = symmetric_pair_residual(b.pair);
  if (res > 1e-8) throw std::logic_error(b.id + ": symmetric pair residual " + std::to_string(res));
  verify_cartan_subspace(b.pair, b.a_basis);
}

ModelBundle sl2_cayley() {
  ModelBundle b;
  b.id = "sl2-cayley";
  LieAlgebra g = make_realization("sl(2)");
  Vec h = Vec::Zero(3);
  h[0] = 1.0;
  b.pair = SymmetricPair{g, tau_from_euler(g, h), cartan_theta(g), h};
  b.a_basis = Mat::Zero(3, 1);
  b.a_basis(1, 0) = 1.0;
  b.a_basis(2, 0) = 1.0;
  b.cone_margin = [](const Vec& x) { return std::min(x[1], x[2]); };
  check_pair(b);
  return b;
}

ModelBundle sl2xsl2() {
  ModelBundle b;
  b.id = "sl2xsl2";
  LieAlgebra g = make_realization("sl(2)xsl(2)");
  Vec h = Vec::Zero(6);
  h[0] = 1.0;
  h[3] = 1.0;
  b.pair = SymmetricPair{g, tau_from_euler(g, h), cartan_theta(g), h};
  b.a_basis = Mat::Zero(6, 2);
  b.a_basis(1, 0) = b.a_basis(2, 0) = 1.0;
  b.a_basis(4, 1) = b.a_basis(5, 1) = 1.0;
  b.cone_margin = [](const Vec& x) {
    return std::min(std::min(x[1], x[2]), std::min(x[4], x[5]));
  };
  check_pair(b);
  return b;
}

ModelBundle gl2() {
  ModelBundle b;
  b.id = "gl2";
  LieAlgebra g = make_realization("gl(2)");
  Mat swap(2, 2);
  swap << 0, 1, 1, 0;
  Vec h = coords_of(g, 0.5 * (unit(2, 0, 0) - unit(2, 1, 1)));
  Mat tau = map_from_ambient(g, [&](const Mat& x) { return Mat(-swap * x.transpose() * swap); });
  b.pair = SymmetricPair{g, tau, cartan_theta(g), h};
  b.a_basis = Mat(g.dim, 2);
  b.a_basis.col(0) = coords_of(g, Mat::Identity(2, 2));
  b.a_basis.col(1) = coords_of(g, swap);
  LieAlgebra gc = g;
  b.cone_margin = [gc](const Vec& c) {
    Mat x = from_coords(gc, c);
    if (std::fabs(x(0, 0) - x(1, 1)) > 1e-9 * std::max(1.0, x.norm()))
      throw std::logic_error("gl2 cone margin: not a q-element");
    double z = x(0, 0), up = x(0, 1), lo = x(1, 0);
    return std::min(std::min(up, lo), up * lo - z * z);
  };
  check_pair(b);
  return b;
}

ModelBundle de_sitter(int d) {
  ModelBundle b;
  b.id = "ds" + std::to_string(d);
  LieAlgebra g = make_realization("so(1," + std::to_string(d) + ")");
  const int n = d + 1;
  Vec h = coords_of(g, unit(n, 0, 1) + unit(n, 1, 0));
  Mat refl = Mat::Identity(n, n);
  refl(2, 2) = -1.0;
  Mat tau = ad_group(g, refl);
  b.pair = SymmetricPair{g, tau, cartan_theta(g), h};
  b.a_basis = Mat(g.dim, 1);
  b.a_basis.col(0) = coords_of(g, unit(n, 0, 2) + unit(n, 2, 0));
  LieAlgebra gc = g;
  b.cone_margin = [gc, n](const Vec& c) {
    Mat x = from_coords(gc, c);
    Vec w = x.col(2);
    double rest = 0.0;
    for (int i = 1; i < n; ++i)
      if (i != 2) rest += w[i] * w[i];
    return w[0] - std::sqrt(rest);
  };
  check_pair(b);
  return b;
}

ModelBundle sp_cayley(int r) {
  ModelBundle b;
  b.id = "sp" + std::to_string(r) + "-cayley";
  LieAlgebra g = make_realization("sp(" + std::to_string(2 * r) + ")");
  const int n = 2 * r;
  Mat hm = Mat::Zero(n, n);
  hm.topLeftCorner(r, r) = 0.5 * Mat::Identity(r, r);
  hm.bottomRightCorner(r, r) = -0.5 * Mat::Identity(r, r);
  Vec h = coords_of(g, hm);
  b.pair = SymmetricPair{g, tau_from_euler(g, h), cartan_theta(g), h};
  b.a_basis = Mat(g.dim, r);
  for (int i = 0; i < r; ++i)
    b.a_basis.col(i) = coords_of(g, unit(n, i, r + i) + unit(n, r + i, i));
  LieAlgebra gc = g;
  b.cone_margin = [gc, r](const Vec& c) {
    Mat x = from_coords(gc, c);
    if (x.topLeftCorner(r, r).norm() > 1e-9 * std::max(1.0, x.norm()))
      throw std::logic_error("sp cone margin: not a q-element");
    Mat up = x.topRightCorner(r, r), lo = x.bottomLeftCorner(r, r);
    Eigen::SelfAdjointEigenSolver<Mat> eu(0.5 * (up + up.transpose()));
    Eigen::SelfAdjointEigenSolver<Mat> el(0.5 * (lo + lo.transpose()));
    return std::min(eu.eigenvalues().minCoeff(), el.eigenvalues().minCoeff());
  };
  check_pair(b);
  return b;
}

ModelBundle so2d_cayley(int d) {
  ModelBundle b;
  b.id = "so2" + std::to_string(d) + "-cayley";
  LieAlgebra g = make_realization("so(2," + std::to_string(d) + ")");
  const int n = d + 2;
  Vec h = coords_of(g, unit(n, 1, 2) + unit(n, 2, 1));
  b.pair = SymmetricPair{g, tau_from_euler(g, h), cartan_theta(g), h};
  b.a_basis = find_max_abelian_hyperbolic(b.pair);
  check_pair(b);
  return b;
}

ModelBundle sl_split(int r) {
  ModelBundle b;
  b.id = "sl" + std::to_string(2 * r) + "-split";
  LieAlgebra g = make_realization("sl(" + std::to_string(2 * r) + ")");
  const int n = 2 * r;
  Mat hm = Mat::Zero(n, n);
  hm.topRightCorner(r, r) = 0.5 * Mat::Identity(r, r);
  hm.bottomLeftCorner(r, r) = 0.5 * Mat::Identity(r, r);
  Vec h = coords_of(g, hm);
  Mat k = Mat::Identity(n, n);
  k.bottomRightCorner(r, r) = -Mat::Identity(r, r);
  Mat tau = map_from_ambient(g, [&](const Mat& x) { return Mat(-k * x.transpose() * k); });
  b.pair = SymmetricPair{g, tau, cartan_theta(g), h};
  b.a_basis = Mat(g.dim, n - 1);
  for (int i = 0; i + 1 < n; ++i)
    b.a_basis.col(i) = coords_of(g, unit(n, i, i) - unit(n, i + 1, i + 1));
  check_pair(b);
  return b;
}

ModelBundle su_cayley(int r) {
  ModelBundle b;
  b.id = "su" + std::to_string(r) + std::to_string(r) + "-cayley";
  LieAlgebra g = make_realization("su(" + std::to_string(r) + "," + std::to_string(r) + ")");
  const int m = 2 * r;
  Mat hm = Mat::Zero(m, m);
  hm.topRightCorner(r, r) = 0.5 * Mat::Identity(r, r);
  hm.bottomLeftCorner(r, r) = 0.5 * Mat::Identity(r, r);
  Vec h = coords_of(g, realified(hm, Mat::Zero(m, m)));
  b.pair = SymmetricPair{g, tau_from_euler(g, h), cartan_theta(g), h};
  b.a_basis = Mat(g.dim, r);
  for (int i = 0; i < r; ++i) {
    Mat im = unit(m, i, r + i) - unit(m, r + i, i);
    b.a_basis.col(i) = coords_of(g, realified(Mat::Zero(m, m), im));
  }
  check_pair(b);
  return b;
}

ModelBundle slC4_su22() {
  ModelBundle b;
  b.id = "slC4-su22";
  LieAlgebra g = make_realization("slC(4)");
  const int m = 4;
  Mat hm = Mat::Zero(m, m);
  hm.topRightCorner(2, 2) = 0.5 * Mat::Identity(2, 2);
  hm.bottomLeftCorner(2, 2) = 0.5 * Mat::Identity(2, 2);
  Vec h = coords_of(g, realified(hm, Mat::Zero(m, m)));
  Mat sig = Mat::Identity(m, m);
  sig.bottomRightCorner(2, 2) = -Mat::Identity(2, 2);
  Mat sig_r = realified(sig, Mat::Zero(m, m));
  Mat tau =
      map_from_ambient(g, [&](const Mat& x) { return Mat(-sig_r * x.transpose() * sig_r); });
  b.pair = SymmetricPair{g, tau, cartan_theta(g), h};
  b.a_basis = Mat(g.dim, 3);
  for (int i = 0; i + 1 < m; ++i)
    b.a_basis.col(i) =
        coords_of(g, realified(unit(m, i, i) - unit(m, i + 1, i + 1), Mat::Zero(m, m)));
  LieAlgebra gc = g;
  b.cone_margin = [gc, sig, m](const Vec& c) {
    Mat x = from_coords(gc, c);
    Eigen::MatrixXcd z =
        x.topLeftCorner(m, m).cast<Cplx>() + Cplx(0, 1) * x.bottomLeftCorner(m, m).cast<Cplx>();
    Eigen::MatrixXcd y = sig.cast<Cplx>() * z;
    if ((y - y.adjoint()).norm() > 1e-8 * std::max(1.0, y.norm()))
      throw std::logic_error("slC4 cone margin: not a q-element");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (y + y.adjoint()));
    return es.eigenvalues().minCoeff();
  };
  check_pair(b);
  return b;
}

}  // namespace

ModelBundle make_model(const std::string& id) {
  if (id == "sl2-cayley") return sl2_cayley();
  if (id == "sl2xsl2") return sl2xsl2();
  if (id == "gl2") return gl2();
  if (id == "ds2") return de_sitter(2);
  if (id == "ds3") return de_sitter(3);
  if (id == "ds4") return de_sitter(4);
  if (id == "sp2-cayley") return sp_cayley(1);
  if (id == "sp4-cayley") return sp_cayley(2);
  if (id == "sp6-cayley") return sp_cayley(3);
  if (id == "so22-cayley") return so2d_cayley(2);
  if (id == "so23-cayley") return so2d_cayley(3);
  if (id == "so24-cayley") return so2d_cayley(4);
  if (id == "sl2-split") return sl_split(1);
  if (id == "sl4-split") return sl_split(2);
  if (id == "sl6-split") return sl_split(3);
  if (id == "su11-cayley") return su_cayley(1);
  if (id == "su22-cayley") return su_cayley(2);
  if (id == "slC4-su22") return slC4_su22();
  throw std::invalid_argument("unknown model id: " + id);
}

std::vector<std::string> model_ids() {
  return {"sl2-cayley", "sl2-split",  "sl4-split",  "sl6-split",  "sp2-cayley", "sp4-cayley",
          "sp6-cayley", "so22-cayley", "so23-cayley", "so24-cayley", "su11-cayley",
          "su22-cayley", "slC4-su22",  "ds2",        "ds3",        "ds4",        "gl2",
          "sl2xsl2"};
}

}  // namespace wl
