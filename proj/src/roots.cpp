#include "wedgelab/roots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "wedgelab/tolerances.hpp"

namespace wl {

namespace {

Mat vstack(const std::vector<Mat>& parts) {
  if (parts.empty()) return Mat(0, 0);
  Eigen::Index cols = parts[0].cols(), rows = 0;
  for (const auto& m : parts) rows += m.rows();
  Mat out(rows, cols);
  Eigen::Index at = 0;
  for (const auto& m : parts) {
    out.middleRows(at, m.rows()) = m;
    at += m.rows();
  }
  return out;
}

Mat orthonormal_cols(const Mat& m) {
  if (m.cols() == 0) return m;
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  double smax = svd.singularValues()(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-10 * smax) ++rank;
  return svd.matrixU().leftCols(rank);
}

int span_rank(const Mat& m) {
  if (m.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  double smax = svd.singularValues()(0);
  if (smax == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-9 * smax) ++rank;
  return rank;
}

// Basis of the -1,-1 joint eigenspace of tau and theta.
Mat qp_basis(const SymmetricPair& p) {
  const Eigen::Index n = p.tau.rows();
  Mat stack(2 * n, n);
  stack.topRows(n) = p.tau + Mat::Identity(n, n);
  stack.bottomRows(n) = p.theta + Mat::Identity(n, n);
  return nullspace(stack);
}

Mat centralizer_constraints(const LieAlgebra& g, const Mat& a_cols, const Mat& domain) {
  std::vector<Mat> rows;
  for (Eigen::Index i = 0; i < a_cols.cols(); ++i) rows.push_back(ad(g, a_cols.col(i)) * domain);
  return vstack(rows);
}

// Trace-form orthogonal projector onto the column span of a_basis.
Mat a_projector(const LieAlgebra& g, const Mat& a_basis) {
  Mat m = a_basis.transpose() * g.gram * a_basis;
  return a_basis * m.ldlt().solve(a_basis.transpose() * g.gram);
}

Vec snap(const Vec& v, double q = 1e-7) {
  Vec out = v;
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = std::round(v[i] / q) * q;
  return out;
}

bool lex_greater(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    if (std::fabs(d) > 1e-7) return d > 0;
  }
  return false;
}

bool is_root_value(const RootSystem& rs, const Vec& v) {
  for (const auto& r : rs.roots)
    if ((r.alpha - v).lpNorm<Eigen::Infinity>() < 1e-6) return true;
  return false;
}

int root_index(const RootSystem& rs, const Vec& v) {
  for (size_t i = 0; i < rs.roots.size(); ++i)
    if ((rs.roots[i].alpha - v).lpNorm<Eigen::Infinity>() < 1e-6) return static_cast<int>(i);
  return -1;
}

}  // namespace

void verify_cartan_subspace(const SymmetricPair& p, const Mat& a_basis) {
  const LieAlgebra& g = p.g;
  const Eigen::Index r = a_basis.cols();
  if (r == 0) throw std::invalid_argument("verify_cartan_subspace: empty basis");
  for (Eigen::Index i = 0; i < r; ++i) {
    Vec c = a_basis.col(i);
    double nn = c.norm();
    if ((p.tau * c + c).norm() > 1e-8 * nn)
      throw std::logic_error("cartan subspace: not inside q");
    if ((p.theta * c + c).norm() > 1e-8 * nn)
      throw std::logic_error("cartan subspace: not inside p");
    for (Eigen::Index j = 0; j < i; ++j) {
      Vec br = to_coords(g, bracket(from_coords(g, c), from_coords(g, a_basis.col(j))));
      if (br.norm() > 1e-8 * nn * a_basis.col(j).norm())
        throw std::logic_error("cartan subspace: not abelian");
    }
    Mat ga = g.gram * ad(g, c);
    if ((ga - ga.transpose()).norm() > 1e-7 * (1.0 + ga.norm()))
      throw std::logic_error("cartan subspace: ad not self-adjoint for the trace form");
  }
  Mat qp = qp_basis(p);
  Mat constraints = centralizer_constraints(g, a_basis, qp);
  Mat null_c = nullspace(constraints);
  Mat centralizer_in_qp = qp * null_c;
  if (span_rank(centralizer_in_qp) != static_cast<int>(r))
    throw std::logic_error("cartan subspace: not maximal");
  Mat joint(a_basis.rows(), r + centralizer_in_qp.cols());
  joint << a_basis, centralizer_in_qp;
  if (span_rank(joint) != static_cast<int>(r))
    throw std::logic_error("cartan subspace: centralizer leaves the span");
}

Mat find_max_abelian_hyperbolic(const SymmetricPair& p) {
  const LieAlgebra& g = p.g;
  Mat qp = qp_basis(p);
  if (qp.cols() == 0) throw std::logic_error("find_max_abelian_hyperbolic: q intersect p is zero");
  Mat a(g.dim, 0);
  for (int pass = 0; pass <= static_cast<int>(qp.cols()); ++pass) {
    Mat candidates;
    if (a.cols() == 0) {
      candidates = qp;
    } else {
      Mat constraints = centralizer_constraints(g, a, qp);
      Mat nc = nullspace(constraints);
      candidates = qp * nc;
    }
    int best = -1;
    double best_res = 1e-8;
    Mat proj = a.cols() > 0 ? Mat(a * a.transpose()) : Mat::Zero(g.dim, g.dim);
    for (Eigen::Index j = 0; j < candidates.cols(); ++j) {
      Vec resid = candidates.col(j) - proj * candidates.col(j);
      if (resid.norm() > best_res) {
        best = static_cast<int>(j);
        best_res = resid.norm();
      }
    }
    if (best < 0) break;
    Vec nv = candidates.col(best) - proj * candidates.col(best);
    nv /= nv.norm();
    Mat grown(g.dim, a.cols() + 1);
    grown << a, nv;
    a = grown;
  }
  verify_cartan_subspace(p, a);
  return a;
}

RootSystem restricted_roots(const SymmetricPair& p, const Mat& a_basis) {
  const LieAlgebra& g = p.g;
  const int dim = g.dim;
  const Eigen::Index r = a_basis.cols();

  Eigen::LLT<Mat> llt(g.gram);
  if (llt.info() != Eigen::Success)
    throw std::logic_error("restricted_roots: trace form not positive definite");
  Mat lt = Mat(llt.matrixL()).transpose();
  Mat lt_inv = lt.inverse();

  std::vector<Mat> sym_ads;
  for (Eigen::Index i = 0; i < r; ++i) {
    Mat s = lt * ad(g, a_basis.col(i)) * lt_inv;
    if ((s - s.transpose()).norm() > 1e-7 * (1.0 + s.norm()))
      throw std::logic_error("restricted_roots: symmetrized ad is not symmetric");
    sym_ads.push_back(0.5 * (s + s.transpose()));
  }

  std::vector<Mat> blocks = {Mat::Identity(dim, dim)};
  for (const Mat& s : sym_ads) {
    double scale = std::max(1.0, s.norm());
    std::vector<Mat> next;
    for (const Mat& u : blocks) {
      if (u.cols() == 1) {
        next.push_back(u);
        continue;
      }
      Mat m = u.transpose() * s * u;
      Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.transpose()));
      Vec ev = es.eigenvalues();
      std::vector<std::pair<int, int>> clusters;
      int start = 0;
      for (int k = 1; k <= static_cast<int>(ev.size()); ++k) {
        if (k == static_cast<int>(ev.size()) || ev[k] - ev[k - 1] > tol::root_cluster * scale) {
          clusters.emplace_back(start, k);
          if (k < static_cast<int>(ev.size()) && ev[k] - ev[k - 1] < tol::root_gap * scale)
            throw std::logic_error("restricted_roots: eigenvalue clustering is ambiguous");
          start = k;
        }
      }
      for (auto [lo, hi] : clusters)
        next.push_back(u * es.eigenvectors().middleCols(lo, hi - lo));
    }
    blocks = std::move(next);
  }

  RootSystem rs;
  rs.a_basis = a_basis;
  int dim_sum = 0;
  for (const Mat& u : blocks) {
    Vec alpha(r);
    for (Eigen::Index i = 0; i < r; ++i) {
      alpha[i] = u.col(0).dot(sym_ads[i] * u.col(0));
      Mat resid = sym_ads[i] * u - u * alpha[i];
      if (resid.norm() > 1e-6 * std::max(1.0, sym_ads[i].norm()) * std::sqrt(double(u.cols())))
        throw std::logic_error("restricted_roots: block is not a joint eigenspace");
    }
    Mat coord_space = orthonormal_cols(lt_inv * u);
    dim_sum += static_cast<int>(coord_space.cols());
    if (alpha.lpNorm<Eigen::Infinity>() < 1e-7) {
      if (rs.centralizer.cols() == 0) {
        rs.centralizer = coord_space;
      } else {
        Mat grown(dim, rs.centralizer.cols() + coord_space.cols());
        grown << rs.centralizer, coord_space;
        rs.centralizer = orthonormal_cols(grown);
      }
    } else {
      RestrictedRoot root;
      root.alpha = snap(alpha);
      root.space = coord_space;
      rs.roots.push_back(std::move(root));
    }
  }
  if (dim_sum != dim) throw std::logic_error("restricted_roots: dimensions do not add up");

  std::sort(rs.roots.begin(), rs.roots.end(),
            [](const RestrictedRoot& a, const RestrictedRoot& b) {
              return lex_greater(a.alpha, b.alpha);
            });

  for (const auto& root : rs.roots) {
    int j = root_index(rs, Vec(-root.alpha));
    if (j < 0) throw std::logic_error("restricted_roots: missing negative of a root");
    const auto& mirror = rs.roots[static_cast<size_t>(j)];
    if (mirror.space.cols() != root.space.cols())
      throw std::logic_error("restricted_roots: opposite roots with different multiplicity");
    Vec angles = principal_angles(p.theta * root.space, mirror.space);
    if (angles.size() > 0 && angles.maxCoeff() > tol::principal_angle * 10)
      throw std::logic_error("restricted_roots: theta does not exchange opposite root spaces");
  }

  Mat joint(dim, a_basis.cols() + rs.centralizer.cols());
  joint << a_basis, rs.centralizer;
  if (span_rank(joint) != span_rank(rs.centralizer))
    throw std::logic_error("restricted_roots: a-basis escapes the centralizer");
  return rs;
}

void classify_roots(const SymmetricPair& p, RootSystem& rs) {
  const LieAlgebra& g = p.g;
  Mat fix_map = p.tau * p.theta;

  Mat qp = qp_basis(p);
  Mat constraints = centralizer_constraints(g, qp, qp);
  Mat center_qp = qp * nullspace(constraints);
  center_qp = orthonormal_cols(center_qp);
  Mat pa = a_projector(g, rs.a_basis);
  if ((pa * center_qp - center_qp).norm() > 1e-7 * std::max(1.0, center_qp.norm()))
    throw std::logic_error("classify_roots: center of q intersect p escapes the subspace");

  for (auto& root : rs.roots) {
    bool fixed = (fix_map * root.space - root.space).norm() <
                 1e-6 * std::sqrt(double(root.space.cols()));
    bool vanishes = true;
    for (Eigen::Index j = 0; j < center_qp.cols(); ++j) {
      Vec xa = a_coefficients(rs, center_qp.col(j));
      if (std::fabs(eval_root(root, xa)) > 1e-6) vanishes = false;
    }
    if (fixed != vanishes)
      throw std::logic_error("classify_roots: compactness routes disagree");
    root.compact = fixed;
  }
}

void compute_coroots(const SymmetricPair& p, RootSystem& rs) {
  const LieAlgebra& g = p.g;
  Mat pa = a_projector(g, rs.a_basis);
  Mat agram = rs.a_basis.transpose() * g.gram * rs.a_basis;

  for (auto& root : rs.roots) {
    Vec x = root.space.col(0);
    Mat xm = from_coords(g, x);
    Mat tx = from_coords(g, Vec(p.theta * x));
    Vec t_full = to_coords(g, bracket(xm, tx));
    Vec t = pa * t_full;
    if (t.norm() < 1e-10)
      throw std::logic_error("compute_coroots: bracket projection vanishes");
    Vec ta = a_coefficients(rs, t);
    double val = eval_root(root, ta);
    if (std::fabs(val) < 1e-9)
      throw std::logic_error("compute_coroots: root vanishes on its own bracket direction");
    root.coroot_a = (2.0 / val) * ta;
    root.coroot = rs.a_basis * root.coroot_a;

    // Independent route: trace-form dual vector of the value functional.
    Vec dual_a = agram.ldlt().solve(root.alpha);
    Vec dual = rs.a_basis * dual_a;
    double norm2 = dual.dot(g.gram * dual);
    Vec coroot2 = (2.0 / norm2) * dual;
    if ((coroot2 - root.coroot).norm() > 1e-7 * std::max(1.0, root.coroot.norm()))
      throw std::logic_error("compute_coroots: bracket and dual routes disagree");
    if (std::fabs(eval_root(root, root.coroot_a) - 2.0) > 1e-7)
      throw std::logic_error("compute_coroots: normalization failed");
  }
}

Vec a_coefficients(const RootSystem& rs, const Vec& x) {
  Vec c = rs.a_basis.colPivHouseholderQr().solve(x);
  if ((rs.a_basis * c - x).norm() > 1e-7 * std::max(1.0, x.norm()))
    throw std::logic_error("a_coefficients: vector not in the subspace");
  return c;
}

double eval_root(const RestrictedRoot& root, const Vec& x_a) { return root.alpha.dot(x_a); }

std::vector<int> noncompact_positive_lex(const RootSystem& rs) {
  std::vector<int> out;
  for (size_t i = 0; i < rs.roots.size(); ++i) {
    const auto& root = rs.roots[i];
    if (root.compact) continue;
    if (lex_greater(root.alpha, Vec::Zero(root.alpha.size()))) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> strongly_orthogonal_set(const RootSystem& rs,
                                         const std::vector<int>& candidates) {
  std::vector<int> order = candidates;
  auto support = [&](int i) {
    int s = 0;
    for (Eigen::Index k = 0; k < rs.roots[static_cast<size_t>(i)].alpha.size(); ++k)
      if (std::fabs(rs.roots[static_cast<size_t>(i)].alpha[k]) > 1e-7) ++s;
    return s;
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int sa = support(a), sb = support(b);
    if (sa != sb) return sa > sb;
    return lex_greater(rs.roots[static_cast<size_t>(a)].alpha,
                       rs.roots[static_cast<size_t>(b)].alpha);
  });
  std::vector<int> gamma;
  for (int idx : order) {
    bool ok = true;
    for (int gi : gamma) {
      Vec sum = rs.roots[static_cast<size_t>(idx)].alpha + rs.roots[static_cast<size_t>(gi)].alpha;
      Vec dif = rs.roots[static_cast<size_t>(idx)].alpha - rs.roots[static_cast<size_t>(gi)].alpha;
      if (is_root_value(rs, sum) || is_root_value(rs, dif)) {
        ok = false;
        break;
      }
    }
    if (ok) gamma.push_back(idx);
  }
  return gamma;
}

int gamma_subalgebra_dim(const SymmetricPair& p, const RootSystem& rs,
                         const std::vector<int>& gamma) {
  const LieAlgebra& g = p.g;
  std::vector<Vec> span;
  auto add = [&](const Vec& v) {
    Mat m(g.dim, span.size() + 1);
    for (size_t i = 0; i < span.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = span[i];
    m.col(static_cast<Eigen::Index>(span.size())) = v;
    if (span_rank(m) > static_cast<int>(span.size())) span.push_back(v);
  };
  for (int idx : gamma) {
    Vec v = rs.roots[static_cast<size_t>(idx)].space.col(0);
    add(v);
    add(Vec(p.theta * v));
  }
  for (int pass = 0; pass < 10; ++pass) {
    size_t before = span.size();
    for (size_t i = 0; i < before; ++i)
      for (size_t j = i + 1; j < before; ++j) {
        Vec br = to_coords(g, bracket(from_coords(g, span[i]), from_coords(g, span[j])));
        if (br.norm() > 1e-9) add(br);
      }
    if (span.size() == before) break;
  }
  return static_cast<int>(span.size());
}

CausalStructure causal_structure(const SymmetricPair& p, RootSystem& rs,
                                 const std::function<double(const Vec&)>& cone_margin) {
  std::vector<int> candidates = noncompact_positive_lex(rs);
  if (candidates.empty()) throw std::logic_error("causal_structure: no noncompact roots");
  std::vector<int> gamma = strongly_orthogonal_set(rs, candidates);
  const size_t k = gamma.size();

  std::vector<Vec> valid;
  const Eigen::Index r = rs.a_basis.cols();
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    Vec h_a = Vec::Zero(r);
    for (size_t j = 0; j < k; ++j) {
      double sign = (mask >> j) & 1u ? -1.0 : 1.0;
      h_a += 0.5 * sign * rs.roots[static_cast<size_t>(gamma[j])].coroot_a;
    }
    bool ok = true;
    for (const auto& root : rs.roots) {
      double v = eval_root(root, h_a);
      if (root.compact ? std::fabs(v) > 1e-6 : std::fabs(std::fabs(v) - 1.0) > 1e-6) {
        ok = false;
        break;
      }
    }
    if (ok) valid.push_back(h_a);
  }
  if (valid.empty()) throw std::logic_error("causal_structure: no coherent grading element");

  int chosen = -1;
  if (cone_margin) {
    for (size_t i = 0; i < valid.size(); ++i) {
      Vec h_g = rs.a_basis * valid[i];
      if (cone_margin(h_g) > tol::cone_margin) {
        chosen = static_cast<int>(i);
        break;
      }
    }
    if (chosen < 0)
      throw std::logic_error("causal_structure: no grading element inside the cone");
  } else {
    for (size_t i = 0; i < valid.size() && chosen < 0; ++i)
      for (Eigen::Index j = 0; j < r; ++j) {
        if (std::fabs(valid[i][j]) < 1e-9) continue;
        if (valid[i][j] > 0) chosen = static_cast<int>(i);
        break;
      }
    if (chosen < 0) throw std::logic_error("causal_structure: orientation pick failed");
  }

  CausalStructure cs;
  cs.h_causal_a = valid[static_cast<size_t>(chosen)];
  cs.h_causal = rs.a_basis * cs.h_causal_a;

  EulerInfo info = is_euler(p.g, cs.h_causal);
  if (!info.euler) throw std::logic_error("causal_structure: grading element is not an Euler element");

  for (size_t i = 0; i < rs.roots.size(); ++i) {
    if (rs.roots[i].compact) continue;
    if (std::fabs(eval_root(rs.roots[i], cs.h_causal_a) - 1.0) < 1e-6)
      cs.pos_noncompact.push_back(static_cast<int>(i));
  }
  for (size_t j = 0; j < k; ++j) {
    const Vec& base = rs.roots[static_cast<size_t>(gamma[j])].alpha;
    int idx = root_index(rs, base);
    if (std::fabs(eval_root(rs.roots[static_cast<size_t>(gamma[j])], cs.h_causal_a) + 1.0) < 1e-6)
      idx = root_index(rs, Vec(-base));
    if (idx < 0) throw std::logic_error("causal_structure: lost a strongly orthogonal root");
    cs.gamma.push_back(idx);
  }
  return cs;
}

std::vector<Mat> weyl_group_k(const RootSystem& rs, int cap) {
  const Eigen::Index r = rs.a_basis.cols();
  auto key_of = [r](const Mat& m) {
    std::vector<long long> key;
    key.reserve(static_cast<size_t>(r * r));
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < r; ++j)
        key.push_back(llround(m(i, j) * 1e9));
    return key;
  };

  std::vector<Mat> gens;
  for (const auto& root : rs.roots) {
    if (!root.compact) continue;
    gens.push_back(Mat::Identity(r, r) - root.coroot_a * root.alpha.transpose());
  }

  std::vector<Mat> group = {Mat::Identity(r, r)};
  std::map<std::vector<long long>, int> seen;
  seen[key_of(group[0])] = 0;
  for (size_t at = 0; at < group.size(); ++at) {
    for (const Mat& s : gens) {
      Mat next = group[at] * s;
      auto key = key_of(next);
      if (seen.count(key)) continue;
      if (static_cast<int>(group.size()) >= cap)
        throw std::logic_error("weyl_group_k: closure exceeded the cap");
      seen[key] = static_cast<int>(group.size());
      group.push_back(next);
    }
  }
  return group;
}

ConePairA cone_min_max(const RootSystem& rs, const CausalStructure& cs) {
  const Eigen::Index r = rs.a_basis.cols();
  ConePairA out;
  out.min_generators = Mat(r, static_cast<Eigen::Index>(cs.pos_noncompact.size()));
  out.max_normals = Mat(static_cast<Eigen::Index>(cs.pos_noncompact.size()), r);
  for (size_t i = 0; i < cs.pos_noncompact.size(); ++i) {
    const auto& root = rs.roots[static_cast<size_t>(cs.pos_noncompact[i])];
    out.min_generators.col(static_cast<Eigen::Index>(i)) = root.coroot_a;
    out.max_normals.row(static_cast<Eigen::Index>(i)) = root.alpha.transpose();
  }
  return out;
}

ConeChecks certify_cones(const ConePairA& cones) {
  ConeChecks out;
  RatMat gens;
  for (Eigen::Index j = 0; j < cones.min_generators.cols(); ++j)
    gens.push_back(to_rational_vec(cones.min_generators.col(j)));
  RatMat normals;
  for (Eigen::Index i = 0; i < cones.max_normals.rows(); ++i)
    normals.push_back(to_rational_vec(cones.max_normals.row(i).transpose()));

  ConeCertificates cc = cone_certificates(gens);
  out.min_pointed = cc.pointed;
  out.min_generating = cc.generating;
  out.max_solid = inequality_cone_solid(normals);

  out.inclusion = true;
  for (const auto& g : gens)
    for (const auto& n : normals) {
      Rat dot = 0;
      for (size_t i = 0; i < g.size(); ++i) dot += g[i] * n[i];
      if (dot < 0) out.inclusion = false;
    }
  return out;
}

double max_cone_margin(const ConePairA& cones, const Vec& x_a) {
  double margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < cones.max_normals.rows(); ++i)
    margin = std::min(margin, cones.max_normals.row(i).dot(x_a));
  return margin;
}

double s_of(const RootSystem& rs, const Vec& x_a) {
  double s = 0.0;
  for (const auto& root : rs.roots) {
    double v = std::fabs(eval_root(root, x_a));
    s = std::max(s, root.compact ? 2.0 * v : v);
  }
  return s;
}

CPiEval c_pi_eval(const RootSystem& rs, const ConePairA& cones, const Vec& x_a) {
  return CPiEval{max_cone_margin(cones, x_a), s_of(rs, x_a)};
}

}  // namespace wl
