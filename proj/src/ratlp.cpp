#include "wedgelab/ratlp.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace wl {

Rat to_rational(double x, long long max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("to_rational: non-finite input");
  if (x == 0.0) return Rat(0);
  bool neg = x < 0;
  double a = std::fabs(x);
  // Continued fraction expansion, truncated when the denominator bound is hit.
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = a;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    if (fl > 9e17) break;
    long long ai = static_cast<long long>(fl);
    long long p2 = ai * p1 + p0;
    long long q2 = ai * q1 + q0;
    if (q2 > max_den || q2 < 0 || p2 < 0) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-15 * std::max(1.0, frac)) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return Rat(neg ? -p1 : p1);
  Rat r(p1, q1);
  return neg ? Rat(-r) : r;
}

RatVec to_rational_vec(const Vec& v, long long max_den) {
  RatVec out(static_cast<size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<size_t>(i)] = to_rational(v[i], max_den);
  return out;
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

namespace {

// Dense tableau simplex in canonical form, Bland's rule throughout.
struct Tableau {
  RatMat rows;             // m x (n + 1), last column is the rhs
  std::vector<int> basis;  // basic variable per row
  int n = 0;

  Rat reduced_cost(const RatVec& cost, int j) const {
    Rat rc = cost[static_cast<size_t>(j)];
    for (size_t r = 0; r < rows.size(); ++r) {
      const Rat& cb = cost[static_cast<size_t>(basis[r])];
      if (cb != 0) rc -= cb * rows[r][static_cast<size_t>(j)];
    }
    return rc;
  }

  void pivot(size_t pr, int pc) {
    RatVec& prow = rows[pr];
    Rat inv = prow[static_cast<size_t>(pc)];
    for (auto& e : prow) e /= inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == pr) continue;
      Rat f = rows[r][static_cast<size_t>(pc)];
      if (f == 0) continue;
      for (size_t j = 0; j <= static_cast<size_t>(n); ++j) rows[r][j] -= f * prow[j];
    }
    basis[pr] = pc;
  }

  // Maximizes cost.x over the current feasible region. Returns false iff unbounded.
  bool run(const RatVec& cost) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < n; ++j) {
        bool basic = false;
        for (size_t r = 0; r < rows.size(); ++r)
          if (basis[r] == j) { basic = true; break; }
        if (basic) continue;
        if (reduced_cost(cost, j) > 0) { enter = j; break; }
      }
      if (enter < 0) return true;
      int leave_row = -1;
      Rat best_ratio;
      for (size_t r = 0; r < rows.size(); ++r) {
        const Rat& a = rows[r][static_cast<size_t>(enter)];
        if (a <= 0) continue;
        Rat ratio = rows[r][static_cast<size_t>(n)] / a;
        if (leave_row < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[r] < basis[static_cast<size_t>(leave_row)])) {
          leave_row = static_cast<int>(r);
          best_ratio = ratio;
        }
      }
      if (leave_row < 0) return false;
      pivot(static_cast<size_t>(leave_row), enter);
    }
  }
};

int exact_rank(RatMat m) {
  if (m.empty()) return 0;
  size_t nr = m.size(), nc = m[0].size();
  int rank = 0;
  size_t row = 0;
  for (size_t col = 0; col < nc && row < nr; ++col) {
    size_t piv = row;
    while (piv < nr && m[piv][col] == 0) ++piv;
    if (piv == nr) continue;
    std::swap(m[piv], m[row]);
    for (size_t r = 0; r < nr; ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rat f = m[r][col] / m[row][col];
      for (size_t j = col; j < nc; ++j) m[r][j] -= f * m[row][j];
    }
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace

LpResult solve_lp(const RatMat& a_ub, const RatVec& b_ub, const RatMat& a_eq,
                  const RatVec& b_eq, const RatVec& c) {
  const int nv = static_cast<int>(c.size());
  const int m_ub = static_cast<int>(a_ub.size());
  const int m_eq = static_cast<int>(a_eq.size());
  const int m = m_ub + m_eq;
  // Free variables split as x = u - v; one slack per inequality; artificials appended.
  const int n_core = 2 * nv + m_ub;

  RatMat rows;
  std::vector<int> art_of_row(static_cast<size_t>(m), -1);
  int n_art = 0;
  for (int i = 0; i < m; ++i) {
    const bool is_ub = i < m_ub;
    const RatVec& arow = is_ub ? a_ub[static_cast<size_t>(i)] : a_eq[static_cast<size_t>(i - m_ub)];
    Rat rhs = is_ub ? b_ub[static_cast<size_t>(i)] : b_eq[static_cast<size_t>(i - m_ub)];
    RatVec row(static_cast<size_t>(n_core) + 1, Rat(0));
    for (int j = 0; j < nv; ++j) {
      row[static_cast<size_t>(j)] = arow[static_cast<size_t>(j)];
      row[static_cast<size_t>(nv + j)] = -arow[static_cast<size_t>(j)];
    }
    if (is_ub) row[static_cast<size_t>(2 * nv + i)] = 1;
    bool flip = rhs < 0;
    if (flip) {
      for (auto& e : row) e = -e;
      rhs = -rhs;
    }
    row.back() = rhs;
    bool slack_basic = is_ub && !flip;
    if (!slack_basic) art_of_row[static_cast<size_t>(i)] = n_art++;
    rows.push_back(std::move(row));
  }

  const int n_total = n_core + n_art;
  Tableau t;
  t.n = n_total;
  t.basis.assign(static_cast<size_t>(m), -1);
  for (int i = 0; i < m; ++i) {
    RatVec& row = rows[static_cast<size_t>(i)];
    Rat rhs = row.back();
    row.pop_back();
    row.resize(static_cast<size_t>(n_total), Rat(0));
    if (art_of_row[static_cast<size_t>(i)] >= 0) {
      int aj = n_core + art_of_row[static_cast<size_t>(i)];
      row[static_cast<size_t>(aj)] = 1;
      t.basis[static_cast<size_t>(i)] = aj;
    } else {
      t.basis[static_cast<size_t>(i)] = 2 * nv + i;
    }
    row.push_back(rhs);
    t.rows.push_back(std::move(row));
  }

  LpResult res;
  if (n_art > 0) {
    RatVec phase1(static_cast<size_t>(n_total), Rat(0));
    for (int a = 0; a < n_art; ++a) phase1[static_cast<size_t>(n_core + a)] = -1;
    if (!t.run(phase1)) throw std::logic_error("solve_lp: phase one unbounded");
    Rat val = 0;
    for (size_t r = 0; r < t.rows.size(); ++r)
      if (t.basis[r] >= n_core) val -= t.rows[r].back();
    if (val < 0) {
      res.status = LpStatus::Infeasible;
      return res;
    }
    // Pivot lingering zero-valued artificials out of the basis when possible.
    for (size_t r = 0; r < t.rows.size();) {
      if (t.basis[r] < n_core) { ++r; continue; }
      int pc = -1;
      for (int j = 0; j < n_core; ++j)
        if (t.rows[r][static_cast<size_t>(j)] != 0) { pc = j; break; }
      if (pc >= 0) {
        t.pivot(r, pc);
        ++r;
      } else {
        t.rows.erase(t.rows.begin() + static_cast<long>(r));
        t.basis.erase(t.basis.begin() + static_cast<long>(r));
      }
    }
  }

  RatVec phase2(static_cast<size_t>(n_total), Rat(0));
  for (int j = 0; j < nv; ++j) {
    phase2[static_cast<size_t>(j)] = c[static_cast<size_t>(j)];
    phase2[static_cast<size_t>(nv + j)] = -c[static_cast<size_t>(j)];
  }
  if (!t.run(phase2)) {
    res.status = LpStatus::Unbounded;
    return res;
  }

  RatVec full(static_cast<size_t>(n_total), Rat(0));
  for (size_t r = 0; r < t.rows.size(); ++r) full[static_cast<size_t>(t.basis[r])] = t.rows[r].back();
  res.status = LpStatus::Optimal;
  res.x.assign(static_cast<size_t>(nv), Rat(0));
  res.value = 0;
  for (int j = 0; j < nv; ++j) {
    res.x[static_cast<size_t>(j)] = full[static_cast<size_t>(j)] - full[static_cast<size_t>(nv + j)];
    res.value += c[static_cast<size_t>(j)] * res.x[static_cast<size_t>(j)];
  }
  return res;
}

ConeCertificates cone_certificates(const RatMat& gens_cols) {
  ConeCertificates out;
  if (gens_cols.empty() || gens_cols[0].empty()) return out;
  const size_t k = gens_cols.size();     // generators
  const size_t d = gens_cols[0].size();  // ambient dimension

  out.generating = exact_rank(gens_cols) == static_cast<int>(d);

  // Variables (phi, s): maximize s subject to phi.g_i - s >= 0 and s <= 1.
  const size_t nv = d + 1;
  RatMat a_ub;
  RatVec b_ub;
  for (size_t g = 0; g < k; ++g) {
    RatVec row(nv, Rat(0));
    for (size_t i = 0; i < d; ++i) row[i] = -gens_cols[g][i];
    row[d] = 1;
    a_ub.push_back(std::move(row));
    b_ub.push_back(Rat(0));
  }
  {
    RatVec row(nv, Rat(0));
    row[d] = 1;
    a_ub.push_back(std::move(row));
    b_ub.push_back(Rat(1));
  }
  RatVec c(nv, Rat(0));
  c[d] = 1;
  LpResult lp = solve_lp(a_ub, b_ub, {}, {}, c);
  if (lp.status == LpStatus::Optimal && lp.value > 0) {
    out.pointed = true;
    out.pointing_functional.assign(lp.x.begin(), lp.x.begin() + static_cast<long>(d));
  }
  return out;
}

bool cone_member(const RatMat& gens_cols, const RatVec& x) {
  const size_t d = x.size();
  bool x_zero = true;
  for (const auto& e : x)
    if (e != 0) { x_zero = false; break; }
  if (x_zero) return true;
  if (gens_cols.empty()) return false;
  const size_t k = gens_cols.size();
  // lambda >= 0 with  sum lambda_i g_i = x.
  RatMat a_eq(d, RatVec(k));
  for (size_t g = 0; g < k; ++g)
    for (size_t i = 0; i < d; ++i) a_eq[i][g] = gens_cols[g][i];
  RatMat a_ub(k, RatVec(k, Rat(0)));
  RatVec b_ub(k, Rat(0));
  for (size_t g = 0; g < k; ++g) a_ub[g][g] = -1;
  RatVec b_eq(x);
  RatVec c(k, Rat(0));
  LpResult lp = solve_lp(a_ub, b_ub, a_eq, b_eq, c);
  return lp.status == LpStatus::Optimal;
}

bool separating_functional(const RatMat& gens_cols, const RatVec& x, RatVec* phi) {
  const size_t d = x.size();
  RatMat a_ub;
  RatVec b_ub;
  for (const auto& g : gens_cols) {
    RatVec row(d);
    for (size_t i = 0; i < d; ++i) row[i] = -g[i];
    a_ub.push_back(std::move(row));
    b_ub.push_back(Rat(0));
  }
  for (size_t i = 0; i < d; ++i) {
    RatVec hi(d, Rat(0)), lo(d, Rat(0));
    hi[i] = 1;
    lo[i] = -1;
    a_ub.push_back(hi);
    b_ub.push_back(Rat(1));
    a_ub.push_back(lo);
    b_ub.push_back(Rat(1));
  }
  RatVec c(d);
  for (size_t i = 0; i < d; ++i) c[i] = -x[i];
  LpResult lp = solve_lp(a_ub, b_ub, {}, {}, c);
  if (lp.status != LpStatus::Optimal) throw std::logic_error("separating_functional: LP not optimal");
  if (lp.value > 0) {
    if (phi) *phi = lp.x;
    return true;
  }
  return false;
}

bool inequality_cone_solid(const RatMat& rows) {
  if (rows.empty()) return true;
  const size_t d = rows[0].size();
  const size_t nv = d + 1;
  RatMat a_ub;
  RatVec b_ub;
  for (const auto& r : rows) {
    RatVec row(nv, Rat(0));
    for (size_t i = 0; i < d; ++i) row[i] = -r[i];
    row[d] = 1;
    a_ub.push_back(std::move(row));
    b_ub.push_back(Rat(0));
  }
  RatVec cap(nv, Rat(0));
  cap[d] = 1;
  a_ub.push_back(cap);
  b_ub.push_back(Rat(1));
  RatVec c(nv, Rat(0));
  c[d] = 1;
  LpResult lp = solve_lp(a_ub, b_ub, {}, {}, c);
  return lp.status == LpStatus::Optimal && lp.value > 0;
}

}  // namespace wl
