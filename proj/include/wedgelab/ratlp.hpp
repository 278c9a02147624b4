#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "wedgelab/linop.hpp"

namespace wl {

using Rat = boost::multiprecision::cpp_rational;
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

// Continued-fraction rational approximation with bounded denominator.
Rat to_rational(double x, long long max_den = 1000000);
RatVec to_rational_vec(const Vec& v, long long max_den = 1000000);
double to_double(const Rat& r);

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value;
  RatVec x;
};

// maximize c.x  subject to  A_ub x <= b_ub  and  A_eq x = b_eq, x free.
// Exact two-phase simplex with Bland's rule.
LpResult solve_lp(const RatMat& a_ub, const RatVec& b_ub, const RatMat& a_eq,
                  const RatVec& b_eq, const RatVec& c);

// Certificates about the cone generated by the columns of `gens` (exact).
struct ConeCertificates {
  bool pointed = false;      // a functional is >= 1 on every generator
  bool generating = false;   // generators span the ambient space
  RatVec pointing_functional;
};
ConeCertificates cone_certificates(const RatMat& gens_cols);

// Is x in cone(gens)?  Solves for nonnegative combination coefficients.
bool cone_member(const RatMat& gens_cols, const RatVec& x);

// A functional that is >= 0 on every generator and < 0 at x, if one exists
// (exact separation certificate for x not in the cone).
bool separating_functional(const RatMat& gens_cols, const RatVec& x, RatVec* phi);

// Does {x : rows.x >= 0 componentwise} have an interior point?
bool inequality_cone_solid(const RatMat& rows);

}  // namespace wl
