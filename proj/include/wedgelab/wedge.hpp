#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wedgelab/models.hpp"
#include "wedgelab/quadric.hpp"
#include "wedgelab/sampling.hpp"

namespace wl {

// A simplicial cone sitting inside a graded slice of q: the slice basis and
// the extreme rays, both as coordinate columns of the ambient algebra.
struct ConeRays {
  Mat basis;
  Mat generators;
};

// Coefficient margin of v on the generators: positive iff v lies in the
// relative interior. Throws when v leaves the span of the slice.
double relative_margin(const ConeRays& c, const Vec& v);

Vec cone_ray_sample(const ConeRays& c, const IndexSampler& smp,
                    std::uint64_t index, int lane_base);

// One irreducible block of the spec. Transported blocks carry a coordinate
// isomorphism onto the so(1,2) realization; native blocks are already a
// Lorentz algebra acting on R^{1,d}.
struct WedgeFactor {
  bool native = false;
  int d = 2;        // de Sitter dimension of the block's symmetric space
  int offset = 0;   // coordinate range [offset, offset + dim) in the spec
  int dim = 0;
  Mat transport;    // empty for native blocks
};

struct CausalSymmetricSpec {
  std::string id;
  ModelBundle model;
  Mat h_basis, q_basis;
  GradedSplit grading;
  ConeRays c_plus, c_minus;
  Vec h_causal;
  std::vector<WedgeFactor> factors;  // empty: equality harness unsupported
  LieAlgebra target;                 // so(1,2) realization for transports
  Mat rot_basis;                     // generators of the h-centralizer's
                                     // compact part (native blocks only)
};

// ids: ds2, ds3, ds4, sl2-cayley, sl2xsl2, gl2 (gl2: positivity only).
CausalSymmetricSpec make_wedge_spec(const std::string& id);
std::vector<std::string> wedge_spec_ids();

// A point of the symmetric space presented as a group word: the stored
// (x, t) pairs multiply left to right into an ambient element and its
// adjoint coordinate matrix.
struct PointRep {
  std::vector<std::pair<Vec, double>> word;
  Mat ambient;
  Mat ad;
};

PointRep make_point(const LieAlgebra& g,
                    const std::vector<std::pair<Vec, double>>& word);
// Worst bracket-preservation error of a coordinate matrix.
double automorphism_residual(const LieAlgebra& g, const Mat& m);

// q-component of Ad(g)^{-1} h in basis coordinates; vanishes at the base
// point and along the modular flow itself.
Vec modular_vector_field(const CausalSymmetricSpec& spec, const PointRep& p);
double positivity_margin(const CausalSymmetricSpec& spec, const PointRep& p);
bool in_positivity_domain(const CausalSymmetricSpec& spec, const PointRep& p,
                          double delta = 0.0);

// Interior sample of the invariant cone in q (model-specific construction).
Vec cone_interior_sample(const CausalSymmetricSpec& spec,
                         const IndexSampler& smp, std::uint64_t index);

// Hyperbolic-slice gauge: largest |eigenvalue| of ad x. Valid for the
// catalogued specs, whose restricted roots all carry the full weight.
double s_of_element(const CausalSymmetricSpec& spec, const Vec& x);

// Element x = x_plus + x_minus of the open polar domain: both graded parts
// interior to their cones and s(x_plus - x_minus) < pi.
Vec polar_domain_sample(const CausalSymmetricSpec& spec,
                        const IndexSampler& smp, std::uint64_t index);
// Margin of the same conditions; negative or throwing input is outside.
double polar_domain_margin(const CausalSymmetricSpec& spec, const Vec& x);

// Group word exp(k-params along the h-centralizer) * exp(x). k_params:
// one boost per factor, then rotation angles for native blocks. Validates
// x against the polar domain first.
PointRep polar_wedge_sample(const CausalSymmetricSpec& spec,
                            const std::vector<double>& k_params, const Vec& x);

// De Sitter coordinates of one factor of the point.
Vec factor_point(const CausalSymmetricSpec& spec, const WedgeFactor& f,
                 const PointRep& p);

// Conjunction of tube membership over an explicit imaginary-time grid.
bool kms_membership_grid(const Vec& x, const std::vector<double>& t_grid);

// The three domain tests: positivity (cone oracle on the vector field),
// polar (wedge-chart inversion per factor), KMS (imaginary-time orbit in
// the tube per factor). Margins are banding values, commensurate across
// routes; member holds the full boolean decisions.
struct TripleMargins {
  std::array<double, 3> margin{};
  std::array<int, 3> member{};
  int verdict = 0;  // +1 all-in, -1 all-out, 0 banded, 2 disagreement
};
TripleMargins wedge_memberships(const CausalSymmetricSpec& spec,
                                const PointRep& p);

struct WedgeSampleRow {
  std::uint64_t index = 0;
  int source = 0;  // 0 polar parametrization, 1 box, 2 near-boundary band
  Vec point;       // concatenated factor coordinates
  TripleMargins tests;
};

struct WedgeReport {
  std::string spec_id;
  std::uint64_t seed = 0;
  int samples = 0;
  std::array<int, 3> domain_counts{};
  std::array<std::array<int, 3>, 3> agreement{};
  int interior = 0;
  int exterior = 0;
  int indeterminate = 0;
  int disagreements = 0;
  std::vector<std::uint64_t> witnesses;
  std::vector<WedgeSampleRow> rows;
};

// Samples the polar wedge and asserts the positivity test on every point;
// failures are recorded, not thrown.
WedgeReport polar_implies_positive(const CausalSymmetricSpec& spec, int n,
                                   std::uint64_t seed);

// Three-way equality harness over the three sample sources.
WedgeReport verify_wedge_equalities(const CausalSymmetricSpec& spec, int n,
                                    std::uint64_t seed, bool parallel = false);

// Round trip between the real wedge of dS^2 and the conjugation-fixed part
// of its tube: forward Wick images of sampled wedge points, and chart
// recovery of sampled fixed tube points. Failures are data.
WedgeReport cayley_fixedpoint_check(int n, std::uint64_t seed);

}  // namespace wl
