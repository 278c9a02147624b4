#pragma once

#include <string>
#include <vector>

namespace wl {

// One row of the classification table of irreducible modular non-compactly
// causal symmetric Lie algebras, grouped by the four construction families.
// Labels are symbolic (parameters r, s, k, d, p, q range over the stated
// constraints); model_ids lists the shipped matrix realizations of special
// cases of the row.
struct CatalogEntry {
  std::string family;    // complex | cayley | split | nonsplit
  std::string g_label;
  std::string gc_label;  // compactly causal dual
  std::string h_label;   // fixed-point algebra of the involution
  std::string root_type;
  std::string euler_label;
  std::string g1_label;  // +1 eigenspace of ad h
  std::string note;
  bool realized = false;
  std::vector<std::string> model_ids;
};

const std::vector<CatalogEntry>& catalog();

// Rows of one family, in table order. Throws on an unknown family name.
std::vector<CatalogEntry> catalog_family(const std::string& family);

// Invariants of a shipped realization, recomputed from the matrices and
// compared against the closed-form values of its catalog row.
struct RealizedCheck {
  std::string model_id;
  int rank_a = 0;    // columns of the chosen maximal hyperbolic subspace
  int dim_g1 = 0;    // eigenspace dimension of ad h for eigenvalue +1
  int expected_rank = 0;
  int expected_dim_g1 = 0;
  double pair_residual = 0.0;
  bool ok = false;
};

// Throws for ids without a catalog row (gl2 is a test gadget, not a row).
RealizedCheck check_realization(const std::string& model_id);

// Every model attached to some catalog row, in table order.
std::vector<RealizedCheck> check_catalog();

}  // namespace wl
