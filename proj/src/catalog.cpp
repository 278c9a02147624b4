#include "wedgelab/catalog.hpp"

#include <stdexcept>

#include "wedgelab/liealg.hpp"
#include "wedgelab/models.hpp"

namespace wl {

namespace {

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> rows;
  auto add = [&](CatalogEntry e) {
    e.realized = !e.model_ids.empty();
    rows.push_back(std::move(e));
  };

  // Complex family: g is a complex simple algebra viewed as a real one,
  // the involution is conjugate-linear, the dual splits into two copies.
  add({"complex", "sl(2r,C)", "su(r,r) (+) su(r,r)", "su(r,r)", "A_{2r-1}",
       "h_r", "M_r(C)", "", false, {"slC4-su22"}});
  add({"complex", "sp(2r,C)", "sp(2r,R) (+) sp(2r,R)", "sp(2r,R)", "C_r",
       "h_r", "Sym_r(C)", "", false, {}});
  add({"complex", "so(2k,C), k>2", "so(2,2k-2) (+) so(2,2k-2)", "so(2,2k-2)",
       "D_k", "h_1", "C^(2k-2)", "", false, {}});
  add({"complex", "so(2k+1,C), k>1", "so(2,2k-1) (+) so(2,2k-1)",
       "so(2,2k-1)", "B_k", "h_1", "C^(2k-1)", "", false, {}});
  add({"complex", "so(4r,C)", "so*(4r) (+) so*(4r)", "so*(4r)", "D_{2r}",
       "h_{2r-1}, h_{2r}", "Skew_{2r}(C)", "", false, {}});
  add({"complex", "e7(C)", "e7(-25) (+) e7(-25)", "e7(-25)", "E_7", "h_7",
       "Herm_3(O)_C", "", false, {}});

  // Cayley family: hermitian algebras with their tube-type involution.
  add({"cayley", "su(r,r)", "su(r,r)", "R (+) sl(r,C)", "C_r", "h_r",
       "Herm_r(C)", "", false, {"su11-cayley", "su22-cayley"}});
  add({"cayley", "sp(2r,R)", "sp(2r,R)", "R (+) sl(r,R)", "C_r", "h_r",
       "Sym_r(R)", "", false,
       {"sl2-cayley", "sp2-cayley", "sp4-cayley", "sp6-cayley"}});
  add({"cayley", "so(2,d), d>2", "so(2,d)", "R (+) so(1,d-1)", "C_2", "h_2",
       "R^(1,d-1)",
       "the d=2 realizations sit at the reducible edge "
       "so(2,2) ~ sl(2,R) (+) sl(2,R)",
       false, {"so22-cayley", "so23-cayley", "so24-cayley", "sl2xsl2"}});
  add({"cayley", "so*(4r)", "so*(4r)", "R (+) sl(r,H)", "C_r", "h_r",
       "Herm_r(H)", "", false, {}});
  add({"cayley", "e7(-25)", "e7(-25)", "R (+) e6(-26)", "C_3", "h_3",
       "Herm_3(O)", "", false, {}});

  // Split family: split real forms and the split orthogonal series.
  add({"split", "sl(2r,R)", "su(r,r)", "so(r,r)", "A_{2r-1}", "h_r", "M_r(R)",
       "", false, {"sl2-split", "sl4-split", "sl6-split"}});
  add({"split", "so(2r,2r)", "so*(4r)", "so(2r,C)", "D_{2r}",
       "h_{2r-1}, h_{2r}", "Skew_{2r}(R)", "", false, {}});
  add({"split", "e7(R)", "e7(-25)", "sl(4,H)", "E_7", "h_7", "Herm_3(O_split)",
       "", false, {}});
  add({"split", "so(p+1,q+1), q>=p>1", "so(2,p+q)", "so(1,p) (+) so(1,q)",
       "B_{p+1} (p<q), D_{p+1} (p=q)", "h_1", "R^(p,q)", "", false, {}});

  // Quaternionic and rank-one series.
  add({"nonsplit", "sl(2s,H)", "su(2s,2s)", "u(s,s,H)", "A_{2s-1}", "h_s",
       "M_s(H)", "", false, {}});
  add({"nonsplit", "u(s,s,H)", "sp(4s,R)", "sp(2s,C)", "C_s", "h_s",
       "Aherm_s(H)", "", false, {}});
  add({"nonsplit", "so(1,d+1)", "so(2,d)", "so(1,d)", "A_1", "h_1", "R^d",
       "de Sitter series; the realizations are so(1,2), so(1,3), so(1,4)",
       false, {"ds2", "ds3", "ds4"}});

  return rows;
}

// Closed-form rank and dim g_1 for the realized special cases, from the
// row parameters: sl(2r,R) gives (2r-1, r^2), sp(2r,R) gives (r, r(r+1)/2),
// so(2,d) gives (2, d), su(r,r) gives (r, r^2), complex sl(2r,C) gives
// (2r-1, 2r^2) over R, and so(1,d+1) gives (1, d).
struct Expected {
  int rank;
  int dim_g1;
};

Expected expected_of(const std::string& id) {
  if (id == "slC4-su22") return {3, 8};
  if (id == "sl2xsl2") return {2, 2};
  if (id == "sl2-cayley") return {1, 1};
  if (id == "gl2")
    throw std::invalid_argument("gl2 carries no catalog row");
  if (id.size() >= 3 && id[0] == 'd' && id[1] == 's')
    return {1, id[2] - '0' - 1};
  if (id.rfind("so2", 0) == 0) return {2, id[3] - '0'};
  if (id.rfind("su", 0) == 0) {
    int r = id[2] - '0';
    return {r, r * r};
  }
  if (id.rfind("sp", 0) == 0) {
    int r = (id[2] - '0') / 2;
    return {r, r * (r + 1) / 2};
  }
  if (id.rfind("sl", 0) == 0) {
    int r = (id[2] - '0') / 2;
    return {2 * r - 1, r * r};
  }
  throw std::invalid_argument("unknown model id: " + id);
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> rows = build_catalog();
  return rows;
}

std::vector<CatalogEntry> catalog_family(const std::string& family) {
  if (family != "complex" && family != "cayley" && family != "split" &&
      family != "nonsplit")
    throw std::invalid_argument("unknown family: " + family);
  std::vector<CatalogEntry> out;
  for (const auto& e : catalog())
    if (e.family == family) out.push_back(e);
  return out;
}

RealizedCheck check_realization(const std::string& model_id) {
  const Expected want = expected_of(model_id);
  ModelBundle b = make_model(model_id);

  RealizedCheck c;
  c.model_id = model_id;
  c.rank_a = static_cast<int>(b.a_basis.cols());
  EulerInfo ei = is_euler(b.pair.g, b.pair.h);
  c.dim_g1 = ei.split.dim_plus;
  c.expected_rank = want.rank;
  c.expected_dim_g1 = want.dim_g1;
  c.pair_residual = symmetric_pair_residual(b.pair);
  c.ok = ei.euler && c.rank_a == c.expected_rank &&
         c.dim_g1 == c.expected_dim_g1 && c.pair_residual < 1e-8;
  return c;
}

std::vector<RealizedCheck> check_catalog() {
  std::vector<RealizedCheck> out;
  for (const auto& e : catalog())
    for (const auto& id : e.model_ids) out.push_back(check_realization(id));
  return out;
}

}  // namespace wl
