#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wedgelab/liealg.hpp"

namespace wl {

// A realization of a symmetric pair together with a fixed maximal abelian
// hyperbolic subspace and, where available, an ambient invariant-cone margin
// defined on coordinate vectors of q-elements (positive strictly inside).
struct ModelBundle {
  std::string id;
  SymmetricPair pair;
  Mat a_basis;
  std::function<double(const Vec&)> cone_margin;
};

ModelBundle make_model(const std::string& id);
std::vector<std::string> model_ids();

}  // namespace wl
