#pragma once

// Reference data frozen from the permutation oracle in tests/oracle.

#include <cstddef>
#include <vector>

namespace fixtures {

  // Ranks of the 2-elementary factors gamma_w / gamma_{w+1}, w = 1..6, of
  // the Grigorchuk group acting on level 7 of the binary tree.
  inline std::vector<size_t> const grigorchuk_lcs_ranks = {3, 2, 2, 1, 2, 2};

}  // namespace fixtures
