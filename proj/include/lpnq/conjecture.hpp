#pragma once

// Conjectured closed forms for the Dwyer quotients of the built-in groups.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpnq/zlinalg.hpp"

namespace lpnq {

  // Names of the catalog groups with a closed form.
  std::vector<std::string> conjecture_groups();

  // The conjectured M_c(G), or nullopt when the closed form makes no
  // statement for this c (Basilica and BSV start at c = 2). Throws
  // std::invalid_argument for a group without a closed form or c = 0.
  std::optional<AbelianInvariants> conjectured_dwyer_quotient(
      std::string_view group,
      size_t           c);

}  // namespace lpnq
