#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace psbent {

/// Reference N_f and dist values for Desarguesian PS_ap functions, n = 4..14,
/// in the order they were tabulated.
struct ReferenceRow {
  std::vector<std::int64_t> nf_values;
  std::vector<std::int64_t> dist_values;
};

const std::map<int, ReferenceRow>& reference_rows();

}  // namespace psbent
