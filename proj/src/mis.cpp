#include "satpaths/mis.hpp"

#include <algorithm>

namespace satpaths {

bool MisInstance::has_edge(std::uint32_t a, std::uint32_t b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(edges.begin(), edges.end(), NodePair{a, b});
}

}  // namespace satpaths
