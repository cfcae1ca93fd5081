#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "umk/matrix.hpp"

namespace umk {

// Input file of named objects, one per line:
//   ring S = poly Q[x,y,z]/(x^2+y^2+z^2-1) grevlex sdim 2
//   row v over S = [x, y, z]
//   mat M over S 2x4 = [[...], [...]]
//   seed 7
//   budget 5000
// '#' starts a comment. Names are unique across rings and objects.
struct Workspace {
  std::map<std::string, RingHandle> rings;
  std::map<std::string, Matrix> objects;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;

  const RingHandle& ring(const std::string& name) const;
  const Matrix& object(const std::string& name) const;
};

Workspace parse_workspace(std::string_view text);

}  // namespace umk
