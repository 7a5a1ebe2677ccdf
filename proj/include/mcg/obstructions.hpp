#pragma once

// Counting obstructions coming from the abelianization of the mapping class
// group. Pure arithmetic on cycle counts.

#include <cstdint>
#include <vector>

#include "mcg/surface.hpp"

namespace mcg {

struct CycleCensus {
  std::int64_t n_nonseparating = 0;
  std::int64_t s_separating = 0;
  friend bool operator==(const CycleCensus&, const CycleCensus&) = default;
};

/// Order of H_1 of the closed genus-g mapping class group; 1 means trivial.
inline constexpr int mcg_abelianization_order(int genus) {
  if (genus == 1) return 12;
  if (genus == 2) return 10;
  return 1;
}

inline CycleCensus classify_cycles(const std::vector<CurveClass>& cycles, const SurfaceModel& model) {
  CycleCensus c;
  for (const CurveClass& cc : cycles) {
    if (is_separating(cc, model))
      ++c.s_separating;
    else
      ++c.n_nonseparating;
  }
  return c;
}

/// Every nonseparating twist maps to a generator of Z/12.
inline bool genus1_obstruction(std::int64_t n) {
  if (n < 0) throw InvalidArgument("genus1_obstruction: negative count");
  return n % mcg_abelianization_order(1) == 0;
}

/// A nonseparating twist maps to 1 in Z/10, a separating one to 2.
inline bool genus2_obstruction(const CycleCensus& c) {
  if (c.n_nonseparating < 0 || c.s_separating < 0) throw InvalidArgument("genus2_obstruction: negative count");
  return (c.n_nonseparating + 2 * c.s_separating) % mcg_abelianization_order(2) == 0;
}

}  // namespace mcg
