// Positive PMI re-weighting of raw co-occurrence counts.
#pragma once

#include <cstdint>
#include <vector>

#include "jointdsm/matrix.hpp"

namespace jointdsm {

struct WeightCell {
  std::uint32_t target;
  std::uint32_t context;
  double weight;  // > 0 for stored cells
};

struct WeightedMatrix {
  Vocabulary targets;
  Vocabulary contexts;
  std::vector<WeightCell> cells;  // sorted by (target, context)

  // Offsets into `cells` per target row: row r spans
  // [row_offsets[r], row_offsets[r+1]). Rebuilt by build_row_index().
  std::vector<std::size_t> row_offsets;
  void build_row_index();
};

// PPMI(t,c) = max(0, ln(n(t,c) * N / (n(t,.) * n(.,c)))) with marginals
// taken from the pair table itself; zero-weight cells are dropped.
// Natural log. Throws EmptyMatrixError when m has no cells.
WeightedMatrix ppmi(const CooccurrenceMatrix& m);

}  // namespace jointdsm
