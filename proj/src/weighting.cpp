#include "jointdsm/weighting.hpp"

#include <cmath>

#include "jointdsm/errors.hpp"

namespace jointdsm {

void WeightedMatrix::build_row_index() {
  row_offsets.assign(targets.size() + 1, 0);
  for (const WeightCell& c : cells) ++row_offsets[c.target + 1];
  for (std::size_t r = 1; r < row_offsets.size(); ++r)
    row_offsets[r] += row_offsets[r - 1];
}

WeightedMatrix ppmi(const CooccurrenceMatrix& m) {
  if (m.cells.empty()) throw EmptyMatrixError("ppmi: matrix has no cells");

  std::vector<std::uint64_t> row_sums(m.targets.size(), 0);
  std::vector<std::uint64_t> col_sums(m.contexts.size(), 0);
  std::uint64_t total = 0;
  for (const CountCell& c : m.cells) {
    row_sums[c.target] += c.count;
    col_sums[c.context] += c.count;
    total += c.count;
  }

  WeightedMatrix w;
  for (const std::string& t : m.targets.texts()) w.targets.intern(t);
  for (const std::string& t : m.contexts.texts()) w.contexts.intern(t);
  w.cells.reserve(m.cells.size());
  const double n = static_cast<double>(total);
  for (const CountCell& c : m.cells) {
    double ratio = (static_cast<double>(c.count) * n) /
                   (static_cast<double>(row_sums[c.target]) *
                    static_cast<double>(col_sums[c.context]));
    double pmi = std::log(ratio);
    if (pmi > 0.0) w.cells.push_back({c.target, c.context, pmi});
  }
  w.build_row_index();
  return w;
}

}  // namespace jointdsm
