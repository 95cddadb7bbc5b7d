// Shared helpers for the test suites.
#pragma once

#include <Eigen/Dense>
#include <sstream>
#include <string>

#include "jointdsm/conll.hpp"
#include "jointdsm/weighting.hpp"

#ifndef JDSM_DATA_DIR
#define JDSM_DATA_DIR "data"
#endif

namespace testutil {

inline std::string data_path(const std::string& name) {
  return std::string(JDSM_DATA_DIR) + "/" + name;
}

// Parses a single inline CoNLL block.
inline jointdsm::ParsedSentence sentence_from(
    const std::string& block,
    jointdsm::ConllFormat fmt = jointdsm::ConllFormat::ConllU,
    jointdsm::Tagset tagset = jointdsm::Tagset::Upos) {
  std::istringstream in(block);
  jointdsm::ConllReader reader(in, {fmt, tagset, /*strict=*/true, nullptr},
                               "inline");
  jointdsm::ParsedSentence s;
  if (!reader.next(s)) throw std::runtime_error("no sentence in block");
  return s;
}

inline jointdsm::WeightedMatrix weighted_from_dense(const Eigen::MatrixXd& d) {
  jointdsm::WeightedMatrix w;
  for (Eigen::Index i = 0; i < d.rows(); ++i)
    w.targets.intern("t" + std::to_string(i));
  for (Eigen::Index j = 0; j < d.cols(); ++j)
    w.contexts.intern("c" + std::to_string(j));
  for (Eigen::Index i = 0; i < d.rows(); ++i)
    for (Eigen::Index j = 0; j < d.cols(); ++j)
      if (d(i, j) != 0.0)
        w.cells.push_back({static_cast<std::uint32_t>(i),
                           static_cast<std::uint32_t>(j), d(i, j)});
  w.build_row_index();
  return w;
}

inline jointdsm::CooccurrenceMatrix counts_from_dense(
    const Eigen::MatrixXd& d) {
  jointdsm::CooccurrenceMatrix m;
  for (Eigen::Index i = 0; i < d.rows(); ++i)
    m.targets.intern("t" + std::to_string(i));
  for (Eigen::Index j = 0; j < d.cols(); ++j)
    m.contexts.intern("c" + std::to_string(j));
  for (Eigen::Index i = 0; i < d.rows(); ++i)
    for (Eigen::Index j = 0; j < d.cols(); ++j)
      if (d(i, j) > 0.0)
        m.cells.push_back({static_cast<std::uint32_t>(i),
                           static_cast<std::uint32_t>(j),
                           static_cast<std::uint64_t>(d(i, j))});
  for (const std::string& t : m.targets.texts()) m.target_totals[t] = 1000;
  return m;
}

}  // namespace testutil
