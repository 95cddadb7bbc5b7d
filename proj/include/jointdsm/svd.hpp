// Truncated SVD of the weighted matrix: a seeded randomized range finder
// over the sparse cells, with a classical dense decomposition as the test
// oracle. Embedding rows are U_k * Sigma_k.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "jointdsm/weighting.hpp"

namespace jointdsm {

struct SvdFactors {
  Eigen::MatrixXd u;      // m x k, orthonormal columns
  Eigen::VectorXd sigma;  // k, non-increasing
  Eigen::MatrixXd v;      // n x k, empty unless requested
};

struct EmbeddingMeta {
  std::string source_hash;  // checksum of the weighted matrix it came from
  int k = 0;
  std::string variant = "rrf-p10-q2-jacobi";
  std::string log_base = "e";
  std::uint64_t seed = 0;
};

struct EmbeddingMatrix {
  Vocabulary targets;
  int k = 0;
  Eigen::MatrixXd rows;  // n_targets x k
  EmbeddingMeta meta;
};

// Rank-k factors via randomized range finding (Gaussian test matrix from
// `seed`, oversampling 10, two power iterations). Deterministic for fixed
// inputs. Throws RankTooLarge when k exceeds min(dims), ConvergenceFailure
// on non-finite singular values.
SvdFactors randomized_svd(const WeightedMatrix& w, int k, std::uint64_t seed,
                          bool want_v = false);

EmbeddingMatrix truncated_svd(const WeightedMatrix& w, int k,
                              std::uint64_t seed);

// Classical full SVD for test-scale dense matrices (<= 2000 x 2000),
// Sigma descending. Throws SizeExceeded beyond that bound.
SvdFactors dense_svd_oracle(const Eigen::MatrixXd& a);

// Dense copy of the sparse weighted matrix (oracle-side convenience).
Eigen::MatrixXd to_dense(const WeightedMatrix& w);

// One-sided Jacobi SVD of a small dense matrix (rows >= cols), used on the
// projected matrix inside randomized_svd.
void onesided_jacobi_svd(Eigen::MatrixXd a, Eigen::MatrixXd& u,
                         Eigen::VectorXd& sigma, Eigen::MatrixXd& v);

}  // namespace jointdsm
