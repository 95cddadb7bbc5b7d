#include "jointdsm/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "jointdsm/errors.hpp"

namespace jointdsm {

namespace {

constexpr int kOversampling = 10;
constexpr int kPowerIterations = 2;

// Seeded standard normals via Box-Muller over raw mt19937_64 output, so a
// seed means the same matrix on every standard library.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = unit_open();
    double u2 = unit_open();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  double unit_open() {  // (0, 1]
    return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1p-53;
  }
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols,
                                std::uint64_t seed) {
  GaussianSource g(seed);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = g.next();
  return m;
}

// y = W * x for the sparse weighted matrix.
Eigen::MatrixXd spmm(const WeightedMatrix& w, const Eigen::MatrixXd& x) {
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(w.targets.size()), x.cols());
  for (const WeightCell& c : w.cells)
    y.row(c.target) += c.weight * x.row(c.context);
  return y;
}

// y = W^T * x.
Eigen::MatrixXd spmm_t(const WeightedMatrix& w, const Eigen::MatrixXd& x) {
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(w.contexts.size()), x.cols());
  for (const WeightCell& c : w.cells)
    y.row(c.context) += c.weight * x.row(c.target);
  return y;
}

Eigen::MatrixXd thin_q(const Eigen::MatrixXd& m) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  q.applyOnTheLeft(qr.householderQ());
  return q;
}

void sort_descending(Eigen::MatrixXd& u, Eigen::VectorXd& sigma,
                     Eigen::MatrixXd& v) {
  std::vector<Eigen::Index> order(sigma.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&sigma](Eigen::Index a, Eigen::Index b) {
                     return sigma(a) > sigma(b);
                   });
  Eigen::MatrixXd u2(u.rows(), u.cols());
  Eigen::MatrixXd v2(v.rows(), v.cols());
  Eigen::VectorXd s2(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    u2.col(i) = u.col(order[i]);
    v2.col(i) = v.col(order[i]);
    s2(i) = sigma(order[i]);
  }
  u = std::move(u2);
  v = std::move(v2);
  sigma = std::move(s2);
}

}  // namespace

void onesided_jacobi_svd(Eigen::MatrixXd a, Eigen::MatrixXd& u,
                         Eigen::VectorXd& sigma, Eigen::MatrixXd& v) {
  const Eigen::Index n = a.cols();
  v = Eigen::MatrixXd::Identity(n, n);
  const double tol = 1e-15;
  const int max_sweeps = 60;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        double alpha = a.col(p).squaredNorm();
        double beta = a.col(q).squaredNorm();
        double gamma = a.col(p).dot(a.col(q));
        if (std::abs(gamma) <= tol * std::sqrt(alpha * beta) || gamma == 0.0)
          continue;
        rotated = true;
        double zeta = (beta - alpha) / (2.0 * gamma);
        double t = std::copysign(1.0, zeta) /
                   (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        Eigen::VectorXd ap = a.col(p);
        a.col(p) = c * ap - s * a.col(q);
        a.col(q) = s * ap + c * a.col(q);
        Eigen::VectorXd vp = v.col(p);
        v.col(p) = c * vp - s * v.col(q);
        v.col(q) = s * vp + c * v.col(q);
      }
    }
    if (!rotated) break;
  }

  sigma.resize(n);
  u.resize(a.rows(), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double norm = a.col(j).norm();
    sigma(j) = norm;
    u.col(j) = norm > 0.0 ? (a.col(j) / norm).eval()
                          : Eigen::VectorXd::Zero(a.rows());
  }
  sort_descending(u, sigma, v);
}

SvdFactors randomized_svd(const WeightedMatrix& w, int k, std::uint64_t seed,
                          bool want_v) {
  const Eigen::Index m = static_cast<Eigen::Index>(w.targets.size());
  const Eigen::Index n = static_cast<Eigen::Index>(w.contexts.size());
  if (k < 1 || k > std::min(m, n))
    throw RankTooLarge("k=" + std::to_string(k) + " exceeds matrix dims " +
                       std::to_string(m) + "x" + std::to_string(n));

  const Eigen::Index l = std::min<Eigen::Index>(k + kOversampling,
                                                std::min(m, n));
  Eigen::MatrixXd q = thin_q(spmm(w, gaussian_matrix(n, l, seed)));
  for (int it = 0; it < kPowerIterations; ++it) {
    Eigen::MatrixXd qz = thin_q(spmm_t(w, q));
    q = thin_q(spmm(w, qz));
  }

  // B = Q^T W is l x n; work on B^T = Q2 R so the Jacobi stage only sees
  // an l x l triangle.
  Eigen::MatrixXd bt = spmm_t(w, q);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(bt);
  Eigen::MatrixXd r =
      qr.matrixQR().topRows(l).triangularView<Eigen::Upper>();
  Eigen::MatrixXd ur, vr;
  Eigen::VectorXd sig;
  onesided_jacobi_svd(r, ur, sig, vr);

  if (!sig.allFinite())
    throw ConvergenceFailure("non-finite singular values");

  SvdFactors f;
  f.u = q * vr.leftCols(k);
  f.sigma = sig.head(k);
  if (want_v) {
    Eigen::MatrixXd q2 = Eigen::MatrixXd::Identity(n, l);
    q2.applyOnTheLeft(qr.householderQ());
    f.v = q2 * ur.leftCols(k);
  }
  return f;
}

EmbeddingMatrix truncated_svd(const WeightedMatrix& w, int k,
                              std::uint64_t seed) {
  SvdFactors f = randomized_svd(w, k, seed);
  EmbeddingMatrix e;
  for (const std::string& t : w.targets.texts()) e.targets.intern(t);
  e.k = k;
  e.rows = f.u * f.sigma.asDiagonal();
  // An all-zero input row maps to exactly zero; without this the QR stage
  // leaves epsilon-scale junk there and downstream cosines become noise.
  std::vector<bool> nonzero(w.targets.size(), false);
  for (const WeightCell& c : w.cells) nonzero[c.target] = true;
  for (std::size_t r = 0; r < nonzero.size(); ++r)
    if (!nonzero[r]) e.rows.row(static_cast<Eigen::Index>(r)).setZero();
  if (!e.rows.allFinite())
    throw ConvergenceFailure("non-finite embedding entries");
  e.meta.k = k;
  e.meta.seed = seed;
  return e;
}

SvdFactors dense_svd_oracle(const Eigen::MatrixXd& a) {
  if (a.rows() > 2000 || a.cols() > 2000)
    throw SizeExceeded("dense oracle is test-scale only (<= 2000 x 2000)");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU |
                                               Eigen::ComputeThinV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

Eigen::MatrixXd to_dense(const WeightedMatrix& w) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(w.targets.size()),
      static_cast<Eigen::Index>(w.contexts.size()));
  for (const WeightCell& c : w.cells) d(c.target, c.context) = c.weight;
  return d;
}

}  // namespace jointdsm
