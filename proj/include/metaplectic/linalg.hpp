#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <limits>
#include <utility>

#include "metaplectic/errors.hpp"

namespace metaplectic {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline double spectral_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Mat>(m).singularValues()(0);
}

// r-dimensional subspace of R^d held as an orthonormal basis matrix (d x r, r may be 0).
struct Subspace {
  std::size_t ambient_dim = 0;
  Mat basis;  // d x r, orthonormal columns

  std::size_t dim() const { return static_cast<std::size_t>(basis.cols()); }
  Mat projector() const { return basis * basis.transpose(); }

  static Subspace empty(std::size_t d) { return {d, Mat::Zero(static_cast<Eigen::Index>(d), 0)}; }
  static Subspace full(std::size_t d) {
    return {d, Mat::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d))};
  }
};

// Linear map meaningful only on `source`, carrying it onto `target`.
struct SubspaceMap {
  Subspace source;
  Subspace target;
  Mat matrix;  // d x d, annihilates source's orthogonal complement
};

inline double default_rank_tol(const Mat& m) {
  const double smax = spectral_norm(m);
  return static_cast<double>(std::max(m.rows(), m.cols())) * smax * 1e-14;
}

// (R(M), N(M)) from a singular value factorization; dim R + dim N = columns of M.
inline std::pair<Subspace, Subspace> range_kernel(const Mat& m, double rank_tol = -1.0) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (rank_tol < 0) rank_tol = default_rank_tol(m);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > rank_tol) ++r;
  Subspace range{static_cast<std::size_t>(m.rows()), svd.matrixU().leftCols(r)};
  Subspace kernel{static_cast<std::size_t>(m.cols()), svd.matrixV().rightCols(m.cols() - r)};
  return {range, kernel};
}

inline Mat pinv(const Mat& m, double rank_tol = -1.0) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (rank_tol < 0) rank_tol = default_rank_tol(m);
  const auto& s = svd.singularValues();
  Vec inv = Vec::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rank_tol) inv(i) = 1.0 / s(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

// Largest principal-angle sine between two subspaces; infinity when dims differ.
inline double subspace_gap(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) return std::numeric_limits<double>::infinity();
  if (a.dim() == 0) return 0.0;
  return spectral_norm(a.projector() - b.projector());
}

inline bool subspace_equal(const Subspace& a, const Subspace& b, double tol = 1e-9) {
  return subspace_gap(a, b) <= tol;
}

// {x : Mx in L}. Realized as the kernel of the composition with L's complement.
inline Subspace preimage(const Mat& m, const Subspace& l, double rank_tol = -1.0) {
  const Mat away = (Mat::Identity(m.rows(), m.rows()) - l.projector()) * m;
  return range_kernel(away, rank_tol).second;
}

// Orthonormal span of the columns of M (image subspace).
inline Subspace image(const Mat& m, double rank_tol = -1.0) { return range_kernel(m, rank_tol).first; }

}  // namespace metaplectic
