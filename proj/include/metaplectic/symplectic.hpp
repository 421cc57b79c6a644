#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "metaplectic/errors.hpp"
#include "metaplectic/linalg.hpp"
#include "metaplectic/util.hpp"

namespace metaplectic {

inline constexpr double tol_sympl = 1e-10;

// 2d x 2d matrix in phase-space block form (A B; C D) satisfying S J S^T = J
// with J = (0 I; -I 0).
struct BlockSymplectic {
  Mat a, b, c, d;

  Eigen::Index dim() const { return a.rows(); }

  Mat matrix() const {
    const Eigen::Index n = dim();
    Mat m(2 * n, 2 * n);
    m.topLeftCorner(n, n) = a;
    m.topRightCorner(n, n) = b;
    m.bottomLeftCorner(n, n) = c;
    m.bottomRightCorner(n, n) = d;
    return m;
  }

  BlockSymplectic transpose() const { return {a.transpose(), c.transpose(), b.transpose(), d.transpose()}; }
  // (D^T -B^T; -C^T A^T), the inverse of any symplectic block matrix.
  BlockSymplectic inverse() const { return {d.transpose(), -b.transpose(), -c.transpose(), a.transpose()}; }

  static BlockSymplectic identity(Eigen::Index n) {
    return {Mat::Identity(n, n), Mat::Zero(n, n), Mat::Zero(n, n), Mat::Identity(n, n)};
  }
};

inline Mat j_matrix(Eigen::Index d) {
  Mat j = Mat::Zero(2 * d, 2 * d);
  j.topRightCorner(d, d) = Mat::Identity(d, d);
  j.bottomLeftCorner(d, d) = -Mat::Identity(d, d);
  return j;
}

// Worst violation of the symplectic identities, probed on both sides.
inline double symplectic_residual(const BlockSymplectic& s) {
  const Mat m = s.matrix();
  const Mat j = j_matrix(s.dim());
  const double r1 = max_abs(Mat(m * j * m.transpose() - j));
  const double r2 = max_abs(Mat(m.transpose() * j * m - j));
  return std::max(r1, r2);
}

inline BlockSymplectic make_symplectic(const Mat& a, const Mat& b, const Mat& c, const Mat& d,
                                       double tol = tol_sympl) {
  const Eigen::Index n = a.rows();
  for (const Mat* blk : {&a, &b, &c, &d})
    if (blk->rows() != n || blk->cols() != n) throw InvalidArg("make_symplectic: blocks must be square and equal");
  BlockSymplectic s{a, b, c, d};
  const double r = symplectic_residual(s);
  if (r > tol) throw NotSymplectic("block matrix violates the symplectic identities", r);
  return s;
}

inline BlockSymplectic make_symplectic(const Mat& m, double tol = tol_sympl) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0) throw InvalidArg("make_symplectic: matrix must be 2d x 2d");
  const Eigen::Index n = m.rows() / 2;
  return make_symplectic(m.topLeftCorner(n, n), m.topRightCorner(n, n), m.bottomLeftCorner(n, n),
                         m.bottomRightCorner(n, n), tol);
}

// --- generator families ---

// (P^{-T} 0; 0 P): the linear change of variables x -> P x.
inline BlockSymplectic sympl_dilation(const Mat& p) {
  Eigen::FullPivLU<Mat> lu(p);
  if (!lu.isInvertible()) throw SingularMatrix("dilation block must be invertible");
  const Mat pinv_t = lu.inverse().transpose();
  const Eigen::Index n = p.rows();
  return {pinv_t, Mat::Zero(n, n), Mat::Zero(n, n), p};
}

// (I -C; 0 I) for symmetric C: multiplication by the chirp e^{-pi i C x.x}.
inline BlockSymplectic sympl_chirp(const Mat& c) {
  if (max_abs(Mat(c - c.transpose())) > 1e-12 * std::max(1.0, max_abs(c)))
    throw InvalidArg("chirp block must be symmetric");
  const Eigen::Index n = c.rows();
  return {Mat::Identity(n, n), -c, Mat::Zero(n, n), Mat::Identity(n, n)};
}

// (I 0; C I) for symmetric C; preserves the A block under left multiplication.
inline BlockSymplectic sympl_lower_shear(const Mat& c) {
  if (max_abs(Mat(c - c.transpose())) > 1e-12 * std::max(1.0, max_abs(c)))
    throw InvalidArg("shear block must be symmetric");
  const Eigen::Index n = c.rows();
  return {Mat::Identity(n, n), Mat::Zero(n, n), c, Mat::Identity(n, n)};
}

inline BlockSymplectic sympl_j(Eigen::Index n) {
  return {Mat::Zero(n, n), Mat::Identity(n, n), -Mat::Identity(n, n), Mat::Zero(n, n)};
}

inline BlockSymplectic compose(const BlockSymplectic& s1, const BlockSymplectic& s2) {
  return make_symplectic(Mat(s1.matrix() * s2.matrix()), 1e-8);
}

namespace detail {

inline Mat random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Mat g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = rng.normal();
  return g;
}

inline Mat random_rotation(Eigen::Index n, Rng& rng) {
  Eigen::HouseholderQR<Mat> qr(random_gaussian(n, n, rng));
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  return q;
}

// Well-conditioned dilation block: singular values in [e^{-0.35}, e^{0.35}].
inline Mat random_dilation_block(Eigen::Index n, Rng& rng) {
  Vec s(n);
  for (Eigen::Index i = 0; i < n; ++i) s(i) = std::exp(rng.uniform(-0.35, 0.35));
  return random_rotation(n, rng) * s.asDiagonal() * random_rotation(n, rng).transpose();
}

// Tempered symmetric block: spectral norm at most 0.7.
inline Mat random_chirp_block(Eigen::Index n, Rng& rng) {
  Mat g = random_gaussian(n, n, rng);
  Mat c = 0.5 * (g + g.transpose());
  const double nrm = spectral_norm(c);
  if (nrm > 0) c *= rng.uniform(0.2, 0.7) / nrm;
  return c;
}

}  // namespace detail

// Deterministic product of n_factors generators (dilation, chirp, J).
inline BlockSymplectic random_symplectic(Eigen::Index d, int n_factors, std::uint64_t seed) {
  if (d < 1 || n_factors < 1) throw InvalidArg("random_symplectic: d and n_factors must be positive");
  Rng rng(seed);
  Mat m = Mat::Identity(2 * d, 2 * d);
  for (int f = 0; f < n_factors; ++f) {
    const std::size_t kind = rng.below(3);
    BlockSymplectic g = kind == 0   ? sympl_dilation(detail::random_dilation_block(d, rng))
                        : kind == 1 ? sympl_chirp(detail::random_chirp_block(d, rng))
                                    : sympl_j(d);
    m = g.matrix() * m;
  }
  return make_symplectic(m, 1e-8);
}

// Symplectic with dim R(A) = rank_a exactly: a partial rotation seed whose A
// block is diag(I_r, 0), multiplied on the left by A-rank-preserving factors
// (dilations, lower shears) and on the right by (dilations, chirps).
inline BlockSymplectic random_symplectic_with_rank(Eigen::Index d, Eigen::Index rank_a, int n_factors,
                                                   std::uint64_t seed) {
  if (d < 1 || rank_a < 0 || rank_a > d) throw InvalidArg("random_symplectic_with_rank: bad rank");
  Rng rng(seed);
  Mat a0 = Mat::Zero(d, d), b0 = Mat::Zero(d, d), c0 = Mat::Zero(d, d), d0 = Mat::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (i < rank_a) {
      a0(i, i) = 1.0;
      d0(i, i) = 1.0;
    } else {
      b0(i, i) = 1.0;
      c0(i, i) = -1.0;
    }
  }
  Mat m = BlockSymplectic{a0, b0, c0, d0}.matrix();
  for (int f = 0; f < n_factors; ++f) {
    const bool dil_left = rng.below(2) == 0;
    const bool dil_right = rng.below(2) == 0;
    const BlockSymplectic left = dil_left ? sympl_dilation(detail::random_dilation_block(d, rng))
                                          : sympl_lower_shear(detail::random_chirp_block(d, rng));
    const BlockSymplectic right = dil_right ? sympl_dilation(detail::random_dilation_block(d, rng))
                                            : sympl_chirp(detail::random_chirp_block(d, rng));
    m = left.matrix() * m * right.matrix();
  }
  return make_symplectic(m, 1e-8);
}

// A^inv of the restriction R(M^T) -> R(M); the d x d matrix annihilates N(M).
inline SubspaceMap pseudo_inverse_on_range(const Mat& m, double rank_tol = -1.0) {
  auto [range, kernel] = range_kernel(m, rank_tol);
  auto [range_t, kernel_t] = range_kernel(Mat(m.transpose()), rank_tol);
  (void)kernel;
  (void)kernel_t;
  return {range, range_t, pinv(m, rank_tol)};
}

// B^inv : N(A^T) -> N(A) with B B^inv = identity on N(A^T).
inline SubspaceMap b_pseudo_inverse(const BlockSymplectic& s, double rank_tol = -1.0) {
  const Subspace n_a = range_kernel(s.a, rank_tol).second;
  const Subspace n_at = range_kernel(Mat(s.a.transpose()), rank_tol).second;
  if (n_a.dim() != n_at.dim())
    throw IsomorphismFailure("kernel dimensions of A and A^T disagree");
  if (n_a.dim() == 0) {
    const auto d = static_cast<std::size_t>(s.dim());
    return {Subspace::empty(d), Subspace::empty(d), Mat::Zero(s.dim(), s.dim())};
  }
  const Mat k = n_at.basis.transpose() * s.b * n_a.basis;
  Eigen::JacobiSVD<Mat> svd(k);
  if (svd.singularValues()(svd.singularValues().size() - 1) <= 1e-10)
    throw IsomorphismFailure("B does not map N(A) onto N(A^T)");
  Eigen::FullPivLU<Mat> lu(k);
  return {n_at, n_a, Mat(n_a.basis * lu.inverse() * n_at.basis.transpose())};
}

// q_L(M): volume scale of the parallelepiped M(unit cube of L). Conventions:
// 1 when L = {0} or M = 0; 0 when M collapses L.
inline double volume_q(const Subspace& l, const Mat& m, double rank_tol = -1.0) {
  if (l.dim() == 0) return 1.0;
  if (max_abs(m) == 0.0) return 1.0;
  const Mat me = m * l.basis;
  Eigen::JacobiSVD<Mat> svd(me);
  if (rank_tol < 0) rank_tol = default_rank_tol(me);
  double prod = 1.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double sv = svd.singularValues()(i);
    if (sv <= rank_tol) return 0.0;
    prod *= sv;
  }
  return prod;
}

// s(M): product of the nonzero singular values; empty product is 1.
inline double singular_product(const Mat& m, double rank_tol = -1.0) {
  Eigen::JacobiSVD<Mat> svd(m);
  if (rank_tol < 0) rank_tol = default_rank_tol(m);
  double prod = 1.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > rank_tol) prod *= svd.singularValues()(i);
  return prod;
}

// Normalizing constants of the integral representations:
// c = sqrt(s(A) / q_{N(A)}(C)), c1 = 1 / sqrt(s(A) q_{N(A)}(C)).
inline std::pair<double, double> constants(const BlockSymplectic& s, double rank_tol = -1.0) {
  const Subspace n_a = range_kernel(s.a, rank_tol).second;
  const double sa = singular_product(s.a, rank_tol);
  const double q = volume_q(n_a, s.c, rank_tol);
  if (q <= 1e-12) throw DegenerateVolume("C carries no volume on N(A)");
  return {std::sqrt(sa / q), 1.0 / std::sqrt(sa * q)};
}

struct MappingCheck {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

// Structural subspace relations every symplectic block matrix satisfies.
inline std::vector<MappingCheck> verify_subspace_mappings(const BlockSymplectic& s, double tol = 1e-9,
                                                          double rank_tol = -1.0) {
  const auto [r_a, n_a] = range_kernel(s.a, rank_tol);
  const auto [r_at, n_at] = range_kernel(Mat(s.a.transpose()), rank_tol);
  std::vector<MappingCheck> out;
  auto push_gap = [&](const std::string& name, const Subspace& x, const Subspace& y) {
    const double g = subspace_gap(x, y);
    out.push_back({name, g <= tol, g});
  };
  push_gap("ct_preimage_of_range_at_is_range_a", preimage(Mat(s.c.transpose()), r_at, rank_tol), r_a);
  {
    const Subspace img = image(Mat(s.c * n_a.basis), rank_tol);
    const bool pass = img.dim() == n_a.dim();
    out.push_back({"c_preserves_kernel_dimension",
                   pass,
                   pass ? 0.0 : std::abs(static_cast<double>(img.dim()) - static_cast<double>(n_a.dim()))});
  }
  push_gap("b_preimage_of_range_a_is_range_at", preimage(s.b, r_a, rank_tol), r_at);
  push_gap("bt_image_of_kernel_at_is_kernel_a", image(Mat(s.b.transpose() * n_at.basis), rank_tol), n_a);
  {
    const double g = n_a.dim() == 0 ? 0.0
                                    : spectral_norm(Mat((Mat::Identity(s.dim(), s.dim()) - n_at.projector()) *
                                                        s.d * n_a.basis));
    out.push_back({"d_maps_kernel_a_into_kernel_at", g <= tol, g});
  }
  {
    const bool pass = n_a.dim() == n_at.dim();
    out.push_back({"kernel_dims_agree",
                   pass,
                   pass ? 0.0 : std::abs(static_cast<double>(n_a.dim()) - static_cast<double>(n_at.dim()))});
  }
  return out;
}

inline bool all_pass(const std::vector<MappingCheck>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

}  // namespace metaplectic
