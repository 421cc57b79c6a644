#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "metaplectic/errors.hpp"
#include "metaplectic/grid.hpp"
#include "metaplectic/linalg.hpp"
#include "metaplectic/util.hpp"

namespace metaplectic {

// Trigonometric oversampling: zero-pad the centered spectrum by a factor q on
// every axis, so the returned signal lives on the same extents with q times
// the samples and agrees with the input at the original nodes.
inline GridSignal oversample(const GridSignal& f, std::size_t q) {
  if (q == 0) throw InvalidArg("oversample: factor must be positive");
  if (q == 1) return f;
  GridSignal spectrum = fourier(f, -1);
  GridSignal padded = pad_extend(spectrum, q);
  return fourier(padded, +1);
}

namespace detail {

// Catmull-Rom weights for the four taps around a fractional offset t in [0,1).
inline void catmull_weights(double t, double w[4]) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  w[0] = 0.5 * (-t3 + 2.0 * t2 - t);
  w[1] = 0.5 * (3.0 * t3 - 5.0 * t2 + 2.0);
  w[2] = 0.5 * (-3.0 * t3 + 4.0 * t2 + t);
  w[3] = 0.5 * (t3 - t2);
}

}  // namespace detail

// Point evaluator for a sampled signal: cubic Catmull-Rom on a trigonometric
// oversampling of the input grid. Points outside the sampled box read zero.
class Resampler {
 public:
  Resampler(const GridSignal& f, std::size_t q) : fine_(oversample(f, q)) {}

  const GridSpec& fine_spec() const { return fine_.spec; }

  cd operator()(const Vec& x) const {
    const std::size_t d = fine_.spec.dim();
    double wts[4 * 8];
    std::vector<long> base(d);
    for (std::size_t a = 0; a < d; ++a) {
      const Axis& ax = fine_.spec.axes[a];
      const double u = x(static_cast<Eigen::Index>(a)) / ax.dx() + static_cast<double>(ax.n) / 2.0;
      const double fl = std::floor(u);
      base[a] = static_cast<long>(fl) - 1;
      detail::catmull_weights(u - fl, wts + 4 * a);
    }
    cd acc = 0.0;
    std::vector<std::size_t> tap(d, 0);
    for (;;) {
      double w = 1.0;
      std::size_t flat = 0;
      bool inside = true;
      for (std::size_t a = 0; a < d && inside; ++a) {
        const long idx = base[a] + static_cast<long>(tap[a]);
        if (idx < 0 || idx >= static_cast<long>(fine_.spec.axes[a].n)) {
          inside = false;
          break;
        }
        w *= wts[4 * a + tap[a]];
        flat = flat * fine_.spec.axes[a].n + static_cast<std::size_t>(idx);
      }
      if (inside) acc += w * fine_.values[flat];
      std::size_t a = d;
      while (a > 0) {
        --a;
        if (++tap[a] < 4) break;
        tap[a] = 0;
        if (a == 0) return acc;
      }
      if (d == 0) return acc;
    }
  }

 private:
  GridSignal fine_;
};

// Sample f(M x) back onto the grid of f.
inline GridSignal warp_linear(const GridSignal& f, const Mat& m, std::size_t q = 4) {
  if (m.rows() != static_cast<Eigen::Index>(f.spec.dim()) || m.cols() != m.rows())
    throw InvalidArg("warp_linear: matrix shape does not match the grid dimension");
  Resampler r(f, q);
  GridSignal g(f.spec);
  for_each_point(f.spec, [&](std::size_t flat, const std::vector<std::size_t>& k) {
    g.values[flat] = r(m * grid_point(f.spec, k));
  });
  return g;
}

// Rotate the sampling frame: returns x -> f(Q x) for orthogonal Q. The grid
// must be a hypercube so the rotated box is the sampled box.
inline GridSignal rotate_frame(const GridSignal& f, const Mat& q_frame, std::size_t q = 4) {
  const auto d = static_cast<Eigen::Index>(f.spec.dim());
  if (q_frame.rows() != d || q_frame.cols() != d)
    throw InvalidArg("rotate_frame: frame shape does not match the grid dimension");
  const double ortho = max_abs(Mat(q_frame.transpose() * q_frame - Mat::Identity(d, d)));
  if (ortho > 1e-10) throw InvalidArg("rotate_frame: frame is not orthogonal");
  for (std::size_t a = 1; a < f.spec.dim(); ++a)
    if (f.spec.axes[a].n != f.spec.axes[0].n ||
        std::abs(f.spec.axes[a].extent - f.spec.axes[0].extent) > 1e-12 * f.spec.axes[0].extent)
      throw SpecMismatch("rotate_frame: grid axes must be identical");
  bool permutation = true;
  for (Eigen::Index i = 0; i < d && permutation; ++i)
    for (Eigen::Index j = 0; j < d && permutation; ++j) {
      const double v = std::abs(q_frame(i, j));
      if (v > 1e-12 && std::abs(v - 1.0) > 1e-12) permutation = false;
    }
  if (permutation) {
    // Signed axis permutations are exact on the lattice; skip interpolation.
    GridSignal g(f.spec);
    for_each_point(f.spec, [&](std::size_t flat, const std::vector<std::size_t>& k) {
      std::vector<std::size_t> kk(f.spec.dim());
      bool ok = true;
      for (Eigen::Index i = 0; i < d && ok; ++i) {
        // (Q x)_i = sign * x_j with q_frame(i, j) = sign.
        Eigen::Index j = 0;
        double sign = 0.0;
        for (Eigen::Index c = 0; c < d; ++c)
          if (std::abs(q_frame(i, c)) > 0.5) {
            j = c;
            sign = q_frame(i, c) > 0 ? 1.0 : -1.0;
          }
        const std::size_t n = f.spec.axes[static_cast<std::size_t>(j)].n;
        const std::size_t kj = k[static_cast<std::size_t>(j)];
        kk[static_cast<std::size_t>(i)] = sign > 0 ? kj : (n - kj) % n;
      }
      (void)ok;
      g.values[flat] = f.values[f.flat(kk)];
    });
    return g;
  }
  return warp_linear(f, q_frame, q);
}

// Partial Fourier transform along an arbitrary subspace: rotate a frame whose
// leading columns span L onto the axes, transform those axes, rotate back.
// Requires a self-dual hypercubic grid so spatial and frequency slots agree.
inline GridSignal partial_fourier(const GridSignal& f, const Subspace& l, const Mat& frame, int sign = -1) {
  const auto d = static_cast<Eigen::Index>(f.spec.dim());
  if (frame.rows() != d || frame.cols() != d)
    throw InvalidArg("partial_fourier: frame shape does not match the grid dimension");
  for (std::size_t a = 0; a < f.spec.dim(); ++a) {
    const Axis& ax = f.spec.axes[a];
    const Axis dual = ax.dual();
    if (dual.n != ax.n || std::abs(dual.extent - ax.extent) > 1e-12 * ax.extent)
      throw SpecMismatch("partial_fourier: frame form needs a self-dual grid");
  }
  if (l.dim() == 0) return f;
  // Leading frame columns must span L.
  Subspace lead{l.ambient_dim, frame.leftCols(static_cast<Eigen::Index>(l.dim()))};
  if (subspace_gap(lead, l) > 1e-9)
    throw InvalidArg("partial_fourier: leading frame columns do not span the subspace");
  GridSignal g = rotate_frame(f, frame);
  std::vector<std::size_t> axs(l.dim());
  for (std::size_t a = 0; a < l.dim(); ++a) axs[a] = a;
  GridSignal h = partial_fourier_axes(g, axs, sign);
  h.spec = f.spec;
  return rotate_frame(h, Mat(frame.transpose()));
}

}  // namespace metaplectic
