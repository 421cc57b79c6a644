#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "metaplectic/errors.hpp"
#include "metaplectic/fft.hpp"
#include "metaplectic/linalg.hpp"
#include "metaplectic/util.hpp"

namespace metaplectic {

// One axis of a centered uniform grid: samples x_k = (k - n/2) dx, k = 0..n-1,
// with dx = extent / n. The dual axis carries the frequency grid of the
// centered transform: spacing 1/extent, extent n/extent, so dx dxi n = 1.
struct Axis {
  std::size_t n = 0;
  double extent = 0.0;

  double dx() const { return extent / static_cast<double>(n); }
  double dxi() const { return 1.0 / extent; }
  Axis dual() const { return {n, static_cast<double>(n) / extent}; }
  double coord(std::size_t k) const { return (static_cast<double>(k) - static_cast<double>(n) / 2.0) * dx(); }
  double freq(std::size_t m) const { return (static_cast<double>(m) - static_cast<double>(n) / 2.0) * dxi(); }
};

struct GridSpec {
  std::vector<Axis> axes;

  std::size_t dim() const { return axes.size(); }
  std::size_t size() const {
    std::size_t s = 1;
    for (const auto& a : axes) s *= a.n;
    return s;
  }
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d(axes.size());
    for (std::size_t a = 0; a < axes.size(); ++a) d[a] = axes[a].n;
    return d;
  }
  double cell() const {
    double v = 1.0;
    for (const auto& a : axes) v *= a.dx();
    return v;
  }
  GridSpec dual() const {
    GridSpec s = *this;
    for (auto& a : s.axes) a = a.dual();
    return s;
  }
  bool compatible(const GridSpec& o) const {
    if (axes.size() != o.axes.size()) return false;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      if (axes[a].n != o.axes[a].n) return false;
      if (std::abs(axes[a].extent - o.axes[a].extent) > 1e-12 * axes[a].extent) return false;
    }
    return true;
  }

  static GridSpec uniform(std::size_t d, std::size_t n, double extent) {
    GridSpec s;
    s.axes.assign(d, Axis{n, extent});
    return s;
  }
  // extent = sqrt(n): space and frequency grids coincide axis by axis.
  static GridSpec self_dual(std::size_t d, std::size_t n) {
    return uniform(d, n, std::sqrt(static_cast<double>(n)));
  }
};

struct GridSignal {
  GridSpec spec;
  std::vector<cd> values;

  explicit GridSignal(GridSpec s = {}) : spec(std::move(s)), values(spec.dim() ? spec.size() : 0) {}
  GridSignal(GridSpec s, std::vector<cd> v) : spec(std::move(s)), values(std::move(v)) {}

  std::size_t flat(const std::vector<std::size_t>& k) const {
    std::size_t idx = 0;
    for (std::size_t a = 0; a < spec.dim(); ++a) idx = idx * spec.axes[a].n + k[a];
    return idx;
  }
};

// Row-major iteration with a running multi-index.
template <typename F>
inline void for_each_point(const GridSpec& spec, F&& fn) {
  std::vector<std::size_t> k(spec.dim(), 0);
  const std::size_t total = spec.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    fn(flat, k);
    for (std::size_t a = spec.dim(); a-- > 0;) {
      if (++k[a] < spec.axes[a].n) break;
      k[a] = 0;
    }
  }
}

inline Vec grid_point(const GridSpec& spec, const std::vector<std::size_t>& k) {
  Vec x(static_cast<Eigen::Index>(spec.dim()));
  for (std::size_t a = 0; a < spec.dim(); ++a) x(static_cast<Eigen::Index>(a)) = spec.axes[a].coord(k[a]);
  return x;
}

namespace detail {

// Global phase of the centered transform: e^{-sign pi i n / 2} = (-sign i)^n.
inline cd centered_phase(std::size_t n, int sign) {
  switch (n % 4) {
    case 0: return {1.0, 0.0};
    case 1: return sign < 0 ? cd{0.0, -1.0} : cd{0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return sign < 0 ? cd{0.0, 1.0} : cd{0.0, -1.0};
  }
}

}  // namespace detail

// In-place centered transform along one axis:
//   out[m] = scale * sum_k in[k] e^{sign 2 pi i x_k xi_m},
// where x_k runs on the axis, xi_m on its dual, and scale = dx (the Riemann
// measure of the integral it discretizes). Realized as a plain FFT conjugated
// by (-1)^k modulations. Updates the axis to its dual.
inline void centered_fourier_axis(GridSignal& f, std::size_t axis, int sign) {
  const Axis ax = f.spec.axes[axis];
  const std::size_t n = ax.n;
  const auto dims = f.spec.dims();
  std::size_t inner = 1;
  for (std::size_t a = axis + 1; a < dims.size(); ++a) inner *= dims[a];
  std::size_t outer = 1;
  for (std::size_t a = 0; a < axis; ++a) outer *= dims[a];

  const cd scale = ax.dx() * detail::centered_phase(n, sign);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < inner; ++i) {
      cd* line = f.values.data() + o * n * inner + i;
      for (std::size_t k = 1; k < n; k += 2) line[k * inner] = -line[k * inner];
      fft::transform(line, n, inner, sign);
      for (std::size_t m = 0; m < n; ++m) line[m * inner] *= (m % 2 ? -scale : scale);
    }
  }
  f.spec.axes[axis] = ax.dual();
}

inline void centered_fourier_axes(GridSignal& f, const std::vector<std::size_t>& axs, int sign) {
  for (std::size_t a : axs) centered_fourier_axis(f, a, sign);
}

// Discrete surrogate of F f(xi) = int f(x) e^{-2 pi i x xi} dx (sign -1) and
// of the inverse transform (sign +1); result lives on the dual grid.
inline GridSignal fourier(const GridSignal& f, int sign) {
  GridSignal g = f;
  for (std::size_t a = 0; a < g.spec.dim(); ++a) centered_fourier_axis(g, a, sign);
  return g;
}

// Axes selected by an axis-aligned subspace; throws otherwise.
inline std::vector<std::size_t> aligned_axes(const Subspace& l, double tol = 1e-10) {
  std::vector<std::size_t> axs;
  std::vector<bool> used(l.ambient_dim, false);
  for (Eigen::Index j = 0; j < l.basis.cols(); ++j) {
    Eigen::Index arg = 0;
    l.basis.col(j).cwiseAbs().maxCoeff(&arg);
    Vec unit = Vec::Zero(l.basis.rows());
    unit(arg) = l.basis(arg, j) >= 0 ? 1.0 : -1.0;
    if ((l.basis.col(j) - unit).cwiseAbs().maxCoeff() > tol || used[static_cast<std::size_t>(arg)])
      throw NonAxisAligned("subspace is not spanned by coordinate axes");
    used[static_cast<std::size_t>(arg)] = true;
    axs.push_back(static_cast<std::size_t>(arg));
  }
  return axs;
}

// Partial transform over an axis-aligned subspace: forward integral on the
// selected axes, identity on the rest.
inline GridSignal partial_fourier(const GridSignal& f, const Subspace& l) {
  if (l.ambient_dim != f.spec.dim()) throw SpecMismatch("subspace ambient dim vs grid dim");
  GridSignal g = f;
  centered_fourier_axes(g, aligned_axes(l), -1);
  return g;
}

inline GridSignal partial_fourier_axes(const GridSignal& f, const std::vector<std::size_t>& axs, int sign = -1) {
  GridSignal g = f;
  centered_fourier_axes(g, axs, sign);
  return g;
}

// Centered zero-extension by an integer factor per axis: same spacing, larger
// extent. New samples are zero; index offset is (q-1) n / 2 per axis.
inline GridSignal pad_extend(const GridSignal& f, std::size_t q) {
  if (q <= 1) return f;
  GridSpec big = f.spec;
  for (auto& a : big.axes) {
    a.n *= q;
    a.extent *= static_cast<double>(q);
  }
  GridSignal g(big);
  for_each_point(f.spec, [&](std::size_t flat, const std::vector<std::size_t>& k) {
    std::vector<std::size_t> kk(k);
    for (std::size_t a = 0; a < kk.size(); ++a) kk[a] += (q - 1) * f.spec.axes[a].n / 2;
    g.values[g.flat(kk)] = f.values[flat];
  });
  return g;
}

// --- test-signal builders and inner-product helpers ---

// L2-normalized product Gaussian: prod_a (2)^{1/4} w_a^{-1/2} e^{-pi ((x-c)/w)^2}.
inline GridSignal gaussian(const GridSpec& spec, const Vec& center, const Vec& width) {
  GridSignal g(spec);
  for_each_point(spec, [&](std::size_t flat, const std::vector<std::size_t>& k) {
    double q = 0.0, amp = 1.0;
    for (std::size_t a = 0; a < spec.dim(); ++a) {
      const double u = (spec.axes[a].coord(k[a]) - center(static_cast<Eigen::Index>(a))) /
                       width(static_cast<Eigen::Index>(a));
      q += u * u;
      amp *= std::pow(2.0, 0.25) / std::sqrt(width(static_cast<Eigen::Index>(a)));
    }
    g.values[flat] = amp * std::exp(-pi * q);
  });
  return g;
}

inline GridSignal gaussian(const GridSpec& spec, double width = 1.0) {
  const Vec c = Vec::Zero(static_cast<Eigen::Index>(spec.dim()));
  const Vec w = Vec::Constant(static_cast<Eigen::Index>(spec.dim()), width);
  return gaussian(spec, c, w);
}

// Hermite functions under the 2 pi convention: h_0 = 2^{1/4} e^{-pi x^2},
// h_{k+1} = sqrt(2/(k+1)) sqrt(2 pi) x h_k - sqrt(k/(k+1)) h_{k-1};
// eigenfunctions of the centered transform with eigenvalue (-i)^k.
inline std::vector<double> hermite_line(const Axis& ax, int order) {
  std::vector<double> prev(ax.n), cur(ax.n), next(ax.n);
  for (std::size_t k = 0; k < ax.n; ++k) {
    const double x = ax.coord(k);
    prev[k] = std::pow(2.0, 0.25) * std::exp(-pi * x * x);
    cur[k] = std::sqrt(2.0) * std::sqrt(2.0 * pi) * x * prev[k];
  }
  if (order == 0) return prev;
  for (int m = 1; m < order; ++m) {
    const double a = std::sqrt(2.0 / (m + 1.0)) * std::sqrt(2.0 * pi);
    const double b = std::sqrt(m / (m + 1.0));
    for (std::size_t k = 0; k < ax.n; ++k) next[k] = a * ax.coord(k) * cur[k] - b * prev[k];
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return cur;
}

inline GridSignal hermite(const GridSpec& spec, const std::vector<int>& orders) {
  if (orders.size() != spec.dim()) throw InvalidArg("one hermite order per axis");
  std::vector<std::vector<double>> lines(spec.dim());
  for (std::size_t a = 0; a < spec.dim(); ++a) lines[a] = hermite_line(spec.axes[a], orders[a]);
  GridSignal g(spec);
  for_each_point(spec, [&](std::size_t flat, const std::vector<std::size_t>& k) {
    double v = 1.0;
    for (std::size_t a = 0; a < spec.dim(); ++a) v *= lines[a][k[a]];
    g.values[flat] = v;
  });
  return g;
}

inline GridSignal hermite(const GridSpec& spec, int order) {
  return hermite(spec, std::vector<int>(spec.dim(), order));
}

// <f, g> = int f conj(g); Riemann sum with the grid cell measure.
inline cd inner(const GridSignal& f, const GridSignal& g) {
  if (!f.spec.compatible(g.spec)) throw SpecMismatch("inner product on mismatched grids");
  cd s{0.0, 0.0};
  for (std::size_t i = 0; i < f.values.size(); ++i) s += f.values[i] * std::conj(g.values[i]);
  return s * f.spec.cell();
}

inline double norm2(const GridSignal& f) {
  double s = 0.0;
  for (const cd& v : f.values) s += std::norm(v);
  return std::sqrt(s * f.spec.cell());
}

// min over |c| = 1 of || f/||f|| - c g/||g|| || = sqrt(2 - 2 |<f,g>| / (||f|| ||g||)).
inline double phase_invariant_distance(const GridSignal& f, const GridSignal& g) {
  const double nf = norm2(f), ng = norm2(g);
  if (nf < 1e-150 || ng < 1e-150) throw ZeroSignal("phase-invariant distance of a zero signal");
  double corr = std::abs(inner(f, g)) / (nf * ng);
  if (corr > 1.0) corr = 1.0;
  return std::sqrt(2.0 - 2.0 * corr);
}

inline GridSignal lincomb(cd a, const GridSignal& f, cd b, const GridSignal& g) {
  if (!f.spec.compatible(g.spec)) throw SpecMismatch("linear combination on mismatched grids");
  GridSignal h = f;
  for (std::size_t i = 0; i < h.values.size(); ++i) h.values[i] = a * f.values[i] + b * g.values[i];
  return h;
}

inline GridSignal scaled(const GridSignal& f, cd a) {
  GridSignal h = f;
  for (auto& v : h.values) v *= a;
  return h;
}

// Multiply by e^{s pi i (Q x . x)} at the grid points.
inline void multiply_quadratic_phase(GridSignal& f, const Mat& q, double s) {
  for_each_point(f.spec, [&](std::size_t flat, const std::vector<std::size_t>& k) {
    const Vec x = grid_point(f.spec, k);
    f.values[flat] *= std::exp(cd(0.0, s * pi * x.dot(q * x)));
  });
}

// Multiply by e^{s 2 pi i (b . x)} at the grid points.
inline void multiply_linear_phase(GridSignal& f, const Vec& b, double s) {
  for_each_point(f.spec, [&](std::size_t flat, const std::vector<std::size_t>& k) {
    const Vec x = grid_point(f.spec, k);
    f.values[flat] *= std::exp(cd(0.0, s * 2.0 * pi * b.dot(x)));
  });
}

// x -> -x along the listed axes as the periodic index reflection k -> (n-k) mod n.
inline GridSignal reflect_axes(const GridSignal& f, const std::vector<std::size_t>& axs) {
  GridSignal g(f.spec);
  std::vector<bool> hit(f.spec.dim(), false);
  for (std::size_t a : axs) hit[a] = true;
  for_each_point(f.spec, [&](std::size_t flat, const std::vector<std::size_t>& k) {
    std::vector<std::size_t> kk(k);
    for (std::size_t a = 0; a < kk.size(); ++a)
      if (hit[a]) kk[a] = (f.spec.axes[a].n - kk[a]) % f.spec.axes[a].n;
    g.values[g.flat(kk)] = f.values[flat];
  });
  return g;
}

// Worst-case aliasing ratio for a sampled chirp e^{+-pi i Q x . x} carrying
// content that occupies the central half of each axis band; above 1 the
// sampled phase wraps faster than the lattice can represent.
inline double chirp_alias_ratio(const GridSpec& spec, const Mat& q) {
  double worst = 0.0;
  for (std::size_t a = 0; a < spec.dim(); ++a) {
    double chirp = 0.0;
    for (std::size_t b = 0; b < spec.dim(); ++b)
      chirp += std::abs(q(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b))) * spec.axes[b].extent / 2.0;
    const double nyquist = 0.5 / spec.axes[a].dx();
    const double content = nyquist / 2.0;
    worst = std::max(worst, (chirp + content) / nyquist);
  }
  return worst;
}

}  // namespace metaplectic
