#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "metaplectic/grid.hpp"
#include "metaplectic/interp.hpp"

using namespace metaplectic;

namespace {

GridSignal random_signal(const GridSpec& spec, Rng& rng) {
  GridSignal f(spec);
  for (auto& v : f.values) v = cd(rng.normal(), rng.normal());
  return f;
}

double max_diff(const GridSignal& f, const GridSignal& g) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) m = std::max(m, std::abs(f.values[i] - g.values[i]));
  return m;
}

// Direct quadrature of the continuous transform on the same nodes; the fast
// path must reproduce this sum to rounding.
GridSignal dft_oracle(const GridSignal& f, int sign) {
  GridSpec out = f.spec.dual();
  GridSignal g(out);
  for_each_point(out, [&](std::size_t flat_out, const std::vector<std::size_t>& m) {
    Vec xi(static_cast<Eigen::Index>(out.dim()));
    for (std::size_t a = 0; a < out.dim(); ++a) xi(static_cast<Eigen::Index>(a)) = out.axes[a].coord(m[a]);
    cd acc = 0.0;
    for_each_point(f.spec, [&](std::size_t flat_in, const std::vector<std::size_t>& k) {
      const Vec x = grid_point(f.spec, k);
      acc += f.values[flat_in] * std::exp(cd(0.0, sign * 2.0 * pi * x.dot(xi)));
    });
    g.values[flat_out] = acc * f.spec.cell();
  });
  return g;
}

}  // namespace

TEST_CASE("axis duality and coordinates") {
  Axis ax{64, 8.0};
  REQUIRE(ax.dx() == Catch::Approx(0.125));
  REQUIRE(ax.coord(32) == Catch::Approx(0.0));
  REQUIRE(ax.coord(0) == Catch::Approx(-4.0));
  Axis d = ax.dual();
  REQUIRE(d.n == 64);
  REQUIRE(d.extent == Catch::Approx(8.0));  // self-dual: 64 / 8 = 8
  Axis d2 = Axis{32, 5.0}.dual().dual();
  REQUIRE(d2.n == 32);
  REQUIRE(d2.extent == Catch::Approx(5.0));
  REQUIRE(GridSpec::self_dual(2, 16).axes[0].extent == Catch::Approx(4.0));
}

TEST_CASE("centered transform matches direct quadrature") {
  Rng rng(11);
  for (std::size_t d : {std::size_t{1}, std::size_t{2}}) {
    GridSpec spec = d == 1 ? GridSpec::uniform(1, 32, 6.0) : GridSpec::uniform(2, 16, 4.0);
    GridSignal f = random_signal(spec, rng);
    for (int sign : {-1, +1}) {
      GridSignal fast = fourier(f, sign);
      GridSignal slow = dft_oracle(f, sign);
      REQUIRE(fast.spec.compatible(slow.spec));
      REQUIRE(max_diff(fast, slow) < 1e-11);
    }
  }
}

TEST_CASE("radix-2 core rejects non power of two") {
  std::vector<cd> buf(12, cd(1.0, 0.0));
  REQUIRE_THROWS_AS(fft::transform(buf.data(), 12, 1, -1), InvalidArg);
}

TEST_CASE("transform round trip and Parseval") {
  Rng rng(12);
  GridSpec spec = GridSpec::uniform(2, 16, 5.0);
  GridSignal f = random_signal(spec, rng);
  GridSignal back = fourier(fourier(f, -1), +1);
  REQUIRE(back.spec.compatible(spec));
  REQUIRE(max_diff(back, f) < 1e-12);
  REQUIRE(norm2(fourier(f, -1)) == Catch::Approx(norm2(f)).epsilon(1e-12));
}

TEST_CASE("standard Gaussian is a fixed point of the transform") {
  GridSpec spec = GridSpec::self_dual(1, 256);
  GridSignal g = gaussian(spec, 1.0);
  REQUIRE(norm2(g) == Catch::Approx(1.0).epsilon(1e-10));
  GridSignal gh = fourier(g, -1);
  REQUIRE(max_diff(gh, g) < 1e-12);
}

TEST_CASE("linear phase shifts the spectrum peak") {
  GridSpec spec = GridSpec::uniform(1, 128, 16.0);
  GridSignal g = gaussian(spec, 1.0);
  Vec b(1);
  b << 3.0;
  multiply_linear_phase(g, b, +1.0);
  GridSignal gh = fourier(g, -1);
  std::size_t arg = 0;
  double best = -1.0;
  for (std::size_t m = 0; m < gh.values.size(); ++m)
    if (std::abs(gh.values[m]) > best) {
      best = std::abs(gh.values[m]);
      arg = m;
    }
  REQUIRE(gh.spec.axes[0].coord(arg) == Catch::Approx(3.0).margin(gh.spec.axes[0].dx() / 2));
}

TEST_CASE("partial transform separates on product signals") {
  GridSpec spec = GridSpec::uniform(2, 32, 6.0);
  GridSpec line = GridSpec::uniform(1, 32, 6.0);
  GridSignal f1 = hermite(line, 1);
  GridSignal f2 = hermite(line, 2);
  GridSignal prod(spec);
  for_each_point(spec, [&](std::size_t flat, const std::vector<std::size_t>& k) {
    prod.values[flat] = f1.values[k[0]] * f2.values[k[1]];
  });

  Subspace e1{2, Mat::Identity(2, 2).leftCols(1)};
  GridSignal part = partial_fourier(prod, e1);
  GridSignal f1h = fourier(f1, -1);
  GridSignal expected(part.spec);
  for_each_point(part.spec, [&](std::size_t flat, const std::vector<std::size_t>& k) {
    expected.values[flat] = f1h.values[k[0]] * f2.values[k[1]];
  });
  REQUIRE(max_diff(part, expected) < 1e-12);

  Subspace e2{2, Mat::Identity(2, 2).rightCols(1)};
  GridSignal both = partial_fourier(partial_fourier(prod, e1), e2);
  REQUIRE(max_diff(both, fourier(prod, -1)) < 1e-12);
}

TEST_CASE("partial transform rejects skew subspaces") {
  Mat skew(2, 1);
  skew << std::sqrt(0.5), std::sqrt(0.5);
  Subspace l{2, skew};
  GridSpec spec = GridSpec::uniform(2, 8, 4.0);
  GridSignal f(spec);
  REQUIRE_THROWS_AS(partial_fourier(f, l), NonAxisAligned);
}

TEST_CASE("Hermite family is orthonormal and diagonalizes the transform") {
  GridSpec spec = GridSpec::self_dual(1, 256);
  std::vector<GridSignal> h;
  for (int k = 0; k <= 8; ++k) h.push_back(hermite(spec, k));
  for (int j = 0; j <= 8; ++j)
    for (int k = 0; k <= 8; ++k) {
      const cd ip = inner(h[static_cast<std::size_t>(j)], h[static_cast<std::size_t>(k)]);
      REQUIRE(std::abs(ip - (j == k ? 1.0 : 0.0)) < 1e-10);
    }
  for (int k = 0; k <= 8; ++k) {
    GridSignal ft = fourier(h[static_cast<std::size_t>(k)], -1);
    const cd lambda = std::pow(cd(0.0, -1.0), k);
    GridSignal expected = scaled(h[static_cast<std::size_t>(k)], lambda);
    REQUIRE(max_diff(ft, expected) < 1e-10);
  }
}

TEST_CASE("phase invariant distance ignores global phase") {
  GridSpec spec = GridSpec::uniform(1, 64, 8.0);
  GridSignal g = gaussian(spec, 1.0);
  GridSignal rotated = scaled(g, std::exp(cd(0.0, 1.234)));
  REQUIRE(phase_invariant_distance(g, rotated) < 1e-12);
  GridSignal h1 = hermite(spec, 1);
  REQUIRE(phase_invariant_distance(g, h1) == Catch::Approx(std::sqrt(2.0)).epsilon(1e-6));
  GridSignal zero(spec);
  REQUIRE_THROWS_AS(phase_invariant_distance(g, zero), ZeroSignal);
}

TEST_CASE("centered zero padding preserves samples and norm") {
  Rng rng(13);
  GridSpec spec = GridSpec::uniform(1, 16, 4.0);
  GridSignal f = random_signal(spec, rng);
  GridSignal big = pad_extend(f, 3);
  REQUIRE(big.spec.axes[0].n == 48);
  REQUIRE(big.spec.axes[0].extent == Catch::Approx(12.0));
  REQUIRE(big.spec.axes[0].dx() == Catch::Approx(spec.axes[0].dx()));
  for (std::size_t k = 0; k < 16; ++k) REQUIRE(big.values[k + 16] == f.values[k]);
  REQUIRE(norm2(big) == Catch::Approx(norm2(f)).epsilon(1e-12));
}

TEST_CASE("oversampling agrees at original nodes") {
  GridSpec spec = GridSpec::uniform(1, 64, 8.0);
  GridSignal g = hermite(spec, 3);
  GridSignal fine = oversample(g, 4);
  REQUIRE(fine.spec.axes[0].n == 256);
  REQUIRE(fine.spec.axes[0].extent == Catch::Approx(8.0));
  double worst = 0.0;
  for (std::size_t k = 0; k < 64; ++k) worst = std::max(worst, std::abs(fine.values[4 * k] - g.values[k]));
  REQUIRE(worst < 1e-10);
}

TEST_CASE("resampler tracks a smooth signal off grid") {
  GridSpec spec = GridSpec::uniform(1, 64, 8.0);
  GridSignal g = gaussian(spec, 1.0);
  Resampler r(g, 4);
  Rng rng(14);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    Vec x(1);
    x << rng.uniform(-2.5, 2.5);
    const double exact = std::pow(2.0, 0.25) * std::exp(-pi * x(0) * x(0));
    worst = std::max(worst, std::abs(r(x) - cd(exact, 0.0)));
  }
  REQUIRE(worst < 5e-5);
}

TEST_CASE("resampler reads zero outside the sampled box") {
  GridSpec spec = GridSpec::uniform(1, 32, 4.0);
  GridSignal g = gaussian(spec, 1.0);
  Resampler r(g, 2);
  Vec x(1);
  x << 7.5;
  REQUIRE(std::abs(r(x)) == 0.0);
}

TEST_CASE("linear warp matches the analytic dilation") {
  GridSpec spec = GridSpec::uniform(1, 128, 12.0);
  GridSignal g = gaussian(spec, 1.0);
  Mat m(1, 1);
  m << 2.0;
  GridSignal warped = warp_linear(g, m);
  double worst = 0.0;
  for (std::size_t k = 0; k < 128; ++k) {
    const double x = spec.axes[0].coord(k);
    if (std::abs(x) > 2.5) continue;
    const double exact = std::pow(2.0, 0.25) * std::exp(-pi * 4.0 * x * x);
    worst = std::max(worst, std::abs(warped.values[k] - cd(exact, 0.0)));
  }
  REQUIRE(worst < 1e-5);
}

TEST_CASE("frame rotation fixes the isotropic Gaussian") {
  GridSpec spec = GridSpec::uniform(2, 32, 6.0);
  GridSignal g = gaussian(spec, 1.0);
  const double c = std::cos(pi / 4), s = std::sin(pi / 4);
  Mat q(2, 2);
  q << c, -s, s, c;
  GridSignal rot = rotate_frame(g, q);
  double worst = 0.0;
  for_each_point(spec, [&](std::size_t flat, const std::vector<std::size_t>& k) {
    const Vec x = grid_point(spec, k);
    if (x.norm() > 2.0) return;
    worst = std::max(worst, std::abs(rot.values[flat] - g.values[flat]));
  });
  REQUIRE(worst < 1e-4);
}

TEST_CASE("signed permutation frames are exact") {
  GridSpec spec = GridSpec::uniform(2, 32, 6.0);
  GridSpec line = GridSpec::uniform(1, 32, 6.0);
  GridSignal h0 = hermite(line, 0);
  GridSignal h1 = hermite(line, 1);
  GridSignal f(spec);
  for_each_point(spec, [&](std::size_t flat, const std::vector<std::size_t>& k) {
    f.values[flat] = h1.values[k[0]] * h0.values[k[1]];
  });
  Mat q(2, 2);
  q << 0.0, 1.0, 1.0, 0.0;  // f(Qx) = f(x2, x1)
  GridSignal swapped = rotate_frame(f, q);
  GridSignal expected(spec);
  for_each_point(spec, [&](std::size_t flat, const std::vector<std::size_t>& k) {
    expected.values[flat] = h0.values[k[0]] * h1.values[k[1]];
  });
  REQUIRE(max_diff(swapped, expected) == 0.0);
  Mat bad = Mat::Identity(2, 2) * 1.5;
  REQUIRE_THROWS_AS(rotate_frame(f, bad), InvalidArg);
}

TEST_CASE("reflection negates odd signals") {
  GridSpec spec = GridSpec::uniform(1, 64, 10.0);
  GridSignal h1 = hermite(spec, 1);
  GridSignal r = reflect_axes(h1, {0});
  GridSignal neg = scaled(h1, -1.0);
  double worst = 0.0;
  for (std::size_t k = 1; k < 64; ++k) worst = std::max(worst, std::abs(r.values[k] - neg.values[k]));
  REQUIRE(worst < 1e-12);
}

TEST_CASE("partial transform in a rotated frame fixes the isotropic Gaussian") {
  GridSpec spec = GridSpec::self_dual(2, 32);
  GridSignal g = gaussian(spec, 1.0);
  const double r2 = std::sqrt(0.5);
  Mat frame(2, 2);
  frame << r2, r2, r2, -r2;
  Subspace l{2, frame.leftCols(1)};
  GridSignal out = partial_fourier(g, l, frame);
  double worst = 0.0;
  for_each_point(spec, [&](std::size_t flat, const std::vector<std::size_t>& k) {
    const Vec x = grid_point(spec, k);
    if (x.norm() > 1.5) return;
    worst = std::max(worst, std::abs(out.values[flat] - g.values[flat]));
  });
  REQUIRE(worst < 1e-3);
}

TEST_CASE("chirp alias ratio grows with the chirp rate") {
  GridSpec spec = GridSpec::uniform(1, 64, 8.0);
  Mat q0 = Mat::Zero(1, 1);
  REQUIRE(chirp_alias_ratio(spec, q0) == Catch::Approx(0.5));
  Mat q1(1, 1);
  q1 << 0.5;
  Mat q2(1, 1);
  q2 << 2.0;
  REQUIRE(chirp_alias_ratio(spec, q1) < chirp_alias_ratio(spec, q2));
  REQUIRE(chirp_alias_ratio(spec, q2) > 1.0);
}

TEST_CASE("quadratic phase equals the pointwise chirp") {
  GridSpec spec = GridSpec::uniform(1, 32, 4.0);
  GridSignal g = gaussian(spec, 1.0);
  GridSignal h = g;
  Mat q(1, 1);
  q << 0.3;
  multiply_quadratic_phase(h, q, -1.0);
  double worst = 0.0;
  for (std::size_t k = 0; k < 32; ++k) {
    const double x = spec.axes[0].coord(k);
    const cd expected = g.values[k] * std::exp(cd(0.0, -pi * 0.3 * x * x));
    worst = std::max(worst, std::abs(h.values[k] - expected));
  }
  REQUIRE(worst < 1e-14);
}
