#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "metaplectic/errors.hpp"
#include "metaplectic/util.hpp"

namespace metaplectic::fft {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Unscaled in-place radix-2 transform of data[0], data[stride], ...,
// data[(n-1)*stride]; sign -1 uses e^{-2 pi i k m / n} (forward).
inline void transform(cd* data, std::size_t n, std::size_t stride, int sign) {
  if (n <= 1) return;
  if (!is_pow2(n)) throw InvalidArg("fft length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i * stride], data[j * stride]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (sign < 0 ? -2.0 : 2.0) * pi / static_cast<double>(len);
    const cd wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cd w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        cd& u = data[(i + k) * stride];
        cd& v = data[(i + k + len / 2) * stride];
        const cd t = v * w;
        v = u - t;
        u += t;
        w *= wlen;
      }
    }
  }
}

// Transform along one axis of a row-major array with the given dims.
inline void transform_axis(cd* data, const std::vector<std::size_t>& dims, std::size_t axis, int sign) {
  const std::size_t n = dims[axis];
  std::size_t inner = 1;
  for (std::size_t a = axis + 1; a < dims.size(); ++a) inner *= dims[a];
  std::size_t outer = 1;
  for (std::size_t a = 0; a < axis; ++a) outer *= dims[a];
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t i = 0; i < inner; ++i) transform(data + o * n * inner + i, n, inner, sign);
}

}  // namespace metaplectic::fft
