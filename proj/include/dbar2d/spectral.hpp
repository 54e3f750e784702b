// Spectral (FFT) differentiation and multiplier calculus on a field's own
// lattice. Valid for fields that are smooth and effectively periodic over
// the grid box — compactly supported data, or data tapered by a window.
#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "dbar2d/fft.hpp"
#include "dbar2d/grid.hpp"

namespace dbar2d {

// Applies a Fourier multiplier m(xi_x, xi_y) on the regular (unshifted)
// frequency lattice of f's grid.
template <class MultiplierFn>
ComplexField apply_multiplier(const ComplexField& f, MultiplierFn&& m) {
  const int n = f.n();
  ComplexField out = f;
  fft::forward_2d(n, n, out.values.data());
  const double dxi = 2.0 * kPi / (n * f.grid.cell());
  for (int ky = 0; ky < n; ++ky) {
    const double xiy = fft::freq_index(ky, n) * dxi;
    for (int kx = 0; kx < n; ++kx) {
      const double xix = fft::freq_index(kx, n) * dxi;
      out.at(kx, ky) *= m(xix, xiy);
    }
  }
  fft::inverse_2d(n, n, out.values.data());
  return out;
}

namespace detail {
// The Nyquist slot holds an ambiguous +/- frequency; odd-order derivative
// multipliers are zeroed there.
inline bool at_nyquist(int k, int n) { return 2 * k == n; }
}  // namespace detail

// d/dz = (d/dx - i d/dy)/2, computed spectrally.
inline ComplexField derivative_z(const ComplexField& f) {
  const int n = f.n();
  ComplexField out = f;
  fft::forward_2d(n, n, out.values.data());
  const double dxi = 2.0 * kPi / (n * f.grid.cell());
  for (int ky = 0; ky < n; ++ky) {
    const bool ny = detail::at_nyquist(ky, n);
    const double xiy = fft::freq_index(ky, n) * dxi;
    for (int kx = 0; kx < n; ++kx) {
      const bool nx = detail::at_nyquist(kx, n);
      const double xix = fft::freq_index(kx, n) * dxi;
      const Complex mult(ny ? 0.0 : 0.5 * xiy, nx ? 0.0 : 0.5 * xix);
      out.at(kx, ky) *= mult;
    }
  }
  fft::inverse_2d(n, n, out.values.data());
  return out;
}

// d/d(conj z) = (d/dx + i d/dy)/2, computed spectrally.
inline ComplexField derivative_zbar(const ComplexField& f) {
  const int n = f.n();
  ComplexField out = f;
  fft::forward_2d(n, n, out.values.data());
  const double dxi = 2.0 * kPi / (n * f.grid.cell());
  for (int ky = 0; ky < n; ++ky) {
    const bool ny = detail::at_nyquist(ky, n);
    const double xiy = fft::freq_index(ky, n) * dxi;
    for (int kx = 0; kx < n; ++kx) {
      const bool nx = detail::at_nyquist(kx, n);
      const double xix = fft::freq_index(kx, n) * dxi;
      const Complex mult = Complex(ny ? 0.0 : -0.5 * xiy, nx ? 0.0 : 0.5 * xix);
      out.at(kx, ky) *= mult;
    }
  }
  fft::inverse_2d(n, n, out.values.data());
  return out;
}

inline ComplexField laplacian(const ComplexField& f) {
  return apply_multiplier(
      f, [](double xix, double xiy) { return -(xix * xix + xiy * xiy); });
}

// Mixed partial d^{jx+jy} / dx^{jx} dy^{jy}; odd factors vanish at Nyquist.
inline ComplexField derivative_xy(const ComplexField& f, int jx, int jy) {
  const int n = f.n();
  ComplexField out = f;
  fft::forward_2d(n, n, out.values.data());
  const double dxi = 2.0 * kPi / (n * f.grid.cell());
  const Complex I(0.0, 1.0);
  for (int ky = 0; ky < n; ++ky) {
    const double xiy =
        (jy % 2 == 1 && detail::at_nyquist(ky, n)) ? 0.0
                                                   : fft::freq_index(ky, n) * dxi;
    for (int kx = 0; kx < n; ++kx) {
      const double xix =
          (jx % 2 == 1 && detail::at_nyquist(kx, n))
              ? 0.0
              : fft::freq_index(kx, n) * dxi;
      Complex mult(1.0, 0.0);
      for (int a = 0; a < jx; ++a) mult *= I * xix;
      for (int a = 0; a < jy; ++a) mult *= I * xiy;
      out.at(kx, ky) *= mult;
    }
  }
  fft::inverse_2d(n, n, out.values.data());
  return out;
}

// Smooth radial cutoff: identically 1 for |z - center| <= r_flat, identically
// 0 for |z - center| >= r_zero, C-infinity in between. Tapering a field with
// this before spectral differentiation removes the periodization mismatch of
// slowly decaying tails; derivatives are then trustworthy where w == 1.
inline ComplexField radial_window(const GridSpec& grid, double r_flat,
                                  double r_zero) {
  if (!(0.0 < r_flat && r_flat < r_zero))
    throw ValidationError("field-core", "window", "need 0 < r_flat < r_zero");
  ComplexField w(grid);
  const int n = grid.n_side;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const double r = std::abs(grid.node(ix, iy) - grid.center);
      double val;
      if (r <= r_flat) {
        val = 1.0;
      } else if (r >= r_zero) {
        val = 0.0;
      } else {
        const double t = (r - r_flat) / (r_zero - r_flat);
        val = std::exp(1.0 - 1.0 / (1.0 - t * t));
      }
      w.at(ix, iy) = val;
    }
  return w;
}

}  // namespace dbar2d
