// FFT convolution kernels: the solid Cauchy transform (inverse of d/dzbar)
// and the fundamental-solution convolution for the operator
// (-Lap - 4 i lambda d/dzbar) that e^{i z lambda}-conjugation produces.
//
// Both run on a 2x zero-padded grid. The Cauchy and log kernels use the
// closed-form Fourier transforms of the kernels truncated to a disk of
// radius 2s, so no singular kernel sample is ever taken. The lambda-dependent
// symbol has no closed-form truncated transform; there the frequency lattice
// is shifted by half a cell so its zeros (xi = 0 and the characteristic
// point) fall between nodes. Every kernel is validated by residual
// identities in the test suite, not by trusting these formulas.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "dbar2d/fft.hpp"
#include "dbar2d/grid.hpp"

namespace dbar2d {

namespace detail {

// Padded symbol convolution: crop(IFFT(symbol .* FFT(pad(f)))). When
// `shift_lattice` is set, both transforms run on the half-cell-shifted
// frequency lattice via pre/post modulation.
template <class SymbolFn>
ComplexField padded_symbol_convolve(const ComplexField& f, SymbolFn&& symbol,
                                    bool shift_lattice) {
  const int n = f.n();
  const int m = 2 * n;
  const double cell = f.grid.cell();
  std::vector<Complex> buf(std::size_t(m) * m, Complex(0.0, 0.0));
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix)
      buf[std::size_t(iy) * m + ix] = f.at(ix, iy);

  std::vector<Complex> mod;
  if (shift_lattice) {
    mod.resize(m);
    for (int j = 0; j < m; ++j) {
      const double ph = -kPi * j / m;
      mod[j] = Complex(std::cos(ph), std::sin(ph));
    }
    for (int iy = 0; iy < m; ++iy)
      for (int ix = 0; ix < m; ++ix) buf[std::size_t(iy) * m + ix] *= mod[iy] * mod[ix];
  }

  fft::forward_2d(m, m, buf.data());

  const double dxi = 2.0 * kPi / (m * cell);
  const double half = shift_lattice ? 0.5 : 0.0;
  for (int ky = 0; ky < m; ++ky) {
    const double xiy = (fft::freq_index(ky, m) + half) * dxi;
    for (int kx = 0; kx < m; ++kx) {
      const double xix = (fft::freq_index(kx, m) + half) * dxi;
      buf[std::size_t(ky) * m + kx] *= symbol(xix, xiy);
    }
  }

  fft::inverse_2d(m, m, buf.data());

  ComplexField out(f.grid);
  if (shift_lattice) {
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix)
        out.at(ix, iy) =
            buf[std::size_t(iy) * m + ix] * std::conj(mod[iy] * mod[ix]);
  } else {
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) out.at(ix, iy) = buf[std::size_t(iy) * m + ix];
  }
  return out;
}

}  // namespace detail

// Solid Cauchy transform C[f](z) = (1/pi) integral f(w)/(z - w) dA(w),
// normalized so that d/dzbar C[f] = f. Kernel 1/(pi z) truncated at radius
// R = 2s; its Fourier transform (2/i)(1 - J0(R|xi|))/xi_c is smooth, so the
// regular lattice works. Exact (to quadrature accuracy) for data supported
// in |z - center| <= s and evaluation points with |z - center| <= 2s - rho;
// only the extreme grid corners see the truncation.
inline ComplexField solid_cauchy(const ComplexField& f) {
  f.grid.validate();
  if (f.n() < 8)
    throw ValidationError("field-core", "solid_cauchy",
                          "grid too small to zero-pad");
  const double R = 2.0 * f.grid.half_width;
  return detail::padded_symbol_convolve(
      f,
      [R](double xix, double xiy) -> Complex {
        const double a = std::hypot(xix, xiy);
        if (a < 1e-300) return Complex(0.0, 0.0);
        const Complex xic(xix, xiy);
        // (2/i) (1 - J0(R a)) / xi_c
        return Complex(0.0, -2.0) * (1.0 - std::cyl_bessel_j(0.0, R * a)) / xic;
      },
      /*shift_lattice=*/false);
}

// Convolution with the fundamental solution of (-Lap - 4 i lambda d/dzbar)
// selected by the decaying Fourier regularization. Symbol q(xi) =
// |xi|^2 + 2 lambda xi_c on the shifted lattice; the half-cell shift keeps
// both zeros of q (xi = 0 and the characteristic point -2 conj(lambda))
// between nodes. At lambda = 0 the symbol degenerates to 1/|xi|^2, the
// lattice form of the log-kernel Laplacian inverse.
inline ComplexField faddeev_convolve(Complex lambda, const ComplexField& f) {
  f.grid.validate();
  if (f.n() < 8)
    throw ValidationError("field-core", "faddeev_convolve",
                          "grid too small to zero-pad");

  // Guard: a lattice node coinciding with a symbol zero poisons the division.
  const int m = 2 * f.n();
  const double dxi = 2.0 * kPi / (m * f.grid.cell());
  const Complex char_point = -2.0 * std::conj(lambda);
  const auto dist_to_lattice = [&](Complex p) {
    const double fx = p.real() / dxi - 0.5;
    const double fy = p.imag() / dxi - 0.5;
    const double rx = std::abs(fx - std::round(fx)) * dxi;
    const double ry = std::abs(fy - std::round(fy)) * dxi;
    return std::hypot(rx, ry);
  };
  if (dist_to_lattice(char_point) < 1e-9 * dxi)
    throw NumericalError(
        "field-core", "faddeev_convolve",
        "a frequency node hits a zero of the symbol; enable the grid offset "
        "or perturb lambda");

  return detail::padded_symbol_convolve(
      f,
      [lambda](double xix, double xiy) -> Complex {
        const Complex xic(xix, xiy);
        const Complex q = (xix * xix + xiy * xiy) + 2.0 * lambda * xic;
        return 1.0 / q;
      },
      /*shift_lattice=*/true);
}

}  // namespace dbar2d
