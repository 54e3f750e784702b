// Uniform square grids on the complex plane and complex-valued fields
// sampled on them, plus the CGRID1 binary file format.
#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "dbar2d/errors.hpp"

namespace dbar2d {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Square grid of n_side x n_side nodes covering [-s, s]^2 around `center`.
// Without the offset flag, nodes sit at center + (-s + i*cell) and the grid
// center is a node; with it, nodes shift by half a cell so neither the center
// nor (after padding) the zero frequency ever lands on a node.
struct GridSpec {
  Complex center{0.0, 0.0};
  double half_width = 1.0;
  int n_side = 0;
  bool offset = false;

  double cell() const { return 2.0 * half_width / n_side; }

  double coord(int i) const {
    return -half_width + (i + (offset ? 0.5 : 0.0)) * cell();
  }

  // Node at column ix (real direction), row iy (imaginary direction).
  Complex node(int ix, int iy) const {
    return center + Complex(coord(ix), coord(iy));
  }

  std::size_t size() const { return std::size_t(n_side) * n_side; }

  bool operator==(const GridSpec& o) const {
    return center == o.center && half_width == o.half_width &&
           n_side == o.n_side && offset == o.offset;
  }

  void validate(const char* module = "field-core") const {
    if (n_side < 8 || (n_side & (n_side - 1)) != 0)
      throw ValidationError(module, "grid",
                            "n_side must be a power of two >= 8, got " +
                                std::to_string(n_side));
    if (!(half_width > 0.0) || !std::isfinite(half_width))
      throw ValidationError(module, "grid", "half_width must be positive");
    if (!std::isfinite(center.real()) || !std::isfinite(center.imag()))
      throw ValidationError(module, "grid", "center must be finite");
  }
};

// Complex samples over a GridSpec, row-major: values[iy * n + ix], rows run
// along the imaginary direction.
struct ComplexField {
  GridSpec grid;
  std::vector<Complex> values;

  ComplexField() = default;
  explicit ComplexField(const GridSpec& g, Complex fill = Complex(0.0, 0.0))
      : grid(g), values(g.size(), fill) {
    grid.validate();
  }

  int n() const { return grid.n_side; }
  Complex& at(int ix, int iy) { return values[std::size_t(iy) * n() + ix]; }
  const Complex& at(int ix, int iy) const {
    return values[std::size_t(iy) * n() + ix];
  }

  bool all_finite() const {
    for (const Complex& v : values)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

  void require_finite(const char* module, const char* stage) const {
    if (!all_finite())
      throw NumericalError(module, stage, "field contains NaN/Inf values");
  }

  double max_abs() const {
    double m = 0.0;
    for (const Complex& v : values) m = std::max(m, std::abs(v));
    return m;
  }

  // Grid quadrature of the L^p norm (cell-weighted Riemann sum).
  double norm_lp(double p) const {
    const double a = grid.cell() * grid.cell();
    double acc = 0.0;
    for (const Complex& v : values) acc += std::pow(std::abs(v), p);
    return std::pow(a * acc, 1.0 / p);
  }

  double norm_l2() const {
    const double a = grid.cell() * grid.cell();
    double acc = 0.0;
    for (const Complex& v : values) acc += std::norm(v);
    return std::sqrt(a * acc);
  }
};

// e_lambda(z) = exp(i(z*lambda + conj(z)*conj(lambda))). The exponent is
// 2*Re(z*lambda), purely real, so every sample has modulus one.
inline ComplexField e_lambda(const GridSpec& grid, Complex lambda) {
  grid.validate();
  ComplexField out(grid);
  const int n = grid.n_side;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const double phase = 2.0 * (grid.node(ix, iy) * lambda).real();
      out.at(ix, iy) = Complex(std::cos(phase), std::sin(phase));
    }
  return out;
}

// Pointwise value of e_lambda at a single z.
inline Complex e_lambda_at(Complex z, Complex lambda) {
  const double phase = 2.0 * (z * lambda).real();
  return Complex(std::cos(phase), std::sin(phase));
}

// Max over interior nodes of |Dbar f - rhs| where Dbar is the centered
// finite-difference d/d(conj z) on the field's own grid. Exact on degree-1
// polynomials; second-order otherwise. This is a measurement instrument:
// it shares no code with the spectral and FFT-convolution paths it audits.
inline double dbar_residual(const ComplexField& f, const ComplexField& rhs) {
  if (!(f.grid == rhs.grid))
    throw ValidationError("field-core", "dbar_residual", "grid mismatch");
  const int n = f.n();
  const double h = f.grid.cell();
  double worst = 0.0;
  for (int iy = 1; iy + 1 < n; ++iy)
    for (int ix = 1; ix + 1 < n; ++ix) {
      const Complex dx = (f.at(ix + 1, iy) - f.at(ix - 1, iy)) / (2.0 * h);
      const Complex dy = (f.at(ix, iy + 1) - f.at(ix, iy - 1)) / (2.0 * h);
      const Complex dbar = 0.5 * (dx + Complex(0.0, 1.0) * dy);
      worst = std::max(worst, std::abs(dbar - rhs.at(ix, iy)));
    }
  return worst;
}

// ---------------------------------------------------------------------------
// CGRID1 binary format: magic "CGRID1\0", u32 n_side, f64 center_re,
// center_im, half_width, u8 offset flag, then n_side^2 interleaved (re, im)
// f64 pairs, row-major, all little-endian.
// ---------------------------------------------------------------------------

static_assert(std::endian::native == std::endian::little,
              "CGRID1 I/O assumes a little-endian host");

inline void save_cgrid1(const ComplexField& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw ValidationError("field-core", "io", "cannot open for write: " + path);
  const char magic[7] = {'C', 'G', 'R', 'I', 'D', '1', '\0'};
  out.write(magic, 7);
  const std::uint32_t n = std::uint32_t(f.grid.n_side);
  out.write(reinterpret_cast<const char*>(&n), 4);
  const double hdr[3] = {f.grid.center.real(), f.grid.center.imag(),
                         f.grid.half_width};
  out.write(reinterpret_cast<const char*>(hdr), sizeof(hdr));
  const std::uint8_t off = f.grid.offset ? 1 : 0;
  out.write(reinterpret_cast<const char*>(&off), 1);
  out.write(reinterpret_cast<const char*>(f.values.data()),
            std::streamsize(f.values.size() * sizeof(Complex)));
  if (!out) throw ValidationError("field-core", "io", "short write: " + path);
}

inline ComplexField load_cgrid1(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ValidationError("field-core", "io", "cannot open for read: " + path);
  char magic[7];
  in.read(magic, 7);
  if (!in || std::memcmp(magic, "CGRID1\0", 7) != 0)
    throw ValidationError("field-core", "io", "bad CGRID1 magic in " + path);
  std::uint32_t n = 0;
  in.read(reinterpret_cast<char*>(&n), 4);
  double hdr[3];
  in.read(reinterpret_cast<char*>(hdr), sizeof(hdr));
  std::uint8_t off = 0;
  in.read(reinterpret_cast<char*>(&off), 1);
  if (!in) throw ValidationError("field-core", "io", "truncated header: " + path);
  GridSpec g;
  g.center = Complex(hdr[0], hdr[1]);
  g.half_width = hdr[2];
  g.n_side = int(n);
  g.offset = off != 0;
  g.validate();
  ComplexField f(g);
  in.read(reinterpret_cast<char*>(f.values.data()),
          std::streamsize(f.values.size() * sizeof(Complex)));
  if (!in) throw ValidationError("field-core", "io", "truncated data: " + path);
  return f;
}

}  // namespace dbar2d
