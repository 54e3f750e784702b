// Conductivity phantoms, the induced Schrodinger potentials
// v = Lap(sigma^1/2)/sigma^1/2, and the smoothness norms that parametrize
// the stability experiments.
//
// Two radial families are provided. The `radial_bump` is C-infinity
// (exp(1 - 1/(1-u)) profile on sigma); its transform decays faster than any
// power. The `power_bump` places (1-u)^gamma on sigma^1/2, which has a finite
// order of smoothness at the support circle, so its scattering data decays
// at a prescribed polynomial rate -- the family used to probe decay
// exponents. Both carry closed-form evaluators for sigma and v so that polar
// solvers can sample them without interpolation error.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <string>

#include <json.hpp>

#include "dbar2d/errors.hpp"
#include "dbar2d/grid.hpp"
#include "dbar2d/spectral.hpp"

namespace dbar2d {

using Json = nlohmann::json;

struct Conductivity {
  ComplexField field;               // real positive samples
  double sigma_min = 1.0;
  double sigma_max = 1.0;
  double support_radius = 0.0;      // sigma == 1 outside |z| <= rho
  std::function<double(Complex)> eval;  // exact profile when known
  Json recipe;                      // empty when loaded from raw samples

  double value_at(Complex z) const;
};

struct Potential {
  ComplexField field;               // real samples
  int m = 3;                        // declared smoothness order (> 2)
  double support_radius = 0.0;
  double norm_m1 = 0.0;             // max_{|J|<=m} L1 norm of derivatives
  double norm_hat_m = 0.0;          // sup (1+|p|^2)^{m/2} |vhat(p)|
  std::function<double(Complex)> eval;
  Json recipe;

  double value_at(Complex z) const;
};

namespace detail {

// Bicubic (Catmull-Rom) interpolation of the real part of a field; used when
// no closed-form profile is attached.
inline double interp_real(const ComplexField& f, Complex z) {
  const GridSpec& g = f.grid;
  const double cell = g.cell();
  const double off = g.offset ? 0.5 : 0.0;
  const double fx = (z.real() - g.center.real() + g.half_width) / cell - off;
  const double fy = (z.imag() - g.center.imag() + g.half_width) / cell - off;
  const int ix = int(std::floor(fx));
  const int iy = int(std::floor(fy));
  const double tx = fx - ix;
  const double ty = fy - iy;
  const int n = g.n_side;
  if (ix < 1 || ix + 2 >= n || iy < 1 || iy + 2 >= n)
    throw ValidationError("phantom", "interp",
                          "evaluation point outside the interpolable region");
  auto cr = [](double p0, double p1, double p2, double p3, double t) {
    return p1 + 0.5 * t * (p2 - p0 +
                           t * (2 * p0 - 5 * p1 + 4 * p2 - p3 +
                                t * (3 * (p1 - p2) + p3 - p0)));
  };
  double rows[4];
  for (int r = 0; r < 4; ++r) {
    const int yy = iy - 1 + r;
    rows[r] = cr(f.at(ix - 1, yy).real(), f.at(ix, yy).real(),
                 f.at(ix + 1, yy).real(), f.at(ix + 2, yy).real(), tx);
  }
  return cr(rows[0], rows[1], rows[2], rows[3], ty);
}

// Shared machinery for radial profiles written as functions of u = r^2/r0^2:
// if sigma^1/2 = s(u), then v = Lap(s)/s = (4/r0^2) (u s'' + s') / s.
struct RadialSqrtSigma {
  std::function<double(double)> s;    // s(u)
  std::function<double(double)> su;   // ds/du
  std::function<double(double)> suu;  // d2s/du2
};

inline double radial_v(const RadialSqrtSigma& p, double u, double r0) {
  return 4.0 / (r0 * r0) * (u * p.suu(u) + p.su(u)) / p.s(u);
}

// C-infinity bump profile phi(u) = exp(1 - 1/(1-u)) on [0,1), 0 outside.
inline double bump_phi(double u) {
  if (u >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u));
}
inline double bump_phi_u(double u) {
  if (u >= 1.0) return 0.0;
  const double d = 1.0 - u;
  return -bump_phi(u) / (d * d);
}
inline double bump_phi_uu(double u) {
  if (u >= 1.0) return 0.0;
  const double d = 1.0 - u;
  return bump_phi(u) * (1.0 - 2.0 * d) / (d * d * d * d);
}

}  // namespace detail

inline double Conductivity::value_at(Complex z) const {
  if (eval) return eval(z);
  if (std::abs(z) > support_radius) return 1.0;
  return detail::interp_real(field, z);
}

inline double Potential::value_at(Complex z) const {
  if (eval) return eval(z);
  if (std::abs(z) > support_radius) return 0.0;
  return detail::interp_real(field, z);
}

// sigma(z) = 1 + t exp(1 - 1/(1 - |z-c|^2/r^2)) inside the bump, 1 outside.
inline Conductivity make_radial_bump(double t, Complex center, double radius,
                                     const GridSpec& grid) {
  grid.validate("phantom");
  if (radius <= 0.0)
    throw ValidationError("phantom", "radial_bump", "radius must be positive");
  if (std::abs(center) + radius >= 1.0)
    throw ValidationError("phantom", "radial_bump",
                          "bump must stay inside the unit disk");
  if (t <= -1.0)
    throw ValidationError("phantom", "radial_bump",
                          "amplitude t <= -1 makes sigma touch zero");

  Conductivity out;
  out.support_radius = std::abs(center) + radius;
  out.eval = [t, center, radius](Complex z) {
    const double u = std::norm(z - center) / (radius * radius);
    return 1.0 + t * detail::bump_phi(u);
  };
  out.field = ComplexField(grid);
  const int n = grid.n_side;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix)
      out.field.at(ix, iy) = out.eval(grid.node(ix, iy));
  out.sigma_min = std::min(1.0, 1.0 + t);
  out.sigma_max = std::max(1.0, 1.0 + t);
  out.recipe = Json{{"type", "radial_bump"},
                    {"t", t},
                    {"center", {center.real(), center.imag()}},
                    {"radius", radius}};
  return out;
}

// sigma^1/2(z) = 1 + t (1 - u)^gamma inside, 1 outside; finite smoothness at
// the support circle with decay order controlled by gamma.
inline Conductivity make_power_bump(double t, Complex center, double radius,
                                    double gamma, const GridSpec& grid) {
  grid.validate("phantom");
  if (radius <= 0.0 || gamma <= 2.0)
    throw ValidationError("phantom", "power_bump",
                          "need radius > 0 and gamma > 2");
  if (std::abs(center) + radius >= 1.0)
    throw ValidationError("phantom", "power_bump",
                          "bump must stay inside the unit disk");
  if (t <= -1.0)
    throw ValidationError("phantom", "power_bump", "sqrt(sigma) touches zero");

  Conductivity out;
  out.support_radius = std::abs(center) + radius;
  out.eval = [t, center, radius, gamma](Complex z) {
    const double u = std::norm(z - center) / (radius * radius);
    if (u >= 1.0) return 1.0;
    const double s = 1.0 + t * std::pow(1.0 - u, gamma);
    return s * s;
  };
  out.field = ComplexField(grid);
  const int n = grid.n_side;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix)
      out.field.at(ix, iy) = out.eval(grid.node(ix, iy));
  const double speak = 1.0 + t;
  out.sigma_min = std::min(1.0, speak * speak);
  out.sigma_max = std::max(1.0, speak * speak);
  out.recipe = Json{{"type", "power_bump"},
                    {"t", t},
                    {"center", {center.real(), center.imag()}},
                    {"radius", radius},
                    {"gamma", gamma}};
  return out;
}

namespace detail {

// Closed-form v for the recipe families, via the u-parametrized chain rule.
inline std::function<double(Complex)> analytic_v(const Json& recipe) {
  const std::string type = recipe.at("type");
  const double t = recipe.at("t");
  const Complex center(recipe.at("center")[0], recipe.at("center")[1]);
  const double r0 = recipe.at("radius");
  if (type == "radial_bump") {
    return [t, center, r0](Complex z) {
      const double u = std::norm(z - center) / (r0 * r0);
      if (u >= 1.0) return 0.0;
      const double sig = 1.0 + t * bump_phi(u);
      const double s = std::sqrt(sig);
      const double su = 0.5 * t * bump_phi_u(u) / s;
      const double suu =
          0.5 * t * bump_phi_uu(u) / s -
          0.25 * t * t * bump_phi_u(u) * bump_phi_u(u) / (sig * s);
      return 4.0 / (r0 * r0) * (u * suu + su) / s;
    };
  }
  if (type == "power_bump") {
    const double gamma = recipe.at("gamma");
    return [t, center, r0, gamma](Complex z) {
      const double u = std::norm(z - center) / (r0 * r0);
      if (u >= 1.0) return 0.0;
      const double d = 1.0 - u;
      const double s = 1.0 + t * std::pow(d, gamma);
      const double su = -t * gamma * std::pow(d, gamma - 1.0);
      const double suu = t * gamma * (gamma - 1.0) * std::pow(d, gamma - 2.0);
      return 4.0 / (r0 * r0) * (u * suu + su) / s;
    };
  }
  throw ValidationError("phantom", "recipe", "unknown phantom type: " + type);
}

}  // namespace detail

// max_{|J| <= m} of the grid L1 norm of spectral derivatives of v.
inline double norm_w_m1(const ComplexField& v, int m) {
  if (m < 0 || m > 8)
    throw ValidationError("phantom", "norm_w_m1",
                          "multi-index order capped at 0 <= m <= 8");
  double best = 0.0;
  for (int jx = 0; jx <= m; ++jx)
    for (int jy = 0; jx + jy <= m; ++jy) {
      const ComplexField d =
          (jx == 0 && jy == 0) ? v : derivative_xy(v, jx, jy);
      best = std::max(best, d.norm_lp(1.0));
    }
  return best;
}

// sup over the frequency grid of (1+|p|^2)^{m/2} |vhat(p)| with
// vhat(p) = (2 pi)^-2 integral e^{i p x} v(x) dx.
inline double norm_hat_m(const ComplexField& v, int m) {
  if (m < 0)
    throw ValidationError("phantom", "norm_hat_m", "m must be nonnegative");
  const int n = v.n();
  ComplexField work = v;
  fft::forward_2d(n, n, work.values.data());
  const double cell = v.grid.cell();
  const double scale = cell * cell / (4.0 * kPi * kPi);
  const double dxi = 2.0 * kPi / (n * cell);
  double best = 0.0;
  for (int ky = 0; ky < n; ++ky) {
    const double py = fft::freq_index(ky, n) * dxi;
    for (int kx = 0; kx < n; ++kx) {
      const double px = fft::freq_index(kx, n) * dxi;
      const double weight = std::pow(1.0 + px * px + py * py, 0.5 * m);
      best = std::max(best, weight * scale * std::abs(work.at(kx, ky)));
    }
  }
  return best;
}

// v = Lap(sigma^1/2)/sigma^1/2 by spectral differentiation of sigma^1/2 - 1
// (compactly supported, so the FFT derivative is legitimate).
inline Potential potential_from_conductivity(const Conductivity& sigma,
                                             int m = 3) {
  sigma.field.grid.validate("phantom");
  const int n = sigma.field.n();
  ComplexField sq(sigma.field.grid);
  for (std::size_t i = 0; i < sq.values.size(); ++i) {
    const double sv = sigma.field.values[i].real();
    if (!(sv > 0.0))
      throw NumericalError("phantom", "potential_from_conductivity",
                           "sigma touches zero or is negative");
    sq.values[i] = std::sqrt(sv) - 1.0;
  }
  ComplexField lap = laplacian(sq);
  Potential out;
  out.field = ComplexField(sigma.field.grid);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const Complex z = sigma.field.grid.node(ix, iy);
      if (std::abs(z) > sigma.support_radius) {
        out.field.at(ix, iy) = 0.0;
      } else {
        out.field.at(ix, iy) =
            lap.at(ix, iy).real() / (sq.at(ix, iy).real() + 1.0);
      }
    }
  out.m = m;
  out.support_radius = sigma.support_radius;
  out.recipe = sigma.recipe;
  if (!sigma.recipe.empty()) out.eval = detail::analytic_v(sigma.recipe);
  out.norm_m1 = norm_w_m1(out.field, std::min(m, 8));
  out.norm_hat_m = norm_hat_m(out.field, m);
  out.field.require_finite("phantom", "potential_from_conductivity");
  return out;
}

// ---------------------------------------------------------------------------
// JSON recipes: {"type":"radial_bump","t":..,"center":[re,im],"radius":..,
// "grid":{"s":..,"n":..,"offset":..}} plus "gamma" for power_bump and an
// optional "m" (declared smoothness, default 4).
// ---------------------------------------------------------------------------

inline GridSpec grid_from_json(const Json& j, const char* module = "phantom") {
  for (auto& [key, _] : j.items())
    if (key != "s" && key != "n" && key != "offset" && key != "center")
      throw ValidationError(module, "recipe", "unknown grid key: " + key);
  GridSpec g;
  g.half_width = j.at("s");
  g.n_side = j.at("n");
  g.offset = j.value("offset", false);
  if (j.contains("center"))
    g.center = Complex(j.at("center")[0], j.at("center")[1]);
  g.validate(module);
  return g;
}

struct Phantom {
  Conductivity sigma;
  Potential v;
  int m = 4;
};

inline Phantom phantom_from_recipe(const Json& recipe, const GridSpec& grid) {
  static const std::array<std::string, 6> keys = {"type",   "t",     "center",
                                                  "radius", "gamma", "m"};
  for (auto& [key, _] : recipe.items())
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ValidationError("phantom", "recipe", "unknown recipe key: " + key);
  const std::string type = recipe.at("type");
  const double t = recipe.at("t");
  const Complex center(recipe.at("center")[0], recipe.at("center")[1]);
  const double radius = recipe.at("radius");
  Phantom out;
  out.m = recipe.value("m", 4);
  if (out.m <= 2)
    throw ValidationError("phantom", "recipe", "declared m must exceed 2");
  if (type == "radial_bump") {
    out.sigma = make_radial_bump(t, center, radius, grid);
  } else if (type == "power_bump") {
    out.sigma = make_power_bump(t, center, radius, recipe.at("gamma"), grid);
  } else {
    throw ValidationError("phantom", "recipe", "unknown phantom type: " + type);
  }
  out.sigma.recipe["m"] = out.m;
  out.v = potential_from_conductivity(out.sigma, out.m);
  // closed-form samples are exact; prefer them over the spectral field
  const int n = grid.n_side;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix)
      out.v.field.at(ix, iy) = out.v.eval(grid.node(ix, iy));
  out.v.norm_m1 = norm_w_m1(out.v.field, std::min(out.m, 8));
  out.v.norm_hat_m = norm_hat_m(out.v.field, out.m);
  return out;
}

}  // namespace dbar2d
