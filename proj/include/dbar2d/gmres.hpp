// Restarted GMRES over real or complex vectors, with the operator supplied
// as a callback. Used for the Lippmann-Schwinger solves (complex-linear),
// the dbar-equation solves (real-linear systems stacked over R^2n), and the
// Dirichlet solves behind the boundary operators.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace dbar2d {

struct GmresOptions {
  double tol = 1e-8;    // relative residual target
  int restart = 50;
  int max_iters = 500;  // total operator applications
};

struct GmresReport {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

namespace detail {

inline double gm_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline std::complex<double> gm_dot(const std::vector<std::complex<double>>& a,
                                   const std::vector<std::complex<double>>& b) {
  std::complex<double> s(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

template <class T>
double gm_norm(const std::vector<T>& a) {
  double s = 0.0;
  for (const T& x : a) s += std::norm(x);
  return std::sqrt(s);
}

inline double gm_norm(const std::vector<double>& a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

inline double gm_conj(double x) { return x; }
inline std::complex<double> gm_conj(std::complex<double> x) {
  return std::conj(x);
}

}  // namespace detail

// Solves A x = b for the linear map `apply`, starting from x (commonly b or
// zeros). Scalar must be double or std::complex<double>.
template <class Scalar>
GmresReport gmres(
    const std::function<void(const std::vector<Scalar>&, std::vector<Scalar>&)>&
        apply,
    const std::vector<Scalar>& b, std::vector<Scalar>& x,
    const GmresOptions& opt = {}) {
  using detail::gm_conj;
  using detail::gm_dot;
  using detail::gm_norm;
  const std::size_t n = b.size();
  x.resize(n, Scalar(0));

  const double bnorm = gm_norm(b);
  GmresReport rep;
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), Scalar(0));
    rep.converged = true;
    return rep;
  }

  std::vector<Scalar> r(n), w(n);
  int total_iters = 0;

  while (total_iters < opt.max_iters) {
    // r = b - A x
    apply(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    double beta = gm_norm(r);
    rep.relative_residual = beta / bnorm;
    if (rep.relative_residual <= opt.tol) {
      rep.iterations = total_iters;
      rep.converged = true;
      return rep;
    }

    const int mdim = opt.restart;
    std::vector<std::vector<Scalar>> V;
    V.reserve(mdim + 1);
    std::vector<Scalar> v0(r);
    for (auto& e : v0) e /= beta;
    V.push_back(std::move(v0));

    // Hessenberg factors and Givens-rotated residual tracking.
    std::vector<std::vector<Scalar>> H;  // H[j] holds column j (j+2 entries)
    std::vector<Scalar> cs(mdim), sn(mdim), g(mdim + 1, Scalar(0));
    g[0] = Scalar(beta);

    int j = 0;
    for (; j < mdim && total_iters < opt.max_iters; ++j, ++total_iters) {
      apply(V[j], w);
      std::vector<Scalar> hcol(j + 2, Scalar(0));
      for (int i = 0; i <= j; ++i) {
        hcol[i] = gm_dot(V[i], w);
        for (std::size_t t = 0; t < n; ++t) w[t] -= hcol[i] * V[i][t];
      }
      const double hlast = gm_norm(w);
      hcol[j + 1] = Scalar(hlast);
      if (hlast > 0.0) {
        std::vector<Scalar> vj(w);
        for (auto& e : vj) e /= hlast;
        V.push_back(std::move(vj));
      }

      // apply accumulated rotations, then form the new one
      for (int i = 0; i < j; ++i) {
        const Scalar t = hcol[i];
        hcol[i] = gm_conj(cs[i]) * t + gm_conj(sn[i]) * hcol[i + 1];
        hcol[i + 1] = -sn[i] * t + cs[i] * hcol[i + 1];
      }
      const double denom =
          std::sqrt(std::norm(hcol[j]) + std::norm(hcol[j + 1]));
      if (denom == 0.0) {
        cs[j] = Scalar(1);
        sn[j] = Scalar(0);
      } else {
        cs[j] = hcol[j] / denom;
        sn[j] = hcol[j + 1] / denom;
      }
      hcol[j] = gm_conj(cs[j]) * hcol[j] + gm_conj(sn[j]) * hcol[j + 1];
      hcol[j + 1] = Scalar(0);
      g[j + 1] = -sn[j] * g[j];
      g[j] = gm_conj(cs[j]) * g[j];
      H.push_back(std::move(hcol));

      rep.relative_residual = std::abs(g[j + 1]) / bnorm;
      if (rep.relative_residual <= opt.tol || hlast == 0.0) {
        ++j;
        break;
      }
    }

    // back-substitute y from the triangularized system and update x
    std::vector<Scalar> y(j, Scalar(0));
    for (int i = j - 1; i >= 0; --i) {
      Scalar s = g[i];
      for (int k = i + 1; k < j; ++k) s -= H[k][i] * y[k];
      y[i] = s / H[i][i];
    }
    for (int i = 0; i < j; ++i)
      for (std::size_t t = 0; t < n; ++t) x[t] += y[i] * V[i][t];

    if (rep.relative_residual <= opt.tol) {
      rep.iterations = total_iters;
      rep.converged = true;
      return rep;
    }
  }

  rep.iterations = total_iters;
  // final residual for reporting
  apply(x, r);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  rep.relative_residual = gm_norm(r) / bnorm;
  rep.converged = rep.relative_residual <= opt.tol;
  return rep;
}

}  // namespace dbar2d
