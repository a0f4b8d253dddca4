// Eigenvalue oracle: balance, reduce to upper Hessenberg form with
// Householder reflections, then run single-shift complex QR with Wilkinson
// shifts and deflation on the active window.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "schurloc/error.hpp"
#include "schurloc/matrix.hpp"

namespace schurloc {
namespace {

double abs1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

// Parlett-Reinsch scaling by powers of two, no permutations.
void balance(Matrix& a) {
  const std::size_t n = a.rows();
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += abs1(a(j, i));
        r += abs1(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        const double inv = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= inv;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

void hessenberg(Matrix& a) {
  const std::size_t n = a.rows();
  if (n < 3) return;
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double alpha_norm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) alpha_norm += std::norm(a(i, k));
    alpha_norm = std::sqrt(alpha_norm);
    if (alpha_norm == 0.0) continue;

    const Complex x0 = a(k + 1, k);
    const Complex phase = std::abs(x0) == 0.0 ? Complex{1.0} : x0 / std::abs(x0);
    const Complex alpha = -phase * alpha_norm;

    // v = x - alpha e1, reflector H = I - 2 v v^H / (v^H v)
    std::fill(v.begin(), v.end(), Complex{});
    v[k + 1] = x0 - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = a(i, k);
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;

    // A <- H A
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * a(i, j);
      s *= beta;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= v[i] * s;
    }
    // A <- A H
    for (std::size_t i = 0; i < n; ++i) {
      Complex s{};
      for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
      s *= beta;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * std::conj(v[j]);
    }
    a(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = Complex{};
  }
}

// Eigenvalue of [[a, b], [c, d]] closest to d.
Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
  const Complex half_tr = 0.5 * (a + d);
  const Complex det = a * d - b * c;
  const Complex disc = std::sqrt(half_tr * half_tr - det);
  const Complex l1 = half_tr + disc;
  const Complex l2 = half_tr - disc;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

struct Rotation {
  double c;
  Complex s;
};

// Unitary G = [[c, s], [-conj(s), c]] with G (x, y)^T = (r, 0)^T.
Rotation make_rotation(Complex x, Complex y) {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  if (ay == 0.0) return {1.0, Complex{}};
  if (ax == 0.0) return {0.0, Complex{1.0}};
  const double rho = std::hypot(ax, ay);
  return {ax / rho, (x / ax) * std::conj(y) / rho};
}

}  // namespace

Spectrum eigenvalues(const Matrix& m) {
  if (!m.is_square() || m.rows() == 0) {
    throw Error(Errc::size_mismatch, "eigenvalues need a non-empty square matrix");
  }
  if (!m.all_finite()) throw Error(Errc::invalid_argument, "matrix has non-finite entries");
  const std::size_t n = m.rows();
  Matrix h = m;
  balance(h);
  hessenberg(h);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  const std::size_t max_iter = 100 * n;
  Spectrum out(n);
  std::vector<Rotation> rots(n);

  std::size_t hi = n - 1;
  std::size_t iter = 0;
  while (true) {
    if (hi == 0) {
      out[0] = h(0, 0);
      break;
    }
    // Locate the start of the unreduced trailing block.
    std::size_t lo = hi;
    while (lo > 0) {
      const double scale = abs1(h(lo - 1, lo - 1)) + abs1(h(lo, lo));
      if (abs1(h(lo, lo - 1)) <= eps * scale || abs1(h(lo, lo - 1)) < std::numeric_limits<double>::min()) {
        h(lo, lo - 1) = Complex{};
        break;
      }
      --lo;
    }
    if (lo == hi) {
      out[hi] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > max_iter) {
      throw Error(Errc::no_convergence,
                  "QR iteration did not converge after " + std::to_string(max_iter) + " steps");
    }

    Complex shift;
    if (iter % 10 == 0) {
      // Exceptional shift to break cycles.
      shift = h(hi, hi) + Complex{std::abs(h(hi, hi - 1).real()), std::abs(h(hi, hi - 1).imag())} * 0.75;
    } else {
      shift = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    }

    for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= shift;
    // H - sI = QR; only the active window matters for the eigenvalues.
    for (std::size_t k = lo; k < hi; ++k) {
      const Rotation g = make_rotation(h(k, k), h(k + 1, k));
      rots[k] = g;
      for (std::size_t j = k; j <= hi; ++j) {
        const Complex x = h(k, j);
        const Complex y = h(k + 1, j);
        h(k, j) = g.c * x + g.s * y;
        h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
      }
    }
    // RQ: right-multiply by each G^H.
    for (std::size_t k = lo; k < hi; ++k) {
      const Rotation g = rots[k];
      const std::size_t last = std::min(k + 2, hi);
      for (std::size_t i = lo; i <= last; ++i) {
        const Complex u = h(i, k);
        const Complex v = h(i, k + 1);
        h(i, k) = u * g.c + v * std::conj(g.s);
        h(i, k + 1) = -u * g.s + v * g.c;
      }
    }
    for (std::size_t i = lo; i <= hi; ++i) h(i, i) += shift;
  }

  std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

}  // namespace schurloc
