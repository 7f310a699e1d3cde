#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "rdiag/errors.hpp"

// Adaptive Gauss-Kronrod quadrature on the 7/15-point pair.  Panels are
// refined dyadically; each panel is accepted when its Kronrod error estimate
// fits within its width-proportional share of the global tolerance.  Kronrod
// abscissae are interior, so integrable endpoint singularities (x^-a, log x)
// are never evaluated at the endpoint and resolve by depth alone.

namespace rdiag::quad {

struct Options {
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
  // Dyadic levels.  An x^-a endpoint sheds error like 2^-(1-a) per level, so
  // exponents up to a ~ 0.97 still resolve to tolerance before the cap; panels
  // whose width reaches the spacing of doubles retire earlier on their own.
  int max_depth = 1200;
  std::size_t max_panels = 200000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;            // accumulated error estimate
  std::size_t panels = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod abscissae (positive half) and weights; the embedded
// 7-point Gauss rule uses the odd-indexed abscissae.
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
inline void panel(F& f, double a, double b, double& i15, double& err, double& resabs) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  // The abscissae are interior in exact arithmetic, but once the panel width
  // nears the spacing of doubles the outermost nodes can round onto a or b;
  // integrands are only assumed defined on the open interval, so clamp every
  // node one ulp inside.
  const double lo = std::nextafter(a, b);
  const double hi = std::nextafter(b, a);
  const double fc = f(std::clamp(c, lo, hi));
  double k = fc * wgk[7];
  double g = fc * wg[3];
  double ra = std::abs(fc) * wgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * xgk[j];
    const double f1 = f(std::max(c - dx, lo));
    const double f2 = f(std::min(c + dx, hi));
    k += wgk[j] * (f1 + f2);
    ra += wgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) g += wg[j / 2] * (f1 + f2);
  }
  i15 = k * h;
  err = std::abs((k - g) * h);
  resabs = ra * h;
}

}  // namespace detail

// Greedy global refinement: keep the current leaves in a max-heap ordered by
// their error estimates, repeatedly split the worst one, and stop once the
// summed error meets the global tolerance.  Leaves whose error estimate has
// reached the rounding floor of their own L1 mass (or the depth cap) are
// retired from the heap: further splitting cannot improve them.
template <class F>
Result integrate(F&& f, double a, double b, Options opt = {}) {
  Result out;
  if (!(b > a)) {
    out.converged = (a == b);  // empty interval integrates to 0
    return out;
  }

  struct Node {
    double a, b, i15, err, resabs;
    int depth;
  };
  const auto by_err = [](const Node& x, const Node& y) { return x.err < y.err; };
  const auto eval = [&f](double lo, double hi, int depth) {
    Node n{lo, hi, 0.0, 0.0, 0.0, depth};
    detail::panel(f, lo, hi, n.i15, n.err, n.resabs);
    // Nonfinite error estimates would corrupt the heap ordering; an infinite
    // estimate keeps the node splittable and the verdict honest.
    if (!std::isfinite(n.err)) n.err = std::numeric_limits<double>::infinity();
    return n;
  };

  // Magnitude scale for the relative tolerance, seeded from a whole-interval
  // panel and refined once if the adaptive total disagrees badly.
  double scale = std::abs(eval(a, b, 0).i15);

  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<Node> heap{eval(a, b, 0)};
    std::size_t panels = 1;
    double settled_value = 0.0, settled_err = 0.0;
    double heap_err = heap.front().err;
    const double target = std::max(opt.abs_tol, opt.rel_tol * scale);
    while (!heap.empty() && settled_err + heap_err > target && panels < opt.max_panels) {
      std::pop_heap(heap.begin(), heap.end(), by_err);
      const Node n = heap.back();
      heap.pop_back();
      heap_err -= n.err;
      const double m = 0.5 * (n.a + n.b);
      // Retire a leaf when splitting cannot help: depth cap, error at the
      // rounding floor of its own L1 mass, or a midpoint that no longer lies
      // strictly between the endpoints.
      if (n.depth >= opt.max_depth || n.err <= 0x1.0p-43 * n.resabs ||
          !(m > n.a && m < n.b)) {
        settled_value += n.i15;
        settled_err += n.err;
        continue;
      }
      for (const Node& child : {eval(n.a, m, n.depth + 1), eval(m, n.b, n.depth + 1)}) {
        heap_err += child.err;
        heap.push_back(child);
        std::push_heap(heap.begin(), heap.end(), by_err);
      }
      panels += 2;
    }
    double total = settled_value, errsum = settled_err;
    for (const Node& n : heap) {
      total += n.i15;
      errsum += n.err;
    }
    out.value = total;
    out.error = errsum;
    out.panels = panels;
    out.converged =
        std::isfinite(total) &&
        errsum <= std::max(opt.abs_tol, 10.0 * opt.rel_tol * std::abs(total)) * 50.0;
    const double measured = std::abs(out.value);
    if (measured <= 2.0 * scale && scale <= 2.0 * std::max(measured, opt.abs_tol)) break;
    scale = std::max(measured, opt.abs_tol);
  }
  return out;
}

// Integral over (0, inf) via the double-exponential map t = exp(c sinh x).
// Truncating x at +-x_max clips t outside roughly [1e-120, 1e+120], so an
// algebraic tail t^(-1-a) loses only ~10^(-120 a) of its mass; the window is
// kept that far inside the double range so integrand factors as steep as
// t^(+-2.5) still evaluate without overflow.  A bounded substitution
// (t = tan theta and kin) would instead clip the tail at the largest double
// below the endpoint, t ~ 1e16, silently discarding slowly decaying tails no
// matter how far the panels refine.
template <class F>
Result integrate_half_line(F&& f, Options opt = {}) {
  constexpr double c = std::numbers::pi / 2;
  constexpr double x_max = 5.8631;
  auto g = [&f](double x) {
    const double t = std::exp(c * std::sinh(x));
    const double jac = c * std::cosh(x) * t;
    if (!(t > 0.0) || !std::isfinite(jac)) return 0.0;
    return f(t) * jac;
  };
  return integrate(g, -x_max, x_max, opt);
}

template <class F>
Result integrate_checked(F&& f, double a, double b, Options opt = {},
                         const char* what = "integral") {
  Result r = integrate(std::forward<F>(f), a, b, opt);
  if (!r.converged)
    throw DivergentIntegral(std::string(what) + ": quadrature failed to converge (error estimate " +
                            std::to_string(r.error) + ")");
  return r;
}

}  // namespace rdiag::quad
