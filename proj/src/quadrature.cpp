#include "parab/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace parab {
namespace {

// K15 abscissae on [0,1] side (symmetric) and weights; G7 weights for the
// odd-indexed abscissae. Standard QUADPACK values.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double gk;    // Kronrod value
  double err;   // |K15 - G7|
};

Panel gk15(const std::function<double(double)>& f, double a, double b, long& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double resg = 0.0, resk = 0.0;

  const double fc = f(c);
  ++evals;
  resk = kWgk[7] * fc;
  resg = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double x = h * kXgk[static_cast<std::size_t>(i)];
    const double f1 = f(c - x);
    const double f2 = f(c + x);
    evals += 2;
    resk += kWgk[static_cast<std::size_t>(i)] * (f1 + f2);
    if (i % 2 == 1) resg += kWg[static_cast<std::size_t>(i / 2)] * (f1 + f2);
  }
  Panel p;
  p.gk = resk * h;
  p.err = std::abs((resk - resg) * h);
  return p;
}

void adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth,
           int max_depth, QuadResult& out) {
  Panel p = gk15(f, a, b, out.evaluations);
  if (p.err <= tol || depth >= max_depth) {
    out.value += p.gk;
    out.error += p.err;
    return;
  }
  const double c = 0.5 * (a + b);
  adapt(f, a, c, 0.5 * tol, depth + 1, max_depth, out);
  adapt(f, c, b, 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                     double rel_tol, int max_depth) {
  QuadResult out;
  if (a == b) return out;
  if (!(std::isfinite(a) && std::isfinite(b))) throw std::invalid_argument("integrate: non-finite interval");

  Panel first = gk15(f, a, b, out.evaluations);
  const double tol = std::max(abs_tol, rel_tol * std::abs(first.gk));
  if (first.err <= tol) {
    out.value = first.gk;
    out.error = first.err;
    return out;
  }
  const double c = 0.5 * (a + b);
  adapt(f, a, c, 0.5 * tol, 1, max_depth, out);
  adapt(f, c, b, 0.5 * tol, 1, max_depth, out);
  return out;
}

}  // namespace parab
