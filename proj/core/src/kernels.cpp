#include "cantor2w/kernels.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cantor2w/error.hpp"
#include "cantor2w/power.hpp"

namespace cantor2w {

namespace {

// Both the 1D smoothed kernels and the planar kernels build the squared
// distance through this helper so that a planar evaluation over a single
// horizontal row reproduces the 1D value bit for bit.
inline double squared_distance(double dx, double dy) { return dx * dx + dy * dy; }

void require_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha < 2.0)) throw Error(ErrorKind::invalid_parameters, "alpha must lie in [0,2)");
}

void require_gamma(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorKind::invalid_parameters, "smoothing gamma must be finite and >= 0");
  }
}

[[noreturn]] void singular(double x) {
  std::ostringstream os;
  os.precision(17);
  os << "kernel evaluated on the support at x=" << x << " with zero smoothing";
  throw Error(ErrorKind::singular_evaluation, os.str());
}

void require_off_support(double x, double gamma, const AtomicMeasure1D& mu) {
  if (gamma == 0.0 && mu.has_atom_at(x)) singular(x);
}

void require_off_support(double x, double gamma, const CantorWeights& mu) {
  if (gamma == 0.0 && mu.distance_to_support(x) == 0.0) singular(x);
}

void require_interval(const Interval1D& interval) {
  if (!(interval.length > 0.0)) throw Error(ErrorKind::invalid_parameters, "interval length must be > 0");
}

void require_cube(const Cube2D& cube) {
  if (!(cube.side > 0.0)) throw Error(ErrorKind::invalid_parameters, "cube side must be > 0");
}

/// Sums f(y) * w over the atoms or quadrature nodes of mu, optionally within
/// a span.  `center` and `regularization` steer the adaptive coarsening.
template <class F>
double integrate(const Measure1D& mu, double center, double regularization, const Span* span,
                 QuadratureOptions options, F&& f) {
  double sum = 0.0;
  if (const auto* atoms = std::get_if<AtomicMeasure1D>(&mu)) {
    std::size_t first = 0;
    std::size_t last = atoms->size();
    if (span) std::tie(first, last) = atoms->range(*span);
    const auto xs = atoms->positions();
    const auto ws = atoms->masses();
    for (std::size_t i = first; i < last; ++i) sum += ws[i] * f(xs[i]);
    return sum;
  }
  const auto& cantor = std::get<CantorWeights>(mu);
  auto accumulate = [&](double y, double w) { sum += w * f(y); };
  if (span) {
    cantor.visit(center, regularization, options.ratio, *span, accumulate);
  } else {
    cantor.visit(center, regularization, options.ratio, accumulate);
  }
  return sum;
}

/// Row-local spans admitted by a planar restriction.  Returns false when the
/// whole row is admitted; otherwise fills `spans` (possibly with none).
bool row_spans(const PlanarRow& row, const Restriction2D& restriction, std::vector<Span>& spans) {
  spans.clear();
  Span local;
  const bool meets = row_span(row, restriction.box, local);
  if (!restriction.complement) {
    if (meets) spans.push_back(local);
    return true;
  }
  if (!meets) return false;
  constexpr double inf = std::numeric_limits<double>::infinity();
  spans.push_back(Span{-inf, local.lo, false});
  const double start = local.upper_closed ? std::nextafter(local.hi, inf) : local.hi;
  spans.push_back(Span{start, inf, true});
  return true;
}

template <class F>
double integrate_planar(const PlanarMeasure& mu, Point2 center, double scale,
                        const std::optional<Restriction2D>& restriction, QuadratureOptions options,
                        F&& f) {
  double sum = 0.0;
  std::vector<Span> spans;
  for (const PlanarRow& row : mu.rows()) {
    const double local_center = center.x - row.offset;
    const double dy = row.height - center.y;
    auto term = [&](double y) { return f(y - local_center, dy); };
    const double reg = scale + std::abs(dy);
    if (restriction && row_spans(row, *restriction, spans)) {
      for (const Span& s : spans) sum += integrate(*row.base, local_center, reg, &s, options, term);
    } else {
      sum += integrate(*row.base, local_center, reg, nullptr, options, term);
    }
  }
  return sum;
}

}  // namespace

void validate(const KernelSpec& spec) {
  require_alpha(spec.alpha);
  require_gamma(spec.gamma);
  if (spec.kind == KernelKind::riesz2d && spec.component != 1 && spec.component != 2) {
    throw Error(ErrorKind::invalid_parameters, "riesz component must be 1 or 2");
  }
}

// --- 1D smoothed kernels ------------------------------------------------------

double frac1d(double x, const AtomicMeasure1D& mu, double alpha, double gamma) {
  require_alpha(alpha);
  require_gamma(gamma);
  require_off_support(x, gamma, mu);
  const Power power((alpha - 2.0) / 2.0);
  double sum = 0.0;
  const auto ys = mu.positions();
  const auto ws = mu.masses();
  for (std::size_t i = 0; i < ys.size(); ++i) sum += ws[i] * power(squared_distance(x - ys[i], gamma));
  return sum;
}

double frac1d(double x, const CantorWeights& mu, double alpha, double gamma,
              QuadratureOptions options) {
  require_alpha(alpha);
  require_gamma(gamma);
  require_off_support(x, gamma, mu);
  const Power power((alpha - 2.0) / 2.0);
  double sum = 0.0;
  mu.visit(x, 0.0, options.ratio,
           [&](double y, double w) { sum += w * power(squared_distance(x - y, gamma)); });
  return sum;
}

double frac1d(double x, const Measure1D& mu, double alpha, double gamma, QuadratureOptions options) {
  if (const auto* atoms = std::get_if<AtomicMeasure1D>(&mu)) return frac1d(x, *atoms, alpha, gamma);
  return frac1d(x, std::get<CantorWeights>(mu), alpha, gamma, options);
}

double riesz1d(double x, const AtomicMeasure1D& mu, double alpha, double gamma) {
  require_alpha(alpha);
  require_gamma(gamma);
  require_off_support(x, gamma, mu);
  const Power power((alpha - 3.0) / 2.0);
  double sum = 0.0;
  const auto ys = mu.positions();
  const auto ws = mu.masses();
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double dx = x - ys[i];
    sum += ws[i] * (dx * power(squared_distance(dx, gamma)));
  }
  return sum;
}

double riesz1d(double x, const CantorWeights& mu, double alpha, double gamma,
               QuadratureOptions options) {
  require_alpha(alpha);
  require_gamma(gamma);
  require_off_support(x, gamma, mu);
  const Power power((alpha - 3.0) / 2.0);
  double sum = 0.0;
  mu.visit(x, 0.0, options.ratio, [&](double y, double w) {
    const double dx = x - y;
    sum += w * (dx * power(squared_distance(dx, gamma)));
  });
  return sum;
}

double riesz1d(double x, const Measure1D& mu, double alpha, double gamma, QuadratureOptions options) {
  if (const auto* atoms = std::get_if<AtomicMeasure1D>(&mu)) return riesz1d(x, *atoms, alpha, gamma);
  return riesz1d(x, std::get<CantorWeights>(mu), alpha, gamma, options);
}

// --- 1D Poisson integrals -------------------------------------------------------

double poisson_variant_reproducing(const Interval1D& interval, const Measure1D& mu, double alpha,
                                   std::optional<Span> restricted_to, QuadratureOptions options) {
  require_alpha(alpha);
  require_interval(interval);
  const double len = interval.length;
  const Power power(2.0 - alpha);
  const Span* span = restricted_to ? &*restricted_to : nullptr;
  return integrate(mu, interval.center, len, span, options, [&](double y) {
    const double denom = len + std::abs(y - interval.center);
    return power(len / (denom * denom));
  });
}

double poisson_variant_standard(const Interval1D& interval, const Measure1D& mu, double alpha,
                                std::optional<Span> restricted_to, QuadratureOptions options) {
  require_alpha(alpha);
  require_interval(interval);
  const double len = interval.length;
  const Power power(alpha - 3.0);
  const Span* span = restricted_to ? &*restricted_to : nullptr;
  return integrate(mu, interval.center, len, span, options,
                   [&](double y) { return len * power(len + std::abs(y - interval.center)); });
}

// --- planar kernels ---------------------------------------------------------------

double poisson2d_reproducing(const Cube2D& cube, const PlanarMeasure& mu, double alpha,
                             std::optional<Restriction2D> restricted_to, QuadratureOptions options) {
  require_alpha(alpha);
  require_cube(cube);
  const double side = cube.side;
  const Power power(2.0 - alpha);
  return integrate_planar(mu, cube.center, side, restricted_to, options, [&](double dx, double dy) {
    const double denom = side + std::sqrt(squared_distance(dx, dy));
    return power(side / (denom * denom));
  });
}

double poisson2d_standard(const Cube2D& cube, const PlanarMeasure& mu, double alpha,
                          std::optional<Restriction2D> restricted_to, QuadratureOptions options) {
  require_alpha(alpha);
  require_cube(cube);
  const double side = cube.side;
  const Power power(alpha - 3.0);
  return integrate_planar(mu, cube.center, side, restricted_to, options, [&](double dx, double dy) {
    return side * power(side + std::sqrt(squared_distance(dx, dy)));
  });
}

namespace {

void require_planar_off_support(double local_x, double dy, const PlanarRow& row) {
  if (dy != 0.0) return;
  if (const auto* atoms = std::get_if<AtomicMeasure1D>(row.base.get())) {
    require_off_support(local_x, 0.0, *atoms);
  } else {
    require_off_support(local_x, 0.0, std::get<CantorWeights>(*row.base));
  }
}

}  // namespace

double frac2d(Point2 x, const PlanarMeasure& mu, double alpha, QuadratureOptions options) {
  require_alpha(alpha);
  const Power power((alpha - 2.0) / 2.0);
  double sum = 0.0;
  for (const PlanarRow& row : mu.rows()) {
    const double local_x = x.x - row.offset;
    const double dy = x.y - row.height;
    require_planar_off_support(local_x, dy, row);
    sum += integrate(*row.base, local_x, 0.0, nullptr, options,
                     [&](double y) { return power(squared_distance(local_x - y, dy)); });
  }
  return sum;
}

double riesz2d(int component, Point2 x, const PlanarMeasure& mu, double alpha,
               QuadratureOptions options) {
  require_alpha(alpha);
  if (component != 1 && component != 2) {
    throw Error(ErrorKind::invalid_parameters, "riesz component must be 1 or 2");
  }
  const Power power((alpha - 3.0) / 2.0);
  double sum = 0.0;
  for (const PlanarRow& row : mu.rows()) {
    const double local_x = x.x - row.offset;
    const double dy = x.y - row.height;
    require_planar_off_support(local_x, dy, row);
    sum += integrate(*row.base, local_x, 0.0, nullptr, options, [&](double y) {
      const double dx = local_x - y;
      const double toward = component == 1 ? -dx : -dy;
      return toward * power(squared_distance(dx, dy));
    });
  }
  return sum;
}

double maximal_alpha(double x, const Measure1D& mu, const CantorTree& tree) {
  const double exponent = 2.0 - tree.params().alpha;
  double best = 0.0;
  for (int k = 0; k <= tree.depth(); ++k) {
    const auto j = tree.locate(k, x);
    if (!j) break;
    const double m = mass(mu, Span{tree.left(k, *j), tree.right(k, *j)});
    best = std::max(best, m / std::pow(tree.length(k), exponent));
  }
  return best;
}

}  // namespace cantor2w
