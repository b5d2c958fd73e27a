#include "cantor2w/planar.hpp"

#include <algorithm>
#include <cmath>

#include "cantor2w/error.hpp"

namespace cantor2w {

double Moments2::variance() const {
  if (mass <= 0.0) return 0.0;
  const double mx = first_x / mass;
  const double my = first_y / mass;
  return std::max(0.0, second / mass - mx * mx - my * my);
}

PlanarMeasure::PlanarMeasure(std::vector<PlanarRow> rows) : rows_(std::move(rows)) {}

double PlanarMeasure::total_mass() const {
  double sum = 0.0;
  for (const PlanarRow& row : rows_) sum += cantor2w::total_mass(*row.base);
  return sum;
}

bool row_span(const PlanarRow& row, const Box& box, Span& out) {
  if (!box.y.contains(row.height)) return false;
  if (box.x.hi < row.offset || box.x.lo > row.offset + 1.0) return false;
  out = Span{box.x.lo - row.offset, box.x.hi - row.offset, box.x.upper_closed};
  return true;
}

double PlanarMeasure::mass(const Box& box) const {
  double sum = 0.0;
  for (const PlanarRow& row : rows_) {
    Span local;
    if (row_span(row, box, local)) sum += cantor2w::mass(*row.base, local);
  }
  return sum;
}

Moments2 PlanarMeasure::moments(const Box& box, Point2 about) const {
  Moments2 out;
  for (const PlanarRow& row : rows_) {
    Span local;
    if (!row_span(row, box, local)) continue;
    const Moments m = cantor2w::moments(*row.base, local, about.x - row.offset);
    const double dy = row.height - about.y;
    out.mass += m.mass;
    out.first_x += m.first;
    out.first_y += m.mass * dy;
    out.second += m.second + m.mass * dy * dy;
  }
  return out;
}

std::vector<std::size_t> PlanarMeasure::rows_meeting(const Box& box) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Span local;
    if (row_span(rows_[i], box, local)) out.push_back(i);
  }
  return out;
}

double row_separation(double alpha, int n) {
  const double factor = std::max(1.0 / (2.0 - alpha), 1.0);
  const double exponent = std::ceil(2.0 * n * factor - 1e-12);
  return std::pow(4.0, exponent);
}

std::vector<double> row_offsets(double alpha, int n_rows) {
  std::vector<double> offsets(static_cast<std::size_t>(std::max(n_rows, 0)));
  double a = 0.0;
  for (int n = 0; n < n_rows; ++n) {
    offsets[static_cast<std::size_t>(n)] = a;
    a += 1.0 + row_separation(alpha, n);
  }
  return offsets;
}

PlanarPair build_planar(const std::shared_ptr<const CantorTree>& tree, int n_rows,
                        std::span<const double> heights, Placement placement) {
  if (n_rows < 1) throw Error(ErrorKind::invalid_parameters, "need at least one row");
  if (heights.size() != static_cast<std::size_t>(n_rows)) {
    throw Error(ErrorKind::invalid_parameters, "one height per row required");
  }
  for (double h : heights) {
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::invalid_height, "heights must be positive");
  }
  const ConstructionParams& params = tree->params();
  auto omega_base = std::make_shared<const Measure1D>(CantorWeights(tree, params.depth_omega));
  auto sigma_base =
      std::make_shared<const Measure1D>(sigma_atoms(*tree, params.depth_sigma, placement));
  const std::vector<double> offsets = row_offsets(params.alpha, n_rows);
  std::vector<PlanarRow> omega_rows;
  std::vector<PlanarRow> sigma_rows;
  for (int n = 0; n < n_rows; ++n) {
    const double a = offsets[static_cast<std::size_t>(n)];
    omega_rows.push_back({a, 0.0, omega_base});
    sigma_rows.push_back({a, heights[static_cast<std::size_t>(n)], sigma_base});
  }
  return {PlanarMeasure(std::move(omega_rows)), PlanarMeasure(std::move(sigma_rows))};
}

}  // namespace cantor2w
