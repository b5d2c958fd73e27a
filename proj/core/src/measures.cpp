#include "cantor2w/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cantor2w/error.hpp"

namespace cantor2w {

double Moments::variance() const {
  if (mass <= 0.0) return 0.0;
  const double mean = first / mass;
  return std::max(0.0, second / mass - mean * mean);
}

// ---------------------------------------------------------------------------
// AtomicMeasure1D

AtomicMeasure1D::AtomicMeasure1D(std::vector<Atom> atoms, Provenance provenance, double tail_bound)
    : provenance_(provenance), tail_bound_(tail_bound) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
  positions_.reserve(atoms.size());
  masses_.reserve(atoms.size());
  for (const Atom& atom : atoms) {
    if (!(atom.mass > 0.0) || !std::isfinite(atom.x)) {
      throw Error(ErrorKind::invalid_parameters, "atoms need finite positions and positive masses");
    }
    if (!positions_.empty() && positions_.back() == atom.x) {
      throw Error(ErrorKind::invalid_parameters, "repeated atom position");
    }
    positions_.push_back(atom.x);
    masses_.push_back(atom.mass);
  }
}

double AtomicMeasure1D::total_mass() const {
  return std::accumulate(masses_.begin(), masses_.end(), 0.0);
}

std::pair<std::size_t, std::size_t> AtomicMeasure1D::range(const Span& span) const {
  const auto first = std::lower_bound(positions_.begin(), positions_.end(), span.lo);
  const auto last = span.upper_closed ? std::upper_bound(first, positions_.end(), span.hi)
                                      : std::lower_bound(first, positions_.end(), span.hi);
  return {static_cast<std::size_t>(first - positions_.begin()),
          static_cast<std::size_t>(std::max(first, last) - positions_.begin())};
}

double AtomicMeasure1D::mass(const Span& span) const {
  const auto [first, last] = range(span);
  double sum = 0.0;
  for (std::size_t i = first; i < last; ++i) sum += masses_[i];
  return sum;
}

Moments AtomicMeasure1D::moments(const Span& span, double about) const {
  const auto [first, last] = range(span);
  Moments m;
  for (std::size_t i = first; i < last; ++i) {
    const double d = positions_[i] - about;
    m.mass += masses_[i];
    m.first += masses_[i] * d;
    m.second += masses_[i] * d * d;
  }
  return m;
}

bool AtomicMeasure1D::has_atom_at(double x) const {
  return std::binary_search(positions_.begin(), positions_.end(), x);
}

AtomicMeasure1D AtomicMeasure1D::restricted(const Span& span) const {
  const auto [first, last] = range(span);
  AtomicMeasure1D out;
  out.positions_.assign(positions_.begin() + static_cast<std::ptrdiff_t>(first),
                        positions_.begin() + static_cast<std::ptrdiff_t>(last));
  out.masses_.assign(masses_.begin() + static_cast<std::ptrdiff_t>(first),
                     masses_.begin() + static_cast<std::ptrdiff_t>(last));
  out.provenance_ = provenance_;
  out.tail_bound_ = tail_bound_;
  return out;
}

// ---------------------------------------------------------------------------
// CantorWeights

CantorWeights::CantorWeights(std::shared_ptr<const CantorTree> tree, int level)
    : tree_(std::move(tree)), level_(level) {
  if (!tree_) throw Error(ErrorKind::invalid_parameters, "missing tree");
  if (level < 0 || level > tree_->depth()) {
    std::ostringstream os;
    os << "approximation level " << level << " exceeds tree depth " << tree_->depth();
    throw Error(ErrorKind::depth_overflow, os.str());
  }
  // Children midpoints sit at +-(1-r)/2 from the parent midpoint.
  const double r = tree_->ratio();
  const double half_shift = 0.5 * (1.0 - r);
  unit_variance_.assign(static_cast<std::size_t>(level) + 1, 0.0);
  for (std::size_t i = 1; i < unit_variance_.size(); ++i) {
    unit_variance_[i] = r * r * unit_variance_[i - 1] + half_shift * half_shift;
  }
}

double CantorWeights::node_mass(int generation) { return std::ldexp(1.0, -generation); }

double CantorWeights::mass(const Span& span) const { return mass_node(0, 0, span); }

double CantorWeights::mass_node(int k, std::size_t j, const Span& span) const {
  const double l = tree_->left(k, j);
  const double len = tree_->length(k);
  const double r = l + len;
  if (r <= span.lo || l >= span.hi) return 0.0;
  if (span.lo <= l && r <= span.hi) return node_mass(k);
  if (k == level_) {
    const double overlap = std::min(r, span.hi) - std::max(l, span.lo);
    return node_mass(k) * overlap / len;
  }
  return mass_node(k + 1, 2 * j, span) + mass_node(k + 1, 2 * j + 1, span);
}

Moments CantorWeights::moments(const Span& span, double about) const {
  Moments out;
  moments_node(0, 0, span, about, out);
  return out;
}

void CantorWeights::moments_node(int k, std::size_t j, const Span& span, double about,
                                 Moments& out) const {
  const double l = tree_->left(k, j);
  const double len = tree_->length(k);
  const double r = l + len;
  if (r <= span.lo || l >= span.hi) return;
  const double mid = l + 0.5 * len;
  if ((span.lo <= l && r <= span.hi) || k == level_) {
    if (k == level_ && !span.contains(mid)) return;
    const double w = node_mass(k);
    const double d = mid - about;
    const double var = len * len * unit_variance_[static_cast<std::size_t>(level_ - k)];
    out.mass += w;
    out.first += w * d;
    out.second += w * (d * d + var);
    return;
  }
  moments_node(k + 1, 2 * j, span, about, out);
  moments_node(k + 1, 2 * j + 1, span, about, out);
}

double CantorWeights::distance_to_support(double x) const {
  if (x < 0.0) return -x;
  if (x > 1.0) return x - 1.0;
  std::size_t j = 0;
  for (int k = 0; k < level_; ++k) {
    const double l = tree_->left(k, j);
    const double left_end = l + tree_->length(k + 1);
    const double right_start = l + (tree_->length(k) - tree_->length(k + 1));
    if (x <= left_end) {
      j = 2 * j;
    } else if (x >= right_start) {
      j = 2 * j + 1;
    } else {
      // Extreme descendants share the endpoints of their ancestors.
      return std::min(x - left_end, right_start - x);
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Gap atoms

double gap_atom_mass(double s0, int generation) {
  return std::pow(2.0 / (s0 * s0), static_cast<double>(generation));
}

double gap_atoms_total_mass(double s0) { return s0 * s0 / (s0 * s0 - 4.0); }

double gap_atom_position(const CantorTree& tree, int generation, std::size_t j, Placement placement) {
  if (placement.kind == Placement::Kind::center) return tree.gap(generation, j).center;
  const double a = tree.gap(generation, j).a;
  return a + placement.c * tree.params().b * tree.length(generation);
}

AtomicMeasure1D sigma_atoms(const CantorTree& tree, int depth, Placement placement) {
  if (depth < 0 || depth > tree.depth()) {
    std::ostringstream os;
    os << "sigma depth " << depth << " exceeds tree depth " << tree.depth();
    throw Error(ErrorKind::depth_overflow, os.str());
  }
  if (placement.kind == Placement::Kind::riesz && !(placement.c > 0.0 && placement.c < 1.0)) {
    throw Error(ErrorKind::invalid_parameters, "riesz placement needs c in (0,1)");
  }
  const double s0 = tree.params().s0();
  std::vector<Atom> atoms;
  atoms.reserve(CantorTree::count(depth + 1) - 1);
  for (int k = 0; k <= depth; ++k) {
    const double m = gap_atom_mass(s0, k);
    for (std::size_t j = 0; j < CantorTree::count(k); ++j) {
      atoms.push_back({gap_atom_position(tree, k, j, placement), m});
    }
  }
  const double q = 4.0 / (s0 * s0);
  const double tail = std::pow(q, depth + 1) / (1.0 - q);
  const auto provenance =
      placement.kind == Placement::Kind::center ? Provenance::sigma_center : Provenance::sigma_riesz;
  return AtomicMeasure1D(std::move(atoms), provenance, tail);
}

namespace {

void require_interval(double left, double right) {
  if (!(left < right)) throw Error(ErrorKind::invalid_parameters, "interval needs left < right");
}

}  // namespace

double node_mass(const AtomicMeasure1D& measure, double left, double right) {
  require_interval(left, right);
  return measure.mass(Span{left, right});
}

double node_mass(const CantorWeights& measure, double left, double right) {
  require_interval(left, right);
  return measure.mass(Span{left, right});
}

double total_mass(const Measure1D& measure) {
  return std::visit([](const auto& m) { return m.total_mass(); }, measure);
}

double mass(const Measure1D& measure, const Span& span) {
  return std::visit([&](const auto& m) { return m.mass(span); }, measure);
}

Moments moments(const Measure1D& measure, const Span& span, double about) {
  return std::visit([&](const auto& m) { return m.moments(span, about); }, measure);
}

}  // namespace cantor2w
