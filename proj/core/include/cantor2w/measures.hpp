#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "cantor2w/cantor_tree.hpp"

namespace cantor2w {

/// A bounded piece of the line used for membership tests.  The lower end is
/// always included; the upper end is included when `upper_closed` is set.
/// Closed spans are the default; partitions use half-open pieces so that a
/// shared cut point is owned by exactly one piece.
struct Span {
  double lo;
  double hi;
  bool upper_closed = true;

  bool contains(double x) const { return x >= lo && (upper_closed ? x <= hi : x < hi); }
  double length() const { return hi - lo; }
};

/// Zeroth, first and second moments of a measure restricted to a set, the
/// latter two taken about a caller-chosen reference point.
struct Moments {
  double mass = 0.0;
  double first = 0.0;
  double second = 0.0;

  Moments& operator+=(const Moments& other) {
    mass += other.mass;
    first += other.first;
    second += other.second;
    return *this;
  }
  /// Centered second moment divided by mass; 0 for an empty restriction.
  double variance() const;
};

struct Atom {
  double x;
  double mass;
};

enum class Provenance { sigma_center, sigma_riesz, custom };

/// Finite sum of point masses, sorted by position.
class AtomicMeasure1D {
 public:
  AtomicMeasure1D() = default;
  /// Sorts the atoms; throws invalid_parameters on non-positive masses or
  /// repeated positions.
  AtomicMeasure1D(std::vector<Atom> atoms, Provenance provenance = Provenance::custom,
                  double tail_bound = 0.0);

  std::span<const double> positions() const { return positions_; }
  std::span<const double> masses() const { return masses_; }
  std::size_t size() const { return positions_.size(); }
  bool empty() const { return positions_.empty(); }
  Provenance provenance() const { return provenance_; }
  /// Upper bound on the mass dropped by truncation (0 for custom measures).
  double tail_bound() const { return tail_bound_; }

  double total_mass() const;
  /// Index range [first, last) of atoms lying in the span.
  std::pair<std::size_t, std::size_t> range(const Span& span) const;
  double mass(const Span& span) const;
  Moments moments(const Span& span, double about) const;
  bool has_atom_at(double x) const;

  /// Copy with only the atoms inside the span.
  AtomicMeasure1D restricted(const Span& span) const;

 private:
  std::vector<double> positions_;
  std::vector<double> masses_;
  Provenance provenance_ = Provenance::custom;
  double tail_bound_ = 0.0;
};

/// The Cantor measure, represented through its generation-`level`
/// approximation: mass 2^-k on every generation-k interval for k <= level,
/// spread uniformly (density form) or concentrated at midpoints (atomized
/// form) at generation `level`.  Integrals use the atomized form with adaptive
/// coarsening: a whole subtree is replaced by its midpoint whenever its length
/// is at most `ratio * (distance + regularization)`.
class CantorWeights {
 public:
  CantorWeights(std::shared_ptr<const CantorTree> tree, int level);

  const CantorTree& tree() const { return *tree_; }
  std::shared_ptr<const CantorTree> tree_ptr() const { return tree_; }
  int level() const { return level_; }
  double total_mass() const { return 1.0; }
  static double node_mass(int generation);

  /// Mass of the density form on a span; exact 2^-k on tree intervals.
  double mass(const Span& span) const;
  /// Moments of the atomized form restricted to a span.
  Moments moments(const Span& span, double about) const;
  /// Distance from x to the union of generation-`level` intervals.
  double distance_to_support(double x) const;

  /// Calls visit(y, w) for the adaptive midpoint nodes seen from x, in
  /// ascending order of y.
  template <class Visit>
  void visit(double x, double regularization, double ratio, Visit&& visit) const {
    visit_node(0, 0, x, regularization, ratio, visit);
  }
  /// As visit(), restricted to the span (midpoint membership at the cap).
  template <class Visit>
  void visit(double x, double regularization, double ratio, const Span& span, Visit&& visit) const {
    visit_restricted(0, 0, x, regularization, ratio, span, visit);
  }

 private:
  template <class Visit>
  void visit_node(int k, std::size_t j, double x, double reg, double ratio, Visit& visit) const {
    const double l = tree_->left(k, j);
    const double len = tree_->length(k);
    const double d = x < l ? l - x : (x > l + len ? x - (l + len) : 0.0);
    if (k == level_ || len <= ratio * (d + reg)) {
      visit(l + 0.5 * len, node_mass(k));
      return;
    }
    visit_node(k + 1, 2 * j, x, reg, ratio, visit);
    visit_node(k + 1, 2 * j + 1, x, reg, ratio, visit);
  }

  template <class Visit>
  void visit_restricted(int k, std::size_t j, double x, double reg, double ratio, const Span& span,
                        Visit& visit) const {
    const double l = tree_->left(k, j);
    const double len = tree_->length(k);
    const double r = l + len;
    if (r <= span.lo || l >= span.hi) return;
    if (span.lo <= l && r <= span.hi) {
      visit_node(k, j, x, reg, ratio, visit);
      return;
    }
    if (k == level_) {
      const double mid = l + 0.5 * len;
      if (span.contains(mid)) visit(mid, node_mass(k));
      return;
    }
    visit_restricted(k + 1, 2 * j, x, reg, ratio, span, visit);
    visit_restricted(k + 1, 2 * j + 1, x, reg, ratio, span, visit);
  }

  double mass_node(int k, std::size_t j, const Span& span) const;
  void moments_node(int k, std::size_t j, const Span& span, double about, Moments& out) const;

  std::shared_ptr<const CantorTree> tree_;
  int level_;
  std::vector<double> unit_variance_;  // variance of the atomized form on a unit interval, by remaining depth
};

/// Where the gap atoms sit: gap centers, or a + c*|G| inside each gap G=(a,b).
struct Placement {
  enum class Kind { center, riesz };
  Kind kind = Kind::center;
  double c = 0.5;

  static Placement center() { return {Kind::center, 0.5}; }
  static Placement riesz(double c) { return {Kind::riesz, c}; }
};

/// Mass (2/s0^2)^k carried by every generation-k gap atom.
double gap_atom_mass(double s0, int generation);
/// Total mass of the untruncated gap-atom measure, s0^2/(s0^2-4).
double gap_atoms_total_mass(double s0);

/// One atom per gap of generations 0..depth: 2^(depth+1)-1 atoms.
/// Throws depth_overflow if depth exceeds the tree, invalid_parameters for a
/// riesz placement with c outside (0,1).
AtomicMeasure1D sigma_atoms(const CantorTree& tree, int depth, Placement placement);

/// Position of the gap atom of (k, j) under the placement.
double gap_atom_position(const CantorTree& tree, int generation, std::size_t j, Placement placement);

/// Closed-interval mass; throws invalid_parameters unless left < right.
double node_mass(const AtomicMeasure1D& measure, double left, double right);
double node_mass(const CantorWeights& measure, double left, double right);

using Measure1D = std::variant<AtomicMeasure1D, CantorWeights>;

double total_mass(const Measure1D& measure);
double mass(const Measure1D& measure, const Span& span);
Moments moments(const Measure1D& measure, const Span& span, double about);

}  // namespace cantor2w
