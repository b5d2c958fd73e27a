#pragma once

#include <span>
#include <vector>

#include "cantor2w/construction.hpp"
#include "cantor2w/kernels.hpp"
#include "cantor2w/linear_fit.hpp"

namespace cantor2w {

/// Positive fractional kernel or signed (first-component) Riesz kernel.
enum class TestKind { frac, riesz };

/// Partial sums S(0..K) of a testing integral, one per truncation depth.
struct DivergenceCurve {
  std::vector<int> depths;          // 0..K
  std::vector<double> values;       // S(K), nondecreasing
  std::vector<double> increments;   // S(k) - S(k-1) for k = 1..K
  LinearFit fit;                    // over k = 1..K (needs K >= 2)
};

/// S(K) = sum over gaps of generations 0..K of s_k * (T omega(z))^2 where T is
/// the fractional kernel (frac) or the Riesz kernel (riesz) and z is the gap
/// atom under the placement.  Throws depth_overflow when K > depth_sigma.
DivergenceCurve testing_partial_sum(const Construction& construction, int max_generation,
                                    TestKind kind, Placement placement,
                                    QuadratureOptions options = {});

/// Riesz integral of the Cantor measure at a + c*|G| in the gap of (k, j).
double riesz_at_gap_point(const Construction& construction, int generation, std::size_t j, double c,
                          QuadratureOptions options = {});

struct LemmaCandidate {
  double c;
  double c1;  // min over k of the normalized value at the leftmost gap
  double c2;  // max over k of the normalized value at the rightmost gap
  bool admissible;
};

struct LemmaResult {
  double c = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::vector<double> left_ratios;   // k = 1..k_max, leftmost gap, divided by (s0/2)^k
  std::vector<double> right_ratios;  // k = 1..k_max, rightmost gap
  std::vector<LemmaCandidate> scanned;
};

/// Scans the grid for a placement constant c with
/// c1 (s0/2)^k <= R omega(a_j^k + c b r^k) <= c2 (s0/2)^k for j in {first, last}
/// and k = 1..k_max.  A grid point is admissible when c1 > 0; the admissible
/// point with the smallest c2/c1 wins (first on ties).
/// Throws depth_overflow if k_max > depth_omega - 4 and no_admissible_c when
/// no grid point is admissible.
LemmaResult lemma_search_c(const Construction& construction, int k_max, std::span<const double> grid,
                           QuadratureOptions options = {});

/// F(gamma) = sum over sigma atoms x of m_x * (integral K_gamma(x - y) d omega(y))^2
/// with the smoothed fractional or Riesz kernel.  Quadrature nodes are fixed
/// per atom (independent of gamma), so F is continuous in gamma.
class SmoothedTestingFunctional {
 public:
  SmoothedTestingFunctional(const AtomicMeasure1D& sigma, const CantorWeights& omega, double alpha,
                            TestKind kind, QuadratureOptions options = {});

  double operator()(double gamma) const;
  TestKind kind() const { return kind_; }
  double alpha() const { return alpha_; }

 private:
  double alpha_;
  TestKind kind_;
  std::vector<double> atom_mass_;
  std::vector<std::size_t> node_offset_;  // per atom, into the node arrays
  std::vector<double> node_dx_;
  std::vector<double> node_weight_;
};

struct GammaSearchResult {
  double gamma = 0.0;
  double value = 0.0;   // F(gamma)
  double target = 0.0;
  int evaluations = 0;
  double relative_error() const { return (value - target) / target; }
};

/// Finds gamma > 0 with F(gamma) in [n, n (1 + 1e-6)] (the search aims at the
/// middle of that window) by scanning a geometric grid downward to bracket the
/// crossing and bisecting.  Throws infeasible_target when n > 0.9 F(0).
GammaSearchResult gamma_search(const SmoothedTestingFunctional& functional, double n_target);

/// (1/omega(Q)) * sum over sigma atoms x outside Q of
/// m_x * (integral over Q of K(x, y) d omega(y))^2 with K the planar fractional
/// kernel, or the Riesz kernel component `component` when kind == riesz.
/// Throws zero_omega_mass when omega(Q) = 0.
double offtest_quotient(const Cube2D& cube, TestKind kind, int component, const PlanarMeasure& sigma,
                        const PlanarMeasure& omega, double alpha, QuadratureOptions options = {});

struct MaximalIntegral {
  double integral = 0.0;    // integral over I of (M(1_I sigma))^2 d omega
  double sigma_mass = 0.0;  // sigma(I)
  double ratio() const { return sigma_mass > 0.0 ? integral / sigma_mass : 0.0; }
};

/// The tree-restricted maximal function of 1_I sigma squared and integrated
/// against the atomized Cantor measure at its approximation level, for the
/// tree interval I = (generation, j).
MaximalIntegral maximal_square_integral(int generation, std::size_t j, const AtomicMeasure1D& sigma,
                                        const CantorWeights& omega);

}  // namespace cantor2w
