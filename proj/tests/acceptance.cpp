// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <initializer_list>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "cantor2w/construction.hpp"
#include "cantor2w/kernels.hpp"
#include "cantor2w/pipeline.hpp"
#include "cantor2w/planar.hpp"

using namespace cantor2w;

namespace {

// Pinned tolerances.
constexpr double kIncrementSpread = 10.0;
constexpr double kFitResidual = 0.05;
constexpr double kDivergenceSeconds = 60.0;
constexpr double kLemmaSpread = 1e3;
constexpr double kA2Bound1d = 400.0;
constexpr double kA2Bound2d = 12.0;
constexpr double kEnergyBound = 3.0;
constexpr double kStability = 0.15;
constexpr double kGammaTolerance = 1e-6;
constexpr std::int64_t kMaxUlps = 10;
constexpr int kReductionPoints = 1000;
constexpr double kSweepSeconds = 900.0;
constexpr double kSweepAlphas[] = {0.0, 0.5, 1.0, 1.5};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

RunConfig pinned_config(double alpha) {
  RunConfig config;
  config.params.alpha = alpha;
  config.params.b = smallest_admissible_b(alpha);
  config.bounds.a2_1d = kA2Bound1d;
  config.bounds.a2_2d = kA2Bound2d;
  config.bounds.energy = kEnergyBound;
  config.bounds.stability = kStability;
  config.bounds.increment_spread = kIncrementSpread;
  config.bounds.fit_residual = kFitResidual;
  config.bounds.lemma_spread = kLemmaSpread;
  config.bounds.gamma_tolerance = kGammaTolerance;
  return config;
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
  void absorb(const Outcome& other, const std::string& prefix) {
    if (!other.pass) require(false, prefix + other.detail);
  }
};

std::string describe(const Check& c) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s=%.6g (%s %.6g)", c.name.c_str(), c.value, to_string(c.relation), c.bound);
  return buf;
}

// Every check of the claim whose name starts with `prefix` must pass.
Outcome checks_with_prefix(const ClaimResult& claim, const std::string& prefix = "") {
  Outcome out;
  int matched = 0;
  for (const Check& c : claim.checks) {
    if (c.name.rfind(prefix, 0) != 0) continue;
    ++matched;
    out.require(c.pass(), claim.id + "." + describe(c));
  }
  out.require(matched > 0, claim.id + ": no checks named " + prefix + "*");
  return out;
}

// Appends name=value for the named checks of a passing outcome.
void note(Outcome& out, const ClaimResult& claim, std::initializer_list<const char*> names,
          const char* label = "") {
  if (!out.pass) return;
  for (const char* name : names) {
    const Check* c = claim.find(name);
    if (!c) continue;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s%s%s=%.4g", out.detail.empty() ? "" : ", ", label, name, c->value);
    out.detail += buf;
  }
}

// The claims a single alpha contributes to criteria 1, 2, 4, 5 and 6.
struct AlphaRun {
  double alpha = 0.0;
  ClaimResult divergence, lemma, a2_1d, a2_2d, energy_1d, energy_2d, offtest_frac, offtest_riesz;
  double divergence_seconds = 0.0;
};

AlphaRun run_alpha(double alpha, bool with_energy) {
  Pipeline pipeline(pinned_config(alpha));
  AlphaRun r;
  r.alpha = alpha;
  r.lemma = pipeline.run("lemma-c");
  const auto start = Clock::now();
  r.divergence = pipeline.run("testing-divergence");
  r.divergence_seconds = seconds_since(start);
  r.a2_1d = pipeline.run("a2-1d");
  r.a2_2d = pipeline.run("a2-2d");
  if (with_energy) {
    r.energy_1d = pipeline.run("energy-1d");
    r.energy_2d = pipeline.run("energy-2d");
  }
  r.offtest_frac = pipeline.run("offtest-frac");
  r.offtest_riesz = pipeline.run("offtest-riesz");
  return r;
}

Outcome divergence_frac(const AlphaRun& r) {
  Outcome out = checks_with_prefix(r.divergence, "frac.");
  out.require(r.divergence_seconds <= kDivergenceSeconds,
              "divergence took " + std::to_string(r.divergence_seconds) + " s");
  note(out, r.divergence, {"frac.min_increment", "frac.increment_spread", "frac.fit_residual"});
  return out;
}

Outcome divergence_riesz(const AlphaRun& r) {
  Outcome out = checks_with_prefix(r.divergence, "riesz.");
  const double c = r.divergence.data.value("riesz_c", -1.0);
  out.require(c > 0.0 && c < 1.0, "riesz_c outside (0, 1)");
  note(out, r.divergence, {"riesz.min_increment", "riesz.increment_spread", "riesz.fit_residual"});
  return out;
}

Outcome lemma(const AlphaRun& r) {
  Outcome out = checks_with_prefix(r.lemma);
  const RunConfig defaults;
  out.require(defaults.c_grid.size() == 9, "placement grid does not have nine points");
  out.require(defaults.k_max == 10, "monotonicity not checked through k = 10");
  note(out, r.lemma, {"c1", "spread"});
  return out;
}

Outcome rows_spanned_cover(const ClaimResult& a2_2d) {
  Outcome out;
  for (const auto& [depth, run] : a2_2d.data.items()) {
    if (!run.contains("rows_spanned")) continue;
    for (const char* key : {"1", "2", "3+"}) {
      out.require(run["rows_spanned"].value(key, 0) > 0, "no cube spanning " + std::string(key) + " rows at " + depth);
    }
  }
  return out;
}

Outcome a2(const AlphaRun& r) {
  Outcome out = checks_with_prefix(r.a2_1d);
  out.absorb(checks_with_prefix(r.a2_2d), "");
  out.absorb(rows_spanned_cover(r.a2_2d), "");
  note(out, r.a2_1d, {"sup.depth12"}, "1d.");
  note(out, r.a2_2d, {"forward.sup.depth12", "dual.sup.depth12"}, "2d.");
  return out;
}

Outcome energy(const AlphaRun& r) {
  Outcome out = checks_with_prefix(r.energy_1d);
  out.absorb(checks_with_prefix(r.energy_2d), "");
  note(out, r.energy_1d, {"forward.depth12.sup", "dual.depth12.sup"}, "1d.");
  note(out, r.energy_2d, {"forward.depth12.sup", "dual.depth12.sup"}, "2d.");
  return out;
}

Outcome offtest(const AlphaRun& r) {
  Outcome out = checks_with_prefix(r.offtest_frac);
  out.absorb(checks_with_prefix(r.offtest_riesz), "");
  return out;
}

// Distance in representable doubles; equal values are 0 apart.
std::int64_t ulp_distance(double a, double b) {
  if (a == b) return 0;
  if (!std::isfinite(a) || !std::isfinite(b)) return INT64_MAX;
  auto ordered = [](double v) {
    const auto bits = std::bit_cast<std::int64_t>(v);
    return bits < 0 ? INT64_MIN - bits : bits;
  };
  const std::int64_t x = ordered(a);
  const std::int64_t y = ordered(b);
  return x > y ? x - y : y - x;
}

Outcome single_row_reduction() {
  Outcome out;
  const Construction c{ConstructionParams{}};
  const Measure1D omega = c.omega();
  const Measure1D sigma = c.sigma(Placement::center());
  const PlanarMeasure w({PlanarRow{0.0, 0.0, std::make_shared<const Measure1D>(omega)}});
  const PlanarMeasure s({PlanarRow{0.0, 0.0, std::make_shared<const Measure1D>(sigma)}});
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pick_x(-0.5, 1.5);
  std::uniform_real_distribution<double> pick_log_gamma(-8.0, 1.0);
  std::int64_t worst = 0;
  for (int i = 0; i < kReductionPoints; ++i) {
    const double x = pick_x(rng);
    const double gamma = std::exp(pick_log_gamma(rng));
    worst = std::max(worst, ulp_distance(frac2d({x, gamma}, w, 0.0), frac1d(x, omega, 0.0, gamma)));
    worst = std::max(worst, ulp_distance(frac2d({x, gamma}, s, 0.0), frac1d(x, sigma, 0.0, gamma)));
    worst = std::max(worst, ulp_distance(riesz2d(1, {x, gamma}, w, 0.0), -riesz1d(x, omega, 0.0, gamma)));
    worst = std::max(worst, ulp_distance(riesz2d(1, {x, gamma}, s, 0.0), -riesz1d(x, sigma, 0.0, gamma)));
  }
  out.require(worst <= kMaxUlps, "worst distance " + std::to_string(worst) + " ulp");
  if (out.pass) out.detail = "worst distance " + std::to_string(worst) + " ulp";
  return out;
}

int failures = 0;

void report(int id, const char* title, const Outcome& outcome) {
  if (!outcome.pass) ++failures;
  std::printf("%s criterion %d: %s", outcome.pass ? "PASS" : "FAIL", id, title);
  if (!outcome.detail.empty()) std::printf(" [%s]", outcome.detail.c_str());
  std::printf("\n");
  std::fflush(stdout);
}

template <class F>
Outcome guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    Outcome out;
    out.require(false, std::string("error: ") + e.what());
    return out;
  }
}

}  // namespace

int main() {
  const auto sweep_start = Clock::now();
  std::vector<AlphaRun> runs;
  std::string run_error;
  for (double alpha : kSweepAlphas) {
    try {
      runs.push_back(run_alpha(alpha, alpha == 0.0));
    } catch (const std::exception& e) {
      run_error += "alpha=" + std::to_string(alpha) + ": " + e.what() + "; ";
    }
  }
  const double sweep_seconds = seconds_since(sweep_start);
  const AlphaRun* base = nullptr;
  for (const AlphaRun& r : runs) {
    if (r.alpha == 0.0) base = &r;
  }
  auto at_base = [&](auto criterion) {
    return guarded([&] {
      if (!base) {
        Outcome out;
        out.require(false, run_error);
        return out;
      }
      return criterion(*base);
    });
  };

  report(1, "fractional testing sum diverges linearly", at_base(divergence_frac));
  report(2, "Riesz testing sum diverges with the placement constant", at_base(divergence_riesz));
  report(3, "placement constant and monotone ratios", at_base(lemma));
  report(4, "two-weight A2 suprema stay bounded and stable", at_base(a2));
  report(5, "energy suprema stay bounded with valid terms", at_base(energy));
  report(6, "off-testing heights hit their targets", at_base(offtest));
  report(7, "single-row planar kernels reduce to the smoothed kernels", guarded(single_row_reduction));
  report(8, "criteria 1, 4 and 6 across alpha", guarded([&] {
           Outcome out;
           out.require(run_error.empty(), run_error);
           out.require(runs.size() == std::size(kSweepAlphas), "missing alpha runs");
           for (const AlphaRun& r : runs) {
             char tag[32];
             std::snprintf(tag, sizeof tag, "alpha=%g: ", r.alpha);
             out.absorb(divergence_frac(r), tag);
             out.absorb(a2(r), tag);
             out.absorb(offtest(r), tag);
           }
           out.require(sweep_seconds <= kSweepSeconds, "sweep took " + std::to_string(sweep_seconds) + " s");
           return out;
         }));
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
