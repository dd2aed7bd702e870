#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cabledyn/model.hpp"
#include "cabledyn/rootfind.hpp"

namespace cabledyn {

/// Ordered eigenvalues with their natural frequencies omega_k = a*lambda_k.
struct SpectrumResult {
  std::vector<double> lambdas;
  std::vector<double> frequencies;
  MotionMode mode = MotionMode::Static;
  double t = 0.0;
  long brackets_scanned = 0;
  std::vector<std::string> warnings;
};

/// Fill lambda_max (when 0) and length from the instance: loads only lower
/// eigenvalues, so the first K roots lie below (K + 1/2) * pi / l.
RootSearchConfig resolve_search_config(RootSearchConfig config, const ProblemInstance& instance);

/// Oversample factor that resolves root clusters hugging the bare-cable
/// anchors for heavy loads: grows with k_max * total_mass/(rho*l).
int suggest_oversample(const ProblemInstance& instance, int k_max, int base = 16);

/// First `config.count` eigenvalues of a static instance.
SpectrumResult static_spectrum(const ProblemInstance& instance, const RootSearchConfig& config);

/// One frozen-time sample of a moving-load run.
struct MovingSample {
  double t = 0.0;
  SpectrumResult spectrum;     // partial roots when incomplete
  bool complete = false;
  std::string error;           // empty when complete
};

/// Frozen-time spectra on the window's uniform time grid. Per-sample root
/// search failures are reported in the sample, not thrown.
std::vector<MovingSample> moving_load_spectrum(const ProblemInstance& instance,
                                               const TimeWindow& window,
                                               const RootSearchConfig& config);

/// Closed-form natural frequencies for whole-system motion at speed v over a
/// (possibly time-varying) interval length:
///   with Coriolis:              omega_k = (pi k / l(t)) * (a^2 - v^2)/a
///   without, Corrected:         omega_k = (pi k / l(t)) * sqrt(a^2 - v^2)
///   without, AsPrinted:         omega_k = (pi k / l(t)) * sqrt((a^2 - v^2)/a)
/// Requires v < a and l(t) > 0.
std::vector<double> moving_system_frequencies(const CableSpec& cable, double v, int k_max,
                                              bool coriolis, FrequencyFormula formula,
                                              const std::function<double(double)>& length_at,
                                              double t);

/// Sweepable scalar parameter of a problem description.
struct SweepParameter {
  enum class Kind { Speed, Mass, Position };
  Kind kind = Kind::Speed;
  int load_index = 1;  // 1-based, for Mass/Position

  static SweepParameter parse(const std::string& text);  // "speed", "mass:1", "position:2"
  std::string name() const;
};

struct SweepPoint {
  double value = 0.0;
  std::vector<double> lambdas;  // may hold fewer than K entries on failure
  bool complete = false;
  std::string error;
};

struct SweepResult {
  std::string parameter;
  std::vector<SweepPoint> points;
  bool all_complete() const;
};

/// Repeated spectra over a parameter grid. Each point revalidates the edited
/// description; failed points are recorded as explicit gaps. For moving-load
/// descriptions the spectra are frozen at t = 0.
SweepResult sweep(const ProblemDescription& base, const SweepParameter& parameter,
                  const std::vector<double>& grid, const RootSearchConfig& config);

struct TheoremCheckOptions {
  double interface_sign = 1.0;  // fault-injection hook: -1 flips the point-mass reaction
  int max_mode = 8;             // highest mode index checked against the bare bound
};

struct TheoremReport {
  struct Check {
    std::string name;
    int trials = 0;
    bool passed = true;
    std::string counterexample;  // empty when passed
  };
  std::vector<Check> checks;
  bool all_passed() const;
};

/// Randomized verification of the spectral ordering claims:
///  1. a midpoint mass keeps every even eigenvalue of the bare cable;
///  2. one mass anywhere lowers the first eigenvalue below pi/l;
///  3. over a symmetric 21-point position grid the midpoint minimizes lambda_1;
///  4. point masses never raise any eigenvalue above the bare value;
///  5. moving-load eigenvalues are non-increasing in the speed.
/// Equalities are checked to 1e-9, inequalities to margin -1e-10.
TheoremReport theorem_checks(std::uint64_t seed, int trials,
                             const TheoremCheckOptions& options = {});

}  // namespace cabledyn
