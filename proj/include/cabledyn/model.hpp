#pragma once

#include <span>
#include <vector>

#include "cabledyn/errors.hpp"

namespace cabledyn {

// All quantities are caller-consistent units (SI recommended): density is mass
// per unit length, tension a force, positions/lengths in length units. The
// spatial eigenvalue lambda carries 1/length; frequencies are omega = a*lambda
// with wave speed a = sqrt(tension/density).

/// Motion regime of a problem instance.
enum class MotionMode { Static, LoadsMoving, SystemMoving };

/// Coupling factor applied to point-mass inertia when the loads travel along
/// the cable. Normalized is the dimensionless 1 + v^2/a^2; AsPrinted keeps the
/// legacy a^2 + v^2 variant behind a switch.
enum class FactorMode { Normalized, AsPrinted };

/// Frequency formula for whole-system motion when the Coriolis term is
/// neglected. Corrected is sqrt(a^2 - v^2); AsPrinted keeps the legacy
/// sqrt((a^2 - v^2)/a) variant.
enum class FrequencyFormula { Corrected, AsPrinted };

/// Continuous parameters of the taut cable.
struct CableSpec {
  double density = 1.0;
  double tension = 1.0;
  double length = 1.0;

  bool operator==(const CableSpec&) const = default;
};

/// Wave speed a = sqrt(tension/density).
double wave_speed(const CableSpec& cable);

/// One discrete point load. Zero mass is allowed and behaves exactly as if
/// the load were absent.
struct LoadSpec {
  double mass = 0.0;
  double position = 0.0;

  bool operator==(const LoadSpec&) const = default;
};

struct MotionSpec {
  MotionMode mode = MotionMode::Static;
  double speed = 0.0;
  bool coriolis = false;                                        // system-moving only
  FactorMode factor_mode = FactorMode::Normalized;              // loads-moving only
  FrequencyFormula frequency_formula = FrequencyFormula::Corrected;  // system-moving only
  double length_rate = 0.0;  // dl/dt for the shrinking-interval variant

  bool operator==(const MotionSpec&) const = default;
};

/// Evaluation window for time-dependent modes.
struct TimeWindow {
  double t0 = 0.0;
  double t1 = 0.0;
  int steps = 1;

  bool operator==(const TimeWindow&) const = default;
};

/// Raw, unvalidated problem statement.
struct ProblemDescription {
  CableSpec cable;
  std::vector<LoadSpec> loads;
  MotionSpec motion;

  bool operator==(const ProblemDescription&) const = default;
};

/// Interval lengths b_i between consecutive stations 0, positions..., length.
std::vector<double> interval_lengths(double length, std::span<const double> positions);

/// A validated, immutable problem instance. Zero-mass loads are dropped,
/// remaining positions are strictly increasing and strictly interior, and the
/// continuity intervals b_i are cached. Instances are safe to share across
/// threads without synchronization.
class ProblemInstance {
 public:
  /// Checks every invariant and returns the validated instance.
  /// Throws ValidationError naming the offending field otherwise.
  static ProblemInstance validate(const ProblemDescription& desc);

  const CableSpec& cable() const { return desc_.cable; }
  const std::vector<LoadSpec>& loads() const { return desc_.loads; }
  const MotionSpec& motion() const { return desc_.motion; }
  const ProblemDescription& description() const { return desc_; }

  /// Continuity interval lengths; size loads().size() + 1, sums to length.
  const std::vector<double>& intervals() const { return intervals_; }

  double wave_speed() const { return wave_speed_; }

  bool operator==(const ProblemInstance&) const = default;

 private:
  ProblemInstance(ProblemDescription desc, std::vector<double> intervals, double a)
      : desc_(std::move(desc)), intervals_(std::move(intervals)), wave_speed_(a) {}

  ProblemDescription desc_;
  std::vector<double> intervals_;
  double wave_speed_ = 1.0;
};

/// Load positions shifted to time t (loads-moving mode): l_i + v*t.
/// Throws ValidationError if any shifted position leaves (0, length).
std::vector<double> positions_at(const ProblemInstance& instance, double t);

/// Window validation: bounds ordered, steps >= 1, and for loads-moving mode
/// every load stays strictly inside the cable over [t0, t1]; for
/// system-moving mode the interval length stays positive over the window.
void validate_window(const ProblemInstance& instance, const TimeWindow& window);

}  // namespace cabledyn
