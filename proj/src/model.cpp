#include "cabledyn/model.hpp"

#include <cmath>
#include <sstream>

namespace cabledyn {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

[[noreturn]] void fail(const std::string& message) { throw ValidationError(message); }

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

double wave_speed(const CableSpec& cable) {
  return std::sqrt(cable.tension / cable.density);
}

std::vector<double> interval_lengths(double length, std::span<const double> positions) {
  std::vector<double> b;
  b.reserve(positions.size() + 1);
  double prev = 0.0;
  for (double p : positions) {
    b.push_back(p - prev);
    prev = p;
  }
  b.push_back(length - prev);
  return b;
}

ProblemInstance ProblemInstance::validate(const ProblemDescription& desc) {
  const CableSpec& cable = desc.cable;
  if (!positive_finite(cable.density)) fail("cable.density must be positive and finite");
  if (!positive_finite(cable.tension)) fail("cable.tension must be positive and finite");
  if (!positive_finite(cable.length)) fail("cable.length must be positive and finite");
  const double a = cabledyn::wave_speed(cable);
  if (!positive_finite(a)) fail("cable wave speed sqrt(tension/density) must be positive and finite");

  // Zero-mass loads are exact no-ops for the interface maps; drop them before
  // the layout checks so they behave identically to being absent.
  std::vector<LoadSpec> loads;
  loads.reserve(desc.loads.size());
  for (std::size_t i = 0; i < desc.loads.size(); ++i) {
    const LoadSpec& load = desc.loads[i];
    const std::string name = "loads[" + std::to_string(i) + "]";
    if (!std::isfinite(load.mass) || load.mass < 0.0) fail(name + ".mass must be finite and >= 0");
    if (!std::isfinite(load.position)) fail(name + ".position must be finite");
    if (load.mass == 0.0) continue;
    if (!(load.position > 0.0 && load.position < cable.length))
      fail(name + ".position must lie strictly inside (0, length)");
    if (!loads.empty() && !(load.position > loads.back().position))
      fail(name + ".position must exceed the previous load position "
           "(coincident or unordered load positions; merge coincident masses explicitly)");
    loads.push_back(load);
  }

  const MotionSpec& motion = desc.motion;
  if (!std::isfinite(motion.speed) || motion.speed < 0.0) fail("motion.speed must be finite and >= 0");
  if (!std::isfinite(motion.length_rate)) fail("motion.length_rate must be finite");
  if (motion.mode != MotionMode::SystemMoving && motion.length_rate != 0.0)
    fail("motion.length_rate is only used in system-moving mode; set it to 0 otherwise");
  switch (motion.mode) {
    case MotionMode::Static:
      if (motion.speed != 0.0) fail("motion.speed must be zero in static mode");
      break;
    case MotionMode::LoadsMoving:
      break;
    case MotionMode::SystemMoving:
      if (!(motion.speed < a))
        fail("motion.speed: supercritical speed v=" + fmt(motion.speed) +
             " must be below the wave speed a=" + fmt(a));
      break;
  }

  std::vector<double> positions;
  positions.reserve(loads.size());
  for (const LoadSpec& load : loads) positions.push_back(load.position);
  std::vector<double> intervals = interval_lengths(cable.length, positions);
  for (double b : intervals) {
    if (!(b > 0.0)) fail("degenerate continuity interval (coincident load/boundary positions)");
  }

  ProblemDescription validated{cable, std::move(loads), motion};
  return ProblemInstance(std::move(validated), std::move(intervals), a);
}

std::vector<double> positions_at(const ProblemInstance& instance, double t) {
  const double l = instance.cable().length;
  const double v = instance.motion().speed;
  std::vector<double> shifted;
  shifted.reserve(instance.loads().size());
  for (std::size_t i = 0; i < instance.loads().size(); ++i) {
    const double p = instance.loads()[i].position + v * t;
    if (!(p > 0.0 && p < l))
      fail("loads[" + std::to_string(i) + "] lies outside (0, length) at time t=" + fmt(t));
    shifted.push_back(p);
  }
  return shifted;
}

void validate_window(const ProblemInstance& instance, const TimeWindow& window) {
  if (!std::isfinite(window.t0) || !std::isfinite(window.t1)) fail("window.t0/t1 must be finite");
  if (!(window.t0 <= window.t1)) fail("window.t0 must not exceed window.t1");
  if (window.steps < 1) fail("window.steps must be >= 1");
  switch (instance.motion().mode) {
    case MotionMode::Static:
      break;
    case MotionMode::LoadsMoving:
      // Positions are linear in t, so checking the endpoints covers the window.
      positions_at(instance, window.t0);
      positions_at(instance, window.t1);
      break;
    case MotionMode::SystemMoving: {
      const double l0 = instance.cable().length;
      const double rate = instance.motion().length_rate;
      if (!(l0 + rate * window.t0 > 0.0 && l0 + rate * window.t1 > 0.0))
        fail("motion.length_rate: interval length l(t) must stay positive over the window");
      break;
    }
  }
}

}  // namespace cabledyn
