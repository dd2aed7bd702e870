#include "cabledyn/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cabledyn/characteristic.hpp"
#include "cabledyn/rng.hpp"

namespace cabledyn {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Frozen-time characteristic for the solver paths. coupling_scale is 1 except
// under the fault-injection hook.
double frozen_characteristic(double lambda, const ProblemInstance& inst, double t,
                             double coupling_scale) {
  const double rho = inst.cable().density;
  if (inst.motion().mode == MotionMode::LoadsMoving) {
    const std::vector<double> shifted = positions_at(inst, t);
    const std::vector<double> intervals = interval_lengths(inst.cable().length, shifted);
    const double factor = moving_coupling_factor(inst.motion(), inst.wave_speed());
    return characteristic_transfer(lambda, intervals, inst.loads(), rho,
                                   factor * coupling_scale);
  }
  return characteristic_transfer(lambda, inst.intervals(), inst.loads(), rho, coupling_scale);
}

SpectrumResult make_result(const ProblemInstance& inst, RootList roots, double t) {
  SpectrumResult out;
  out.lambdas = std::move(roots.roots);
  const double a = inst.wave_speed();
  out.frequencies.reserve(out.lambdas.size());
  for (double lam : out.lambdas) out.frequencies.push_back(a * lam);
  out.mode = inst.motion().mode;
  out.t = t;
  out.brackets_scanned = roots.brackets_scanned;
  out.warnings = std::move(roots.warnings);
  return out;
}

RootList solve_frozen(const ProblemInstance& inst, double t, const RootSearchConfig& cfg,
                      double coupling_scale = 1.0) {
  return find_eigenvalues(
      [&](double lambda) { return frozen_characteristic(lambda, inst, t, coupling_scale); }, cfg);
}

}  // namespace

RootSearchConfig resolve_search_config(RootSearchConfig config, const ProblemInstance& instance) {
  config.length = instance.cable().length;
  // Loads only lower eigenvalues, so the first `count` roots sit below the
  // bare-cable bound count*pi/l; the half-spacing margin covers the boundary.
  if (config.lambda_max <= 0.0)
    config.lambda_max = (config.count + 0.5) * kPi / config.length;
  return config;
}

int suggest_oversample(const ProblemInstance& instance, int k_max, int base) {
  const double rho_l = instance.cable().density * instance.cable().length;
  double ratio = 0.0;
  for (const LoadSpec& load : instance.loads()) ratio += load.mass / rho_l;
  if (instance.motion().mode == MotionMode::LoadsMoving)
    ratio *= moving_coupling_factor(instance.motion(), instance.wave_speed());
  // Heavy loads push one root against each bare anchor k*pi/l from above at a
  // distance ~ 2*rho/(pi*k*m); the grid must place a point inside that gap.
  const double extra = std::ceil(kPi * kPi * k_max * ratio);
  return base + static_cast<int>(std::min(extra, 1.0e6));
}

SpectrumResult static_spectrum(const ProblemInstance& instance, const RootSearchConfig& config) {
  if (instance.motion().mode != MotionMode::Static)
    throw ValidationError("static_spectrum requires a static instance");
  const RootSearchConfig cfg = resolve_search_config(config, instance);
  RootList roots = find_eigenvalues(
      [&](double lambda) { return characteristic_static(lambda, instance); }, cfg);
  return make_result(instance, std::move(roots), 0.0);
}

std::vector<MovingSample> moving_load_spectrum(const ProblemInstance& instance,
                                               const TimeWindow& window,
                                               const RootSearchConfig& config) {
  if (instance.motion().mode != MotionMode::LoadsMoving)
    throw ValidationError("moving_load_spectrum requires loads-moving mode");
  validate_window(instance, window);
  const RootSearchConfig cfg = resolve_search_config(config, instance);

  std::vector<MovingSample> samples;
  samples.reserve(window.steps);
  for (int j = 0; j < window.steps; ++j) {
    const double t = window.steps == 1
                         ? window.t0
                         : window.t0 + (window.t1 - window.t0) * j / (window.steps - 1);
    MovingSample sample;
    sample.t = t;
    try {
      sample.spectrum = make_result(instance, solve_frozen(instance, t, cfg), t);
      sample.complete = true;
    } catch (const RootSearchError& e) {
      sample.spectrum = make_result(instance, e.partial, t);
      sample.error = e.what();
    }
    samples.push_back(std::move(sample));
  }
  return samples;
}

std::vector<double> moving_system_frequencies(const CableSpec& cable, double v, int k_max,
                                              bool coriolis, FrequencyFormula formula,
                                              const std::function<double(double)>& length_at,
                                              double t) {
  const double a = wave_speed(cable);
  if (!(v >= 0.0) || !(v < a))
    throw ValidationError("supercritical speed: need 0 <= v < wave speed a");
  if (k_max < 1) throw ValidationError("moving_system_frequencies: k_max must be >= 1");
  const double lt = length_at ? length_at(t) : cable.length;
  if (!(lt > 0.0)) throw ValidationError("interval length l(t) must be positive");

  const double gap = a * a - v * v;
  double scale = 0.0;
  if (coriolis)
    scale = gap / a;
  else if (formula == FrequencyFormula::Corrected)
    scale = std::sqrt(gap);
  else
    scale = std::sqrt(gap / a);

  std::vector<double> omega(k_max);
  for (int k = 1; k <= k_max; ++k) omega[k - 1] = kPi * k / lt * scale;
  return omega;
}

SweepParameter SweepParameter::parse(const std::string& text) {
  SweepParameter p;
  if (text == "speed") {
    p.kind = Kind::Speed;
    return p;
  }
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  if (colon != std::string::npos && (head == "mass" || head == "position")) {
    p.kind = head == "mass" ? Kind::Mass : Kind::Position;
    try {
      p.load_index = std::stoi(text.substr(colon + 1));
    } catch (const std::exception&) {
      p.load_index = 0;
    }
    if (p.load_index >= 1) return p;
  }
  throw ValidationError("sweep parameter must be 'speed', 'mass:<i>' or 'position:<i>' "
                        "with a 1-based load index, got '" + text + "'");
}

std::string SweepParameter::name() const {
  switch (kind) {
    case Kind::Speed:
      return "speed";
    case Kind::Mass:
      return "mass:" + std::to_string(load_index);
    case Kind::Position:
      return "position:" + std::to_string(load_index);
  }
  return {};
}

bool SweepResult::all_complete() const {
  return std::all_of(points.begin(), points.end(),
                     [](const SweepPoint& p) { return p.complete; });
}

namespace {

ProblemDescription apply_parameter(const ProblemDescription& base, const SweepParameter& p,
                                   double value) {
  ProblemDescription desc = base;
  switch (p.kind) {
    case SweepParameter::Kind::Speed:
      desc.motion.speed = value;
      break;
    case SweepParameter::Kind::Mass:
      desc.loads[p.load_index - 1].mass = value;
      break;
    case SweepParameter::Kind::Position:
      desc.loads[p.load_index - 1].position = value;
      break;
  }
  return desc;
}

}  // namespace

SweepResult sweep(const ProblemDescription& base, const SweepParameter& parameter,
                  const std::vector<double>& grid, const RootSearchConfig& config) {
  if (base.motion.mode == MotionMode::SystemMoving)
    throw ValidationError("sweep supports static and loads-moving instances");
  if (parameter.kind == SweepParameter::Kind::Speed && base.motion.mode != MotionMode::LoadsMoving)
    throw ValidationError("sweep parameter 'speed' requires loads-moving mode");
  if (parameter.kind != SweepParameter::Kind::Speed &&
      parameter.load_index > static_cast<int>(base.loads.size()))
    throw ValidationError("sweep parameter '" + parameter.name() +
                          "' exceeds the number of loads");

  SweepResult out;
  out.parameter = parameter.name();
  double warm_ceiling = 0.0;

  for (double value : grid) {
    SweepPoint point;
    point.value = value;
    try {
      const ProblemInstance inst = ProblemInstance::validate(apply_parameter(base, parameter, value));
      const RootSearchConfig cfg = resolve_search_config(config, inst);

      RootList roots;
      bool solved = false;
      if (warm_ceiling > 0.0 && warm_ceiling < cfg.lambda_max) {
        // Previous roots seed the scan window; fall back to the full ceiling
        // if the spectrum moved above it.
        RootSearchConfig warm = cfg;
        warm.lambda_max = warm_ceiling;
        try {
          roots = solve_frozen(inst, 0.0, warm);
          solved = true;
        } catch (const RootSearchError&) {
        }
      }
      if (!solved) roots = solve_frozen(inst, 0.0, cfg);

      warm_ceiling = roots.roots.back() * 1.02 + 0.5 * kPi / inst.cable().length;
      point.lambdas = std::move(roots.roots);
      point.complete = true;
    } catch (const RootSearchError& e) {
      point.lambdas = e.partial.roots;
      point.error = e.what();
    } catch (const Error& e) {
      point.error = e.what();
    }
    out.points.push_back(std::move(point));
  }
  return out;
}

bool TheoremReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed; });
}

namespace {

constexpr double kEqualityTol = 1e-9;
constexpr double kInequalityMargin = 1e-10;

// All randomness for one trial, drawn up front so every check sees the same
// instances regardless of earlier failures.
struct Trial {
  double l, rho, tension;
  double one_mass_ratio;
  double one_mass_position;  // fraction of l in [0.05, 0.95]
  double prop_mass_ratio;
  double prop_position;
  int n_loads;
  double load_ratios[4];
  double load_slots[4];  // stratified position fractions

  explicit Trial(SplitMix64& rng) {
    l = rng.uniform(0.5, 2.0);
    rho = rng.uniform(0.5, 2.0);
    tension = rng.uniform(0.5, 2.0);
    one_mass_ratio = rng.log_uniform(0.01, 100.0);
    one_mass_position = rng.uniform(0.05, 0.95);
    prop_mass_ratio = rng.log_uniform(0.01, 100.0);
    prop_position = rng.uniform(0.05, 0.95);
    n_loads = rng.uniform_int(1, 4);
    for (double& r : load_ratios) r = rng.log_uniform(0.01, 100.0);
    for (double& s : load_slots) s = rng.uniform01();
  }

  CableSpec cable() const { return {rho, tension, l}; }

  ProblemInstance one_load(double mass_ratio, double position_fraction) const {
    ProblemDescription desc;
    desc.cable = cable();
    desc.loads = {{mass_ratio * rho * l, position_fraction * l}};
    return ProblemInstance::validate(desc);
  }

  // n stratified positions inside (0.05, 0.95)*l with guaranteed separation.
  ProblemInstance multi_load() const {
    ProblemDescription desc;
    desc.cable = cable();
    for (int i = 0; i < n_loads; ++i) {
      const double frac = 0.05 + 0.9 * (i + 0.05 + 0.9 * load_slots[i]) / n_loads;
      desc.loads.push_back({load_ratios[i] * rho * l, frac * l});
    }
    return ProblemInstance::validate(desc);
  }
};

using Check = TheoremReport::Check;

void record_failure(Check& check, int trial, const std::string& detail) {
  if (!check.passed) return;
  check.passed = false;
  check.counterexample = "trial " + std::to_string(trial) + ": " + detail;
}

std::vector<double> solve_lambdas(const ProblemInstance& inst, int count, double coupling_scale) {
  RootSearchConfig cfg;
  cfg.count = count;
  cfg.oversample = suggest_oversample(inst, count);
  cfg = resolve_search_config(cfg, inst);
  return solve_frozen(inst, 0.0, cfg, coupling_scale).roots;
}

}  // namespace

TheoremReport theorem_checks(std::uint64_t seed, int trials, const TheoremCheckOptions& options) {
  if (trials < 1) throw ValidationError("theorem checks: trials must be >= 1");

  TheoremReport report;
  report.checks = {
      {"theorem 1: midpoint mass keeps even bare eigenvalues", trials, true, ""},
      {"theorem 2: one mass lowers the first eigenvalue below pi/l", trials, true, ""},
      {"theorem 3: the midpoint position minimizes the first eigenvalue", trials, true, ""},
      {"theorem 4: loaded eigenvalues never exceed the bare ones", trials, true, ""},
      {"proposition: moving-load eigenvalues are non-increasing in speed", trials, true, ""},
  };
  Check& th1 = report.checks[0];
  Check& th2 = report.checks[1];
  Check& th3 = report.checks[2];
  Check& th4 = report.checks[3];
  Check& prop = report.checks[4];

  SplitMix64 rng(seed);
  const double sign = options.interface_sign;

  for (int trial = 0; trial < trials; ++trial) {
    const Trial data(rng);
    const double bare_spacing = kPi / data.l;

    // Theorem 1: even eigenvalues 2*pi*k/l survive a midpoint mass.
    if (th1.passed) {
      try {
        const ProblemInstance inst = data.one_load(data.one_mass_ratio, 0.5);
        const std::vector<double> lambdas = solve_lambdas(inst, 10, sign);
        for (int k = 1; k <= 5; ++k) {
          const double target = 2.0 * kPi * k / data.l;
          const double got = lambdas[2 * k - 1];
          if (std::abs(got - target) > kEqualityTol * std::max(1.0, target)) {
            record_failure(th1, trial,
                           "m/(rho*l)=" + fmt(data.one_mass_ratio) + ", lambda_" +
                               std::to_string(2 * k) + "=" + fmt(got) + " vs " + fmt(target));
            break;
          }
        }
      } catch (const Error& e) {
        record_failure(th1, trial, std::string("solver failure: ") + e.what());
      }
    }

    // Theorem 2: lambda_1 < pi/l for any one-load placement.
    if (th2.passed) {
      try {
        const ProblemInstance inst = data.one_load(data.one_mass_ratio, data.one_mass_position);
        const double lambda1 = solve_lambdas(inst, 1, sign)[0];
        if (!(bare_spacing - lambda1 >= -kInequalityMargin))
          record_failure(th2, trial,
                         "m/(rho*l)=" + fmt(data.one_mass_ratio) + " at p=" +
                             fmt(data.one_mass_position * data.l) + ": lambda_1=" + fmt(lambda1) +
                             " vs pi/l=" + fmt(bare_spacing));
      } catch (const RootSearchError& e) {
        // A first root pushed above the scan ceiling is itself a violation.
        record_failure(th2, trial, std::string("root search: ") + e.what());
      } catch (const Error& e) {
        record_failure(th2, trial, std::string("solver failure: ") + e.what());
      }
    }

    // Theorem 3: symmetric 21-point position grid, minimum at the middle.
    if (th3.passed) {
      try {
        double lambda_mid = 0.0;
        std::vector<double> lambda_at(21);
        for (int j = 1; j <= 21; ++j) {
          const ProblemInstance inst = data.one_load(data.one_mass_ratio, j / 22.0);
          lambda_at[j - 1] = solve_lambdas(inst, 1, sign)[0];
          if (j == 11) lambda_mid = lambda_at[j - 1];
        }
        for (int j = 1; j <= 21; ++j) {
          if (!(lambda_at[j - 1] - lambda_mid >= -kInequalityMargin)) {
            record_failure(th3, trial,
                           "m/(rho*l)=" + fmt(data.one_mass_ratio) + ": lambda_1(p=" +
                               fmt(j / 22.0 * data.l) + ")=" + fmt(lambda_at[j - 1]) +
                               " below midpoint value " + fmt(lambda_mid));
            break;
          }
        }
      } catch (const Error& e) {
        record_failure(th3, trial, std::string("solver failure: ") + e.what());
      }
    }

    // Theorem 4: lambda_k(loaded) <= k*pi/l for every mode checked.
    if (th4.passed) {
      const int k_max = options.max_mode;
      try {
        const ProblemInstance inst = data.multi_load();
        std::vector<double> lambdas;
        try {
          lambdas = solve_lambdas(inst, k_max, sign);
        } catch (const RootSearchError& e) {
          lambdas = e.partial.roots;  // partial roots still witness violations
          if (lambdas.empty()) throw;
        }
        for (std::size_t k = 1; k <= lambdas.size(); ++k) {
          const double bound = k * bare_spacing;
          if (!(bound - lambdas[k - 1] >= -kInequalityMargin)) {
            record_failure(th4, trial,
                           std::to_string(data.n_loads) + " loads: lambda_" + std::to_string(k) +
                               "=" + fmt(lambdas[k - 1]) + " exceeds bare " + fmt(bound));
            break;
          }
        }
      } catch (const Error& e) {
        record_failure(th4, trial, std::string("solver failure: ") + e.what());
      }
    }

    // Proposition: ramping the speed never raises an eigenvalue.
    if (prop.passed) {
      try {
        ProblemDescription desc;
        desc.cable = data.cable();
        desc.loads = {{data.prop_mass_ratio * data.rho * data.l, data.prop_position * data.l}};
        desc.motion.mode = MotionMode::LoadsMoving;
        const double a = wave_speed(desc.cable);
        std::vector<double> previous;
        for (double frac : {0.0, 0.3, 0.6, 0.9}) {
          desc.motion.speed = frac * a;
          const ProblemInstance inst = ProblemInstance::validate(desc);
          const std::vector<double> lambdas = solve_lambdas(inst, 5, sign);
          if (!previous.empty()) {
            for (int k = 0; k < 5; ++k) {
              if (!(previous[k] - lambdas[k] >= -kInequalityMargin)) {
                record_failure(prop, trial,
                               "v=" + fmt(frac * a) + ": lambda_" + std::to_string(k + 1) + "=" +
                                   fmt(lambdas[k]) + " rose above " + fmt(previous[k]));
                break;
              }
            }
            if (!prop.passed) break;
          }
          previous = lambdas;
        }
      } catch (const Error& e) {
        record_failure(prop, trial, std::string("solver failure: ") + e.what());
      }
    }
  }
  return report;
}

}  // namespace cabledyn
