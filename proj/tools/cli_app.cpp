#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cabledyn/characteristic.hpp"
#include "cabledyn/fd_oracle.hpp"
#include "cabledyn/spectra.hpp"

namespace cabledyn::cli {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// number formatting: 17 significant digits in CSV (round-trips doubles),
// 6 in tables.

std::string sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

std::string csv_num(double v) { return sig(v, 17); }
std::string table_num(double v) { return sig(v, 6); }

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << csv_quote(cells[i]);
  }
  out << '\n';
}

void write_table_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (const std::string& cell : cells) out << std::setw(16) << std::right << cell;
  out << '\n';
}

class RowWriter {
 public:
  RowWriter(std::ostream& out, OutputFormat format, std::vector<std::string> header)
      : out_(out), format_(format) {
    row(header);
  }

  void row(const std::vector<std::string>& cells) {
    if (format_ == OutputFormat::Csv)
      write_csv_row(out_, cells);
    else
      write_table_row(out_, cells);
  }

 private:
  std::ostream& out_;
  OutputFormat format_;
};

// ---------------------------------------------------------------------------
// strict JSON config parsing

[[noreturn]] void bad(const std::string& message) { throw ValidationError("config: " + message); }

void check_keys(const json& obj, const std::string& ctx,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return item.key() == k; }) == allowed.end())
      bad("unknown key '" + item.key() + "' in " + ctx);
  }
}

const json& member(const json& obj, const std::string& ctx, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(ctx + "." + key + " is required");
  return *it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) bad(path + " must be a number");
  return v.get<double>();
}

double opt_number(const json& obj, const std::string& ctx, const char* key, double fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : as_number(*it, ctx + "." + key);
}

int opt_integer(const json& obj, const std::string& ctx, const char* key, int fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) bad(ctx + "." + key + " must be an integer");
  return it->get<int>();
}

bool opt_boolean(const json& obj, const std::string& ctx, const char* key, bool fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) bad(ctx + "." + key + " must be a boolean");
  return it->get<bool>();
}

std::string opt_string(const json& obj, const std::string& ctx, const char* key,
                       const std::string& fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_string()) bad(ctx + "." + key + " must be a string");
  return it->get<std::string>();
}

MotionMode parse_mode(const std::string& text) {
  if (text == "static") return MotionMode::Static;
  if (text == "loads-moving") return MotionMode::LoadsMoving;
  if (text == "system-moving") return MotionMode::SystemMoving;
  bad("motion.mode must be one of static, loads-moving, system-moving");
}

OutputFormat parse_format(const std::string& text) {
  if (text == "table") return OutputFormat::Table;
  if (text == "csv") return OutputFormat::Csv;
  bad("output format must be 'table' or 'csv'");
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ValidationError("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(file);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) bad("top level must be an object");
  check_keys(doc, "top level",
             {"cable", "loads", "motion", "solve", "window", "oracle", "output", "verify"});

  RunConfig cfg;

  const json& cable = member(doc, "config", "cable");
  if (!cable.is_object()) bad("cable must be an object");
  check_keys(cable, "cable", {"density", "tension", "length"});
  cfg.problem.cable.density = as_number(member(cable, "cable", "density"), "cable.density");
  cfg.problem.cable.tension = as_number(member(cable, "cable", "tension"), "cable.tension");
  cfg.problem.cable.length = as_number(member(cable, "cable", "length"), "cable.length");

  if (auto it = doc.find("loads"); it != doc.end()) {
    if (!it->is_array()) bad("loads must be an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& load = (*it)[i];
      const std::string ctx = "loads[" + std::to_string(i) + "]";
      if (!load.is_object()) bad(ctx + " must be an object");
      check_keys(load, ctx, {"mass", "position"});
      cfg.problem.loads.push_back(
          {as_number(member(load, ctx, "mass"), ctx + ".mass"),
           as_number(member(load, ctx, "position"), ctx + ".position")});
    }
  }

  if (auto it = doc.find("motion"); it != doc.end()) {
    const json& motion = *it;
    if (!motion.is_object()) bad("motion must be an object");
    check_keys(motion, "motion",
               {"mode", "speed", "coriolis", "factor_mode", "frequency_formula", "length_rate"});
    cfg.problem.motion.mode = parse_mode(opt_string(motion, "motion", "mode", "static"));
    cfg.problem.motion.speed = opt_number(motion, "motion", "speed", 0.0);
    cfg.problem.motion.coriolis = opt_boolean(motion, "motion", "coriolis", false);
    const std::string factor = opt_string(motion, "motion", "factor_mode", "normalized");
    if (factor == "normalized")
      cfg.problem.motion.factor_mode = FactorMode::Normalized;
    else if (factor == "as-printed")
      cfg.problem.motion.factor_mode = FactorMode::AsPrinted;
    else
      bad("motion.factor_mode must be 'normalized' or 'as-printed'");
    const std::string formula = opt_string(motion, "motion", "frequency_formula", "corrected");
    if (formula == "corrected")
      cfg.problem.motion.frequency_formula = FrequencyFormula::Corrected;
    else if (formula == "as-printed")
      cfg.problem.motion.frequency_formula = FrequencyFormula::AsPrinted;
    else
      bad("motion.frequency_formula must be 'corrected' or 'as-printed'");
    cfg.problem.motion.length_rate = opt_number(motion, "motion", "length_rate", 0.0);
  }

  if (auto it = doc.find("solve"); it != doc.end()) {
    const json& solve = *it;
    if (!solve.is_object()) bad("solve must be an object");
    check_keys(solve, "solve", {"count", "lambda_max", "oversample", "tol_rel", "max_iter"});
    cfg.solve.count = opt_integer(solve, "solve", "count", cfg.solve.count);
    cfg.solve.lambda_max = opt_number(solve, "solve", "lambda_max", cfg.solve.lambda_max);
    cfg.solve.oversample = opt_integer(solve, "solve", "oversample", cfg.solve.oversample);
    cfg.solve.tol_rel = opt_number(solve, "solve", "tol_rel", cfg.solve.tol_rel);
    cfg.solve.max_iter = opt_integer(solve, "solve", "max_iter", cfg.solve.max_iter);
  }

  if (auto it = doc.find("window"); it != doc.end()) {
    const json& window = *it;
    if (!window.is_object()) bad("window must be an object");
    check_keys(window, "window", {"t0", "t1", "steps"});
    cfg.window.t0 = opt_number(window, "window", "t0", 0.0);
    cfg.window.t1 = opt_number(window, "window", "t1", cfg.window.t0);
    cfg.window.steps = opt_integer(window, "window", "steps", 1);
    cfg.has_window = true;
  }

  if (auto it = doc.find("oracle"); it != doc.end()) {
    const json& oracle = *it;
    if (!oracle.is_object()) bad("oracle must be an object");
    check_keys(oracle, "oracle", {"nodes", "threshold"});
    cfg.oracle_nodes = opt_integer(oracle, "oracle", "nodes", cfg.oracle_nodes);
    cfg.oracle_threshold = opt_number(oracle, "oracle", "threshold", cfg.oracle_threshold);
  }

  if (auto it = doc.find("output"); it != doc.end()) {
    const json& output = *it;
    if (!output.is_object()) bad("output must be an object");
    check_keys(output, "output", {"format", "path"});
    cfg.format = parse_format(opt_string(output, "output", "format", "table"));
    cfg.output_path = opt_string(output, "output", "path", "");
  }

  if (auto it = doc.find("verify"); it != doc.end()) {
    const json& verify = *it;
    if (!verify.is_object()) bad("verify must be an object");
    check_keys(verify, "verify", {"seed", "trials"});
    const int seed = opt_integer(verify, "verify", "seed", 1);
    if (seed < 0) bad("verify.seed must be >= 0");
    cfg.verify_seed = static_cast<std::uint64_t>(seed);
    cfg.verify_trials = opt_integer(verify, "verify", "trials", cfg.verify_trials);
  }

  return cfg;
}

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(OutputFormat format, double v) {
  return format == OutputFormat::Csv ? csv_num(v) : table_num(v);
}

// Rows k = 1..count with empty cells past the found roots.
void emit_spectrum_rows(RowWriter& writer, OutputFormat format, int count,
                        const std::vector<double>& lambdas, double wave_speed,
                        const std::vector<std::string>& prefix = {}) {
  for (int k = 1; k <= count; ++k) {
    std::vector<std::string> cells = prefix;
    cells.push_back(std::to_string(k));
    if (k <= static_cast<int>(lambdas.size())) {
      const double lambda = lambdas[k - 1];
      cells.push_back(num(format, lambda));
      cells.push_back(num(format, wave_speed * lambda));
    } else {
      cells.push_back("");
      cells.push_back("");
    }
    writer.row(cells);
  }
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ProblemInstance inst = ProblemInstance::validate(cfg.problem);
  if (inst.motion().mode == MotionMode::SystemMoving)
    throw ValidationError(
        "spectrum supports static and loads-moving instances; use 'moving' for system mode");

  std::vector<double> lambdas;
  std::string warning;
  if (inst.motion().mode == MotionMode::Static) {
    try {
      lambdas = static_spectrum(inst, cfg.solve).lambdas;
    } catch (const RootSearchError& e) {
      lambdas = e.partial.roots;
      warning = e.what();
    }
  } else {
    // Frozen-time spectrum at the window start.
    const TimeWindow snapshot{cfg.window.t0, cfg.window.t0, 1};
    const auto samples = moving_load_spectrum(inst, snapshot, cfg.solve);
    lambdas = samples[0].spectrum.lambdas;
    if (!samples[0].complete) warning = samples[0].error;
  }

  RowWriter writer(out, cfg.format, {"k", "lambda", "omega"});
  emit_spectrum_rows(writer, cfg.format, cfg.solve.count, lambdas, inst.wave_speed());
  if (!warning.empty()) {
    if (cfg.format == OutputFormat::Table) out << "warning: " << warning << '\n';
    err << "warning: " << warning << '\n';
    return kRootSearchShortfall;
  }
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, const SweepParameter& parameter,
              const std::vector<double>& grid, std::ostream& out, std::ostream& err) {
  // The cable itself is never swept, so cable problems are config errors
  // rather than per-point gaps.
  ProblemInstance::validate({cfg.problem.cable, {}, {}});
  const SweepResult result = sweep(cfg.problem, parameter, grid, cfg.solve);
  const double a = wave_speed(cfg.problem.cable);

  RowWriter writer(out, cfg.format, {"param", "k", "lambda", "omega"});
  bool shortfall = false;
  for (const SweepPoint& point : result.points) {
    emit_spectrum_rows(writer, cfg.format, cfg.solve.count, point.lambdas, a,
                       {num(cfg.format, point.value)});
    if (!point.complete) {
      shortfall = true;
      err << "warning: " << result.parameter << "=" << csv_num(point.value) << ": " << point.error
          << '\n';
    }
  }
  return shortfall ? kRootSearchShortfall : kOk;
}

int cmd_moving(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ProblemInstance inst = ProblemInstance::validate(cfg.problem);
  RowWriter writer(out, cfg.format, {"t", "k", "lambda", "omega"});

  if (inst.motion().mode == MotionMode::LoadsMoving) {
    const auto samples = moving_load_spectrum(inst, cfg.window, cfg.solve);
    bool shortfall = false;
    for (const MovingSample& sample : samples) {
      emit_spectrum_rows(writer, cfg.format, cfg.solve.count, sample.spectrum.lambdas,
                         inst.wave_speed(), {num(cfg.format, sample.t)});
      if (!sample.complete) {
        shortfall = true;
        err << "warning: t=" << csv_num(sample.t) << ": " << sample.error << '\n';
      }
    }
    return shortfall ? kRootSearchShortfall : kOk;
  }

  if (inst.motion().mode == MotionMode::SystemMoving) {
    validate_window(inst, cfg.window);
    const double l0 = inst.cable().length;
    const double rate = inst.motion().length_rate;
    auto length_at = [l0, rate](double t) { return l0 + rate * t; };
    for (int j = 0; j < cfg.window.steps; ++j) {
      const double t = cfg.window.steps == 1 ? cfg.window.t0
                                             : cfg.window.t0 + (cfg.window.t1 - cfg.window.t0) *
                                                                   j / (cfg.window.steps - 1);
      const std::vector<double> omega = moving_system_frequencies(
          inst.cable(), inst.motion().speed, cfg.solve.count, inst.motion().coriolis,
          inst.motion().frequency_formula, length_at, t);
      for (int k = 1; k <= cfg.solve.count; ++k) {
        // The spatial eigenvalues pi*k/l(t) are speed-independent; motion
        // enters through the frequency formula only.
        writer.row({num(cfg.format, t), std::to_string(k),
                    num(cfg.format, kPi * k / length_at(t)), num(cfg.format, omega[k - 1])});
      }
    }
    return kOk;
  }

  throw ValidationError("moving requires loads-moving or system-moving mode");
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  // The frozen-time problem of a moving instance is the static problem with
  // the masses scaled by the coupling factor and positions taken at t0.
  ProblemDescription effective = cfg.problem;
  if (cfg.problem.motion.mode == MotionMode::SystemMoving)
    throw ValidationError("oracle supports static and loads-moving instances");
  if (cfg.problem.motion.mode == MotionMode::LoadsMoving) {
    const ProblemInstance moving = ProblemInstance::validate(cfg.problem);
    const std::vector<double> shifted = positions_at(moving, cfg.window.t0);
    const double factor = moving_coupling_factor(moving.motion(), moving.wave_speed());
    effective.loads.clear();
    for (std::size_t i = 0; i < moving.loads().size(); ++i)
      effective.loads.push_back({moving.loads()[i].mass * factor, shifted[i]});
    effective.motion = MotionSpec{};
  }
  const ProblemInstance inst = ProblemInstance::validate(effective);

  RootSearchConfig solve = resolve_search_config(cfg.solve, inst);
  solve.oversample = std::max(solve.oversample, suggest_oversample(inst, solve.count));
  const SpectrumResult transfer = static_spectrum(inst, solve);
  const RootList fd = fd_spectrum(inst, cfg.oracle_nodes, cfg.solve.count);

  RowWriter writer(out, cfg.format,
                   {"k", "lambda_transfer", "lambda_fd", "abs_delta", "rel_delta"});
  double worst = 0.0;
  for (int k = 1; k <= cfg.solve.count; ++k) {
    const double t = transfer.lambdas[k - 1];
    const double f = fd.roots[k - 1];
    const double abs_delta = std::abs(f - t);
    const double rel_delta = abs_delta / std::abs(t);
    worst = std::max(worst, rel_delta);
    writer.row({std::to_string(k), num(cfg.format, t), num(cfg.format, f),
                num(cfg.format, abs_delta), num(cfg.format, rel_delta)});
  }
  if (worst > cfg.oracle_threshold) {
    err << "oracle mismatch: max relative delta " << csv_num(worst) << " exceeds threshold "
        << csv_num(cfg.oracle_threshold) << '\n';
    return kOracleMismatch;
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg, bool corrupt_interface_sign, std::ostream& out,
               std::ostream& err) {
  TheoremCheckOptions options;
  if (corrupt_interface_sign) options.interface_sign = -1.0;
  const TheoremReport report = theorem_checks(cfg.verify_seed, cfg.verify_trials, options);

  if (cfg.format == OutputFormat::Csv) {
    RowWriter writer(out, cfg.format, {"check", "trials", "status", "detail"});
    for (const auto& check : report.checks)
      writer.row({check.name, std::to_string(check.trials), check.passed ? "pass" : "FAIL",
                  check.counterexample});
  } else {
    out << std::left << std::setw(8) << "status" << std::right << std::setw(7) << "trials"
        << "  check\n";
    for (const auto& check : report.checks) {
      out << std::left << std::setw(8) << (check.passed ? "pass" : "FAIL") << std::right
          << std::setw(7) << check.trials << "  " << check.name << '\n';
      if (!check.passed) out << "         counterexample: " << check.counterexample << '\n';
    }
  }
  if (!report.all_passed()) {
    err << "theorem checks failed (seed " << cfg.verify_seed << ", " << cfg.verify_trials
        << " trials)\n";
    return kTheoremFailure;
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"cabledyn: eigenvalues and natural frequencies of a taut cable with point loads"};
  app.require_subcommand(1);
  app.footer(
      "Config defaults: loads []; motion {mode static, speed 0, coriolis false,\n"
      "  factor_mode normalized, frequency_formula corrected, length_rate 0};\n"
      "  solve {count 5, lambda_max 0 = auto (count+1/2)*pi/length, oversample 16,\n"
      "  tol_rel 1e-12, max_iter 200}; window {t0 0, t1 t0, steps 1};\n"
      "  oracle {nodes 2000, threshold 5e-3}; output {format table, path stdout};\n"
      "  verify {seed 1, trials 50}. Unknown config keys are fatal.");

  std::string config_path, format_text, output_path, param_text;
  double grid_from = 0.0, grid_to = 0.0;
  int grid_steps = 0;
  bool corrupt_sign = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--format", format_text, "output format: table or csv");
    sub->add_option("--output", output_path, "write to this file instead of stdout");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues and frequencies");
  add_common(spectrum);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "spectra over a parameter grid (CSV)");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--param", param_text, "speed, mass:<i> or position:<i>")->required();
  CLI::Option* opt_from = sweep_cmd->add_option("--from", grid_from, "first grid value");
  CLI::Option* opt_to = sweep_cmd->add_option("--to", grid_to, "last grid value");
  CLI::Option* opt_steps = sweep_cmd->add_option("--steps", grid_steps, "grid point count");

  CLI::App* moving = app.add_subcommand("moving", "time-dependent eigenvalues lambda_k(t)");
  add_common(moving);
  CLI::Option* mv_from = moving->add_option("--from", grid_from, "window start t0");
  CLI::Option* mv_to = moving->add_option("--to", grid_to, "window end t1");
  CLI::Option* mv_steps = moving->add_option("--steps", grid_steps, "window sample count");

  CLI::App* oracle = app.add_subcommand("oracle", "transfer method vs finite-difference oracle");
  add_common(oracle);

  CLI::App* verify = app.add_subcommand("verify", "randomized spectral-ordering checks");
  add_common(verify);
  verify->add_flag("--corrupt-interface-sign", corrupt_sign)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    RunConfig cfg = load_config(config_path);
    if (!format_text.empty()) cfg.format = parse_format(format_text);
    if (!output_path.empty()) cfg.output_path = output_path;

    std::ofstream file;
    if (!cfg.output_path.empty()) {
      file.open(cfg.output_path);
      if (!file) throw ValidationError("cannot open output file: " + cfg.output_path);
    }
    std::ostream& sink = cfg.output_path.empty() ? out : file;

    if (*spectrum) return cmd_spectrum(cfg, sink, err);

    if (*sweep_cmd) {
      if (!*opt_from) throw ValidationError("sweep requires --from");
      if (!*opt_steps) grid_steps = 1;
      if (grid_steps < 1) throw ValidationError("sweep --steps must be >= 1");
      if (grid_steps > 1 && !*opt_to) throw ValidationError("sweep requires --to when --steps > 1");
      std::vector<double> grid;
      for (int j = 0; j < grid_steps; ++j)
        grid.push_back(grid_steps == 1 ? grid_from
                                       : grid_from + (grid_to - grid_from) * j / (grid_steps - 1));
      return cmd_sweep(cfg, SweepParameter::parse(param_text), grid, sink, err);
    }

    if (*moving) {
      if (*mv_from) cfg.window.t0 = grid_from;
      if (*mv_to) cfg.window.t1 = grid_to;
      if (*mv_steps) cfg.window.steps = grid_steps;
      return cmd_moving(cfg, sink, err);
    }

    if (*oracle) return cmd_oracle(cfg, sink, err);
    if (*verify) return cmd_verify(cfg, corrupt_sign, sink, err);

    err << "error: no subcommand\n";
    return kConfigError;
  } catch (const RootSearchError& e) {
    err << "error: " << e.what() << '\n';
    return kRootSearchShortfall;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace cabledyn::cli
