#include "cabledyn/rootfind.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace cabledyn {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void check_config(const RootSearchConfig& cfg) {
  if (cfg.count < 1) throw ValidationError("root search: count must be >= 1");
  if (!(cfg.lambda_max > 0.0) || !std::isfinite(cfg.lambda_max))
    throw ValidationError("root search: lambda_max must be positive and finite");
  if (!(cfg.length > 0.0) || !std::isfinite(cfg.length))
    throw ValidationError("root search: length must be positive and finite");
  if (cfg.oversample < 1) throw ValidationError("root search: oversample must be >= 1");
  if (!(cfg.tol_rel > 10.0 * std::numeric_limits<double>::epsilon()))
    throw ValidationError("root search: tol_rel must exceed 10*machine epsilon");
  if (cfg.max_iter < 1) throw ValidationError("root search: max_iter must be >= 1");
}

}  // namespace

double refine_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol_rel, int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!(flo * fhi < 0.0))
    throw InvalidBracketError("refine_root: no sign change on [" + fmt(lo) + ", " + fmt(hi) + "]");

  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= tol_rel * std::abs(mid)) return mid;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

RootList find_eigenvalues(const std::function<double(double)>& f, const RootSearchConfig& config) {
  check_config(config);

  const double step = std::numbers::pi / (config.length * config.oversample);
  const double tangent_scale = 1e-9 * config.length;

  RootList out;
  double prev_lambda = 0.0;
  double prev_value = f(0.0);
  if (!std::isfinite(prev_value))
    throw RootSearchError(RootSearchError::Kind::NoSignChange, out,
                          "characteristic value is not finite at lambda=0");

  // A grid point may land on a simple root (|f| at rounding level, no sign
  // change against either neighbour read in isolation). Defer the tangential
  // warning one step: if the next bracket shows a crossing, the root was
  // caught there and the near-zero value was not tangential.
  double pending_tangent = -1.0;

  for (long j = 1; static_cast<int>(out.roots.size()) < config.count; ++j) {
    double lambda = static_cast<double>(j) * step;
    if (prev_lambda >= config.lambda_max) break;
    if (lambda > config.lambda_max) lambda = config.lambda_max;

    const double value = f(lambda);
    ++out.brackets_scanned;
    if (!std::isfinite(value))
      throw RootSearchError(RootSearchError::Kind::NoSignChange, out,
                            "characteristic value is not finite at lambda=" + fmt(lambda));

    const bool crossing = prev_value != 0.0 && value != 0.0 && prev_value * value < 0.0;
    if (pending_tangent >= 0.0) {
      if (!crossing)
        out.warnings.push_back("possible tangential (even-multiplicity) root near lambda=" +
                               fmt(pending_tangent));
      pending_tangent = -1.0;
    }

    if (value == 0.0) {
      out.roots.push_back(lambda);
    } else if (crossing) {
      out.roots.push_back(refine_root(f, prev_lambda, lambda, config.tol_rel, config.max_iter));
    } else if (prev_value != 0.0 && std::abs(value) < tangent_scale) {
      pending_tangent = lambda;
    }

    prev_lambda = lambda;
    prev_value = value;
  }
  if (pending_tangent >= 0.0 && static_cast<int>(out.roots.size()) < config.count)
    out.warnings.push_back("possible tangential (even-multiplicity) root near lambda=" +
                           fmt(pending_tangent));

  if (static_cast<int>(out.roots.size()) < config.count) {
    std::ostringstream os;
    os << "found " << out.roots.size() << " of " << config.count
       << " requested roots below lambda_max=" << config.lambda_max;
    throw RootSearchError(RootSearchError::Kind::FewerRoots, out, os.str());
  }
  return out;
}

}  // namespace cabledyn
