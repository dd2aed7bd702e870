#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cabledyn/errors.hpp"

namespace cabledyn {

/// Search controls for locating the first `count` zeros of a characteristic
/// function on lambda > 0. The scan grid step is pi/(length*oversample): the
/// bare-cable root spacing divided by the oversample factor.
struct RootSearchConfig {
  int count = 5;
  double lambda_max = 0.0;  // scan ceiling; must be set > 0 before searching
  double length = 1.0;      // domain length, fixes the base grid spacing pi/length
  int oversample = 16;
  double tol_rel = 1e-12;
  int max_iter = 200;
};

struct RootList {
  std::vector<double> roots;  // strictly increasing, positive
  long brackets_scanned = 0;
  std::vector<std::string> warnings;
};

/// Root search failed to deliver `count` roots. `partial` holds whatever was
/// found below the ceiling, in order.
class RootSearchError : public Error {
 public:
  enum class Kind { FewerRoots, NoSignChange };

  RootSearchError(Kind kind, RootList partial, const std::string& message)
      : Error(message), kind(kind), partial(std::move(partial)) {}

  Kind kind;
  RootList partial;
};

class InvalidBracketError : public Error {
 public:
  using Error::Error;
};

/// Bisection on a sign-change bracket until the bracket width is at most
/// tol_rel times the midpoint (or max_iter); returns the midpoint.
/// Throws InvalidBracketError unless f(lo)*f(hi) < 0.
double refine_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol_rel, int max_iter);

/// Scan [0, lambda_max] on the oversampled grid, bracket sign changes, and
/// refine each by bisection. Returns the first `count` roots in increasing
/// order. Throws RootSearchError (FewerRoots) if the ceiling is reached
/// first, or (NoSignChange) on non-finite f values. A warning is recorded
/// when |f| dips below 1e-9*length at a grid point without a sign change
/// (possible tangential, even-multiplicity root).
RootList find_eigenvalues(const std::function<double(double)>& f, const RootSearchConfig& config);

}  // namespace cabledyn
