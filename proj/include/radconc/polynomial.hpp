#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "radconc/errors.hpp"

namespace radconc {

/// Real polynomial with ascending coefficients, degree <= 6. The stored length
/// fixes the nominal degree; a zero leading coefficient is kept as is.
class PolyR {
 public:
  static constexpr std::size_t kMaxCoeffs = 7;

  PolyR() = default;
  explicit PolyR(std::vector<double> coeffs);

  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  double coeff(std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : 0.0; }
  /// Nominal degree (stored length - 1).
  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  /// Degree after dropping exactly-zero leading coefficients.
  std::size_t effective_degree() const noexcept;
  double max_abs_coeff() const noexcept;

  double operator()(double r) const noexcept {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + *it;
    return acc;
  }

 private:
  std::vector<double> coeffs_;
};

struct Bracket {
  double lo = 0.0;
  double hi = 1.0;
};

enum class RootStatus { Found, NoRootInBracket, DegenerateBracket };

const char* to_string(RootStatus status) noexcept;

/// Where a reported radius came from.
enum class RadiusSource { ClosedForm, Polynomial };

/// Outcome of a radius computation. For polynomial radii `poly` holds the
/// polynomial whose root was isolated; the optional cross-check is the first
/// sign change of the un-cleared lower-bound function on the same bracket.
struct RadiusResult {
  double radius = std::nan("");
  std::optional<PolyR> poly;
  Bracket bracket;
  int iterations = 0;
  RootStatus status = RootStatus::NoRootInBracket;
  RadiusSource source = RadiusSource::Polynomial;
  std::optional<double> crosscheck_radius;
  bool crosscheck_disagrees = false;
};

inline constexpr int kScanIntervals = 10000;
inline constexpr double kDefaultRootTol = 1e-12;
/// Grid values with |psi| <= kNearZero * scale count as roots.
inline constexpr double kNearZero = 1e-12;
/// Cross-check roots further apart than this are flagged.
inline constexpr double kCrosscheckTol = 1e-6;

/// First sign change of `fn` on a uniform kScanIntervals grid over the bracket,
/// refined by bisection to width <= tol. Interior grid values within
/// kNearZero * scale of zero are returned directly.
template <class Fn>
RadiusResult first_root_by_scan(Fn&& fn, Bracket bracket, double tol, double scale) {
  RadiusResult out;
  out.bracket = bracket;
  if (!(std::isfinite(bracket.lo) && std::isfinite(bracket.hi) && bracket.lo >= 0.0 &&
        bracket.lo < bracket.hi)) {
    out.status = RootStatus::DegenerateBracket;
    return out;
  }
  if (!(tol > 0.0 && tol <= 1e-6)) throw UsageError("root tolerance must lie in (0, 1e-6]");

  const double h = (bracket.hi - bracket.lo) / kScanIntervals;
  const double near_zero = kNearZero * scale;
  double x_prev = bracket.lo;
  double v_prev = fn(x_prev);
  for (int i = 1; i <= kScanIntervals; ++i) {
    const double x = i == kScanIntervals ? bracket.hi : bracket.lo + i * h;
    const double v = fn(x);
    if (i < kScanIntervals && std::abs(v) <= near_zero) {
      out.radius = x;
      out.status = RootStatus::Found;
      return out;
    }
    if ((v_prev < 0.0 && v > 0.0) || (v_prev > 0.0 && v < 0.0)) {
      double lo = x_prev;
      double hi = x;
      double f_lo = v_prev;
      int iterations = 0;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = fn(mid);
        ++iterations;
        if (f_mid == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
          lo = mid;
          f_lo = f_mid;
        } else {
          hi = mid;
        }
      }
      out.radius = 0.5 * (lo + hi);
      out.iterations = iterations;
      out.status = RootStatus::Found;
      return out;
    }
    x_prev = x;
    v_prev = v;
  }
  out.status = RootStatus::NoRootInBracket;
  return out;
}

/// Smallest root of `poly` in the open bracket, scale = max(1, max |coeff|).
RadiusResult smallest_positive_root(const PolyR& poly, Bracket bracket,
                                    double tol = kDefaultRootTol);

/// Polynomial product, used to clear denominators of lower-bound functions.
PolyR multiply(const PolyR& a, const PolyR& b);

}  // namespace radconc
