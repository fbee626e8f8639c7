#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "radconc/errors.hpp"
#include "radconc/parallel.hpp"

namespace radconc {

/// Disk data for the sec-band inequality: |u_j - a| <= d, |v_j - a| <= d, a > d >= 0,
/// one shared b in (0, inf).
struct SecBandEnv {
  double a = 1.0;
  double d = 0.0;
  double b = 1.0;
  std::vector<double> alphas;

  void validate() const;
};

struct Interval {
  double lo;
  double hi;
};

/// (a n - d sum sec(alpha_j/2), a n + d sum sec(alpha_j/2)).
Interval sec_band_bounds(const SecBandEnv& env);

/// w = sum u_j/(1 + b e^{i alpha_j}) + sum v_j/(1 + b^{-1} e^{-i alpha_j}).
/// Throws PreconditionError if some u_j or v_j leaves the disk |. - a| <= d.
Cx sec_band_w(const SecBandEnv& env, std::span<const Cx> u, std::span<const Cx> v);

/// (1 + b)/sqrt(1 + 2 b cos alpha + b^2).
double gk(double b, double alpha);

struct Extremum {
  double argmax;
  double value;
};

/// Golden-section search for the maximum of gk(., alpha) over b in [lo, hi],
/// carried out in log b.
Extremum gk_argmax(double alpha, double lo = 0.01, double hi = 100.0);

/// True when the maximizer lies within `arg_tol` of b = 1 and the maximum
/// equals sec(alpha/2) within `value_tol`.
bool gk_peak_at_unity(double alpha, double arg_tol = 1e-8, double value_tol = 1e-10);

/// |w0| (a cos(arg w0) - d), the lower bound on Re(w w0) when |w - a| < d.
double rotated_product_bound(Cx w0, double a, double d);

struct Disk {
  double center;
  double radius;
};

/// Disk holding P(z) on |z| = r whenever Re P > 0 on |z| < rho and P(0) = 1:
/// center (1 + t^2)/(1 - t^2), radius 2t/(1 - t^2), t = r/rho.
Disk positive_real_disk_bound(double rho, double r);

/// Outcome of a randomized check. `max_excess` is the largest signed amount
/// by which a sample crossed its bound (negative when every sample is inside).
struct CertReport {
  std::int64_t trials = 0;
  std::int64_t violations = 0;
  double max_excess = 0.0;

  friend bool operator==(const CertReport&, const CertReport&) = default;
};

inline constexpr double kCertTol = 1e-12;

/// Random (env, u, v) with n in {1..4}, b log-uniform in (0.01, 100); counts
/// samples with Re w outside [lo - 1e-12, hi + 1e-12].
CertReport certify_sec_band(std::int64_t trials, std::uint64_t seed, Exec exec = Exec::Parallel);

/// Random (w, w0, a, d) with |w - a| < d; counts Re(w w0) < bound - 1e-12.
CertReport certify_rotated_product(std::int64_t trials, std::uint64_t seed, Exec exec = Exec::Parallel);

/// Random alpha in [0, pi); counts alphas failing gk_peak_at_unity.
CertReport certify_gk_peak(std::int64_t trials, std::uint64_t seed, Exec exec = Exec::Parallel);

/// Random mixtures of Moebius maps (1 + e^{i phi} z/rho_k)/(1 - e^{i phi} z/rho_k),
/// rho_k >= rho, sampled on |z| = r < rho; counts samples outside the bound disk
/// by more than 1e-10 (relative to the disk radius scale).
CertReport certify_disk_containment(std::int64_t trials, std::uint64_t seed,
                              Exec exec = Exec::Parallel);

}  // namespace radconc
