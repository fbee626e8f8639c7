#include "radconc/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/core.h>
#include <numbers>
#include <limits>
#include <random>

#include "radconc/functions.hpp"
#include "radconc/radii.hpp"

namespace radconc {

namespace {

#ifdef __SIZEOF_FLOAT128__
__extension__ typedef __float128 wide;
#else
typedef long double wide;
#endif

constexpr Cx kOne{1.0, 0.0};
constexpr double kDiskSlack = 1e-12;

bool in_disk(Cx u, double a, double d) {
  return std::abs(u - a) <= d * (1.0 + kDiskSlack) + 1e-15;
}

struct ChunkResult {
  std::int64_t violations = 0;
  double max_excess = -std::numeric_limits<double>::infinity();
};

// Runs `trials` samples split over kMonteCarloChunks independent streams. A sample
// returns its signed excess over the bound; excess > threshold is a violation.
template <class Sample>
CertReport run_chunks(std::int64_t trials, std::uint64_t seed, Exec exec, double threshold,
                      const Sample& sample) {
  if (trials < 0) throw DomainError("trial count must be non-negative");
  std::vector<ChunkResult> chunks(kMonteCarloChunks);
  const std::int64_t base = trials / kMonteCarloChunks;
  const std::int64_t extra = trials % kMonteCarloChunks;

  auto run_chunk = [&](int c) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(c)));
    const std::int64_t count = base + (c < extra ? 1 : 0);
    ChunkResult out;
    for (std::int64_t i = 0; i < count; ++i) {
      const double excess = sample(rng);
      if (excess > threshold) ++out.violations;
      out.max_excess = std::max(out.max_excess, excess);
    }
    chunks[static_cast<std::size_t>(c)] = out;
  };

  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int c = 0; c < kMonteCarloChunks; ++c) run_chunk(c);
  } else {
    for (int c = 0; c < kMonteCarloChunks; ++c) run_chunk(c);
  }

  CertReport report;
  report.trials = trials;
  report.max_excess = -std::numeric_limits<double>::infinity();
  for (const auto& chunk : chunks) {
    report.violations += chunk.violations;
    report.max_excess = std::max(report.max_excess, chunk.max_excess);
  }
  if (trials == 0) report.max_excess = 0.0;
  return report;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

// Point of the closed disk |u - a| <= d; half the samples sit on the boundary.
Cx disk_point(std::mt19937_64& rng, double a, double d) {
  const double phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  const double radius = uniform(rng, 0.0, 1.0) < 0.5 ? d : d * std::sqrt(uniform(rng, 0.0, 1.0));
  return Cx{a, 0.0} + std::polar(radius, phase);
}

}  // namespace

void SecBandEnv::validate() const {
  if (!(a > d && d >= 0.0)) throw DomainError("need real a > d >= 0");
  if (!(b > 0.0 && std::isfinite(b))) throw DomainError("b must lie in (0, inf)");
  if (alphas.empty()) throw DomainError("need at least one alpha");
  for (double alpha : alphas)
    if (!(alpha >= 0.0 && alpha < std::numbers::pi))
      throw DomainError("alpha must lie in [0, pi)");
}

Interval sec_band_bounds(const SecBandEnv& env) {
  env.validate();
  const double n = static_cast<double>(env.alphas.size());
  const double s = sec_sum(env.alphas);
  return {env.a * n - env.d * s, env.a * n + env.d * s};
}

Cx sec_band_w(const SecBandEnv& env, std::span<const Cx> u, std::span<const Cx> v) {
  env.validate();
  const std::size_t n = env.alphas.size();
  if (u.size() != n || v.size() != n) throw PreconditionError("need one u_j and one v_j per alpha");
  Cx w{};
  for (std::size_t j = 0; j < n; ++j) {
    if (!in_disk(u[j], env.a, env.d) || !in_disk(v[j], env.a, env.d))
      throw PreconditionError(fmt::format("u_{0} or v_{0} lies outside the disk |. - a| <= d", j + 1));
    const CoefficientPair pair{env.alphas[j], env.b};
    w += u[j] * lambda_odd(pair) + v[j] * lambda_even(pair);
  }
  return w;
}

double gk(double b, double alpha) {
  if (!(b > 0.0)) throw DomainError("b must be positive");
  if (!(alpha >= 0.0 && alpha < std::numbers::pi)) throw DomainError("alpha must lie in [0, pi)");
  // 1 + 2b cos(alpha) + b^2 in half-angle form, stable as alpha -> pi.
  const double c = std::cos(alpha / 2.0);
  return (1.0 + b) / std::sqrt((1.0 - b) * (1.0 - b) + 4.0 * b * c * c);
}

Extremum gk_argmax(double alpha, double lo, double hi) {
  if (!(alpha >= 0.0 && alpha < std::numbers::pi)) throw DomainError("alpha must lie in [0, pi)");
  if (!(lo > 0.0 && lo < hi)) throw DomainError("need 0 < lo < hi");
  // The peak is quadratic-flat, so values are compared as squares in extended
  // precision; in double the top ~1e-8 of the interval is indistinguishable.
  const wide c = std::cos(alpha / 2.0);
  auto g2 = [c](wide b) { return (1 + b) * (1 + b) / ((1 - b) * (1 - b) + 4 * b * c * c); };
  const wide inv_phi = (std::sqrt(5.0L) - 1) / 2;
  wide a = lo;
  wide z = hi;
  wide x1 = z - inv_phi * (z - a);
  wide x2 = a + inv_phi * (z - a);
  wide f1 = g2(x1);
  wide f2 = g2(x2);
  while (z - a > wide(1e-12)) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (z - a);
      f2 = g2(x2);
    } else {
      z = x2;
      x2 = x1;
      f2 = f1;
      x1 = z - inv_phi * (z - a);
      f1 = g2(x1);
    }
  }
  const double argmax = static_cast<double>((a + z) / 2);
  return {argmax, gk(argmax, alpha)};
}

bool gk_peak_at_unity(double alpha, double arg_tol, double value_tol) {
  const Extremum peak = gk_argmax(alpha);
  return std::abs(peak.argmax - 1.0) <= arg_tol &&
         std::abs(peak.value - 1.0 / std::cos(alpha / 2.0)) <= value_tol;
}

double rotated_product_bound(Cx w0, double a, double d) {
  if (!(a > d && d >= 0.0)) throw DomainError("need real a > d >= 0");
  return std::abs(w0) * (a * std::cos(std::arg(w0)) - d);
}

Disk positive_real_disk_bound(double rho, double r) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("rho must lie in (0, 1)");
  if (!(r >= 0.0)) throw DomainError("r must be non-negative");
  if (r >= rho) throw DomainError("r must be smaller than rho");
  const double t = r / rho;
  const double q = 1.0 - t * t;
  return {(1.0 + t * t) / q, 2.0 * t / q};
}

CertReport certify_sec_band(std::int64_t trials, std::uint64_t seed, Exec exec) {
  return run_chunks(trials, seed, exec, kCertTol, [](std::mt19937_64& rng) {
    SecBandEnv env;
    const int n = 1 + static_cast<int>(uniform(rng, 0.0, 4.0));
    env.a = uniform(rng, 1e-3, 5.0);
    env.d = uniform(rng, 0.0, 1.0) < 0.1 ? 0.0 : uniform(rng, 0.0, env.a);
    env.b = uniform(rng, 0.0, 1.0) < 0.25 ? 1.0 : log_uniform(rng, 0.01, 100.0);
    env.alphas.resize(static_cast<std::size_t>(n));
    std::vector<Cx> u(env.alphas.size());
    std::vector<Cx> v(env.alphas.size());
    for (std::size_t j = 0; j < env.alphas.size(); ++j) {
      env.alphas[j] = uniform(rng, 0.0, std::numbers::pi);
      u[j] = disk_point(rng, env.a, env.d);
      v[j] = disk_point(rng, env.a, env.d);
    }
    const Interval band = sec_band_bounds(env);
    const double re = sec_band_w(env, u, v).real();
    return std::max(band.lo - re, re - band.hi);
  });
}

CertReport certify_rotated_product(std::int64_t trials, std::uint64_t seed, Exec exec) {
  return run_chunks(trials, seed, exec, kCertTol, [](std::mt19937_64& rng) {
    const double a = uniform(rng, 1e-3, 5.0);
    const double d = uniform(rng, 0.0, a);
    const Cx w = Cx{a, 0.0} + std::polar(d * std::sqrt(uniform(rng, 0.0, 1.0)),
                                         uniform(rng, 0.0, 2.0 * std::numbers::pi));
    const Cx w0 = std::polar(log_uniform(rng, 0.01, 10.0), uniform(rng, -std::numbers::pi, std::numbers::pi));
    return rotated_product_bound(w0, a, d) - (w * w0).real();
  });
}

CertReport certify_gk_peak(std::int64_t trials, std::uint64_t seed, Exec exec) {
  return run_chunks(trials, seed, exec, 0.0, [](std::mt19937_64& rng) {
    double alpha = 0.0;
    while (alpha == 0.0) alpha = uniform(rng, 0.0, std::numbers::pi);
    const Extremum peak = gk_argmax(alpha);
    const double arg_gap = std::abs(peak.argmax - 1.0) - 1e-8;
    const double value_gap = std::abs(peak.value - 1.0 / std::cos(alpha / 2.0)) - 1e-10;
    return std::max(arg_gap, value_gap);
  });
}

CertReport certify_disk_containment(std::int64_t trials, std::uint64_t seed, Exec exec) {
  return run_chunks(trials, seed, exec, 1e-10, [](std::mt19937_64& rng) {
    const double rho = uniform(rng, 0.05, 0.99);
    const double r = rho * uniform(rng, 0.0, 0.95);
    const int terms = 1 + static_cast<int>(uniform(rng, 0.0, 4.0));
    std::vector<double> weights(static_cast<std::size_t>(terms));
    double total = 0.0;
    for (double& wgt : weights) total += (wgt = uniform(rng, 0.01, 1.0));
    const Cx z = std::polar(r, uniform(rng, 0.0, 2.0 * std::numbers::pi));
    Cx P{};
    for (double wgt : weights) {
      const double rho_k = uniform(rng, 0.0, 1.0) < 0.5 ? rho : rho * uniform(rng, 1.0, 1.5);
      const Cx u = std::polar(1.0, uniform(rng, 0.0, 2.0 * std::numbers::pi)) * z / rho_k;
      P += (wgt / total) * (kOne + u) / (kOne - u);
    }
    const Disk disk = positive_real_disk_bound(rho, r);
    return std::abs(P - disk.center) - disk.radius;
  });
}

}  // namespace radconc
