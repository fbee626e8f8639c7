#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radconc/functions.hpp"
#include "radconc/parallel.hpp"
#include "radconc/radii.hpp"
#include "radconc/transforms.hpp"

namespace radconc {

/// Closed polar grid {r_i e^{i theta_k}}: r_i = r_min + (r_max - r_min) i / n_radii
/// for i = 1..n_radii, theta_k = 2 pi k / n_angles. When r_min == 0 the centre
/// z = 0 is sampled as well.
struct PolarGrid {
  double r_min = 0.0;
  double r_max = 0.5;
  int n_radii = 64;
  int n_angles = 256;
};

struct MinRe {
  double min_re;
  Cx worst_z;
  std::int64_t samples;
};

/// Minimum of Re(quantity) over the grid. Ties go to the lowest grid index, so
/// serial and parallel runs agree exactly. A singular or critical grid point
/// raises the corresponding error for the lowest such index.
MinRe min_re_on_grid(const TransformKind& kind, const AnalyticFn& F, const PolarGrid& grid,
                     Exec exec = Exec::Parallel);

/// Disk grid of radius r_max; n_radii and n_angles must be >= 16 and r_max < 1.
MinRe min_re_on_circles(const TransformKind& kind, const AnalyticFn& F, double r_max,
                        int n_radii = 64, int n_angles = 256, Exec exec = Exec::Parallel);

/// The quantity whose real part a radius query guarantees positive.
TransformKind transform_for(const RadiusQuery& query);

/// Combinations built from the class fixtures, sharing the query's alphas:
///   S    Koebe rotations, z + z^2/2, mixtures of both, one set with b != 1
///   S(p) k_p
///   Co(A) coa_wing(A)
std::vector<CombinationSpec> default_fixture_set(const RadiusQuery& query);

struct VerifyReport {
  RadiusQuery query;
  RadiusResult result;
  double radius = 0.0;
  double min_re = 0.0;
  Cx worst_z{};
  std::string worst_fixture;
  std::int64_t samples = 0;
  double margin = 0.95;
  bool passed = false;
  /// Filled when evaluation hit a singularity or critical point.
  std::optional<std::string> error;
};

inline constexpr double kDefaultMargin = 0.95;

/// Computes radius(query) and checks Re(quantity) > 0 on margin * R for every
/// fixture. Only positivity inside the radius is asserted.
VerifyReport verify_radius(const RadiusQuery& query, const std::vector<CombinationSpec>& fixtures,
                           double margin = kDefaultMargin, int n_radii = 64, int n_angles = 256,
                           Exec exec = Exec::Parallel);

/// Random well-formed queries for a supported (class, mode): n in {1, 2, 3},
/// alphas uniform in [0, 0.9 pi), p in [0.2, 0.8], A in (1, 2]. Deterministic in seed.
std::vector<RadiusQuery> random_queries(RadiusClass klass, Mode mode, int count,
                                        std::uint64_t seed,
                                        FormulaVariant variant = FormulaVariant::AsProof);

/// |k_p(-r)| <= |f(r e^{i theta})| <= |k_p(r e^{i theta})| for every sampled theta,
/// with relative tolerance 1e-10.
bool distortion_check_sp(const AnalyticFn& f, double r, int n_angles = 256);

}  // namespace radconc
