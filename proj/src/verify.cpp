#include "radconc/verify.hpp"

#include <cmath>
#include <exception>
#include <fmt/core.h>
#include <limits>
#include <numbers>
#include <random>

namespace radconc {

namespace {

struct Best {
  double value = std::numeric_limits<double>::infinity();
  std::int64_t index = std::numeric_limits<std::int64_t>::max();
  Cx z{};

  void offer(double v, std::int64_t i, Cx at) {
    if (v < value || (v == value && i < index)) {
      value = v;
      index = i;
      z = at;
    }
  }
};

class GridPoints {
 public:
  explicit GridPoints(const PolarGrid& grid)
      : grid_(grid), has_centre_(grid.r_min == 0.0) {}

  std::int64_t size() const {
    return (has_centre_ ? 1 : 0) + static_cast<std::int64_t>(grid_.n_radii) * grid_.n_angles;
  }

  Cx operator[](std::int64_t idx) const {
    if (has_centre_) {
      if (idx == 0) return Cx{};
      --idx;
    }
    const std::int64_t ring = idx / grid_.n_angles + 1;
    const std::int64_t k = idx % grid_.n_angles;
    const double r = grid_.r_min + (grid_.r_max - grid_.r_min) * static_cast<double>(ring) /
                                       static_cast<double>(grid_.n_radii);
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(grid_.n_angles);
    return std::polar(r, theta);
  }

 private:
  PolarGrid grid_;
  bool has_centre_;
};

void check_grid(const PolarGrid& grid) {
  if (!(grid.r_min >= 0.0 && grid.r_min <= grid.r_max)) throw DomainError("need 0 <= r_min <= r_max");
  if (!(grid.r_max < 1.0)) throw DomainError("grid radius must be below 1");
  if (grid.n_radii < 1 || grid.n_angles < 1) throw DomainError("grid needs at least one point");
}

MinRe scan_serial(const TransformKind& kind, const AnalyticFn& F, const GridPoints& points) {
  Best best;
  const std::int64_t count = points.size();
  for (std::int64_t i = 0; i < count; ++i) {
    const Cx z = points[i];
    best.offer(evaluate(kind, F, z).real(), i, z);
  }
  return {best.value, best.z, count};
}

MinRe scan_parallel(const TransformKind& kind, const AnalyticFn& F, const GridPoints& points) {
  Best best;
  std::int64_t error_index = std::numeric_limits<std::int64_t>::max();
  std::exception_ptr error;
  const std::int64_t count = points.size();

#pragma omp parallel
  {
    Best local;
    std::int64_t local_error_index = std::numeric_limits<std::int64_t>::max();
    std::exception_ptr local_error;

#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      if (i > local_error_index) continue;
      const Cx z = points[i];
      try {
        local.offer(evaluate(kind, F, z).real(), i, z);
      } catch (...) {
        local_error_index = i;
        local_error = std::current_exception();
      }
    }

#pragma omp critical(radconc_min_re_reduce)
    {
      if (local.index != std::numeric_limits<std::int64_t>::max())
        best.offer(local.value, local.index, local.z);
      if (local_error_index < error_index) {
        error_index = local_error_index;
        error = local_error;
      }
    }
  }

  if (error) std::rethrow_exception(error);
  return {best.value, best.z, count};
}

}  // namespace

MinRe min_re_on_grid(const TransformKind& kind, const AnalyticFn& F, const PolarGrid& grid,
                     Exec exec) {
  check_grid(grid);
  const GridPoints points(grid);
  return exec == Exec::Parallel ? scan_parallel(kind, F, points) : scan_serial(kind, F, points);
}

MinRe min_re_on_circles(const TransformKind& kind, const AnalyticFn& F, double r_max, int n_radii,
                        int n_angles, Exec exec) {
  if (n_radii < 16 || n_angles < 16) throw DomainError("grid needs n_radii, n_angles >= 16");
  if (!(r_max >= 0.0)) throw DomainError("grid radius must be non-negative");
  return min_re_on_grid(kind, F, PolarGrid{0.0, r_max, n_radii, n_angles}, exec);
}

TransformKind transform_for(const RadiusQuery& query) {
  switch (query.mode) {
    case Mode::Univalence: return TransformKind::derivative();
    case Mode::Convexity: return TransformKind::convexity();
    case Mode::Concavity:
      if (query.klass == RadiusClass::Sp) return TransformKind::p_cop(*query.params.p);
      return TransformKind::t_coa(*query.params.A);
  }
  throw UsageError("unknown mode");
}

std::vector<CombinationSpec> default_fixture_set(const RadiusQuery& query) {
  query.validate();
  const auto n = static_cast<std::size_t>(query.n);
  const ClassTag tag = class_tag_of(query.klass);

  std::vector<CoefficientPair> unit_pairs;
  std::vector<CoefficientPair> skew_pairs;
  for (std::size_t j = 0; j < n; ++j) {
    unit_pairs.push_back({query.alphas[j], 1.0});
    skew_pairs.push_back({query.alphas[j], j % 2 == 0 ? 2.0 : 0.5});
  }

  auto uniform_set = [&](const FixtureVariant& variant) {
    return std::vector<AnalyticFn>(2 * n, make_fixture(tag, query.params, variant));
  };

  std::vector<CombinationSpec> out;
  switch (query.klass) {
    case RadiusClass::Sp:
      out.emplace_back(unit_pairs, uniform_set(FixtureVariant::kp()));
      break;
    case RadiusClass::CoA:
      out.emplace_back(unit_pairs, uniform_set(FixtureVariant::coa_wing()));
      break;
    case RadiusClass::S: {
      const double step = std::numbers::pi / static_cast<double>(n);
      std::vector<AnalyticFn> spread;
      std::vector<AnalyticFn> opposed;
      std::vector<AnalyticFn> mixed;
      for (std::size_t j = 0; j < 2 * n; ++j) {
        const double theta = 0.3 + step * static_cast<double>(j);
        spread.push_back(make_fixture(tag, query.params, FixtureVariant::koebe(theta)));
        const double phi = 0.7 * static_cast<double>(j / 2);
        opposed.push_back(make_fixture(
            tag, query.params, FixtureVariant::koebe(j % 2 == 0 ? phi : phi + std::numbers::pi)));
        mixed.push_back(j % 2 == 0
                            ? make_fixture(tag, query.params, FixtureVariant::koebe(theta))
                            : make_fixture(tag, query.params,
                                           FixtureVariant::quadratic(std::polar(0.5, -theta))));
      }
      out.emplace_back(unit_pairs, uniform_set(FixtureVariant::koebe(0.0)));
      out.emplace_back(unit_pairs, uniform_set(FixtureVariant::quadratic(Cx{0.5, 0.0})));
      out.emplace_back(unit_pairs, spread);
      out.emplace_back(unit_pairs, opposed);
      out.emplace_back(unit_pairs, mixed);
      out.emplace_back(skew_pairs, spread);
      break;
    }
  }
  return out;
}

VerifyReport verify_radius(const RadiusQuery& query, const std::vector<CombinationSpec>& fixtures,
                           double margin, int n_radii, int n_angles, Exec exec) {
  if (!(margin > 0.0 && margin < 1.0)) throw DomainError("margin must lie in (0, 1)");
  query.validate();
  const ClassTag tag = class_tag_of(query.klass);
  for (const auto& spec : fixtures) {
    if (spec.functions().front().class_tag() != tag)
      throw UsageError("fixture class does not match the query class");
    if (spec.n() != static_cast<std::size_t>(query.n))
      throw UsageError("fixture pair count does not match n");
  }

  VerifyReport report;
  report.query = query;
  report.margin = margin;
  report.result = radius(query);
  report.radius = report.result.radius;
  if (report.result.status != RootStatus::Found) {
    report.error = fmt::format("radius not found ({})", to_string(report.result.status));
    return report;
  }

  const TransformKind kind = transform_for(query);
  const double r_max = margin * report.radius;
  report.min_re = std::numeric_limits<double>::infinity();
  for (const auto& spec : fixtures) {
    const AnalyticFn F = combine(spec);
    try {
      const MinRe m = min_re_on_circles(kind, F, r_max, n_radii, n_angles, exec);
      report.samples += m.samples;
      if (m.min_re < report.min_re) {
        report.min_re = m.min_re;
        report.worst_z = m.worst_z;
        report.worst_fixture = spec.functions().front().name();
        if (spec.functions().size() > 1 &&
            spec.functions()[1].name() != spec.functions().front().name())
          report.worst_fixture += ",...";
      }
    } catch (const Error& e) {
      report.error = e.what();
      if (e.where()) report.worst_z = *e.where();
      report.passed = false;
      return report;
    }
  }
  report.passed = report.min_re > 0.0;
  return report;
}

std::vector<RadiusQuery> random_queries(RadiusClass klass, Mode mode, int count,
                                        std::uint64_t seed, FormulaVariant variant) {
  if (!is_supported(klass, mode))
    throw UsageError(fmt::format("no radius for class {} in mode {}", to_string(klass),
                                 to_string(mode)));
  if (count < 0) throw DomainError("query count must be non-negative");
  std::mt19937_64 rng(mix_seed(seed, 0));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<RadiusQuery> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    RadiusQuery q;
    q.klass = klass;
    q.mode = mode;
    q.variant = variant;
    q.n = 1 + static_cast<int>(3.0 * unit(rng));
    q.alphas.resize(static_cast<std::size_t>(q.n));
    for (double& a : q.alphas) a = 0.9 * std::numbers::pi * unit(rng);
    if (klass == RadiusClass::Sp) {
      q.params.p = 0.2 + 0.6 * unit(rng);
    } else {
      // 2 - u with u in [0, 1) lies in (1, 2].
      q.params.A = 2.0 - unit(rng);
    }
    out.push_back(std::move(q));
  }
  return out;
}

bool distortion_check_sp(const AnalyticFn& f, double r, int n_angles) {
  if (f.class_tag() != ClassTag::Sp || !f.params().p)
    throw UsageError("distortion check needs an S(p) function");
  const double p = *f.params().p;
  if (!(r > 0.0 && r < 1.0 - kDiskMargin)) throw DomainError("r must lie in (0, 1)");
  if (std::abs(r - p) < kTransformGuard) throw SingularityError("r is within the guard of p", Cx{r, 0.0});
  if (n_angles < 1) throw DomainError("need at least one angle");

  const AnalyticFn extremal = make_fixture(ClassTag::Sp, f.params(), FixtureVariant::kp());
  const double lower = std::abs(eval_jet(extremal, Cx{-r, 0.0}).f);
  constexpr double tol = 1e-10;
  for (int k = 0; k < n_angles; ++k) {
    const Cx z = std::polar(r, 2.0 * std::numbers::pi * k / n_angles);
    const double upper = std::abs(eval_jet(extremal, z).f);
    const double value = std::abs(eval_jet(f, z).f);
    if (value < lower - tol * std::max(1.0, lower)) return false;
    if (value > upper + tol * std::max(1.0, upper)) return false;
  }
  return true;
}

}  // namespace radconc
