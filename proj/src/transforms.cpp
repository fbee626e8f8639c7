#include "radconc/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/core.h>

namespace radconc {

namespace {

constexpr Cx kOne{1.0, 0.0};

Jet checked_jet(const AnalyticFn& F, Cx z) {
  const Jet jet = eval_jet(F, z);
  if (std::abs(jet.d1) <= kCriticalDerivative)
    throw CriticalPointError(
        fmt::format("F' vanishes at z = {:.12g}{:+.12g}i", z.real(), z.imag()), z);
  return jet;
}

void check_A(double A) {
  if (!(A > 1.0 && A <= 2.0)) throw DomainError("opening parameter A must lie in (1, 2]");
}

void check_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("pole parameter p must lie in (0, 1)");
}

}  // namespace

TransformKind TransformKind::t_coa(double A) {
  check_A(A);
  return {Tag::TCoA, A};
}

TransformKind TransformKind::p_cop(double p) {
  check_p(p);
  return {Tag::PCoP, p};
}

const char* to_string(TransformKind::Tag tag) noexcept {
  switch (tag) {
    case TransformKind::Tag::LogDerivRatio: return "log-deriv-ratio";
    case TransformKind::Tag::Convexity: return "convexity";
    case TransformKind::Tag::TCoA: return "t-transform";
    case TransformKind::Tag::PCoP: return "p-transform";
    case TransformKind::Tag::Derivative: return "derivative";
  }
  return "unknown";
}

Cx log_deriv_ratio(const AnalyticFn& F, Cx z) {
  const Jet jet = checked_jet(F, z);
  return z * jet.d2 / jet.d1;
}

LogDerivDecomposition log_deriv_ratio_decomposed(const AnalyticFn& F, Cx z) {
  const auto& spec = F.combination();
  if (!spec) throw UsageError("decomposition needs a function built by combine()");

  const Cx direct = log_deriv_ratio(F, z);

  const auto& fs = spec->functions();
  const auto& ls = spec->lambdas();
  std::vector<Jet> jets;
  jets.reserve(fs.size());
  for (const auto& f : fs) {
    const Jet jet = eval_jet(f, z);
    if (std::abs(jet.d1) <= kCriticalDerivative)
      throw CriticalPointError("a component derivative vanishes; decomposition undefined", z);
    jets.push_back(jet);
  }

  Cx decomposed{};
  for (std::size_t t = 0; t < fs.size(); ++t) {
    Cx inverse_sum{};
    for (std::size_t s = 0; s < fs.size(); ++s) {
      if (s == t) {
        inverse_sum += kOne;
        continue;
      }
      const Cx a_ts = (ls[t] * jets[t].d1) / (ls[s] * jets[s].d1);
      inverse_sum += kOne / a_ts;
    }
    decomposed += (z * jets[t].d2 / jets[t].d1) / inverse_sum;
  }
  return {direct, decomposed, std::abs(direct - decomposed)};
}

Cx convexity_operator(const AnalyticFn& F, Cx z) { return kOne + log_deriv_ratio(F, z); }

Cx t_transform(const AnalyticFn& F, Cx z, double A) {
  check_A(A);
  if (std::abs(kOne - z) < kTransformGuard)
    throw SingularityError("T transform is singular at z = 1", z);
  const Cx ratio = log_deriv_ratio(F, z);
  return (2.0 / (A - 1.0)) * ((A + 1.0) / 2.0 * (kOne + z) / (kOne - z) - kOne - ratio);
}

Cx p_transform(const AnalyticFn& F, Cx z, double p) {
  check_p(p);
  if (std::abs(z - p) < kTransformGuard)
    throw SingularityError("P transform is singular at z = p", z);
  const Cx ratio = log_deriv_ratio(F, z);
  return -(kOne + ratio + (z + p) / (z - p) - (kOne + p * z) / (kOne - p * z));
}

Cx normalized_derivative(const AnalyticFn& F, Cx z) {
  const Jet jet = checked_jet(F, z);
  return jet.d1 / F.derivative_at_zero();
}

Cx evaluate(const TransformKind& kind, const AnalyticFn& F, Cx z) {
  switch (kind.tag) {
    case TransformKind::Tag::LogDerivRatio: return log_deriv_ratio(F, z);
    case TransformKind::Tag::Convexity: return convexity_operator(F, z);
    case TransformKind::Tag::TCoA: return t_transform(F, z, kind.param);
    case TransformKind::Tag::PCoP: return p_transform(F, z, kind.param);
    case TransformKind::Tag::Derivative: return normalized_derivative(F, z);
  }
  throw UsageError("unknown transform kind");
}

LimitProbe p_transform_limit_probe(const AnalyticFn& F, double p, int steps) {
  check_p(p);
  LimitProbe probe;
  double h = std::min(1e-1, p / 2.0);
  for (int i = 0; i < steps && h >= 10.0 * kTransformGuard; ++i, h /= 10.0) {
    probe.offsets.push_back(h);
    probe.values.push_back(p_transform(F, Cx{p - h, 0.0}, p));
  }
  return probe;
}

}  // namespace radconc
