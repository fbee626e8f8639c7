#pragma once

#include <vector>

#include "radconc/functions.hpp"

namespace radconc {

/// |F'(z)| at or below this is reported as a critical point.
inline constexpr double kCriticalDerivative = 1e-12;
/// Absolute guard around z = p (P transform) and z = 1 (T transform).
inline constexpr double kTransformGuard = 1e-6;

/// Which positivity quantity to evaluate.
///
///   LogDerivRatio  z F''/F'
///   Convexity      1 + z F''/F'
///   TCoA           T_F with opening A
///   PCoP           P_F with pole p
///   Derivative     F'(z)/F'(0); positive real part gives univalence
struct TransformKind {
  enum class Tag { LogDerivRatio, Convexity, TCoA, PCoP, Derivative };

  Tag tag = Tag::Convexity;
  double param = 0.0;

  static TransformKind log_deriv_ratio() { return {Tag::LogDerivRatio, 0.0}; }
  static TransformKind convexity() { return {Tag::Convexity, 0.0}; }
  static TransformKind t_coa(double A);
  static TransformKind p_cop(double p);
  static TransformKind derivative() { return {Tag::Derivative, 0.0}; }
};

const char* to_string(TransformKind::Tag tag) noexcept;

/// z F''(z)/F'(z) by the direct quotient.
Cx log_deriv_ratio(const AnalyticFn& F, Cx z);

/// Direct quotient next to the term-by-term form
///   sum_t (z f_t''/f_t') (sum_s A_ts^{-1})^{-1},  A_ts = (lambda_t f_t')/(lambda_s f_s').
struct LogDerivDecomposition {
  Cx direct;
  Cx decomposed;
  double discrepancy;  // |direct - decomposed|
};

/// Requires F to come from combine(); throws UsageError otherwise.
LogDerivDecomposition log_deriv_ratio_decomposed(const AnalyticFn& F, Cx z);

Cx convexity_operator(const AnalyticFn& F, Cx z);

/// (2/(A-1)) ((A+1)/2 (1+z)/(1-z) - 1 - z F''/F').
Cx t_transform(const AnalyticFn& F, Cx z, double A);

/// -(1 + z F''/F' + (z+p)/(z-p) - (1+pz)/(1-pz)).
Cx p_transform(const AnalyticFn& F, Cx z, double p);

/// F'(z) / F'(0).
Cx normalized_derivative(const AnalyticFn& F, Cx z);

Cx evaluate(const TransformKind& kind, const AnalyticFn& F, Cx z);

/// P_F along z = p - h for decreasing h; the limit at z = p is not asserted.
struct LimitProbe {
  std::vector<double> offsets;
  std::vector<Cx> values;
};

LimitProbe p_transform_limit_probe(const AnalyticFn& F, double p, int steps = 6);

}  // namespace radconc
