#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "radconc/errors.hpp"

namespace radconc {

/// Value and first two derivatives at a point.
struct Jet {
  Cx f;
  Cx d1;
  Cx d2;
};

enum class ClassTag { S, Sp, CoA, Custom };

const char* to_string(ClassTag tag) noexcept;

/// Class parameters: the pole location p for S(p), the opening A for Co(A).
struct ClassParams {
  std::optional<double> p;
  std::optional<double> A;

  friend bool operator==(const ClassParams&, const ClassParams&) = default;
};

/// Distance from a pole below which evaluation is refused.
inline constexpr double kPoleExclusion = 1e-9;
/// Evaluation is capped at |z| <= 1 - kDiskMargin.
inline constexpr double kDiskMargin = 1e-9;

class CombinationSpec;

/// An analytic or meromorphic function on the unit disk with jet access.
///
/// Instances are immutable and cheap to copy (the evaluator is shared), so the
/// same function may be evaluated from many threads at once.
class AnalyticFn {
 public:
  using JetFn = std::function<Jet(Cx)>;

  AnalyticFn(ClassTag tag, ClassParams params, std::optional<Cx> pole, JetFn jet,
             std::string name, Cx derivative_at_zero = Cx{1.0, 0.0});

  ClassTag class_tag() const noexcept { return tag_; }
  const ClassParams& params() const noexcept { return params_; }
  const std::optional<Cx>& pole() const noexcept { return pole_; }
  const std::string& name() const noexcept { return name_; }
  /// F'(0) as recorded at construction; combinations are not renormalized.
  Cx derivative_at_zero() const noexcept { return derivative_at_zero_; }

  /// Set when this function was produced by combine().
  const std::shared_ptr<const CombinationSpec>& combination() const noexcept {
    return combination_;
  }

  /// Jet without domain guards; callers must have validated z.
  Jet jet_unchecked(Cx z) const { return (*jet_)(z); }

 private:
  friend AnalyticFn combine(const CombinationSpec& spec);

  ClassTag tag_;
  ClassParams params_;
  std::optional<Cx> pole_;
  std::shared_ptr<const JetFn> jet_;
  std::string name_;
  Cx derivative_at_zero_;
  std::shared_ptr<const CombinationSpec> combination_;
};

enum class FixtureFamily { Koebe, Kp, CoaWing, Quadratic, Identity };

/// Selects a built-in function. `theta` rotates the Koebe function,
/// `c` is the z^2 coefficient of the quadratic z + c z^2.
struct FixtureVariant {
  FixtureFamily family = FixtureFamily::Koebe;
  double theta = 0.0;
  Cx c{0.5, 0.0};

  static FixtureVariant koebe(double theta = 0.0) { return {FixtureFamily::Koebe, theta, {}}; }
  static FixtureVariant kp() { return {FixtureFamily::Kp, 0.0, {}}; }
  static FixtureVariant coa_wing() { return {FixtureFamily::CoaWing, 0.0, {}}; }
  static FixtureVariant quadratic(Cx c) { return {FixtureFamily::Quadratic, 0.0, c}; }
  static FixtureVariant identity() { return {FixtureFamily::Identity, 0.0, {}}; }
};

/// Parses "koebe", "kp", "coa_wing", "quadratic", "identity"; throws UsageError otherwise.
FixtureFamily parse_fixture_family(const std::string& name);

/// Builds a normalized fixture (f(0) = 0, f'(0) = 1).
///
///   koebe(theta)  e^{-i theta} k(e^{i theta} z), k(z) = z/(1-z)^2       (class S)
///   kp            -p z / ((z - p)(1 - p z)), simple pole at p            (class S(p))
///   coa_wing      (((1+z)/(1-z))^A - 1) / (2A), principal branch          (class Co(A))
///   quadratic(c)  z + c z^2, univalent for |c| <= 1/2                     (class S)
///   identity      z                                                       (class S)
///
/// Throws DomainError for out-of-range class parameters and UsageError when the
/// variant does not belong to the requested class.
AnalyticFn make_fixture(ClassTag tag, const ClassParams& params, const FixtureVariant& variant);

/// Guarded jet: DomainError for |z| > 1 - kDiskMargin, SingularityError within
/// kPoleExclusion of the pole.
Jet eval_jet(const AnalyticFn& f, Cx z);

/// One (alpha_j, b_j) pair of the combination; lambda_{2j-1} = 1/(1 + b e^{i alpha}),
/// lambda_{2j} = 1/(1 + b^{-1} e^{-i alpha}).
struct CoefficientPair {
  double alpha = 0.0;
  double b = 1.0;
};

Cx lambda_odd(const CoefficientPair& pair);
Cx lambda_even(const CoefficientPair& pair);

/// n coefficient pairs and the 2n weighted functions of F = sum lambda_j f_j.
class CombinationSpec {
 public:
  /// Throws DomainError for alpha outside [0, pi) or b <= 0, UsageError when the
  /// function count is not 2n or the functions disagree on class or parameters.
  CombinationSpec(std::vector<CoefficientPair> pairs, std::vector<AnalyticFn> functions);

  /// Convenience constructor from the odd-slot weights lambda_{2j-1}. Each weight is
  /// inverted through (1 - lambda)/lambda = b e^{i alpha}; the resulting alpha must
  /// lie in [0, pi).
  static CombinationSpec from_lambdas(std::span<const Cx> odd_lambdas,
                                      std::vector<AnalyticFn> functions);

  std::size_t n() const noexcept { return pairs_.size(); }
  const std::vector<CoefficientPair>& pairs() const noexcept { return pairs_; }
  const std::vector<AnalyticFn>& functions() const noexcept { return functions_; }
  /// The 2n weights in function order.
  const std::vector<Cx>& lambdas() const noexcept { return lambdas_; }
  std::vector<double> alphas() const;

 private:
  std::vector<CoefficientPair> pairs_;
  std::vector<AnalyticFn> functions_;
  std::vector<Cx> lambdas_;
};

/// F = sum lambda_j f_j. F'(0) = n is kept; F is not renormalized.
AnalyticFn combine(const CombinationSpec& spec);

}  // namespace radconc
