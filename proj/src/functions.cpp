#include "radconc/functions.hpp"

#include <cmath>
#include <fmt/core.h>
#include <numbers>
#include <utility>

namespace radconc {

namespace {

constexpr Cx kOne{1.0, 0.0};

void require_p(const ClassParams& params) {
  if (!params.p) throw DomainError("class S(p) requires the pole parameter p");
  const double p = *params.p;
  if (!(p > 0.0 && p < 1.0)) throw DomainError("pole parameter p must lie in (0, 1)");
}

void require_A(const ClassParams& params) {
  if (!params.A) throw DomainError("class Co(A) requires the opening parameter A");
  const double A = *params.A;
  if (!(A > 1.0 && A <= 2.0)) throw DomainError("opening parameter A must lie in (1, 2]");
}

bool compatible(ClassTag tag, FixtureFamily family) {
  switch (family) {
    case FixtureFamily::Koebe:
    case FixtureFamily::Quadratic:
    case FixtureFamily::Identity: return tag == ClassTag::S || tag == ClassTag::Custom;
    case FixtureFamily::Kp: return tag == ClassTag::Sp || tag == ClassTag::Custom;
    case FixtureFamily::CoaWing: return tag == ClassTag::CoA || tag == ClassTag::Custom;
  }
  return false;
}

AnalyticFn koebe(ClassTag tag, const ClassParams& params, double theta) {
  const Cx rot = std::polar(1.0, theta);
  auto jet = [rot](Cx z) {
    const Cx u = rot * z;
    const Cx q = kOne - u;
    const Cx q2 = q * q;
    const Cx q3 = q2 * q;
    return Jet{u / q2 / rot, (kOne + u) / q3, rot * (4.0 + 2.0 * u) / (q3 * q)};
  };
  return AnalyticFn(tag, params, std::nullopt, jet, fmt::format("koebe(theta={:.6g})", theta));
}

AnalyticFn kp(ClassTag tag, const ClassParams& params) {
  require_p(params);
  const double p = *params.p;
  // -p z / ((z - p)(1 - p z)) = a/(z - p) + b/(1 - p z)
  const double c = 1.0 / (1.0 - p * p);
  const double a = -p * p * c;
  const double b = -p * c;
  auto jet = [p, a, b](Cx z) {
    const Cx s = z - p;
    const Cx t = kOne - p * z;
    const Cx f = -p * z / (s * t);
    const Cx d1 = -a / (s * s) + b * p / (t * t);
    const Cx d2 = 2.0 * a / (s * s * s) + 2.0 * b * p * p / (t * t * t);
    return Jet{f, d1, d2};
  };
  return AnalyticFn(tag, params, Cx{p, 0.0}, jet, fmt::format("kp(p={:.6g})", p));
}

AnalyticFn coa_wing(ClassTag tag, const ClassParams& params) {
  require_A(params);
  const double A = *params.A;
  auto jet = [A](Cx z) {
    const Cx w = (kOne + z) / (kOne - z);
    const Cx wA1 = std::pow(w, A - 1.0);
    const Cx f = (wA1 * w - kOne) / (2.0 * A);
    const Cx d1 = wA1 / ((kOne - z) * (kOne - z));
    const Cx d2 = d1 * (2.0 * (A - 1.0) / (kOne - z * z) + 2.0 / (kOne - z));
    return Jet{f, d1, d2};
  };
  return AnalyticFn(tag, params, Cx{1.0, 0.0}, jet, fmt::format("coa_wing(A={:.6g})", A));
}

AnalyticFn quadratic(ClassTag tag, const ClassParams& params, Cx c) {
  if (tag == ClassTag::S && std::abs(c) > 0.5)
    throw DomainError("z + c z^2 is univalent on the disk only for |c| <= 1/2");
  auto jet = [c](Cx z) { return Jet{z + c * z * z, kOne + 2.0 * c * z, 2.0 * c}; };
  return AnalyticFn(tag, params, std::nullopt, jet,
                    fmt::format("quadratic(c={:.6g}{:+.6g}i)", c.real(), c.imag()));
}

AnalyticFn identity(ClassTag tag, const ClassParams& params) {
  auto jet = [](Cx z) { return Jet{z, kOne, Cx{}}; };
  return AnalyticFn(tag, params, std::nullopt, jet, "identity");
}

}  // namespace

const char* to_string(ClassTag tag) noexcept {
  switch (tag) {
    case ClassTag::S: return "s";
    case ClassTag::Sp: return "sp";
    case ClassTag::CoA: return "coa";
    case ClassTag::Custom: return "custom";
  }
  return "unknown";
}

AnalyticFn::AnalyticFn(ClassTag tag, ClassParams params, std::optional<Cx> pole, JetFn jet,
                       std::string name, Cx derivative_at_zero)
    : tag_(tag),
      params_(params),
      pole_(pole),
      jet_(std::make_shared<const JetFn>(std::move(jet))),
      name_(std::move(name)),
      derivative_at_zero_(derivative_at_zero) {}

FixtureFamily parse_fixture_family(const std::string& name) {
  if (name == "koebe") return FixtureFamily::Koebe;
  if (name == "kp") return FixtureFamily::Kp;
  if (name == "coa_wing") return FixtureFamily::CoaWing;
  if (name == "quadratic") return FixtureFamily::Quadratic;
  if (name == "identity") return FixtureFamily::Identity;
  throw UsageError("unknown fixture variant '" + name + "'");
}

AnalyticFn make_fixture(ClassTag tag, const ClassParams& params, const FixtureVariant& variant) {
  if (tag == ClassTag::Sp) require_p(params);
  if (tag == ClassTag::CoA) require_A(params);
  if (!compatible(tag, variant.family))
    throw UsageError(fmt::format("fixture variant is not a member of class {}", to_string(tag)));

  switch (variant.family) {
    case FixtureFamily::Koebe: return koebe(tag, params, variant.theta);
    case FixtureFamily::Kp: return kp(tag, params);
    case FixtureFamily::CoaWing: return coa_wing(tag, params);
    case FixtureFamily::Quadratic: return quadratic(tag, params, variant.c);
    case FixtureFamily::Identity: return identity(tag, params);
  }
  throw UsageError("unknown fixture variant");
}

Jet eval_jet(const AnalyticFn& f, Cx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("evaluation point is not finite");
  if (std::abs(z) > 1.0 - kDiskMargin)
    throw DomainError(fmt::format("evaluation point |z| = {:.17g} is outside the unit disk cap",
                                  std::abs(z)));
  if (f.pole() && std::abs(z - *f.pole()) < kPoleExclusion)
    throw SingularityError("evaluation point lies within the pole exclusion radius", z);
  return f.jet_unchecked(z);
}

namespace {

// |1 + b e^{i alpha}|^2 written as (1 - b)^2 + 4 b cos^2(alpha/2): the direct form
// 1 + 2 b cos(alpha) + b^2 cancels catastrophically as alpha -> pi with b near 1.
double weight_denominator(double b, double half_cos) {
  return (1.0 - b) * (1.0 - b) + 4.0 * b * half_cos * half_cos;
}

}  // namespace

Cx lambda_odd(const CoefficientPair& pair) {
  const double b = pair.b;
  const double c = std::cos(pair.alpha / 2.0);
  const double den = weight_denominator(b, c);
  return {((1.0 - b) + 2.0 * b * c * c) / den, -b * std::sin(pair.alpha) / den};
}

Cx lambda_even(const CoefficientPair& pair) {
  const double b = pair.b;
  const double c = std::cos(pair.alpha / 2.0);
  const double den = weight_denominator(b, c);
  return {b * ((b - 1.0) + 2.0 * c * c) / den, b * std::sin(pair.alpha) / den};
}

CombinationSpec::CombinationSpec(std::vector<CoefficientPair> pairs,
                                 std::vector<AnalyticFn> functions)
    : pairs_(std::move(pairs)), functions_(std::move(functions)) {
  if (pairs_.empty()) throw UsageError("a combination needs at least one coefficient pair");
  if (functions_.size() != 2 * pairs_.size())
    throw UsageError(fmt::format("{} coefficient pairs need {} functions, got {}", pairs_.size(),
                                 2 * pairs_.size(), functions_.size()));
  for (const auto& pair : pairs_) {
    if (!(pair.alpha >= 0.0 && pair.alpha < std::numbers::pi))
      throw DomainError("alpha must lie in [0, pi); sec(alpha/2) is unbounded at pi");
    if (!(pair.b > 0.0 && std::isfinite(pair.b))) throw DomainError("b must lie in (0, inf)");
  }
  const auto& first = functions_.front();
  for (const auto& f : functions_) {
    if (f.class_tag() != first.class_tag() || !(f.params() == first.params()))
      throw UsageError("all functions of a combination must share class and class parameters");
    if (f.pole() != first.pole())
      throw UsageError("all functions of a combination must share their pole");
  }
  lambdas_.reserve(functions_.size());
  for (const auto& pair : pairs_) {
    lambdas_.push_back(lambda_odd(pair));
    lambdas_.push_back(lambda_even(pair));
  }
}

CombinationSpec CombinationSpec::from_lambdas(std::span<const Cx> odd_lambdas,
                                              std::vector<AnalyticFn> functions) {
  std::vector<CoefficientPair> pairs;
  pairs.reserve(odd_lambdas.size());
  for (const Cx lambda : odd_lambdas) {
    if (std::abs(lambda) == 0.0 || std::abs(kOne - lambda) == 0.0)
      throw DomainError("lambda must differ from 0 and 1");
    const Cx q = (kOne - lambda) / lambda;
    // arg is in (-pi, pi]; the constructor rejects anything outside [0, pi)
    const double alpha = std::arg(q) + 0.0;
    pairs.push_back({alpha, std::abs(q)});
  }
  return CombinationSpec(std::move(pairs), std::move(functions));
}

std::vector<double> CombinationSpec::alphas() const {
  std::vector<double> out;
  out.reserve(pairs_.size());
  for (const auto& pair : pairs_) out.push_back(pair.alpha);
  return out;
}

AnalyticFn combine(const CombinationSpec& spec) {
  auto shared = std::make_shared<const CombinationSpec>(spec);
  auto jet = [shared](Cx z) {
    Jet sum{};
    const auto& fs = shared->functions();
    const auto& ls = shared->lambdas();
    for (std::size_t j = 0; j < fs.size(); ++j) {
      const Jet part = fs[j].jet_unchecked(z);
      sum.f += ls[j] * part.f;
      sum.d1 += ls[j] * part.d1;
      sum.d2 += ls[j] * part.d2;
    }
    return sum;
  };
  Cx derivative_at_zero{};
  for (std::size_t j = 0; j < spec.functions().size(); ++j)
    derivative_at_zero += spec.lambdas()[j] * spec.functions()[j].derivative_at_zero();

  const auto& first = spec.functions().front();
  AnalyticFn out(first.class_tag(), first.params(), first.pole(), std::move(jet),
                 fmt::format("combination(n={})", spec.n()), derivative_at_zero);
  out.combination_ = std::move(shared);
  return out;
}

}  // namespace radconc
