#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "radconc/functions.hpp"

using namespace radconc;

namespace {

const ClassParams kNone{};
const ClassParams kPole{0.4, std::nullopt};
const ClassParams kOpening{std::nullopt, 1.6};

std::vector<AnalyticFn> all_fixtures() {
  return {make_fixture(ClassTag::S, kNone, FixtureVariant::koebe(0.0)),
          make_fixture(ClassTag::S, kNone, FixtureVariant::koebe(1.3)),
          make_fixture(ClassTag::S, kNone, FixtureVariant::quadratic({0.3, -0.2})),
          make_fixture(ClassTag::S, kNone, FixtureVariant::identity()),
          make_fixture(ClassTag::Sp, kPole, FixtureVariant::kp()),
          make_fixture(ClassTag::CoA, kOpening, FixtureVariant::coa_wing())};
}

Cx random_point(std::mt19937_64& rng, double r_max) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(r_max * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

}  // namespace

TEST_CASE("fixtures are normalized at the origin") {
  for (const auto& f : all_fixtures()) {
    CAPTURE(f.name());
    const Jet j = eval_jet(f, Cx{});
    CHECK(std::abs(j.f) < 1e-15);
    CHECK(std::abs(j.d1 - 1.0) < 1e-14);
  }
}

TEST_CASE("fixture values match closed forms") {
  const double r = 0.3;
  const Jet k = eval_jet(make_fixture(ClassTag::S, kNone, FixtureVariant::koebe()), Cx{r, 0.0});
  CHECK(std::abs(k.f - r / ((1 - r) * (1 - r))) < 1e-15);
  CHECK(std::abs(k.d1 - (1 + r) / std::pow(1 - r, 3)) < 1e-14);

  // e^{-i t} k(e^{i t} z) at z = e^{-i t} r equals e^{-i t} k(r)
  const double t = 0.8;
  const Jet rot = eval_jet(make_fixture(ClassTag::S, kNone, FixtureVariant::koebe(t)),
                           std::polar(r, -t));
  CHECK(std::abs(rot.f - std::polar(1.0, -t) * k.f) < 1e-14);

  const double p = *kPole.p;
  const Jet kp = eval_jet(make_fixture(ClassTag::Sp, kPole, FixtureVariant::kp()), Cx{-r, 0.0});
  CHECK(std::abs(kp.f - (p * r) / ((-r - p) * (1 + p * r))) < 1e-15);

  const double A = *kOpening.A;
  const Jet w = eval_jet(make_fixture(ClassTag::CoA, kOpening, FixtureVariant::coa_wing()),
                         Cx{r, 0.0});
  CHECK(std::abs(w.f - (std::pow((1 + r) / (1 - r), A) - 1) / (2 * A)) < 1e-14);
}

TEST_CASE("jets agree with finite differences") {
  std::mt19937_64 rng(11);
  const double h = 1e-5;
  for (const auto& f : all_fixtures()) {
    CAPTURE(f.name());
    for (int i = 0; i < 200; ++i) {
      Cx z = random_point(rng, 0.6);
      if (f.pole() && std::abs(z - *f.pole()) < 0.15) continue;
      const Jet j = eval_jet(f, z);
      const Cx d1 = (eval_jet(f, z + h).f - eval_jet(f, z - h).f) / (2 * h);
      const Cx d2 = (eval_jet(f, z + h).d1 - eval_jet(f, z - h).d1) / (2 * h);
      // central differences: O(h^2 |f'''|) truncation plus O(eps/h) round-off
      CHECK(std::abs(d1 - j.d1) <= 1e-6 * std::max(1.0, std::abs(j.d1)));
      CHECK(std::abs(d2 - j.d2) <= 1e-6 * std::max(1.0, std::abs(j.d2)));
    }
  }
}

TEST_CASE("evaluation guards") {
  const auto k = make_fixture(ClassTag::S, kNone, FixtureVariant::koebe());
  CHECK_THROWS_AS(eval_jet(k, Cx{1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(eval_jet(k, Cx{0.0, 1.0 - 1e-10}), DomainError);
  CHECK_THROWS_AS(eval_jet(k, Cx{std::nan(""), 0.0}), DomainError);

  const auto kp = make_fixture(ClassTag::Sp, kPole, FixtureVariant::kp());
  try {
    eval_jet(kp, Cx{0.4 + 1e-10, 0.0});
    FAIL("expected a singularity error");
  } catch (const SingularityError& e) {
    REQUIRE(e.where());
    CHECK(std::abs(*e.where() - 0.4) < 1e-9);
  }
  CHECK_NOTHROW(eval_jet(kp, Cx{0.4 + 1e-6, 0.0}));
}

TEST_CASE("fixture construction is validated") {
  CHECK_THROWS_AS(make_fixture(ClassTag::S, kNone, FixtureVariant::quadratic({0.6, 0.0})),
                  DomainError);
  CHECK_NOTHROW(make_fixture(ClassTag::S, kNone, FixtureVariant::quadratic({0.0, 0.5})));
  CHECK_NOTHROW(make_fixture(ClassTag::Custom, kNone, FixtureVariant::quadratic({1.0, 0.0})));
  CHECK_THROWS_AS(make_fixture(ClassTag::S, kNone, FixtureVariant::kp()), UsageError);
  CHECK_THROWS_AS(make_fixture(ClassTag::Sp, kNone, FixtureVariant::kp()), DomainError);
  CHECK_THROWS_AS(make_fixture(ClassTag::Sp, {1.0, std::nullopt}, FixtureVariant::kp()),
                  DomainError);
  CHECK_THROWS_AS(make_fixture(ClassTag::CoA, {std::nullopt, 2.5}, FixtureVariant::coa_wing()),
                  DomainError);
  CHECK_THROWS_AS(make_fixture(ClassTag::CoA, {std::nullopt, 1.0}, FixtureVariant::coa_wing()),
                  DomainError);
  CHECK(parse_fixture_family("coa_wing") == FixtureFamily::CoaWing);
  CHECK_THROWS_AS(parse_fixture_family("mobius"), UsageError);
}

TEST_CASE("pair weights sum to one") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> alpha(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> logb(std::log(0.01), std::log(100.0));
  for (int i = 0; i < 10000; ++i) {
    const CoefficientPair pair{alpha(rng), i % 4 == 0 ? 1.0 : std::exp(logb(rng))};
    const Cx lo = lambda_odd(pair);
    const Cx le = lambda_even(pair);
    CHECK(std::abs(lo + le - 1.0) <= 1e-12);
    // the defining quotients, where they are well conditioned
    if (std::abs(1.0 + pair.b * std::polar(1.0, pair.alpha)) > 1e-2) {
      const Cx direct_odd = 1.0 / (1.0 + pair.b * std::polar(1.0, pair.alpha));
      const Cx direct_even = 1.0 / (1.0 + std::polar(1.0 / pair.b, -pair.alpha));
      CHECK(std::abs(lo - direct_odd) <= 1e-12 * std::abs(direct_odd));
      CHECK(std::abs(le - direct_even) <= 1e-12 * std::abs(direct_even));
    }
  }
}

TEST_CASE("b = 1 weights have real part one half") {
  for (double a : {0.0, 0.5, 2.0, 3.14}) {
    const CoefficientPair pair{a, 1.0};
    CHECK(lambda_odd(pair).real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(lambda_odd(pair).imag() == doctest::Approx(-std::tan(a / 2) / 2).epsilon(1e-12));
  }
}

TEST_CASE("combination of equal functions is n times the function") {
  const auto k = make_fixture(ClassTag::S, kNone, FixtureVariant::koebe(0.4));
  const CombinationSpec spec({{0.3, 2.0}, {2.9, 0.1}, {1.0, 1.0}}, std::vector<AnalyticFn>(6, k));
  const AnalyticFn F = combine(spec);
  CHECK(std::abs(F.derivative_at_zero() - 3.0) < 1e-12);
  const Cx z{0.2, -0.35};
  const Jet a = eval_jet(F, z);
  const Jet b = eval_jet(k, z);
  CHECK(std::abs(a.f - 3.0 * b.f) < 1e-12 * std::abs(b.f));
  CHECK(std::abs(a.d1 - 3.0 * b.d1) < 1e-12 * std::abs(b.d1));
  CHECK(std::abs(a.d2 - 3.0 * b.d2) < 1e-12 * std::abs(b.d2));
  REQUIRE(F.combination());
  CHECK(F.combination()->n() == 3);
}

TEST_CASE("combination is the weighted sum") {
  const std::vector<AnalyticFn> fs = {
      make_fixture(ClassTag::S, kNone, FixtureVariant::koebe(0.1)),
      make_fixture(ClassTag::S, kNone, FixtureVariant::quadratic({-0.5, 0.0}))};
  const CoefficientPair pair{1.2, 0.7};
  const AnalyticFn F = combine(CombinationSpec({pair}, fs));
  const Cx z{-0.3, 0.1};
  const Cx expected = lambda_odd(pair) * eval_jet(fs[0], z).f + lambda_even(pair) * eval_jet(fs[1], z).f;
  CHECK(std::abs(eval_jet(F, z).f - expected) < 1e-15);
}

TEST_CASE("combination validation") {
  const auto k = make_fixture(ClassTag::S, kNone, FixtureVariant::koebe());
  const auto kp = make_fixture(ClassTag::Sp, kPole, FixtureVariant::kp());
  const auto kp2 = make_fixture(ClassTag::Sp, {0.5, std::nullopt}, FixtureVariant::kp());
  CHECK_THROWS_AS(CombinationSpec({{0.0, 1.0}}, {k}), UsageError);
  CHECK_THROWS_AS(CombinationSpec({{std::numbers::pi, 1.0}}, {k, k}), DomainError);
  CHECK_THROWS_AS(CombinationSpec({{-0.1, 1.0}}, {k, k}), DomainError);
  CHECK_THROWS_AS(CombinationSpec({{0.0, 0.0}}, {k, k}), DomainError);
  CHECK_THROWS_AS(CombinationSpec({{0.0, 1.0}}, {k, kp}), UsageError);
  CHECK_THROWS_AS(CombinationSpec({{0.0, 1.0}}, {kp, kp2}), UsageError);
  CHECK_THROWS_AS(CombinationSpec({}, {}), UsageError);
}

TEST_CASE("from_lambdas inverts the weight map") {
  const auto k = make_fixture(ClassTag::S, kNone, FixtureVariant::koebe());
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> alpha(0.0, 3.0);
  std::uniform_real_distribution<double> logb(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const CoefficientPair pair{alpha(rng), std::exp(logb(rng))};
    const Cx lambda = lambda_odd(pair);
    const auto spec = CombinationSpec::from_lambdas(std::span<const Cx>(&lambda, 1), {k, k});
    CHECK(spec.pairs()[0].alpha == doctest::Approx(pair.alpha).epsilon(1e-10));
    CHECK(spec.pairs()[0].b == doctest::Approx(pair.b).epsilon(1e-10));
  }
  // Re lambda = 1/2 is exactly the b = 1 family
  const Cx half{0.5, -0.25};
  const auto spec = CombinationSpec::from_lambdas(std::span<const Cx>(&half, 1), {k, k});
  CHECK(spec.pairs()[0].b == doctest::Approx(1.0).epsilon(1e-15));
  const Cx bad{0.5, 0.25};  // alpha would be negative
  CHECK_THROWS_AS(CombinationSpec::from_lambdas(std::span<const Cx>(&bad, 1), {k, k}), DomainError);
}
