#include "radconc/radii.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/core.h>
#include <numbers>

namespace radconc {

namespace {

double require_p(const ClassParams& params) {
  if (!params.p) throw DomainError("class sp requires --p");
  const double p = *params.p;
  if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in the open interval (0, 1)");
  return p;
}

double require_A(const ClassParams& params) {
  if (!params.A) throw DomainError("this query requires --A");
  const double A = *params.A;
  if (!(A > 1.0 && A <= 2.0)) throw DomainError("A must lie in (1, 2]");
  return A;
}

bool sums_all_alphas(const RadiusQuery& q) {
  return q.klass == RadiusClass::S && q.mode == Mode::Concavity &&
         q.variant == FormulaVariant::AsStated;
}

double query_sec_sum(const RadiusQuery& q) { return sec_sum(q.alphas); }

// r -> (p - r)/(1 - p r) + (1 - p r)/(p - r), the S(p) distortion factor.
double sp_factor(double p, double r) {
  return (p - r) / (1.0 - p * r) + (1.0 - p * r) / (p - r);
}

}  // namespace

const char* to_string(RadiusClass klass) noexcept {
  switch (klass) {
    case RadiusClass::S: return "s";
    case RadiusClass::Sp: return "sp";
    case RadiusClass::CoA: return "coa";
  }
  return "unknown";
}

const char* to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::Univalence: return "univalence";
    case Mode::Convexity: return "convexity";
    case Mode::Concavity: return "concavity";
  }
  return "unknown";
}

const char* to_string(FormulaVariant variant) noexcept {
  return variant == FormulaVariant::AsProof ? "as-proof" : "as-stated";
}

RadiusClass parse_radius_class(const std::string& text) {
  if (text == "s") return RadiusClass::S;
  if (text == "sp") return RadiusClass::Sp;
  if (text == "coa") return RadiusClass::CoA;
  throw UsageError("unknown class '" + text + "' (expected s, sp or coa)");
}

Mode parse_mode(const std::string& text) {
  if (text == "univalence") return Mode::Univalence;
  if (text == "convexity") return Mode::Convexity;
  if (text == "concavity") return Mode::Concavity;
  throw UsageError("unknown mode '" + text + "' (expected univalence, convexity or concavity)");
}

FormulaVariant parse_variant(const std::string& text) {
  if (text == "as-proof") return FormulaVariant::AsProof;
  if (text == "as-stated") return FormulaVariant::AsStated;
  throw UsageError("unknown variant '" + text + "' (expected as-proof or as-stated)");
}

ClassTag class_tag_of(RadiusClass klass) noexcept {
  switch (klass) {
    case RadiusClass::S: return ClassTag::S;
    case RadiusClass::Sp: return ClassTag::Sp;
    case RadiusClass::CoA: return ClassTag::CoA;
  }
  return ClassTag::Custom;
}

bool is_supported(RadiusClass klass, Mode mode) noexcept {
  switch (klass) {
    case RadiusClass::S: return mode == Mode::Concavity;
    case RadiusClass::Sp:
    case RadiusClass::CoA: return true;
  }
  return false;
}

void RadiusQuery::validate() const {
  if (n < 1) throw DomainError("n must be a positive integer");
  const auto count = alphas.size();
  const auto un = static_cast<std::size_t>(n);
  if (count != un && !(sums_all_alphas(*this) && count == 2 * un))
    throw UsageError(fmt::format("expected {} alpha values for n = {}, got {}", n, n, count));
  for (double a : alphas) {
    if (!(a >= 0.0 && a < std::numbers::pi))
      throw DomainError(fmt::format(
          "alpha = {} is outside [0, pi): the upper bound pi is open because sec(alpha/2) "
          "diverges there",
          a));
  }
  if (!is_supported(klass, mode))
    throw UsageError(fmt::format("no radius for class {} in mode {}", to_string(klass),
                                 to_string(mode)));
  switch (klass) {
    case RadiusClass::S: require_A(params); break;
    case RadiusClass::Sp: require_p(params); break;
    case RadiusClass::CoA: require_A(params); break;
  }
  if (rho && !(*rho > 0.0 && std::isfinite(*rho))) throw DomainError("rho must be positive");
}

double sec_sum(std::span<const double> alphas) {
  double sum = 0.0;
  for (double a : alphas) {
    if (!(a >= 0.0 && a < std::numbers::pi))
      throw DomainError("alpha must lie in [0, pi); sec(alpha/2) diverges at pi");
    sum += 1.0 / std::cos(a / 2.0);
  }
  return sum;
}

double univalence_radius(int n, std::span<const double> alphas, double rho) {
  if (n < 1) throw DomainError("n must be a positive integer");
  if (alphas.size() != static_cast<std::size_t>(n))
    throw UsageError("univalence radius needs exactly n alpha values");
  if (!(rho > 0.0)) throw DomainError("rho must be positive");
  const double s = sec_sum(alphas);
  const double dn = n;
  // s - sqrt(s^2 - n^2) == n^2 / (s + sqrt(s^2 - n^2)), without the cancellation
  const double disc = std::sqrt(std::max(0.0, s * s - dn * dn));
  return rho * dn / (s + disc);
}

double default_rho_coa(double A) {
  if (!(A > 1.0 && A <= 2.0)) throw DomainError("A must lie in (1, 2]");
  return std::sin(std::numbers::pi / (4.0 * A));
}

double default_rho_sp(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0, 1)");
  const double k = std::exp(std::numbers::pi / 4.0);
  const double a = p * (k + 1.0);
  const double b = -k * (1.0 + p * p);
  const double c = p * (k - 1.0);
  const double disc = std::sqrt(b * b - 4.0 * a * c);
  return 2.0 * c / (-b + disc);
}

double default_rho(RadiusClass klass, const ClassParams& params) {
  switch (klass) {
    case RadiusClass::Sp: return default_rho_sp(require_p(params));
    case RadiusClass::CoA: return default_rho_coa(require_A(params));
    case RadiusClass::S: break;
  }
  throw UsageError("no default univalence scale for class s");
}

namespace {

/// (A + 3 - 4n)/(A - 1), grouped as ((A - 1) - 4(n - 1))/(A - 1): for A near 1
/// the naive numerator loses ulp(4)/(A - 1), while A - 1 is exact here.
double proof_quadratic(double A, double n) { return ((A - 1.0) - 4.0 * (n - 1.0)) / (A - 1.0); }

}  // namespace

PolyR build_radius_polynomial(const RadiusQuery& query) {
  query.validate();
  const double s = query_sec_sum(query);
  const double n = query.n;
  const bool as_stated = query.variant == FormulaVariant::AsStated;

  switch (query.mode) {
    case Mode::Univalence:
      throw UsageError("univalence radii are closed-form; there is no radius polynomial");

    case Mode::Convexity:
      if (query.klass == RadiusClass::CoA) {
        const double A = *query.params.A;
        return PolyR({1.0, -2.0 * A * s, 2.0 * n - 1.0});
      } else {
        const double p = *query.params.p;
        const double q = 1.0 + p * p;
        const double cubic =
            as_stated ? 1.0 - 2.0 * n + p * p - 2.0 * n * p * p + q * s : q * (1.0 - 2.0 * n - 2.0 * s);
        return PolyR({p, -q * (1.0 + 2.0 * s), 2.0 * p * (n + 4.0 * s), cubic, p * (2.0 * n - 1.0)});
      }

    case Mode::Concavity:
      break;
  }

  switch (query.klass) {
    case RadiusClass::S: {
      const double A = *query.params.A;
      return PolyR({1.0, -2.0 / (A - 1.0) * (A + 1.0 + 4.0 * s), proof_quadratic(A, n)});
    }
    case RadiusClass::CoA: {
      const double A = *query.params.A;
      const double quad = as_stated ? (A - 5.0) / (A - 1.0) : proof_quadratic(A, n);
      return PolyR({1.0, -2.0 / (A - 1.0) * (A + 1.0 + 2.0 * A * s), quad});
    }
    case RadiusClass::Sp: {
      const double p = *query.params.p;
      const double p2 = p * p;
      const double p4 = p2 * p2;
      const double pq = p * (1.0 + p2);  // p^3 + p
      const double c0 = p2;
      const double c2 = (p4 + 1.0) * (1.0 - 2.0 * s) - p2 * (1.0 + 2.0 * n - 4.0 * s);
      const double c3 = (4.0 + 4.0 * s) * pq;
      const double c5 = -2.0 * pq * (1.0 + s);
      const double c6 = (3.0 - 2.0 * n) * p2;
      if (as_stated) {
        const double c1 = -2.0 * p * (1.0 + p2 + 2.0 * s);
        const double c4 = (2.0 * n - 1.0 - 2.0 * s) - p2 * (3.0 - 4.0 * s) + 2.0 * n - 1.0;
        return PolyR({c0, c1, c2, c3, c4, c5, c6});
      }
      const double c1 = -2.0 * pq * (1.0 + s);
      const double c4 = (1.0 + p4) * (2.0 * n - 1.0 - 2.0 * s) + p2 * (4.0 * s - 3.0);
      return PolyR({c0, c1, c2, c3, c4, c5, c6});
    }
  }
  throw UsageError("unsupported radius query");
}

double lower_bound(const RadiusQuery& query, double r) {
  const double s = query_sec_sum(query);
  const double n = query.n;
  const double q = 1.0 - r * r;

  switch (query.mode) {
    case Mode::Univalence: {
      const double rho = query.rho ? *query.rho : default_rho(query.klass, query.params);
      return (n * r * r - 2.0 * r * rho * s + n * rho * rho) / (rho * rho - r * r);
    }
    case Mode::Convexity:
      if (query.klass == RadiusClass::CoA) {
        const double A = *query.params.A;
        return 1.0 + 2.0 * n * r * r / q - 2.0 * A * r / q * s;
      } else {
        const double p = *query.params.p;
        return 1.0 + 2.0 * n * r * r / q - 2.0 * r / q * sp_factor(p, r) * s;
      }
    case Mode::Concavity:
      break;
  }

  switch (query.klass) {
    case RadiusClass::S:
    case RadiusClass::CoA: {
      const double A = *query.params.A;
      const double spread = query.klass == RadiusClass::S ? 4.0 : 2.0 * A;
      return 2.0 / (A - 1.0) *
             ((A + 1.0) / 2.0 * (1.0 - r) / (1.0 + r) - 1.0 - 2.0 * n * r * r / q -
              spread * r / q * s);
    }
    case RadiusClass::Sp: {
      const double p = *query.params.p;
      return 2.0 * p * q / ((p + r) * (1.0 + p * r)) - 1.0 - 2.0 * n * r * r / q -
             2.0 * r / q * sp_factor(p, r) * s;
    }
  }
  throw UsageError("unsupported radius query");
}

Bracket radius_bracket(const RadiusQuery& query) {
  if (query.mode == Mode::Univalence)
    return {0.0, query.rho ? *query.rho : default_rho(query.klass, query.params)};
  if (query.klass == RadiusClass::Sp) return {0.0, require_p(query.params)};
  return {0.0, 1.0};
}

RadiusResult radius(const RadiusQuery& query, double tol) {
  query.validate();
  const Bracket bracket = radius_bracket(query);

  if (query.mode == Mode::Univalence) {
    RadiusResult out;
    out.radius = univalence_radius(query.n, query.alphas, bracket.hi);
    out.bracket = bracket;
    out.status = RootStatus::Found;
    out.source = RadiusSource::ClosedForm;
    const double s = sec_sum(query.alphas);
    const double rho = bracket.hi;
    const PolyR quadratic({query.n * rho * rho, -2.0 * rho * s, static_cast<double>(query.n)});
    const RadiusResult check = smallest_positive_root(quadratic, bracket, tol);
    if (check.status == RootStatus::Found) {
      out.crosscheck_radius = check.radius;
      out.crosscheck_disagrees = std::abs(check.radius - out.radius) > kCrosscheckTol;
    }
    return out;
  }

  const PolyR poly = build_radius_polynomial(query);
  RadiusResult out = smallest_positive_root(poly, bracket, tol);

  // The bound function blows up at r = p for S(p); stop the scan just short of it.
  Bracket check_bracket = bracket;
  if (query.klass == RadiusClass::Sp) check_bracket.hi = bracket.hi * (1.0 - 1e-12);
  const RadiusResult check = first_root_by_scan(
      [&](double r) { return lower_bound(query, r); }, check_bracket, tol, 1.0);
  if (check.status == RootStatus::Found) {
    out.crosscheck_radius = check.radius;
    out.crosscheck_disagrees = out.status != RootStatus::Found ||
                               std::abs(check.radius - out.radius) > kCrosscheckTol;
  } else {
    out.crosscheck_disagrees = out.status == RootStatus::Found;
  }
  return out;
}

}  // namespace radconc
