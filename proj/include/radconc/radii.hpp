#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "radconc/functions.hpp"
#include "radconc/polynomial.hpp"

namespace radconc {

enum class RadiusClass { S, Sp, CoA };
enum class Mode { Univalence, Convexity, Concavity };

/// AsProof uses the polynomial obtained by clearing denominators in the bound the
/// proofs actually derive; AsStated reproduces the printed closed-form statements verbatim.
/// The two differ for Co(A) concavity (r^2 coefficient), S(p) convexity (r^3) and
/// S(p) concavity (r and r^4).
enum class FormulaVariant { AsProof, AsStated };

const char* to_string(RadiusClass klass) noexcept;
const char* to_string(Mode mode) noexcept;
const char* to_string(FormulaVariant variant) noexcept;

RadiusClass parse_radius_class(const std::string& text);
Mode parse_mode(const std::string& text);
FormulaVariant parse_variant(const std::string& text);
ClassTag class_tag_of(RadiusClass klass) noexcept;

/// (class, mode) pairs that have a radius: S concavity, S(p) univalence /
/// convexity / concavity, Co(A) univalence / convexity / concavity.
bool is_supported(RadiusClass klass, Mode mode) noexcept;

struct RadiusQuery {
  RadiusClass klass = RadiusClass::S;
  Mode mode = Mode::Concavity;
  int n = 1;
  /// One angle per pair. S concavity under AsStated also accepts 2n angles and
  /// then sums over all of them (the two-function special case sums j = 1..2).
  std::vector<double> alphas{0.0};
  ClassParams params;
  /// Univalence scale; default_rho() is used when absent.
  std::optional<double> rho;
  FormulaVariant variant = FormulaVariant::AsProof;

  /// Throws DomainError / UsageError with a message naming the offending field.
  void validate() const;
};

/// sum_j sec(alpha_j / 2); alpha_j must lie in [0, pi).
double sec_sum(std::span<const double> alphas);

/// (rho/n) (sum sec - sqrt((sum sec)^2 - n^2)), the smaller root of
/// n r^2 - 2 rho (sum sec) r + n rho^2.
double univalence_radius(int n, std::span<const double> alphas, double rho);

/// sin(pi/(4A)) for Co(A).
double default_rho_coa(double A);
/// Smallest root in (0, p) of p(k+1) r^2 - k(1+p^2) r + p(k-1), k = e^{pi/4}.
double default_rho_sp(double p);
double default_rho(RadiusClass klass, const ClassParams& params);

/// Radius-defining polynomial for a supported non-univalence query.
PolyR build_radius_polynomial(const RadiusQuery& query);

/// The un-cleared lower bound on the relevant real part at |z| = r, as assembled
/// in the proofs before denominators are cleared. Independent of the variant.
double lower_bound(const RadiusQuery& query, double r);

/// Search bracket: (0, 1) for S and Co(A), (0, p) for S(p), (0, rho) for univalence.
Bracket radius_bracket(const RadiusQuery& query);

/// Closed form for univalence; otherwise the smallest root of the radius
/// polynomial in the bracket, cross-checked against lower_bound().
RadiusResult radius(const RadiusQuery& query, double tol = kDefaultRootTol);

}  // namespace radconc
