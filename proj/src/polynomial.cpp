#include "radconc/polynomial.hpp"

#include <algorithm>

namespace radconc {

PolyR::PolyR(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw UsageError("polynomial needs at least one coefficient");
  if (coeffs_.size() > kMaxCoeffs) throw UsageError("polynomial degree is capped at 6");
}

std::size_t PolyR::effective_degree() const noexcept {
  std::size_t d = degree();
  while (d > 0 && coeffs_[d] == 0.0) --d;
  return d;
}

double PolyR::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

const char* to_string(RootStatus status) noexcept {
  switch (status) {
    case RootStatus::Found: return "found";
    case RootStatus::NoRootInBracket: return "no-root-in-bracket";
    case RootStatus::DegenerateBracket: return "degenerate-bracket";
  }
  return "unknown";
}

RadiusResult smallest_positive_root(const PolyR& poly, Bracket bracket, double tol) {
  RadiusResult out =
      first_root_by_scan(poly, bracket, tol, std::max(1.0, poly.max_abs_coeff()));
  out.poly = poly;
  out.source = RadiusSource::Polynomial;
  return out;
}

PolyR multiply(const PolyR& a, const PolyR& b) {
  std::vector<double> out(a.coeffs().size() + b.coeffs().size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) out[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return PolyR(std::move(out));
}

}  // namespace radconc
