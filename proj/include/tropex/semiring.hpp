#pragma once

#include <compare>
#include <string>

#include "error.hpp"
#include "rational.hpp"

namespace tropex {

// t^x in the min-plus semiring: multiplication adds exponents, addition takes the minimum.
struct TropicalValue {
  Rational exponent;

  TropicalValue() : exponent(0) {}
  explicit TropicalValue(Rational x) : exponent(std::move(x)) {}

  friend TropicalValue operator*(const TropicalValue& a, const TropicalValue& b) {
    return TropicalValue(a.exponent + b.exponent);
  }
  friend TropicalValue operator+(const TropicalValue& a, const TropicalValue& b) {
    return TropicalValue(a.exponent <= b.exponent ? a.exponent : b.exponent);
  }
  friend bool operator==(const TropicalValue& a, const TropicalValue& b) { return a.exponent == b.exponent; }
  friend bool operator!=(const TropicalValue& a, const TropicalValue& b) { return !(a == b); }
};

inline TropicalValue trop_mul(const TropicalValue& a, const TropicalValue& b) { return a * b; }
inline TropicalValue trop_add(const TropicalValue& a, const TropicalValue& b) { return a + b; }

// c t^x. Values with zero coefficient keep their exponent: 0t^0 and 0t^1 are different.
struct ExplodedValue {
  GaussianRational coeff;
  Rational exponent;

  ExplodedValue() : coeff(0), exponent(0) {}
  ExplodedValue(GaussianRational c, Rational x) : coeff(std::move(c)), exponent(std::move(x)) {}

  static ExplodedValue one() { return {GaussianRational(1), Rational(0)}; }

  friend ExplodedValue operator*(const ExplodedValue& a, const ExplodedValue& b) {
    return {a.coeff * b.coeff, a.exponent + b.exponent};
  }
  friend ExplodedValue operator+(const ExplodedValue& a, const ExplodedValue& b) {
    if (a.exponent < b.exponent) return a;
    if (b.exponent < a.exponent) return b;
    return {a.coeff + b.coeff, a.exponent};
  }
  friend bool operator==(const ExplodedValue& a, const ExplodedValue& b) {
    return a.coeff == b.coeff && a.exponent == b.exponent;
  }
  friend bool operator!=(const ExplodedValue& a, const ExplodedValue& b) { return !(a == b); }
};

inline ExplodedValue exp_mul(const ExplodedValue& a, const ExplodedValue& b) { return a * b; }
inline ExplodedValue exp_add(const ExplodedValue& a, const ExplodedValue& b) { return a + b; }

inline TropicalValue tropical_part(const ExplodedValue& a) { return TropicalValue(a.exponent); }

inline GaussianRational smooth_part(const ExplodedValue& a) {
  if (a.exponent < 0)
    fail(ErrorCode::NegativeExponent, "smooth part undefined for exponent " + to_string(a.exponent));
  return a.exponent == 0 ? a.coeff : GaussianRational(0);
}

// Order on values with positive real coefficients: larger exponent means smaller value.
inline std::strong_ordering compare_positive(const ExplodedValue& a, const ExplodedValue& b) {
  for (const auto* v : {&a, &b})
    if (!v->coeff.is_real() || v->coeff.re <= 0)
      fail(ErrorCode::NotPositiveReal, "coefficient " + to_string(v->coeff) + " is not a positive real");
  if (a.exponent != b.exponent) return a.exponent > b.exponent ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.coeff.re == b.coeff.re) return std::strong_ordering::equal;
  return a.coeff.re < b.coeff.re ? std::strong_ordering::less : std::strong_ordering::greater;
}

inline std::string to_string(const TropicalValue& v) { return "t^" + to_string(v.exponent); }

inline std::string to_string(const ExplodedValue& v) {
  std::string c = to_string(v.coeff);
  if (!v.coeff.is_real()) c = "(" + c + ")";
  return c + " t^" + to_string(v.exponent);
}

}  // namespace tropex
