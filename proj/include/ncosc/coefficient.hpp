#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ncosc {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Formal parameters that may appear in operator coefficients.
/// omega_t is the in-plane frequency sqrt(omega^2 + omega_c^2/4), kept opaque
/// until numeric evaluation.
enum class Param : std::uint8_t { hbar, alpha, theta, eta, mass, omega, omega_c, omega_t };

inline constexpr std::size_t kParamCount = 8;

std::string_view param_name(Param p);
std::optional<Param> param_from_name(std::string_view name);

struct ComplexRational {
  Rational re;
  Rational im;

  bool is_zero() const { return re == 0 && im == 0; }
  ComplexRational conj() const { return {re, -im}; }

  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  ComplexRational operator-() const { return {-re, -im}; }
  friend bool operator==(const ComplexRational&, const ComplexRational&) = default;
};

/// Exponent vector over the formal parameters (negative powers allowed).
using ParamPowers = std::array<int, kParamCount>;

/// Numeric values bound to formal parameters; unbound entries are empty.
using ParamValues = std::array<std::optional<double>, kParamCount>;

/// Exact Laurent polynomial in the formal parameters with complex-rational
/// coefficients. Zero terms are never stored.
class Coefficient {
 public:
  using Terms = std::map<ParamPowers, ComplexRational>;

  Coefficient() = default;
  Coefficient(const Rational& r);  // NOLINT(google-explicit-constructor)
  Coefficient(int n) : Coefficient(Rational(n)) {}  // NOLINT(google-explicit-constructor)
  Coefficient(const ComplexRational& c);  // NOLINT(google-explicit-constructor)

  static Coefficient param(Param p, int power = 1);
  static Coefficient imag_unit();
  static Coefficient term(const ParamPowers& powers, const ComplexRational& c);
  static Coefficient rational(long long num, long long den) { return Coefficient(Rational(num, den)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  Coefficient conj() const;

  /// Integer power. Negative exponents require a single real term.
  Coefficient pow(int n) const;

  std::complex<double> evaluate(const ParamValues& values) const;

  Coefficient& operator+=(const Coefficient& other);
  Coefficient& operator-=(const Coefficient& other);
  Coefficient& operator*=(const Coefficient& other);
  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }
  Coefficient operator-() const;
  friend bool operator==(const Coefficient&, const Coefficient&) = default;

  /// One rendered term of the coefficient: sign pulled out, body such as
  /// "1/2*i*hbar^-1*theta".
  struct SignedAtom {
    bool negative = false;
    std::string body;
  };
  std::vector<SignedAtom> atoms() const;

  std::string to_text() const;

 private:
  void add_term(const ParamPowers& powers, const ComplexRational& c);
  Terms terms_;
};

}  // namespace ncosc
