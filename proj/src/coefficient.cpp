#include "ncosc/coefficient.hpp"

#include <cmath>
#include <stdexcept>

namespace ncosc {

namespace {

constexpr std::array<std::string_view, kParamCount> kParamNames = {
    "hbar", "alpha", "theta", "eta", "m", "omega", "omega_c", "omega_t"};

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

std::string_view param_name(Param p) { return kParamNames[static_cast<std::size_t>(p)]; }

std::optional<Param> param_from_name(std::string_view name) {
  for (std::size_t k = 0; k < kParamCount; ++k) {
    if (kParamNames[k] == name) return static_cast<Param>(k);
  }
  return std::nullopt;
}

Coefficient::Coefficient(const Rational& r) {
  if (r != 0) terms_.emplace(ParamPowers{}, ComplexRational{r, 0});
}

Coefficient::Coefficient(const ComplexRational& c) {
  if (!c.is_zero()) terms_.emplace(ParamPowers{}, c);
}

Coefficient Coefficient::param(Param p, int power) {
  ParamPowers powers{};
  powers[static_cast<std::size_t>(p)] = power;
  Coefficient c;
  c.terms_.emplace(powers, ComplexRational{1, 0});
  return c;
}

Coefficient Coefficient::term(const ParamPowers& powers, const ComplexRational& c) {
  Coefficient out;
  out.add_term(powers, c);
  return out;
}

Coefficient Coefficient::imag_unit() { return Coefficient(ComplexRational{0, 1}); }

bool Coefficient::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == ParamPowers{} &&
         terms_.begin()->second == ComplexRational{1, 0};
}

Coefficient Coefficient::conj() const {
  Coefficient out;
  for (const auto& [powers, c] : terms_) out.terms_.emplace(powers, c.conj());
  return out;
}

Coefficient Coefficient::pow(int n) const {
  if (n >= 0) {
    Coefficient out(1);
    for (int k = 0; k < n; ++k) out *= *this;
    return out;
  }
  if (terms_.size() != 1) throw std::domain_error("negative power of a multi-term coefficient");
  const auto& [powers, c] = *terms_.begin();
  if (c.im != 0) throw std::domain_error("negative power of a complex coefficient");
  Coefficient out;
  ParamPowers p{};
  for (std::size_t k = 0; k < kParamCount; ++k) p[k] = powers[k] * n;
  Rational mag = 1;
  for (int k = 0; k < -n; ++k) mag /= c.re;
  out.terms_.emplace(p, ComplexRational{mag, 0});
  return out;
}

std::complex<double> Coefficient::evaluate(const ParamValues& values) const {
  std::complex<double> total = 0.0;
  for (const auto& [powers, c] : terms_) {
    double factor = 1.0;
    for (std::size_t k = 0; k < kParamCount; ++k) {
      if (powers[k] == 0) continue;
      if (!values[k]) {
        throw std::invalid_argument("no numeric value bound for parameter '" +
                                    std::string(kParamNames[k]) + "'");
      }
      factor *= std::pow(*values[k], powers[k]);
    }
    total += factor * std::complex<double>(to_double(c.re), to_double(c.im));
  }
  return total;
}

void Coefficient::add_term(const ParamPowers& powers, const ComplexRational& c) {
  auto [it, inserted] = terms_.try_emplace(powers, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  } else if (c.is_zero()) {
    terms_.erase(it);
  }
}

Coefficient& Coefficient::operator+=(const Coefficient& other) {
  for (const auto& [powers, c] : other.terms_) add_term(powers, c);
  return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& other) {
  for (const auto& [powers, c] : other.terms_) add_term(powers, -c);
  return *this;
}

Coefficient& Coefficient::operator*=(const Coefficient& other) {
  Coefficient out;
  for (const auto& [pa, ca] : terms_) {
    for (const auto& [pb, cb] : other.terms_) {
      ParamPowers p{};
      for (std::size_t k = 0; k < kParamCount; ++k) p[k] = pa[k] + pb[k];
      out.add_term(p, ca * cb);
    }
  }
  terms_ = std::move(out.terms_);
  return *this;
}

Coefficient Coefficient::operator-() const {
  Coefficient out;
  for (const auto& [powers, c] : terms_) out.terms_.emplace(powers, -c);
  return out;
}

std::vector<Coefficient::SignedAtom> Coefficient::atoms() const {
  std::vector<SignedAtom> out;
  auto render = [&](const ParamPowers& powers, const Rational& value, bool imaginary) {
    SignedAtom atom;
    atom.negative = value < 0;
    const Rational mag = atom.negative ? Rational(-value) : value;
    bool has_params = false;
    for (int e : powers) has_params = has_params || e != 0;
    std::string body;
    auto append = [&body](const std::string& part) {
      if (!body.empty()) body += '*';
      body += part;
    };
    if (mag != 1 || (!imaginary && !has_params)) append(mag.str());
    if (imaginary) append("i");
    for (std::size_t k = 0; k < kParamCount; ++k) {
      if (powers[k] == 0) continue;
      std::string part(kParamNames[k]);
      if (powers[k] != 1) part += "^" + std::to_string(powers[k]);
      append(part);
    }
    atom.body = std::move(body);
    out.push_back(std::move(atom));
  };
  for (const auto& [powers, c] : terms_) {
    if (c.re != 0) render(powers, c.re, false);
    if (c.im != 0) render(powers, c.im, true);
  }
  return out;
}

std::string Coefficient::to_text() const {
  const auto parts = atoms();
  if (parts.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k == 0) {
      if (parts[k].negative) out += '-';
    } else {
      out += parts[k].negative ? " - " : " + ";
    }
    out += parts[k].body;
  }
  return out;
}

}  // namespace ncosc
