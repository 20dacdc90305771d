#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "atomcharge/errors.hpp"

namespace atomcharge {

/// Exact element of ½ℤ, stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_doubled(std::int64_t doubled) {
    HalfInt h;
    h.doubled_ = doubled;
    return h;
  }
  static constexpr HalfInt integer(std::int64_t value) { return from_doubled(2 * value); }

  constexpr std::int64_t doubled() const { return doubled_; }
  constexpr bool is_integer() const { return doubled_ % 2 == 0; }

  std::int64_t to_integer() const {
    if (!is_integer()) throw InvalidInput("half-integer " + to_string() + " is not an integer");
    return doubled_ / 2;
  }

  std::string to_string() const {
    if (is_integer()) return std::to_string(doubled_ / 2);
    return std::to_string(doubled_) + "/2";
  }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_doubled(a.doubled_ + b.doubled_); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_doubled(a.doubled_ - b.doubled_); }
  friend constexpr HalfInt operator-(HalfInt a) { return from_doubled(-a.doubled_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    doubled_ += o.doubled_;
    return *this;
  }
  constexpr HalfInt& operator-=(HalfInt o) {
    doubled_ -= o.doubled_;
    return *this;
  }
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

 private:
  std::int64_t doubled_ = 0;
};

/// Laurent polynomial in q^{1/2} with integer coefficients. Terms are keyed by
/// the doubled exponent, so q^c is stored under 2c. Zero coefficients are never
/// stored.
class HalfLaurentPolynomial {
 public:
  using Terms = std::map<std::int64_t, std::int64_t>;

  HalfLaurentPolynomial() = default;

  static HalfLaurentPolynomial constant(std::int64_t c) { return monomial(HalfInt{}, c); }
  static HalfLaurentPolynomial monomial(HalfInt exponent, std::int64_t coefficient = 1) {
    HalfLaurentPolynomial p;
    p.add_term(exponent.doubled(), coefficient);
    return p;
  }

  void add_term(std::int64_t doubled_exponent, std::int64_t coefficient) {
    if (coefficient == 0) return;
    auto [it, inserted] = terms_.try_emplace(doubled_exponent, coefficient);
    if (!inserted) {
      it->second += coefficient;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::int64_t coefficient(std::int64_t doubled_exponent) const {
    auto it = terms_.find(doubled_exponent);
    return it == terms_.end() ? 0 : it->second;
  }

  /// Value at q = 1.
  std::int64_t at_one() const {
    std::int64_t s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  /// Multiplies by q^{shift/2}.
  HalfLaurentPolynomial shifted(std::int64_t doubled_shift) const {
    HalfLaurentPolynomial p;
    for (const auto& [e, c] : terms_) p.terms_.emplace(e + doubled_shift, c);
    return p;
  }

  /// Substitutes q ↦ q^factor.
  HalfLaurentPolynomial with_exponents_scaled(std::int64_t factor) const {
    HalfLaurentPolynomial p;
    for (const auto& [e, c] : terms_) p.add_term(e * factor, c);
    return p;
  }

  bool has_nonnegative_coefficients() const {
    for (const auto& [e, c] : terms_)
      if (c < 0) return false;
    return true;
  }

  HalfLaurentPolynomial& operator+=(const HalfLaurentPolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  HalfLaurentPolynomial& operator-=(const HalfLaurentPolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend HalfLaurentPolynomial operator+(HalfLaurentPolynomial a, const HalfLaurentPolynomial& b) {
    return a += b;
  }
  friend HalfLaurentPolynomial operator-(HalfLaurentPolynomial a, const HalfLaurentPolynomial& b) {
    return a -= b;
  }
  friend HalfLaurentPolynomial operator*(const HalfLaurentPolynomial& a, const HalfLaurentPolynomial& b) {
    HalfLaurentPolynomial p;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) p.add_term(ea + eb, ca * cb);
    return p;
  }
  friend bool operator==(const HalfLaurentPolynomial&, const HalfLaurentPolynomial&) = default;

  /// Terms in decreasing exponent: "q^3", "q^(5/2)", "q", constant "1".
  std::string to_string(std::string_view var = "q") const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      auto [e, c] = *it;
      std::int64_t mag = c < 0 ? -c : c;
      if (first) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      first = false;
      if (e == 0) {
        out += std::to_string(mag);
        continue;
      }
      if (mag != 1) out += std::to_string(mag);
      out += var;
      if (e == 2) continue;
      if (e % 2 == 0) {
        out += "^" + std::to_string(e / 2);
      } else {
        out += "^(" + std::to_string(e) + "/2)";
      }
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [e, c] : terms_) j[std::to_string(e)] = c;
    return j;
  }

  static HalfLaurentPolynomial from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidInput("polynomial JSON must be an object");
    HalfLaurentPolynomial p;
    for (const auto& [key, value] : j.items()) {
      std::size_t used = 0;
      std::int64_t e = 0;
      try {
        e = std::stoll(key, &used);
      } catch (const std::exception&) {
        throw InvalidInput("bad doubled exponent key '" + key + "'");
      }
      if (used != key.size()) throw InvalidInput("bad doubled exponent key '" + key + "'");
      p.add_term(e, value.get<std::int64_t>());
    }
    return p;
  }

 private:
  Terms terms_;
};

}  // namespace atomcharge
