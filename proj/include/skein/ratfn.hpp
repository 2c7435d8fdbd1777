#pragma once
// Rational functions over GF(2): normalized fractions of PolyGF2.
//
// Normalization always removes the shared monomial content and attempts a
// bounded polynomial GCD; if the budget runs out the fraction is kept
// unreduced.  Equality therefore never relies on canonical forms — it is
// decided by cross-multiplication, which is exact.

#include <stdexcept>
#include <string>

#include "skein/gf2poly.hpp"

namespace skein {

class RatFn {
 public:
  RatFn() : num_(PolyGF2::zero()), den_(PolyGF2::one()) {}

  static RatFn zero() { return RatFn(); }
  static RatFn one() { return of(PolyGF2::one()); }
  static RatFn var(int i) { return of(PolyGF2::var(i)); }
  static RatFn of(PolyGF2 p) {
    RatFn r;
    r.num_ = std::move(p);
    r.den_ = PolyGF2::one();
    return r;
  }
  static RatFn frac(PolyGF2 n, PolyGF2 d) {
    if (d.is_zero()) throw std::domain_error("RatFn: zero denominator");
    RatFn r;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    r.normalize();
    return r;
  }

  const PolyGF2& num() const { return num_; }
  const PolyGF2& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }

  RatFn operator+(const RatFn& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    return frac(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  RatFn& operator+=(const RatFn& o) { return *this = *this + o; }

  RatFn operator*(const RatFn& o) const {
    if (is_zero() || o.is_zero()) return zero();
    // Cross-reduce first to keep intermediate products small.
    RatFn a = frac(num_, o.den_);
    RatFn b = frac(o.num_, den_);
    RatFn r;
    r.num_ = a.num_ * b.num_;
    r.den_ = a.den_ * b.den_;
    r.normalize();
    return r;
  }
  RatFn& operator*=(const RatFn& o) { return *this = *this * o; }

  RatFn inv() const {
    if (is_zero()) throw std::domain_error("RatFn::inv of zero");
    RatFn r;
    r.num_ = den_;
    r.den_ = num_;
    return r;  // already normalized (shared factors unchanged)
  }
  RatFn operator/(const RatFn& o) const { return *this * o.inv(); }

  bool operator==(const RatFn& o) const { return num_ * o.den_ == o.num_ * den_; }

  // "x3", "x1+x2", "(x1+x2)/(x1*x2)", "1/x1": a side is parenthesized exactly
  // when its rendering contains '+' or '*'.
  std::string render() const {
    if (den_.is_one()) return num_.render();
    return wrap(num_.render()) + "/" + wrap(den_.render());
  }

  // ratfn := poly ('/' poly)?   (both sides use the PolyGF2 grammar; a
  // parenthesized side is handled by the poly grammar itself).
  static RatFn parse(const std::string& s) {
    size_t slash = find_top_level_slash(s);
    if (slash == std::string::npos) return of(PolyGF2::parse(s));
    return frac(PolyGF2::parse(s.substr(0, slash)), PolyGF2::parse(s.substr(slash + 1)));
  }

 private:
  PolyGF2 num_, den_;

  static std::string wrap(const std::string& s) {
    if (s.find('+') != std::string::npos || s.find('*') != std::string::npos)
      return "(" + s + ")";
    return s;
  }

  static size_t find_top_level_slash(const std::string& s) {
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      else if (s[i] == ')') --depth;
      else if (s[i] == '/' && depth == 0) return i;
    }
    return std::string::npos;
  }

  void normalize() {
    if (num_.is_zero()) {
      den_ = PolyGF2::one();
      return;
    }
    if (num_ == den_) {
      num_ = PolyGF2::one();
      den_ = PolyGF2::one();
      return;
    }
    Monomial m = Monomial::gcd(num_.monomial_content(), den_.monomial_content());
    if (!m.is_one()) {
      num_ = num_.div_monomial(m);
      den_ = den_.div_monomial(m);
    }
    if (den_.is_one()) return;
    // Bounded full reduction; skip on very large operands.
    if (num_.num_terms() * den_.num_terms() <= 4096) {
      auto g = poly_gcd(num_, den_);
      if (g && !g->is_one()) {
        auto n = PolyGF2::divide_exact(num_, *g);
        auto d = PolyGF2::divide_exact(den_, *g);
        if (n && d) {
          num_ = std::move(*n);
          den_ = std::move(*d);
        }
      }
    }
  }
};

}  // namespace skein
