#pragma once
// Sparse multivariate polynomials over GF(2).
//
// A monomial is a sorted list of (variable, exponent) pairs; a polynomial is a
// set of monomials kept sorted in descending graded-lex order (total degree
// first, then exponent of the lowest-indexed variable breaks ties).  Addition
// is symmetric difference.  Variables are 1-indexed ("x1", "x2", ...), which
// lets edge ids double as variable ids.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace skein {

struct Monomial {
  // (variable index >= 1, exponent >= 1), sorted by variable ascending.
  std::vector<std::pair<int, int>> vp;

  static Monomial one() { return Monomial{}; }
  static Monomial var(int i, int e = 1) {
    if (i < 1 || e < 0) throw std::invalid_argument("Monomial::var: bad index/exponent");
    Monomial m;
    if (e > 0) m.vp.push_back({i, e});
    return m;
  }

  bool is_one() const { return vp.empty(); }
  int total_degree() const {
    int d = 0;
    for (auto& [v, e] : vp) d += e;
    return d;
  }
  int degree_in(int v) const {
    for (auto& [w, e] : vp)
      if (w == v) return e;
    return 0;
  }
  int max_var() const { return vp.empty() ? 0 : vp.back().first; }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    r.vp.reserve(vp.size() + o.vp.size());
    size_t i = 0, j = 0;
    while (i < vp.size() || j < o.vp.size()) {
      if (j == o.vp.size() || (i < vp.size() && vp[i].first < o.vp[j].first)) {
        r.vp.push_back(vp[i++]);
      } else if (i == vp.size() || o.vp[j].first < vp[i].first) {
        r.vp.push_back(o.vp[j++]);
      } else {
        r.vp.push_back({vp[i].first, vp[i].second + o.vp[j].second});
        ++i, ++j;
      }
    }
    return r;
  }

  // Does this divide o?
  bool divides(const Monomial& o) const {
    size_t j = 0;
    for (auto& [v, e] : vp) {
      while (j < o.vp.size() && o.vp[j].first < v) ++j;
      if (j == o.vp.size() || o.vp[j].first != v || o.vp[j].second < e) return false;
    }
    return true;
  }

  // o / this (requires divides(o)).
  Monomial div_into(const Monomial& o) const {
    Monomial r;
    size_t i = 0;
    for (auto& [v, e] : o.vp) {
      int sub = 0;
      while (i < vp.size() && vp[i].first < v) ++i;
      if (i < vp.size() && vp[i].first == v) sub = vp[i].second;
      if (e - sub < 0) throw std::logic_error("Monomial::div_into: not divisible");
      if (e - sub > 0) r.vp.push_back({v, e - sub});
    }
    return r;
  }

  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    size_t i = 0, j = 0;
    while (i < a.vp.size() && j < b.vp.size()) {
      if (a.vp[i].first < b.vp[j].first) ++i;
      else if (b.vp[j].first < a.vp[i].first) ++j;
      else {
        r.vp.push_back({a.vp[i].first, std::min(a.vp[i].second, b.vp[j].second)});
        ++i, ++j;
      }
    }
    return r;
  }

  // Graded-lex: higher total degree first; ties broken so that a higher
  // exponent on a lower-indexed variable wins.  Returns <0 if a < b, 0 if
  // equal, >0 if a > b (in monomial-order terms: positive means a is larger).
  static int cmp(const Monomial& a, const Monomial& b) {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
    size_t i = 0, j = 0;
    while (i < a.vp.size() && j < b.vp.size()) {
      if (a.vp[i].first != b.vp[j].first)
        // The monomial holding the lower-indexed variable has a positive
        // exponent where the other has zero: it is graded-lex larger.
        return a.vp[i].first < b.vp[j].first ? 1 : -1;
      if (a.vp[i].second != b.vp[j].second)
        return a.vp[i].second > b.vp[j].second ? 1 : -1;
      ++i, ++j;
    }
    if (i < a.vp.size()) return 1;
    if (j < b.vp.size()) return -1;
    return 0;
  }

  bool operator==(const Monomial& o) const { return vp == o.vp; }

  std::string render() const {
    if (vp.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < vp.size(); ++i) {
      if (i) s += '*';
      s += 'x';
      s += std::to_string(vp[i].first);
      if (vp[i].second > 1) {
        s += '^';
        s += std::to_string(vp[i].second);
      }
    }
    return s;
  }
};

class PolyGF2 {
 public:
  PolyGF2() = default;

  static PolyGF2 zero() { return PolyGF2(); }
  static PolyGF2 one() { return from_monomial(Monomial::one()); }
  static PolyGF2 var(int i) { return from_monomial(Monomial::var(i)); }
  static PolyGF2 from_monomial(Monomial m) {
    PolyGF2 p;
    p.terms_.push_back(std::move(m));
    return p;
  }
  static PolyGF2 from_terms(std::vector<Monomial> ts) {
    PolyGF2 p;
    p.terms_ = std::move(ts);
    p.canonicalize();
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].is_one(); }
  size_t num_terms() const { return terms_.size(); }
  const std::vector<Monomial>& terms() const { return terms_; }

  // Leading (graded-lex largest) monomial; polynomial must be nonzero.
  const Monomial& leading() const {
    if (terms_.empty()) throw std::logic_error("PolyGF2::leading on zero");
    return terms_.front();
  }

  int total_degree() const {
    int d = 0;
    for (auto& m : terms_) d = std::max(d, m.total_degree());
    return d;
  }
  int degree_in(int v) const {
    int d = 0;
    for (auto& m : terms_) d = std::max(d, m.degree_in(v));
    return d;
  }
  int max_var() const {
    int v = 0;
    for (auto& m : terms_) v = std::max(v, m.max_var());
    return v;
  }

  PolyGF2 operator+(const PolyGF2& o) const {
    PolyGF2 r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size()) r.terms_.push_back(terms_[i++]);
      else if (i == terms_.size()) r.terms_.push_back(o.terms_[j++]);
      else {
        int c = Monomial::cmp(terms_[i], o.terms_[j]);
        if (c > 0) r.terms_.push_back(terms_[i++]);
        else if (c < 0) r.terms_.push_back(o.terms_[j++]);
        else ++i, ++j;  // 1 + 1 = 0 over GF(2)
      }
    }
    return r;
  }
  PolyGF2& operator+=(const PolyGF2& o) { return *this = *this + o; }

  PolyGF2 times_monomial(const Monomial& m) const {
    // Graded-lex order is multiplicative, so the sorted order is preserved.
    PolyGF2 r;
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) r.terms_.push_back(t * m);
    return r;
  }

  PolyGF2 operator*(const PolyGF2& o) const {
    PolyGF2 r;
    for (auto& t : o.terms_) r += times_monomial(t);
    return r;
  }
  PolyGF2& operator*=(const PolyGF2& o) { return *this = *this * o; }

  bool operator==(const PolyGF2& o) const { return terms_ == o.terms_; }

  // Total order usable as a map key (graded-lex on term sequences).
  static int cmp(const PolyGF2& a, const PolyGF2& b) {
    size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (size_t i = 0; i < n; ++i) {
      int c = Monomial::cmp(a.terms_[i], b.terms_[i]);
      if (c) return c;
    }
    if (a.terms_.size() != b.terms_.size())
      return a.terms_.size() < b.terms_.size() ? -1 : 1;
    return 0;
  }
  bool operator<(const PolyGF2& o) const { return cmp(*this, o) < 0; }

  // GCD of all monomials (the monomial content).  Zero polynomial -> 1.
  Monomial monomial_content() const {
    if (terms_.empty()) return Monomial::one();
    Monomial g = terms_[0];
    for (size_t i = 1; i < terms_.size() && !g.is_one(); ++i)
      g = Monomial::gcd(g, terms_[i]);
    return g;
  }

  PolyGF2 div_monomial(const Monomial& m) const {
    PolyGF2 r;
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) r.terms_.push_back(m.div_into(t));
    return r;  // order preserved
  }

  // Exact multivariate division: returns a/b if b divides a, else nullopt.
  static std::optional<PolyGF2> divide_exact(const PolyGF2& a, const PolyGF2& b) {
    if (b.is_zero()) throw std::domain_error("PolyGF2::divide_exact by zero");
    PolyGF2 rem = a, q;
    while (!rem.is_zero()) {
      if (!b.leading().divides(rem.leading())) return std::nullopt;
      Monomial t = b.leading().div_into(rem.leading());
      q.terms_.push_back(t);
      rem += b.times_monomial(t);
    }
    std::sort(q.terms_.begin(), q.terms_.end(),
              [](const Monomial& x, const Monomial& y) { return Monomial::cmp(x, y) > 0; });
    return q;
  }

  // Coefficient of x_v^k, as a polynomial in the remaining variables.
  PolyGF2 coeff_of(int v, int k) const {
    PolyGF2 r;
    for (auto& m : terms_) {
      if (m.degree_in(v) != k) continue;
      Monomial rest;
      for (auto& [w, e] : m.vp)
        if (w != v) rest.vp.push_back({w, e});
      r.terms_.push_back(rest);
    }
    r.canonicalize();
    return r;
  }

  std::string render() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < terms_.size(); ++i) {
      if (i) s += '+';
      s += terms_[i].render();
    }
    return s;
  }

  // Grammar: poly := term ('+' term)* ; term := factor ('*' factor)* ;
  //          factor := x<int> ('^' <int>)? | '0' | '1' | '(' poly ')'
  static PolyGF2 parse(const std::string& s) {
    size_t pos = 0;
    PolyGF2 p = parse_poly(s, pos);
    skip_ws(s, pos);
    if (pos != s.size()) throw std::invalid_argument("PolyGF2::parse: trailing input in '" + s + "'");
    return p;
  }

 private:
  std::vector<Monomial> terms_;

  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Monomial& x, const Monomial& y) { return Monomial::cmp(x, y) > 0; });
    // Cancel equal monomials in pairs (characteristic 2).
    std::vector<Monomial> out;
    for (size_t i = 0; i < terms_.size();) {
      size_t j = i;
      while (j < terms_.size() && terms_[j] == terms_[i]) ++j;
      if ((j - i) % 2) out.push_back(terms_[i]);
      i = j;
    }
    terms_ = std::move(out);
  }

  static void skip_ws(const std::string& s, size_t& pos) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  static int parse_int(const std::string& s, size_t& pos) {
    skip_ws(s, pos);
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw std::invalid_argument("PolyGF2::parse: expected integer in '" + s + "'");
    return std::stoi(s.substr(start, pos - start));
  }
  static PolyGF2 parse_factor(const std::string& s, size_t& pos) {
    skip_ws(s, pos);
    if (pos >= s.size()) throw std::invalid_argument("PolyGF2::parse: unexpected end in '" + s + "'");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      PolyGF2 p = parse_poly(s, pos);
      skip_ws(s, pos);
      if (pos >= s.size() || s[pos] != ')')
        throw std::invalid_argument("PolyGF2::parse: missing ')' in '" + s + "'");
      ++pos;
      return p;
    }
    if (c == '0') { ++pos; return zero(); }
    if (c == '1') { ++pos; return one(); }
    if (c == 'x') {
      ++pos;
      int v = parse_int(s, pos);
      int e = 1;
      skip_ws(s, pos);
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        e = parse_int(s, pos);
      }
      if (e == 0) return one();
      return from_monomial(Monomial::var(v, e));
    }
    throw std::invalid_argument("PolyGF2::parse: unexpected character in '" + s + "'");
  }
  static PolyGF2 parse_term(const std::string& s, size_t& pos) {
    PolyGF2 p = parse_factor(s, pos);
    for (;;) {
      skip_ws(s, pos);
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        p *= parse_factor(s, pos);
      } else {
        return p;
      }
    }
  }
  static PolyGF2 parse_poly(const std::string& s, size_t& pos) {
    PolyGF2 p = parse_term(s, pos);
    for (;;) {
      skip_ws(s, pos);
      if (pos < s.size() && s[pos] == '+') {
        ++pos;
        p += parse_term(s, pos);
      } else {
        return p;
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Multivariate GCD over GF(2) via primitive pseudo-remainder sequences.
// The budget bounds total work; on exhaustion nullopt is returned and callers
// fall back to weaker (monomial-content) normalization, which keeps fractions
// correct if less reduced.
// ---------------------------------------------------------------------------

struct GcdBudget {
  long long steps = 200000;
  bool charge(long long c) {
    steps -= c;
    return steps >= 0;
  }
};

namespace detail {

// Pseudo-remainder of a by b with respect to variable v (deg_v a >= deg_v b).
inline std::optional<PolyGF2> prem(PolyGF2 a, const PolyGF2& b, int v, GcdBudget& budget) {
  int db = b.degree_in(v);
  PolyGF2 lcb = b.coeff_of(v, db);
  while (!a.is_zero()) {
    int da = a.degree_in(v);
    if (da < db) break;
    PolyGF2 lca = a.coeff_of(v, da);
    if (!budget.charge(static_cast<long long>(a.num_terms()) + b.num_terms())) return std::nullopt;
    // a <- lcb*a + lca*x_v^(da-db)*b  (cancels the leading v-term).
    a = lcb * a + (lca * b).times_monomial(Monomial::var(v, da - db));
    if (a.num_terms() > 4096) return std::nullopt;
  }
  return a;
}

inline std::optional<PolyGF2> gcd_rec(PolyGF2 a, PolyGF2 b, GcdBudget& budget);

// GCD of the x_v-coefficients of p (its content with respect to v).
inline std::optional<PolyGF2> content_in(const PolyGF2& p, int v, GcdBudget& budget) {
  PolyGF2 c;  // zero
  for (int k = 0; k <= p.degree_in(v); ++k) {
    PolyGF2 ck = p.coeff_of(v, k);
    if (ck.is_zero()) continue;
    auto g = gcd_rec(c, ck, budget);
    if (!g) return std::nullopt;
    c = *g;
    if (c.is_one()) break;
  }
  return c;
}

inline std::optional<PolyGF2> gcd_rec(PolyGF2 a, PolyGF2 b, GcdBudget& budget) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (!budget.charge(1)) return std::nullopt;

  // Factor the monomial content out of each argument; the answer's monomial
  // part is the gcd of the two contents.
  Monomial ca = a.monomial_content(), cb = b.monomial_content();
  Monomial g = Monomial::gcd(ca, cb);
  a = a.div_monomial(ca);
  b = b.div_monomial(cb);
  if (a.is_one() || b.is_one()) return PolyGF2::from_monomial(g);

  int v = std::max(a.max_var(), b.max_var());
  if (v == 0) return PolyGF2::from_monomial(g);  // both are the constant 1

  if (a.degree_in(v) == 0 || b.degree_in(v) == 0) {
    // v appears in only one argument: gcd(a, b) = gcd(content_v(other), this).
    const PolyGF2& with = a.degree_in(v) ? a : b;
    const PolyGF2& without = a.degree_in(v) ? b : a;
    auto cont = content_in(with, v, budget);
    if (!cont) return std::nullopt;
    auto r = gcd_rec(*cont, without, budget);
    if (!r) return std::nullopt;
    return r->times_monomial(g);
  }

  auto cont_a = content_in(a, v, budget);
  auto cont_b = content_in(b, v, budget);
  if (!cont_a || !cont_b) return std::nullopt;
  auto c = gcd_rec(*cont_a, *cont_b, budget);
  if (!c) return std::nullopt;
  auto pa = PolyGF2::divide_exact(a, *cont_a);
  auto pb = PolyGF2::divide_exact(b, *cont_b);
  if (!pa || !pb) throw std::logic_error("gcd: content must divide");

  if (pa->degree_in(v) < pb->degree_in(v)) std::swap(pa, pb);
  for (;;) {
    auto r = prem(*pa, *pb, v, budget);
    if (!r) return std::nullopt;
    if (r->is_zero()) {
      // pb is v-primitive by construction: it is the final gcd's primitive part.
      return (*c * *pb).times_monomial(g);
    }
    if (r->degree_in(v) == 0) {
      // The v-primitive gcd is v-free, hence 1 (both sides v-primitive).
      return c->times_monomial(g);
    }
    auto cr = content_in(*r, v, budget);
    if (!cr) return std::nullopt;
    auto pr = PolyGF2::divide_exact(*r, *cr);
    if (!pr) throw std::logic_error("gcd: content must divide remainder");
    pa = pb;
    pb = pr;
  }
}

}  // namespace detail

// Bounded multivariate GCD; nullopt if the work budget is exhausted.
inline std::optional<PolyGF2> poly_gcd(const PolyGF2& a, const PolyGF2& b,
                                       long long budget_steps = 200000) {
  GcdBudget budget{budget_steps};
  return detail::gcd_rec(a, b, budget);
}

}  // namespace skein
