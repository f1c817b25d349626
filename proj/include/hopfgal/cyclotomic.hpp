/**
 * @file cyclotomic.hpp
 * @brief Exact arithmetic in cyclotomic fields Q(zeta_N) with complex conjugation.
 *
 * An element is stored as a rational polynomial in zeta_N reduced modulo the
 * cyclotomic polynomial Phi_N, i.e. in the power basis {1, zeta, ..., zeta^(phi(N)-1)}.
 * Trailing zero coefficients are trimmed and every element is demoted to the smallest
 * N whose field contains it (rationals have order 1, zero is the empty list), so the
 * pair (order, coefficients) is a canonical form.
 *
 * Binary operations on elements of different orders lift both operands to the lcm
 * of the orders, using zeta_N = zeta_L^(L/N).
 */
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hopfgal {

namespace detail {

using IntPoly = std::vector<mpz_class>;  // lowest degree first

inline IntPoly poly_exact_div(IntPoly num, const IntPoly& den) {
  // den is monic
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) return {};
  IntPoly quot(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    mpz_class t = num[i];
    if (t == 0) continue;
    quot[i - dd] = t;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= t * den[j];
  }
  for (std::size_t i = 0; i < dd; ++i)
    if (num[i] != 0) throw std::logic_error("cyclotomic polynomial division not exact");
  return quot;
}

inline IntPoly compute_cyclotomic(unsigned n);

/// Cached Phi_n; thread-safe.
inline const IntPoly& cyclotomic_polynomial(unsigned n) {
  static std::map<unsigned, IntPoly> cache;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  IntPoly p = compute_cyclotomic(n);
  return cache.emplace(n, std::move(p)).first->second;
}

inline IntPoly compute_cyclotomic(unsigned n) {
  if (n == 0) throw std::invalid_argument("cyclotomic order must be positive");
  IntPoly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) p = poly_exact_div(std::move(p), cyclotomic_polynomial(d));
  return p;
}

inline unsigned euler_phi(unsigned n) { return static_cast<unsigned>(cyclotomic_polynomial(n).size() - 1); }


/// Power-basis coefficients of sum_k c[k] zeta_n^k, reduced modulo x^n - 1 and Phi_n, trimmed.
inline std::vector<mpq_class> reduce_coeffs(unsigned n, std::vector<mpq_class> c) {
  if (c.size() > n) {
    for (std::size_t i = n; i < c.size(); ++i) c[i % n] += c[i];
    c.resize(n);
  }
  if (n > 1) {
    const auto& phi = cyclotomic_polynomial(n);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = c.size(); i-- > deg;) {
      if (sgn(c[i]) == 0) continue;
      mpq_class t = c[i];
      for (std::size_t j = 0; j < deg; ++j)
        if (phi[j] != 0) c[i - deg + j] -= t * phi[j];
      c[i] = 0;
    }
  }
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
  for (auto& x : c) x.canonicalize();
  return c;
}

inline bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace detail

class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(long v) {  // NOLINT(google-explicit-constructor)
    if (v != 0) c_.emplace_back(v);
  }
  Cyclotomic(const mpq_class& v) {  // NOLINT(google-explicit-constructor)
    mpq_class q = v;
    q.canonicalize();
    if (sgn(q) != 0) c_.push_back(q);
  }
  Cyclotomic(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    if (sgn(q) != 0) c_.push_back(q);
  }

  /// zeta_n^k
  static Cyclotomic zeta(unsigned n, long k = 1) {
    if (n == 0) throw std::invalid_argument("cyclotomic order must be positive");
    long e = ((k % static_cast<long>(n)) + n) % n;
    std::vector<mpq_class> c(static_cast<std::size_t>(e) + 1, 0);
    c[static_cast<std::size_t>(e)] = 1;
    return from_coeffs(n, std::move(c));
  }

  /// Element sum_k coeffs[k] zeta_n^k; coeffs may have any length.
  static Cyclotomic from_coeffs(unsigned n, std::vector<mpq_class> coeffs) {
    if (n == 0) throw std::invalid_argument("cyclotomic order must be positive");
    Cyclotomic r;
    r.order_ = n;
    r.c_ = detail::reduce_coeffs(n, std::move(coeffs));
    r.demote();
    return r;
  }

  unsigned order() const { return order_; }
  /// Canonical power-basis coefficients, trailing zeros trimmed.
  const std::vector<mpq_class>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_rational() const { return c_.size() <= 1; }
  mpq_class rational() const {
    if (!is_rational()) throw std::domain_error("scalar is not rational");
    return c_.empty() ? mpq_class(0) : c_[0];
  }

  /// Coefficients of the same element in the power basis of Q(zeta_n), n a multiple of order().
  std::vector<mpq_class> coeffs_at(unsigned n) const {
    if (n % order_ != 0) throw std::invalid_argument("lift target must be a multiple of the order");
    if (n == order_ || is_rational()) return c_;
    const unsigned step = n / order_;
    std::vector<mpq_class> c(static_cast<std::size_t>(step) * (c_.size() - 1) + 1, 0);
    for (std::size_t k = 0; k < c_.size(); ++k) c[k * step] = c_[k];
    return detail::reduce_coeffs(n, std::move(c));
  }

  Cyclotomic conj() const {
    if (is_rational()) return *this;
    std::vector<mpq_class> c(order_, 0);
    for (std::size_t k = 0; k < c_.size(); ++k) c[(order_ - k) % order_] += c_[k];
    return from_coeffs(order_, std::move(c));
  }

  Cyclotomic inverse() const;

  /// Value at the canonical embedding zeta_N = exp(2 pi i / N).
  std::complex<double> embed() const {
    std::complex<double> s = 0;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (sgn(c_[k]) == 0) continue;
      double ang = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(order_);
      s += c_[k].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return s;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = add(*this, o, false); }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = add(*this, o, true); }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = mul(*this, o); }
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this = mul(*this, o.inverse()); }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) { return add(a, b, false); }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return add(a, b, true); }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) { return mul(a, b); }
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return mul(a, b.inverse()); }
  friend Cyclotomic operator-(const Cyclotomic& a) {
    Cyclotomic r = a;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.order_ == b.order_ && a.c_ == b.c_; }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (sgn(c_[k]) == 0) continue;
      mpq_class v = c_[k];
      if (!first) os << (sgn(v) < 0 ? " - " : " + ");
      else if (sgn(v) < 0) os << "-";
      mpq_class a = abs(v);
      if (k == 0) os << a.get_str();
      else {
        if (a != 1) os << a.get_str() << "*";
        os << "z" << order_;
        if (k > 1) os << "^" << k;
      }
      first = false;
    }
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& x) { return os << x.to_string(); }

 private:
  /// Moves the element to the smallest cyclotomic subfield containing it.
  void demote() {
    bool moved = true;
    while (moved && c_.size() > 1) {
      moved = false;
      for (unsigned p = 2; p <= order_ && !moved; ++p)
        if (order_ % p == 0 && detail::is_prime(p)) moved = try_descend(order_ / p);
    }
    if (c_.size() <= 1) order_ = 1;
  }

  /// Rewrites c_ over Q(zeta_m), m | order_, when the element lies in that subfield.
  bool try_descend(unsigned m) {
    const unsigned n = order_;
    const std::size_t dm = detail::euler_phi(m), dn = detail::euler_phi(n);
    const std::size_t step = n / m;
    // columns zeta_n^{step k}, k < phi(m), in the power basis of Q(zeta_n)
    std::vector<std::vector<mpq_class>> a(dn, std::vector<mpq_class>(dm + 1, 0));
    for (std::size_t k = 0; k < dm; ++k) {
      std::vector<mpq_class> mono(step * k + 1, 0);
      mono.back() = 1;
      auto col = detail::reduce_coeffs(n, std::move(mono));
      for (std::size_t i = 0; i < col.size(); ++i) a[i][k] = col[i];
    }
    for (std::size_t i = 0; i < c_.size(); ++i) a[i][dm] = c_[i];
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t col = 0; col < dm && row < dn; ++col) {
      std::size_t r = row;
      while (r < dn && sgn(a[r][col]) == 0) ++r;
      if (r == dn) continue;
      std::swap(a[r], a[row]);
      mpq_class inv = 1 / a[row][col];
      for (auto& x : a[row]) x *= inv;
      for (std::size_t i = 0; i < dn; ++i) {
        if (i == row || sgn(a[i][col]) == 0) continue;
        mpq_class f = a[i][col];
        for (std::size_t j = col; j <= dm; ++j) a[i][j] -= f * a[row][j];
      }
      piv.push_back(col);
      ++row;
    }
    for (std::size_t i = row; i < dn; ++i)
      if (sgn(a[i][dm]) != 0) return false;
    std::vector<mpq_class> y(dm, 0);
    for (std::size_t i = 0; i < piv.size(); ++i) y[piv[i]] = a[i][dm];
    order_ = m;
    c_ = detail::reduce_coeffs(m, std::move(y));
    return true;
  }

  static Cyclotomic add(const Cyclotomic& a, const Cyclotomic& b, bool negate_b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return negate_b ? -b : b;
    if (a.is_rational() && b.is_rational())
      return Cyclotomic(negate_b ? mpq_class(a.c_[0] - b.c_[0]) : mpq_class(a.c_[0] + b.c_[0]));
    const unsigned n = std::lcm(a.order_, b.order_);
    std::vector<mpq_class> x = a.coeffs_at(n), y = b.coeffs_at(n);
    if (x.size() < y.size()) x.resize(y.size(), 0);
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (negate_b) x[i] -= y[i];
      else x[i] += y[i];
    }
    return from_coeffs(n, std::move(x));
  }

  static Cyclotomic mul(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_rational() || b.is_rational()) {
      const Cyclotomic& s = a.is_rational() ? a : b;
      const Cyclotomic& v = a.is_rational() ? b : a;
      Cyclotomic r = v;
      for (auto& x : r.c_) x *= s.c_[0];
      return r;
    }
    const unsigned n = std::lcm(a.order_, b.order_);
    std::vector<mpq_class> xa = a.coeffs_at(n), xb = b.coeffs_at(n);
    std::vector<mpq_class> c(xa.size() + xb.size() - 1, 0);
    for (std::size_t i = 0; i < xa.size(); ++i) {
      if (sgn(xa[i]) == 0) continue;
      for (std::size_t j = 0; j < xb.size(); ++j)
        if (sgn(xb[j]) != 0) c[i + j] += xa[i] * xb[j];
    }
    return from_coeffs(n, std::move(c));
  }

  unsigned order_ = 1;
  std::vector<mpq_class> c_;
};

inline Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero scalar");
  if (is_rational()) return Cyclotomic(mpq_class(1 / c_[0]));
  // Solve x * y = 1 in Q(zeta_N) via the multiplication-by-x matrix.
  const std::size_t d = detail::euler_phi(order_);
  std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(d + 1, 0));
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<mpq_class> shifted(j + c_.size(), 0);
    for (std::size_t k = 0; k < c_.size(); ++k) shifted[j + k] = c_[k];
    auto col = detail::reduce_coeffs(order_, std::move(shifted));
    for (std::size_t i = 0; i < col.size(); ++i) m[i][j] = col[i];
  }
  m[0][d] = 1;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t r = col;
    while (r < d && sgn(m[r][col]) == 0) ++r;
    if (r == d) throw std::logic_error("singular multiplication matrix in cyclotomic inverse");
    std::swap(m[r], m[col]);
    mpq_class inv = 1 / m[col][col];
    for (auto& x : m[col]) x *= inv;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == col || sgn(m[i][col]) == 0) continue;
      mpq_class f = m[i][col];
      for (std::size_t k = col; k <= d; ++k) m[i][k] -= f * m[col][k];
    }
  }
  std::vector<mpq_class> y(d);
  for (std::size_t i = 0; i < d; ++i) y[i] = m[i][d];
  return from_coeffs(order_, std::move(y));
}

inline bool is_zero(const Cyclotomic& x) { return x.is_zero(); }
inline Cyclotomic conj(const Cyclotomic& x) { return x.conj(); }

/// i = zeta_4
inline Cyclotomic imag_unit() { return Cyclotomic::zeta(4); }

}  // namespace hopfgal
