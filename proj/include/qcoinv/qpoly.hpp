#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcoinv {

namespace detail {

inline std::uint64_t add_checked(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("coefficient overflow in addition");
  return r;
}

inline std::uint64_t mul_checked(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("coefficient overflow in multiplication");
  return r;
}

}  // namespace detail

// Dense polynomial in q with non-negative 64-bit integer coefficients.
// Index = exponent. Trailing zero coefficients are trimmed; the zero
// polynomial is the empty coefficient vector. Overflow of any coefficient
// throws std::overflow_error, it is never wrapped.
class QPoly {
 public:
  using Coeff = std::uint64_t;

  QPoly() = default;
  explicit QPoly(std::vector<Coeff> coeffs) : c_(std::move(coeffs)) { trim(); }

  static QPoly constant(Coeff c) {
    QPoly p;
    if (c != 0) p.c_.push_back(c);
    return p;
  }
  static QPoly one() { return constant(1); }

  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is -1.
  long long degree() const { return static_cast<long long>(c_.size()) - 1; }
  Coeff at(std::size_t e) const { return e < c_.size() ? c_[e] : 0; }
  const std::vector<Coeff>& coeffs() const { return c_; }

  friend bool operator==(const QPoly& a, const QPoly& b) = default;

  QPoly operator+(const QPoly& rhs) const {
    std::vector<Coeff> out(std::max(c_.size(), rhs.c_.size()), 0);
    for (std::size_t e = 0; e < out.size(); ++e)
      out[e] = detail::add_checked(at(e), rhs.at(e));
    return QPoly(std::move(out));
  }

  QPoly& operator+=(const QPoly& rhs) { return *this = *this + rhs; }

  QPoly operator*(const QPoly& rhs) const {
    if (is_zero() || rhs.is_zero()) return {};
    std::vector<Coeff> out(c_.size() + rhs.c_.size() - 1, 0);
    for (std::size_t e = 0; e < c_.size(); ++e) {
      if (c_[e] == 0) continue;
      for (std::size_t f = 0; f < rhs.c_.size(); ++f) {
        if (rhs.c_[f] == 0) continue;
        out[e + f] = detail::add_checked(out[e + f],
                                         detail::mul_checked(c_[e], rhs.c_[f]));
      }
    }
    return QPoly(std::move(out));
  }

  QPoly& operator*=(const QPoly& rhs) { return *this = *this * rhs; }

  // Multiplication by q^c.
  QPoly shifted(long long c) const {
    if (c < 0) throw std::invalid_argument("QPoly::shifted: negative shift");
    if (is_zero() || c == 0) return *this;
    std::vector<Coeff> out(static_cast<std::size_t>(c), 0);
    out.insert(out.end(), c_.begin(), c_.end());
    return QPoly(std::move(out));
  }

  // Value at q = 1, i.e. the total count behind this generating function.
  Coeff value_at_one() const {
    Coeff s = 0;
    for (Coeff c : c_) s = detail::add_checked(s, c);
    return s;
  }

  // "0" for zero; otherwise terms "c*q^e" joined by " + " with ascending e,
  // eliding "1*" and "^1", and a bare coefficient for e = 0.
  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t e = 0; e < c_.size(); ++e) {
      if (c_[e] == 0) continue;
      if (!s.empty()) s += " + ";
      if (e == 0) {
        s += std::to_string(c_[e]);
        continue;
      }
      if (c_[e] != 1) {
        s += std::to_string(c_[e]);
        s += '*';
      }
      s += 'q';
      if (e != 1) {
        s += '^';
        s += std::to_string(e);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Coeff> c_;
};

// Exact quotient of two polynomials with non-negative coefficients.
// Throws std::logic_error when the division is not remainder-free or the
// quotient leaves the non-negative coefficient ring: either condition
// signals an arithmetic bug in the caller, never a user error.
inline QPoly divide_exact(const QPoly& num, const QPoly& den) {
  if (den.is_zero()) throw std::invalid_argument("divide_exact: zero divisor");
  if (num.is_zero()) return {};
  if (num.degree() < den.degree())
    throw std::logic_error("divide_exact: remainder is nonzero");

  constexpr auto max_ll =
      static_cast<std::uint64_t>(std::numeric_limits<long long>::max());
  auto as_signed = [&](const QPoly& p) {
    std::vector<long long> v;
    v.reserve(p.coeffs().size());
    for (auto c : p.coeffs()) {
      if (c > max_ll)
        throw std::overflow_error("divide_exact: coefficient too large");
      v.push_back(static_cast<long long>(c));
    }
    return v;
  };

  std::vector<long long> r = as_signed(num);
  const std::vector<long long> d = as_signed(den);
  const long long dl = d.back();
  std::vector<long long> quot(r.size() - d.size() + 1, 0);

  for (std::size_t sh = quot.size(); sh-- > 0;) {
    long long lead = r[sh + d.size() - 1];
    if (lead % dl != 0)
      throw std::logic_error("divide_exact: remainder is nonzero");
    long long t = lead / dl;
    quot[sh] = t;
    if (t == 0) continue;
    for (std::size_t m = 0; m < d.size(); ++m) {
      long long prod;
      if (__builtin_mul_overflow(t, d[m], &prod))
        throw std::overflow_error("divide_exact: intermediate overflow");
      if (__builtin_sub_overflow(r[sh + m], prod, &r[sh + m]))
        throw std::overflow_error("divide_exact: intermediate overflow");
    }
  }
  for (long long c : r)
    if (c != 0) throw std::logic_error("divide_exact: remainder is nonzero");

  std::vector<QPoly::Coeff> out;
  out.reserve(quot.size());
  for (long long c : quot) {
    if (c < 0)
      throw std::logic_error("divide_exact: negative quotient coefficient");
    out.push_back(static_cast<QPoly::Coeff>(c));
  }
  return QPoly(std::move(out));
}

// 1 + q + ... + q^{n-1}; the zero polynomial for n = 0.
inline QPoly q_int(long long n) {
  if (n < 0) throw std::invalid_argument("q_int: negative argument");
  return QPoly(std::vector<QPoly::Coeff>(static_cast<std::size_t>(n), 1));
}

inline QPoly q_factorial(long long n) {
  if (n < 0) throw std::invalid_argument("q_factorial: negative argument");
  QPoly p = QPoly::one();
  for (long long j = 1; j <= n; ++j) p *= q_int(j);
  return p;
}

// Gaussian binomial coefficient; 0 when k < 0 or k > n. Computed by the
// recurrence [n,k] = [n-1,k-1] + q^k [n-1,k].
inline QPoly q_binomial(long long n, long long k) {
  if (k < 0 || k > n) return {};
  k = std::min(k, n - k);
  std::vector<QPoly> row(static_cast<std::size_t>(k) + 1);
  row[0] = QPoly::one();
  for (long long m = 1; m <= n; ++m) {
    for (long long j = std::min(m, k); j >= 1; --j)
      row[static_cast<std::size_t>(j)] =
          row[static_cast<std::size_t>(j - 1)] +
          row[static_cast<std::size_t>(j)].shifted(j);
  }
  return row[static_cast<std::size_t>(k)];
}

// Same value as q_binomial, via exact factorial division. Kept as an
// independent route so the two computations can be checked against each
// other.
inline QPoly q_binomial_by_division(long long n, long long k) {
  if (k < 0 || k > n) return {};
  return divide_exact(q_factorial(n), q_factorial(k) * q_factorial(n - k));
}

// Gaussian multinomial coefficient [n; k_1,...,k_s]. 0 when any part is
// negative; throws when all parts are non-negative but do not sum to n
// (a malformed request, distinct from the defined-zero case).
inline QPoly q_multinomial(long long n, const std::vector<long long>& parts) {
  long long sum = 0;
  for (long long k : parts) {
    if (k < 0) return {};
    sum += k;
  }
  if (sum != n)
    throw std::invalid_argument("q_multinomial: parts sum to " +
                                std::to_string(sum) + ", expected " +
                                std::to_string(n));
  QPoly p = QPoly::one();
  long long rem = n;
  for (long long k : parts) {
    p *= q_binomial(rem, k);
    rem -= k;
  }
  return p;
}

}  // namespace qcoinv
