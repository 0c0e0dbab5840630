#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <gmpxx.h>

namespace corevote {

static_assert(sizeof(long) == sizeof(long long), "LP64 platform expected");

/// Exact fraction backed by GMP. Always kept in lowest terms with a positive
/// denominator.
class Rational {
 public:
  Rational() = default;
  Rational(const Rational&) = default;
  Rational(Rational&& o) noexcept { mpq_swap(value_.get_mpq_t(), o.value_.get_mpq_t()); }
  Rational& operator=(const Rational&) = default;
  Rational& operator=(Rational&& o) noexcept {
    mpq_swap(value_.get_mpq_t(), o.value_.get_mpq_t());
    return *this;
  }
  ~Rational() = default;
  Rational(int value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long long value) : value_(static_cast<long>(value)) {}  // NOLINT
  Rational(const mpz_class& value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

  /// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed
  /// text or a zero denominator.
  static Rational parse(std::string_view text);

  mpz_class num() const { return value_.get_num(); }
  mpz_class den() const { return value_.get_den(); }
  const mpq_class& gmp() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  double to_double() const { return value_.get_d(); }

  /// Lowest-terms text, "p/q" or "p" when the denominator is 1.
  std::string str() const { return value_.get_str(); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class value_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// Least common multiple of the denominators of a range of rationals.
template <typename Range>
mpz_class denominator_lcm(const Range& values) {
  mpz_class l = 1;
  for (const Rational& v : values) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.gmp().get_den_mpz_t());
  }
  return l;
}

// Hooks Eigen looks up through ADL.
inline const Rational& conj(const Rational& x) { return x; }
inline const Rational& real(const Rational& x) { return x; }
inline Rational imag(const Rational&) { return 0; }
inline Rational abs2(const Rational& x) { return x * x; }

}  // namespace corevote

namespace Eigen {

template <>
struct NumTraits<corevote::Rational> : GenericNumTraits<corevote::Rational> {
  typedef corevote::Rational Real;
  typedef corevote::Rational NonInteger;
  typedef corevote::Rational Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace corevote {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

}  // namespace corevote
