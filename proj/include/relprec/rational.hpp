#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace relprec {

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator; zero is 0/1. All arithmetic is exact.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long n, long d);
    Rational(mpz_class n, mpz_class d);
    explicit Rational(const mpz_class& n) : v_(n) {}
    explicit Rational(mpq_class q);

    static Rational pow2(long e);

    /// Parses "num/den" or a bare integer string.
    static Rational from_fraction(std::string_view text);
    /// Parses a decimal literal like "1.25" exactly (no binary rounding).
    static Rational from_decimal(std::string_view text);

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational abs() const;
    Rational reciprocal() const;

    /// Largest s with 2^s <= |x|. Requires x != 0.
    long floor_log2() const;

    /// x^k with integer k (k < 0 requires x != 0).
    Rational pow_int(long k) const;

    std::string fraction_str() const;
    /// Decimal rendering with `sig_digits` significant digits, computed by
    /// exact integer arithmetic. Display only.
    std::string decimal_str(int sig_digits = 12) const;

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational abs(const Rational& r) { return r.abs(); }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Dyadic value m * 2^e with arbitrary-size mantissa. Canonical form keeps the
/// mantissa odd (or zero, with exponent 0), so equal values have equal
/// representations. These are the emulated floating-point numbers.
class Dyadic {
public:
    Dyadic() : man_(0), exp_(0) {}
    Dyadic(mpz_class mantissa, long exponent);

    /// Conversion from a rational whose denominator is a power of two.
    /// Throws std::domain_error otherwise.
    static Dyadic from_rational(const Rational& x);

    const mpz_class& mantissa() const { return man_; }
    long exponent() const { return exp_; }
    bool is_zero() const { return man_ == 0; }
    int sign() const { return sgn(man_); }
    /// Bit length of |mantissa| (0 for zero).
    long mantissa_bits() const;

    Rational to_rational() const;

    Dyadic operator-() const { return Dyadic(mpz_class(-man_), exp_); }
    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.exp_ == b.exp_ && a.man_ == b.man_;
    }

private:
    mpz_class man_;
    long exp_;
};

std::ostream& operator<<(std::ostream& os, const Dyadic& d);

}  // namespace relprec
