#include "relprec/rational.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace relprec {

Rational::Rational(long n, long d) : Rational(mpz_class(n), mpz_class(d)) {}

Rational::Rational(mpz_class n, mpz_class d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(std::move(n), std::move(d));
    v_.canonicalize();
}

Rational::Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

Rational Rational::pow2(long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
    return e >= 0 ? Rational(p) : Rational(mpz_class(1), p);
}

Rational Rational::from_fraction(std::string_view text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos)
            return Rational(mpz_class(std::string(text), 10));
        mpz_class n(std::string(text.substr(0, slash)), 10);
        mpz_class d(std::string(text.substr(slash + 1)), 10);
        return Rational(std::move(n), std::move(d));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("Rational: cannot parse \"" + std::string(text) + "\"");
    }
}

Rational Rational::from_decimal(std::string_view text) {
    std::string s(text);
    bool negative = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        negative = s[i] == '-';
        ++i;
    }
    std::string int_part, frac_part;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) int_part += s[i++];
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) frac_part += s[i++];
    }
    if (i != s.size() || int_part.empty())
        throw std::invalid_argument("Rational: bad decimal literal \"" + s + "\"");
    mpz_class num(int_part + frac_part, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
    if (negative) num = -num;
    return Rational(std::move(num), std::move(den));
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(v_))); }

Rational Rational::reciprocal() const {
    if (is_zero()) throw std::domain_error("Rational: reciprocal of zero");
    return Rational(mpq_class(1 / v_));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(mpq_class(a.v_ / b.v_));
}

long Rational::floor_log2() const {
    if (is_zero()) throw std::domain_error("Rational: floor_log2 of zero");
    mpz_class n = ::abs(num());
    const mpz_class& d = den();
    long s = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
    auto ge_pow2 = [&](long e) {
        // |x| >= 2^e  <=>  n >= d * 2^e
        mpz_class lhs = n, rhs = d;
        if (e >= 0)
            mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<unsigned long>(e));
        else
            mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<unsigned long>(-e));
        return lhs >= rhs;
    };
    while (!ge_pow2(s)) --s;
    while (ge_pow2(s + 1)) ++s;
    return s;
}

Rational Rational::pow_int(long k) const {
    if (k == 0) return Rational(1);
    if (is_zero() && k < 0) throw std::domain_error("Rational: negative power of zero");
    unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), num().get_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), den().get_mpz_t(), e);
    return k > 0 ? Rational(n, d) : Rational(d, n);
}

std::string Rational::fraction_str() const {
    return num().get_str() + "/" + den().get_str();
}

std::string Rational::decimal_str(int sig_digits) const {
    if (sig_digits < 1) sig_digits = 1;
    if (is_zero()) return "0";
    // e10: largest e with 10^e <= |x|
    Rational a = abs();
    long e10 = static_cast<long>(static_cast<double>(a.floor_log2()) * 0.30102999566398);
    auto pow10 = [](long e) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
        return e >= 0 ? Rational(p) : Rational(mpz_class(1), p);
    };
    while (a < pow10(e10)) --e10;
    while (a >= pow10(e10 + 1)) ++e10;

    // digits = round(|x| * 10^(sig-1-e10)), half away from zero
    Rational scaled = a * pow10(sig_digits - 1 - e10);
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.num().get_mpz_t(), scaled.den().get_mpz_t());
    if (mpz_class(2 * r) >= scaled.den()) q += 1;
    std::string digits = q.get_str();
    if (static_cast<int>(digits.size()) > sig_digits) {
        // rounding carried into one more digit (e.g. 999.96 -> 1000)
        ++e10;
        digits.pop_back();
    }

    std::string out;
    if (sign() < 0) out += "-";
    if (e10 >= 0 && e10 <= 14) {
        if (e10 + 1 >= static_cast<long>(digits.size())) {
            out += digits;
            out += std::string(e10 + 1 - digits.size(), '0');
        } else {
            out += digits.substr(0, e10 + 1) + "." + digits.substr(e10 + 1);
        }
    } else if (e10 < 0 && e10 >= -4) {
        out += "0." + std::string(-e10 - 1, '0') + digits;
    } else {
        out += digits.substr(0, 1);
        if (digits.size() > 1) out += "." + digits.substr(1);
        out += "e" + std::to_string(e10);
    }
    // trim trailing zeros in a fractional part
    if (out.find('.') != std::string::npos && out.find('e') == std::string::npos) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    os << r.num().get_str();
    if (r.den() != 1) os << "/" << r.den().get_str();
    return os;
}

Dyadic::Dyadic(mpz_class mantissa, long exponent) : man_(std::move(mantissa)), exp_(exponent) {
    if (man_ == 0) {
        exp_ = 0;
        return;
    }
    unsigned long tz = mpz_scan1(man_.get_mpz_t(), 0);
    if (tz > 0) {
        mpz_fdiv_q_2exp(man_.get_mpz_t(), man_.get_mpz_t(), tz);
        exp_ += static_cast<long>(tz);
    }
}

Dyadic Dyadic::from_rational(const Rational& x) {
    if (x.is_zero()) return Dyadic();
    const mpz_class& d = x.den();
    // lowest terms: denominator must be exactly 2^j
    if (mpz_popcount(d.get_mpz_t()) != 1)
        throw std::domain_error("Dyadic: denominator is not a power of two");
    long j = static_cast<long>(mpz_scan1(d.get_mpz_t(), 0));
    return Dyadic(x.num(), -j);
}

long Dyadic::mantissa_bits() const {
    if (man_ == 0) return 0;
    return static_cast<long>(mpz_sizeinbase(man_.get_mpz_t(), 2));
}

Rational Dyadic::to_rational() const {
    if (man_ == 0) return Rational(0);
    mpz_class shifted;
    if (exp_ >= 0) {
        mpz_mul_2exp(shifted.get_mpz_t(), man_.get_mpz_t(), static_cast<unsigned long>(exp_));
        return Rational(shifted);
    }
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(-exp_));
    return Rational(man_, den);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    long e = std::min(a.exp_, b.exp_);
    mpz_class ma = a.man_, mb = b.man_;
    mpz_mul_2exp(ma.get_mpz_t(), ma.get_mpz_t(), static_cast<unsigned long>(a.exp_ - e));
    mpz_mul_2exp(mb.get_mpz_t(), mb.get_mpz_t(), static_cast<unsigned long>(b.exp_ - e));
    return Dyadic(ma + mb, e);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero() || b.is_zero()) return Dyadic();
    return Dyadic(mpz_class(a.man_ * b.man_), a.exp_ + b.exp_);
}

std::ostream& operator<<(std::ostream& os, const Dyadic& d) {
    return os << d.to_rational();
}

}  // namespace relprec
