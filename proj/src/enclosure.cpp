#include "relprec/enclosure.hpp"

#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>

namespace relprec {

Enclosure::Enclosure(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw std::invalid_argument("Enclosure: lo > hi");
}

std::ostream& operator<<(std::ostream& os, const Enclosure& e) {
    return os << "[" << e.lo() << ", " << e.hi() << "]";
}

Enclosure mul(const Enclosure& a, const Enclosure& b) {
    Rational c1 = a.lo() * b.lo();
    Rational c2 = a.lo() * b.hi();
    Rational c3 = a.hi() * b.lo();
    Rational c4 = a.hi() * b.hi();
    Rational lo = min(min(c1, c2), min(c3, c4));
    Rational hi = max(max(c1, c2), max(c3, c4));
    return Enclosure(lo, hi);
}

Enclosure scale(const Enclosure& a, const Rational& k) {
    if (k.sign() >= 0) return Enclosure(k * a.lo(), k * a.hi());
    return Enclosure(k * a.hi(), k * a.lo());
}

Enclosure abs_enclosure(const Enclosure& a) {
    if (a.lo().sign() >= 0) return a;
    if (a.hi().sign() <= 0) return -a;
    return Enclosure(Rational(0), max(-a.lo(), a.hi()));
}

EncOrder enc_compare(const Enclosure& a, const Enclosure& b) {
    if (a.hi() <= b.lo()) return EncOrder::CertainlyLE;
    if (a.lo() > b.hi()) return EncOrder::CertainlyGT;
    return EncOrder::Unknown;
}

EncOrder enc_compare(const Enclosure& a, const Rational& bound) {
    return enc_compare(a, Enclosure::point(bound));
}

// ---------------------------------------------------------------------------
// Fixed-point interval engine. Values are integer multiples of 2^-W; every
// inexact operation rounds the lower endpoint down and the upper endpoint up,
// so an interval computed here always contains the exact real result.
// ---------------------------------------------------------------------------
namespace {

struct Fix {
    mpz_class lo, hi;
};

mpz_class shr_floor(const mpz_class& a, unsigned w) {
    mpz_class r;
    mpz_fdiv_q_2exp(r.get_mpz_t(), a.get_mpz_t(), w);
    return r;
}

mpz_class shr_ceil(const mpz_class& a, unsigned w) {
    mpz_class r;
    mpz_cdiv_q_2exp(r.get_mpz_t(), a.get_mpz_t(), w);
    return r;
}

mpz_class div_floor(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

mpz_class div_ceil(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

mpz_class pow2z(unsigned w) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, w);
    return p;
}

Fix fix_from_rational(const Rational& lo, const Rational& hi, unsigned w) {
    mpz_class nl = lo.num(), nh = hi.num();
    mpz_mul_2exp(nl.get_mpz_t(), nl.get_mpz_t(), w);
    mpz_mul_2exp(nh.get_mpz_t(), nh.get_mpz_t(), w);
    return Fix{div_floor(nl, lo.den()), div_ceil(nh, hi.den())};
}

Fix fix_mul(const Fix& a, const Fix& b, unsigned w) {
    mpz_class c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
    mpz_class lo = std::min(std::min(c1, c2), std::min(c3, c4));
    mpz_class hi = std::max(std::max(c1, c2), std::max(c3, c4));
    return Fix{shr_floor(lo, w), shr_ceil(hi, w)};
}

Fix fix_div_ui(const Fix& a, unsigned long k) {
    mpz_class kz(static_cast<unsigned long>(k));
    return Fix{div_floor(a.lo, kz), div_ceil(a.hi, kz)};
}

mpz_class fix_max_abs(const Fix& a) {
    mpz_class al = abs(a.lo), ah = abs(a.hi);
    return al > ah ? al : ah;
}

Rational fix_to_rational(const mpz_class& v, unsigned w) {
    return Rational(v) * Rational::pow2(-static_cast<long>(w));
}

// Enclosure of arctanh(t) for |t| <= 1/3, as a Fix at scale 2^-w. The series
// remainder after the term with exponent 2i+1 is at most
// |t|^(2i+3)/(2i+3) * 1/(1 - t^2) <= |t|^(2i+3)/(2i+3) * 9/8.
Fix atanh_fix(const Rational& t, unsigned w, const mpz_class& rem_target) {
    Fix tf = fix_from_rational(t, t, w);
    mpz_class tl = abs(tf.lo), th = abs(tf.hi);
    mpz_class ta_lo = std::min(tl, th), ta_hi = std::max(tl, th);
    if (sgn(tf.lo) < 0 && sgn(tf.hi) > 0) ta_lo = 0;
    Fix t2{shr_floor(ta_lo * ta_lo, w), shr_ceil(ta_hi * ta_hi, w)};

    Fix pw = tf;
    Fix sum{0, 0};
    for (unsigned long i = 0; i < 1000000; ++i) {
        Fix term = fix_div_ui(pw, 2 * i + 1);
        sum.lo += term.lo;
        sum.hi += term.hi;
        pw = fix_mul(pw, t2, w);
        mpz_class rem = div_ceil(fix_max_abs(pw) * 9, mpz_class(8 * (2 * i + 3)));
        if (rem <= rem_target) {
            sum.lo -= rem;
            sum.hi += rem;
            return sum;
        }
    }
    throw std::logic_error("atanh_fix: series did not converge");
}

unsigned quantize_bits(unsigned bits) { return ((bits + 63) / 64) * 64; }

unsigned long bitlen(long v) {
    unsigned long b = 0;
    unsigned long u = static_cast<unsigned long>(v < 0 ? -v : v);
    while (u) {
        ++b;
        u >>= 1;
    }
    return b;
}

}  // namespace

Enclosure ln2_enclosure(unsigned work_bits) {
    unsigned level = quantize_bits(work_bits);
    static std::mutex memo_mutex;
    static std::map<unsigned, Enclosure> memo;
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = memo.find(level);
        if (it != memo.end()) return it->second;
    }
    // ln 2 = 2 * arctanh(1/3)
    unsigned w = level + 32;
    mpz_class target = pow2z(w - level) / 32;
    Fix s = atanh_fix(Rational(1, 3), w, target);
    Enclosure result(fix_to_rational(2 * s.lo, w), fix_to_rational(2 * s.hi, w));
    std::lock_guard<std::mutex> lock(memo_mutex);
    memo.emplace(level, result);
    return result;
}

Enclosure ln_enclosure(const Rational& x, unsigned work_bits) {
    if (x.sign() <= 0) throw std::domain_error("ln_enclosure: argument must be positive");
    if (x == Rational(1)) return Enclosure::point(Rational(0));

    // x = 2^k * r with r in [3/4, 3/2), so t = (r-1)/(r+1) lands in [-1/7, 1/5)
    long k = x.floor_log2();
    Rational r = x * Rational::pow2(-k);
    if (r >= Rational(3, 2)) {
        r = r / Rational(2);
        k += 1;
    }

    Rational target_width = Rational::pow2(-static_cast<long>(work_bits));
    for (unsigned w = work_bits + 32;; w += 64) {
        Enclosure series = Enclosure::point(Rational(0));
        if (r != Rational(1)) {
            Rational t = (r - Rational(1)) / (r + Rational(1));
            mpz_class target = pow2z(w - work_bits) / 32;
            Fix s = atanh_fix(t, w, target);
            series = Enclosure(fix_to_rational(2 * s.lo, w), fix_to_rational(2 * s.hi, w));
        }
        Enclosure result = series;
        if (k != 0) {
            unsigned wb2 = work_bits + 8 + static_cast<unsigned>(bitlen(k));
            result = scale(ln2_enclosure(wb2), Rational(k)) + series;
        }
        if (result.width() <= target_width) return result;
    }
}

Enclosure exp_enclosure(const Rational& x, unsigned work_bits) {
    if (x.is_zero()) return Enclosure::point(Rational(1));

    // choose s with z = x - s*ln2 inside [-3/4, 3/4]
    Rational l2mid = ln2_enclosure(64).midpoint();
    Rational est = x / l2mid + Rational(1, 2);
    mpz_class sz;
    mpz_fdiv_q(sz.get_mpz_t(), est.num().get_mpz_t(), est.den().get_mpz_t());
    if (!sz.fits_slong_p())
        throw std::invalid_argument("exp_enclosure: argument magnitude unsupported");
    long s = sz.get_si();

    const Rational three_quarters(3, 4);
    unsigned wbz = work_bits + 16 + static_cast<unsigned>(bitlen(s) + 4);
    Enclosure l2 = ln2_enclosure(wbz);
    Enclosure z = Enclosure::point(x) - scale(l2, Rational(s));
    for (int guard = 0; z.hi() > three_quarters || z.lo() < -three_quarters; ++guard) {
        if (guard > 256) throw std::logic_error("exp_enclosure: range reduction stalled");
        if (z.hi() > three_quarters) {
            s += 1;
            z = z - l2;
        } else {
            s -= 1;
            z = z + l2;
        }
    }

    Rational target_width = Rational::pow2(-static_cast<long>(work_bits));
    for (unsigned w = work_bits + 32;; w += 64) {
        Fix zf = fix_from_rational(z.lo(), z.hi(), w);
        mpz_class za = fix_max_abs(zf);
        mpz_class one = pow2z(w);
        Fix term{one, one};
        Fix sum = term;
        mpz_class target = pow2z(w - work_bits) / 32;
        for (unsigned long i = 1; i < 1000000; ++i) {
            term = fix_div_ui(fix_mul(term, zf, w), i);
            sum.lo += term.lo;
            sum.hi += term.hi;
            mpz_class denom = mpz_class(i + 1) * one - za;
            mpz_class rem = div_ceil(fix_max_abs(term) * za, denom);
            if (rem <= target) {
                sum.lo -= rem;
                sum.hi += rem;
                break;
            }
        }
        // e^z >= 1 + z keeps the lower endpoint positive
        mpz_class floor1z = one + zf.lo;
        if (sum.lo < floor1z) sum.lo = floor1z;
        Enclosure reduced(fix_to_rational(sum.lo, w), fix_to_rational(sum.hi, w));
        if (reduced.width() <= target_width)
            return scale(reduced, Rational::pow2(s));
    }
}

Enclosure ln_over(const Enclosure& positive, unsigned work_bits) {
    if (positive.lo().sign() <= 0)
        throw std::domain_error("ln_over: interval must be strictly positive");
    return Enclosure(ln_enclosure(positive.lo(), work_bits).lo(),
                     ln_enclosure(positive.hi(), work_bits).hi());
}

Enclosure exp_over(const Enclosure& e, unsigned work_bits) {
    return Enclosure(exp_enclosure(e.lo(), work_bits).lo(),
                     exp_enclosure(e.hi(), work_bits).hi());
}

}  // namespace relprec
