#pragma once

#include "relprec/rational.hpp"

namespace relprec {

/// Closed rational interval [lo, hi] certified to contain a real value.
/// Transcendental quantities enter the library only through enclosures, so
/// every inequality involving them can be decided conservatively.
class Enclosure {
public:
    Enclosure(Rational lo, Rational hi);
    static Enclosure point(Rational x) { return Enclosure(x, x); }

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational width() const { return hi_ - lo_; }
    Rational midpoint() const { return (lo_ + hi_) / Rational(2); }
    bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
    bool overlaps(const Enclosure& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }

    Enclosure operator-() const { return Enclosure(-hi_, -lo_); }
    friend Enclosure operator+(const Enclosure& a, const Enclosure& b) {
        return Enclosure(a.lo_ + b.lo_, a.hi_ + b.hi_);
    }
    friend Enclosure operator-(const Enclosure& a, const Enclosure& b) { return a + (-b); }

private:
    Rational lo_, hi_;
};

std::ostream& operator<<(std::ostream& os, const Enclosure& e);

/// Interval product (endpoints computed exactly).
Enclosure mul(const Enclosure& a, const Enclosure& b);
/// k * [lo, hi] for exact rational k.
Enclosure scale(const Enclosure& a, const Rational& k);
/// |[lo, hi]|.
Enclosure abs_enclosure(const Enclosure& a);

enum class EncOrder { CertainlyLE, CertainlyGT, Unknown };

/// CertainlyLE iff a.hi <= b.lo; CertainlyGT iff a.lo > b.hi; Unknown when the
/// intervals overlap (callers refine with more work bits).
EncOrder enc_compare(const Enclosure& a, const Enclosure& b);
EncOrder enc_compare(const Enclosure& a, const Rational& bound);

/// Enclosure of ln(x) for rational x > 0, width <= 2^-work_bits.
/// Argument-reduced arctanh series evaluated in outward-rounded fixed point.
Enclosure ln_enclosure(const Rational& x, unsigned work_bits);

/// Enclosure of exp(x); width <= 2^(s - work_bits) where 2^s is the power-of-two
/// scaling used for range reduction. The lower endpoint is always positive.
Enclosure exp_enclosure(const Rational& x, unsigned work_bits);

/// Enclosure of ln 2, memoized per work-bits level (thread safe).
Enclosure ln2_enclosure(unsigned work_bits);

/// Monotone image intervals: {ln,exp}([a,b]) = [f(a).lo, f(b).hi].
Enclosure ln_over(const Enclosure& positive, unsigned work_bits);
Enclosure exp_over(const Enclosure& e, unsigned work_bits);

}  // namespace relprec
