#pragma once

#include "relprec/precision.hpp"
#include "relprec/prng.hpp"

#include <stdexcept>

namespace relprec::testing {

// Nonzero rational with magnitude roughly in [2^-mag, 2^mag].
inline Rational random_rational(SplitMix64& rng, int mag = 8, bool allow_negative = true) {
    long num = rng.range(1, 1L << 12);
    long den = rng.range(1, 1L << 12);
    Rational r = Rational(num, den) * Rational::pow2(rng.range(-mag, mag));
    if (allow_negative && rng.coin()) r = -r;
    return r;
}

// Nonnegative bound, dyadic so comparisons stay cheap.
inline Rational random_alpha(SplitMix64& rng, long max_thousandths = 2048) {
    return Rational(rng.range(0, max_thousandths), 1024);
}

inline Rational sample_between(SplitMix64& rng, const Rational& lo, const Rational& hi) {
    Rational t(static_cast<long>(rng.below(1ULL << 32)), 1);
    return lo + (hi - lo) * t * Rational::pow2(-32);
}

// Constructs a certified judgment "a ~ a*r ; alpha" by sampling r from the
// enclosure of [e^-alpha, e^alpha] and re-certifying; sampling never assumes
// the property under test. Falls back to the inner (guaranteed) interval and
// finally to r = 1.
inline RpJudgment make_rp_judgment(SplitMix64& rng, const Rational& a, const Rational& alpha,
                                   unsigned work_bits = 128) {
    Enclosure lo_enc = exp_enclosure(-alpha, work_bits);
    Enclosure hi_enc = exp_enclosure(alpha, work_bits);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Rational r = sample_between(rng, lo_enc.lo(), hi_enc.hi());
        if (r.sign() <= 0) continue;
        RpCheckResult c = rp_check(a, a * r, alpha);
        if (c.outcome == CheckOutcome::Holds) return *c.judgment;
    }
    if (lo_enc.hi() <= hi_enc.lo()) {
        Rational r = sample_between(rng, lo_enc.hi(), hi_enc.lo());
        RpCheckResult c = rp_check(a, a * r, alpha);
        if (c.outcome == CheckOutcome::Holds) return *c.judgment;
    }
    RpCheckResult c = rp_check(a, a, alpha);
    if (c.outcome != CheckOutcome::Holds)
        throw std::logic_error("make_rp_judgment: identity pair failed to certify");
    return *c.judgment;
}

inline ApJudgment make_ap_judgment(SplitMix64& rng, const Rational& a, const Rational& alpha) {
    Rational d = sample_between(rng, -alpha, alpha);
    ApCheckResult c = ap_check(a, a + d, alpha);
    if (c.outcome != CheckOutcome::Holds)
        throw std::logic_error("make_ap_judgment: sampled offset failed to certify");
    return *c.judgment;
}

}  // namespace relprec::testing
