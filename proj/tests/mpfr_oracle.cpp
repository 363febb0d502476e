#include "mpfr_oracle.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace relprec::testing {

namespace {

// Exact conversion: every finite mpfr value is mantissa * 2^exp.
Rational to_rational(mpfr_t v) {
    if (mpfr_zero_p(v)) return Rational(0);
    mpz_class mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v);
    Rational r(mant);
    return r * Rational::pow2(static_cast<long>(e));
}

template <typename Op>
OracleInterval directed(const Rational& x, unsigned prec_bits, Op op) {
    mpfr_t lo, hi, t;
    mpfr_init2(lo, prec_bits);
    mpfr_init2(hi, prec_bits);
    mpfr_init2(t, prec_bits);

    // argument rounded down, then op rounded down (ln/exp are increasing)
    mpfr_set_z(t, x.num().get_mpz_t(), MPFR_RNDD);
    mpfr_div_z(t, t, x.den().get_mpz_t(), MPFR_RNDD);
    op(lo, t, MPFR_RNDD);

    mpfr_set_z(t, x.num().get_mpz_t(), MPFR_RNDU);
    mpfr_div_z(t, t, x.den().get_mpz_t(), MPFR_RNDU);
    op(hi, t, MPFR_RNDU);

    OracleInterval out{to_rational(lo), to_rational(hi)};
    mpfr_clear(lo);
    mpfr_clear(hi);
    mpfr_clear(t);
    if (out.hi < out.lo) throw std::logic_error("oracle: inverted interval");
    return out;
}

}  // namespace

OracleInterval oracle_ln(const Rational& x, unsigned prec_bits) {
    if (x.sign() <= 0) throw std::domain_error("oracle_ln: x must be positive");
    return directed(x, prec_bits,
                    [](mpfr_t out, mpfr_t in, mpfr_rnd_t rnd) { mpfr_log(out, in, rnd); });
}

OracleInterval oracle_exp(const Rational& x, unsigned prec_bits) {
    return directed(x, prec_bits,
                    [](mpfr_t out, mpfr_t in, mpfr_rnd_t rnd) { mpfr_exp(out, in, rnd); });
}

}  // namespace relprec::testing
