#include "relprec/precision.hpp"

#include "relprec/detail_judgment.hpp"

#include <stdexcept>

namespace relprec {

const char* to_string(CheckOutcome o) {
    switch (o) {
        case CheckOutcome::Holds: return "Holds";
        case CheckOutcome::Fails: return "Fails";
        case CheckOutcome::Undecided: return "Undecided";
    }
    return "?";
}

Enclosure rp_metric(const Rational& approx, const Rational& exact, unsigned work_bits) {
    if (approx.is_zero() || exact.is_zero())
        throw std::domain_error("rp_metric: operands must be nonzero");
    if (approx.sign() != exact.sign())
        throw std::domain_error("rp_metric: operands must have the same sign");
    Rational ratio = approx / exact;
    return abs_enclosure(ln_enclosure(ratio, work_bits));
}

ExtendedRp rp_metric_ext(const Rational& x, const Rational& y, unsigned work_bits) {
    if (x.is_zero() && y.is_zero())
        return ExtendedRp::finite(Enclosure::point(Rational(0)));
    if (x.is_zero() || y.is_zero() || x.sign() != y.sign())
        return ExtendedRp::infinity();
    return ExtendedRp::finite(rp_metric(x, y, work_bits));
}

Rational ap_metric(const Rational& x, const Rational& y) { return (x - y).abs(); }

Rational relative_error(const Rational& x, const Rational& y) {
    if (x.is_zero()) throw std::domain_error("relative_error: reference value is zero");
    return ((x - y) / x).abs();
}

RpCheckResult rp_check(const Rational& exact, const Rational& approx, const Rational& alpha,
                       WorkBudget wb) {
    if (alpha.sign() < 0)
        return {CheckOutcome::Fails, "bound is negative", std::nullopt, 0};
    if (exact.is_zero() || approx.is_zero())
        return {CheckOutcome::Fails, "zero operand", std::nullopt, 0};
    if (exact.sign() != approx.sign())
        return {CheckOutcome::Fails, "sign mismatch", std::nullopt, 0};

    unsigned bits = wb.initial;
    for (;;) {
        Enclosure metric = rp_metric(approx, exact, bits);
        switch (enc_compare(metric, alpha)) {
            case EncOrder::CertainlyLE:
                return {CheckOutcome::Holds, "",
                        detail::JudgmentFactory::rp(exact, approx, alpha, "rp_check"), bits};
            case EncOrder::CertainlyGT:
                return {CheckOutcome::Fails, "metric exceeds bound", std::nullopt, bits};
            case EncOrder::Unknown:
                if (bits >= wb.cap)
                    return {CheckOutcome::Undecided, "enclosure straddles bound at work-bits cap",
                            std::nullopt, bits};
                bits = std::min(bits * 2, wb.cap);
        }
    }
}

ApCheckResult ap_check(const Rational& exact, const Rational& approx, const Rational& alpha) {
    if (alpha.sign() < 0) throw std::invalid_argument("ap_check: bound is negative");
    if (ap_metric(exact, approx) <= alpha)
        return {CheckOutcome::Holds, "",
                detail::JudgmentFactory::ap(exact, approx, alpha, "ap_check")};
    return {CheckOutcome::Fails, "absolute difference exceeds bound", std::nullopt};
}

// -- rp combinators -----------------------------------------------------------

RpJudgment rp_symm(const RpJudgment& j) {
    return detail::JudgmentFactory::rp(j.approx(), j.exact(), j.alpha(), "rp_symm");
}

RpJudgment rp_weaken(const RpJudgment& j, const Rational& delta) {
    if (delta < j.alpha()) throw std::invalid_argument("rp_weaken: delta < alpha");
    return detail::JudgmentFactory::rp(j.exact(), j.approx(), delta, "rp_weaken");
}

RpJudgment rp_scale(const RpJudgment& j, const Rational& k) {
    if (k.is_zero()) throw std::domain_error("rp_scale: k must be nonzero");
    return detail::JudgmentFactory::rp(k * j.exact(), k * j.approx(), j.alpha(), "rp_scale");
}

RpJudgment rp_abs_pow(const RpJudgment& j, long k) {
    Rational ex = j.exact().abs().pow_int(k);
    Rational ap = j.approx().abs().pow_int(k);
    Rational kk(k < 0 ? -k : k);
    return detail::JudgmentFactory::rp(ex, ap, kk * j.alpha(), "rp_abs_pow");
}

RpJudgment rp_pow_raw(const RpJudgment& j, const Rational& k) {
    if (!k.is_integer()) {
        if (j.exact().sign() < 0)
            throw std::domain_error(
                "rp_pow_raw: non-integer exponent over a negative base has no real value; "
                "use rp_abs_pow");
        throw std::domain_error("rp_pow_raw: non-integer exponent leaves the rationals; "
                                "use rp_abs_pow_general");
    }
    if (!k.num().fits_slong_p()) throw std::invalid_argument("rp_pow_raw: exponent too large");
    long ki = k.num().get_si();
    Rational ex = j.exact().pow_int(ki);
    Rational ap = j.approx().pow_int(ki);
    Rational kk(ki < 0 ? -ki : ki);
    return detail::JudgmentFactory::rp(ex, ap, kk * j.alpha(), "rp_pow_raw");
}

RpEnclosureJudgment rp_abs_pow_general(const RpJudgment& j, const Rational& k,
                                       unsigned work_bits) {
    // |a|^k = exp(k * ln|a|)
    auto power = [&](const Rational& base) {
        Enclosure lg = ln_enclosure(base.abs(), work_bits + 16);
        return exp_over(scale(lg, k), work_bits);
    };
    Rational ka = k.abs() * j.alpha();
    return RpEnclosureJudgment{power(j.exact()), power(j.approx()), ka, "rp_abs_pow_general"};
}

RpJudgment rp_mul(const RpJudgment& a, const RpJudgment& b) {
    return detail::JudgmentFactory::rp(a.exact() * b.exact(), a.approx() * b.approx(),
                                       a.alpha() + b.alpha(), "rp_mul");
}

RpJudgment rp_triangle(const RpJudgment& first, const RpJudgment& second) {
    if (!(first.approx() == second.exact()))
        throw std::invalid_argument("rp_triangle: middle values do not match");
    return detail::JudgmentFactory::rp(first.exact(), second.approx(),
                                       first.alpha() + second.alpha(), "rp_triangle");
}

namespace {
void require_same_sign_sum(const RpJudgment& a, const RpJudgment& b, const char* who) {
    if (a.exact().sign() != b.exact().sign())
        throw std::domain_error(std::string(who) + ": operands must have the same sign");
}
}  // namespace

RpJudgment rp_add_exact(const RpJudgment& a, const RpJudgment& b, unsigned work_bits) {
    require_same_sign_sum(a, b, "rp_add_exact");
    Enclosure ea = scale(exp_enclosure(a.alpha(), work_bits), a.approx());
    Enclosure eb = scale(exp_enclosure(b.alpha(), work_bits), b.approx());
    Rational denom = a.approx() + b.approx();
    Enclosure ratio = scale(ea + eb, denom.reciprocal());
    Rational gamma = ln_over(ratio, work_bits).hi();
    return detail::JudgmentFactory::rp(a.exact() + b.exact(), a.approx() + b.approx(), gamma,
                                       "rp_add_exact");
}

RpJudgment rp_add_max(const RpJudgment& a, const RpJudgment& b) {
    require_same_sign_sum(a, b, "rp_add_max");
    return detail::JudgmentFactory::rp(a.exact() + b.exact(), a.approx() + b.approx(),
                                       max(a.alpha(), b.alpha()), "rp_add_max");
}

// -- ap combinators -----------------------------------------------------------

ApJudgment ap_symm(const ApJudgment& j) {
    return detail::JudgmentFactory::ap(j.approx(), j.exact(), j.alpha(), "ap_symm");
}

ApJudgment ap_weaken(const ApJudgment& j, const Rational& delta) {
    if (delta < j.alpha()) throw std::invalid_argument("ap_weaken: delta < alpha");
    return detail::JudgmentFactory::ap(j.exact(), j.approx(), delta, "ap_weaken");
}

ApJudgment ap_shift(const ApJudgment& j, const Rational& k) {
    return detail::JudgmentFactory::ap(j.exact() + k, j.approx() + k, j.alpha(), "ap_shift");
}

ApJudgment ap_scale(const ApJudgment& j, const Rational& k) {
    return detail::JudgmentFactory::ap(k * j.exact(), k * j.approx(), k.abs() * j.alpha(),
                                       "ap_scale");
}

ApJudgment ap_add(const ApJudgment& a, const ApJudgment& b) {
    return detail::JudgmentFactory::ap(a.exact() + b.exact(), a.approx() + b.approx(),
                                       a.alpha() + b.alpha(), "ap_add");
}

ApJudgment ap_triangle(const ApJudgment& first, const ApJudgment& second) {
    if (!(first.approx() == second.exact()))
        throw std::invalid_argument("ap_triangle: middle values do not match");
    return detail::JudgmentFactory::ap(first.exact(), second.approx(),
                                       first.alpha() + second.alpha(), "ap_triangle");
}

ApJudgment ap_mul(const ApJudgment& a, const ApJudgment& b) {
    Rational bound = a.approx().abs() * b.alpha() + b.approx().abs() * a.alpha() +
                     a.alpha() * b.alpha();
    return detail::JudgmentFactory::ap(a.exact() * b.exact(), a.approx() * b.approx(), bound,
                                       "ap_mul");
}

ApJudgment ap_div(const ApJudgment& a, const ApJudgment& b) {
    Rational babs = b.approx().abs();
    if (!(babs > b.alpha()))
        throw std::domain_error("ap_div: requires |approx divisor| > divisor bound");
    Rational bound = (a.approx().abs() * b.alpha() + babs * a.alpha()) /
                     (babs * (babs - b.alpha()));
    return detail::JudgmentFactory::ap(a.exact() / b.exact(), a.approx() / b.approx(), bound,
                                       "ap_div");
}

// -- conversions ----------------------------------------------------------------

Rational rp_to_relerr_bound(const Rational& alpha, unsigned work_bits) {
    if (alpha.sign() < 0) throw std::invalid_argument("rp_to_relerr_bound: negative bound");
    return exp_enclosure(alpha, work_bits).hi() - Rational(1);
}

LogApConversion rp_to_ap_log(const RpJudgment& j, WorkBudget wb) {
    unsigned bits = wb.initial;
    Rational ratio = (j.approx() / j.exact()).abs();
    CheckOutcome verified = CheckOutcome::Undecided;
    Enclosure le = ln_enclosure(j.exact().abs(), bits);
    Enclosure la = ln_enclosure(j.approx().abs(), bits);
    for (;;) {
        Enclosure diff = abs_enclosure(ln_enclosure(ratio, bits));
        EncOrder ord = enc_compare(diff, j.alpha());
        if (ord == EncOrder::CertainlyLE) {
            verified = CheckOutcome::Holds;
            break;
        }
        if (ord == EncOrder::CertainlyGT) {
            verified = CheckOutcome::Fails;  // unreachable from a certified premise
            break;
        }
        if (bits >= wb.cap) break;
        bits = std::min(bits * 2, wb.cap);
    }
    return LogApConversion{le, la, j.alpha(), verified};
}

RelErrCounterexamples relerr_counterexamples(unsigned work_bits) {
    RelErrCounterexamples r{
        relative_error(Rational(1), Rational(11, 10)),
        relative_error(Rational(11, 10), Rational(1)),
        relative_error(Rational(1), Rational(2)),
        relative_error(Rational(1), Rational(3, 2)),
        relative_error(Rational(3, 2), Rational(2)),
        Rational(0),
        rp_metric(Rational(2), Rational(1), work_bits),
        rp_metric(Rational(3, 2), Rational(1), work_bits) +
            rp_metric(Rational(2), Rational(3, 2), work_bits),
    };
    r.tri_sum = r.tri_via_first + r.tri_via_second;
    r.symmetry_broken = !(r.symm_forward == r.symm_reverse);
    r.triangle_broken = r.tri_direct > r.tri_sum;
    r.rp_triangle_consistent = r.rp_direct.overlaps(r.rp_sum);
    return r;
}

}  // namespace relprec
