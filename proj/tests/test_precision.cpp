#include "relprec/precision.hpp"
#include "testutil.hpp"
#include "mpfr_oracle.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace relprec;
using relprec::testing::make_ap_judgment;
using relprec::testing::make_rp_judgment;
using relprec::testing::random_alpha;
using relprec::testing::random_rational;

TEST_CASE("log-ratio metric basics") {
    Enclosure m = rp_metric(Rational(2), Rational(1), 80);
    auto oracle = relprec::testing::oracle_ln(Rational(2), 200);
    CHECK(m.lo() <= oracle.lo);
    CHECK(oracle.hi <= m.hi());

    Enclosure zero = rp_metric(Rational(-7, 3), Rational(-7, 3), 80);
    CHECK(zero.lo() >= Rational(0));
    CHECK(zero.hi() <= Rational::pow2(-80));

    CHECK_THROWS_AS(rp_metric(Rational(1), Rational(-1), 64), std::domain_error);
    CHECK_THROWS_AS(rp_metric(Rational(0), Rational(1), 64), std::domain_error);
}

TEST_CASE("extended metric covers zero and sign mismatch") {
    ExtendedRp both_zero = rp_metric_ext(Rational(0), Rational(0), 64);
    CHECK_FALSE(both_zero.is_infinity);
    CHECK(both_zero.value->lo() == Rational(0));
    CHECK(both_zero.value->hi() == Rational(0));

    CHECK(rp_metric_ext(Rational(1), Rational(-1), 64).is_infinity);
    CHECK(rp_metric_ext(Rational(0), Rational(2), 64).is_infinity);

    ExtendedRp same = rp_metric_ext(Rational(3), Rational(3), 64);
    CHECK_FALSE(same.is_infinity);
    CHECK(same.value->contains(Rational(0)));
}

TEST_CASE("rp_check decides against the bound") {
    CHECK(rp_check(Rational(1), Rational(1), Rational(0)).outcome == CheckOutcome::Holds);
    CHECK(rp_check(Rational(1), Rational(2), Rational(1, 2)).outcome == CheckOutcome::Fails);
    auto holds = rp_check(Rational(1), Rational(2), Rational(1));
    CHECK(holds.outcome == CheckOutcome::Holds);
    CHECK(holds.judgment->certified_by() == "rp_check");
    CHECK(rp_check(Rational(1), Rational(-1), Rational(5)).outcome == CheckOutcome::Fails);
    CHECK(rp_check(Rational(1), Rational(2), Rational(-1)).outcome == CheckOutcome::Fails);
}

TEST_CASE("knife-edge comparisons report Undecided instead of guessing") {
    // a borderline comparison resolves under the default budget
    Rational x = Rational(1) + Rational::pow2(-40);
    CHECK(rp_check(Rational(1), x, Rational::pow2(-20)).outcome == CheckOutcome::Holds);
    CHECK(rp_check(Rational(1), x, Rational::pow2(-50)).outcome == CheckOutcome::Fails);

    // a zero bound against a nonzero-but-minuscule metric can never be decided:
    // the enclosure keeps straddling, so refinement stops at the cap
    Rational tiny = Rational(1) + Rational::pow2(-5000);
    RpCheckResult stuck = rp_check(Rational(1), tiny, Rational(0), {128, 1024});
    CHECK(stuck.outcome == CheckOutcome::Undecided);
    CHECK(stuck.work_bits_used == 1024);
    CHECK_FALSE(stuck.judgment.has_value());
}

TEST_CASE("absolute metric and check are exact") {
    CHECK(ap_metric(Rational(1), Rational(11, 10)) == Rational(1, 10));
    CHECK(ap_check(Rational(5), Rational(5), Rational(0)).outcome == CheckOutcome::Holds);
    CHECK(ap_check(Rational(0), Rational(1), Rational(1, 2)).outcome == CheckOutcome::Fails);
    CHECK_THROWS_AS(ap_check(Rational(0), Rational(0), Rational(-1)), std::invalid_argument);
}

TEST_CASE("rp combinator algebra") {
    RpJudgment j = *rp_check(Rational(1), Rational(2), Rational(1)).judgment;

    RpJudgment s = rp_symm(j);
    CHECK(s.exact() == Rational(2));
    CHECK(s.approx() == Rational(1));
    CHECK(s.alpha() == Rational(1));

    CHECK(rp_weaken(j, Rational(3, 2)).alpha() == Rational(3, 2));
    CHECK_THROWS_AS(rp_weaken(j, Rational(1, 2)), std::invalid_argument);

    RpJudgment sc = rp_scale(j, Rational(-3));
    CHECK(sc.exact() == Rational(-3));
    CHECK(sc.approx() == Rational(-6));
    CHECK(sc.alpha() == Rational(1));
    CHECK_THROWS_AS(rp_scale(j, Rational(0)), std::domain_error);

    RpJudgment pw = rp_abs_pow(sc, -2);
    CHECK(pw.exact() == Rational(1, 9));
    CHECK(pw.approx() == Rational(1, 36));
    CHECK(pw.alpha() == Rational(2));

    RpJudgment k = *rp_check(Rational(3), Rational(4), Rational(1)).judgment;
    RpJudgment prod = rp_mul(j, k);
    CHECK(prod.exact() == Rational(3));
    CHECK(prod.approx() == Rational(8));
    CHECK(prod.alpha() == Rational(2));
}

TEST_CASE("triangle composition reproduces the two-step bound") {
    RpJudgment first = *rp_check(Rational(1), Rational(3, 2), Rational(1, 2)).judgment;
    RpJudgment second = *rp_check(Rational(3, 2), Rational(2), Rational(1, 3)).judgment;
    RpJudgment chained = rp_triangle(first, second);
    CHECK(chained.exact() == Rational(1));
    CHECK(chained.approx() == Rational(2));
    CHECK(chained.alpha() == Rational(5, 6));
    // and ln 2 <= 5/6 really does hold
    CHECK(rp_check(Rational(1), Rational(2), Rational(5, 6)).outcome == CheckOutcome::Holds);
    CHECK_THROWS_AS(rp_triangle(first, first), std::invalid_argument);
}

TEST_CASE("exact addition rule") {
    RpJudgment a = *rp_check(Rational(2), Rational(2), Rational(0)).judgment;
    RpJudgment b = *rp_check(Rational(5), Rational(5), Rational(0)).judgment;
    RpJudgment sum = rp_add_exact(a, b, 96);
    CHECK(sum.exact() == Rational(7));
    CHECK(sum.approx() == Rational(7));
    CHECK(sum.alpha() >= Rational(0));
    CHECK(sum.alpha() <= Rational::pow2(-90));

    // equal bounds collapse the ratio to e^alpha exactly
    Rational r = Rational::from_decimal("0.693147");
    RpJudgment u = *rp_check(Rational(1), Rational(1), r).judgment;
    RpJudgment v = *rp_check(Rational(1), Rational(1), r).judgment;
    RpJudgment s = rp_add_exact(u, v, 96);
    CHECK(s.alpha() >= r);
    CHECK(s.alpha() - r <= Rational::pow2(-90));

    RpJudgment neg = *rp_check(Rational(-1), Rational(-1), Rational(0)).judgment;
    CHECK_THROWS_AS(rp_add_exact(a, neg, 64), std::domain_error);
    // both-negative operands stay valid
    RpJudgment neg2 = *rp_check(Rational(-3), Rational(-7, 2), Rational(1, 4)).judgment;
    RpJudgment negsum = rp_add_exact(neg, neg2, 96);
    CHECK(rp_check(negsum.exact(), negsum.approx(), negsum.alpha()).outcome ==
          CheckOutcome::Holds);
}

TEST_CASE("max addition rule") {
    RpJudgment a = *rp_check(Rational(1), Rational(1), Rational(1, 10)).judgment;
    RpJudgment b = *rp_check(Rational(2), Rational(2), Rational(1, 5)).judgment;
    CHECK(rp_add_max(a, b).alpha() == Rational(1, 5));
    CHECK(rp_add_max(a, a).alpha() == Rational(1, 10));
    RpJudgment neg = *rp_check(Rational(-1), Rational(-1), Rational(0)).judgment;
    CHECK_THROWS_AS(rp_add_max(a, neg), std::domain_error);

    // randomized: conclusions of the max rule re-certify
    SplitMix64 rng(31);
    for (int i = 0; i < 200; ++i) {
        int sign = rng.coin() ? 1 : -1;
        Rational base1 = random_rational(rng, 4, false), base2 = random_rational(rng, 4, false);
        RpJudgment j1 = make_rp_judgment(rng, Rational(sign) * base1, random_alpha(rng));
        RpJudgment j2 = make_rp_judgment(rng, Rational(sign) * base2, random_alpha(rng));
        RpJudgment sum = rp_add_max(j1, j2);
        CHECK(rp_check(sum.exact(), sum.approx(), sum.alpha()).outcome == CheckOutcome::Holds);
    }
}

TEST_CASE("ap combinator algebra") {
    ApJudgment j = *ap_check(Rational(0), Rational(1, 2), Rational(1, 2)).judgment;
    ApJudgment sc = ap_scale(j, Rational(-2));
    CHECK(sc.exact() == Rational(0));
    CHECK(sc.approx() == Rational(-1));
    CHECK(sc.alpha() == Rational(1));

    ApJudgment sh = ap_shift(j, Rational(7));
    CHECK(sh.exact() == Rational(7));
    CHECK(sh.approx() == Rational(15, 2));
    CHECK(sh.alpha() == Rational(1, 2));

    ApJudgment a = *ap_check(Rational(1), Rational(1), Rational(0)).judgment;
    ApJudgment b = *ap_check(Rational(2), Rational(2), Rational(0)).judgment;
    ApJudgment add = ap_add(a, b);
    CHECK(add.exact() == Rational(3));
    CHECK(add.approx() == Rational(3));
    CHECK(add.alpha() == Rational(0));

    CHECK(ap_symm(j).exact() == Rational(1, 2));
    CHECK(ap_weaken(j, Rational(2)).alpha() == Rational(2));
    CHECK_THROWS_AS(ap_weaken(j, Rational(1, 4)), std::invalid_argument);
}

TEST_CASE("ap product and quotient bounds") {
    // approx values 2 and 3 with bounds 1/10 and 1/5
    ApJudgment a = *ap_check(Rational(2), Rational(2), Rational(1, 10)).judgment;
    ApJudgment b = *ap_check(Rational(3), Rational(3), Rational(1, 5)).judgment;
    CHECK(ap_mul(a, b).alpha() == Rational(18, 25));

    ApJudgment e1 = *ap_check(Rational(5), Rational(5), Rational(0)).judgment;
    ApJudgment e2 = *ap_check(Rational(4), Rational(4), Rational(0)).judgment;
    CHECK(ap_mul(e1, e2).alpha() == Rational(0));
    CHECK(ap_div(e1, e2).alpha() == Rational(0));

    ApJudgment num = *ap_check(Rational(1), Rational(1), Rational(0)).judgment;
    ApJudgment den = *ap_check(Rational(2), Rational(2), Rational(1)).judgment;
    CHECK(ap_div(num, den).alpha() == Rational(1, 2));

    ApJudgment bad = *ap_check(Rational(1), Rational(1), Rational(1)).judgment;
    CHECK_THROWS_AS(ap_div(num, bad), std::domain_error);
}

TEST_CASE("relative-error conversion bound") {
    CHECK(rp_to_relerr_bound(Rational(0), 80) <= Rational::pow2(-79));
    Rational near_one = rp_to_relerr_bound(ln2_enclosure(80).midpoint(), 80);
    CHECK((near_one - Rational(1)).abs() <= Rational::pow2(-70));

    SplitMix64 rng(13);
    Rational prev_bound = rp_to_relerr_bound(Rational(0), 80);
    for (int i = 1; i <= 20; ++i) {
        Rational alpha(i, 7);
        Rational bound = rp_to_relerr_bound(alpha, 80);
        CHECK(prev_bound <= bound);
        prev_bound = bound;
    }

    // measured relative error never exceeds the converted bound
    for (int i = 0; i < 200; ++i) {
        Rational a = random_rational(rng, 6);
        RpJudgment j = make_rp_judgment(rng, a, random_alpha(rng));
        CHECK(relative_error(j.exact(), j.approx()) <= rp_to_relerr_bound(j.alpha(), 128));
    }
}

TEST_CASE("log conversion verifies through absolute values") {
    RpJudgment j = *rp_check(Rational(1), Rational(2), Rational(1)).judgment;
    CHECK(rp_to_ap_log(j).verified == CheckOutcome::Holds);

    RpJudgment id = *rp_check(Rational(5, 3), Rational(5, 3), Rational(0)).judgment;
    CHECK(rp_to_ap_log(id).verified == CheckOutcome::Holds);

    RpJudgment neg = *rp_check(Rational(-1), Rational(-2), Rational(1)).judgment;
    LogApConversion conv = rp_to_ap_log(neg);
    CHECK(conv.verified == CheckOutcome::Holds);
    CHECK(conv.alpha == Rational(1));
}

TEST_CASE("raw powers reject the undefined sign case") {
    RpJudgment neg = *rp_check(Rational(-2), Rational(-5, 2), Rational(1, 2)).judgment;
    CHECK_THROWS_AS(rp_pow_raw(neg, Rational(1, 2)), std::domain_error);
    RpJudgment sq = rp_pow_raw(neg, Rational(2));
    CHECK(sq.exact() == Rational(4));
    CHECK(sq.approx() == Rational(25, 4));
    CHECK(sq.alpha() == Rational(1));

    RpEnclosureJudgment gen = rp_abs_pow_general(neg, Rational(1, 2), 96);
    CHECK(gen.alpha == Rational(1, 4));
    // |a|^(1/2) = sqrt(2) lies in the reported enclosure
    CHECK(gen.exact.lo() * gen.exact.lo() <= Rational(2));
    CHECK(gen.exact.hi() * gen.exact.hi() >= Rational(2));
}

TEST_CASE("exact power law agrees with the scaled metric") {
    SplitMix64 rng(17);
    for (int i = 0; i < 50; ++i) {
        Rational x = random_rational(rng, 4, false);
        Rational y = random_rational(rng, 4, false);
        long k = rng.range(-4, 4);
        if (k == 0) k = 3;
        Enclosure direct = rp_metric(y.pow_int(k).abs(), x.pow_int(k).abs(), 96);
        Enclosure scaled = scale(rp_metric(y, x, 96), Rational(k < 0 ? -k : k));
        CHECK(direct.overlaps(scaled));
    }
}

TEST_CASE("metric axioms on sampled rationals") {
    SplitMix64 rng(99);
    Rational slack = Rational::pow2(-100);
    for (int i = 0; i < 300; ++i) {
        int sign = rng.coin() ? 1 : -1;
        Rational x = Rational(sign) * random_rational(rng, 6, false);
        Rational y = Rational(sign) * random_rational(rng, 6, false);
        Rational z = Rational(sign) * random_rational(rng, 6, false);

        Enclosure dxy = rp_metric(y, x, 128);
        CHECK(dxy.lo() >= Rational(0));

        Enclosure dyx = rp_metric(x, y, 128);
        CHECK(dxy.overlaps(dyx));
        CHECK(dxy.width() <= slack);
        CHECK(dyx.width() <= slack);

        Enclosure dxz = rp_metric(z, x, 128);
        Enclosure dyz = rp_metric(z, y, 128);
        CHECK(dxz.hi() <= dxy.hi() + dyz.hi() + Rational(2) * slack);

        // scale invariance
        Rational k = random_rational(rng, 3);
        Enclosure scaled = rp_metric(k * y, k * x, 128);
        CHECK(scaled.overlaps(dxy));

        // product law
        Rational x2 = Rational(sign) * random_rational(rng, 6, false);
        Rational y2 = Rational(sign) * random_rational(rng, 6, false);
        Enclosure dprod = rp_metric(y * y2, x * x2, 128);
        CHECK(dprod.hi() <= dxy.hi() + rp_metric(y2, x2, 128).hi() + Rational(2) * slack);

        // absolute-precision metric axioms, exact
        CHECK(ap_metric(x, y) == ap_metric(y, x));
        CHECK(ap_metric(x, x) == Rational(0));
        CHECK(ap_metric(x, z) <= ap_metric(x, y) + ap_metric(y, z));
    }
}

TEST_CASE("counterexample values are pinned") {
    RelErrCounterexamples c = relerr_counterexamples();
    CHECK(c.symm_forward == Rational(1, 10));
    CHECK(c.symm_reverse == Rational(1, 11));
    CHECK(c.tri_direct == Rational(1));
    CHECK(c.tri_via_first == Rational(1, 2));
    CHECK(c.tri_via_second == Rational(1, 3));
    CHECK(c.tri_sum == Rational(5, 6));
    CHECK(c.symmetry_broken);
    CHECK(c.triangle_broken);
    CHECK(c.rp_triangle_consistent);
}

TEST_CASE("randomized combinator soundness") {
    SplitMix64 rng(123);
    for (int i = 0; i < 120; ++i) {
        Rational a = random_rational(rng);
        RpJudgment j = make_rp_judgment(rng, a, random_alpha(rng));

        auto recheck = [](const RpJudgment& out) {
            CHECK(rp_check(out.exact(), out.approx(), out.alpha()).outcome ==
                  CheckOutcome::Holds);
        };
        recheck(rp_symm(j));
        recheck(rp_weaken(j, j.alpha() + random_alpha(rng)));
        Rational k = random_rational(rng, 3);
        recheck(rp_scale(j, k));
        recheck(rp_abs_pow(j, rng.range(-3, 3)));

        RpJudgment j2 = make_rp_judgment(rng, random_rational(rng), random_alpha(rng));
        recheck(rp_mul(j, j2));

        RpJudgment tail = make_rp_judgment(rng, j.approx(), random_alpha(rng));
        recheck(rp_triangle(j, tail));

        Rational b = Rational(j.exact().sign()) * random_rational(rng, 8, false);
        RpJudgment jb = make_rp_judgment(rng, b, random_alpha(rng));
        recheck(rp_add_exact(j, jb, 128));
        recheck(rp_add_max(j, jb));
    }
}
