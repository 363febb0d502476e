#include "relprec/enclosure.hpp"
#include "relprec/prng.hpp"
#include "mpfr_oracle.hpp"

#include <doctest.h>

#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

using namespace relprec;
using relprec::testing::oracle_exp;
using relprec::testing::oracle_ln;

namespace {
// the tight oracle interval must sit inside the claimed enclosure
void check_encloses(const Enclosure& enc, const testing::OracleInterval& oracle) {
    CHECK(enc.lo() <= oracle.lo);
    CHECK(oracle.hi <= enc.hi());
}
}  // namespace

TEST_CASE("enclosure ordering matches the comparison contract") {
    Enclosure a(Rational(0), Rational(1)), b(Rational(2), Rational(3));
    CHECK(enc_compare(a, b) == EncOrder::CertainlyLE);
    CHECK(enc_compare(b, a) == EncOrder::CertainlyGT);
    CHECK(enc_compare(Enclosure(Rational(0), Rational(2)), Enclosure(Rational(1), Rational(3))) ==
          EncOrder::Unknown);
    CHECK_THROWS_AS(Enclosure(Rational(1), Rational(0)), std::invalid_argument);
}

TEST_CASE("ln of one is exactly zero") {
    Enclosure e = ln_enclosure(Rational(1), 60);
    CHECK(e.contains(Rational(0)));
    CHECK(e.width() <= Rational::pow2(-60));
}

TEST_CASE("ln enclosure of 2 brackets the independently computed value") {
    Enclosure e = ln_enclosure(Rational(2), 60);
    CHECK(e.width() <= Rational::pow2(-60));
    check_encloses(e, oracle_ln(Rational(2), 200));
    // 0.6931471805599453...
    Rational approx = Rational::from_decimal("0.6931471805599453");
    CHECK((e.midpoint() - approx).abs() <= Rational::pow2(-50));
}

TEST_CASE("ln(1/x) is the negation of ln(x) up to widths") {
    Enclosure a = ln_enclosure(Rational(1, 2), 60);
    Enclosure b = -ln_enclosure(Rational(2), 60);
    CHECK(a.overlaps(b));
}

TEST_CASE("exp enclosures bracket the independently computed value") {
    CHECK(exp_enclosure(Rational(0), 60).contains(Rational(1)));
    check_encloses(exp_enclosure(Rational(-1), 80), oracle_exp(Rational(-1), 200));
    CHECK((exp_enclosure(Rational(-1), 80).midpoint() -
           Rational::from_decimal("0.36787944117144"))
              .abs() <= Rational::pow2(-40));
    check_encloses(exp_enclosure(Rational(7, 3), 80), oracle_exp(Rational(7, 3), 200));
    // scaling stays exact for large arguments
    check_encloses(exp_enclosure(Rational(50), 80), oracle_exp(Rational(50), 400));
    CHECK(exp_enclosure(Rational(-200), 80).lo() > Rational(0));
}

TEST_CASE("exp of the ln-2 midpoint lands next to 2") {
    Rational mid = ln2_enclosure(80).midpoint();
    Enclosure e = exp_enclosure(mid, 80);
    CHECK((e.lo() - Rational(2)).abs() <= Rational::pow2(-70));
    CHECK((e.hi() - Rational(2)).abs() <= Rational::pow2(-70));
}

TEST_CASE("random ln/exp enclosures agree with the oracle") {
    SplitMix64 rng(2024);
    for (int i = 0; i < 40; ++i) {
        Rational x(rng.range(1, 4000), rng.range(1, 4000));
        check_encloses(ln_enclosure(x, 96), oracle_ln(x, 300));
        Rational z = Rational(rng.range(-64, 64), 16);
        check_encloses(exp_enclosure(z, 96), oracle_exp(z, 300));
    }
}

TEST_CASE("logarithm additivity within enclosure widths") {
    SplitMix64 rng(7);
    for (int i = 0; i < 60; ++i) {
        Rational x(rng.range(1, 999), rng.range(1, 999));
        Rational y(rng.range(1, 999), rng.range(1, 999));
        Enclosure sum = ln_enclosure(x, 80) + ln_enclosure(y, 80);
        CHECK(ln_enclosure(x * y, 80).overlaps(sum));
    }
}

TEST_CASE("exp of a ln enclosure brackets the argument") {
    SplitMix64 rng(11);
    for (int i = 0; i < 30; ++i) {
        Rational x(rng.range(1, 999), rng.range(1, 999));
        Enclosure lg = ln_enclosure(x, 80);
        Enclosure back = exp_over(lg, 80);
        CHECK(back.contains(x));
    }
}

TEST_CASE("enclosure widths shrink with the work-bits ladder") {
    for (const Rational& x : {Rational(3), Rational(7, 5), Rational(1, 10), Rational(977, 13)}) {
        Rational prev_width(-1);
        for (unsigned wb = 16; wb <= 48; ++wb) {
            Enclosure e = ln_enclosure(x, wb);
            CHECK(e.width() <= Rational::pow2(-static_cast<long>(wb)));
            if (prev_width.sign() >= 0) {
                // at least halves, up to the guaranteed cap
                CHECK(e.width() <= max(prev_width / Rational(2),
                                       Rational::pow2(-static_cast<long>(wb))));
            }
            prev_width = e.width();
        }
    }
}

TEST_CASE("ln rejects nonpositive arguments") {
    CHECK_THROWS_AS(ln_enclosure(Rational(0), 32), std::domain_error);
    CHECK_THROWS_AS(ln_enclosure(Rational(-3), 32), std::domain_error);
}

TEST_CASE("enclosure evaluation is re-entrant across threads") {
    // concurrent first use exercises the shared ln-2 memo
    std::vector<Rational> inputs;
    SplitMix64 rng(404);
    for (int i = 0; i < 32; ++i)
        inputs.push_back(Rational(rng.range(1, 5000), rng.range(1, 5000)));

    std::vector<Enclosure> serial;
    for (const auto& x : inputs) serial.push_back(ln_enclosure(x, 200));

    std::vector<std::optional<Enclosure>> parallel(inputs.size());
    std::vector<std::thread> workers;
    for (int t = 0; t < 4; ++t)
        workers.emplace_back([&, t] {
            for (std::size_t i = t; i < inputs.size(); i += 4)
                parallel[i] = ln_enclosure(inputs[i], 200);
        });
    for (auto& w : workers) w.join();

    for (std::size_t i = 0; i < inputs.size(); ++i) {
        REQUIRE(parallel[i].has_value());
        CHECK(parallel[i]->lo() == serial[i].lo());
        CHECK(parallel[i]->hi() == serial[i].hi());
    }
}

TEST_CASE("interval products cover all sign combinations") {
    Enclosure a(Rational(-2), Rational(3)), b(Rational(-5), Rational(1));
    Enclosure p = mul(a, b);
    CHECK(p.lo() == Rational(-15));
    CHECK(p.hi() == Rational(10));
    CHECK(abs_enclosure(Enclosure(Rational(-4), Rational(1))).hi() == Rational(4));
    CHECK(abs_enclosure(Enclosure(Rational(-4), Rational(1))).lo() == Rational(0));
    CHECK(scale(Enclosure(Rational(1), Rational(2)), Rational(-3)).lo() == Rational(-6));
}
