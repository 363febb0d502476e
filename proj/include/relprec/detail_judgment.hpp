#pragma once

#include "relprec/precision.hpp"

namespace relprec::detail {

// Internal constructor access for the modules that produce judgments
// (checks, combinators, the rounding model, serialization).
struct JudgmentFactory {
    static RpJudgment rp(Rational exact, Rational approx, Rational alpha, std::string by) {
        return RpJudgment(std::move(exact), std::move(approx), std::move(alpha), std::move(by));
    }
    static ApJudgment ap(Rational exact, Rational approx, Rational alpha, std::string by) {
        return ApJudgment(std::move(exact), std::move(approx), std::move(alpha), std::move(by));
    }
};

}  // namespace relprec::detail
