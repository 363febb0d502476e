#pragma once

#include "relprec/enclosure.hpp"

#include <optional>
#include <string>

namespace relprec {

enum class CheckOutcome { Holds, Fails, Undecided };
const char* to_string(CheckOutcome o);

/// Enclosure work: comparisons start at `initial` bits and double on every
/// Unknown outcome until `cap`; a comparison still unresolved at the cap is
/// reported Undecided, never guessed.
struct WorkBudget {
    unsigned initial = 128;
    unsigned cap = 4096;
};

namespace detail {
struct JudgmentFactory;
}

/// Certified statement "approx approximates exact with bound alpha under the
/// log-ratio metric": |ln(approx/exact)| <= alpha, both values nonzero and of
/// equal sign. Instances are only produced by checks, theorem-backed
/// constructions and combinators; `certified_by` names the producing rule.
class RpJudgment {
public:
    const Rational& exact() const { return exact_; }
    const Rational& approx() const { return approx_; }
    const Rational& alpha() const { return alpha_; }
    const std::string& certified_by() const { return by_; }

private:
    RpJudgment(Rational exact, Rational approx, Rational alpha, std::string by)
        : exact_(std::move(exact)), approx_(std::move(approx)),
          alpha_(std::move(alpha)), by_(std::move(by)) {}
    friend struct detail::JudgmentFactory;

    Rational exact_, approx_, alpha_;
    std::string by_;
};

/// Certified statement |exact - approx| <= alpha (decided exactly).
class ApJudgment {
public:
    const Rational& exact() const { return exact_; }
    const Rational& approx() const { return approx_; }
    const Rational& alpha() const { return alpha_; }
    const std::string& certified_by() const { return by_; }

private:
    ApJudgment(Rational exact, Rational approx, Rational alpha, std::string by)
        : exact_(std::move(exact)), approx_(std::move(approx)),
          alpha_(std::move(alpha)), by_(std::move(by)) {}
    friend struct detail::JudgmentFactory;

    Rational exact_, approx_, alpha_;
    std::string by_;
};

struct RpCheckResult {
    CheckOutcome outcome;
    std::string reason;
    std::optional<RpJudgment> judgment;
    unsigned work_bits_used = 0;
};

struct ApCheckResult {
    CheckOutcome outcome;  // Holds or Fails; absolute checks always decide
    std::string reason;
    std::optional<ApJudgment> judgment;
};

// -- metrics ----------------------------------------------------------------

/// Enclosure of |ln(approx/exact)|. Both operands must be nonzero and share a
/// sign; violations throw std::domain_error (strict mode).
Enclosure rp_metric(const Rational& approx, const Rational& exact, unsigned work_bits);

/// Log-ratio distance extended to all rationals: 0 when both operands are
/// zero, infinite on any other sign mismatch.
struct ExtendedRp {
    bool is_infinity = false;
    std::optional<Enclosure> value;  // set iff finite
    static ExtendedRp infinity() { return ExtendedRp{true, std::nullopt}; }
    static ExtendedRp finite(Enclosure e) { return ExtendedRp{false, std::move(e)}; }
};
ExtendedRp rp_metric_ext(const Rational& x, const Rational& y, unsigned work_bits);

Rational ap_metric(const Rational& x, const Rational& y);

/// err_rel(x, y) = |(x - y)/x|; requires x != 0.
Rational relative_error(const Rational& x, const Rational& y);

// -- checks -----------------------------------------------------------------

RpCheckResult rp_check(const Rational& exact, const Rational& approx, const Rational& alpha,
                       WorkBudget wb = {});
ApCheckResult ap_check(const Rational& exact, const Rational& approx, const Rational& alpha);

// -- relative-precision combinators -----------------------------------------
// Conclusions follow from certified premises; no enclosure work is redone
// except where the bound itself is transcendental (rp_add_exact).

RpJudgment rp_symm(const RpJudgment& j);
RpJudgment rp_weaken(const RpJudgment& j, const Rational& delta);  // delta >= alpha
RpJudgment rp_scale(const RpJudgment& j, const Rational& k);       // k != 0
/// |a|^k ~ |approx|^k with bound |k|*alpha; integer k keeps values rational.
RpJudgment rp_abs_pow(const RpJudgment& j, long k);
/// Power on the raw signed values. Integer exponents only; a non-integer
/// exponent over a negative base has no real value and is rejected.
RpJudgment rp_pow_raw(const RpJudgment& j, const Rational& k);
/// Non-integer exponents of the absolute-value form; the (irrational) values
/// are reported as enclosures, the bound |k|*alpha stays exact.
struct RpEnclosureJudgment {
    Enclosure exact;
    Enclosure approx;
    Rational alpha;
    std::string certified_by;
};
RpEnclosureJudgment rp_abs_pow_general(const RpJudgment& j, const Rational& k, unsigned work_bits);
RpJudgment rp_mul(const RpJudgment& a, const RpJudgment& b);
/// first: a ~ b, second: b ~ c (first.approx must equal second.exact).
RpJudgment rp_triangle(const RpJudgment& first, const RpJudgment& second);
/// Sum rule with the exact transcendental bound
/// ln((approx_a e^alpha + approx_b e^beta)/(approx_a + approx_b)); the
/// returned alpha is the upper end of its enclosure. Requires equal signs.
RpJudgment rp_add_exact(const RpJudgment& a, const RpJudgment& b, unsigned work_bits);
/// Sum rule with bound max(alpha, beta). Requires equal signs.
RpJudgment rp_add_max(const RpJudgment& a, const RpJudgment& b);

// -- absolute-precision combinators ------------------------------------------

ApJudgment ap_symm(const ApJudgment& j);
ApJudgment ap_weaken(const ApJudgment& j, const Rational& delta);
ApJudgment ap_shift(const ApJudgment& j, const Rational& k);  // a+k ~ approx+k
ApJudgment ap_scale(const ApJudgment& j, const Rational& k);  // bound |k|*alpha
ApJudgment ap_add(const ApJudgment& a, const ApJudgment& b);
ApJudgment ap_triangle(const ApJudgment& first, const ApJudgment& second);
/// Product rule: bound |approx_a|*beta + |approx_b|*alpha + alpha*beta.
ApJudgment ap_mul(const ApJudgment& a, const ApJudgment& b);
/// Quotient rule: requires |approx_b| > beta.
ApJudgment ap_div(const ApJudgment& a, const ApJudgment& b);

// -- conversions --------------------------------------------------------------

/// Rational upper bound on e^alpha - 1, the relative-error budget implied by a
/// log-ratio bound alpha >= 0.
Rational rp_to_relerr_bound(const Rational& alpha, unsigned work_bits);

/// ln|exact| ~ ln|approx| with absolute bound alpha (forward direction only).
/// The log values are reported as enclosures and the inequality is re-verified
/// through them.
struct LogApConversion {
    Enclosure log_exact;
    Enclosure log_approx;
    Rational alpha;
    CheckOutcome verified;
};
LogApConversion rp_to_ap_log(const RpJudgment& j, WorkBudget wb = {});

/// The fixed demonstration that plain relative error is not a metric, with the
/// log-ratio values that do behave.
struct RelErrCounterexamples {
    // err_rel(1, 11/10) vs err_rel(11/10, 1)
    Rational symm_forward, symm_reverse;
    // err_rel(1, 2) vs err_rel(1, 3/2) + err_rel(3/2, 2)
    Rational tri_direct, tri_via_first, tri_via_second, tri_sum;
    // |ln 2| vs |ln(3/2)| + |ln(4/3)| (equal reals; enclosures overlap)
    Enclosure rp_direct, rp_sum;
    bool symmetry_broken = false;
    bool triangle_broken = false;
    bool rp_triangle_consistent = false;
};
RelErrCounterexamples relerr_counterexamples(unsigned work_bits = 128);

}  // namespace relprec
