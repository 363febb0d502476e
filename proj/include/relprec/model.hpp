#pragma once

#include "relprec/formats.hpp"
#include "relprec/precision.hpp"
#include "relprec/prng.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace relprec {

/// u/(1-u): the per-operation bound of the exponential rounding model.
Rational rp_model_bound(const Format& f, RoundingMode m);

/// Certifies x ~ round(x) against the exponential-model bound. Succeeding for
/// every nonzero rational is the model's claim; a Fails outcome is a
/// verification finding, not an error.
RpCheckResult round_judgment(const Rational& x, const Format& f, RoundingMode m,
                             WorkBudget wb = {});

enum class FlopOp { Add, Sub, Mul, Div };
const char* to_string(FlopOp op);

/// Per-operation judgment (x op y) ~ round(x op y) with bound u/(1-u).
/// Operands must be representable and the exact result nonzero.
RpCheckResult flop_judgment(const Dyadic& x, const Dyadic& y, FlopOp op, const Format& f,
                            RoundingMode m, WorkBudget wb = {});

struct ModelViolation {
    Rational x;
    std::string kind;  // "std" or "rp"
    Rational observed;
    Rational bound;
};

struct ModelUndecided {
    Rational x;
    Rational enc_lo, enc_hi;
    Rational bound;
    unsigned work_bits;
};

/// Sweep result over one grid and mode. With empty `violations` and
/// `undecided`, every point satisfied |round(x)-x|/|x| <= u exactly and
/// |ln(round(x)/x)| <= u/(1-u) by enclosure.
struct ModelReport {
    ModelReport(Format f, RoundingMode rm) : format(f), mode(rm) {}

    Format format;
    RoundingMode mode;
    std::uint64_t points_checked = 0;
    Rational u;
    Rational rp_bound;
    Rational max_std_delta;
    Rational std_witness;
    Rational max_rp_delta_hi;
    Rational rp_witness;
    std::vector<ModelViolation> violations;
    std::vector<ModelUndecided> undecided;
    unsigned work_bits = 0;
};

ModelReport verify_model_exhaustive(const FloatGrid& g, RoundingMode m, WorkBudget wb = {});

/// Full record of one emulated inner-product run, following the left-to-right
/// recurrence fp_sum[k+1] = round(fp_sum[k] + round(x[k+1]*y[k+1])).
struct InnerProductTrace {
    std::vector<Rational> partials_exact;   // s_k, exact
    std::vector<Dyadic> partials_fp;        // rounded running sums
    std::vector<Dyadic> rounded_products;   // round(x_k * y_k)
    std::vector<Dyadic> intermediates;      // pre-rounding sums, k >= 2
    std::vector<Rational> per_step_bounds;  // k*u/(1-u)
};

std::pair<Dyadic, InnerProductTrace> inner_product_fp(std::span<const Dyadic> x,
                                                      std::span<const Dyadic> y,
                                                      const Format& f, RoundingMode m);

/// n*u/(1-u).
Rational inner_product_rp_bound(unsigned n, const Format& f, RoundingMode m);

/// Classical relative-error bound nu/(1-nu); requires n*u < 1.
Rational higham_relerr_bound(unsigned n, const Rational& u);
/// Bound obtained by converting the log-ratio result: nu/(1-(n+1)u);
/// requires (n+1)*u < 1.
Rational converted_relerr_bound(unsigned n, const Rational& u);

/// Vector-pair generator for inner-product verification. Every produced pair
/// has componentwise-positive products; explicit input vectors that violate
/// that are rejected and counted.
struct InnerProductGen {
    enum class Kind { Exhaustive, Random, Explicit } kind = Kind::Random;

    // Exhaustive: all pairs with mantissas from the binade [2^exponent,
    // 2^(exponent+1)) and per-component signs (+,+) or (-,-); length exactly n.
    long exponent = 0;
    unsigned n = 1;

    // Random: `trials` pairs of length n_min..n_max with mantissa exponents in
    // [exp_lo, exp_hi].
    std::uint64_t seed = 1;
    unsigned trials = 0;
    unsigned n_min = 1, n_max = 1;
    long exp_lo = 0, exp_hi = 0;

    // Explicit vectors (validated against the format and sign condition).
    std::vector<std::vector<Rational>> xs, ys;
};

struct InnerProductIssue {
    std::uint64_t instance = 0;
    unsigned n = 0;
    std::string kind;  // "final", "induction-sum", "induction-round", "relerr", ...
    std::string detail;
};

struct InnerProductReport {
    InnerProductReport(Format f, RoundingMode rm) : format(f), mode(rm) {}

    Format format;
    RoundingMode mode;
    std::uint64_t instances = 0;
    std::uint64_t rejected = 0;
    std::uint64_t final_checks = 0;
    std::uint64_t induction_checks = 0;
    std::uint64_t relerr_checked = 0;
    std::uint64_t higham_held = 0;
    std::uint64_t converted_held = 0;
    std::vector<InnerProductIssue> violations;
    std::vector<InnerProductIssue> undecided;
    // worst observed relative error and its converted bound, for reporting
    Rational max_relerr;
    Rational max_relerr_bound;
    unsigned work_bits = 0;
};

InnerProductReport verify_inner_product(const InnerProductGen& gen, const Format& f,
                                        RoundingMode m, WorkBudget wb = {});

/// Materializes up to `limit` generated pairs (explicit inputs that violate
/// the sign or representability requirements are skipped).
std::vector<std::pair<std::vector<Dyadic>, std::vector<Dyadic>>> generate_pairs(
    const InnerProductGen& gen, const Format& f, std::size_t limit);

}  // namespace relprec
