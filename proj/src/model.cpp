#include "relprec/model.hpp"

#include "relprec/detail_judgment.hpp"

#include <sstream>
#include <stdexcept>

namespace relprec {

Rational rp_model_bound(const Format& f, RoundingMode m) {
    Rational u = unit_roundoff(f, m);
    return u / (Rational(1) - u);
}

const char* to_string(FlopOp op) {
    switch (op) {
        case FlopOp::Add: return "+";
        case FlopOp::Sub: return "-";
        case FlopOp::Mul: return "*";
        case FlopOp::Div: return "/";
    }
    return "?";
}

RpCheckResult round_judgment(const Rational& x, const Format& f, RoundingMode m, WorkBudget wb) {
    if (x.is_zero()) throw std::domain_error("round_judgment: zero has no log-ratio judgment");
    Dyadic r = round(x, f, m);
    RpCheckResult res = rp_check(x, r.to_rational(), rp_model_bound(f, m), wb);
    if (res.judgment)
        res.judgment = detail::JudgmentFactory::rp(res.judgment->exact(), res.judgment->approx(),
                                                   res.judgment->alpha(), "round_judgment");
    return res;
}

RpCheckResult flop_judgment(const Dyadic& x, const Dyadic& y, FlopOp op, const Format& f,
                            RoundingMode m, WorkBudget wb) {
    if (x.mantissa_bits() > f.precision || y.mantissa_bits() > f.precision)
        throw std::invalid_argument("flop_judgment: operand not representable in the format");
    Rational xr = x.to_rational(), yr = y.to_rational();
    Rational exact;
    switch (op) {
        case FlopOp::Add: exact = xr + yr; break;
        case FlopOp::Sub: exact = xr - yr; break;
        case FlopOp::Mul: exact = xr * yr; break;
        case FlopOp::Div:
            if (y.is_zero()) throw std::domain_error("flop_judgment: division by zero");
            exact = xr / yr;
            break;
    }
    if (exact.is_zero()) throw std::domain_error("flop_judgment: exact result is zero");
    Dyadic rounded = round(exact, f, m);
    RpCheckResult res = rp_check(exact, rounded.to_rational(), rp_model_bound(f, m), wb);
    if (res.judgment)
        res.judgment = detail::JudgmentFactory::rp(res.judgment->exact(), res.judgment->approx(),
                                                   res.judgment->alpha(), "flop_judgment");
    return res;
}

ModelReport verify_model_exhaustive(const FloatGrid& g, RoundingMode m, WorkBudget wb) {
    ModelReport rep{g.format, m};
    rep.u = unit_roundoff(g.format, m);
    rep.rp_bound = rp_model_bound(g.format, m);
    rep.work_bits = wb.initial;

    for (const Rational& x : enumerate_grid(g)) {
        ++rep.points_checked;
        Dyadic r = round(x, g.format, m);
        Rational rr = r.to_rational();

        Rational std_delta = ((rr - x) / x).abs();
        if (std_delta > rep.max_std_delta) {
            rep.max_std_delta = std_delta;
            rep.std_witness = x;
        }
        if (std_delta > rep.u)
            rep.violations.push_back({x, "std", std_delta, rep.u});

        unsigned bits = wb.initial;
        for (;;) {
            Enclosure metric = rp_metric(rr, x, bits);
            EncOrder ord = enc_compare(metric, rep.rp_bound);
            if (ord == EncOrder::CertainlyLE) {
                if (metric.hi() > rep.max_rp_delta_hi) {
                    rep.max_rp_delta_hi = metric.hi();
                    rep.rp_witness = x;
                }
                break;
            }
            if (ord == EncOrder::CertainlyGT) {
                rep.violations.push_back({x, "rp", metric.lo(), rep.rp_bound});
                break;
            }
            if (bits >= wb.cap) {
                rep.undecided.push_back({x, metric.lo(), metric.hi(), rep.rp_bound, bits});
                break;
            }
            bits = std::min(bits * 2, wb.cap);
        }
    }
    return rep;
}

std::pair<Dyadic, InnerProductTrace> inner_product_fp(std::span<const Dyadic> x,
                                                      std::span<const Dyadic> y,
                                                      const Format& f, RoundingMode m) {
    if (x.size() != y.size()) throw std::invalid_argument("inner_product_fp: length mismatch");
    if (x.empty()) throw std::invalid_argument("inner_product_fp: empty vectors");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i].mantissa_bits() > f.precision || y[i].mantissa_bits() > f.precision)
            throw std::invalid_argument("inner_product_fp: element not representable");

    InnerProductTrace trace;
    Rational g = rp_model_bound(f, m);
    Rational exact_sum;
    Dyadic fp_sum;
    for (std::size_t k = 0; k < x.size(); ++k) {
        Dyadic prod = x[k] * y[k];
        Dyadic rounded_prod = round(prod.to_rational(), f, m);
        trace.rounded_products.push_back(rounded_prod);
        exact_sum += prod.to_rational();
        if (k == 0) {
            fp_sum = rounded_prod;
        } else {
            Dyadic pre = fp_sum + rounded_prod;
            trace.intermediates.push_back(pre);
            fp_sum = round(pre.to_rational(), f, m);
        }
        trace.partials_exact.push_back(exact_sum);
        trace.partials_fp.push_back(fp_sum);
        trace.per_step_bounds.push_back(Rational(static_cast<long>(k + 1)) * g);
    }
    return {fp_sum, std::move(trace)};
}

Rational inner_product_rp_bound(unsigned n, const Format& f, RoundingMode m) {
    if (n < 1) throw std::invalid_argument("inner_product_rp_bound: n must be >= 1");
    return Rational(static_cast<long>(n)) * rp_model_bound(f, m);
}

Rational higham_relerr_bound(unsigned n, const Rational& u) {
    Rational nu = Rational(static_cast<long>(n)) * u;
    if (!(nu < Rational(1)))
        throw std::domain_error("higham_relerr_bound: n*u = " + nu.fraction_str() + " is not < 1");
    return nu / (Rational(1) - nu);
}

Rational converted_relerr_bound(unsigned n, const Rational& u) {
    Rational nu = Rational(static_cast<long>(n)) * u;
    Rational n1u = Rational(static_cast<long>(n + 1)) * u;
    if (!(n1u < Rational(1)))
        throw std::domain_error("converted_relerr_bound: (n+1)*u = " + n1u.fraction_str() +
                                " is not < 1");
    return nu / (Rational(1) - n1u);
}

namespace {

struct PairSink {
    const Format& f;
    RoundingMode m;
    WorkBudget wb;
    InnerProductReport& rep;

    void check(unsigned bits_hint, const Rational& exact, const Rational& approx,
               const Rational& bound, const char* kind, std::uint64_t instance, unsigned n) {
        WorkBudget local{bits_hint, wb.cap};
        RpCheckResult r = rp_check(exact, approx, bound, local);
        if (r.outcome == CheckOutcome::Fails)
            rep.violations.push_back({instance, n, kind, r.reason});
        else if (r.outcome == CheckOutcome::Undecided)
            rep.undecided.push_back({instance, n, kind, r.reason});
    }

    void run(const std::vector<Dyadic>& xs, const std::vector<Dyadic>& ys) {
        std::uint64_t instance = rep.instances++;
        unsigned n = static_cast<unsigned>(xs.size());
        auto [fp, trace] = inner_product_fp(xs, ys, f, m);
        Rational g = rp_model_bound(f, m);

        // final bound n*u/(1-u)
        ++rep.final_checks;
        check(wb.initial, trace.partials_exact.back(), fp.to_rational(),
              trace.per_step_bounds.back(), "final", instance, n);

        // induction invariant: each partial within k*u/(1-u), each rounding
        // step within u/(1-u)
        for (unsigned k = 0; k + 1 < n; ++k) {
            ++rep.induction_checks;
            check(wb.initial, trace.partials_exact[k], trace.partials_fp[k].to_rational(),
                  trace.per_step_bounds[k], "induction-sum", instance, n);
        }
        for (unsigned k = 0; k + 1 < n; ++k) {
            ++rep.induction_checks;
            check(wb.initial, trace.intermediates[k].to_rational(),
                  trace.partials_fp[k + 1].to_rational(), g, "induction-round", instance, n);
        }

        // relative-error comparison against the classical and converted bounds
        Rational u = unit_roundoff(f, m);
        Rational n1u = Rational(static_cast<long>(n + 1)) * u;
        if (n1u < Rational(1)) {
            ++rep.relerr_checked;
            Rational err = relative_error(trace.partials_exact.back(), fp.to_rational());
            Rational conv = converted_relerr_bound(n, u);
            Rational high = higham_relerr_bound(n, u);
            if (err <= conv)
                ++rep.converted_held;
            else
                rep.violations.push_back({instance, n, "relerr",
                                          "measured " + err.fraction_str() + " > converted " +
                                              conv.fraction_str()});
            if (err <= high) ++rep.higham_held;
            if (!(high <= conv))
                rep.violations.push_back({instance, n, "bound-order",
                                          "classical bound above converted bound"});
            if (err > rep.max_relerr) {
                rep.max_relerr = err;
                rep.max_relerr_bound = conv;
            }
        }
    }
};

}  // namespace

namespace {

// Streams generated pairs into `emit` (return false to stop); invalid explicit
// inputs invoke `reject` instead.
template <typename Emit, typename Reject>
void for_each_pair(const InnerProductGen& gen, const Format& f, Emit&& emit, Reject&& reject) {
    switch (gen.kind) {
        case InnerProductGen::Kind::Exhaustive: {
            if (gen.n < 1) throw std::invalid_argument("inner-product generator: n must be >= 1");
            long p = f.precision;
            std::vector<Rational> mants;
            mpz_class lo, hi;
            mpz_ui_pow_ui(lo.get_mpz_t(), 2, static_cast<unsigned long>(p - 1));
            mpz_ui_pow_ui(hi.get_mpz_t(), 2, static_cast<unsigned long>(p));
            for (mpz_class v = lo; v < hi; ++v)
                mants.push_back(Rational(v) * Rational::pow2(gen.exponent - (p - 1)));
            // one component = (sign, x-mantissa, y-mantissa); products stay positive
            std::size_t combos = 2 * mants.size() * mants.size();
            std::vector<std::size_t> odo(gen.n, 0);
            std::vector<Dyadic> xs(gen.n), ys(gen.n);
            for (;;) {
                for (unsigned i = 0; i < gen.n; ++i) {
                    std::size_t c = odo[i];
                    int sign = c < combos / 2 ? 1 : -1;
                    std::size_t rest = c % (combos / 2);
                    Rational xv = mants[rest / mants.size()];
                    Rational yv = mants[rest % mants.size()];
                    if (sign < 0) {
                        xv = -xv;
                        yv = -yv;
                    }
                    xs[i] = Dyadic::from_rational(xv);
                    ys[i] = Dyadic::from_rational(yv);
                }
                if (!emit(xs, ys)) return;
                unsigned i = 0;
                for (; i < gen.n; ++i) {
                    if (++odo[i] < combos) break;
                    odo[i] = 0;
                }
                if (i == gen.n) return;
            }
        }
        case InnerProductGen::Kind::Random: {
            SplitMix64 rng(gen.seed);
            long p = f.precision;
            for (std::uint64_t t = 0; t < gen.trials; ++t) {
                unsigned n = static_cast<unsigned>(
                    rng.range(static_cast<long>(gen.n_min), static_cast<long>(gen.n_max)));
                std::vector<Dyadic> xs(n), ys(n);
                for (unsigned i = 0; i < n; ++i) {
                    long mlo = 1L << (p - 1), mhi = (1L << p) - 1;
                    long mx = rng.range(mlo, mhi), my = rng.range(mlo, mhi);
                    long ex = rng.range(gen.exp_lo, gen.exp_hi);
                    long ey = rng.range(gen.exp_lo, gen.exp_hi);
                    int sign = rng.coin() ? 1 : -1;
                    xs[i] = Dyadic(mpz_class(sign * mx), ex - (p - 1));
                    ys[i] = Dyadic(mpz_class(sign * my), ey - (p - 1));
                }
                if (!emit(xs, ys)) return;
            }
            return;
        }
        case InnerProductGen::Kind::Explicit: {
            if (gen.xs.size() != gen.ys.size())
                throw std::invalid_argument("inner-product generator: mismatched vector lists");
            for (std::size_t t = 0; t < gen.xs.size(); ++t) {
                const auto& xr = gen.xs[t];
                const auto& yr = gen.ys[t];
                bool ok = !xr.empty() && xr.size() == yr.size();
                std::vector<Dyadic> xs, ys;
                for (std::size_t i = 0; ok && i < xr.size(); ++i) {
                    if (!(xr[i] * yr[i] > Rational(0)) || !is_representable(xr[i], f) ||
                        !is_representable(yr[i], f)) {
                        ok = false;
                        break;
                    }
                    xs.push_back(Dyadic::from_rational(xr[i]));
                    ys.push_back(Dyadic::from_rational(yr[i]));
                }
                if (!ok) {
                    reject();
                    continue;
                }
                if (!emit(xs, ys)) return;
            }
            return;
        }
    }
}

}  // namespace

InnerProductReport verify_inner_product(const InnerProductGen& gen, const Format& f,
                                        RoundingMode m, WorkBudget wb) {
    InnerProductReport rep{f, m};
    rep.work_bits = wb.initial;
    PairSink sink{f, m, wb, rep};
    for_each_pair(
        gen, f,
        [&](const std::vector<Dyadic>& xs, const std::vector<Dyadic>& ys) {
            sink.run(xs, ys);
            return true;
        },
        [&] { ++rep.rejected; });
    return rep;
}

std::vector<std::pair<std::vector<Dyadic>, std::vector<Dyadic>>> generate_pairs(
    const InnerProductGen& gen, const Format& f, std::size_t limit) {
    std::vector<std::pair<std::vector<Dyadic>, std::vector<Dyadic>>> out;
    if (limit == 0) return out;
    for_each_pair(
        gen, f,
        [&](const std::vector<Dyadic>& xs, const std::vector<Dyadic>& ys) {
            out.emplace_back(xs, ys);
            return out.size() < limit;
        },
        [] {});
    return out;
}

}  // namespace relprec
