#include "relprec/serialize.hpp"

#include "relprec/detail_judgment.hpp"

#include <stdexcept>

namespace relprec {

ordered_json to_json(const Rational& r) { return r.fraction_str(); }

Rational rational_from_json(const ordered_json& j) {
    if (!j.is_string()) throw std::invalid_argument("rational: expected \"num/den\" string");
    return Rational::from_fraction(j.get<std::string>());
}

ordered_json to_json(const Enclosure& e) {
    return ordered_json{{"lo", to_json(e.lo())}, {"hi", to_json(e.hi())}};
}

namespace {
ordered_json judgment_json(const Rational& exact, const Rational& approx, const Rational& alpha,
                           const char* kind, const std::string& by) {
    return ordered_json{{"exact", to_json(exact)},
                        {"approx", to_json(approx)},
                        {"alpha", to_json(alpha)},
                        {"kind", kind},
                        {"certified_by", by}};
}
}  // namespace

ordered_json to_json(const RpJudgment& j) {
    return judgment_json(j.exact(), j.approx(), j.alpha(), "rp", j.certified_by());
}

ordered_json to_json(const ApJudgment& j) {
    return judgment_json(j.exact(), j.approx(), j.alpha(), "ap", j.certified_by());
}

RpJudgment rp_judgment_from_json(const ordered_json& j, WorkBudget wb) {
    if (j.at("kind").get<std::string>() != "rp")
        throw std::invalid_argument("rp judgment: kind mismatch");
    Rational exact = rational_from_json(j.at("exact"));
    Rational approx = rational_from_json(j.at("approx"));
    Rational alpha = rational_from_json(j.at("alpha"));
    RpCheckResult check = rp_check(exact, approx, alpha, wb);
    if (check.outcome != CheckOutcome::Holds)
        throw std::invalid_argument("rp judgment: record does not revalidate (" + check.reason +
                                    ")");
    return detail::JudgmentFactory::rp(std::move(exact), std::move(approx), std::move(alpha),
                                       j.at("certified_by").get<std::string>());
}

ApJudgment ap_judgment_from_json(const ordered_json& j) {
    if (j.at("kind").get<std::string>() != "ap")
        throw std::invalid_argument("ap judgment: kind mismatch");
    Rational exact = rational_from_json(j.at("exact"));
    Rational approx = rational_from_json(j.at("approx"));
    Rational alpha = rational_from_json(j.at("alpha"));
    if (ap_check(exact, approx, alpha).outcome != CheckOutcome::Holds)
        throw std::invalid_argument("ap judgment: record does not revalidate");
    return detail::JudgmentFactory::ap(std::move(exact), std::move(approx), std::move(alpha),
                                       j.at("certified_by").get<std::string>());
}

ordered_json to_json(const ModelReport& r) {
    ordered_json violations = ordered_json::array();
    for (const auto& v : r.violations)
        violations.push_back({{"x", to_json(v.x)},
                              {"kind", v.kind},
                              {"observed", to_json(v.observed)},
                              {"bound", to_json(v.bound)}});
    ordered_json undecided = ordered_json::array();
    for (const auto& u : r.undecided)
        undecided.push_back({{"x", to_json(u.x)},
                             {"enclosure_lo", to_json(u.enc_lo)},
                             {"enclosure_hi", to_json(u.enc_hi)},
                             {"bound", to_json(u.bound)},
                             {"work_bits", u.work_bits}});
    return ordered_json{{"schema", "relprec.model-report/1"},
                        {"precision", r.format.precision},
                        {"mode", to_string(r.mode)},
                        {"points_checked", r.points_checked},
                        {"unit_roundoff", to_json(r.u)},
                        {"rp_bound", to_json(r.rp_bound)},
                        {"max_std_delta", to_json(r.max_std_delta)},
                        {"std_witness", to_json(r.std_witness)},
                        {"max_rp_delta_hi", to_json(r.max_rp_delta_hi)},
                        {"rp_witness", to_json(r.rp_witness)},
                        {"violations", violations},
                        {"undecided", undecided},
                        {"work_bits", r.work_bits}};
}

namespace {
ordered_json issues_json(const std::vector<InnerProductIssue>& issues) {
    ordered_json out = ordered_json::array();
    for (const auto& i : issues)
        out.push_back({{"instance", i.instance},
                       {"n", i.n},
                       {"kind", i.kind},
                       {"detail", i.detail}});
    return out;
}
}  // namespace

ordered_json to_json(const InnerProductReport& r) {
    return ordered_json{{"schema", "relprec.innerprod-report/1"},
                        {"precision", r.format.precision},
                        {"mode", to_string(r.mode)},
                        {"instances", r.instances},
                        {"rejected", r.rejected},
                        {"final_checks", r.final_checks},
                        {"induction_checks", r.induction_checks},
                        {"relerr_checked", r.relerr_checked},
                        {"higham_held", r.higham_held},
                        {"converted_held", r.converted_held},
                        {"max_relerr", to_json(r.max_relerr)},
                        {"max_relerr_bound", to_json(r.max_relerr_bound)},
                        {"violations", issues_json(r.violations)},
                        {"undecided", issues_json(r.undecided)},
                        {"work_bits", r.work_bits}};
}

ordered_json to_json(const InnerProductTrace& t) {
    auto rationals = [](const std::vector<Rational>& v) {
        ordered_json a = ordered_json::array();
        for (const auto& x : v) a.push_back(to_json(x));
        return a;
    };
    auto dyadics = [](const std::vector<Dyadic>& v) {
        ordered_json a = ordered_json::array();
        for (const auto& x : v) a.push_back(to_json(x.to_rational()));
        return a;
    };
    return ordered_json{{"partials_exact", rationals(t.partials_exact)},
                        {"partials_fp", dyadics(t.partials_fp)},
                        {"rounded_products", dyadics(t.rounded_products)},
                        {"intermediates", dyadics(t.intermediates)},
                        {"per_step_bounds", rationals(t.per_step_bounds)}};
}

ordered_json to_json(const NodeAnalysis& n) {
    ordered_json node{{"label", n.label},
                      {"sign", to_string(n.sign)},
                      {"kind", to_string(n.kind)}};
    if (n.kind != BoundKind::Failed) node["bound"] = to_json(n.bound);
    if (n.range)
        node["range"] = to_json(*n.range);
    node["rules"] = n.rules;
    if (!n.fail_reason.empty()) node["reason"] = n.fail_reason;
    ordered_json children = ordered_json::array();
    for (const auto& c : n.children) children.push_back(to_json(c));
    node["children"] = children;
    return node;
}

ordered_json to_json(const AnalysisResult& r) {
    ordered_json out{{"schema", "relprec.analysis/1"}, {"kind", to_string(r.kind)}};
    if (r.kind != BoundKind::Failed) out["bound"] = to_json(r.bound);
    if (r.relerr_bound) out["relerr_bound"] = to_json(*r.relerr_bound);
    out["derivation"] = to_json(r.root);
    return out;
}

ordered_json to_json(const BoundComparison& c) {
    return ordered_json{{"rp_bound", to_json(c.rp_bound)},
                        {"converted_exact", to_json(c.converted_exact)},
                        {"converted_closed", to_json(c.converted_closed)},
                        {"higham", to_json(c.higham)},
                        {"ratio", to_json(c.ratio)},
                        {"converted_ge_higham", c.converted_ge_higham}};
}

SignEnv sign_env_from_json(const ordered_json& j) {
    if (!j.is_object()) throw std::invalid_argument("sign env: expected an object");
    SignEnv env;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const ordered_json& spec = it.value();
        VarSpec v;
        std::string sign = spec.value("sign", "unknown");
        if (sign == "pos") v.sign = Sign::Positive;
        else if (sign == "neg") v.sign = Sign::Negative;
        else if (sign == "unknown") v.sign = Sign::Unknown;
        else throw std::invalid_argument("sign env: bad sign \"" + sign + "\"");
        if (spec.contains("range")) {
            const auto& r = spec.at("range");
            if (!r.is_array() || r.size() != 2)
                throw std::invalid_argument("sign env: range must be [lo, hi]");
            Rational lo = rational_from_json(r[0]);
            Rational hi = rational_from_json(r[1]);
            if (hi < lo) throw std::invalid_argument("sign env: range lo > hi");
            v.range = Enclosure(lo, hi);
            if (v.sign == Sign::Positive && hi.sign() <= 0)
                throw std::invalid_argument("sign env: range contradicts positive sign");
            if (v.sign == Sign::Negative && lo.sign() >= 0)
                throw std::invalid_argument("sign env: range contradicts negative sign");
        }
        if (spec.contains("input_alpha")) {
            Rational a = rational_from_json(spec.at("input_alpha"));
            if (a.sign() < 0) throw std::invalid_argument("sign env: input_alpha must be >= 0");
            v.input_alpha = a;
        }
        env.emplace(it.key(), std::move(v));
    }
    return env;
}

ordered_json to_json(const SignEnv& env) {
    ordered_json out = ordered_json::object();
    for (const auto& [name, v] : env) {
        ordered_json spec{{"sign", to_string(v.sign)}};
        if (v.range)
            spec["range"] = ordered_json::array({to_json(v.range->lo()), to_json(v.range->hi())});
        if (v.input_alpha) spec["input_alpha"] = to_json(*v.input_alpha);
        out[name] = spec;
    }
    return out;
}

}  // namespace relprec
