#include "relprec/analyzer.hpp"

#include <cctype>
#include <sstream>

namespace relprec {

ExprPtr make_const(Rational v) {
    return std::make_shared<Expr>(Expr{Expr::Kind::Const, std::move(v), "", nullptr, nullptr});
}
ExprPtr make_var(std::string name) {
    return std::make_shared<Expr>(Expr{Expr::Kind::Var, Rational(), std::move(name), nullptr, nullptr});
}
ExprPtr make_neg(ExprPtr a) {
    return std::make_shared<Expr>(Expr{Expr::Kind::Neg, Rational(), "", std::move(a), nullptr});
}
ExprPtr make_binary(Expr::Kind k, ExprPtr a, ExprPtr b) {
    return std::make_shared<Expr>(Expr{k, Rational(), "", std::move(a), std::move(b)});
}

// -- parser ---------------------------------------------------------------------

namespace {

struct Lexer {
    std::string_view text;
    std::size_t pos = 0;  // 0-based cursor

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    std::size_t here() const { return pos + 1; }  // 1-based for messages
    bool eof() {
        skip_space();
        return pos >= text.size();
    }
    char peek() {
        skip_space();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool consume(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
};

struct Parser {
    Lexer lex;

    [[noreturn]] void fail(const std::string& what) {
        lex.skip_space();
        std::size_t p = lex.here();
        throw ParseError(what + " at position " + std::to_string(p), p);
    }

    ExprPtr parse_expr() {
        ExprPtr node = parse_term();
        for (;;) {
            if (lex.consume('+'))
                node = make_binary(Expr::Kind::Add, node, parse_term());
            else if (lex.consume('-'))
                node = make_binary(Expr::Kind::Sub, node, parse_term());
            else
                return node;
        }
    }

    ExprPtr parse_term() {
        ExprPtr node = parse_factor();
        for (;;) {
            if (lex.consume('*'))
                node = make_binary(Expr::Kind::Mul, node, parse_factor());
            else if (lex.consume('/'))
                node = make_binary(Expr::Kind::Div, node, parse_factor());
            else
                return node;
        }
    }

    ExprPtr parse_factor() {
        if (lex.consume('-')) return make_neg(parse_factor());
        if (lex.consume('(')) {
            ExprPtr inner = parse_expr();
            if (!lex.consume(')')) fail("expected ')'");
            return inner;
        }
        char c = lex.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        fail("expected an operand");
    }

    ExprPtr parse_number() {
        std::size_t start = lex.pos;
        while (lex.pos < lex.text.size() &&
               std::isdigit(static_cast<unsigned char>(lex.text[lex.pos])))
            ++lex.pos;
        if (lex.pos < lex.text.size() && lex.text[lex.pos] == '.') {
            ++lex.pos;
            std::size_t frac_start = lex.pos;
            while (lex.pos < lex.text.size() &&
                   std::isdigit(static_cast<unsigned char>(lex.text[lex.pos])))
                ++lex.pos;
            if (lex.pos == frac_start) fail("expected digits after '.'");
        }
        return make_const(
            Rational::from_decimal(std::string(lex.text.substr(start, lex.pos - start))));
    }

    ExprPtr parse_ident() {
        std::size_t start = lex.pos;
        while (lex.pos < lex.text.size()) {
            char c = lex.text[lex.pos];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
                ++lex.pos;
            else
                break;
        }
        return make_var(std::string(lex.text.substr(start, lex.pos - start)));
    }
};

}  // namespace

ExprPtr parse(std::string_view text) {
    Parser p{Lexer{text}};
    ExprPtr e = p.parse_expr();
    if (!p.lex.eof()) p.fail("unexpected token");
    return e;
}

std::string to_string(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Const: {
            std::ostringstream os;
            os << e.value;
            return os.str();
        }
        case Expr::Kind::Var: return e.name;
        case Expr::Kind::Neg: return "-(" + to_string(*e.lhs) + ")";
        case Expr::Kind::Add: return "(" + to_string(*e.lhs) + " + " + to_string(*e.rhs) + ")";
        case Expr::Kind::Sub: return "(" + to_string(*e.lhs) + " - " + to_string(*e.rhs) + ")";
        case Expr::Kind::Mul: return "(" + to_string(*e.lhs) + " * " + to_string(*e.rhs) + ")";
        case Expr::Kind::Div: return "(" + to_string(*e.lhs) + " / " + to_string(*e.rhs) + ")";
    }
    return "?";
}

// -- signs and ranges -------------------------------------------------------------

const char* to_string(Sign s) {
    switch (s) {
        case Sign::Positive: return "pos";
        case Sign::Negative: return "neg";
        case Sign::Zero: return "zero";
        case Sign::Unknown: return "unknown";
    }
    return "?";
}

const char* to_string(BoundKind k) {
    switch (k) {
        case BoundKind::RelativePrecision: return "rp";
        case BoundKind::AbsolutePrecision: return "ap";
        case BoundKind::Failed: return "failed";
    }
    return "?";
}

namespace {

Sign sign_of(const Rational& v) {
    int s = v.sign();
    return s > 0 ? Sign::Positive : s < 0 ? Sign::Negative : Sign::Zero;
}

Sign negate(Sign s) {
    if (s == Sign::Positive) return Sign::Negative;
    if (s == Sign::Negative) return Sign::Positive;
    return s;
}

Sign sign_add(Sign a, Sign b) {
    if (a == Sign::Zero) return b;
    if (b == Sign::Zero) return a;
    if (a == b && a != Sign::Unknown) return a;
    return Sign::Unknown;
}

Sign sign_mul(Sign a, Sign b) {
    if (a == Sign::Zero || b == Sign::Zero) return Sign::Zero;
    if (a == Sign::Unknown || b == Sign::Unknown) return Sign::Unknown;
    return a == b ? Sign::Positive : Sign::Negative;
}

Sign refine(Sign s, const std::optional<Enclosure>& range) {
    if (!range) return s;
    if (range->lo().sign() > 0) return Sign::Positive;
    if (range->hi().sign() < 0) return Sign::Negative;
    if (range->lo().is_zero() && range->hi().is_zero()) return Sign::Zero;
    return s;
}

std::optional<Enclosure> range_add(const std::optional<Enclosure>& a,
                                   const std::optional<Enclosure>& b) {
    if (!a || !b) return std::nullopt;
    return *a + *b;
}

std::optional<Enclosure> range_mul(const std::optional<Enclosure>& a,
                                   const std::optional<Enclosure>& b) {
    if (!a || !b) return std::nullopt;
    return mul(*a, *b);
}

std::optional<Enclosure> range_div(const std::optional<Enclosure>& a,
                                   const std::optional<Enclosure>& b) {
    if (!a || !b) return std::nullopt;
    if (b->contains(Rational(0))) return std::nullopt;
    Enclosure inv(b->hi().reciprocal(), b->lo().reciprocal());
    return mul(*a, inv);
}

const VarSpec& lookup(const SignEnv& env, const std::string& name) {
    auto it = env.find(name);
    if (it == env.end()) throw std::invalid_argument("unbound variable \"" + name + "\"");
    return it->second;
}

SignTree infer_node(const Expr& e, const SignEnv& env) {
    SignTree t;
    switch (e.kind) {
        case Expr::Kind::Const:
            t.sign = sign_of(e.value);
            t.range = Enclosure::point(e.value);
            break;
        case Expr::Kind::Var: {
            const VarSpec& v = lookup(env, e.name);
            t.sign = refine(v.sign, v.range);
            t.range = v.range;
            break;
        }
        case Expr::Kind::Neg: {
            SignTree a = infer_node(*e.lhs, env);
            t.sign = negate(a.sign);
            if (a.range) t.range = -*a.range;
            t.children.push_back(std::move(a));
            break;
        }
        case Expr::Kind::Add:
        case Expr::Kind::Sub: {
            SignTree a = infer_node(*e.lhs, env);
            SignTree b = infer_node(*e.rhs, env);
            Sign bs = e.kind == Expr::Kind::Sub ? negate(b.sign) : b.sign;
            std::optional<Enclosure> br = b.range;
            if (e.kind == Expr::Kind::Sub && br) br = -*br;
            t.sign = sign_add(a.sign, bs);
            t.range = range_add(a.range, br);
            t.sign = refine(t.sign, t.range);
            t.children.push_back(std::move(a));
            t.children.push_back(std::move(b));
            break;
        }
        case Expr::Kind::Mul:
        case Expr::Kind::Div: {
            SignTree a = infer_node(*e.lhs, env);
            SignTree b = infer_node(*e.rhs, env);
            t.sign = sign_mul(a.sign, b.sign);
            if (e.kind == Expr::Kind::Div) {
                if (b.sign == Sign::Zero) t.sign = Sign::Unknown;
                t.range = range_div(a.range, b.range);
            } else {
                t.range = range_mul(a.range, b.range);
            }
            t.sign = refine(t.sign, t.range);
            t.children.push_back(std::move(a));
            t.children.push_back(std::move(b));
            break;
        }
    }
    return t;
}

}  // namespace

SignTree infer_sign(const Expr& e, const SignEnv& env) { return infer_node(e, env); }

// -- bound derivation ---------------------------------------------------------------

namespace {

struct AnalyzeCtx {
    const SignEnv& env;
    Format f;
    RoundingMode m;
    unsigned work_bits;
    Rational u;       // unit roundoff
    Rational g;       // u/(1-u)
};

bool definite(Sign s) { return s == Sign::Positive || s == Sign::Negative; }

Rational max_abs(const Enclosure& e) { return max(e.lo().abs(), e.hi().abs()); }

Rational min_abs(const Enclosure& e) {
    if (e.lo().sign() > 0) return e.lo();
    if (e.hi().sign() < 0) return e.hi().abs();
    return Rational(0);
}

// Absolute-precision view of a child node: its ap bound and the magnitude
// bounds of its computed value. Conversion from an rp child goes through
// the declared range.
struct ApView {
    bool ok = false;
    std::string why;
    Rational bound;
    Rational mag_hi;      // upper bound on |computed value|
    Rational mag_lo;      // lower bound on |computed value| (may be 0)
    bool converted = false;
};

ApView ap_view(const NodeAnalysis& node, const AnalyzeCtx& ctx) {
    ApView v;
    if (node.kind == BoundKind::Failed) {
        v.why = "child analysis failed";
        return v;
    }
    if (!node.range) {
        v.why = "no range available for ap fallback";
        return v;
    }
    if (node.kind == BoundKind::AbsolutePrecision) {
        v.bound = node.bound;
    } else {
        v.bound = max_abs(*node.range) * rp_to_relerr_bound(node.bound, ctx.work_bits);
        v.converted = true;
    }
    v.mag_hi = max_abs(*node.range) + v.bound;
    Rational lo = min_abs(*node.range) - v.bound;
    v.mag_lo = lo.sign() > 0 ? lo : Rational(0);
    v.ok = true;
    return v;
}

NodeAnalysis analyze_node(const Expr& e, AnalyzeCtx& ctx);

NodeAnalysis failed(NodeAnalysis n, std::string reason) {
    n.kind = BoundKind::Failed;
    n.fail_reason = std::move(reason);
    n.bound = Rational(0);
    return n;
}

// Add with rhs possibly logically negated (Sub is Add over the negation).
NodeAnalysis analyze_sum(const Expr& e, AnalyzeCtx& ctx, bool negate_rhs) {
    NodeAnalysis n;
    n.label = negate_rhs ? "-" : "+";
    NodeAnalysis a = analyze_node(*e.lhs, ctx);
    NodeAnalysis b = analyze_node(*e.rhs, ctx);

    // normalized right operand
    Sign bs = negate_rhs ? negate(b.sign) : b.sign;
    std::optional<Enclosure> brange = b.range;
    if (negate_rhs && brange) brange = -*brange;

    n.range = range_add(a.range, brange);
    n.sign = refine(sign_add(a.sign, bs), n.range);

    bool rp_ok = a.kind == BoundKind::RelativePrecision &&
                 b.kind == BoundKind::RelativePrecision && definite(a.sign) && definite(bs) &&
                 a.sign == bs;
    if (rp_ok) {
        n.kind = BoundKind::RelativePrecision;
        n.bound = max(a.bound, b.bound) + ctx.g;
        if (negate_rhs) n.rules.push_back("rp_scale(-1)");
        n.rules.insert(n.rules.end(), {"rp_add_max", "fp_op_rounding", "rp_triangle"});
    } else {
        ApView va = ap_view(a, ctx), vb = ap_view(b, ctx);
        bool has_range = n.range.has_value();
        n.children.push_back(std::move(a));
        n.children.push_back(std::move(b));
        if (!va.ok || !vb.ok)
            return failed(std::move(n),
                          "sign condition unsatisfiable, " + (va.ok ? vb.why : va.why));
        if (!has_range)
            return failed(std::move(n),
                          "sign condition unsatisfiable, no range for the rounding bridge");
        n.kind = BoundKind::AbsolutePrecision;
        Rational operand = va.bound + vb.bound;
        Rational rounded_mag = max_abs(*n.range) + operand;
        n.bound = operand + ctx.u * rounded_mag;
        if (va.converted) n.rules.push_back("rp_to_relerr(lhs)");
        if (vb.converted) n.rules.push_back("rp_to_relerr(rhs)");
        if (negate_rhs) n.rules.push_back("ap_scale(-1)");
        n.rules.insert(n.rules.end(), {"ap_add", "ap_rounding_bridge", "ap_triangle"});
        return n;
    }
    n.children.push_back(std::move(a));
    n.children.push_back(std::move(b));
    return n;
}

NodeAnalysis analyze_node(const Expr& e, AnalyzeCtx& ctx) {
    NodeAnalysis n;
    switch (e.kind) {
        case Expr::Kind::Const: {
            std::ostringstream os;
            os << e.value;
            n.label = os.str();
            n.sign = sign_of(e.value);
            n.range = Enclosure::point(e.value);
            if (definite(n.sign)) {
                n.kind = BoundKind::RelativePrecision;
                n.rules.push_back("exact_input");
            } else {
                n.kind = BoundKind::AbsolutePrecision;
                n.rules.push_back("exact_input");
            }
            n.bound = Rational(0);
            return n;
        }
        case Expr::Kind::Var: {
            n.label = e.name;
            const VarSpec& v = lookup(ctx.env, e.name);
            n.sign = refine(v.sign, v.range);
            n.range = v.range;
            Rational alpha = v.input_alpha.value_or(Rational(0));
            if (definite(n.sign)) {
                n.kind = BoundKind::RelativePrecision;
                n.bound = alpha;
                n.rules.push_back(v.input_alpha ? "input_alpha" : "exact_input");
            } else if (!v.input_alpha) {
                n.kind = BoundKind::AbsolutePrecision;
                n.bound = Rational(0);
                n.rules.push_back("exact_input");
            } else if (n.range) {
                n.kind = BoundKind::AbsolutePrecision;
                n.bound = max_abs(*n.range) * rp_to_relerr_bound(alpha, ctx.work_bits);
                n.rules.insert(n.rules.end(), {"input_alpha", "rp_to_relerr"});
            } else {
                return failed(std::move(n),
                              "input precision on a sign-indefinite variable needs a range");
            }
            return n;
        }
        case Expr::Kind::Neg: {
            n.label = "neg";
            NodeAnalysis a = analyze_node(*e.lhs, ctx);
            n.sign = negate(a.sign);
            if (a.range) n.range = -*a.range;
            n.kind = a.kind;
            n.bound = a.bound;
            n.fail_reason = a.fail_reason;
            if (a.kind == BoundKind::RelativePrecision)
                n.rules.push_back("rp_scale(-1)");
            else if (a.kind == BoundKind::AbsolutePrecision)
                n.rules.push_back("ap_scale(-1)");
            n.children.push_back(std::move(a));
            return n;
        }
        case Expr::Kind::Add:
            return analyze_sum(e, ctx, false);
        case Expr::Kind::Sub:
            return analyze_sum(e, ctx, true);
        case Expr::Kind::Mul:
        case Expr::Kind::Div: {
            bool is_div = e.kind == Expr::Kind::Div;
            n.label = is_div ? "/" : "*";
            NodeAnalysis a = analyze_node(*e.lhs, ctx);
            NodeAnalysis b = analyze_node(*e.rhs, ctx);
            n.sign = sign_mul(a.sign, b.sign);
            if (is_div) {
                if (b.sign == Sign::Zero) n.sign = Sign::Unknown;
                n.range = range_div(a.range, b.range);
            } else {
                n.range = range_mul(a.range, b.range);
            }
            n.sign = refine(n.sign, n.range);

            bool rp_ok = a.kind == BoundKind::RelativePrecision &&
                         b.kind == BoundKind::RelativePrecision;
            if (rp_ok) {
                n.kind = BoundKind::RelativePrecision;
                n.bound = a.bound + b.bound + ctx.g;
                if (is_div) n.rules.push_back("rp_reciprocal");
                n.rules.insert(n.rules.end(), {"rp_mul", "fp_op_rounding", "rp_triangle"});
                n.children.push_back(std::move(a));
                n.children.push_back(std::move(b));
                return n;
            }
            ApView va = ap_view(a, ctx), vb = ap_view(b, ctx);
            n.children.push_back(std::move(a));
            n.children.push_back(std::move(b));
            if (!va.ok || !vb.ok) return failed(std::move(n), va.ok ? vb.why : va.why);
            n.kind = BoundKind::AbsolutePrecision;
            if (va.converted) n.rules.push_back("rp_to_relerr(lhs)");
            if (vb.converted) n.rules.push_back("rp_to_relerr(rhs)");
            if (!is_div) {
                Rational operand = va.mag_hi * vb.bound + vb.mag_hi * va.bound +
                                   va.bound * vb.bound;
                n.bound = operand + ctx.u * (va.mag_hi * vb.mag_hi);
                n.rules.insert(n.rules.end(), {"ap_mul", "ap_rounding_bridge", "ap_triangle"});
            } else {
                if (!(vb.mag_lo > vb.bound))
                    return failed(std::move(n),
                                  "divisor magnitude lower bound does not exceed its error "
                                  "bound (quotient rule precondition)");
                Rational operand = (va.mag_hi * vb.bound + vb.mag_hi * va.bound) /
                                   (vb.mag_lo * (vb.mag_lo - vb.bound));
                n.bound = operand + ctx.u * (va.mag_hi / vb.mag_lo);
                n.rules.insert(n.rules.end(), {"ap_div", "ap_rounding_bridge", "ap_triangle"});
            }
            return n;
        }
    }
    return failed(std::move(n), "unreachable expression kind");
}

bool any_failed(const NodeAnalysis& n) {
    if (n.kind == BoundKind::Failed) return true;
    for (const auto& c : n.children)
        if (any_failed(c)) return true;
    return false;
}

}  // namespace

AnalysisResult analyze(const Expr& e, const SignEnv& env, const Format& f, RoundingMode m,
                       unsigned work_bits) {
    AnalyzeCtx ctx{env, f, m, work_bits, unit_roundoff(f, m), rp_model_bound(f, m)};
    AnalysisResult result;
    result.root = analyze_node(e, ctx);
    result.kind = any_failed(result.root) ? BoundKind::Failed : result.root.kind;
    if (result.kind != BoundKind::Failed) {
        result.bound = result.root.bound;
        if (result.kind == BoundKind::RelativePrecision)
            result.relerr_bound = rp_to_relerr_bound(result.bound, work_bits);
    }
    return result;
}

AnalysisResult analyze_inner_product(unsigned n, const Format& f, RoundingMode m) {
    if (n < 1) throw std::invalid_argument("analyze_inner_product: n must be >= 1");
    Rational g = rp_model_bound(f, m);

    auto product_term = [&](unsigned k) {
        NodeAnalysis t;
        t.label = "product " + std::to_string(k);
        t.sign = Sign::Positive;
        t.kind = BoundKind::RelativePrecision;
        t.bound = g;
        t.rules = {"rp_mul", "fp_op_rounding", "rp_triangle"};
        return t;
    };

    NodeAnalysis acc = product_term(1);
    for (unsigned k = 2; k <= n; ++k) {
        NodeAnalysis sum;
        sum.label = "partial sum " + std::to_string(k);
        sum.sign = Sign::Positive;
        sum.kind = BoundKind::RelativePrecision;
        sum.bound = Rational(static_cast<long>(k)) * g;
        sum.rules = {"rp_add_max", "fp_op_rounding", "rp_triangle"};
        sum.children.push_back(std::move(acc));
        sum.children.push_back(product_term(k));
        acc = std::move(sum);
    }

    AnalysisResult result;
    result.root = std::move(acc);
    result.kind = BoundKind::RelativePrecision;
    result.bound = result.root.bound;
    result.relerr_bound = rp_to_relerr_bound(result.bound, 128);
    return result;
}

BoundComparison compare_bounds(const AnalysisResult& result, unsigned n, const Rational& u,
                               unsigned work_bits) {
    if (result.kind != BoundKind::RelativePrecision)
        throw std::domain_error("compare_bounds: root bound is not relative precision");
    BoundComparison c;
    c.rp_bound = result.bound;
    c.converted_exact = rp_to_relerr_bound(result.bound, work_bits);
    c.converted_closed = converted_relerr_bound(n, u);
    c.higham = higham_relerr_bound(n, u);
    c.ratio = c.converted_closed / c.higham;
    c.converted_ge_higham = c.converted_closed >= c.higham;
    return c;
}

// -- evaluation -----------------------------------------------------------------------

Rational eval_exact(const Expr& e, const std::map<std::string, Rational>& vals) {
    switch (e.kind) {
        case Expr::Kind::Const: return e.value;
        case Expr::Kind::Var: {
            auto it = vals.find(e.name);
            if (it == vals.end())
                throw std::invalid_argument("eval_exact: unbound variable \"" + e.name + "\"");
            return it->second;
        }
        case Expr::Kind::Neg: return -eval_exact(*e.lhs, vals);
        case Expr::Kind::Add: return eval_exact(*e.lhs, vals) + eval_exact(*e.rhs, vals);
        case Expr::Kind::Sub: return eval_exact(*e.lhs, vals) - eval_exact(*e.rhs, vals);
        case Expr::Kind::Mul: return eval_exact(*e.lhs, vals) * eval_exact(*e.rhs, vals);
        case Expr::Kind::Div: return eval_exact(*e.lhs, vals) / eval_exact(*e.rhs, vals);
    }
    throw std::logic_error("eval_exact: bad expression");
}

Dyadic eval_fp(const Expr& e, const std::map<std::string, Dyadic>& vals, const Format& f,
               RoundingMode m, RnTies ties) {
    switch (e.kind) {
        case Expr::Kind::Const:
            if (!is_representable(e.value, f))
                throw std::invalid_argument("eval_fp: constant not representable: " +
                                            e.value.fraction_str());
            return Dyadic::from_rational(e.value);
        case Expr::Kind::Var: {
            auto it = vals.find(e.name);
            if (it == vals.end())
                throw std::invalid_argument("eval_fp: unbound variable \"" + e.name + "\"");
            return it->second;
        }
        case Expr::Kind::Neg: return -eval_fp(*e.lhs, vals, f, m, ties);
        default: break;
    }
    Dyadic a = eval_fp(*e.lhs, vals, f, m, ties);
    Dyadic b = eval_fp(*e.rhs, vals, f, m, ties);
    Rational exact;
    switch (e.kind) {
        case Expr::Kind::Add: exact = a.to_rational() + b.to_rational(); break;
        case Expr::Kind::Sub: exact = a.to_rational() - b.to_rational(); break;
        case Expr::Kind::Mul: exact = a.to_rational() * b.to_rational(); break;
        case Expr::Kind::Div: exact = a.to_rational() / b.to_rational(); break;
        default: throw std::logic_error("eval_fp: bad expression");
    }
    return round(exact, f, m, ties);
}

}  // namespace relprec
