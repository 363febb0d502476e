#pragma once

#include "relprec/model.hpp"

#include <map>
#include <memory>
#include <stdexcept>

namespace relprec {

// -- expressions --------------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Arithmetic expression tree over rational constants and named variables.
struct Expr {
    enum class Kind { Const, Var, Neg, Add, Sub, Mul, Div };
    Kind kind;
    Rational value;    // Const
    std::string name;  // Var
    ExprPtr lhs, rhs;  // Neg uses lhs only
};

ExprPtr make_const(Rational v);
ExprPtr make_var(std::string name);
ExprPtr make_neg(ExprPtr a);
ExprPtr make_binary(Expr::Kind k, ExprPtr a, ExprPtr b);

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what), position(position) {}
    std::size_t position;  // 1-based character index
};

/// Recursive-descent parser: standard precedence, left associativity, decimal
/// literals converted exactly. Throws ParseError.
ExprPtr parse(std::string_view text);

std::string to_string(const Expr& e);

// -- variable environment -------------------------------------------------------

enum class Sign { Positive, Negative, Zero, Unknown };
const char* to_string(Sign s);

struct VarSpec {
    Sign sign = Sign::Unknown;
    std::optional<Enclosure> range;       // closed interval containing the value
    std::optional<Rational> input_alpha;  // log-ratio bound for pre-rounded inputs
};
using SignEnv = std::map<std::string, VarSpec>;

/// Per-node sign annotation, refined by interval arithmetic over declared
/// ranges. Throws std::invalid_argument on unbound variables.
struct SignTree {
    Sign sign = Sign::Unknown;
    std::optional<Enclosure> range;
    std::vector<SignTree> children;
};
SignTree infer_sign(const Expr& e, const SignEnv& env);

// -- analysis -------------------------------------------------------------------

enum class BoundKind { RelativePrecision, AbsolutePrecision, Failed };
const char* to_string(BoundKind k);

struct NodeAnalysis {
    std::string label;
    Sign sign = Sign::Unknown;
    std::optional<Enclosure> range;
    BoundKind kind = BoundKind::Failed;
    Rational bound;
    std::vector<std::string> rules;  // names of the rules that produced `bound`
    std::string fail_reason;
    std::vector<NodeAnalysis> children;
};

struct AnalysisResult {
    NodeAnalysis root;
    BoundKind kind = BoundKind::Failed;
    Rational bound;
    std::optional<Rational> relerr_bound;  // converted bound when kind is rp
};

/// Bottom-up bound derivation. Leaves are exact format values (bound 0 unless
/// an input_alpha is declared). Same-sign sums and all products/quotients stay
/// in the log-ratio calculus; sums that cannot be sign-certified fall back to
/// absolute bounds through declared ranges. Nodes that cannot be bounded are
/// reported Failed with a reason.
AnalysisResult analyze(const Expr& e, const SignEnv& env, const Format& f, RoundingMode m,
                       unsigned work_bits = 128);

/// Symbolic derivation of the length-n inner-product bound n*u/(1-u); the
/// derivation tree mirrors the inductive argument (one step per element).
AnalysisResult analyze_inner_product(unsigned n, const Format& f, RoundingMode m);

struct BoundComparison {
    Rational rp_bound;
    Rational converted_exact;   // upper bound on e^rp_bound - 1
    Rational converted_closed;  // nu/(1-(n+1)u)
    Rational higham;            // nu/(1-nu)
    Rational ratio;             // converted_closed / higham
    bool converted_ge_higham = false;
};

/// Compares an rp root bound against the classical inner-product relative
/// error bound. Requires an rp result and (n+1)*u < 1.
BoundComparison compare_bounds(const AnalysisResult& result, unsigned n, const Rational& u,
                               unsigned work_bits = 128);

// -- evaluation harness -----------------------------------------------------------

Rational eval_exact(const Expr& e, const std::map<std::string, Rational>& vals);

/// Emulated evaluation: every binary operation computes exactly on the current
/// format values and rounds the result; negation is exact.
Dyadic eval_fp(const Expr& e, const std::map<std::string, Dyadic>& vals, const Format& f,
               RoundingMode m, RnTies ties = RnTies::ToEven);

}  // namespace relprec
