#include "relprec/cli.hpp"

#include "relprec/analyzer.hpp"
#include "relprec/serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace relprec {

namespace {

std::string pretty(const Rational& r) {
    return r.fraction_str() + " (approx " + r.decimal_str() + ")";
}

void write_json(const std::string& path, const ordered_json& j) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

ordered_json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    return ordered_json::parse(in);
}

RoundingMode parse_mode(const std::string& s) {
    auto m = rounding_mode_from_string(s);
    if (!m) throw CLI::ValidationError("--mode", "expected one of ru, rd, rz, rn");
    return *m;
}

int report_exit(std::size_t violations, std::size_t undecided) {
    if (violations) return kExitViolation;
    if (undecided) return kExitUndecided;
    return kExitOk;
}

int cmd_verify_model(const std::string& grid_spec, const std::string& mode_str,
                     unsigned work_bits, const std::string& json_path) {
    FloatGrid grid = parse_grid_spec(grid_spec);
    RoundingMode mode = parse_mode(mode_str);
    WorkBudget wb{work_bits, 4096};
    ModelReport rep = verify_model_exhaustive(grid, mode, wb);

    std::cout << "format: p=" << grid.format.precision << " [emin=" << grid.exp_lo
              << ", emax=" << grid.exp_hi << ", sub=" << grid.subsamples_per_gap
              << "]  mode: " << to_string(mode) << "  work-bits: " << work_bits << "\n";
    std::cout << "points checked: " << rep.points_checked << "\n";
    std::cout << "unit roundoff u = " << pretty(rep.u) << "\n";
    std::cout << "standard model: max |round(x)-x|/|x| = " << pretty(rep.max_std_delta)
              << " at x = " << rep.std_witness << "\n";
    std::cout << "exponential model bound u/(1-u) = " << pretty(rep.rp_bound) << "\n";
    std::cout << "exponential model: max enclosure hi of |ln(round(x)/x)| = "
              << pretty(rep.max_rp_delta_hi) << " at x = " << rep.rp_witness << "\n";
    std::cout << "violations: " << rep.violations.size()
              << "  undecided: " << rep.undecided.size() << "\n";
    for (const auto& v : rep.violations)
        std::cout << "  VIOLATION [" << v.kind << "] x = " << v.x << " observed "
                  << pretty(v.observed) << " > bound " << pretty(v.bound) << "\n";
    for (const auto& u : rep.undecided)
        std::cout << "  UNDECIDED x = " << u.x << " enclosure [" << u.enc_lo << ", " << u.enc_hi
                  << "] vs bound " << u.bound << " at " << u.work_bits << " bits\n";

    write_json(json_path, to_json(rep));
    return report_exit(rep.violations.size(), rep.undecided.size());
}

void print_innerprod_report(const InnerProductReport& rep) {
    std::cout << "instances: " << rep.instances << "  rejected: " << rep.rejected << "\n";
    std::cout << "final checks: " << rep.final_checks
              << "  induction checks: " << rep.induction_checks << "\n";
    std::cout << "relative-error comparisons: " << rep.relerr_checked
              << "  classical bound held: " << rep.higham_held
              << "  converted bound held: " << rep.converted_held << "\n";
    if (rep.relerr_checked)
        std::cout << "worst measured relative error: " << pretty(rep.max_relerr)
                  << " (converted bound " << pretty(rep.max_relerr_bound) << ")\n";
    std::cout << "violations: " << rep.violations.size()
              << "  undecided: " << rep.undecided.size() << "\n";
    for (const auto& v : rep.violations)
        std::cout << "  VIOLATION instance " << v.instance << " n=" << v.n << " [" << v.kind
                  << "] " << v.detail << "\n";
    for (const auto& u : rep.undecided)
        std::cout << "  UNDECIDED instance " << u.instance << " n=" << u.n << " [" << u.kind
                  << "] " << u.detail << "\n";
}

InnerProductGen explicit_gen_from_file(const std::string& path) {
    ordered_json j = load_json(path);
    InnerProductGen gen;
    gen.kind = InnerProductGen::Kind::Explicit;
    auto load_vec = [](const ordered_json& a) {
        std::vector<Rational> v;
        for (const auto& e : a) v.push_back(rational_from_json(e));
        return v;
    };
    if (j.is_object()) {
        gen.xs.push_back(load_vec(j.at("x")));
        gen.ys.push_back(load_vec(j.at("y")));
    } else {
        for (const auto& pair : j) {
            gen.xs.push_back(load_vec(pair.at("x")));
            gen.ys.push_back(load_vec(pair.at("y")));
        }
    }
    return gen;
}

int cmd_verify_innerprod(int p, const std::string& mode_str, bool exhaustive, unsigned n,
                         long exponent, std::uint64_t seed, unsigned trials, unsigned n_min,
                         unsigned n_max, long emin, long emax, unsigned work_bits,
                         const std::string& vectors_path, const std::string& json_path) {
    Format f(p);
    RoundingMode mode = parse_mode(mode_str);
    InnerProductGen gen;
    if (!vectors_path.empty()) {
        gen = explicit_gen_from_file(vectors_path);
    } else if (exhaustive) {
        gen.kind = InnerProductGen::Kind::Exhaustive;
        gen.n = n;
        gen.exponent = exponent;
    } else {
        gen.kind = InnerProductGen::Kind::Random;
        gen.seed = seed;
        gen.trials = trials;
        gen.n_min = n_min;
        gen.n_max = n_max;
        gen.exp_lo = emin;
        gen.exp_hi = emax;
    }
    WorkBudget wb{work_bits, 4096};
    InnerProductReport rep = verify_inner_product(gen, f, mode, wb);

    std::cout << "format: p=" << p << "  mode: " << to_string(mode) << "\n";
    std::cout << "bound per length n: n * " << pretty(rp_model_bound(f, mode)) << "\n";
    print_innerprod_report(rep);
    write_json(json_path, to_json(rep));
    return report_exit(rep.violations.size(), rep.undecided.size());
}

int cmd_demo_innerprod(unsigned n, int p, const std::string& mode_str,
                       const std::string& vectors_path, std::uint64_t seed, unsigned trials,
                       unsigned work_bits, const std::string& json_path) {
    Format f(p);
    RoundingMode mode = parse_mode(mode_str);
    InnerProductGen gen;
    if (!vectors_path.empty()) {
        gen = explicit_gen_from_file(vectors_path);
    } else {
        gen.kind = InnerProductGen::Kind::Random;
        gen.seed = seed;
        gen.trials = trials;
        gen.n_min = n;
        gen.n_max = n;
        gen.exp_lo = -1;
        gen.exp_hi = 1;
    }

    auto first = generate_pairs(gen, f, 1);
    if (first.empty()) {
        std::cout << "no valid vector pair to trace (all inputs rejected?)\n";
        return kExitUsage;
    }
    const auto& [xs, ys] = first.front();
    auto [fp, trace] = inner_product_fp(xs, ys, f, mode);

    std::cout << "trace of the first instance (n = " << xs.size() << "):\n";
    std::cout << "  x = [";
    for (std::size_t i = 0; i < xs.size(); ++i)
        std::cout << (i ? ", " : "") << xs[i].to_rational();
    std::cout << "]\n  y = [";
    for (std::size_t i = 0; i < ys.size(); ++i)
        std::cout << (i ? ", " : "") << ys[i].to_rational();
    std::cout << "]\n";
    for (std::size_t k = 0; k < trace.partials_exact.size(); ++k) {
        std::cout << "  step " << k + 1 << ": exact s = " << trace.partials_exact[k]
                  << "  fp s = " << trace.partials_fp[k].to_rational()
                  << "  bound = " << trace.per_step_bounds[k].fraction_str() << "\n";
    }
    std::cout << "  fp result: " << fp.to_rational() << "\n\n";

    WorkBudget wb{work_bits, 4096};
    InnerProductReport rep = verify_inner_product(gen, f, mode, wb);
    print_innerprod_report(rep);

    if (!json_path.empty()) {
        ordered_json j = to_json(rep);
        j["first_trace"] = to_json(trace);
        write_json(json_path, j);
    }
    return report_exit(rep.violations.size(), rep.undecided.size());
}

void print_derivation(const NodeAnalysis& node, int depth) {
    std::cout << std::string(static_cast<std::size_t>(depth) * 2, ' ') << node.label << " ["
              << to_string(node.kind) << ", sign " << to_string(node.sign);
    if (node.kind != BoundKind::Failed) std::cout << ", bound " << node.bound.fraction_str();
    if (!node.rules.empty()) {
        std::cout << ", rules:";
        for (const auto& r : node.rules) std::cout << " " << r;
    }
    if (!node.fail_reason.empty()) std::cout << ", reason: " << node.fail_reason;
    std::cout << "]\n";
    for (const auto& c : node.children) print_derivation(c, depth + 1);
}

int cmd_analyze(const std::string& expr_str, const std::string& env_path, int p,
                const std::string& mode_str, long compare_n, unsigned work_bits,
                const std::string& json_path) {
    Format f(p);
    RoundingMode mode = parse_mode(mode_str);
    SignEnv env;
    if (!env_path.empty()) env = sign_env_from_json(load_json(env_path));

    ExprPtr expr;
    try {
        expr = parse(expr_str);
    } catch (const ParseError& e) {
        std::cout << "parse error: " << e.what() << "\n";
        return kExitUsage;
    }

    AnalysisResult result;
    try {
        result = analyze(*expr, env, f, mode, work_bits);
    } catch (const std::invalid_argument& e) {
        std::cout << "analysis error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::cout << "expression: " << to_string(*expr) << "\n";
    std::cout << "format: p=" << p << "  mode: " << to_string(mode) << "\n";
    std::cout << "result: " << to_string(result.kind);
    if (result.kind != BoundKind::Failed) std::cout << "  bound = " << pretty(result.bound);
    std::cout << "\n";
    if (result.relerr_bound)
        std::cout << "relative-error bound (converted): " << pretty(*result.relerr_bound) << "\n";
    std::cout << "derivation:\n";
    print_derivation(result.root, 1);

    ordered_json out = to_json(result);
    if (compare_n > 0 && result.kind == BoundKind::RelativePrecision) {
        BoundComparison cmp =
            compare_bounds(result, static_cast<unsigned>(compare_n), unit_roundoff(f, mode),
                           work_bits);
        std::cout << "bound comparison at n = " << compare_n << ":\n";
        std::cout << "  classical nu/(1-nu)        = " << pretty(cmp.higham) << "\n";
        std::cout << "  converted nu/(1-(n+1)u)    = " << pretty(cmp.converted_closed) << "\n";
        std::cout << "  exact converted (e^B - 1)  <= " << pretty(cmp.converted_exact) << "\n";
        std::cout << "  ratio converted/classical  = " << pretty(cmp.ratio) << "\n";
        out["comparison"] = to_json(cmp);
    }
    write_json(json_path, out);

    if (result.kind == BoundKind::Failed) {
        std::cout << "analysis failed at the root (see node reasons above)\n";
        return kExitAnalysisFailed;
    }
    return kExitOk;
}

int cmd_counterexamples(unsigned work_bits, const std::string& json_path) {
    RelErrCounterexamples c = relerr_counterexamples(work_bits);
    std::cout << "relative error is not symmetric:\n";
    std::cout << "  err_rel(1, 11/10) = " << pretty(c.symm_forward) << "\n";
    std::cout << "  err_rel(11/10, 1) = " << pretty(c.symm_reverse) << "\n";
    std::cout << "relative error violates the triangle inequality:\n";
    std::cout << "  err_rel(1, 2) = " << pretty(c.tri_direct) << " > " << pretty(c.tri_sum)
              << " = err_rel(1, 3/2) + err_rel(3/2, 2)\n";
    std::cout << "the log-ratio metric on the same triple is consistent:\n";
    std::cout << "  |ln 2| in [" << c.rp_direct.lo().decimal_str() << ", "
              << c.rp_direct.hi().decimal_str() << "]\n";
    std::cout << "  |ln(3/2)| + |ln(4/3)| in [" << c.rp_sum.lo().decimal_str() << ", "
              << c.rp_sum.hi().decimal_str() << "] (equal reals; enclosures overlap: "
              << (c.rp_triangle_consistent ? "yes" : "NO") << ")\n";

    bool reproduced = c.symm_forward == Rational(1, 10) && c.symm_reverse == Rational(1, 11) &&
                      c.tri_direct == Rational(1) && c.tri_sum == Rational(5, 6) &&
                      c.symmetry_broken && c.triangle_broken && c.rp_triangle_consistent;
    if (!json_path.empty()) {
        ordered_json j{{"schema", "relprec.counterexamples/1"},
                       {"symm_forward", to_json(c.symm_forward)},
                       {"symm_reverse", to_json(c.symm_reverse)},
                       {"tri_direct", to_json(c.tri_direct)},
                       {"tri_via_first", to_json(c.tri_via_first)},
                       {"tri_via_second", to_json(c.tri_via_second)},
                       {"tri_sum", to_json(c.tri_sum)},
                       {"rp_direct", to_json(c.rp_direct)},
                       {"rp_sum", to_json(c.rp_sum)},
                       {"reproduced", reproduced}};
        write_json(json_path, j);
    }
    std::cout << (reproduced ? "reproduced exactly\n" : "MISMATCH\n");
    return reproduced ? kExitOk : kExitViolation;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"certified rounding-error bounds via the log-ratio metric"};
    app.require_subcommand(1);

    // verify-model
    std::string vm_grid, vm_mode = "rn", vm_json;
    unsigned vm_bits = 128;
    auto* vm = app.add_subcommand("verify-model",
                                  "sweep a grid and check both rounding error models");
    vm->add_option("--format", vm_grid, "grid spec p=<int>,emin=<int>,emax=<int>,sub=<int>")
        ->required();
    vm->add_option("--mode", vm_mode, "rounding mode: ru, rd, rz, rn");
    vm->add_option("--work-bits", vm_bits, "initial enclosure precision (cap 4096)");
    vm->add_option("--json", vm_json, "write the full report to this path");

    // verify-innerprod
    int vi_p = 0;
    std::string vi_mode = "rn", vi_json, vi_vectors;
    bool vi_exhaustive = false;
    unsigned vi_n = 2, vi_trials = 1000, vi_nmin = 1, vi_nmax = 4, vi_bits = 128;
    long vi_exponent = 0, vi_emin = -1, vi_emax = 1;
    std::uint64_t vi_seed = 1;
    auto* vi = app.add_subcommand("verify-innerprod",
                                  "verify the inner-product bound over generated vectors");
    vi->add_option("--format", vi_p, "precision p")->required();
    vi->add_option("--mode", vi_mode, "rounding mode: ru, rd, rz, rn");
    vi->add_flag("--exhaustive", vi_exhaustive, "all sign-consistent vectors of one binade");
    vi->add_option("--n", vi_n, "vector length for --exhaustive");
    vi->add_option("--exponent", vi_exponent, "binade exponent for --exhaustive");
    vi->add_option("--seed", vi_seed, "random generator seed");
    vi->add_option("--trials", vi_trials, "number of random instances");
    vi->add_option("--n-min", vi_nmin, "minimum random vector length");
    vi->add_option("--n-max", vi_nmax, "maximum random vector length");
    vi->add_option("--emin", vi_emin, "minimum random magnitude exponent");
    vi->add_option("--emax", vi_emax, "maximum random magnitude exponent");
    vi->add_option("--vectors", vi_vectors, "JSON file with explicit vectors");
    vi->add_option("--work-bits", vi_bits, "initial enclosure precision (cap 4096)");
    vi->add_option("--json", vi_json, "write the full report to this path");

    // analyze
    std::string an_expr, an_env, an_mode = "rn", an_json;
    int an_p = 0;
    long an_cmp = 0;
    unsigned an_bits = 128;
    auto* an = app.add_subcommand("analyze", "derive an error bound for an expression");
    an->add_option("--expr", an_expr, "arithmetic expression")->required();
    an->add_option("--env", an_env, "JSON sign/range environment for variables");
    an->add_option("--format", an_p, "precision p")->required();
    an->add_option("--mode", an_mode, "rounding mode: ru, rd, rz, rn");
    an->add_option("--compare-higham", an_cmp, "compare against the classical bound at this n");
    an->add_option("--work-bits", an_bits, "initial enclosure precision (cap 4096)");
    an->add_option("--json", an_json, "write result and derivation to this path");

    // demo-innerprod
    unsigned dm_n = 4, dm_trials = 100, dm_bits = 128;
    int dm_p = 0;
    std::string dm_mode = "rn", dm_vectors, dm_json;
    std::uint64_t dm_seed = 1;
    auto* dm = app.add_subcommand("demo-innerprod",
                                  "trace one emulated inner product and verify a batch");
    dm->add_option("--n", dm_n, "vector length");
    dm->add_option("--format", dm_p, "precision p")->required();
    dm->add_option("--mode", dm_mode, "rounding mode: ru, rd, rz, rn");
    dm->add_option("--vectors", dm_vectors, "JSON file {\"x\": [...], \"y\": [...]}");
    dm->add_option("--seed", dm_seed, "random generator seed");
    dm->add_option("--trials", dm_trials, "number of random instances");
    dm->add_option("--work-bits", dm_bits, "initial enclosure precision (cap 4096)");
    dm->add_option("--json", dm_json, "write the report to this path");

    // counterexamples
    std::string cx_json;
    unsigned cx_bits = 128;
    auto* cx = app.add_subcommand("counterexamples",
                                  "reproduce the failures of plain relative error as a metric");
    cx->add_option("--work-bits", cx_bits, "enclosure precision");
    cx->add_option("--json", cx_json, "write the values to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (vm->parsed())
            return cmd_verify_model(vm_grid, vm_mode, vm_bits, vm_json);
        if (vi->parsed())
            return cmd_verify_innerprod(vi_p, vi_mode, vi_exhaustive, vi_n, vi_exponent, vi_seed,
                                        vi_trials, vi_nmin, vi_nmax, vi_emin, vi_emax, vi_bits,
                                        vi_vectors, vi_json);
        if (an->parsed())
            return cmd_analyze(an_expr, an_env, an_p, an_mode, an_cmp, an_bits, an_json);
        if (dm->parsed())
            return cmd_demo_innerprod(dm_n, dm_p, dm_mode, dm_vectors, dm_seed, dm_trials,
                                      dm_bits, dm_json);
        if (cx->parsed()) return cmd_counterexamples(cx_bits, cx_json);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace relprec
