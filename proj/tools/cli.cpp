#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmv/experiments.hpp"
#include "qmv/fractions.hpp"
#include "qmv/grover.hpp"
#include "qmv/multiply.hpp"
#include "qmv/subsets.hpp"
#include "qmv/verify.hpp"
#include "qmv/version.hpp"

namespace qmv {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// "# qmv <version>" plus the echoed configuration, so every table is
// self-describing and reproducible.
void emit_header(std::ostream& os, const std::string& config_echo) {
    os << "# " << kVersion << "\n# config: " << config_echo << "\n";
}

struct CommonOpts {
    uint64_t seed = 1;
    int64_t walk_dim_cap = walk_dim_cap_from_env();
    uint64_t enum_cap = kDefaultEnumCap;
};

// key=value lines; lines starting with '#' are comments.  Values feed the
// parser as if given on the command line, before the real flags, so real
// flags win.
std::vector<std::string> config_file_args(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open config file " + path);
    std::vector<std::string> args;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--config", "expected key=value, got '" + line + "'");
        args.push_back("--" + line.substr(0, eq));
        args.push_back(line.substr(eq + 1));
    }
    return args;
}

MarkedSet parse_marked_spec(const std::string& spec, const WalkSpace& space, uint64_t seed) {
    MarkedSet marked(static_cast<size_t>(space.num_vertices), 0);
    if (spec == "none") return marked;
    if (spec == "all") {
        std::fill(marked.begin(), marked.end(), 1);
        return marked;
    }
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    if (colon == std::string::npos)
        throw CLI::ValidationError("--marked", "expected none|all|first:T|random:T");
    int count = std::stoi(spec.substr(colon + 1));
    if (count < 0 || count > space.num_vertices)
        throw CLI::ValidationError("--marked", "count out of range");
    if (head == "first") {
        for (int i = 0; i < count; ++i) marked[static_cast<size_t>(i)] = 1;
    } else if (head == "random") {
        Rng rng(seed);
        for (int placed = 0; placed < count;) {
            auto v = rng.uniform_u64(static_cast<uint64_t>(space.num_vertices));
            if (!marked[v]) {
                marked[v] = 1;
                ++placed;
            }
        }
    } else {
        throw CLI::ValidationError("--marked", "expected none|all|first:T|random:T");
    }
    return marked;
}

uint64_t matrix_digest(const DomainMatrix& m) {
    uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    mix(static_cast<uint64_t>(m.rows()));
    mix(static_cast<uint64_t>(m.cols()));
    for (int64_t e : m.entries()) mix(static_cast<uint64_t>(e));
    return h;
}

nlohmann::json ledger_json(const QueryLedger& led) {
    return {{"queries_a", led.queries_a},
            {"queries_b", led.queries_b},
            {"queries_c", led.queries_c},
            {"time_units", led.time_units}};
}

int cmd_gap(int n, int k, bool product, std::ostream& out) {
    std::ostringstream echo;
    echo << "command=gap n=" << n << " k=" << k << " product=" << product;
    emit_header(out, echo.str());
    out << "n,k,formula_gap,eig_gap,abs_err\n";
    auto adj = johnson_adjacency(JohnsonGraph(n, k));
    double formula = johnson_gap_formula(n, k);
    double eig = product ? product_spectrum(adj, adj).gap : spectral_gap_eig(adj).gap;
    out << n << ',' << k << ',' << fmt(formula) << ',' << fmt(eig) << ','
        << fmt(std::fabs(formula - eig)) << '\n';
    return 0;
}

int cmd_epsilon(int n, const std::string& pattern_text, int r, int s, bool exact, uint64_t mc_trials,
                const CommonOpts& common, std::ostream& out) {
    auto pattern = WrongPattern::parse(pattern_text);
    Rng rng(common.seed);
    auto w = wrong_set_from_cells(n, make_pattern_cells(n, pattern, rng));
    FractionEstimate est = exact ? epsilon_exact(w, r, s, common.enum_cap)
                                 : epsilon_mc(w, r, s, mc_trials, derive_seed(common.seed, {1}));
    auto small = check_bound_small_set(w, r, s, common.enum_cap);
    auto indep = check_bound_indep_set(w, r, s, common.enum_cap);
    std::ostringstream echo;
    echo << "command=epsilon n=" << n << " pattern=" << pattern.str() << " r=" << r << " s=" << s
         << " method=" << (exact ? "exact" : "mc") << " trials=" << (exact ? 0 : mc_trials)
         << " seed=" << common.seed;
    emit_header(out, echo.str());
    out << "n,w_size,r,s,method,value,bound_small_set,small_set_applicable,small_set_pass,"
           "bound_indep,indep_applicable,indep_pass\n";
    out << n << ',' << w.size() << ',' << r << ',' << s << ',' << (exact ? "exact" : "mc") << ','
        << fmt(est.value) << ',' << fmt(small.rhs) << ',' << small.applicable << ',' << small.pass
        << ',' << fmt(indep.rhs) << ',' << indep.applicable << ',' << indep.pass << '\n';
    return 0;
}

int cmd_walk_demo(int n, int k, const std::string& marked_spec, int lmax, const CommonOpts& common,
                  std::ostream& out) {
    auto space = walk_space_cached(JohnsonGraph(n, k), JohnsonGraph(n, k), common.walk_dim_cap);
    auto marked = parse_marked_spec(marked_spec, *space, common.seed);
    std::ostringstream echo;
    echo << "command=walk-demo n=" << n << " k=" << k << " marked=" << marked_spec
         << " lmax=" << lmax << " seed=" << common.seed;
    emit_header(out, echo.str());
    out << "ell,prob_one\n";
    out << "0," << fmt(0.0) << '\n';
    if (lmax >= 1) {
        auto curve = verify_once_success(*space, marked, lmax);
        for (int l = 1; l <= lmax; ++l) out << l << ',' << fmt(curve.per_ell[l - 1]) << '\n';
    }
    return 0;
}

int cmd_verify(int n, int m, const std::string& pattern_text, const std::string& domain_text,
               const std::string& mode_text, int trials, const CommonOpts& common,
               const std::string& file_a, const std::string& file_b, const std::string& file_c,
               std::ostream& out) {
    const DomainSpec domain = DomainSpec::parse(domain_text);
    const VerifyMode mode = mode_text == "exact" ? VerifyMode::exact_prob : VerifyMode::sampled;
    auto pattern = WrongPattern::parse(pattern_text);

    const bool from_files = !file_a.empty();
    DomainMatrix fa, fb, fc;
    if (from_files) {
        fa = read_matrix_file(file_a);
        fb = read_matrix_file(file_b);
        fc = read_matrix_file(file_c);
    }

    struct Row {
        Verdict verdict;
        int terminating_k;
        QueryLedger ledger;
    };
    std::vector<Row> rows(static_cast<size_t>(trials));
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t) {
        uint64_t s = derive_seed(common.seed, {static_cast<uint64_t>(t)});
        VerifyOutcome o;
        if (from_files) {
            o = product_verification_rect(fa, fb, fc, s, mode, common.walk_dim_cap);
        } else {
            auto inst = generate_instance(n, m, pattern, domain, s);
            o = product_verification_rect(inst.a, inst.b, inst.c, derive_seed(s, {1}), mode,
                                          common.walk_dim_cap);
        }
        rows[static_cast<size_t>(t)] = {o.verdict, o.terminating_k, o.ledger};
    }

    std::ostringstream echo;
    echo << "command=verify n=" << n << " m=" << m << " pattern=" << pattern.str()
         << " domain=" << domain.str() << " mode=" << mode_text << " trials=" << trials
         << " seed=" << common.seed;
    emit_header(out, echo.str());
    out << "trial,verdict,terminating_k,queries_a,queries_b,queries_c,time_units\n";
    bool any_detect = false;
    for (int t = 0; t < trials; ++t) {
        const auto& row = rows[static_cast<size_t>(t)];
        any_detect |= row.verdict == Verdict::not_equal;
        out << t << ',' << (row.verdict == Verdict::equal ? "equal" : "not_equal") << ','
            << row.terminating_k << ',' << row.ledger.queries_a << ',' << row.ledger.queries_b
            << ',' << row.ledger.queries_c << ',' << row.ledger.time_units << '\n';
    }
    return any_detect ? 1 : 0;
}

int cmd_multiply(int n, int m, const std::string& pattern_text, const std::string& domain_text,
                 bool boolean, const CommonOpts& common, const std::string& emit_c,
                 std::ostream& out) {
    auto pattern = WrongPattern::parse(pattern_text);
    nlohmann::json report;
    report["version"] = kVersion;
    report["config"] = {{"command", "multiply"}, {"n", n},       {"m", m},
                        {"pattern", pattern.str()}, {"domain", domain_text}, {"bool", boolean},
                        {"seed", common.seed}};
    if (boolean) {
        Rng rng(common.seed);
        BoolMatrix a = BoolMatrix::random(n, m, 0.3, rng);
        BoolMatrix b = BoolMatrix::random(m, n, 0.3, rng);
        auto rep = boolean_multiply(a, b, derive_seed(common.seed, {1}));
        report["cells_set"] = rep.cells_set;
        report["oracle_calls"] = rep.oracle_calls;
        report["model_time"] = rep.model_time;
        report["exact"] = rep.c == bool_mat_mul(a, b);
        if (!emit_c.empty()) {
            DomainMatrix cm(n, n, DomainSpec::integers());
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) cm.at(i, j) = rep.c.at(i, j);
            std::ofstream f(emit_c);
            write_matrix(f, cm);
        }
        out << report.dump(2) << '\n';
        return rep.c == bool_mat_mul(a, b) ? 0 : 1;
    }
    const DomainSpec domain = DomainSpec::parse(domain_text);
    auto pi = generate_product_instance(n, m, pattern, domain, common.seed);
    auto rep = matrix_multiplication(pi.a, pi.b, derive_seed(common.seed, {1}), common.walk_dim_cap,
                                     /*audit=*/true);
    report["iterations"] = rep.iterations;
    report["c_digest"] = matrix_digest(rep.c);
    report["accounting_mode"] = "sequential_sum";
    report["ledgers"] = {{"find_wrong", ledger_json(rep.find_wrong)},
                         {"find_wrong_parallel_max", ledger_json(rep.find_wrong_parallel)},
                         {"grover_rows", ledger_json(rep.grover_rows)},
                         {"grover_cols", ledger_json(rep.grover_cols)}};
    report["audit_passed"] = rep.audit_passed;
    nlohmann::json corrections = nlohmann::json::array();
    for (const auto& [r, c] : rep.corrections) corrections.push_back({r, c});
    report["corrections"] = corrections;
    if (!emit_c.empty()) {
        std::ofstream f(emit_c);
        write_matrix(f, rep.c);
    }
    out << report.dump(2) << '\n';
    return rep.audit_passed ? 0 : 1;
}

int cmd_suite(const std::string& name, const std::string& out_dir, int trials,
              const CommonOpts& common, std::ostream& out, std::ostream& err) {
    namespace ex = qmv::experiments;
    std::filesystem::create_directories(out_dir);
    auto open_table = [&](const std::string& file, const std::string& echo,
                          const std::string& header) {
        std::ofstream f(out_dir + "/" + file);
        emit_header(f, echo);
        f << header << '\n';
        return f;
    };
    std::ostringstream echo;
    echo << "command=suite name=" << name << " trials=" << trials << " seed=" << common.seed;
    bool pass = true;

    if (name == "gaps") {
        auto rows = ex::johnson_gap_grid(2, 12);
        auto f = open_table("gaps.csv", echo.str(), "n,k,formula_gap,eig_gap,abs_err");
        for (const auto& r : rows) {
            f << r.n << ',' << r.k << ',' << fmt(r.formula_gap) << ',' << fmt(r.eig_gap) << ','
              << fmt(r.abs_err) << '\n';
            pass &= r.abs_err <= 1e-9;
        }
        auto prows = ex::product_gap_grid(1000);
        auto g = open_table("product_gaps.csv", echo.str(),
                            "n,k,product_vertices,factor_gap,pairwise_gap,direct_gap,max_eig_diff,"
                            "equality_expected");
        for (const auto& r : prows) {
            g << r.n << ',' << r.k << ',' << r.product_vertices << ',' << fmt(r.factor_gap) << ','
              << fmt(r.pairwise_gap) << ',' << fmt(r.direct_gap) << ',' << fmt(r.max_eig_diff)
              << ',' << r.equality_expected << '\n';
            pass &= r.max_eig_diff <= 1e-8;
            if (r.equality_expected) pass &= std::fabs(r.pairwise_gap - r.factor_gap) <= 1e-9;
        }
    } else if (name == "fractions") {
        auto single = ex::epsilon_single_battery(8);
        auto f = open_table("fractions.csv", echo.str(), "check,detail,value,pass");
        f << "epsilon_single_rs_over_n2,checked=" << single.checked << ',' << single.failures
          << ',' << (single.failures == 0) << '\n';
        pass &= single.failures == 0;
        // exact vs Monte-Carlo agreement on a few random wrong sets
        Rng rng(common.seed);
        for (int n = 5; n <= 7; ++n) {
            auto w = wrong_set_from_cells(n, make_pattern_cells(n, WrongPattern::parse("random:4"), rng));
            auto e = epsilon_exact(w, 2, 2);
            auto mc = epsilon_mc(w, 2, 2, 20000, derive_seed(common.seed, {static_cast<uint64_t>(n)}));
            double sigma = std::sqrt(e.value * (1 - e.value) / 20000.0);
            bool ok = std::fabs(mc.value - e.value) <= 3 * sigma + 1e-12;
            f << "epsilon_mc_3sigma,n=" << n << ',' << fmt(mc.value - e.value) << ',' << ok << '\n';
            pass &= ok;
        }
    } else if (name == "lemma-checks") {
        auto f = open_table("lemma_checks.csv", echo.str(), "lemma,fixtures,failures,detail,pass");
        auto small = ex::small_set_battery(4, 8, common.seed);
        f << "small_set," << small.fixtures << ',' << small.failures << ",alpha2_bound,"
          << (small.failures == 0) << '\n';
        pass &= small.failures == 0 && small.fixtures >= 200;
        auto indep = ex::indep_set_battery({4, 9}, common.seed);
        f << "indep_set," << indep.fixtures << ',' << indep.failures << ",alpha2_bound,"
          << (indep.failures == 0) << '\n';
        pass &= indep.failures == 0;
        auto intdom = ex::int_dom_battery(common.seed);
        f << "int_dom," << intdom.pairs_checked << ',' << intdom.failures << ",equality_failures="
          << intdom.equality_failures << ',' << (intdom.failures == 0 && intdom.equality_failures == 0)
          << '\n';
        pass &= intdom.failures == 0 && intdom.equality_failures == 0;
        auto goodvec = ex::good_vec_battery(common.seed);
        f << "good_vec," << goodvec.fixtures << ',' << goodvec.failures
          << ",min_fraction=" << fmt(goodvec.min_fraction) << ',' << (goodvec.failures == 0) << '\n';
        pass &= goodvec.failures == 0;
        auto exp_prob = check_bound_exp_prob(6, 4, 2, 2, 2000, common.seed);
        f << "exp_prob,2000,0,mean=" << fmt(exp_prob.mean_epsilon) << ',' << exp_prob.pass << '\n';
        pass &= exp_prob.pass;
    } else if (name == "verify-detect") {
        auto f = open_table("verify_detect.csv", echo.str(),
                            "battery,domain,n,pattern,trials,detected,rate,worst_prob,pass");
        for (const auto& domain : {DomainSpec::gf(2), DomainSpec::gf(7), DomainSpec::integers()}) {
            auto one = ex::one_sided_battery(domain, 4, trials, common.seed);
            bool ok = one.equal_verdicts == one.runs && one.worst_prob <= kProbZeroTol;
            f << "one_sided," << one.domain << ",4,none," << one.runs << ','
              << (one.runs - one.equal_verdicts) << ",0," << fmt(one.worst_prob) << ',' << ok << '\n';
            pass &= ok;
        }
        for (const char* p : {"single", "row", "independent:2", "rectangle:2,2"}) {
            auto det = ex::detection_battery(6, 6, WrongPattern::parse(p), DomainSpec::gf(7), trials,
                                             common.seed, VerifyMode::sampled);
            bool ok = det.rate >= 2.0 / 3.0;
            f << "detection,gf:7,6," << det.pattern << ',' << det.trials << ',' << det.detected
              << ',' << fmt(det.rate) << ",0," << ok << '\n';
            pass &= ok;
        }
    } else if (name == "multiply-scaling") {
        auto rows = ex::scaling_report({6, 7, 8, 9}, trials, common.seed, common.walk_dim_cap);
        auto f = open_table("multiply_scaling.csv", echo.str(),
                            "n,pattern,q,trials,detected,mean_terminating_k");
        for (const auto& r : rows)
            f << r.n << ',' << r.pattern << ',' << fmt(r.q) << ',' << r.trials << ',' << r.detected
              << ',' << fmt(r.mean_terminating_k) << '\n';
        auto m = ex::multiply_battery(8, 8, 3, DomainSpec::gf(5), std::min(trials, 20), common.seed,
                                      common.walk_dim_cap);
        auto g = open_table("multiply_correctness.csv", echo.str(),
                            "n,m,w,runs,exact,audited_failures,iteration_violations");
        g << m.n << ',' << m.m << ',' << m.w << ',' << m.runs << ',' << m.exact << ','
          << m.audited_failures << ',' << m.iteration_violations << '\n';
        pass &= m.iteration_violations == 0 && m.exact == m.runs;
    } else if (name == "bool") {
        auto b = ex::bool_battery(8, 8, {1, 4, 16}, std::max(10, trials / 10), common.seed);
        auto f = open_table("bool.csv", echo.str(), "t,mean_model_time,runs,exact");
        std::vector<double> xs, ys;
        for (size_t i = 0; i < b.ts.size(); ++i) {
            f << b.ts[i] << ',' << fmt(b.mean_time_by_t[i]) << ',' << b.runs << ',' << b.exact << '\n';
            xs.push_back(std::sqrt(static_cast<double>(b.ts[i])));
            ys.push_back(b.mean_time_by_t[i]);
        }
        auto reg = ex::linear_regression(xs, ys);
        f << "# sqrt_t regression: slope=" << fmt(reg.slope) << " corr=" << fmt(reg.correlation)
          << '\n';
        pass &= b.exact == b.runs && reg.slope > 0 && reg.correlation >= 0.95;
    } else {
        err << "unknown suite '" << name
            << "' (expected gaps|fractions|lemma-checks|verify-detect|multiply-scaling|bool)\n";
        return 2;
    }
    out << "suite " << name << ": " << (pass ? "PASS" : "FAIL") << " (tables in " << out_dir
        << ")\n";
    return pass ? 0 : 1;
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{std::string(kVersion) + " - quantum walk matrix-product verification toolkit"};
    app.require_subcommand(1);

    CommonOpts common;
    std::string config_path;
    app.add_option("--config", config_path, "key=value config file (flags win)");

    // gap
    int g_n = 6, g_k = 2;
    bool g_product = false;
    auto* gap = app.add_subcommand("gap", "Johnson graph spectral gap: formula vs eigensolver");
    gap->add_option("--n", g_n, "universe size")->required();
    gap->add_option("--k", g_k, "subset size")->required();
    gap->add_flag("--product", g_product, "gap of J(n,k) x J(n,k) instead of the factor");

    // epsilon
    int e_n = 6, e_r = 2, e_s = 2;
    std::string e_pattern = "single";
    bool e_exact = false;
    uint64_t e_mc = 0;
    auto* epsilon = app.add_subcommand("epsilon", "fraction of marked pairs for a wrong-entry pattern");
    epsilon->add_option("--n", e_n)->required();
    epsilon->add_option("--pattern", e_pattern, "none|single|row|independent:t|random:t|rectangle:a,b");
    epsilon->add_option("--r", e_r)->required();
    epsilon->add_option("--s", e_s)->required();
    auto* exact_flag = epsilon->add_flag("--exact", e_exact, "exact enumeration");
    auto* mc_opt = epsilon->add_option("--mc", e_mc, "Monte-Carlo with this many trials");
    exact_flag->excludes(mc_opt);
    mc_opt->excludes(exact_flag);

    // walk-demo
    int w_n = 4, w_k = 2, w_lmax = 8;
    std::string w_marked = "first:1";
    auto* walk = app.add_subcommand("walk-demo", "per-ell success curve of the verification walk");
    walk->add_option("--n", w_n)->required();
    walk->add_option("--k", w_k)->required();
    walk->add_option("--marked", w_marked, "none|all|first:T|random:T");
    walk->add_option("--lmax", w_lmax);

    // verify
    int v_n = 6, v_m = 0, v_trials = 1;
    std::string v_pattern = "single", v_domain = "gf:7", v_mode = "sample";
    std::string v_file_a, v_file_b, v_file_c;
    auto* verify = app.add_subcommand("verify", "Product Verification trials");
    verify->add_option("--n", v_n);
    verify->add_option("--m", v_m, "inner dimension (default n)");
    verify->add_option("--pattern", v_pattern);
    verify->add_option("--domain", v_domain, "gf:p or int");
    verify->add_option("--mode", v_mode)->check(CLI::IsMember({"exact", "sample"}));
    verify->add_option("--trials", v_trials);
    verify->add_option("--matrix-a", v_file_a, "matrix file for A (overrides generation)");
    verify->add_option("--matrix-b", v_file_b);
    verify->add_option("--matrix-c", v_file_c);

    // multiply
    int m_n = 8, m_m = 8;
    std::string m_pattern = "random:3", m_domain = "gf:7", m_emit_c;
    bool m_bool = false;
    auto* multiply = app.add_subcommand("multiply", "output-sensitive matrix multiplication");
    multiply->add_option("--n", m_n);
    multiply->add_option("--m", m_m);
    multiply->add_option("--wrong-pattern", m_pattern, "support pattern of the true product");
    multiply->add_option("--domain", m_domain);
    multiply->add_flag("--bool", m_bool, "Boolean matrices and the two-level search cost model");
    multiply->add_option("--emit-c", m_emit_c, "write the computed C in matrix text format");

    // suite
    std::string s_name, s_out = "results";
    int s_trials = 50;
    auto* suite = app.add_subcommand("suite", "experiment batteries; writes CSV tables");
    suite->add_option("name", s_name, "gaps|fractions|lemma-checks|verify-detect|multiply-scaling|bool")
        ->required();
    suite->add_option("--out", s_out, "output directory");
    suite->add_option("--trials", s_trials, "trials per battery");

    for (auto* sub : {gap, epsilon, walk, verify, multiply, suite}) {
        sub->add_option("--seed", common.seed, "64-bit experiment seed");
        sub->add_option("--walk-dim-cap", common.walk_dim_cap, "|X|^2 cap for walk spaces");
        sub->add_option("--enum-cap", common.enum_cap, "enumeration cap for exact fractions");
    }

    try {
        // pre-scan for --config so its key=value pairs parse first (flags win
        // because CLI11 takes the last occurrence)
        std::vector<std::string> full;
        for (size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size()) {
                config_path = args[i + 1];
                ++i;
            } else {
                full.push_back(args[i]);
            }
        }
        if (!config_path.empty() && !full.empty()) {
            auto extra = config_file_args(config_path);
            full.insert(full.begin() + 1, extra.begin(), extra.end());
        }
        for (auto* sub : {gap, epsilon, walk, verify, multiply, suite})
            for (auto* opt : sub->get_options())
                opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

        std::vector<std::string> reversed(full.rbegin(), full.rend());
        app.parse(reversed); // CLI11 consumes reversed argv

        if (*gap) return cmd_gap(g_n, g_k, g_product, out);
        if (*epsilon) {
            if (!e_exact && e_mc == 0) e_exact = true; // default to exact
            return cmd_epsilon(e_n, e_pattern, e_r, e_s, e_exact, e_mc, common, out);
        }
        if (*walk) return cmd_walk_demo(w_n, w_k, w_marked, w_lmax, common, out);
        if (*verify)
            return cmd_verify(v_n, v_m > 0 ? v_m : v_n, v_pattern, v_domain, v_mode, v_trials,
                              common, v_file_a, v_file_b, v_file_c, out);
        if (*multiply) return cmd_multiply(m_n, m_m, m_pattern, m_domain, m_bool, common, m_emit_c, out);
        if (*suite) return cmd_suite(s_name, s_out, s_trials, common, out, err);
        return 2;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace qmv
