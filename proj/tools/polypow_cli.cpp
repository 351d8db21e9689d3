// polypow: recovery and identity testing of a hidden monic polynomial over
// F_p given black-box access to x -> f(x)^e, plus an experiment harness.
//
// Subcommands: serve-oracle, idtest, interpolate, experiment, bench.
// One JSON document per run on stdout; human-readable notes on stderr.
// Exit codes: 0 success, 1 algorithmic failure, 2 usage error.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polypow/ff.hpp"
#include "polypow/group.hpp"
#include "polypow/idtest.hpp"
#include "polypow/interp.hpp"
#include "polypow/oracle.hpp"
#include "polypow/poly.hpp"
#include "polypow/stats.hpp"
#include "polypow/wire.hpp"

using namespace polypow;
using nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AlgorithmFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "[4,3]" -> low-to-high coefficient list (implicit leading 1)
MonicPoly parse_poly(const std::string& s, const FieldCtx& ctx) {
    std::string t;
    for (char c : s)
        if (!std::isspace((unsigned char)c)) t += c;
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw UsageError("polynomial must look like \"[c0,c1,...]\"");
    MonicPoly f;
    std::string body = t.substr(1, t.size() - 2);
    if (body.empty()) return f;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        auto comma = body.find(',', pos);
        std::string tok = body.substr(pos, comma == std::string::npos ? comma : comma - pos);
        auto v = wire::parse_decimal(tok);
        if (!v) throw UsageError("bad coefficient '" + tok + "'");
        f.low.push_back(ctx.from_uint(*v).v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return f;
}

ordered_json poly_json(const MonicPoly& f) {
    return {{"degree", f.degree()}, {"coeffs", f.low}};
}

std::string verdict_name(const TestVerdict& v) {
    switch (v.outcome) {
        case TestVerdict::Outcome::Different: return "different";
        case TestVerdict::Outcome::Undistinguished: return "undistinguished";
        case TestVerdict::Outcome::EqualWithConfidence: return "equal_with_confidence";
    }
    return "?";
}

ReportFormat parse_format(const std::string& fmt) {
    if (fmt == "json") return ReportFormat::Json;
    if (fmt == "csv") return ReportFormat::Csv;
    throw UsageError("format must be json or csv");
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

struct OracleSource {
    std::string hidden_coeffs;  // local mode
    std::string remote_addr;    // remote mode

    std::unique_ptr<PowerOracle> open(const FieldCtx& ctx) const {
        const bool local = !hidden_coeffs.empty();
        const bool remote = !remote_addr.empty();
        if (local == remote)
            throw UsageError("exactly one oracle source required (--hidden or --oracle)");
        if (local) return std::make_unique<LocalOracle>(parse_poly(hidden_coeffs, ctx), ctx);
        return std::make_unique<RemoteOracle>(remote_addr, ctx);
    }
};

int run_serve(u64 p, u64 e, const std::string& poly, const std::string& listen, bool use_stdio) {
    FieldCtx ctx(p, e);
    LocalOracle oracle(parse_poly(poly, ctx), ctx);
    if (use_stdio == !listen.empty())
        throw UsageError("choose exactly one of --listen ADDR or --stdio");
    if (use_stdio)
        serve_stdio(oracle);
    else
        serve_tcp(oracle, listen);
    return 0;
}

int run_interpolate(u64 p, u64 e, u64 d, const std::string& mode, double epsilon, u64 seed,
                    double t_factor, const OracleSource& src) {
    FieldCtx ctx(p, e);
    auto oracle = src.open(ctx);
    auto t0 = std::chrono::steady_clock::now();

    ordered_json out{{"subcommand", "interpolate"}, {"p", p},     {"e", e},
                     {"d", d},                      {"mode", mode}, {"epsilon", epsilon},
                     {"seed", seed}};
    if (mode == "naive") {
        MonicPoly f = naive_interpolate(*oracle, d);
        out["candidate"] = poly_json(f);
        out["queries"] = oracle->query_count();
        out["verified"] = true;
    } else if (mode == "randomized") {
        InterpConfig cfg{.d = d, .epsilon = epsilon, .t_factor = t_factor, .seed = seed};
        InterpResult r = randomized_interpolate(*oracle, cfg);
        out["candidate"] = poly_json(r.candidate);
        out["rounds"] = r.rounds_used;
        out["queries"] = r.queries_used;
        out["skipped_roots"] = r.skipped_roots;
        out["verified"] = r.verified;
    } else {
        throw UsageError("mode must be naive or randomized");
    }
    out["wall_ms"] = elapsed_ms(t0);
    std::cout << out.dump() << "\n";
    std::cerr << "recovered candidate of degree " << d << " in " << oracle->query_count()
              << " queries\n";
    return 0;
}

int run_idtest(u64 p, u64 e, u64 d, const std::string& mode, std::optional<u64> h_opt,
               std::optional<double> delta, std::optional<double> epsilon, double c_d,
               u64 trials, u64 seed, const std::string& g_coeffs, const OracleSource& src_f,
               const OracleSource& src_g) {
    FieldCtx ctx(p, e);
    ordered_json out{{"subcommand", "idtest"}, {"p", p}, {"e", e}, {"d", d},
                     {"mode", mode},           {"seed", seed}};

    u64 h = 0;
    if (h_opt) {
        h = *h_opt;
        out["budget"] = {{"source", "explicit"}, {"h", h}};
    } else if (delta) {
        SmallEBudget b = small_e_budget(e, d, *delta, c_d);
        h = b.h;
        out["budget"] = {{"source", "small_e"}, {"nu", b.nu},    {"h", b.h},
                         {"delta", b.delta},    {"c_d", b.c_d}};
    } else if (epsilon) {
        MediumEBudget b = medium_e_budget(e, d, *epsilon);
        h = b.h;
        out["budget"] = {{"source", "medium_e"},   {"h", b.h},     {"eta", b.eta},
                         {"kappa", b.kappa},       {"tau", b.tau}, {"rho", b.rho},
                         {"vartheta", b.vartheta}, {"epsilon", b.epsilon},
                         {"applicable", b.applicable_for(p)}};
    } else if (mode != "random") {
        throw UsageError("provide --h, --delta, or --epsilon to fix the query budget");
    }

    auto of = src_f.open(ctx);
    TestVerdict v{};
    std::vector<u64> queries;
    if (mode == "prefix") {
        auto og = src_g.open(ctx);
        v = prefix_test(*of, *og, h);
        queries = {of->query_count(), og->query_count()};
    } else if (mode == "known-g") {
        if (g_coeffs.empty()) throw UsageError("known-g mode needs --g COEFFS");
        v = known_g_test(*of, parse_poly(g_coeffs, ctx), h);
        queries = {of->query_count()};
    } else if (mode == "random") {
        auto og = src_g.open(ctx);
        Rng rng(seed);
        v = randomized_test(*of, *og, trials == 0 ? 32 : trials, rng);
        queries = {of->query_count(), og->query_count()};
    } else {
        throw UsageError("mode must be prefix, random, or known-g");
    }

    out["verdict"] = verdict_name(v);
    if (v.outcome == TestVerdict::Outcome::Different) out["witness"] = v.witness;
    if (v.outcome == TestVerdict::Outcome::EqualWithConfidence) out["trials"] = v.trials;
    out["queries"] = queries;
    std::cout << out.dump() << "\n";
    std::cerr << "verdict: " << verdict_name(v) << "\n";
    return 0;
}

int run_experiment(const std::string& kind, u64 p, u64 e, u64 d, const std::string& f_coeffs,
                   const std::string& g_coeffs, u64 h, u64 nu, u64 trials, u64 seed,
                   const std::string& fmt_name) {
    FieldCtx ctx(p, e);
    ReportFormat fmt = parse_format(fmt_name);
    Rng rng(seed);

    std::vector<std::pair<MonicPoly, MonicPoly>> pairs;
    if (!f_coeffs.empty() || !g_coeffs.empty()) {
        if (f_coeffs.empty() || g_coeffs.empty())
            throw UsageError("provide both --f and --g, or neither (with --trials)");
        pairs.emplace_back(parse_poly(f_coeffs, ctx), parse_poly(g_coeffs, ctx));
    } else {
        u64 n = trials == 0 ? 1 : trials;
        for (u64 i = 0; i < n; ++i)
            pairs.emplace_back(random_monic(d, ctx, rng), random_monic(d, ctx, rng));
    }

    bool csv_header_done = false;
    ordered_json arr = ordered_json::array();
    for (const auto& [f, g] : pairs) {
        std::string text;
        if (kind == "coincidence") {
            text = emit_report(coincidence_count(f, g, ctx), fmt);
        } else if (kind == "fraction") {
            CoincidenceReport c = coincidence_count(f, g, ctx);
            ordered_json j{{"kind", "fraction"},
                           {"p", p},
                           {"e", e},
                           {"d", std::max<u64>({f.degree(), g.degree(), 1})},
                           {"fraction", (double)(c.p - c.count) / (double)c.p}};
            text = fmt == ReportFormat::Json ? j.dump()
                                             : "kind,p,e,d,fraction\nfraction," +
                                                   std::to_string(p) + "," + std::to_string(e) +
                                                   "," + std::to_string(d) + "," +
                                                   std::to_string((double)(c.p - c.count) /
                                                                  (double)c.p);
        } else if (kind == "equiv") {
            ordered_json j{{"kind", "equiv"},
                           {"p", p},
                           {"e", e},
                           {"equivalent", equiv_bruteforce(f, g, ctx)}};
            text = fmt == ReportFormat::Json
                       ? j.dump()
                       : "kind,p,e,equivalent\nequiv," + std::to_string(p) + "," +
                             std::to_string(e) + "," +
                             (equiv_bruteforce(f, g, ctx) ? "true" : "false");
        } else if (kind == "product-set") {
            if (h == 0) throw UsageError("product-set needs --h");
            text = emit_report(product_set_size(f, g, h, nu, ctx), fmt);
        } else {
            throw UsageError("experiment kind must be coincidence|fraction|equiv|product-set");
        }

        if (fmt == ReportFormat::Json) {
            arr.push_back(ordered_json::parse(text));
        } else {
            auto nl = text.find('\n');
            if (!csv_header_done) {
                std::cout << text.substr(0, nl) << "\n";
                csv_header_done = true;
            }
            std::cout << text.substr(nl + 1) << "\n";
        }
    }
    if (fmt == ReportFormat::Json) {
        ordered_json out{{"subcommand", "experiment"}, {"kind", kind}, {"seed", seed},
                         {"reports", arr}};
        std::cout << out.dump() << "\n";
    }
    return 0;
}

int run_bench(u64 p, const std::vector<u64>& es, const std::vector<u64>& ds, u64 seed,
              double epsilon) {
    std::cout << "p,e,d,search_space,seed,queries,rounds,skipped_roots,verified\n";
    u64 cell = 0;
    for (u64 e : es) {
        for (u64 d : ds) {
            FieldCtx ctx(p, e);
            Rng rng(seed + cell);
            MonicPoly hidden = random_monic(d, ctx, rng);
            LocalOracle oracle(hidden, ctx);
            InterpConfig cfg{.d = d, .epsilon = epsilon, .seed = seed + cell};
            u128 space = 1;
            for (u64 i = 0; i < d; ++i) space *= e;
            InterpResult r = randomized_interpolate(oracle, cfg);
            std::cout << p << "," << e << "," << d << "," << (u64)space << "," << (seed + cell)
                      << "," << r.queries_used << "," << r.rounds_used << ","
                      << r.skipped_roots << "," << (r.verified ? "true" : "false") << "\n";
            ++cell;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hidden-polynomial power oracle toolkit"};
    app.require_subcommand(1);

    const char* env_fmt = std::getenv("POLYPOW_FORMAT");
    std::string default_fmt = env_fmt ? env_fmt : "json";

    u64 p = 0, e = 1, d = 1, nu = 1, h = 0, trials = 0, seed = 0;
    double delta_v = 0, epsilon_v = 0, c_d = 0.4, t_factor = 2.0;
    std::optional<u64> h_opt;
    std::optional<double> delta_opt, epsilon_opt;
    std::string mode, poly, listen, g_coeffs, f_coeffs, fmt = default_fmt;
    OracleSource src_f, src_g;
    bool use_stdio = false;

    auto* serve = app.add_subcommand("serve-oracle", "serve a hidden polynomial oracle");
    serve->add_option("--p", p, "prime modulus")->required();
    serve->add_option("--e", e, "power exponent, e | p-1")->required();
    serve->add_option("--poly", poly, "hidden monic polynomial \"[c0,c1,...]\"")->required();
    serve->add_option("--listen", listen, "listen address host:port");
    serve->add_flag("--stdio", use_stdio, "serve a single session on stdin/stdout");

    auto* id = app.add_subcommand("idtest", "identity testing from powers");
    id->set_help_flag("--help", "print help");  // frees -h for the --h budget flag
    id->add_option("--p", p)->required();
    id->add_option("--e", e)->required();
    id->add_option("--d", d, "degree of the hidden polynomials");
    id->add_option("--mode", mode, "prefix|random|known-g")->required();
    auto* ho = id->add_option("--h", h, "explicit prefix budget");
    auto* dlo = id->add_option("--delta", delta_v, "small-e budget parameter");
    auto* epo = id->add_option("--epsilon", epsilon_v, "medium-e budget parameter");
    id->add_option("--c-d", c_d, "small-e constant c(d), exploration default 0.4");
    id->add_option("--g", g_coeffs, "known polynomial for known-g mode");
    id->add_option("--f-hidden", src_f.hidden_coeffs, "local hidden f");
    id->add_option("--g-hidden", src_g.hidden_coeffs, "local hidden g");
    std::vector<std::string> oracle_addrs;
    id->add_option("--oracle", oracle_addrs, "remote oracle address(es)")->expected(1, 2);
    id->add_option("--trials", trials, "trials for random mode");
    id->add_option("--seed", seed, "rng seed");

    auto* interp = app.add_subcommand("interpolate", "recover the hidden polynomial");
    interp->add_option("--p", p)->required();
    interp->add_option("--e", e)->required();
    interp->add_option("--d", d)->required();
    interp->add_option("--epsilon", epsilon_v, "failure probability")->capture_default_str();
    interp->add_option("--seed", seed, "rng seed");
    interp->add_option("--t-factor", t_factor, "test-set size multiplier");
    interp->add_option("--mode", mode, "naive|randomized")->default_val("randomized");
    interp->add_option("--hidden", src_f.hidden_coeffs, "local hidden polynomial");
    interp->add_option("--oracle", src_f.remote_addr, "remote oracle address");

    auto* exp = app.add_subcommand("experiment", "empirical validation scans");
    exp->set_help_flag("--help", "print help");
    std::string exp_kind;
    exp->add_option("kind", exp_kind, "coincidence|fraction|equiv|product-set")->required();
    exp->add_option("--p", p)->required();
    exp->add_option("--e", e)->required();
    exp->add_option("--d", d);
    exp->add_option("--f", f_coeffs, "first polynomial");
    exp->add_option("--g", g_coeffs, "second polynomial");
    exp->add_option("--h", h, "product-set prefix length");
    exp->add_option("--nu", nu, "product-set fold count");
    exp->add_option("--trials", trials, "random pairs when --f/--g absent");
    exp->add_option("--seed", seed);
    exp->add_option("--format", fmt, "json|csv");

    auto* bench = app.add_subcommand("bench", "query-count grid over (e, d)");
    std::vector<u64> bench_es{3}, bench_ds{1};
    bench->add_option("--p", p)->required();
    bench->add_option("--e", bench_es, "exponent grid");
    bench->add_option("--d", bench_ds, "degree grid");
    bench->add_option("--seed", seed);
    bench->add_option("--epsilon", epsilon_v)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        app.exit(ex);
        return 2;
    }

    if (*ho) h_opt = h;
    if (*dlo) delta_opt = delta_v;
    if (*epo) epsilon_opt = epsilon_v;
    if (epsilon_v == 0) epsilon_v = 0.01;
    if (oracle_addrs.size() >= 1) src_f.remote_addr = oracle_addrs[0];
    if (oracle_addrs.size() >= 2) src_g.remote_addr = oracle_addrs[1];

    try {
        if (*serve) return run_serve(p, e, poly, listen, use_stdio);
        if (*id)
            return run_idtest(p, e, d, mode, h_opt, delta_opt, epsilon_opt, c_d, trials, seed,
                              g_coeffs, src_f, src_g);
        if (*interp)
            return run_interpolate(p, e, d, mode, epsilon_v, seed, t_factor, src_f);
        if (*exp) return run_experiment(exp_kind, p, e, d, f_coeffs, g_coeffs, h, nu, trials,
                                        seed, fmt);
        if (*bench) return run_bench(p, bench_es, bench_ds, seed, epsilon_v);
    } catch (const UsageError& ex) {
        std::cerr << "usage error: " << ex.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "usage error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        ordered_json err{{"error", ex.what()}};
        std::cout << err.dump() << "\n";
        std::cerr << "failure: " << ex.what() << "\n";
        return 1;
    }
    return 2;
}
