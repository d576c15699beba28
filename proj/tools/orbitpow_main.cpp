#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbitpow/abcdiag.hpp"
#include "orbitpow/cli_support.hpp"
#include "orbitpow/dynamics.hpp"
#include "orbitpow/exactnum.hpp"
#include "orbitpow/heights.hpp"
#include "orbitpow/powerrel.hpp"
#include "orbitpow/search.hpp"

namespace op = orbitpow;

namespace {

std::string fmt12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw op::InvalidInput("cannot write " + path);
    out << data;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw op::InvalidInput("missing input file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

op::SearchOptions search_opts(const op::RunConfig& cfg) {
    op::SearchOptions opts;
    opts.workers = cfg.workers;
    opts.max_bits = cfg.bit_budget;
    opts.eps = cfg.eps;
    return opts;
}

void emit_search_report(const op::RunConfig& cfg, const op::SearchReport& rep, double wall_s) {
    if (!rep.precondition_warning.empty())
        std::cerr << "warning: " << rep.precondition_warning << "\n";
    if (cfg.out_dir.empty()) {
        std::cout << rep.json_lines();
        std::cerr << rep.kind << "-search bound=" << rep.bound << " hits=" << rep.hits.size()
                  << " nontrivial=" << rep.nontrivial_count() << " skipped=" << rep.skipped << "\n";
        return;
    }
    std::filesystem::create_directories(cfg.out_dir);
    const std::string hits_path = cfg.out_dir + "/hits.jsonl";
    const std::string curve_path = cfg.out_dir + "/stabilization.csv";
    const std::string manifest_path = cfg.out_dir + "/manifest.json";
    write_file(hits_path, rep.json_lines());
    write_file(curve_path, rep.stabilization_csv());
    write_file(manifest_path, op::manifest_json(cfg, wall_s, {hits_path, curve_path}));
    std::cout << rep.kind << "-search bound=" << rep.bound << " hits=" << rep.hits.size()
              << " nontrivial=" << rep.nontrivial_count() << " skipped=" << rep.skipped
              << " out=" << cfg.out_dir << "\n";
}

int run_command(const op::RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    auto wall = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    if (cfg.command == "height") {
        op::Rat alpha = op::parse_rational(cfg.alpha);
        std::cout << "h(" << op::to_string(alpha) << ") = " << fmt12(op::naive_height(alpha)) << "\n";
        if (!cfg.poly.empty()) {
            op::Poly f = op::parse_poly(cfg.poly);
            auto est = op::canonical_height(f, alpha, cfg.tol);
            std::cout << "hhat(" << op::to_string(alpha) << ") = " << fmt12(est.value) << " +/- "
                      << fmt12(est.error) << " (orbit depth " << est.steps << ")\n";
        }
        return 0;
    }
    if (cfg.command == "orbit") {
        op::Poly f = op::parse_poly(cfg.poly);
        op::Rat v = op::parse_rational(cfg.alpha);
        for (long i = 0; i <= cfg.n_max; ++i) {
            std::cout << i << "\t" << op::to_string(v) << "\th=" << fmt12(op::naive_height(v)) << "\n";
            if (i < cfg.n_max) v = op::iterate_eval(f, v, 1, cfg.bit_budget);
        }
        return 0;
    }
    if (cfg.command == "classify-zero") {
        op::Poly f = op::parse_poly(cfg.poly);
        auto cls = op::classify_zero(f, cfg.bit_budget);
        std::cout << "kind = " << op::to_string(cls.kind) << "\n";
        if (cls.kind != op::OrbitKind::Wandering) {
            std::cout << "tail =";
            for (const auto& t : cls.tail) std::cout << " " << op::to_string(t);
            std::cout << "\n";
        } else {
            std::cout << "witness_height = " << fmt12(cls.witness_height) << " after " << cls.steps
                      << " steps\n";
        }
        return 0;
    }
    if (cfg.command == "check-conditions") {
        op::Poly f = op::parse_poly(cfg.poly);
        op::TheoremId which;
        if (cfg.variant == "U") which = op::TheoremId::UFiniteness;
        else if (cfg.variant == "Vm") which = op::TheoremId::VmFiniteness;
        else if (cfg.variant == "V0") which = op::TheoremId::V0Finiteness;
        else if (cfg.variant == "abc") which = op::TheoremId::AbcConditional;
        else throw op::InvalidInput("--theorem must be U, Vm, V0 or abc");
        auto rep = op::precondition_report(f, which, cfg.m);
        std::cout << "degree_ok = " << (rep.degree_ok ? "yes" : "no") << "\n";
        std::cout << "simple_roots_ok = " << (rep.simple_roots_ok ? "yes" : "no") << "\n";
        std::cout << "zero_condition (" << rep.zero_condition_kind << ") = "
                  << (rep.zero_condition_ok ? "yes" : "no") << "\n";
        std::cout << "details: " << rep.details << "\n";
        std::cout << (rep.all_ok() ? "PASS" : "FAIL") << "\n";
        return 0;
    }
    if (cfg.command == "reduction") {
        op::Poly f = op::parse_poly(cfg.poly);
        op::PrimeSet s = op::PrimeSet::parse(cfg.s);
        std::cout << "bad_reduction_primes = {" << op::bad_reduction_primes(f).str() << "}\n";
        std::cout << "S_f = {" << op::s_f(f, s).str() << "}\n";
        return 0;
    }
    if (cfg.command == "power-test") {
        op::Rat beta = op::parse_rational(cfg.beta);
        op::PrimeSet s = op::PrimeSet::parse(cfg.s);
        auto reps = op::power_representations(beta, s);
        if (reps.empty()) {
            std::cout << "no power representation\n";
            return 0;
        }
        for (const auto& w : reps)
            std::cout << "ell = " << w.ell << ", a = " << op::to_string(w.base) << "\n";
        return 0;
    }
    if (cfg.command == "search-u") {
        op::Poly f = op::parse_poly(cfg.poly);
        auto rep = op::search_u(f, op::PrimeSet::parse(cfg.s), cfg.bound, search_opts(cfg));
        emit_search_report(cfg, rep, wall());
        return 0;
    }
    if (cfg.command == "search-v") {
        op::Poly f = op::parse_poly(cfg.poly);
        auto rep = op::search_v(f, op::PrimeSet::parse(cfg.s), cfg.bound, cfg.m, search_opts(cfg));
        emit_search_report(cfg, rep, wall());
        return 0;
    }
    if (cfg.command == "search-tilde-v") {
        op::Poly f = op::parse_poly(cfg.poly);
        auto rep = op::search_tilde_v(f, op::PrimeSet::parse(cfg.s), cfg.bound, cfg.n_max,
                                      cfg.k_max, search_opts(cfg));
        emit_search_report(cfg, rep, wall());
        return 0;
    }
    if (cfg.command == "pell-family") {
        op::PellVariant variant;
        if (cfg.variant == "U") variant = op::PellVariant::UFamily;
        else if (cfg.variant == "V") variant = op::PellVariant::VFamily;
        else throw op::InvalidInput("--variant must be U or V");
        op::Poly g = cfg.poly.empty() ? op::Poly::constant(op::Rat(1)) : op::parse_poly(cfg.poly);
        auto fam = op::pell_family(cfg.count, variant, g);
        for (const auto& [pair, hit] : fam) {
            nlohmann::json j;
            j["r"] = op::to_string(pair.r);
            j["s"] = op::to_string(pair.s);
            j["kind"] = op::to_string(hit.kind);
            j["alpha"] = op::to_string(hit.alpha);
            j["ell"] = hit.witness.ell;
            j["a"] = op::to_string(hit.witness.base);
            j["verified"] = true;
            std::cout << j.dump() << "\n";
        }
        return 0;
    }
    if (cfg.command == "abc-quality") {
        op::Int a(cfg.alpha.empty() ? "0" : cfg.alpha);
        op::Int b(cfg.beta.empty() ? "0" : cfg.beta);
        op::Int c(cfg.poly.empty() ? "0" : cfg.poly);
        op::AbcTriple t(a, b, c);
        std::cout << "quality = " << fmt12(op::abc_quality(t)) << "\n";
        return 0;
    }
    if (cfg.command == "granville-scan") {
        op::Poly f = op::parse_poly(cfg.poly);
        auto scan = op::granville_scan(f, op::PrimeSet::parse(cfg.s), cfg.bound, cfg.eps,
                                       cfg.degree_shift, cfg.workers);
        if (cfg.out_dir.empty()) {
            std::cout << scan.csv();
            std::cerr << "scanned=" << scan.scanned << " max_gap=" << fmt12(scan.max_gap) << "\n";
        } else {
            std::filesystem::create_directories(cfg.out_dir);
            const std::string csv_path = cfg.out_dir + "/granville.csv";
            write_file(csv_path, scan.csv());
            write_file(cfg.out_dir + "/manifest.json", op::manifest_json(cfg, wall(), {csv_path}));
            std::cout << "scanned=" << scan.scanned << " max_gap=" << fmt12(scan.max_gap)
                      << " out=" << cfg.out_dir << "\n";
        }
        return 0;
    }
    if (cfg.command == "conductor-check") {
        op::Poly f = op::parse_poly(cfg.poly);
        op::PrimeSet s = op::PrimeSet::parse(cfg.s);
        op::Rat alpha = op::parse_rational(cfg.alpha);
        auto hit = op::v_membership(f, s, alpha, cfg.n_max, cfg.bit_budget);
        if (!hit) {
            std::cout << "no V-hit for alpha = " << op::to_string(alpha) << " with n <= " << cfg.n_max
                      << "\n";
            return 0;
        }
        nlohmann::json j;
        j["alpha"] = op::to_string(hit->alpha);
        j["n"] = hit->n;
        j["ell"] = hit->witness.ell;
        j["a"] = op::to_string(hit->witness.base);
        j["trivial"] = hit->trivial;
        if (!hit->trivial && hit->witness.ell >= 2) {
            auto rd = op::conductor_reading(f, s, *hit, cfg.eps);
            j["diagnostics"] = {{"radical_sum", rd.radical_sum},
                                {"rhs_chain", rd.rhs_chain},
                                {"rhs_bound", rd.rhs_bound},
                                {"granville_lhs", rd.granville_lhs},
                                {"eps", rd.eps},
                                {"chain_ok", rd.chain_ok},
                                {"bound_ok", rd.bound_ok}};
        }
        std::cout << j.dump() << "\n";
        return 0;
    }
    if (cfg.command == "plot") {
        // cfg.alpha carries the input path, cfg.out_dir the output path
        std::string text = read_file(cfg.alpha);
        auto rows = op::load_csv_numeric(text);
        op::PlotSeries series;
        std::string svg;
        if (cfg.variant == "stabilization") {
            for (const auto& r : rows)
                if (r.size() >= 2) series.points.emplace_back(r[0], r[1]);
            svg = op::svg_step_plot(series, "cumulative nontrivial hits", "bound", "hits");
        } else if (cfg.variant == "granville") {
            for (const auto& r : rows)
                if (r.size() >= 5) series.points.emplace_back(r[1], r[4]);
            svg = op::svg_scatter_with_envelope(series, "inequality gap envelope", "h(alpha)", "gap");
        } else {
            throw op::InvalidInput("--kind must be stabilization or granville");
        }
        if (series.points.empty()) std::cerr << "warning: empty report, writing empty plot\n";
        write_file(cfg.out_dir, svg);
        std::cout << "wrote " << cfg.out_dir << "\n";
        return 0;
    }
    throw op::InvalidInput("unknown command " + cfg.command);
}

}  // namespace

int main(int argc, char** argv) {
    op::RunConfig cfg;
    // --config seeds defaults; explicit flags override below
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") cfg = op::load_config_file(argv[i + 1]);

    CLI::App app{"exact search and diagnostics for perfect powers in polynomial orbits over Q"};
    app.require_subcommand(0, 1);
    std::string config_path;
    bool dump_config = false;
    app.add_option("--config", config_path, "seed options from a canonical TOML config");
    app.add_flag("--dump-config", dump_config, "print the canonical TOML for this run and exit");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--bits", cfg.bit_budget, "orbit bit budget");
        sub->add_option("--workers", cfg.workers, "worker threads (0: env/hardware)");
    };

    auto* c_height = app.add_subcommand("height", "naive and canonical heights");
    c_height->add_option("--alpha", cfg.alpha, "rational point")->required();
    c_height->add_option("--poly", cfg.poly, "polynomial (enables canonical height)");
    c_height->add_option("--tol", cfg.tol, "canonical height tolerance");

    auto* c_orbit = app.add_subcommand("orbit", "print an exact orbit prefix");
    c_orbit->add_option("--poly", cfg.poly)->required();
    c_orbit->add_option("--alpha", cfg.alpha)->required();
    c_orbit->add_option("--steps", cfg.n_max, "iterations to print");
    add_common(c_orbit);

    auto* c_cz = app.add_subcommand("classify-zero", "orbit type of 0 with certificate");
    c_cz->add_option("--poly", cfg.poly)->required();
    add_common(c_cz);

    auto* c_cc = app.add_subcommand("check-conditions", "evaluate theorem hypotheses");
    c_cc->add_option("--poly", cfg.poly)->required();
    c_cc->add_option("--theorem", cfg.variant, "U, Vm, V0 or abc")->required();
    c_cc->add_option("--m", cfg.m, "m for the Vm hypothesis");

    auto* c_red = app.add_subcommand("reduction", "bad-reduction primes and S_f");
    c_red->add_option("--poly", cfg.poly)->required();
    c_red->add_option("--s", cfg.s, "comma-separated primes");

    auto* c_pw = app.add_subcommand("power-test", "power representations of a rational");
    c_pw->add_option("--beta", cfg.beta)->required();
    c_pw->add_option("--s", cfg.s);

    auto* c_su = app.add_subcommand("search-u", "exhaustive U-set search up to a height bound");
    c_su->add_option("--poly", cfg.poly)->required();
    c_su->add_option("--s", cfg.s);
    c_su->add_option("--bound", cfg.bound)->required();
    c_su->add_option("--out", cfg.out_dir, "output directory (default: hits to stdout)");
    add_common(c_su);

    auto* c_sv = app.add_subcommand("search-v", "exhaustive V_m-set search");
    c_sv->add_option("--poly", cfg.poly)->required();
    c_sv->add_option("--s", cfg.s);
    c_sv->add_option("--bound", cfg.bound)->required();
    c_sv->add_option("--m", cfg.m, "max iterate n");
    c_sv->add_option("--eps", cfg.eps, "eps for hit diagnostics");
    c_sv->add_option("--out", cfg.out_dir);
    add_common(c_sv);

    auto* c_st = app.add_subcommand("search-tilde-v", "search over orbit-ratio grid (n, k)");
    c_st->add_option("--poly", cfg.poly)->required();
    c_st->add_option("--s", cfg.s);
    c_st->add_option("--bound", cfg.bound)->required();
    c_st->add_option("--n-max", cfg.n_max);
    c_st->add_option("--k-max", cfg.k_max);
    c_st->add_option("--eps", cfg.eps);
    c_st->add_option("--out", cfg.out_dir);
    add_common(c_st);

    auto* c_pell = app.add_subcommand("pell-family", "verified infinite-family hits");
    c_pell->add_option("--count", cfg.count)->required();
    c_pell->add_option("--variant", cfg.variant, "U or V");
    c_pell->add_option("--g", cfg.poly, "g for the U family (default 1)");

    auto* c_abc = app.add_subcommand("abc-quality", "quality of an abc triple");
    c_abc->add_option("--a", cfg.alpha)->required();
    c_abc->add_option("--b", cfg.beta)->required();
    c_abc->add_option("--c", cfg.poly)->required();

    auto* c_gs = app.add_subcommand("granville-scan", "inequality gap envelope scan");
    c_gs->add_option("--poly", cfg.poly)->required();
    c_gs->add_option("--s", cfg.s);
    c_gs->add_option("--bound", cfg.bound)->required();
    c_gs->add_option("--eps", cfg.eps);
    c_gs->add_option("--degree-shift", cfg.degree_shift, "1 for d-1-eps, 2 for d-2-eps");
    c_gs->add_option("--out", cfg.out_dir);
    add_common(c_gs);

    auto* c_cond = app.add_subcommand("conductor-check", "conductor reading for one point");
    c_cond->add_option("--poly", cfg.poly)->required();
    c_cond->add_option("--s", cfg.s);
    c_cond->add_option("--alpha", cfg.alpha)->required();
    c_cond->add_option("--n-max", cfg.n_max);
    c_cond->add_option("--eps", cfg.eps);
    add_common(c_cond);

    auto* c_plot = app.add_subcommand("plot", "render a report CSV to SVG");
    c_plot->add_option("--input", cfg.alpha)->required();
    c_plot->add_option("--output", cfg.out_dir)->required();
    c_plot->add_option("--kind", cfg.variant, "stabilization or granville");

    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.command == "plot" && cfg.variant == "V") cfg.variant = "stabilization";

    if (dump_config) {
        std::cout << op::to_toml(cfg);
        return 0;
    }

    try {
        return run_command(cfg);
    } catch (const op::BitsizeExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const op::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
