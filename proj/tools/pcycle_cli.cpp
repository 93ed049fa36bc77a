#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pcycle/io.hpp"
#include "pcycle/oracle.hpp"
#include "pcycle/phase2.hpp"
#include "pcycle/solver.hpp"

namespace {

using namespace pcycle;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kInputError = 2;

int phases_from_flag(const std::string& s) {
    if (s == "1") return 1;
    if (s == "12") return 2;
    if (s == "123") return 3;
    throw InvalidArgument("--phases must be 1, 12 or 123");
}

void print_trace(const Trace& t, const std::string& mode) {
    if (mode == "off") return;
    for (const auto& e : t.events()) std::cout << (mode == "json" ? event_to_json(e) : event_to_text(e)) << "\n";
}

struct SolveArgs {
    std::string file;
    std::string phases = "123";
    std::string trace = "off";
    std::uint64_t seed = 0;
    int restarts = 1;
    bool keep_equal = false;
    std::optional<Cost> budget_cap;
    bool timings = false;
    std::string json_out;
};

int run_solve(const SolveArgs& a) {
    const CostMatrix m = load_matrix(a.file);
    SolveOptions opts;
    opts.phases = phases_from_flag(a.phases);
    opts.seed = a.seed;
    opts.restarts = a.restarts;
    opts.keep_equal_paths = a.keep_equal;
    opts.budget_cap = a.budget_cap;
    opts.timings = a.timings;
    Trace trace;
    const SolveReport rep = solve(m, opts, a.trace == "off" ? nullptr : &trace);
    print_trace(trace, a.trace);
    if (a.json_out == "-") {
        std::cout << report_to_json(rep);
    } else {
        std::cout << report_to_text(rep);
        if (!a.json_out.empty()) {
            std::ofstream out(a.json_out, std::ios::binary);
            if (!out) throw InvalidArgument("cannot write " + a.json_out);
            out << report_to_json(rep);
        }
    }
    return kOk;
}

int run_verify(const std::string& file, int hk_cap) {
    const CostMatrix m = load_matrix(file);
    const SolveReport rep = solve(m, SolveOptions{});
    const auto [ap, ap_d] = hungarian_ap(m);
    const bool ap_ok = rep.ap_value && *rep.ap_value == ap;
    bool ok = ap_ok;
    std::cout << "ap: solver " << *rep.ap_value << " oracle " << ap << (ap_ok ? "  solver == oracle" : "  MISMATCH")
              << "\n";
    if (m.size() <= hk_cap) {
        const auto [tsp, tsp_d] = held_karp_tsp(m, hk_cap);
        const bool tsp_ok = rep.tour_value && *rep.tour_value == tsp;
        std::cout << "tsp: solver " << (rep.tour_value ? std::to_string(*rep.tour_value) : "none") << " oracle " << tsp
                  << (tsp_ok ? "  solver == oracle" : "  MISMATCH") << "\n";
        ok = ok && tsp_ok;
    } else {
        std::cout << "tsp: solver " << (rep.tour_value ? std::to_string(*rep.tour_value) : "none")
                  << " oracle skipped (n > " << hk_cap << ")\n";
    }
    std::cout << "exactness: " << to_string(rep.exactness) << "\n";
    return ok ? kOk : kMismatch;
}

int run_gen(int n, Cost max_cost, std::uint64_t seed, const std::string& out) {
    const std::string text = render_matrix(gen_instance(n, max_cost, seed));
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw InvalidArgument("cannot write " + out);
        f << text;
    }
    return kOk;
}

int run_replay(const std::string& mode, bool tables) {
    const CostMatrix& m = example2_matrix();
    Trace trace;
    const SolveReport rep = solve(m, SolveOptions{}, &trace);
    std::cout << "# full run from the cyclic tour\n";
    print_trace(trace, mode);
    std::cout << report_to_text(rep);

    // Phase 2 from the printed seventh derangement, a tour of value 213.
    const Derangement d7({6, 7, 10, 16, 17, 13, 4, 0, 3, 11, 8, 19, 18, 12, 15, 5, 9, 14, 2, 1});
    std::cout << "# phase 2 from D7 " << d7.to_string() << " value " << derangement_value(m, d7) << "\n";
    if (tables) {
        const ReducedMatrix r(m, d7);
        PathTable t(r);
        std::cout << "# reduced matrix of D7\n" << format_reduced(r);
        for (int pass = 1; pass <= m.size(); ++pass) {
            const PassResult p = fw_pass(r, t);
            std::cout << "# path values after pass " << pass << "\n" << format_path_values(t);
            std::cout << "# predecessors after pass " << pass << "\n" << format_predecessors(t);
            if (p.found || !p.changed) break;
        }
    }
    Trace t2;
    const Phase2Result p2 = run_phase2(m, d7, {}, &t2);
    print_trace(t2, mode);
    std::cout << "ap_value: " << derangement_value(m, p2.optimum) << "\n";
    Trace t3;
    const PatchResult pr = run_phase3(m, p2.optimum, d7, {}, &t3);
    print_trace(t3, mode);
    std::cout << "tour_value: " << derangement_value(m, pr.tour) << "\n";
    std::cout << "exactness: " << to_string(pr.exactness) << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pcycle: permutation-cycle TSP solver"};
    app.require_subcommand(1);

    SolveArgs sa;
    auto* solve_cmd = app.add_subcommand("solve", "solve an instance file");
    solve_cmd->add_option("file", sa.file, "instance file")->required();
    solve_cmd->add_option("--phases", sa.phases, "1, 12 or 123")->check(CLI::IsMember({"1", "12", "123"}));
    solve_cmd->add_option("--trace", sa.trace, "text, json or off")->check(CLI::IsMember({"text", "json", "off"}));
    solve_cmd->add_option("--seed", sa.seed, "seed for restarts");
    solve_cmd->add_option("--restarts", sa.restarts, "phase 1 restarts")->check(CLI::PositiveNumber);
    solve_cmd->add_flag("--keep-equal-paths", sa.keep_equal, "record equal-valued alternative paths");
    solve_cmd->add_option("--budget-cap", sa.budget_cap, "largest phase 3 budget (default 3m)");
    solve_cmd->add_flag("--timings", sa.timings, "include wall-clock per phase");
    solve_cmd->add_option("--json", sa.json_out, "write the JSON report to a file, '-' for stdout");

    std::string verify_file;
    int hk_cap = kHeldKarpCap;
    auto* verify_cmd = app.add_subcommand("verify", "solve and compare against the exact oracles");
    verify_cmd->add_option("file", verify_file, "instance file")->required();
    verify_cmd->add_option("--held-karp-cap", hk_cap, "largest n for the exact TSP oracle");

    int gen_n = 0;
    Cost gen_max = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
    gen_cmd->add_option("--n", gen_n, "vertex count")->required()->check(CLI::Range(2, 4096));
    gen_cmd->add_option("--max", gen_max, "largest cost")->required()->check(CLI::Range(Cost{1}, kMaxEntry));
    gen_cmd->add_option("--seed", gen_seed, "generator seed")->required();
    gen_cmd->add_option("-o,--output", gen_out, "output file (default stdout)");

    std::string replay_mode = "text";
    auto* replay_cmd = app.add_subcommand("replay-example2", "trace the bundled 20-vertex example");
    replay_cmd->add_option("--trace", replay_mode, "text or json")->check(CLI::IsMember({"text", "json"}));
    bool replay_tables = false;
    replay_cmd->add_flag("--tables", replay_tables, "also print R and the path tables for D7, pass by pass");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    }

    try {
        if (*solve_cmd) return run_solve(sa);
        if (*verify_cmd) return run_verify(verify_file, hk_cap);
        if (*gen_cmd) return run_gen(gen_n, gen_max, gen_seed, gen_out);
        if (*replay_cmd) return run_replay(replay_mode, replay_tables);
    } catch (const ParseError& e) {
        std::cerr << "error: line " << e.line() << ", column " << e.column() << ": " << e.what() << "\n";
        return kInputError;
    } catch (const DiagonalNotInf& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const NonSquare& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMismatch;
    }
    return kOk;
}
