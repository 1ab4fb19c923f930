// Command-line front end: instance generation, packing, verification,
// exhaustive oracle runs, benchmarking, and DOT export.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "treepack/errors.hpp"
#include "treepack/gen.hpp"
#include "treepack/io.hpp"
#include "treepack/oracle.hpp"
#include "treepack/pipeline.hpp"
#include "treepack/verify.hpp"

using namespace treepack;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitBudget = 2;
constexpr int kExitUsage = 64;

struct ModeArgs {
    std::string mode = "thm2";  // thm1 | thm2 | prop
    bool strict = false;
    int t_override = 0;
    int h_override = 0;

    ScaleProfile profile(int n) const {
        ProfileOverrides ov;
        if (t_override > 0) ov.t = t_override;
        if (h_override > 0) ov.h = h_override;
        Mode m = mode == "thm1" ? Mode::thm1 : Mode::thm2;
        if (mode == "prop") ov.extra_vertex = false;
        return make_profile(n, m, strict, ov);
    }
};

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

int cmd_gen(const std::string& kind, int n, int t, const std::string& variant,
            std::uint64_t seed, const ModeArgs& margs, const std::string& out) {
    ScaleProfile pf = margs.profile(n);
    TreeFamily fam = gen_instance(parse_gen_kind(kind), n, t, variant == "kn1", seed, pf);
    if (out.empty())
        write_instance(std::cout, fam);
    else
        write_instance_file(out, fam);
    std::cerr << "gen kind=" << kind << " n=" << n << " t=" << t << " variant=" << variant
              << " seed=" << seed << "\n";
    return kExitOk;
}

int cmd_pack(const std::string& in, const ModeArgs& margs, std::uint64_t seed, int restarts,
             int repair_depth, const std::string& out, const std::string& log_path) {
    TreeFamily fam = read_instance_file(in);
    ProfileOverrides ov;
    ov.t = fam.t();
    if (margs.t_override > 0 && margs.t_override != fam.t())
        throw malformed_input("--t disagrees with the instance");
    if (margs.h_override > 0) ov.h = margs.h_override;
    Mode m = margs.mode == "thm1" ? Mode::thm1 : Mode::thm2;
    if (margs.mode == "prop") ov.extra_vertex = false;
    ScaleProfile pf = make_profile(fam.n, m, margs.strict, ov);

    EmbedBudget budget;
    budget.rng_seed = seed;
    if (restarts > 0) budget.max_restarts_per_forest = restarts;
    if (repair_depth > 0) budget.max_repair_depth = repair_depth;

    double t0 = now_ms();
    PackReport rep = margs.mode == "prop" ? pack_prop(fam, pf, budget) : pack(fam, pf, budget);
    double elapsed = now_ms() - t0;

    std::ostream* log = &std::cerr;
    std::ofstream log_file;
    if (!log_path.empty()) {
        log_file.open(log_path);
        log = &log_file;
    }
    for (const auto& w : pf.warnings) *log << "warn=\"" << w << "\"\n";
    for (const auto& line : rep.log) *log << line << "\n";
    *log << "outcome="
         << (rep.outcome == PackReport::Outcome::packed
                 ? "packed"
                 : rep.outcome == PackReport::Outcome::embed_failed ? "embed_failed"
                                                                    : "infeasible_profile")
         << " elapsed_ms=" << static_cast<long>(elapsed) << "\n";
    if (rep.outcome != PackReport::Outcome::packed) {
        *log << "failure=\"" << rep.failure << "\"\n";
        return rep.outcome == PackReport::Outcome::embed_failed ? kExitBudget : kExitRejected;
    }
    if (out.empty())
        write_coloring(std::cout, rep.coloring, fam.t());
    else
        write_coloring_file(out, rep.coloring, fam.t());
    return kExitOk;
}

int cmd_verify(const std::string& instance, const std::string& coloring) {
    TreeFamily fam = read_instance_file(instance);
    EdgeColoring col = read_coloring_file(coloring);
    Verdict v = verify(fam, col);
    if (v.ok) {
        std::cout << "ok colors=" << fam.t() << "\n";
        return kExitOk;
    }
    for (const auto& f : v.failures)
        std::cout << "fail color=" << f.color << " reason=" << fail_reason_name(f.reason)
                  << " detail=\"" << f.detail << "\"\n";
    return kExitRejected;
}

int cmd_oracle_pack(const std::string& instance, double time_limit_ms,
                    const std::string& out) {
    TreeFamily fam = read_instance_file(instance);
    auto res = exact_pack(fam.trees, fam.host_order(), time_limit_ms);
    std::cout << "outcome="
              << (res.stats.outcome == SearchStats::Outcome::packed
                      ? "packed"
                      : res.stats.outcome == SearchStats::Outcome::unsat ? "unsat" : "timeout")
              << " nodes=" << res.stats.nodes << " max_depth=" << res.stats.max_depth
              << " elapsed_ms=" << static_cast<long>(res.stats.elapsed_ms) << "\n";
    if (res.coloring && !out.empty()) write_coloring_file(out, *res.coloring, fam.t());
    if (res.stats.outcome == SearchStats::Outcome::packed) return kExitOk;
    return res.stats.outcome == SearchStats::Outcome::unsat ? kExitRejected : kExitBudget;
}

int report_grid(const std::string& name, const GridReport& rep) {
    std::cout << "grid=" << name << " cells=" << rep.cells << " trials=" << rep.trials
              << " discrepancies=" << rep.discrepancies.size() << "\n";
    for (const auto& d : rep.discrepancies) std::cout << "discrepancy=\"" << d << "\"\n";
    return rep.ok() ? kExitOk : kExitRejected;
}

int cmd_oracle_grid(const std::string& grid, int trials, std::uint64_t seed, int max_k,
                    int max_a, int max_b, double time_limit_ms) {
    if (grid == "stars") return report_grid(grid, claim_grid_stars(max_k, max_a, max_b, trials, seed));
    if (grid == "matching") return report_grid(grid, claim_grid_matching(max_a, max_b, trials, seed));
    if (grid == "matching2") return report_grid(grid, claim_grid_matching2(max_a, trials, seed));
    if (grid == "starspaths") return report_grid(grid, claim_grid_starspaths(max_k, trials, seed));
    if (grid == "tpc") {
        int n = max_a;
        TpcReport rep = tpc_exhaust(n, time_limit_ms);
        std::cout << "grid=tpc n=" << rep.n << " sequences=" << rep.sequences
                  << " packed=" << rep.packed << " unsat=" << rep.unsat
                  << " timeout=" << rep.timeout << " nodes=" << rep.nodes << "\n";
        return rep.packed == rep.sequences ? kExitOk
                                           : (rep.timeout > 0 ? kExitBudget : kExitRejected);
    }
    throw malformed_input("unknown grid '" + grid + "'");
}

int cmd_bench(const ModeArgs& margs, const std::vector<int>& ns, int t, int trials,
              std::uint64_t seed) {
    std::cout << "n,t,trials,packed,success_rate,mean_ms,p95_ms\n";
    for (int n : ns) {
        ProfileOverrides ov;
        ov.t = t;
        Mode m = margs.mode == "thm1" ? Mode::thm1 : Mode::thm2;
        if (margs.mode == "prop") ov.extra_vertex = false;
        ScaleProfile pf = make_profile(n, m, margs.strict, ov);
        int packed = 0;
        std::vector<double> times;
        for (int trial = 0; trial < trials; ++trial) {
            std::uint64_t s = mix64(seed, mix64(n, trial));
            TreeFamily fam =
                gen_instance(GenKind::Mixed, n, t, pf.extra_vertex && margs.mode != "prop", s, pf);
            EmbedBudget budget;
            budget.rng_seed = s;
            double t0 = now_ms();
            PackReport rep =
                margs.mode == "prop" ? pack_prop(fam, pf, budget) : pack(fam, pf, budget);
            times.push_back(now_ms() - t0);
            if (rep.outcome == PackReport::Outcome::packed && verify(fam, rep.coloring).ok)
                ++packed;
        }
        std::sort(times.begin(), times.end());
        double mean = 0;
        for (double x : times) mean += x;
        mean /= times.empty() ? 1 : times.size();
        double p95 = times.empty() ? 0 : times[(times.size() * 95 + 99) / 100 - 1];
        std::cout << n << ',' << t << ',' << trials << ',' << packed << ','
                  << (trials ? 1.0 * packed / trials : 0) << ',' << static_cast<long>(mean) << ','
                  << static_cast<long>(p95) << "\n";
    }
    return kExitOk;
}

int cmd_dot(const std::string& coloring, const std::vector<int>& colors,
            const std::string& out) {
    int t = 0;
    EdgeColoring col = read_coloring_file(coloring, &t);
    std::vector<char> want(t + 1, colors.empty() ? 1 : 0);
    for (int c : colors)
        if (c >= 1 && c <= t) want[c] = 1;
    std::ostringstream dot;
    dot << "graph packing {\n";
    auto classes = col.all_classes(t);
    for (int c = 1; c <= t; ++c) {
        if (!want[c]) continue;
        for (auto [u, v] : classes[c])
            dot << "  " << u << " -- " << v << " [color=" << c << "];\n";
    }
    dot << "}\n";
    if (out.empty())
        std::cout << dot.str();
    else {
        std::ofstream f(out);
        f << dot.str();
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tree packing toolkit: pack sequences of trees into cliques, verify the "
                 "result, and cross-check against exhaustive search"};
    app.require_subcommand(1);

    ModeArgs margs;
    std::string in_path, out_path, log_path, instance_path, coloring_path;
    std::string kind = "mixed", variant = "kn1", grid;
    int n = 1000, t = 2, restarts = 0, repair_depth = 0, trials = 20;
    int max_k = 6, max_a = 10, max_b = 14;
    std::uint64_t seed = 1;
    double time_limit = 60000;
    std::vector<int> ns{1000}, colors;

    auto add_mode = [&](CLI::App* cmd) {
        cmd->add_option("--mode", margs.mode, "thm1 | thm2 | prop")
            ->check(CLI::IsMember({"thm1", "thm2", "prop"}));
        cmd->add_flag("--strict", margs.strict, "enforce the asymptotic inequalities");
        cmd->add_option("--t", margs.t_override, "override the tree count");
        cmd->add_option("--h", margs.h_override, "override the hub zone order");
    };

    auto* cgen = app.add_subcommand("gen", "generate an instance file");
    cgen->add_option("--kind", kind, "random|star|path|spider|broom|caterpillar|mixed");
    cgen->add_option("--n", n, "host order")->required();
    cgen->add_option("--t", t, "tree count")->required();
    cgen->add_option("--variant", variant, "kn | kn1")->check(CLI::IsMember({"kn", "kn1"}));
    cgen->add_option("--seed", seed, "generator seed");
    cgen->add_option("--out", out_path, "output path (default stdout)");
    cgen->add_option("--mode", margs.mode, "profile used to shape mixed instances")
        ->check(CLI::IsMember({"thm1", "thm2", "prop"}));

    auto* cpack = app.add_subcommand("pack", "pack an instance into an edge coloring");
    cpack->add_option("--in", in_path, "instance file")->required();
    add_mode(cpack);
    cpack->add_option("--seed", seed, "embedder seed");
    cpack->add_option("--restarts", restarts, "embedder restarts per forest");
    cpack->add_option("--repair-depth", repair_depth, "embedder repair depth");
    cpack->add_option("--out", out_path, "coloring output path (default stdout)");
    cpack->add_option("--log", log_path, "run log path (default stderr)");

    auto* cverify = app.add_subcommand("verify", "check a coloring against an instance");
    cverify->add_option("--instance", instance_path)->required();
    cverify->add_option("--coloring", coloring_path)->required();

    auto* coracle = app.add_subcommand("oracle", "exhaustive search and claim grids");
    coracle->add_option("--instance", instance_path, "pack this instance exactly");
    coracle->add_option("--grid", grid, "stars|matching|matching2|starspaths|tpc");
    coracle->add_option("--trials", trials, "trials per grid cell");
    coracle->add_option("--seed", seed);
    coracle->add_option("--max-k", max_k);
    coracle->add_option("--max-a", max_a, "grid bound (tpc: the host order)");
    coracle->add_option("--max-b", max_b);
    coracle->add_option("--time-limit", time_limit, "per-search limit in ms");
    coracle->add_option("--out", out_path, "write the found coloring here");

    auto* cbench = app.add_subcommand("bench", "seeded success-rate and timing table");
    add_mode(cbench);
    cbench->add_option("--n", ns, "host orders")->delimiter(',');
    cbench->add_option("--trials", trials);
    cbench->add_option("--seed", seed);

    auto* cdot = app.add_subcommand("dot", "emit DOT text for selected color classes");
    cdot->add_option("--coloring", coloring_path)->required();
    cdot->add_option("--colors", colors, "color filter (default: all)")->delimiter(',');
    cdot->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cgen->parsed()) return cmd_gen(kind, n, t, variant, seed, margs, out_path);
        if (cpack->parsed())
            return cmd_pack(in_path, margs, seed, restarts, repair_depth, out_path, log_path);
        if (cverify->parsed()) return cmd_verify(instance_path, coloring_path);
        if (coracle->parsed()) {
            if (!instance_path.empty()) return cmd_oracle_pack(instance_path, time_limit, out_path);
            if (!grid.empty())
                return cmd_oracle_grid(grid, trials, seed, max_k, max_a, max_b, time_limit);
            std::cerr << "oracle needs --instance or --grid\n";
            return kExitUsage;
        }
        if (cbench->parsed()) return cmd_bench(margs, ns, margs.t_override > 0 ? margs.t_override : t, trials, seed);
        if (cdot->parsed()) return cmd_dot(coloring_path, colors, out_path);
    } catch (const malformed_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRejected;
    }
    return kExitUsage;
}
