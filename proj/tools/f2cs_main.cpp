#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "f2cs/bcsfr.hpp"
#include "f2cs/io.hpp"
#include "f2cs/optimize.hpp"
#include "f2cs/oracle.hpp"

namespace {

using namespace f2cs;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct Options {
    std::string input;
    std::string out;
    std::string choose = "auto";
    std::string broadcast = "identify";
    bool incremental = false;
    bool single_shot = false;
    int max_df = 24;
    int workers = 1;
    bool trace = false;
    uint64_t limit = uint64_t(1) << 20;
    std::string charsets_file;
    std::string assignment_file;
    int wcnf_target = -1;
};

struct Instance {
    ParsedInput parsed;
    PolySystem system;
    BigInt search_space = 0;
    bool has_network = false;
    NetworkSpec network; // layered graph for lrc inputs
};

BroadcastMode broadcast_mode(const Options& opt) {
    if (opt.broadcast == "identify")
        return BroadcastMode::identify;
    if (opt.broadcast == "equations")
        return BroadcastMode::equations;
    throw ParseError("--broadcast must be identify or equations");
}

void apply_choose(const Options& opt, BcsfrConfig& cfg, BcsConfig& bcs_cfg) {
    const std::string& c = opt.choose;
    auto set_both = [&](ChoosePolicy p) {
        cfg.monic_policy = p;
        bcs_cfg.policy = p;
    };
    if (c == "auto") {
        cfg.monic_policy = ChoosePolicy::det0;
        bcs_cfg.policy = ChoosePolicy::cso1;
    } else if (c == "cso1") {
        set_both(ChoosePolicy::cso1);
    } else if (c == "cso2") {
        set_both(ChoosePolicy::cso2);
    } else if (c == "det0") {
        set_both(ChoosePolicy::det0);
    } else if (c.rfind("rand:", 0) == 0) {
        set_both(ChoosePolicy::seeded);
        uint64_t seed = std::stoull(c.substr(5));
        cfg.seed = seed;
        bcs_cfg.seed = seed;
    } else {
        throw ParseError("--choose must be cso1, cso2, det0 or rand:<seed>");
    }
}

Instance load(const Options& opt) {
    Instance inst;
    inst.parsed = parse_input_file(opt.input);
    BroadcastMode mode = broadcast_mode(opt);
    switch (inst.parsed.kind) {
    case InputKind::network:
        inst.network = inst.parsed.network;
        inst.has_network = true;
        inst.system = build_lnc_problem(inst.network, mode);
        inst.search_space = search_space_size(inst.network);
        break;
    case InputKind::lrc:
        inst.network = build_lrc_layered_graph(inst.parsed.lrc);
        inst.has_network = true;
        inst.system = build_lnc_problem(inst.network, mode);
        inst.search_space = search_space_size(inst.network);
        break;
    case InputKind::system:
        inst.system = inst.parsed.system;
        inst.search_space = pow2(static_cast<unsigned>(inst.system.n()));
        break;
    }
    return inst;
}

struct SolveOutput {
    FeasibleSetResult result;
    double seconds = 0;
    DecompKind kind = DecompKind::fss;
};

SolveOutput run_solve(const Instance& inst, const Options& opt) {
    BcsfrConfig cfg;
    BcsConfig bcs_cfg;
    apply_choose(opt, cfg, bcs_cfg);
    cfg.workers = opt.workers;
    bcs_cfg.workers = opt.workers;
    cfg.trace = opt.trace;

    SolveOutput out;
    auto t0 = std::chrono::steady_clock::now();
    const PolySystem& p = inst.system;
    if (p.blocks().empty()) {
        // Plain polynomial system: triangular zero decomposition.
        DecompositionResult d = bcs(p.nonrank(), p.n(), 0, bcs_cfg);
        out.result.n = p.n();
        out.result.charsets = d.charsets;
        out.kind = d.kind;
    } else {
        // Single shot keeps the kernel window narrow enough up to a few
        // dozen variables; wider systems go through the incremental fold.
        bool incremental = p.flat_v() > 32;
        if (opt.incremental)
            incremental = true;
        if (opt.single_shot)
            incremental = false;
        out.result = incremental ? inc_bcsfr(p, cfg) : bcsfr(p, cfg);
        out.kind = DecompKind::fss;
    }
    auto t1 = std::chrono::steady_clock::now();
    out.seconds = std::chrono::duration<double>(t1 - t0).count();
    return out;
}

void print_summary(const Instance& inst, const SolveOutput& s) {
    std::cout << "charsets=" << s.result.charsets.size()
              << " solutions=" << s.result.solution_count().str()
              << " search_space=" << inst.search_space.str() << " time=" << s.seconds << "s\n";
}

std::vector<uint64_t> run_oracle(const Instance& inst, const Options& opt) {
    const PolySystem& p = inst.system;
    if (p.n() <= 24)
        return oracle::feasible_dense(p);
    if (inst.has_network)
        return oracle::feasible_structured(inst.network, broadcast_mode(opt), p,
                                           uint64_t(1) << 26);
    throw BudgetError("no oracle fits: " + std::to_string(p.n()) + " variables, no node structure");
}

int cmd_solve(const Options& opt) {
    Instance inst = load(opt);
    SolveOutput s = run_solve(inst, opt);
    std::string text = charsets_text(s.result.charsets);
    if (!opt.out.empty())
        write_file(opt.out, text);
    else
        std::cout << text;
    print_summary(inst, s);
    return s.result.charsets.empty() ? kExitInfeasible : kExitOk;
}

int cmd_count(const Options& opt) {
    Instance inst = load(opt);
    SolveOutput s = run_solve(inst, opt);
    std::cout << s.result.solution_count().str() << "\n";
    return s.result.charsets.empty() ? kExitInfeasible : kExitOk;
}

int cmd_enumerate(const Options& opt) {
    Instance inst = load(opt);
    SolveOutput s = run_solve(inst, opt);
    if (s.result.solution_count() > opt.limit)
        throw BudgetError("feasible set has " + s.result.solution_count().str() +
                          " points, limit " + std::to_string(opt.limit));
    std::string buffer;
    for (const CharSet& cs : s.result.charsets) {
        cs.for_each_zero(opt.limit, [&](const std::vector<uint8_t>& pt) {
            for (uint8_t b : pt)
                buffer += b ? '1' : '0';
            buffer += '\n';
        });
    }
    if (!opt.out.empty())
        write_file(opt.out, buffer);
    else
        std::cout << buffer;
    return s.result.charsets.empty() ? kExitInfeasible : kExitOk;
}

int cmd_verify(const Options& opt) {
    Instance inst = load(opt);
    FeasibleSetResult result;
    if (!opt.charsets_file.empty()) {
        result.n = inst.system.n();
        result.charsets = parse_charsets_file(opt.charsets_file, inst.system.n());
    } else {
        result = run_solve(inst, opt).result;
    }
    std::vector<uint64_t> truth = run_oracle(inst, opt);
    oracle::CompareReport rep = oracle::compare_oracle_vs_cs(truth, result);
    if (rep.equal && rep.count_match) {
        std::cout << "PASS " << rep.message << "\n";
        return kExitOk;
    }
    std::cout << "FAIL " << rep.message;
    if (rep.missing_point)
        std::cout << " missing_point=" << *rep.missing_point;
    if (rep.extra_point)
        std::cout << " extra_point=" << *rep.extra_point;
    if (!rep.count_match)
        std::cout << " oracle_count=" << rep.oracle_count.str()
                  << " charset_count=" << rep.cs_count.str();
    std::cout << "\n";
    return kExitInfeasible;
}

int cmd_optimize(const Options& opt) {
    Instance inst = load(opt);
    SolveOutput s = run_solve(inst, opt);
    Optimum best = minimize(s.result, Objective::unit(s.result.n), opt.max_df);
    std::cout << "optimum=" << best.value << " witnesses=" << best.witness_count.str() << "\n";
    size_t show = std::min<size_t>(best.witnesses.size(), 4);
    for (size_t i = 0; i < show; ++i) {
        for (uint8_t b : best.witnesses[i])
            std::cout << (b ? '1' : '0');
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_check(const Options& opt) {
    Instance inst = load(opt);
    if (opt.assignment_file.empty())
        throw ParseError("check needs --assignment <file>");
    std::vector<uint8_t> point = parse_assignment_file(opt.assignment_file, inst.system.n());
    CheckResult res = verify_assignment(inst.system, point, Objective::unit(inst.system.n()));
    std::cout << (res.feasible ? "feasible" : "infeasible") << ", objective " << res.value << "\n";
    return kExitOk;
}

int cmd_export_wcnf(const Options& opt) {
    Instance inst = load(opt);
    SolveOutput s = run_solve(inst, opt);
    if (s.result.charsets.empty()) {
        std::cout << "infeasible: nothing to export\n";
        return kExitInfeasible;
    }
    std::string prefix = opt.out.empty() ? "out_" : opt.out;
    auto files = export_wcnf(s.result, Objective::unit(s.result.n), opt.wcnf_target, prefix);
    for (const std::string& f : files)
        std::cout << f << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boolean characteristic-set engine for full-rank feasibility over GF(2)"};
    app.require_subcommand(1);

    Options opt;
    std::string command;
    const std::pair<const char*, const char*> commands[] = {
        {"solve", "decompose the instance into triangular charsets"},
        {"verify", "differential check against the brute-force oracle"},
        {"count", "print the exact number of feasible solutions"},
        {"enumerate", "list every feasible assignment"},
        {"optimize", "exact weighted minimization over the feasible set"},
        {"check", "evaluate feasibility and objective of one assignment"},
        {"export-wcnf", "write weighted partial MaxSAT files per charset"},
    };
    for (auto [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("input", opt.input, "instance file (network | lrc | system)")->required();
        sub->add_option("--choose", opt.choose, "selection policy: cso1|cso2|det0|rand:<seed>");
        sub->add_option("--broadcast", opt.broadcast, "broadcast handling: identify|equations");
        sub->add_flag("--incremental", opt.incremental, "force one pass per rank block");
        sub->add_flag("--single-shot", opt.single_shot, "force a single decomposition pass");
        sub->add_option("--max-df", opt.max_df, "exact-optimization bound on free variables");
        sub->add_option("--workers", opt.workers, "branch-parallel worker count");
        sub->add_flag("--trace", opt.trace, "log branch events to stderr");
        sub->add_option("--out", opt.out, "output path (or prefix for export-wcnf)");
        sub->add_option("--limit", opt.limit, "enumeration cap");
        sub->add_option("--charsets", opt.charsets_file, "verify a stored charset file");
        sub->add_option("--assignment", opt.assignment_file, "assignment file for check");
        sub->add_option("--charset", opt.wcnf_target, "export only this charset index");
        sub->callback([&command, name] { command = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (command == "solve")
            return cmd_solve(opt);
        if (command == "verify")
            return cmd_verify(opt);
        if (command == "count")
            return cmd_count(opt);
        if (command == "enumerate")
            return cmd_enumerate(opt);
        if (command == "optimize")
            return cmd_optimize(opt);
        if (command == "check")
            return cmd_check(opt);
        if (command == "export-wcnf")
            return cmd_export_wcnf(opt);
        std::cerr << "unknown command\n";
        return kExitInput;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const InfeasibleError& e) {
        std::cout << "charsets=0 solutions=0\n";
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
