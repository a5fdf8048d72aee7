#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "f2cs/coding.hpp"
#include "f2cs/oracle.hpp"
#include "instances.hpp"

using namespace f2cs;
using namespace f2cs::testing;

namespace {

BoolPoly P(const char* s) { return BoolPoly::parse(s); }

std::string col_str(const std::vector<BoolPoly>& col) {
    std::string out;
    for (const BoolPoly& p : col)
        out += p.str() + ";";
    return out;
}

} // namespace

TEST_CASE("butterfly carries constant combinations") {
    NetworkSpec spec = butterfly_network();
    VarMap vm = build_varmap(spec, BroadcastMode::identify);
    CHECK(vm.n == 0);
    auto gev = global_encoding_vectors(spec, vm);

    int u1 = spec.find_node("u1");
    SymbolicMatrix f = receive_matrix(spec, gev, u1);
    REQUIRE(f.rows == 2);
    REQUIRE(f.cols == 2);
    CHECK(f.at(0, 0).is_one());
    CHECK(f.at(1, 0).is_zero());
    CHECK(f.at(0, 1).is_one());
    CHECK(f.at(1, 1).is_one());

    auto polys = rank_constraint_polys(f, 0);
    CHECK(polys == std::vector<BoolPoly>{P("x1"), P("x2 + x1")});

    CHECK_THROWS_AS(receive_matrix(spec, gev, spec.find_node("t3")), DomainError);
    CHECK(search_space_size(spec) == 1);

    // identity blocks: trivially feasible with no variables
    PolySystem p = build_lnc_problem(spec);
    CHECK(p.n() == 0);
    FeasibleSetResult r = bcsfr(p);
    CHECK(r.solution_count() == 1);
}

TEST_CASE("29-variable multicast maps coefficients as published") {
    NetworkSpec spec = routed_broadcast_network();
    VarMap vm = build_varmap(spec, BroadcastMode::equations);
    CHECK(vm.n == 29);
    auto gev = global_encoding_vectors(spec, vm);

    auto edge = [&spec](const char* a, const char* b) {
        for (size_t e = 0; e < spec.edges.size(); ++e)
            if (spec.nodes[static_cast<size_t>(spec.edges[e].first)].id == a &&
                spec.nodes[static_cast<size_t>(spec.edges[e].second)].id == b)
                return static_cast<int>(e);
        return -1;
    };

    CHECK(col_str(gev[edge("t1", "u1")]) == "x1*x13;x2*x13;x3*x13;");
    CHECK(col_str(gev[edge("t2", "u2")]) == "x10*x16;x11*x16;x12*x16;");
    CHECK(gev[edge("t3", "u1")][0] == P("x1*x14*x17 + x10*x15*x19 + x7*x18"));
    CHECK(gev[edge("t3", "u1")][1] == P("x2*x14*x17 + x11*x15*x19 + x8*x18"));
    CHECK(gev[edge("t3", "u1")][2] == P("x3*x14*x17 + x12*x15*x19 + x9*x18"));
    CHECK(gev[edge("t3", "u2")][0] == P("x1*x14*x23 + x10*x15*x25 + x7*x24"));
    CHECK(gev[edge("t4", "u1")][0] ==
          P("x4*x26 + x1*x14*x20*x27 + x10*x15*x22*x27 + x7*x21*x27"));
    CHECK(gev[edge("t4", "u2")][0] ==
          P("x4*x28 + x1*x14*x20*x29 + x10*x15*x22*x29 + x7*x21*x29"));

    // receive matrices take the user's input columns in edge order
    SymbolicMatrix f = receive_matrix(spec, gev, spec.find_node("u1"));
    CHECK(f.cols == 3);
    CHECK(f.at(0, 0) == P("x1*x13"));
    CHECK(f.at(0, 1) == gev[edge("t3", "u1")][0]);
    CHECK(f.at(0, 2) == gev[edge("t4", "u1")][0]);

    CHECK(search_space_size(spec) == 41472);
}

TEST_CASE("routing constraints per output") {
    NetworkSpec spec = routed_broadcast_network();
    VarMap vm = build_varmap(spec, BroadcastMode::equations);
    auto rc = routing_constraints(spec, vm);
    // source: 4 outputs x (3 pairs + 1 sum); t4: 2 outputs x (1 pair + 1 sum)
    REQUIRE(rc.size() == 4 * 4 + 2 * 2);
    CHECK(rc[0] == P("x1*x2"));
    CHECK(rc[1] == P("x1*x3"));
    CHECK(rc[2] == P("x2*x3"));
    CHECK(rc[3] == P("x1 + x2 + x3 + 1"));
    CHECK(rc[16] == P("x26*x27"));
    CHECK(rc[17] == P("x26 + x27 + 1"));
    CHECK(rc[18] == P("x28*x29"));
    CHECK(rc[19] == P("x28 + x29 + 1"));
}

TEST_CASE("broadcast constraints as equations or identification") {
    NetworkSpec spec = routed_broadcast_network();
    VarMap vm = build_varmap(spec, BroadcastMode::equations);
    auto bc = broadcast_constraints(spec, vm);
    std::vector<BoolPoly> expected = {P("x17 + x20"), P("x20 + x23"), P("x18 + x21"),
                                      P("x21 + x24"), P("x19 + x22"), P("x22 + x25")};
    CHECK(bc == expected);

    VarMap ident = build_varmap(spec, BroadcastMode::identify);
    CHECK(broadcast_constraints(spec, ident).empty());
    CHECK(ident.n == 23); // t3's nine slots collapse to three
    CHECK(ident.at(3, 0, 0) == ident.at(3, 1, 0));
    CHECK(ident.at(3, 0, 0) == ident.at(3, 2, 0));
}

TEST_CASE("single-input routing node forces pass-through") {
    NetworkSpec spec;
    spec.omega = 1;
    Node s, r, u;
    s.id = "s";
    s.kind = NodeKind::source;
    s.source_class = NodeKind::constant;
    s.matrix = {{1}};
    r.id = "r";
    r.kind = NodeKind::routing;
    u.id = "u";
    u.kind = NodeKind::user;
    spec.nodes = {s, r, u};
    spec.edges = {{0, 1}, {1, 2}};
    spec.finalize();
    VarMap vm = build_varmap(spec, BroadcastMode::identify);
    auto rc = routing_constraints(spec, vm);
    REQUIRE(rc.size() == 1);
    CHECK(rc[0] == P("x1 + 1"));
}

TEST_CASE("propagation commutes with evaluation") {
    NetworkSpec spec = routed_broadcast_network();
    std::mt19937_64 rng(101);
    for (BroadcastMode mode : {BroadcastMode::equations, BroadcastMode::identify}) {
        VarMap vm = build_varmap(spec, mode);
        auto gev = global_encoding_vectors(spec, vm);
        for (int iter = 0; iter < 30; ++iter) {
            uint64_t x = rng() & ((uint64_t(1) << vm.n) - 1);
            uint64_t w[1] = {x};
            // numeric propagation with the same coefficients
            std::map<int, std::vector<uint8_t>> numeric;
            for (int t : spec.topo_order()) {
                const auto& outs = spec.out_edges[static_cast<size_t>(t)];
                int ins = spec.in_degree(t);
                bool is_source = t == spec.source;
                for (size_t oi = 0; oi < outs.size(); ++oi) {
                    std::vector<uint8_t> col(static_cast<size_t>(spec.omega), 0);
                    for (int ii = 0; ii < ins; ++ii) {
                        uint8_t coeff;
                        if (spec.constraint_class(t) == NodeKind::constant)
                            coeff = spec.node_at(t).matrix[static_cast<size_t>(ii)][oi];
                        else
                            coeff = (x >> (vm.at(t, static_cast<int>(oi), ii) - 1)) & 1;
                        if (!coeff)
                            continue;
                        if (is_source && ii < spec.omega) {
                            col[static_cast<size_t>(ii)] ^= 1;
                        } else {
                            int slot = is_source ? ii - spec.omega : ii;
                            const auto& src = numeric.at(
                                spec.in_edges[static_cast<size_t>(t)][static_cast<size_t>(slot)]);
                            for (int rr = 0; rr < spec.omega; ++rr)
                                col[static_cast<size_t>(rr)] ^= src[static_cast<size_t>(rr)];
                        }
                    }
                    numeric[outs[oi]] = std::move(col);
                }
            }
            for (size_t e = 0; e < spec.edges.size(); ++e)
                for (int rr = 0; rr < spec.omega; ++rr)
                    CHECK(gev[e][static_cast<size_t>(rr)].eval(w) ==
                          (numeric.at(static_cast<int>(e))[static_cast<size_t>(rr)] != 0));
        }
    }
}

TEST_CASE("broadcast modes agree on the feasible set") {
    NetworkSpec spec = routed_broadcast_network();
    PolySystem ident = build_lnc_problem(spec, BroadcastMode::identify);
    PolySystem eqs = build_lnc_problem(spec, BroadcastMode::equations);
    auto pi = oracle::feasible_structured(spec, BroadcastMode::identify, ident, 1 << 20);
    auto pe = oracle::feasible_structured(spec, BroadcastMode::equations, eqs, 1 << 20);
    REQUIRE(pi.size() == pe.size());

    // map merged points into the 29-variable space: t3's column repeats
    VarMap vmi = build_varmap(spec, BroadcastMode::identify);
    VarMap vme = build_varmap(spec, BroadcastMode::equations);
    std::set<uint64_t> expanded;
    for (uint64_t x : pi) {
        uint64_t y = 0;
        for (size_t t = 0; t < spec.nodes.size(); ++t) {
            if (!vmi.optimized(static_cast<int>(t)))
                continue;
            int ins = spec.in_degree(static_cast<int>(t));
            int outs = static_cast<int>(spec.out_edges[t].size());
            for (int e = 0; e < outs; ++e)
                for (int i = 0; i < ins; ++i)
                    if ((x >> (vmi.at(static_cast<int>(t), e, i) - 1)) & 1)
                        y |= uint64_t(1) << (vme.at(static_cast<int>(t), e, i) - 1);
        }
        expanded.insert(y);
    }
    CHECK(expanded == std::set<uint64_t>(pe.begin(), pe.end()));
}

TEST_CASE("five-unit repair instance compiles to the published columns") {
    LrcSpec lrc = lrc5_spec();
    NetworkSpec spec = build_lrc_layered_graph(lrc);
    CHECK(spec.nodes.size() == 1 + 5 + 2 + 10);
    CHECK(spec.user_nodes().size() == 10);
    CHECK(search_space_size(spec) == 64);

    VarMap vm = build_varmap(spec, BroadcastMode::identify);
    CHECK(vm.n == 6);
    auto gev = global_encoding_vectors(spec, vm);

    // unit columns in storage-position order: c1, c2(t2), c3, c4(t4), c5
    int u1 = spec.user_nodes()[0]; // subset {1,2,3}
    SymbolicMatrix f = receive_matrix(spec, gev, u1);
    CHECK(f.at(0, 0).is_one());
    CHECK(f.at(1, 0).is_zero());
    CHECK(f.at(0, 1) == P("x1 + x2"));
    CHECK(f.at(1, 1) == P("x2 + x3"));
    CHECK(f.at(0, 2).is_one());
    CHECK(f.at(1, 2).is_one());

    PolySystem p = build_lrc_problem(lrc);
    CHECK(p.blocks().size() == 10);
    CHECK(p.nonrank().empty());
}

TEST_CASE("five-unit repair instance solves to the published triangular sets") {
    PolySystem p = build_lrc_problem(lrc5_spec());
    FeasibleSetResult r = bcsfr(p);
    CHECK(r.solution_count() == 24);
    REQUIRE(r.charsets.size() == 3);
    auto cs = [](std::initializer_list<const char*> ss) {
        std::vector<BoolPoly> polys;
        for (const char* s : ss)
            polys.push_back(BoolPoly::parse(s));
        return CharSet::from_polys(polys, 6, 6);
    };
    std::vector<CharSet> expected = {
        cs({"x2 + x1 + 1", "x3 + x1 + 1", "x6 + x5 + 1"}),
        cs({"x2 + x1", "x3 + x1 + 1", "x5 + x4 + 1"}),
        cs({"x2 + x1 + 1", "x3 + x1", "x6 + x4 + 1"}),
    };
    std::sort(expected.begin(), expected.end());
    for (size_t i = 0; i < 3; ++i)
        CHECK(r.charsets[i] == expected[i]);

    // the incremental fold may split differently but covers the same set
    FeasibleSetResult inc = inc_bcsfr(p);
    CHECK(inc.solution_count() == 24);
    CHECK(result_points(inc) == result_points(r));
}

TEST_CASE("three-unit repair instance forces the published column") {
    // units 2 and 3 survive holding b2 and b1+b2; the repair node can only
    // reconstruct b1, so exactly one assignment works
    LrcSpec lrc;
    lrc.ell = 3;
    lrc.eta = 2;
    lrc.omega = 2;
    lrc.surviving = {2, 3};
    lrc.source_matrix = {{1, 0, 1}, {0, 1, 1}};
    NetworkSpec spec = build_lrc_layered_graph(lrc);
    CHECK(spec.user_nodes().size() == 3);
    CHECK(spec.nodes.size() == 1 + 3 + 1 + 3);
    PolySystem p = build_lrc_problem(lrc);
    CHECK(p.n() == 2);
    FeasibleSetResult r = bcsfr(p);
    CHECK(r.solution_count() == 1);
    auto pts = result_points(r);
    CHECK(pts == std::set<uint64_t>{0b11}); // x1 = x2 = 1 stores b1
}

TEST_CASE("under-determined users still get a receive matrix") {
    NetworkSpec spec;
    spec.omega = 2;
    Node s, u;
    s.id = "s";
    s.kind = NodeKind::source;
    s.source_class = NodeKind::general;
    u.id = "u";
    u.kind = NodeKind::user;
    spec.nodes = {s, u};
    spec.edges = {{0, 1}};
    spec.finalize();
    VarMap vm = build_varmap(spec, BroadcastMode::identify);
    SymbolicMatrix f = receive_matrix(spec, vm, 1);
    CHECK(f.rows == 2);
    CHECK(f.cols == 1); // construction succeeds; infeasibility surfaces later
}

TEST_CASE("identity matrix yields bare kernel constraints") {
    SymbolicMatrix m(2, 2);
    m.at(0, 0) = BoolPoly::one();
    m.at(1, 1) = BoolPoly::one();
    auto polys = rank_constraint_polys(m, 4);
    CHECK(polys == std::vector<BoolPoly>{BoolPoly::parse("x5"), BoolPoly::parse("x6")});
}

TEST_CASE("broadcast node with one output adds nothing") {
    NetworkSpec spec;
    spec.omega = 1;
    Node s, b, u;
    s.id = "s";
    s.kind = NodeKind::source;
    s.source_class = NodeKind::constant;
    s.matrix = {{1}};
    b.id = "b";
    b.kind = NodeKind::broadcast;
    u.id = "u";
    u.kind = NodeKind::user;
    spec.nodes = {s, b, u};
    spec.edges = {{0, 1}, {1, 2}};
    spec.finalize();
    VarMap vm = build_varmap(spec, BroadcastMode::equations);
    CHECK(broadcast_constraints(spec, vm).empty());
    CHECK(vm.n == 1);
}

TEST_CASE("incremental driver reproduces the multicast count") {
    NetworkSpec spec = routed_broadcast_network();
    PolySystem p = build_lnc_problem(spec);
    FeasibleSetResult inc = inc_bcsfr(p);
    CHECK(inc.solution_count() == 156);
    CHECK(result_points(inc) == result_points(bcsfr(p)));
}

TEST_CASE("degenerate repair instance with no failures") {
    LrcSpec lrc = lrc5_spec();
    lrc.surviving = {1, 2, 3, 4, 5};
    PolySystem p = build_lrc_problem(lrc);
    CHECK(p.n() == 0);
    // feasible iff every 3-subset of the fixed columns has rank 2
    FeasibleSetResult r = inc_bcsfr(p);
    CHECK(r.solution_count() == 1);
}

TEST_CASE("25-unit layered graph has the right shape") {
    LrcSpec lrc;
    lrc.ell = 25;
    lrc.eta = 23;
    lrc.omega = 18;
    for (int i = 3; i <= 25; ++i)
        lrc.surviving.push_back(i);
    lrc.source_matrix.assign(18, std::vector<uint8_t>(25, 0));
    NetworkSpec spec = build_lrc_layered_graph(lrc);
    CHECK(spec.user_nodes().size() == 300);
    CHECK(spec.nodes.size() == 1 + 25 + 2 + 300);
    VarMap vm = build_varmap(spec, BroadcastMode::identify);
    CHECK(vm.n == 46);
    CHECK(search_space_size(spec) == pow2(46));
}

TEST_CASE("builder rejects bad instances") {
    LrcSpec lrc = lrc5_spec();
    lrc.source_matrix.pop_back();
    CHECK_THROWS_AS(build_lrc_layered_graph(lrc), ParseError);

    lrc = lrc5_spec();
    lrc.eta = 6;
    CHECK_THROWS_AS(build_lrc_layered_graph(lrc), ParseError);

    // user with fewer inputs than source symbols
    NetworkSpec spec;
    spec.omega = 2;
    Node s, u;
    s.id = "s";
    s.kind = NodeKind::source;
    u.id = "u";
    u.kind = NodeKind::user;
    spec.nodes = {s, u};
    spec.edges = {{0, 1}};
    spec.finalize();
    CHECK_THROWS_AS(build_lnc_problem(spec), InfeasibleError);
}

TEST_CASE("full-rank feasibility equals rank checks on random networks") {
    // random layered two-user networks, compiled and solved, against the
    // rank-based oracle over the structured candidate space
    std::mt19937_64 rng(111);
    int done = 0;
    while (done < 12) {
        int omega = 2;
        int mid = 2 + static_cast<int>(rng() % 2);
        NetworkSpec spec;
        spec.omega = omega;
        Node s;
        s.id = "s";
        s.kind = NodeKind::source;
        s.source_class = NodeKind::general;
        spec.nodes.push_back(s);
        for (int i = 0; i < mid; ++i) {
            Node t;
            t.id = "m" + std::to_string(i);
            t.kind = rng() % 3 == 0 ? NodeKind::routing : NodeKind::general;
            spec.nodes.push_back(t);
        }
        for (int i = 0; i < 2; ++i) {
            Node u;
            u.id = "u" + std::to_string(i);
            u.kind = NodeKind::user;
            spec.nodes.push_back(u);
        }
        for (int i = 0; i < mid; ++i)
            spec.edges.emplace_back(0, 1 + i);
        for (int i = 0; i < mid; ++i) {
            spec.edges.emplace_back(1 + i, 1 + mid);     // u0
            spec.edges.emplace_back(1 + i, 1 + mid + 1); // u1
        }
        spec.finalize();
        VarMap vm = build_varmap(spec, BroadcastMode::identify);
        if (vm.n > 14)
            continue;
        PolySystem p = build_lnc_problem(spec);
        FeasibleSetResult r = inc_bcsfr(p);
        auto truth = oracle::feasible_structured(spec, BroadcastMode::identify, p, 1 << 22);
        // compare against the solver output intersected with the structured
        // space (plain constraints restrict the cube to that space)
        auto pts = result_points(r);
        CHECK(pts == std::set<uint64_t>(truth.begin(), truth.end()));
        ++done;
    }
}
