#include "f2cs/coding.hpp"

#include <algorithm>
#include <queue>

#include "f2cs/errors.hpp"

namespace f2cs {

// ------------------------------------------------------------ NetworkSpec

void NetworkSpec::finalize() {
    size_t nn = nodes.size();
    in_edges.assign(nn, {});
    out_edges.assign(nn, {});
    source = -1;
    if (omega <= 0)
        throw ParseError("omega must be positive");
    for (size_t i = 0; i < nn; ++i) {
        if (nodes[i].kind == NodeKind::source) {
            if (source != -1)
                throw ParseError("more than one source node");
            source = static_cast<int>(i);
        }
    }
    if (source == -1)
        throw ParseError("no source node");
    for (size_t e = 0; e < edges.size(); ++e) {
        auto [a, b] = edges[e];
        if (a < 0 || b < 0 || a >= static_cast<int>(nn) || b >= static_cast<int>(nn))
            throw ParseError("edge endpoint out of range");
        out_edges[static_cast<size_t>(a)].push_back(static_cast<int>(e));
        in_edges[static_cast<size_t>(b)].push_back(static_cast<int>(e));
    }
    for (size_t i = 0; i < nn; ++i) {
        if (nodes[i].kind == NodeKind::user && !out_edges[i].empty())
            throw ParseError("user node " + nodes[i].id + " has outgoing edges");
        NodeKind k = constraint_class(static_cast<int>(i));
        if (k == NodeKind::constant && !out_edges[i].empty()) {
            const auto& m = nodes[i].matrix;
            if (m.size() != static_cast<size_t>(in_degree(static_cast<int>(i))))
                throw ParseError("constant matrix of " + nodes[i].id + " has wrong row count");
            for (const auto& row : m)
                if (row.size() != out_edges[i].size())
                    throw ParseError("constant matrix of " + nodes[i].id + " has wrong column count");
        }
    }
    topo_order(); // throws on cycles
}

NodeKind NetworkSpec::constraint_class(int node) const {
    const Node& nd = nodes[static_cast<size_t>(node)];
    return nd.kind == NodeKind::source ? nd.source_class : nd.kind;
}

int NetworkSpec::in_degree(int node) const {
    int real = static_cast<int>(in_edges[static_cast<size_t>(node)].size());
    return node == source ? real + omega : real;
}

int NetworkSpec::find_node(const std::string& id) const {
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].id == id)
            return static_cast<int>(i);
    return -1;
}

std::vector<int> NetworkSpec::topo_order() const {
    size_t nn = nodes.size();
    std::vector<int> indeg(nn, 0);
    for (auto [a, b] : edges)
        ++indeg[static_cast<size_t>(b)];
    std::queue<int> ready;
    for (size_t i = 0; i < nn; ++i)
        if (indeg[i] == 0)
            ready.push(static_cast<int>(i));
    std::vector<int> order;
    while (!ready.empty()) {
        int t = ready.front();
        ready.pop();
        order.push_back(t);
        for (int e : out_edges[static_cast<size_t>(t)]) {
            int b = edges[static_cast<size_t>(e)].second;
            if (--indeg[static_cast<size_t>(b)] == 0)
                ready.push(b);
        }
    }
    if (order.size() != nn)
        throw ParseError("network graph contains a cycle");
    return order;
}

std::vector<int> NetworkSpec::user_nodes() const {
    std::vector<int> out;
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].kind == NodeKind::user)
            out.push_back(static_cast<int>(i));
    return out;
}

// ----------------------------------------------------------------- VarMap

VarMap build_varmap(const NetworkSpec& spec, BroadcastMode mode) {
    VarMap vm;
    vm.mode = mode;
    vm.slots.assign(spec.nodes.size(), {});
    VarId next = 1;
    for (size_t t = 0; t < spec.nodes.size(); ++t) {
        NodeKind k = spec.constraint_class(static_cast<int>(t));
        if (k != NodeKind::general && k != NodeKind::routing && k != NodeKind::broadcast)
            continue;
        int ins = spec.in_degree(static_cast<int>(t));
        int outs = static_cast<int>(spec.out_edges[t].size());
        if (ins == 0 || outs == 0)
            continue;
        auto& table = vm.slots[t];
        table.assign(static_cast<size_t>(outs), std::vector<VarId>(static_cast<size_t>(ins), 0));
        for (int out = 0; out < outs; ++out) {
            for (int in = 0; in < ins; ++in) {
                if (k == NodeKind::broadcast && mode == BroadcastMode::identify && out > 0)
                    table[static_cast<size_t>(out)][static_cast<size_t>(in)] = table[0][static_cast<size_t>(in)];
                else
                    table[static_cast<size_t>(out)][static_cast<size_t>(in)] = next++;
            }
        }
    }
    vm.n = static_cast<int>(next - 1);
    return vm;
}

// ------------------------------------------------------ encoding vectors

std::vector<std::vector<BoolPoly>> global_encoding_vectors(const NetworkSpec& spec,
                                                           const VarMap& vm) {
    std::vector<std::vector<BoolPoly>> columns(spec.edges.size(),
                                               std::vector<BoolPoly>(static_cast<size_t>(spec.omega)));
    for (int t : spec.topo_order()) {
        const auto& outs = spec.out_edges[static_cast<size_t>(t)];
        if (outs.empty())
            continue;
        NodeKind k = spec.constraint_class(t);
        bool is_source = t == spec.source;
        int ins = spec.in_degree(t);
        for (size_t oi = 0; oi < outs.size(); ++oi) {
            auto& col = columns[static_cast<size_t>(outs[oi])];
            for (int r = 0; r < spec.omega; ++r)
                col[static_cast<size_t>(r)] = BoolPoly::zero();
            for (int ii = 0; ii < ins; ++ii) {
                BoolPoly coeff;
                if (k == NodeKind::constant) {
                    coeff = BoolPoly::constant(
                        spec.node_at(t).matrix[static_cast<size_t>(ii)][oi] != 0);
                } else {
                    coeff = BoolPoly::var(vm.at(t, static_cast<int>(oi), ii));
                }
                if (coeff.is_zero())
                    continue;
                if (is_source && ii < spec.omega) {
                    // Imaginary input ii injects basis vector e_{ii+1}.
                    col[static_cast<size_t>(ii)] += coeff;
                } else {
                    int slot = is_source ? ii - spec.omega : ii;
                    const auto& src =
                        columns[static_cast<size_t>(spec.in_edges[static_cast<size_t>(t)][static_cast<size_t>(slot)])];
                    for (int r = 0; r < spec.omega; ++r)
                        col[static_cast<size_t>(r)] += coeff * src[static_cast<size_t>(r)];
                }
            }
        }
    }
    return columns;
}

SymbolicMatrix receive_matrix(const NetworkSpec& spec,
                              const std::vector<std::vector<BoolPoly>>& gev, int user) {
    if (spec.node_at(user).kind != NodeKind::user)
        throw DomainError("receive matrix requested for a non-user node");
    const auto& ins = spec.in_edges[static_cast<size_t>(user)];
    SymbolicMatrix m(spec.omega, static_cast<int>(ins.size()));
    for (size_t j = 0; j < ins.size(); ++j)
        for (int r = 0; r < spec.omega; ++r)
            m.at(r, static_cast<int>(j)) = gev[static_cast<size_t>(ins[j])][static_cast<size_t>(r)];
    return m;
}

SymbolicMatrix receive_matrix(const NetworkSpec& spec, const VarMap& vm, int user) {
    return receive_matrix(spec, global_encoding_vectors(spec, vm), user);
}

std::vector<BoolPoly> rank_constraint_polys(const SymbolicMatrix& m, int zeta_base) {
    std::vector<BoolPoly> out;
    out.reserve(static_cast<size_t>(m.cols));
    for (int j = 0; j < m.cols; ++j) {
        BoolPoly p;
        for (int k = 0; k < m.rows; ++k)
            p += BoolPoly::var(static_cast<VarId>(zeta_base + k + 1)) * m.at(k, j);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<BoolPoly> routing_constraints(const NetworkSpec& spec, const VarMap& vm) {
    std::vector<BoolPoly> out;
    for (size_t t = 0; t < spec.nodes.size(); ++t) {
        if (spec.constraint_class(static_cast<int>(t)) != NodeKind::routing || !vm.optimized(static_cast<int>(t)))
            continue;
        int ins = spec.in_degree(static_cast<int>(t));
        int outs = static_cast<int>(spec.out_edges[t].size());
        for (int e = 0; e < outs; ++e) {
            for (int i = 0; i < ins; ++i)
                for (int j = i + 1; j < ins; ++j)
                    out.push_back(BoolPoly::var(vm.at(static_cast<int>(t), e, i)) *
                                  BoolPoly::var(vm.at(static_cast<int>(t), e, j)));
            BoolPoly sum = BoolPoly::one();
            for (int i = 0; i < ins; ++i)
                sum += BoolPoly::var(vm.at(static_cast<int>(t), e, i));
            out.push_back(std::move(sum));
        }
    }
    return out;
}

std::vector<BoolPoly> broadcast_constraints(const NetworkSpec& spec, const VarMap& vm) {
    std::vector<BoolPoly> out;
    if (vm.mode == BroadcastMode::identify)
        return out; // equalities already folded into the variable map
    for (size_t t = 0; t < spec.nodes.size(); ++t) {
        if (spec.constraint_class(static_cast<int>(t)) != NodeKind::broadcast || !vm.optimized(static_cast<int>(t)))
            continue;
        int ins = spec.in_degree(static_cast<int>(t));
        int outs = static_cast<int>(spec.out_edges[t].size());
        for (int i = 0; i < ins; ++i)
            for (int e = 0; e + 1 < outs; ++e)
                out.push_back(BoolPoly::var(vm.at(static_cast<int>(t), e, i)) +
                              BoolPoly::var(vm.at(static_cast<int>(t), e + 1, i)));
    }
    return out;
}

PolySystem build_lnc_problem(const NetworkSpec& spec, BroadcastMode mode) {
    VarMap vm = build_varmap(spec, mode);
    auto gev = global_encoding_vectors(spec, vm);
    std::vector<RankBlock> blocks;
    for (int u : spec.user_nodes()) {
        if (static_cast<int>(spec.in_edges[static_cast<size_t>(u)].size()) < spec.omega)
            throw InfeasibleError("user " + spec.node_at(u).id +
                                  " has fewer inputs than source symbols");
        SymbolicMatrix m = receive_matrix(spec, gev, u);
        blocks.push_back(RankBlock{spec.omega, rank_constraint_polys(m, vm.n)});
    }
    std::vector<BoolPoly> nonrank = routing_constraints(spec, vm);
    for (BoolPoly& b : broadcast_constraints(spec, vm))
        nonrank.push_back(std::move(b));
    return PolySystem(vm.n, std::move(blocks), std::move(nonrank));
}

BigInt search_space_size(const NetworkSpec& spec) {
    BigInt total = 1;
    for (size_t t = 0; t < spec.nodes.size(); ++t) {
        int ins = spec.in_degree(static_cast<int>(t));
        int outs = static_cast<int>(spec.out_edges[t].size());
        if (ins == 0 || outs == 0)
            continue;
        switch (spec.constraint_class(static_cast<int>(t))) {
        case NodeKind::general:
            total *= pow2(static_cast<unsigned>(ins * outs));
            break;
        case NodeKind::routing: {
            BigInt options = 1;
            for (int e = 0; e < outs; ++e)
                options *= ins;
            total *= options;
            break;
        }
        case NodeKind::broadcast:
            total *= pow2(static_cast<unsigned>(ins));
            break;
        default:
            break;
        }
    }
    return total;
}

// -------------------------------------------------------------------- LRC

void LrcSpec::validate() const {
    if (!(omega >= 1 && omega <= eta && eta <= ell))
        throw ParseError("need 1 <= omega <= eta <= ell");
    if (surviving.empty())
        throw ParseError("surviving set must not be empty");
    int prev = 0;
    for (int a : surviving) {
        if (a <= prev || a > ell)
            throw ParseError("surviving set must be a sorted subset of 1..ell");
        prev = a;
    }
    if (source_matrix.size() != static_cast<size_t>(omega))
        throw ParseError("source matrix must have omega rows");
    for (const auto& row : source_matrix)
        if (row.size() != static_cast<size_t>(ell))
            throw ParseError("source matrix must have ell columns");
}

std::vector<std::vector<int>> eta_subsets(int ell, int eta) {
    std::vector<std::vector<int>> out;
    std::vector<int> pick(static_cast<size_t>(eta));
    for (int i = 0; i < eta; ++i)
        pick[static_cast<size_t>(i)] = i + 1;
    while (true) {
        out.push_back(pick);
        int i = eta - 1;
        while (i >= 0 && pick[static_cast<size_t>(i)] == ell - (eta - 1 - i))
            --i;
        if (i < 0)
            break;
        ++pick[static_cast<size_t>(i)];
        for (int j = i + 1; j < eta; ++j)
            pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
    }
    return out;
}

NetworkSpec build_lrc_layered_graph(const LrcSpec& lrc) {
    lrc.validate();
    NetworkSpec spec;
    spec.omega = lrc.omega;

    std::vector<bool> alive(static_cast<size_t>(lrc.ell) + 1, false);
    for (int a : lrc.surviving)
        alive[static_cast<size_t>(a)] = true;

    // Node order: s, v_1..v_ell, repair nodes t_j (failed positions,
    // ascending), then one user per eta-subset of current units.
    Node s;
    s.id = "s";
    s.kind = NodeKind::source;
    s.source_class = NodeKind::constant;
    s.matrix = lrc.source_matrix;
    spec.nodes.push_back(std::move(s));

    std::vector<int> unit_node(static_cast<size_t>(lrc.ell) + 1, -1);
    for (int i = 1; i <= lrc.ell; ++i) {
        Node v;
        v.id = "v" + std::to_string(i);
        v.kind = NodeKind::constant; // all-one rows filled below
        spec.nodes.push_back(std::move(v));
        if (alive[static_cast<size_t>(i)])
            unit_node[static_cast<size_t>(i)] = static_cast<int>(spec.nodes.size()) - 1;
    }
    std::vector<int> failed;
    for (int i = 1; i <= lrc.ell; ++i)
        if (!alive[static_cast<size_t>(i)])
            failed.push_back(i);
    for (int j : failed) {
        Node t;
        t.id = "t" + std::to_string(j);
        t.kind = NodeKind::broadcast;
        spec.nodes.push_back(std::move(t));
        unit_node[static_cast<size_t>(j)] = static_cast<int>(spec.nodes.size()) - 1;
    }
    auto subsets = eta_subsets(lrc.ell, lrc.eta);
    int first_user = static_cast<int>(spec.nodes.size());
    for (size_t k = 0; k < subsets.size(); ++k) {
        Node u;
        u.id = "u" + std::to_string(k + 1);
        u.kind = NodeKind::user;
        spec.nodes.push_back(std::move(u));
    }

    for (int i = 1; i <= lrc.ell; ++i)
        spec.edges.emplace_back(0, i);
    for (int j : failed) {
        int tj = unit_node[static_cast<size_t>(j)];
        for (int a : lrc.surviving)
            spec.edges.emplace_back(a, tj); // node index of v_a is a
    }
    for (size_t k = 0; k < subsets.size(); ++k)
        for (int pos : subsets[k])
            spec.edges.emplace_back(unit_node[static_cast<size_t>(pos)], first_user + static_cast<int>(k));

    // Surviving units re-broadcast their stored symbol on every output.
    std::vector<size_t> out_degree(spec.nodes.size(), 0);
    for (auto [a, b] : spec.edges)
        ++out_degree[static_cast<size_t>(a)];
    for (int a : lrc.surviving) {
        Node& v = spec.nodes[static_cast<size_t>(a)];
        v.matrix.assign(1, std::vector<uint8_t>(out_degree[static_cast<size_t>(a)], 1));
    }
    spec.finalize();
    return spec;
}

PolySystem build_lrc_problem(const LrcSpec& lrc, BroadcastMode mode) {
    return build_lnc_problem(build_lrc_layered_graph(lrc), mode);
}

} // namespace f2cs
