#ifndef F2CS_CODING_HPP
#define F2CS_CODING_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "f2cs/bigint.hpp"
#include "f2cs/polysystem.hpp"

namespace f2cs {

enum class NodeKind { source, general, routing, broadcast, constant, user };

struct Node {
    std::string id;
    NodeKind kind = NodeKind::general;
    // Constraint class of the source node (its local matrix may itself be
    // optimized, e.g. a source that can only route).
    NodeKind source_class = NodeKind::general;
    // Row-major 0/1 local matrix for constant nodes, |In| x |Out|.
    std::vector<std::vector<uint8_t>> matrix;
};

// A single-source multicast instance. Edge list positions fix the incoming
// and outgoing edge orderings at every node; the source's omega imaginary
// input edges precede its real inputs (it has none).
struct NetworkSpec {
    int omega = 0;
    std::vector<Node> nodes;
    std::vector<std::pair<int, int>> edges; // node indices

    // Filled by finalize().
    std::vector<std::vector<int>> in_edges;
    std::vector<std::vector<int>> out_edges;
    int source = -1;

    void finalize(); // derive adjacency, check shape (DAG, one source, ...)
    NodeKind constraint_class(int node) const;
    int in_degree(int node) const;
    const Node& node_at(int i) const { return nodes[static_cast<size_t>(i)]; }
    int find_node(const std::string& id) const;
    std::vector<int> topo_order() const;
    std::vector<int> user_nodes() const;
};

enum class BroadcastMode { identify, equations };

// Bijection from coefficient slots onto x_1..x_n. Slot (t, out, in) is the
// coefficient applied to t's in-th input when producing its out-th output;
// nodes are numbered in list order, outputs outer, inputs inner. Under
// identify mode the columns of a broadcast node share one variable set.
struct VarMap {
    int n = 0;
    BroadcastMode mode = BroadcastMode::identify;
    std::vector<std::vector<std::vector<VarId>>> slots; // [node][out][in]

    VarId at(int node, int out, int in) const {
        return slots[static_cast<size_t>(node)][static_cast<size_t>(out)][static_cast<size_t>(in)];
    }
    bool optimized(int node) const { return !slots[static_cast<size_t>(node)].empty(); }
};

VarMap build_varmap(const NetworkSpec& spec, BroadcastMode mode);

// Symbolic column carried by every edge, computed source-out in topological
// order; the source's imaginary inputs inject the standard basis.
std::vector<std::vector<BoolPoly>> global_encoding_vectors(const NetworkSpec& spec,
                                                           const VarMap& vm);

// omega x |In(u)| matrix of the columns entering user node u.
SymbolicMatrix receive_matrix(const NetworkSpec& spec, const VarMap& vm, int user);
SymbolicMatrix receive_matrix(const NetworkSpec& spec,
                              const std::vector<std::vector<BoolPoly>>& gev, int user);

// Kernel-row products for one full-row-rank requirement: the j-th output is
// sum_k x_{zeta_base+k} * m[k][j].
std::vector<BoolPoly> rank_constraint_polys(const SymbolicMatrix& m, int zeta_base);

// Each output of a routing node carries exactly one input: pairwise
// products vanish and the column sums to 1.
std::vector<BoolPoly> routing_constraints(const NetworkSpec& spec, const VarMap& vm);

// Broadcast columns are equal; in equations mode this materializes as
// consecutive column differences (identify mode encodes it in the VarMap).
std::vector<BoolPoly> broadcast_constraints(const NetworkSpec& spec, const VarMap& vm);

// Compile the instance: one rank block per user plus the node-class
// constraints. Throws InfeasibleError when a user has fewer inputs than
// omega (its matrix can never reach full row rank).
PolySystem build_lnc_problem(const NetworkSpec& spec, BroadcastMode mode = BroadcastMode::identify);

// Exhaustive-search space size: 2^(in*out) per general node, in^out per
// routing node, 2^in per broadcast node.
BigInt search_space_size(const NetworkSpec& spec);

// A repair-and-access instance: ell storage units, eta-subset access,
// surviving set A, fixed omega x ell source combination matrix.
struct LrcSpec {
    int ell = 0;
    int eta = 0;
    int omega = 0;
    std::vector<int> surviving; // sorted, 1-based positions
    std::vector<std::vector<uint8_t>> source_matrix;

    void validate() const;
};

// Layered DAG: source -> storage units -> repair nodes -> one user per
// eta-subset of the current units. Repair nodes are broadcast nodes;
// surviving units re-emit their stored symbol (constant all-ones rows).
NetworkSpec build_lrc_layered_graph(const LrcSpec& lrc);

PolySystem build_lrc_problem(const LrcSpec& lrc, BroadcastMode mode = BroadcastMode::identify);

// Enumerates the eta-subsets of {1..ell} in lexicographic order; exposed
// because users of the layered graph need the same subset numbering.
std::vector<std::vector<int>> eta_subsets(int ell, int eta);

} // namespace f2cs

#endif
