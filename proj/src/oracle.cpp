#include "f2cs/oracle.hpp"

#include <algorithm>
#include <set>

namespace f2cs::oracle {

F2Matrix::F2Matrix(int r, int c)
    : rows(r), cols(c), words_per_row((static_cast<size_t>(c) + 63) / 64),
      bits(static_cast<size_t>(r) * ((static_cast<size_t>(c) + 63) / 64), 0) {}

void F2Matrix::set(int r, int c, bool v) {
    uint64_t& w = row(r)[static_cast<size_t>(c) / 64];
    uint64_t mask = uint64_t(1) << (c % 64);
    if (v)
        w |= mask;
    else
        w &= ~mask;
}

bool F2Matrix::get(int r, int c) const {
    return (row(r)[static_cast<size_t>(c) / 64] >> (c % 64)) & 1;
}

int rank_f2(F2Matrix m) {
    int rank = 0;
    for (int c = 0; c < m.cols && rank < m.rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r) {
            if (m.get(r, c)) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0)
            continue;
        if (pivot != rank) {
            for (size_t w = 0; w < m.words_per_row; ++w)
                std::swap(m.row(pivot)[w], m.row(rank)[w]);
        }
        for (int r = 0; r < m.rows; ++r) {
            if (r != rank && m.get(r, c)) {
                for (size_t w = 0; w < m.words_per_row; ++w)
                    m.row(r)[w] ^= m.row(rank)[w];
            }
        }
        ++rank;
    }
    return rank;
}

namespace {

// Determinant over GF(2) by cofactor expansion along the first row.
int det_f2(const std::vector<std::vector<int>>& a) {
    size_t k = a.size();
    if (k == 1)
        return a[0][0];
    int det = 0;
    for (size_t j = 0; j < k; ++j) {
        if (!a[0][j])
            continue;
        std::vector<std::vector<int>> minor(k - 1, std::vector<int>(k - 1));
        for (size_t r = 1; r < k; ++r) {
            size_t cc = 0;
            for (size_t c = 0; c < k; ++c) {
                if (c == j)
                    continue;
                minor[r - 1][cc++] = a[r][c];
            }
        }
        det ^= det_f2(minor);
    }
    return det;
}

} // namespace

int rank_by_minors(const F2Matrix& m) {
    int maxk = std::min(m.rows, m.cols);
    for (int k = maxk; k >= 1; --k) {
        // all k-subsets of rows and columns
        std::vector<int> rsel(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i)
            rsel[static_cast<size_t>(i)] = i;
        while (true) {
            std::vector<int> csel(static_cast<size_t>(k));
            for (int i = 0; i < k; ++i)
                csel[static_cast<size_t>(i)] = i;
            while (true) {
                std::vector<std::vector<int>> sub(static_cast<size_t>(k),
                                                  std::vector<int>(static_cast<size_t>(k)));
                for (int r = 0; r < k; ++r)
                    for (int c = 0; c < k; ++c)
                        sub[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                            m.get(rsel[static_cast<size_t>(r)], csel[static_cast<size_t>(c)]) ? 1 : 0;
                if (det_f2(sub))
                    return k;
                int i = k - 1;
                while (i >= 0 && csel[static_cast<size_t>(i)] == m.cols - k + i)
                    --i;
                if (i < 0)
                    break;
                ++csel[static_cast<size_t>(i)];
                for (int j = i + 1; j < k; ++j)
                    csel[static_cast<size_t>(j)] = csel[static_cast<size_t>(j - 1)] + 1;
            }
            int i = k - 1;
            while (i >= 0 && rsel[static_cast<size_t>(i)] == m.rows - k + i)
                --i;
            if (i < 0)
                break;
            ++rsel[static_cast<size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                rsel[static_cast<size_t>(j)] = rsel[static_cast<size_t>(j - 1)] + 1;
        }
    }
    return 0;
}

F2Matrix eval_matrix(const SymbolicMatrix& m, std::span<const uint64_t> xbits) {
    F2Matrix out(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c)
            out.set(r, c, m.at(r, c).eval(xbits));
    return out;
}

RankChecker::RankChecker(const PolySystem& p) : n_(p.n()), nonrank_(p.nonrank()) {
    for (size_t i = 0; i < p.blocks().size(); ++i)
        mats_.push_back(p.block_matrix(static_cast<int>(i)));
}

bool RankChecker::feasible(std::span<const uint64_t> xbits) const {
    for (const BoolPoly& h : nonrank_)
        if (h.eval(xbits))
            return false;
    for (const SymbolicMatrix& m : mats_) {
        if (m.cols < m.rows)
            return false;
        if (rank_f2(eval_matrix(m, xbits)) != m.rows)
            return false;
    }
    return true;
}

std::vector<uint64_t> feasible_dense(const PolySystem& p, int max_n) {
    if (p.n() > max_n)
        throw BudgetError("dense enumeration over 2^" + std::to_string(p.n()) +
                          " points exceeds the budget");
    RankChecker checker(p);
    std::vector<uint64_t> out;
    uint64_t total = uint64_t(1) << p.n();
    for (uint64_t x = 0; x < total; ++x) {
        uint64_t words[1] = {x};
        if (checker.feasible(words))
            out.push_back(x);
    }
    return out;
}

namespace {

// Per-node choice space for the structured walk.
struct NodeChoices {
    int node = -1;
    NodeKind cls = NodeKind::constant;
    int ins = 0, outs = 0;
    uint64_t count = 1;
};

} // namespace

std::vector<uint64_t> feasible_structured(const NetworkSpec& spec, BroadcastMode mode,
                                          const PolySystem& p, uint64_t budget,
                                          uint64_t* candidates_out) {
    VarMap vm = build_varmap(spec, mode);
    if (vm.n != p.n())
        throw DomainError("system was not built from this network/mode");
    if (vm.n > 63)
        throw BudgetError("structured enumeration supports at most 63 variables");
    BigInt space = search_space_size(spec);
    if (space > budget)
        throw BudgetError("structured space has " + space.str() + " candidates, budget " +
                          std::to_string(budget));

    std::vector<NodeChoices> dims;
    for (size_t t = 0; t < spec.nodes.size(); ++t) {
        if (!vm.optimized(static_cast<int>(t)))
            continue;
        NodeChoices nc;
        nc.node = static_cast<int>(t);
        nc.cls = spec.constraint_class(static_cast<int>(t));
        nc.ins = spec.in_degree(static_cast<int>(t));
        nc.outs = static_cast<int>(spec.out_edges[t].size());
        switch (nc.cls) {
        case NodeKind::general:
            nc.count = uint64_t(1) << (nc.ins * nc.outs);
            break;
        case NodeKind::routing: {
            nc.count = 1;
            for (int e = 0; e < nc.outs; ++e)
                nc.count *= static_cast<uint64_t>(nc.ins);
            break;
        }
        case NodeKind::broadcast:
            nc.count = uint64_t(1) << nc.ins;
            break;
        default:
            throw DomainError("unexpected optimized node class");
        }
        dims.push_back(nc);
    }

    RankChecker checker(p);
    std::vector<uint64_t> out;
    std::vector<uint64_t> odo(dims.size(), 0);
    uint64_t candidates = 0;
    uint64_t xword;
    std::span<uint64_t> xbits(&xword, 1);

    auto apply = [&](const NodeChoices& nc, uint64_t choice) {
        switch (nc.cls) {
        case NodeKind::general:
            for (int e = 0; e < nc.outs; ++e)
                for (int i = 0; i < nc.ins; ++i) {
                    if ((choice >> (e * nc.ins + i)) & 1)
                        xword |= uint64_t(1) << (vm.at(nc.node, e, i) - 1);
                }
            break;
        case NodeKind::routing: {
            uint64_t rest = choice;
            for (int e = 0; e < nc.outs; ++e) {
                int pick = static_cast<int>(rest % static_cast<uint64_t>(nc.ins));
                rest /= static_cast<uint64_t>(nc.ins);
                xword |= uint64_t(1) << (vm.at(nc.node, e, pick) - 1);
            }
            break;
        }
        case NodeKind::broadcast:
            for (int i = 0; i < nc.ins; ++i) {
                if ((choice >> i) & 1) {
                    // identify mode shares variables across columns, so
                    // setting every column is correct in both modes
                    for (int e = 0; e < nc.outs; ++e)
                        xword |= uint64_t(1) << (vm.at(nc.node, e, i) - 1);
                }
            }
            break;
        default:
            break;
        }
    };

    while (true) {
        xword = 0;
        for (size_t d = 0; d < dims.size(); ++d)
            apply(dims[d], odo[d]);
        ++candidates;
        if (checker.feasible(xbits))
            out.push_back(xword);
        size_t d = 0;
        for (; d < dims.size(); ++d) {
            if (++odo[d] < dims[d].count)
                break;
            odo[d] = 0;
        }
        if (d == dims.size())
            break;
    }
    if (candidates_out)
        *candidates_out = candidates;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CompareReport compare_oracle_vs_cs(const std::vector<uint64_t>& oracle_points,
                                   const FeasibleSetResult& result) {
    CompareReport rep;
    rep.oracle_count = oracle_points.size();
    rep.cs_count = result.solution_count();
    rep.count_match = rep.oracle_count == rep.cs_count;

    if (result.n > 63)
        throw BudgetError("differential comparison supports at most 63 variables");
    std::set<uint64_t> cs_points;
    for (const CharSet& cs : result.charsets) {
        cs.for_each_zero(uint64_t(1) << 26, [&](const std::vector<uint8_t>& point) {
            uint64_t w = 0;
            for (size_t b = 0; b < point.size(); ++b)
                if (point[b])
                    w |= uint64_t(1) << b;
            cs_points.insert(w);
        });
    }
    std::set<uint64_t> oracle_set(oracle_points.begin(), oracle_points.end());
    rep.equal = oracle_set == cs_points;
    if (!rep.equal) {
        for (uint64_t p : oracle_set) {
            if (!cs_points.count(p)) {
                rep.missing_point = p;
                break;
            }
        }
        for (uint64_t p : cs_points) {
            if (!oracle_set.count(p)) {
                rep.extra_point = p;
                break;
            }
        }
        rep.message = "feasible sets differ";
    } else {
        rep.message = "feasible sets agree (" + rep.oracle_count.str() + " points)";
    }
    return rep;
}

} // namespace f2cs::oracle
