#ifndef F2CS_POLYSYSTEM_HPP
#define F2CS_POLYSYSTEM_HPP

#include <vector>

#include "f2cs/boolpoly.hpp"

namespace f2cs {

// Matrix with Boolean-polynomial entries, row-major.
struct SymbolicMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<BoolPoly> entries;

    SymbolicMatrix() = default;
    SymbolicMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<size_t>(r) * c) {}
    BoolPoly& at(int r, int c) { return entries[static_cast<size_t>(r) * cols + c]; }
    const BoolPoly& at(int r, int c) const { return entries[static_cast<size_t>(r) * cols + c]; }
};

// One full-row-rank requirement, encoded as the left-kernel row products:
// poly j is sum_k zeta_k * M[k][j] with the zeta block mapped to variables
// n+1 .. n+zeta_count. Requiring all zeros of the block to force zeta = 0
// is exactly full row rank of M.
struct RankBlock {
    int zeta_count = 0;         // alpha: number of matrix rows
    std::vector<BoolPoly> polys; // beta entries, one per column
};

// A full-rank problem over x_1..x_n: rank blocks plus plain polynomial
// constraints in x. Every block's zetas use the same local index window
// n+1..n+alpha_i; flatten() rebases them onto disjoint windows.
class PolySystem {
  public:
    PolySystem() = default;
    PolySystem(int n, std::vector<RankBlock> blocks, std::vector<BoolPoly> nonrank);

    int n() const { return n_; }
    const std::vector<RankBlock>& blocks() const { return blocks_; }
    const std::vector<BoolPoly>& nonrank() const { return nonrank_; }

    // Total zeta width of a single-shot flattening.
    int flat_v() const;
    // All constraints in one system; block i's zetas land at
    // n + offset_i + 1 .. n + offset_i + alpha_i.
    std::vector<BoolPoly> flatten() const;

    // One system per rank block (zetas at n+1..n+alpha_i); the plain
    // constraints ride along with the first part. A system with no blocks
    // yields a single part holding just the plain constraints.
    std::vector<PolySystem> parts() const;

    // Recover the symbolic matrix of a block from its kernel-row products.
    SymbolicMatrix block_matrix(int index) const;

  private:
    void validate() const;

    int n_ = 0;
    std::vector<RankBlock> blocks_;
    std::vector<BoolPoly> nonrank_;
};

} // namespace f2cs

#endif
