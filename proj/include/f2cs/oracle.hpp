#ifndef F2CS_ORACLE_HPP
#define F2CS_ORACLE_HPP

#include <optional>
#include <vector>

#include "f2cs/bcsfr.hpp"
#include "f2cs/coding.hpp"
#include "f2cs/polysystem.hpp"

// Brute-force ground truth, kept algorithmically independent of the
// decomposition engine: feasibility is decided by evaluating constraint
// matrices and running Gaussian elimination, never by charsets.
namespace f2cs::oracle {

// Bit-packed GF(2) matrix, 64 columns per word, row-major.
struct F2Matrix {
    int rows = 0;
    int cols = 0;
    size_t words_per_row = 0;
    std::vector<uint64_t> bits;

    F2Matrix() = default;
    F2Matrix(int r, int c);
    void set(int r, int c, bool v);
    bool get(int r, int c) const;
    uint64_t* row(int r) { return bits.data() + static_cast<size_t>(r) * words_per_row; }
    const uint64_t* row(int r) const { return bits.data() + static_cast<size_t>(r) * words_per_row; }
};

// Row rank by packed elimination.
int rank_f2(F2Matrix m);

// Independent slow path: rank = size of the largest nonsingular square
// submatrix, determinants by cofactor expansion. Only for tiny matrices.
int rank_by_minors(const F2Matrix& m);

// Evaluates a symbolic matrix at a packed x-assignment.
F2Matrix eval_matrix(const SymbolicMatrix& m, std::span<const uint64_t> xbits);

// Precomputed per-system feasibility test: all plain constraints vanish and
// every block matrix has full row rank at the point.
class RankChecker {
  public:
    explicit RankChecker(const PolySystem& p);
    bool feasible(std::span<const uint64_t> xbits) const;
    int n() const { return n_; }

  private:
    int n_;
    std::vector<SymbolicMatrix> mats_;
    std::vector<BoolPoly> nonrank_;
};

// Every feasible x over the full cube, as packed words (n <= 24 enforced).
std::vector<uint64_t> feasible_dense(const PolySystem& p, int max_n = 24);

// Enumerates only assignments consistent with the node classes (all
// matrices for general nodes, one input per output for routing nodes, one
// shared column for broadcast nodes) and keeps the feasible ones. The
// candidate space size equals search_space_size(spec). p must have been
// built from spec with the same broadcast mode. candidates_out, when given,
// receives the number of enumerated candidates.
std::vector<uint64_t> feasible_structured(const NetworkSpec& spec, BroadcastMode mode,
                                          const PolySystem& p, uint64_t budget,
                                          uint64_t* candidates_out = nullptr);

struct CompareReport {
    bool equal = false;
    bool count_match = false;
    BigInt oracle_count;
    BigInt cs_count;
    std::optional<uint64_t> missing_point; // feasible but absent from charsets
    std::optional<uint64_t> extra_point;   // covered by charsets but infeasible
    std::string message;
};

// Differential check of a decomposition against the brute-force feasible
// set (n <= 63 so points pack into one word).
CompareReport compare_oracle_vs_cs(const std::vector<uint64_t>& oracle_points,
                                   const FeasibleSetResult& result);

} // namespace f2cs::oracle

#endif
