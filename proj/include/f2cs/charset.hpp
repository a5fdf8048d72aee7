#ifndef F2CS_CHARSET_HPP
#define F2CS_CHARSET_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "f2cs/bigint.hpp"
#include "f2cs/boolpoly.hpp"

namespace f2cs {

// Deterministic selection policy for the free "choose a polynomial" points
// of the decomposition algorithms. cso1/cso2 pick the maximum under the
// respective order; det0 picks lowest leading variable first; seeded draws
// from a per-branch RNG so results stay schedule-independent.
enum class ChoosePolicy { cso1, cso2, det0, seeded };

struct CharSetEntry {
    VarId lead;    // c_i
    BoolPoly tail; // U_i, a polynomial purely in the free variables

    bool operator==(const CharSetEntry& o) const = default;
};

// A monic triangular system {x_{c_i} + U_i} with strictly increasing
// leading indices, inside a context of total_vars variables of which the
// first n_split are the primary (x) variables.
class CharSet {
  public:
    CharSet(int total_vars, int n_split);

    // Validates monic triangular shape; tails that mention earlier led
    // variables are normalized away by substitution.
    static CharSet from_polys(const std::vector<BoolPoly>& polys, int total_vars, int n_split);
    static CharSet from_entries(std::vector<CharSetEntry> entries, int total_vars, int n_split);

    int size() const { return static_cast<int>(entries_.size()); }
    int total_vars() const { return total_vars_; }
    int n_split() const { return n_split_; }
    int df() const { return total_vars_ - size(); }
    std::vector<VarId> fvs() const;
    BigInt zero_count() const { return pow2(static_cast<unsigned>(df())); }

    const std::vector<CharSetEntry>& equations() const { return entries_; }
    const BoolPoly* tail_of(VarId lead) const;
    bool leads(VarId v) const { return tail_of(v) != nullptr; }

    // Equations as polynomials x_c + U, in increasing leading order.
    std::vector<BoolPoly> equation_polys() const;

    // True iff every auxiliary variable x_{n+j} is led with tail exactly 0.
    // For a context without auxiliary variables this is vacuously true.
    bool is_admissible() const;

    // Keep only equations led by primary variables; context shrinks to
    // n_split variables.
    CharSet truncated() const;

    // Emits every zero as a 0/1 vector of length total_vars, free variables
    // counted in ascending index order, low bit first. Throws BudgetError
    // if 2^df exceeds max_points.
    void for_each_zero(uint64_t max_points, const std::function<void(const std::vector<uint8_t>&)>& fn) const;
    std::vector<std::vector<uint8_t>> enumerate_zeros(uint64_t max_points = uint64_t(1) << 20) const;

    bool contains_zero(std::span<const uint64_t> packed) const;

    // One equation per line, "x<c> + <tail>".
    std::string text() const;

    std::strong_ordering operator<=>(const CharSet& o) const;
    bool operator==(const CharSet& o) const = default;

  private:
    std::vector<CharSetEntry> entries_; // increasing lead
    int total_vars_;
    int n_split_;
};

enum class DecompKind { zocd, zxocd, fss };

// The collection T* produced by a decomposition, with its variable context.
struct DecompositionResult {
    std::vector<CharSet> charsets;
    DecompKind kind = DecompKind::zocd;
    int n = 0;
    int v = 0;

    BigInt zero_total() const;
};

// Splits f = I*x_c + U into the branches {I, U} and {I+1, x_c + U}; their
// zero sets partition Zero(f).
std::pair<std::vector<BoolPoly>, std::vector<BoolPoly>> initial_decompose_poly(const BoolPoly& f);

struct SetSplit {
    std::vector<BoolPoly> q0; // {I, U} u (q \ {f})
    std::vector<BoolPoly> q1; // subs(x_c = U, {I+1} u (q \ {f}))
    std::vector<BoolPoly> u;  // {x_c + U}
};

// Set-level initial decomposition: Zero(q) = Zero(q0) u Zero(q1 u u),
// disjointly. f must be a member of q.
SetSplit initial_decompose_set(const std::vector<BoolPoly>& q, const BoolPoly& f);

struct BcsConfig {
    ChoosePolicy policy = ChoosePolicy::cso1;
    uint64_t seed = 0;
    int workers = 1;
    // Testing hook: records whether any selected initial mentioned an
    // auxiliary variable (none should for left-kernel-linear inputs).
    bool* initial_violation = nullptr;
};

// Zero-orthogonal characteristic decomposition of an arbitrary system by
// repeated initial decomposition. Kind is zxocd when the input is
// left-kernel-linear with v >= 1, zocd otherwise. Dead branches vanish; an
// empty input yields the single empty charset (full space).
DecompositionResult bcs(const std::vector<BoolPoly>& polys, int n, int v, const BcsConfig& cfg = {});

// True iff every polynomial is either purely in x_1..x_n or linear and
// homogeneous in x_{n+1}..x_{n+v} (every term has exactly one such factor).
bool is_xt_linear(const std::vector<BoolPoly>& polys, int n, int v);

enum class OrthoMode { zero, projection };

struct OrthoReport {
    bool ok = true;
    int first = -1, second = -1; // violating pair when !ok
    uint64_t points_checked = 0;
    std::string message;
};

// Desk-scale check that the members' zero sets (or their projections onto
// the primary variables) are pairwise disjoint. Total enumeration must fit
// in budget points or BudgetError is thrown.
OrthoReport verify_orthogonal(const DecompositionResult& r, OrthoMode mode, uint64_t budget);

} // namespace f2cs

#endif
