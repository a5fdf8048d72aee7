#ifndef F2CS_BCSFR_HPP
#define F2CS_BCSFR_HPP

#include <cstdint>
#include <iosfwd>
#include <span>

#include "f2cs/charset.hpp"
#include "f2cs/polysystem.hpp"

namespace f2cs {

// Any pop order is sound (branches are independent); depth-first keeps the
// peak branch count low and is the default.
enum class BranchOrder { depth_first, breadth_first };

struct BcsfrConfig {
    // Selection among monic candidates in the reduction loop; the
    // algorithm's other two selection points are fixed (1st order for
    // primary-variable candidates, 2nd order in the level descent).
    ChoosePolicy monic_policy = ChoosePolicy::det0;
    uint64_t seed = 0;
    // Immediate elimination for polynomials of shape (prod x_k) * x_c + 1,
    // whose only consistent branch sets every factor to 1.
    bool enable_fast_monomial_path = true;
    BranchOrder branch_order = BranchOrder::depth_first;
    int workers = 1;
    bool trace = false;
    std::ostream* trace_out = nullptr; // defaults to stderr when tracing
};

struct BcsfrStats {
    uint64_t branches = 0;
    uint64_t emitted = 0;
    uint64_t pruned_tilde_one = 0;
    uint64_t pruned_level_gap = 0;
    uint64_t pruned_contradiction = 0;
    uint64_t discarded_inadmissible = 0;
    // Set if a selected initial ever mentioned an auxiliary variable
    // (cannot happen on left-kernel-linear inputs).
    bool initial_violation = false;

    void absorb(const BcsfrStats& o);
};

// Feasible set of a full-rank problem as pairwise zero-disjoint charsets in
// the primary variables only.
struct FeasibleSetResult {
    std::vector<CharSet> charsets;
    int n = 0;

    BigInt solution_count() const;
};

// Selection used at the algorithm's free choice points. Mode 1 picks the
// maximum under the 1st order, mode 2 under the 2nd order, mode 0 is the
// deterministic low-variable-first rule. Throws if q holds only constants.
const BoolPoly& choose(const std::vector<BoolPoly>& q, int mode);

// Full-rank decomposition of a flat left-kernel-linear system.
FeasibleSetResult bcsfr_flat(const std::vector<BoolPoly>& polys, int n, int v,
                             const BcsfrConfig& cfg = {}, BcsfrStats* stats = nullptr);

// Single-shot decomposition of the whole system.
FeasibleSetResult bcsfr(const PolySystem& p, const BcsfrConfig& cfg = {},
                        BcsfrStats* stats = nullptr);

// Incremental decomposition over systems sharing the primary variables:
// each round refines every charset of the previous round against the next
// part. Equals the intersection of the parts' feasible sets.
FeasibleSetResult inc_bcsfr(std::span<const PolySystem> parts, const BcsfrConfig& cfg = {},
                            BcsfrStats* stats = nullptr);

// Convenience: one part per rank block of p (plain constraints ride with
// the first part).
FeasibleSetResult inc_bcsfr(const PolySystem& p, const BcsfrConfig& cfg = {},
                            BcsfrStats* stats = nullptr);

} // namespace f2cs

#endif
