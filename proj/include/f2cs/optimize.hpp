#ifndef F2CS_OPTIMIZE_HPP
#define F2CS_OPTIMIZE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "f2cs/bcsfr.hpp"
#include "f2cs/polysystem.hpp"

namespace f2cs {

// Weighted-sum objective over the primary variables, summed over the
// integers (not GF(2)).
struct Objective {
    std::vector<int64_t> weights;

    static Objective unit(int n) { return Objective{std::vector<int64_t>(static_cast<size_t>(n), 1)}; }
    int64_t value(const std::vector<uint8_t>& point) const;
};

struct Optimum {
    int64_t value = 0;
    std::vector<std::vector<uint8_t>> witnesses; // capped
    BigInt witness_count;                        // exact
};

// Exact size of the disjoint union: sum of 2^df over the charsets.
BigInt count_solutions(const FeasibleSetResult& r);

// Exact global minimum by per-charset branch and bound over the free
// variables. Charsets wider than max_df raise BudgetError (export a WCNF
// instead); an empty result raises InfeasibleError.
Optimum minimize(const FeasibleSetResult& r, const Objective& obj, int max_df = 24,
                 size_t witness_cap = 1000);

struct CheckResult {
    bool feasible = false;
    int64_t value = 0;
};

// Feasibility (matrix ranks + plain constraints) and objective value of a
// concrete assignment.
CheckResult verify_assignment(const PolySystem& p, const std::vector<uint8_t>& point,
                              const Objective& obj);

// Weighted partial MaxSAT encoding of one charset: hard clauses force every
// equation (monomials get AND definitions, each equation becomes a parity
// chain), soft unit clauses pay w_i for setting x_i. Variables 1..n are the
// original ones; auxiliaries follow.
struct WcnfFormula {
    int orig_vars = 0;
    int total_vars = 0;
    int64_t top = 0;
    std::vector<std::vector<int>> hard;             // DIMACS literals
    std::vector<std::pair<int64_t, int>> soft;      // (weight, unit literal)

    std::string dimacs() const;
    bool hard_satisfied(const std::vector<uint8_t>& all_vars) const;
    // Extends an assignment of the original variables by the functional
    // definitions of the auxiliaries.
    std::vector<uint8_t> extend(const std::vector<uint8_t>& point) const;

    // definition records used by extend()
    struct AndDef {
        int var;
        std::vector<int> inputs;
    };
    struct XorDef {
        int var;
        int a, b;
    };
    std::vector<AndDef> and_defs;
    std::vector<XorDef> xor_defs;
};

WcnfFormula encode_charset_wcnf(const CharSet& cs, const Objective& obj);

// Writes <prefix>charset<k>.wcnf plus a variable-mapping sidecar per
// selected charset; returns the file names. target < 0 means all.
std::vector<std::string> export_wcnf(const FeasibleSetResult& r, const Objective& obj, int target,
                                     const std::string& prefix);

} // namespace f2cs

#endif
