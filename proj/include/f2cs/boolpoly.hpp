#ifndef F2CS_BOOLPOLY_HPP
#define F2CS_BOOLPOLY_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "f2cs/errors.hpp"

namespace f2cs {

// 1-based variable index. By convention x_1..x_n are the primary variables
// of a system and x_{n+1}..x_{n+v} are the auxiliary left-kernel variables;
// the split (n, v) is carried by the enclosing system, not by the index.
using VarId = uint32_t;

// A multilinear monomial over GF(2): a set of variable indices. The empty
// set is the constant monomial 1. Idempotence (x*x = x) holds by
// construction since a set cannot repeat a variable.
class Monomial {
  public:
    Monomial() = default; // constant 1

    static Monomial var(VarId v);
    static Monomial of(std::initializer_list<VarId> vs);

    bool is_constant() const { return words_.empty(); }
    bool contains(VarId v) const;
    int degree() const;
    // Highest variable index, 0 for the constant monomial.
    VarId leading() const;

    Monomial united(const Monomial& o) const;
    Monomial without(VarId v) const;

    std::vector<VarId> vars() const;
    // Value under a packed assignment (bit v-1 of word (v-1)/64).
    bool eval(std::span<const uint64_t> bits) const;

    // Numeric order of the underlying bit mask. Larger mask = higher
    // leading variable (ties broken on lower bits), so sorting descending
    // gives the canonical term order with the constant monomial last.
    std::strong_ordering operator<=>(const Monomial& o) const;
    bool operator==(const Monomial& o) const { return words_ == o.words_; }

  private:
    void set(VarId v);
    void trim();
    // bit (v-1) % 64 of words_[(v-1)/64] <=> variable v present;
    // trailing zero words are trimmed so equality is representation-free.
    boost::container::small_vector<uint64_t, 2> words_;
};

struct CanonicalForm;

enum class CsOrder { first, second };
enum class CsCompare { greater, less, equivalent };

// A Boolean polynomial in algebraic normal form: XOR of distinct monomials.
// Terms are kept strictly descending in the canonical monomial order, so
// printing, hashing and comparisons are deterministic. Values are immutable
// once built and safe to share across threads.
class BoolPoly {
  public:
    BoolPoly() = default; // zero

    static BoolPoly zero() { return BoolPoly(); }
    static BoolPoly one();
    static BoolPoly var(VarId v);
    static BoolPoly constant(bool b) { return b ? one() : zero(); }
    static BoolPoly monomial(Monomial m);
    // XOR-reduces an arbitrary term list (duplicates cancel mod 2).
    static BoolPoly from_terms(std::vector<Monomial> ts);

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_constant() const { return terms_.empty() || is_one(); }
    // Single term that is not the constant 1.
    bool is_monomial() const { return terms_.size() == 1 && !terms_[0].is_constant(); }

    int term_count() const { return static_cast<int>(terms_.size()); }
    int total_degree() const;
    const std::vector<Monomial>& terms() const { return terms_; }

    // Highest variable index; throws DomainError on constants
    // ("no leading variable").
    VarId cls() const;
    // As cls() but 0 for constants.
    VarId leading_or_zero() const;
    bool contains_var(VarId v) const;

    BoolPoly operator+(const BoolPoly& o) const;
    BoolPoly operator*(const BoolPoly& o) const;
    BoolPoly& operator+=(const BoolPoly& o);

    // Replace x_c by u everywhere and re-reduce. u must not contain x_c.
    BoolPoly substituted(VarId c, const BoolPoly& u) const;

    CanonicalForm canonical_form() const;

    // Checked evaluation; every variable occurring in the polynomial must
    // be present in the map.
    int evaluate(const std::map<VarId, int>& assignment) const;
    // Unchecked fast path over a packed assignment (missing words read 0).
    bool eval(std::span<const uint64_t> bits) const;

    std::string str() const;
    static BoolPoly parse(std::string_view text);

    // Total structural order (termwise canonical order, prefix-shorter
    // first); used for deterministic tie-breaking and container keys.
    std::strong_ordering operator<=>(const BoolPoly& o) const;
    bool operator==(const BoolPoly& o) const { return terms_ == o.terms_; }

  private:
    std::vector<Monomial> terms_; // strictly descending
};

// f = I*x_c + U with c the highest variable index in f; neither I nor U
// mentions x_c. The attached stats drive the two selection orders.
struct CanonicalForm {
    BoolPoly initial;  // I
    VarId leading_var; // c
    BoolPoly tail;     // U
    int tdeg_init;
    int term_init;
    int term_tail;
};

// Four-key lexicographic comparison between non-constant polynomials; the
// two orders are partial, so distinct polynomials can compare equivalent.
CsCompare compare_cso(const BoolPoly& f, const BoolPoly& g, CsOrder order);

} // namespace f2cs

#endif
