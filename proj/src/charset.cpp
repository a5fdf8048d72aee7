#include "f2cs/charset.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>

#include "branch_pool.hpp"

namespace f2cs {

// ----------------------------------------------------------------- CharSet

CharSet::CharSet(int total_vars, int n_split) : total_vars_(total_vars), n_split_(n_split) {
    if (total_vars < 0 || n_split < 0 || n_split > total_vars)
        throw DomainError("invalid charset context");
}

CharSet CharSet::from_entries(std::vector<CharSetEntry> entries, int total_vars, int n_split) {
    std::sort(entries.begin(), entries.end(),
              [](const CharSetEntry& a, const CharSetEntry& b) { return a.lead < b.lead; });
    CharSet cs(total_vars, n_split);
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i > 0 && entries[i].lead == entries[i - 1].lead)
            throw DomainError("duplicate leading variable x" + std::to_string(entries[i].lead));
        if (entries[i].lead > static_cast<VarId>(total_vars))
            throw DomainError("leading variable outside context");
        if (entries[i].tail.leading_or_zero() >= entries[i].lead)
            throw DomainError("tail of x" + std::to_string(entries[i].lead) +
                              " mentions a variable at or above its lead");
    }
    // Normalize: tails may only mention free variables. Earlier equations
    // are already normalized when processed in ascending lead order.
    for (size_t i = 0; i < entries.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            if (entries[i].tail.contains_var(entries[j].lead))
                entries[i].tail = entries[i].tail.substituted(entries[j].lead, entries[j].tail);
        }
    }
    cs.entries_ = std::move(entries);
    return cs;
}

CharSet CharSet::from_polys(const std::vector<BoolPoly>& polys, int total_vars, int n_split) {
    std::vector<CharSetEntry> entries;
    for (const BoolPoly& p : polys) {
        if (p.is_zero())
            continue;
        if (p.is_one())
            throw DomainError("contradictory equation 1 = 0 in charset");
        CanonicalForm cf = p.canonical_form();
        if (!cf.initial.is_one())
            throw DomainError("non-monic equation in charset: " + p.str());
        entries.push_back({cf.leading_var, cf.tail});
    }
    return from_entries(std::move(entries), total_vars, n_split);
}

std::vector<VarId> CharSet::fvs() const {
    std::vector<VarId> out;
    size_t k = 0;
    for (VarId v = 1; v <= static_cast<VarId>(total_vars_); ++v) {
        if (k < entries_.size() && entries_[k].lead == v) {
            ++k;
            continue;
        }
        out.push_back(v);
    }
    return out;
}

const BoolPoly* CharSet::tail_of(VarId lead) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), lead,
                               [](const CharSetEntry& e, VarId v) { return e.lead < v; });
    if (it != entries_.end() && it->lead == lead)
        return &it->tail;
    return nullptr;
}

std::vector<BoolPoly> CharSet::equation_polys() const {
    std::vector<BoolPoly> out;
    out.reserve(entries_.size());
    for (const CharSetEntry& e : entries_)
        out.push_back(BoolPoly::var(e.lead) + e.tail);
    return out;
}

bool CharSet::is_admissible() const {
    for (VarId v = static_cast<VarId>(n_split_) + 1; v <= static_cast<VarId>(total_vars_); ++v) {
        const BoolPoly* tail = tail_of(v);
        if (tail == nullptr || !tail->is_zero())
            return false;
    }
    return true;
}

CharSet CharSet::truncated() const {
    CharSet cs(n_split_, n_split_);
    for (const CharSetEntry& e : entries_) {
        if (e.lead <= static_cast<VarId>(n_split_))
            cs.entries_.push_back(e);
    }
    return cs;
}

void CharSet::for_each_zero(uint64_t max_points,
                            const std::function<void(const std::vector<uint8_t>&)>& fn) const {
    if (df() >= 63 || (uint64_t(1) << df()) > max_points)
        throw BudgetError("enumeration too large: 2^" + std::to_string(df()) + " zeros");
    std::vector<VarId> free = fvs();
    std::vector<uint8_t> point(static_cast<size_t>(total_vars_), 0);
    std::vector<uint64_t> packed((static_cast<size_t>(total_vars_) + 63) / 64, 0);
    uint64_t count = uint64_t(1) << df();
    for (uint64_t mask = 0; mask < count; ++mask) {
        std::fill(packed.begin(), packed.end(), 0);
        for (size_t i = 0; i < free.size(); ++i) {
            uint8_t bit = static_cast<uint8_t>((mask >> i) & 1);
            point[free[i] - 1] = bit;
            if (bit)
                packed[(free[i] - 1) / 64] |= uint64_t(1) << ((free[i] - 1) % 64);
        }
        for (const CharSetEntry& e : entries_) {
            uint8_t bit = e.tail.eval(packed) ? 1 : 0;
            point[e.lead - 1] = bit;
            if (bit)
                packed[(e.lead - 1) / 64] |= uint64_t(1) << ((e.lead - 1) % 64);
            else
                packed[(e.lead - 1) / 64] &= ~(uint64_t(1) << ((e.lead - 1) % 64));
        }
        fn(point);
    }
}

std::vector<std::vector<uint8_t>> CharSet::enumerate_zeros(uint64_t max_points) const {
    std::vector<std::vector<uint8_t>> out;
    for_each_zero(max_points, [&out](const std::vector<uint8_t>& p) { out.push_back(p); });
    return out;
}

bool CharSet::contains_zero(std::span<const uint64_t> packed) const {
    for (const CharSetEntry& e : entries_) {
        bool lead_bit = false;
        size_t w = (e.lead - 1) / 64;
        if (w < packed.size())
            lead_bit = (packed[w] >> ((e.lead - 1) % 64)) & 1;
        if (lead_bit != e.tail.eval(packed))
            return false;
    }
    return true;
}

std::string CharSet::text() const {
    std::string out;
    for (const CharSetEntry& e : entries_) {
        out += "x" + std::to_string(e.lead) + " + " + e.tail.str() + "\n";
    }
    return out;
}

std::strong_ordering CharSet::operator<=>(const CharSet& o) const {
    if (auto c = entries_.size() <=> o.entries_.size(); c != std::strong_ordering::equal)
        return c;
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (auto c = entries_[i].lead <=> o.entries_[i].lead; c != std::strong_ordering::equal)
            return c;
        if (auto c = entries_[i].tail <=> o.entries_[i].tail; c != std::strong_ordering::equal)
            return c;
    }
    if (auto c = total_vars_ <=> o.total_vars_; c != std::strong_ordering::equal)
        return c;
    return n_split_ <=> o.n_split_;
}

BigInt DecompositionResult::zero_total() const {
    BigInt total = 0;
    for (const CharSet& cs : charsets)
        total += cs.zero_count();
    return total;
}

// ------------------------------------------------- initial decomposition

std::pair<std::vector<BoolPoly>, std::vector<BoolPoly>> initial_decompose_poly(const BoolPoly& f) {
    CanonicalForm cf = f.canonical_form();
    std::vector<BoolPoly> t1{cf.initial, cf.tail};
    std::vector<BoolPoly> t2{cf.initial + BoolPoly::one(), BoolPoly::var(cf.leading_var) + cf.tail};
    return {std::move(t1), std::move(t2)};
}

SetSplit initial_decompose_set(const std::vector<BoolPoly>& q, const BoolPoly& f) {
    auto it = std::find(q.begin(), q.end(), f);
    if (it == q.end())
        throw DomainError("polynomial is not a member of the set");
    CanonicalForm cf = f.canonical_form();

    auto rest = [&] {
        std::vector<BoolPoly> r;
        bool skipped = false;
        for (const BoolPoly& g : q) {
            if (!skipped && g == f) {
                skipped = true;
                continue;
            }
            r.push_back(g);
        }
        return r;
    };

    SetSplit s;
    s.q0 = {cf.initial, cf.tail};
    for (BoolPoly& g : rest())
        s.q0.push_back(std::move(g));
    // Duplicates impose the same constraint twice; keep one.
    {
        std::vector<BoolPoly> dedup;
        for (BoolPoly& g : s.q0)
            if (std::find(dedup.begin(), dedup.end(), g) == dedup.end())
                dedup.push_back(std::move(g));
        s.q0 = std::move(dedup);
    }

    s.u = {BoolPoly::var(cf.leading_var) + cf.tail};

    std::vector<BoolPoly> pre = rest();
    pre.insert(pre.begin(), cf.initial + BoolPoly::one());
    for (BoolPoly& g : pre)
        s.q1.push_back(g.substituted(cf.leading_var, cf.tail));
    return s;
}

// ------------------------------------------------------------- selection

namespace detail {

struct RankedPoly {
    const BoolPoly* poly;
    std::array<long long, 4> key;
};

static std::array<long long, 4> order_key(const CanonicalForm& cf, CsOrder order) {
    if (order == CsOrder::first)
        return {cf.tdeg_init, cf.term_init, cf.term_tail, -static_cast<long long>(cf.leading_var)};
    return {-static_cast<long long>(cf.leading_var), cf.tdeg_init, cf.term_init, cf.term_tail};
}

// Picks the maximum under the given CS order; among order-equivalent
// candidates prefers the lowest leading variable, then the structurally
// smallest polynomial, so every run makes the same choice.
const BoolPoly* select_max(const std::vector<const BoolPoly*>& cands, CsOrder order) {
    const BoolPoly* best = nullptr;
    std::array<long long, 4> best_key{};
    for (const BoolPoly* p : cands) {
        auto key = order_key(p->canonical_form(), order);
        if (best == nullptr || key < best_key) {
            best = p;
            best_key = key;
        } else if (key == best_key) {
            VarId bc = best->cls(), pc = p->cls();
            if (pc < bc || (pc == bc && *p < *best))
                best = p;
        }
    }
    return best;
}

const BoolPoly* select_det0(const std::vector<const BoolPoly*>& cands) {
    const BoolPoly* best = nullptr;
    for (const BoolPoly* p : cands) {
        if (best == nullptr || p->cls() < best->cls() ||
            (p->cls() == best->cls() && *p < *best))
            best = p;
    }
    return best;
}

uint64_t hash_polys(const std::vector<const BoolPoly*>& polys) {
    uint64_t h = 1469598103934665603ull;
    for (const BoolPoly* p : polys) {
        for (char c : p->str()) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        h ^= 0xff;
        h *= 1099511628211ull;
    }
    return h;
}

const BoolPoly* select_poly(const std::vector<const BoolPoly*>& cands, ChoosePolicy policy,
                            uint64_t seed) {
    if (cands.empty())
        throw DomainError("no non-constant polynomial to choose from");
    switch (policy) {
    case ChoosePolicy::cso1:
        return select_max(cands, CsOrder::first);
    case ChoosePolicy::cso2:
        return select_max(cands, CsOrder::second);
    case ChoosePolicy::det0:
        return select_det0(cands);
    case ChoosePolicy::seeded: {
        // Seed from the candidate set itself, not the traversal schedule.
        std::mt19937_64 rng(seed ^ hash_polys(cands));
        return cands[rng() % cands.size()];
    }
    }
    return cands.front();
}

} // namespace detail

// ------------------------------------------------------------------- bcs

bool is_xt_linear(const std::vector<BoolPoly>& polys, int n, int v) {
    for (const BoolPoly& p : polys) {
        for (const Monomial& m : p.terms()) {
            int aux = 0;
            for (VarId var : m.vars()) {
                if (var > static_cast<VarId>(n + v))
                    return false;
                if (var > static_cast<VarId>(n))
                    ++aux;
            }
            if (aux > 1)
                return false;
        }
        // A polynomial mixing aux-free and aux-bearing terms is not a
        // left-kernel row (it would not be homogeneous in the aux block).
        bool has_aux = false, has_pure = false;
        for (const Monomial& m : p.terms()) {
            bool aux = m.leading() > static_cast<VarId>(n);
            (aux ? has_aux : has_pure) = true;
        }
        if (has_aux && has_pure)
            return false;
    }
    return true;
}

namespace {

// Sorted set semantics for a working system: duplicates collapse, zeros
// drop, contradiction reported via the return value.
bool normalize_system(std::vector<BoolPoly>& q) {
    std::sort(q.begin(), q.end());
    q.erase(std::unique(q.begin(), q.end()), q.end());
    std::erase_if(q, [](const BoolPoly& p) { return p.is_zero(); });
    for (const BoolPoly& p : q)
        if (p.is_one())
            return false;
    return true;
}

std::vector<const BoolPoly*> nonconstant_members(const std::vector<BoolPoly>& q) {
    std::vector<const BoolPoly*> out;
    for (const BoolPoly& p : q)
        if (!p.is_constant())
            out.push_back(&p);
    return out;
}

struct TriangularBuilder {
    std::vector<CharSetEntry> entries; // kept sorted by lead

    void substitute(VarId c, const BoolPoly& u) {
        for (CharSetEntry& e : entries)
            if (e.tail.contains_var(c))
                e.tail = e.tail.substituted(c, u);
    }
    void insert(VarId c, BoolPoly u) {
        auto it = std::lower_bound(entries.begin(), entries.end(), c,
                                   [](const CharSetEntry& e, VarId v) { return e.lead < v; });
        entries.insert(it, CharSetEntry{c, std::move(u)});
    }
    std::vector<BoolPoly> as_polys() const {
        std::vector<BoolPoly> out;
        out.reserve(entries.size());
        for (const CharSetEntry& e : entries)
            out.push_back(BoolPoly::var(e.lead) + e.tail);
        return out;
    }
};

} // namespace

DecompositionResult bcs(const std::vector<BoolPoly>& polys, int n, int v, const BcsConfig& cfg) {
    for (const BoolPoly& p : polys)
        if (p.leading_or_zero() > static_cast<VarId>(n + v))
            throw DomainError("polynomial exceeds declared variable context");

    DecompositionResult result;
    result.n = n;
    result.v = v;
    result.kind = (v >= 1 && is_xt_linear(polys, n, v)) ? DecompKind::zxocd : DecompKind::zocd;

    std::mutex emit_mu;
    std::vector<CharSet> emitted;
    std::atomic<bool> violation{false};

    auto process = [&](std::vector<BoolPoly> q, auto push) {
        if (!normalize_system(q))
            return; // contradiction
        TriangularBuilder tri;
        while (true) {
            if (q.empty()) {
                CharSet cs = CharSet::from_entries(tri.entries, n + v, n);
                std::lock_guard<std::mutex> lock(emit_mu);
                emitted.push_back(std::move(cs));
                return;
            }
            const BoolPoly* f = detail::select_poly(nonconstant_members(q), cfg.policy, cfg.seed);
            CanonicalForm cf = f->canonical_form();
            BoolPoly chosen = *f;
            std::erase(q, chosen);
            if (!cf.initial.is_one()) {
                if (cf.initial.leading_or_zero() > static_cast<VarId>(n))
                    violation = true;
                std::vector<BoolPoly> q0 = q;
                for (BoolPoly& t : tri.as_polys())
                    q0.push_back(std::move(t));
                q0.push_back(cf.initial);
                q0.push_back(cf.tail);
                if (normalize_system(q0))
                    push(std::move(q0));
                q.push_back(cf.initial + BoolPoly::one());
            }
            for (BoolPoly& g : q)
                if (g.contains_var(cf.leading_var))
                    g = g.substituted(cf.leading_var, cf.tail);
            tri.substitute(cf.leading_var, cf.tail);
            tri.insert(cf.leading_var, cf.tail);
            if (!normalize_system(q))
                return; // contradiction
        }
    };

    detail::run_branch_pool<std::vector<BoolPoly>>({polys}, cfg.workers, /*fifo=*/false, process);

    std::sort(emitted.begin(), emitted.end());
    result.charsets = std::move(emitted);
    if (cfg.initial_violation)
        *cfg.initial_violation = violation;
    return result;
}

// --------------------------------------------------------- orthogonality

OrthoReport verify_orthogonal(const DecompositionResult& r, OrthoMode mode, uint64_t budget) {
    OrthoReport report;
    BigInt total = r.zero_total();
    if (total > budget)
        throw BudgetError("orthogonality check needs " + total.str() + " points, budget " +
                          std::to_string(budget));

    std::map<std::vector<uint64_t>, int> seen;
    size_t proj_words = (static_cast<size_t>(r.n) + 63) / 64;
    for (size_t i = 0; i < r.charsets.size(); ++i) {
        const CharSet& cs = r.charsets[i];
        std::set<std::vector<uint64_t>> mine; // dedupe projections within one set
        cs.for_each_zero(budget, [&](const std::vector<uint8_t>& point) {
            if (!report.ok)
                return;
            std::vector<uint64_t> key;
            if (mode == OrthoMode::zero) {
                key.assign((point.size() + 63) / 64, 0);
                for (size_t b = 0; b < point.size(); ++b)
                    if (point[b])
                        key[b / 64] |= uint64_t(1) << (b % 64);
            } else {
                key.assign(proj_words, 0);
                for (size_t b = 0; b < static_cast<size_t>(r.n); ++b)
                    if (point[b])
                        key[b / 64] |= uint64_t(1) << (b % 64);
                if (!mine.insert(key).second)
                    return; // same projection from the same set
            }
            ++report.points_checked;
            auto [it, inserted] = seen.emplace(std::move(key), static_cast<int>(i));
            if (!inserted && it->second != static_cast<int>(i)) {
                report.ok = false;
                report.first = it->second;
                report.second = static_cast<int>(i);
                report.message = "overlap between charsets " + std::to_string(report.first) +
                                 " and " + std::to_string(report.second);
            }
        });
        if (!report.ok)
            return report;
    }
    return report;
}

} // namespace f2cs
