#include "f2cs/bcsfr.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <iostream>
#include <mutex>
#include <thread>

#include "branch_pool.hpp"

namespace f2cs {

namespace detail {
// charset.cpp
const BoolPoly* select_poly(const std::vector<const BoolPoly*>& cands, ChoosePolicy policy,
                            uint64_t seed);
} // namespace detail

void BcsfrStats::absorb(const BcsfrStats& o) {
    branches += o.branches;
    emitted += o.emitted;
    pruned_tilde_one += o.pruned_tilde_one;
    pruned_level_gap += o.pruned_level_gap;
    pruned_contradiction += o.pruned_contradiction;
    discarded_inadmissible += o.discarded_inadmissible;
    initial_violation = initial_violation || o.initial_violation;
}

BigInt FeasibleSetResult::solution_count() const {
    BigInt total = 0;
    for (const CharSet& cs : charsets)
        total += cs.zero_count();
    return total;
}

const BoolPoly& choose(const std::vector<BoolPoly>& q, int mode) {
    std::vector<const BoolPoly*> cands;
    for (const BoolPoly& p : q)
        if (!p.is_constant())
            cands.push_back(&p);
    ChoosePolicy policy = mode == 1   ? ChoosePolicy::cso1
                          : mode == 2 ? ChoosePolicy::cso2
                                      : ChoosePolicy::det0;
    return *detail::select_poly(cands, policy, 0);
}

namespace {

bool normalize_system(std::vector<BoolPoly>& q) {
    std::sort(q.begin(), q.end());
    q.erase(std::unique(q.begin(), q.end()), q.end());
    std::erase_if(q, [](const BoolPoly& p) { return p.is_zero(); });
    for (const BoolPoly& p : q)
        if (p.is_one())
            return false;
    return true;
}

struct Triangular {
    std::vector<CharSetEntry> entries; // sorted by lead

    bool leads(VarId v) const {
        auto it = std::lower_bound(entries.begin(), entries.end(), v,
                                   [](const CharSetEntry& e, VarId x) { return e.lead < x; });
        return it != entries.end() && it->lead == v;
    }
    void substitute(VarId c, const BoolPoly& u) {
        for (CharSetEntry& e : entries)
            if (e.tail.contains_var(c))
                e.tail = e.tail.substituted(c, u);
    }
    void insert(VarId c, BoolPoly u) {
        auto it = std::lower_bound(entries.begin(), entries.end(), c,
                                   [](const CharSetEntry& e, VarId x) { return e.lead < x; });
        entries.insert(it, CharSetEntry{c, std::move(u)});
    }
    // Some auxiliary variable pinned to 1 can never become admissible.
    bool tilde_forced_one(int n) const {
        for (const CharSetEntry& e : entries)
            if (e.lead > static_cast<VarId>(n) && e.tail.is_one())
                return true;
        return false;
    }
    std::vector<BoolPoly> as_polys() const {
        std::vector<BoolPoly> out;
        out.reserve(entries.size());
        for (const CharSetEntry& e : entries)
            out.push_back(BoolPoly::var(e.lead) + e.tail);
        return out;
    }
    bool admissible(int n, int v) const {
        for (VarId k = static_cast<VarId>(n) + 1; k <= static_cast<VarId>(n + v); ++k) {
            auto it = std::lower_bound(entries.begin(), entries.end(), k,
                                       [](const CharSetEntry& e, VarId x) { return e.lead < x; });
            if (it == entries.end() || it->lead != k || !it->tail.is_zero())
                return false;
        }
        return true;
    }
    CharSet truncated(int n) const {
        std::vector<CharSetEntry> kept;
        for (const CharSetEntry& e : entries)
            if (e.lead <= static_cast<VarId>(n))
                kept.push_back(e);
        return CharSet::from_entries(std::move(kept), n, n);
    }
};

void substitute_all(std::vector<BoolPoly>& q, VarId c, const BoolPoly& u) {
    for (BoolPoly& g : q)
        if (g.contains_var(c))
            g = g.substituted(c, u);
}

// Initial equal to 1, i.e. the leading variable occurs alone in a single
// term. Terms are mask-descending, so any term containing the leading
// variable sorts first; degree 1 there settles it.
bool is_monic(const BoolPoly& g) {
    return !g.is_constant() && g.terms()[0].degree() == 1;
}

class BcsfrRun {
  public:
    BcsfrRun(int n, int v, const BcsfrConfig& cfg) : n_(n), v_(v), cfg_(cfg) {
        trace_ = cfg.trace ? (cfg.trace_out ? cfg.trace_out : &std::cerr) : nullptr;
    }

    FeasibleSetResult execute(std::vector<BoolPoly> initial) {
        detail::run_branch_pool<std::vector<BoolPoly>>(
            {std::move(initial)}, cfg_.workers, cfg_.branch_order == BranchOrder::breadth_first,
            [this](std::vector<BoolPoly> q, auto push) { process(std::move(q), push); });
        std::sort(emitted_.begin(), emitted_.end());
        FeasibleSetResult r;
        r.n = n_;
        r.charsets = std::move(emitted_);
        return r;
    }

    const BcsfrStats& stats() const { return stats_; }

  private:
    enum class End { completed, contradiction, tilde_one, level_gap };

    template <typename Push>
    void process(std::vector<BoolPoly> q, Push& push) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            ++stats_.branches;
        }
        Triangular tri;
        End end = run_branch(q, tri, push);
        std::lock_guard<std::mutex> lock(mu_);
        switch (end) {
        case End::contradiction:
            ++stats_.pruned_contradiction;
            trace_prune("contradiction");
            break;
        case End::tilde_one:
            ++stats_.pruned_tilde_one;
            trace_prune("tilde-one");
            break;
        case End::level_gap:
            ++stats_.pruned_level_gap;
            trace_prune("level-gap");
            break;
        case End::completed:
            if (tri.admissible(n_, v_)) {
                CharSet cs = tri.truncated(n_);
                if (trace_)
                    *trace_ << "EMIT df=" << cs.df() << "\n";
                ++stats_.emitted;
                emitted_.push_back(std::move(cs));
            } else {
                ++stats_.discarded_inadmissible;
            }
            break;
        }
    }

    template <typename Push>
    End run_branch(std::vector<BoolPoly>& q, Triangular& tri, Push& push) {
        if (!normalize_system(q))
            return End::contradiction;
        while (!q.empty()) {
            // Reduction by monic polynomials.
            while (true) {
                std::vector<const BoolPoly*> monic;
                for (const BoolPoly& g : q)
                    if (is_monic(g))
                        monic.push_back(&g);
                if (monic.empty())
                    break;
                BoolPoly f = *detail::select_poly(monic, cfg_.monic_policy, cfg_.seed);
                VarId c = f.cls();
                BoolPoly tail = f + BoolPoly::var(c);
                std::erase(q, f);
                substitute_all(q, c, tail);
                tri.substitute(c, tail);
                tri.insert(c, tail);
                if (!normalize_system(q))
                    return End::contradiction;
                if (tri.tilde_forced_one(n_))
                    return End::tilde_one;
            }
            if (q.empty())
                break;

            // Select the polynomial for initial decomposition.
            const BoolPoly* chosen = nullptr;
            std::vector<const BoolPoly*> low;
            for (const BoolPoly& g : q)
                if (g.cls() <= static_cast<VarId>(n_))
                    low.push_back(&g);
            if (!low.empty()) {
                chosen = detail::select_poly(low, ChoosePolicy::cso1, cfg_.seed);
            } else {
                int k = n_ + v_;
                while (k > n_) {
                    if (tri.leads(static_cast<VarId>(k))) {
                        --k;
                        continue;
                    }
                    std::vector<const BoolPoly*> level;
                    for (const BoolPoly& g : q)
                        if (g.cls() == static_cast<VarId>(k))
                            level.push_back(&g);
                    if (level.empty())
                        return End::level_gap;
                    chosen = detail::select_poly(level, ChoosePolicy::cso2, cfg_.seed);
                    break;
                }
                if (chosen == nullptr)
                    return End::level_gap; // all levels led yet q nonempty
            }

            BoolPoly f = *chosen;
            CanonicalForm cf = f.canonical_form();
            if (cfg_.enable_fast_monomial_path && cf.tail.is_one() && cf.initial.is_monomial()) {
                // (prod x_k) * x_c + 1 = 0 forces every factor and x_c to 1.
                std::erase(q, f);
                for (VarId k : cf.initial.terms()[0].vars()) {
                    if (k > static_cast<VarId>(n_))
                        return End::tilde_one;
                    substitute_all(q, k, BoolPoly::one());
                    tri.substitute(k, BoolPoly::one());
                    tri.insert(k, BoolPoly::one());
                }
            } else {
                assert(!cf.initial.is_one());
                if (cf.initial.leading_or_zero() > static_cast<VarId>(n_)) {
                    std::lock_guard<std::mutex> lock(mu_);
                    stats_.initial_violation = true;
                }
                if (trace_) {
                    std::lock_guard<std::mutex> lock(mu_);
                    *trace_ << "SPLIT var=" << cf.leading_var << " I=" << cf.initial.str() << "\n";
                }
                std::erase(q, f);
                if (!cf.tail.is_one()) {
                    // Branch for I = 0; skipped when U = 1 since {U} would
                    // be contradictory.
                    std::vector<BoolPoly> q0 = q;
                    for (BoolPoly& t : tri.as_polys())
                        q0.push_back(std::move(t));
                    q0.push_back(cf.initial);
                    q0.push_back(cf.tail);
                    if (normalize_system(q0))
                        push(std::move(q0));
                }
                q.push_back(cf.initial + BoolPoly::one());
            }
            substitute_all(q, cf.leading_var, cf.tail);
            tri.substitute(cf.leading_var, cf.tail);
            tri.insert(cf.leading_var, cf.tail);
            if (!normalize_system(q))
                return End::contradiction;
            if (tri.tilde_forced_one(n_))
                return End::tilde_one;
        }
        return End::completed;
    }

    void trace_prune(const char* reason) {
        if (trace_)
            *trace_ << "PRUNE reason=" << reason << "\n";
    }

    int n_, v_;
    BcsfrConfig cfg_;
    std::ostream* trace_ = nullptr;
    std::mutex mu_;
    std::vector<CharSet> emitted_;
    BcsfrStats stats_;
};

} // namespace

FeasibleSetResult bcsfr_flat(const std::vector<BoolPoly>& polys, int n, int v,
                             const BcsfrConfig& cfg, BcsfrStats* stats) {
    if (!is_xt_linear(polys, n, v))
        throw DomainError("system is not linear-homogeneous in its kernel variables; "
                          "full-rank semantics undefined");
    BcsfrRun run(n, v, cfg);
    FeasibleSetResult r = run.execute(polys);
    if (stats)
        stats->absorb(run.stats());
    return r;
}

FeasibleSetResult bcsfr(const PolySystem& p, const BcsfrConfig& cfg, BcsfrStats* stats) {
    return bcsfr_flat(p.flatten(), p.n(), p.flat_v(), cfg, stats);
}

FeasibleSetResult inc_bcsfr(std::span<const PolySystem> parts, const BcsfrConfig& cfg,
                            BcsfrStats* stats) {
    if (parts.empty())
        throw DomainError("incremental decomposition needs at least one part");
    int n = parts[0].n();
    for (const PolySystem& p : parts)
        if (p.n() != n)
            throw DomainError("parts disagree on the primary variable count");

    std::vector<CharSet> current{CharSet(n, n)}; // full space
    for (const PolySystem& part : parts) {
        std::vector<BoolPoly> base = part.flatten();
        int v = part.flat_v();
        std::vector<CharSet> next;
        std::mutex mu;
        BcsfrConfig inner = cfg;
        inner.workers = 1;

        auto refine = [&](const CharSet& seed) {
            std::vector<BoolPoly> polys = base;
            for (BoolPoly& e : seed.equation_polys())
                polys.push_back(std::move(e));
            BcsfrStats local;
            FeasibleSetResult sub = bcsfr_flat(polys, n, v, inner, &local);
            std::lock_guard<std::mutex> lock(mu);
            for (CharSet& cs : sub.charsets)
                next.push_back(std::move(cs));
            if (stats)
                stats->absorb(local);
        };

        if (cfg.workers <= 1 || current.size() <= 1) {
            for (const CharSet& seed : current)
                refine(seed);
        } else {
            std::atomic<size_t> cursor{0};
            auto worker = [&] {
                while (true) {
                    size_t i = cursor.fetch_add(1);
                    if (i >= current.size())
                        return;
                    refine(current[i]);
                }
            };
            std::vector<std::thread> threads;
            int nthreads = std::min<int>(cfg.workers, static_cast<int>(current.size()));
            threads.reserve(static_cast<size_t>(nthreads));
            for (int i = 0; i < nthreads; ++i)
                threads.emplace_back(worker);
            for (auto& t : threads)
                t.join();
        }

        std::sort(next.begin(), next.end());
        current = std::move(next);
        if (current.empty())
            break; // intersection already empty
    }

    FeasibleSetResult r;
    r.n = n;
    r.charsets = std::move(current);
    return r;
}

FeasibleSetResult inc_bcsfr(const PolySystem& p, const BcsfrConfig& cfg, BcsfrStats* stats) {
    std::vector<PolySystem> parts = p.parts();
    // Symbolically light parts first: nearly-constant blocks cut the space
    // down before the wide ones run, which keeps intermediate collections
    // small (and, in practice, the final one too).
    std::stable_sort(parts.begin(), parts.end(), [](const PolySystem& a, const PolySystem& b) {
        auto weight = [](const PolySystem& s) {
            size_t w = 0;
            for (const RankBlock& blk : s.blocks())
                for (const BoolPoly& f : blk.polys)
                    w += static_cast<size_t>(f.term_count());
            return w;
        };
        return weight(a) < weight(b);
    });
    return inc_bcsfr(std::span<const PolySystem>(parts), cfg, stats);
}

} // namespace f2cs
