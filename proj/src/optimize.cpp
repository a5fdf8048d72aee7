#include "f2cs/optimize.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>

#include "f2cs/oracle.hpp"

namespace f2cs {

int64_t Objective::value(const std::vector<uint8_t>& point) const {
    if (point.size() != weights.size())
        throw DomainError("assignment length does not match objective arity");
    int64_t v = 0;
    for (size_t i = 0; i < point.size(); ++i)
        if (point[i])
            v += weights[i];
    return v;
}

BigInt count_solutions(const FeasibleSetResult& r) { return r.solution_count(); }

namespace {

// Minimum objective over one charset's zeros. Free variables are explored
// heaviest-first with zeros tried first, pruning once the partial weight of
// the free part reaches the bound (tail contributions are nonnegative).
struct CharSetOptimizer {
    const CharSet& cs;
    const Objective& obj;
    std::vector<VarId> order; // free vars, heaviest first
    std::vector<uint64_t> packed;
    int64_t best;

    CharSetOptimizer(const CharSet& c, const Objective& o) : cs(c), obj(o) {
        order = c.fvs();
        std::sort(order.begin(), order.end(), [&](VarId a, VarId b) {
            int64_t wa = obj.weights[a - 1], wb = obj.weights[b - 1];
            return wa != wb ? wa > wb : a < b;
        });
        packed.assign((static_cast<size_t>(c.total_vars()) + 63) / 64, 0);
    }

    void set_bit(VarId v, bool b) {
        uint64_t mask = uint64_t(1) << ((v - 1) % 64);
        if (b)
            packed[(v - 1) / 64] |= mask;
        else
            packed[(v - 1) / 64] &= ~mask;
    }

    int64_t leaf_value() {
        int64_t total = 0;
        for (VarId v : order) {
            size_t w = (v - 1) / 64;
            if ((packed[w] >> ((v - 1) % 64)) & 1)
                total += obj.weights[v - 1];
        }
        for (const CharSetEntry& e : cs.equations()) {
            bool bit = e.tail.eval(packed);
            set_bit(e.lead, bit);
            if (bit)
                total += obj.weights[e.lead - 1];
        }
        return total;
    }

    void search(size_t depth, int64_t partial, int64_t bound,
                const std::function<void(int64_t, const std::vector<uint64_t>&)>& on_leaf) {
        if (partial > bound)
            return;
        if (depth == order.size()) {
            int64_t total = leaf_value();
            if (total <= bound)
                on_leaf(total, packed);
            return;
        }
        VarId v = order[depth];
        set_bit(v, false);
        search(depth + 1, partial, bound, on_leaf);
        set_bit(v, true);
        search(depth + 1, partial + obj.weights[v - 1], bound, on_leaf);
        set_bit(v, false);
    }
};

std::vector<uint8_t> unpack(const std::vector<uint64_t>& packed, int nvars) {
    std::vector<uint8_t> out(static_cast<size_t>(nvars));
    for (int i = 0; i < nvars; ++i)
        out[static_cast<size_t>(i)] = (packed[static_cast<size_t>(i) / 64] >> (i % 64)) & 1;
    return out;
}

} // namespace

Optimum minimize(const FeasibleSetResult& r, const Objective& obj, int max_df,
                 size_t witness_cap) {
    if (r.charsets.empty())
        throw InfeasibleError("infeasible: the feasible set is empty");
    if (static_cast<int>(obj.weights.size()) != r.n)
        throw DomainError("objective arity does not match the system");
    for (const auto& w : obj.weights)
        if (w < 0)
            throw DomainError("objective weights must be nonnegative");
    for (const CharSet& cs : r.charsets)
        if (cs.df() > max_df)
            throw BudgetError("charset has " + std::to_string(cs.df()) +
                              " free variables, above the exact-search bound " +
                              std::to_string(max_df) + "; export a WCNF instead");

    // Pass 1: global minimum.
    int64_t best = std::numeric_limits<int64_t>::max();
    for (const CharSet& cs : r.charsets) {
        CharSetOptimizer opt(cs, obj);
        opt.search(0, 0, best == std::numeric_limits<int64_t>::max() ? best : best - 1,
                   [&](int64_t v, const std::vector<uint64_t>&) { best = std::min(best, v); });
    }

    // Pass 2: exact witness count (disjoint charsets, so plain summation).
    Optimum out;
    out.value = best;
    out.witness_count = 0;
    for (const CharSet& cs : r.charsets) {
        CharSetOptimizer opt(cs, obj);
        opt.search(0, 0, best, [&](int64_t v, const std::vector<uint64_t>& packed) {
            if (v != best)
                return;
            out.witness_count += 1;
            if (out.witnesses.size() < witness_cap)
                out.witnesses.push_back(unpack(packed, r.n));
        });
    }
    return out;
}

CheckResult verify_assignment(const PolySystem& p, const std::vector<uint8_t>& point,
                              const Objective& obj) {
    if (static_cast<int>(point.size()) != p.n())
        throw DomainError("assignment length does not match the system");
    std::vector<uint64_t> packed((point.size() + 63) / 64, 0);
    for (size_t i = 0; i < point.size(); ++i)
        if (point[i])
            packed[i / 64] |= uint64_t(1) << (i % 64);
    oracle::RankChecker checker(p);
    CheckResult res;
    res.feasible = checker.feasible(packed);
    res.value = obj.value(point);
    return res;
}

// ------------------------------------------------------------------ WCNF

namespace {

void emit_xor3(std::vector<std::vector<int>>& hard, int p, int q, int r) {
    // p xor q xor r = 0
    hard.push_back({p, q, -r});
    hard.push_back({p, -q, r});
    hard.push_back({-p, q, r});
    hard.push_back({-p, -q, -r});
}

} // namespace

WcnfFormula encode_charset_wcnf(const CharSet& cs, const Objective& obj) {
    if (static_cast<int>(obj.weights.size()) != cs.total_vars())
        throw DomainError("objective arity does not match the charset context");
    WcnfFormula f;
    f.orig_vars = cs.total_vars();
    int next = f.orig_vars + 1;
    std::map<std::vector<VarId>, int> and_cache;

    auto monomial_lit = [&](const Monomial& m) -> int {
        std::vector<VarId> vs = m.vars();
        if (vs.size() == 1)
            return static_cast<int>(vs[0]);
        auto it = and_cache.find(vs);
        if (it != and_cache.end())
            return it->second;
        int aux = next++;
        std::vector<int> long_clause{aux};
        for (VarId v : vs) {
            f.hard.push_back({-aux, static_cast<int>(v)});
            long_clause.push_back(-static_cast<int>(v));
        }
        f.hard.push_back(std::move(long_clause));
        WcnfFormula::AndDef def{aux, {}};
        for (VarId v : vs)
            def.inputs.push_back(static_cast<int>(v));
        f.and_defs.push_back(std::move(def));
        and_cache.emplace(std::move(vs), aux);
        return aux;
    };

    for (const CharSetEntry& e : cs.equations()) {
        int parity = 0; // target parity of the literal sum
        std::vector<int> lits{static_cast<int>(e.lead)};
        for (const Monomial& m : e.tail.terms()) {
            if (m.is_constant())
                parity ^= 1;
            else
                lits.push_back(monomial_lit(m));
        }
        if (lits.size() == 1) {
            f.hard.push_back({parity ? lits[0] : -lits[0]});
            continue;
        }
        int prev = lits[0];
        for (size_t i = 1; i + 1 < lits.size(); ++i) {
            int aux = next++;
            emit_xor3(f.hard, prev, lits[i], aux);
            f.xor_defs.push_back({aux, prev, lits[i]});
            prev = aux;
        }
        int last = lits.back();
        if (parity == 0) {
            f.hard.push_back({-prev, last});
            f.hard.push_back({prev, -last});
        } else {
            f.hard.push_back({prev, last});
            f.hard.push_back({-prev, -last});
        }
    }

    int64_t wsum = 0;
    for (int i = 1; i <= f.orig_vars; ++i) {
        int64_t w = obj.weights[static_cast<size_t>(i - 1)];
        wsum += w;
        if (w > 0)
            f.soft.push_back({w, -i});
    }
    f.top = wsum + 1;
    f.total_vars = next - 1;
    return f;
}

std::string WcnfFormula::dimacs() const {
    std::string out = "p wcnf " + std::to_string(total_vars) + " " +
                      std::to_string(hard.size() + soft.size()) + " " + std::to_string(top) + "\n";
    for (const auto& cl : hard) {
        out += std::to_string(top);
        for (int l : cl)
            out += " " + std::to_string(l);
        out += " 0\n";
    }
    for (const auto& [w, l] : soft)
        out += std::to_string(w) + " " + std::to_string(l) + " 0\n";
    return out;
}

bool WcnfFormula::hard_satisfied(const std::vector<uint8_t>& all_vars) const {
    for (const auto& cl : hard) {
        bool sat = false;
        for (int l : cl) {
            int v = l > 0 ? l : -l;
            bool val = all_vars[static_cast<size_t>(v - 1)] != 0;
            if ((l > 0) == val) {
                sat = true;
                break;
            }
        }
        if (!sat)
            return false;
    }
    return true;
}

std::vector<uint8_t> WcnfFormula::extend(const std::vector<uint8_t>& point) const {
    if (static_cast<int>(point.size()) != orig_vars)
        throw DomainError("assignment length does not match the encoding");
    std::vector<uint8_t> all(static_cast<size_t>(total_vars), 0);
    std::copy(point.begin(), point.end(), all.begin());
    size_t ai = 0, xi = 0;
    // Definitions were appended in creation order; interleave by variable id.
    for (int v = orig_vars + 1; v <= total_vars; ++v) {
        if (ai < and_defs.size() && and_defs[ai].var == v) {
            uint8_t val = 1;
            for (int in : and_defs[ai].inputs)
                val &= all[static_cast<size_t>(in - 1)];
            all[static_cast<size_t>(v - 1)] = val;
            ++ai;
        } else if (xi < xor_defs.size() && xor_defs[xi].var == v) {
            all[static_cast<size_t>(v - 1)] = all[static_cast<size_t>(xor_defs[xi].a - 1)] ^
                                              all[static_cast<size_t>(xor_defs[xi].b - 1)];
            ++xi;
        } else {
            throw DomainError("auxiliary variable without definition");
        }
    }
    return all;
}

std::vector<std::string> export_wcnf(const FeasibleSetResult& r, const Objective& obj, int target,
                                     const std::string& prefix) {
    std::vector<std::string> files;
    for (size_t k = 0; k < r.charsets.size(); ++k) {
        if (target >= 0 && static_cast<size_t>(target) != k)
            continue;
        WcnfFormula f = encode_charset_wcnf(r.charsets[k], obj);
        std::string base = prefix + "charset" + std::to_string(k);
        {
            std::ofstream out(base + ".wcnf");
            if (!out)
                throw std::runtime_error("cannot write " + base + ".wcnf");
            out << f.dimacs();
        }
        {
            std::ofstream map(base + ".map");
            if (!map)
                throw std::runtime_error("cannot write " + base + ".map");
            for (int i = 1; i <= f.orig_vars; ++i)
                map << "orig x" << i << " -> wcnf " << i << "\n";
        }
        files.push_back(base + ".wcnf");
        files.push_back(base + ".map");
    }
    return files;
}

} // namespace f2cs
