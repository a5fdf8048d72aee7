#include "f2cs/polysystem.hpp"

#include <algorithm>

namespace f2cs {

PolySystem::PolySystem(int n, std::vector<RankBlock> blocks, std::vector<BoolPoly> nonrank)
    : n_(n), blocks_(std::move(blocks)), nonrank_(std::move(nonrank)) {
    validate();
}

void PolySystem::validate() const {
    if (n_ < 0)
        throw DomainError("negative variable count");
    for (const BoolPoly& h : nonrank_) {
        if (h.leading_or_zero() > static_cast<VarId>(n_))
            throw DomainError("plain constraint mentions an auxiliary variable: " + h.str());
    }
    for (const RankBlock& b : blocks_) {
        if (b.zeta_count <= 0)
            throw DomainError("rank block must have at least one kernel variable");
        for (const BoolPoly& f : b.polys) {
            for (const Monomial& m : f.terms()) {
                int aux = 0;
                for (VarId v : m.vars()) {
                    if (v > static_cast<VarId>(n_ + b.zeta_count))
                        throw DomainError("rank polynomial outside its kernel window: " + f.str());
                    if (v > static_cast<VarId>(n_))
                        ++aux;
                }
                if (aux != 1)
                    throw DomainError("rank polynomial not linear-homogeneous in its kernel "
                                      "variables: " +
                                      f.str());
            }
        }
    }
}

int PolySystem::flat_v() const {
    int v = 0;
    for (const RankBlock& b : blocks_)
        v += b.zeta_count;
    return v;
}

namespace {

// Shift every auxiliary variable (> n) by delta.
BoolPoly shift_aux(const BoolPoly& p, int n, int delta) {
    if (delta == 0)
        return p;
    std::vector<Monomial> terms;
    terms.reserve(p.terms().size());
    for (const Monomial& m : p.terms()) {
        Monomial shifted;
        for (VarId v : m.vars()) {
            VarId nv = v > static_cast<VarId>(n) ? v + static_cast<VarId>(delta) : v;
            shifted = shifted.united(Monomial::var(nv));
        }
        terms.push_back(std::move(shifted));
    }
    return BoolPoly::from_terms(std::move(terms));
}

} // namespace

std::vector<BoolPoly> PolySystem::flatten() const {
    std::vector<BoolPoly> out = nonrank_;
    int offset = 0;
    for (const RankBlock& b : blocks_) {
        for (const BoolPoly& f : b.polys)
            out.push_back(shift_aux(f, n_, offset));
        offset += b.zeta_count;
    }
    return out;
}

std::vector<PolySystem> PolySystem::parts() const {
    std::vector<PolySystem> out;
    if (blocks_.empty()) {
        out.emplace_back(n_, std::vector<RankBlock>{}, nonrank_);
        return out;
    }
    for (size_t i = 0; i < blocks_.size(); ++i) {
        std::vector<BoolPoly> extra = i == 0 ? nonrank_ : std::vector<BoolPoly>{};
        out.emplace_back(n_, std::vector<RankBlock>{blocks_[i]}, std::move(extra));
    }
    return out;
}

SymbolicMatrix PolySystem::block_matrix(int index) const {
    const RankBlock& b = blocks_.at(static_cast<size_t>(index));
    SymbolicMatrix m(b.zeta_count, static_cast<int>(b.polys.size()));
    for (int j = 0; j < m.cols; ++j) {
        const BoolPoly& f = b.polys[static_cast<size_t>(j)];
        // Group terms by their unique kernel variable.
        std::vector<std::vector<Monomial>> rows(static_cast<size_t>(b.zeta_count));
        for (const Monomial& mono : f.terms()) {
            VarId zeta = 0;
            for (VarId v : mono.vars())
                if (v > static_cast<VarId>(n_))
                    zeta = v;
            rows[zeta - n_ - 1].push_back(mono.without(zeta));
        }
        for (int r = 0; r < m.rows; ++r)
            m.at(r, j) = BoolPoly::from_terms(std::move(rows[static_cast<size_t>(r)]));
    }
    return m;
}

} // namespace f2cs
