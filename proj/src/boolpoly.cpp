#include "f2cs/boolpoly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <sstream>

namespace f2cs {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::var(VarId v) {
    Monomial m;
    m.set(v);
    return m;
}

Monomial Monomial::of(std::initializer_list<VarId> vs) {
    Monomial m;
    for (VarId v : vs)
        m.set(v);
    return m;
}

void Monomial::set(VarId v) {
    if (v == 0)
        throw DomainError("variable indices are 1-based");
    size_t w = (v - 1) / 64;
    if (w >= words_.size())
        words_.resize(w + 1, 0);
    words_[w] |= uint64_t(1) << ((v - 1) % 64);
}

void Monomial::trim() {
    while (!words_.empty() && words_.back() == 0)
        words_.pop_back();
}

bool Monomial::contains(VarId v) const {
    size_t w = (v - 1) / 64;
    if (w >= words_.size())
        return false;
    return (words_[w] >> ((v - 1) % 64)) & 1;
}

int Monomial::degree() const {
    int d = 0;
    for (uint64_t w : words_)
        d += std::popcount(w);
    return d;
}

VarId Monomial::leading() const {
    if (words_.empty())
        return 0;
    size_t w = words_.size() - 1;
    return static_cast<VarId>(64 * w + 64 - std::countl_zero(words_[w]));
}

Monomial Monomial::united(const Monomial& o) const {
    const Monomial& big = words_.size() >= o.words_.size() ? *this : o;
    const Monomial& small = words_.size() >= o.words_.size() ? o : *this;
    Monomial r = big;
    for (size_t i = 0; i < small.words_.size(); ++i)
        r.words_[i] |= small.words_[i];
    return r;
}

Monomial Monomial::without(VarId v) const {
    Monomial r = *this;
    size_t w = (v - 1) / 64;
    if (w < r.words_.size()) {
        r.words_[w] &= ~(uint64_t(1) << ((v - 1) % 64));
        r.trim();
    }
    return r;
}

std::vector<VarId> Monomial::vars() const {
    std::vector<VarId> out;
    for (size_t w = 0; w < words_.size(); ++w) {
        uint64_t bits = words_[w];
        while (bits) {
            int b = std::countr_zero(bits);
            out.push_back(static_cast<VarId>(64 * w + b + 1));
            bits &= bits - 1;
        }
    }
    return out;
}

bool Monomial::eval(std::span<const uint64_t> bits) const {
    for (size_t w = 0; w < words_.size(); ++w) {
        uint64_t have = w < bits.size() ? bits[w] : 0;
        if ((words_[w] & have) != words_[w])
            return false;
    }
    return true;
}

std::strong_ordering Monomial::operator<=>(const Monomial& o) const {
    // Trimmed representation: more words = strictly larger mask.
    if (words_.size() != o.words_.size())
        return words_.size() <=> o.words_.size();
    for (size_t i = words_.size(); i-- > 0;) {
        if (words_[i] != o.words_[i])
            return words_[i] <=> o.words_[i];
    }
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- BoolPoly

BoolPoly BoolPoly::one() {
    BoolPoly p;
    p.terms_.push_back(Monomial());
    return p;
}

BoolPoly BoolPoly::var(VarId v) {
    BoolPoly p;
    p.terms_.push_back(Monomial::var(v));
    return p;
}

BoolPoly BoolPoly::monomial(Monomial m) {
    BoolPoly p;
    p.terms_.push_back(std::move(m));
    return p;
}

BoolPoly BoolPoly::from_terms(std::vector<Monomial> ts) {
    std::sort(ts.begin(), ts.end(), [](const Monomial& a, const Monomial& b) { return a > b; });
    BoolPoly p;
    p.terms_.reserve(ts.size());
    for (size_t i = 0; i < ts.size();) {
        size_t j = i;
        while (j < ts.size() && ts[j] == ts[i])
            ++j;
        if ((j - i) % 2 == 1)
            p.terms_.push_back(std::move(ts[i]));
        i = j;
    }
    return p;
}

bool BoolPoly::is_one() const { return terms_.size() == 1 && terms_[0].is_constant(); }

int BoolPoly::total_degree() const {
    int d = 0;
    for (const Monomial& m : terms_)
        d = std::max(d, m.degree());
    return d;
}

VarId BoolPoly::cls() const {
    VarId c = leading_or_zero();
    if (c == 0)
        throw DomainError("no leading variable: polynomial is constant");
    return c;
}

VarId BoolPoly::leading_or_zero() const {
    if (terms_.empty())
        return 0;
    // Terms are descending, so the first term carries the highest variable.
    return terms_[0].leading();
}

bool BoolPoly::contains_var(VarId v) const {
    for (const Monomial& m : terms_)
        if (m.contains(v))
            return true;
    return false;
}

BoolPoly BoolPoly::operator+(const BoolPoly& o) const {
    BoolPoly r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        auto cmp = terms_[i] <=> o.terms_[j];
        if (cmp == std::strong_ordering::greater) {
            r.terms_.push_back(terms_[i++]);
        } else if (cmp == std::strong_ordering::less) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            ++i; // equal terms cancel in characteristic 2
            ++j;
        }
    }
    r.terms_.insert(r.terms_.end(), terms_.begin() + i, terms_.end());
    r.terms_.insert(r.terms_.end(), o.terms_.begin() + j, o.terms_.end());
    return r;
}

BoolPoly& BoolPoly::operator+=(const BoolPoly& o) {
    *this = *this + o;
    return *this;
}

BoolPoly BoolPoly::operator*(const BoolPoly& o) const {
    if (is_zero() || o.is_zero())
        return zero();
    if (is_one())
        return o;
    if (o.is_one())
        return *this;
    std::vector<Monomial> prods;
    prods.reserve(terms_.size() * o.terms_.size());
    for (const Monomial& a : terms_)
        for (const Monomial& b : o.terms_)
            prods.push_back(a.united(b));
    return from_terms(std::move(prods));
}

BoolPoly BoolPoly::substituted(VarId c, const BoolPoly& u) const {
    if (u.contains_var(c))
        throw DomainError("non-triangular substitution: replacement contains the eliminated variable");
    BoolPoly cofactor, rest;
    for (const Monomial& m : terms_) {
        if (m.contains(c))
            cofactor.terms_.push_back(m.without(c));
        else
            rest.terms_.push_back(m);
    }
    if (cofactor.is_zero())
        return *this;
    // Stripping a shared variable keeps relative order only per-monomial;
    // re-normalize before multiplying.
    cofactor = from_terms(std::move(cofactor.terms_));
    return cofactor * u + rest;
}

CanonicalForm BoolPoly::canonical_form() const {
    VarId c = cls();
    CanonicalForm cf;
    cf.leading_var = c;
    std::vector<Monomial> init, tail;
    for (const Monomial& m : terms_) {
        if (m.contains(c))
            init.push_back(m.without(c));
        else
            tail.push_back(m);
    }
    cf.initial = from_terms(std::move(init));
    cf.tail = from_terms(std::move(tail));
    cf.tdeg_init = cf.initial.total_degree();
    cf.term_init = cf.initial.term_count();
    cf.term_tail = cf.tail.term_count();
    return cf;
}

int BoolPoly::evaluate(const std::map<VarId, int>& assignment) const {
    int acc = 0;
    for (const Monomial& m : terms_) {
        int prod = 1;
        for (VarId v : m.vars()) {
            auto it = assignment.find(v);
            if (it == assignment.end())
                throw DomainError("unassigned variable x" + std::to_string(v));
            prod &= it->second & 1;
            if (!prod)
                break;
        }
        acc ^= prod;
    }
    return acc;
}

bool BoolPoly::eval(std::span<const uint64_t> bits) const {
    bool acc = false;
    for (const Monomial& m : terms_)
        acc ^= m.eval(bits);
    return acc;
}

std::string BoolPoly::str() const {
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const Monomial& m : terms_) {
        if (!first)
            out += " + ";
        first = false;
        if (m.is_constant()) {
            out += "1";
        } else {
            bool inner_first = true;
            for (VarId v : m.vars()) {
                if (!inner_first)
                    out += "*";
                inner_first = false;
                out += "x" + std::to_string(v);
            }
        }
    }
    return out;
}

BoolPoly BoolPoly::parse(std::string_view text) {
    std::vector<Monomial> terms;
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    skip_ws();
    if (pos == text.size())
        throw ParseError("empty polynomial");
    bool expect_term = true;
    while (pos < text.size()) {
        skip_ws();
        if (pos == text.size())
            break;
        if (!expect_term) {
            if (text[pos] != '+')
                throw ParseError("expected '+' in polynomial near: " + std::string(text.substr(pos)));
            ++pos;
            expect_term = true;
            continue;
        }
        if (text[pos] == '0') {
            ++pos; // zero contributes no term
        } else if (text[pos] == '1') {
            ++pos;
            terms.push_back(Monomial());
        } else if (text[pos] == 'x' || text[pos] == 'X') {
            Monomial m;
            while (true) {
                ++pos; // consume 'x'
                VarId v = 0;
                auto [p, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
                if (ec != std::errc() || v == 0)
                    throw ParseError("bad variable index in polynomial");
                pos = static_cast<size_t>(p - text.data());
                m = m.united(Monomial::var(v));
                skip_ws();
                if (pos < text.size() && text[pos] == '*') {
                    ++pos;
                    skip_ws();
                    if (pos >= text.size() || (text[pos] != 'x' && text[pos] != 'X'))
                        throw ParseError("expected variable after '*'");
                    continue;
                }
                break;
            }
            terms.push_back(std::move(m));
        } else {
            throw ParseError("unexpected character in polynomial: " + std::string(1, text[pos]));
        }
        expect_term = false;
    }
    if (expect_term)
        throw ParseError("dangling '+' in polynomial");
    return from_terms(std::move(terms));
}

std::strong_ordering BoolPoly::operator<=>(const BoolPoly& o) const {
    size_t n = std::min(terms_.size(), o.terms_.size());
    for (size_t i = 0; i < n; ++i) {
        auto cmp = terms_[i] <=> o.terms_[i];
        if (cmp != std::strong_ordering::equal)
            return cmp;
    }
    return terms_.size() <=> o.terms_.size();
}

// ------------------------------------------------------------- CS orders

CsCompare compare_cso(const BoolPoly& f, const BoolPoly& g, CsOrder order) {
    CanonicalForm a = f.canonical_form();
    CanonicalForm b = g.canonical_form();
    // Key tuples are arranged so that lexicographically smaller = greater
    // in the order (higher cls is preferred, everything else lower).
    auto key = [&](const CanonicalForm& c) {
        if (order == CsOrder::first)
            return std::array<long long, 4>{c.tdeg_init, c.term_init, c.term_tail,
                                            -static_cast<long long>(c.leading_var)};
        return std::array<long long, 4>{-static_cast<long long>(c.leading_var), c.tdeg_init,
                                        c.term_init, c.term_tail};
    };
    auto ka = key(a), kb = key(b);
    if (ka < kb)
        return CsCompare::greater;
    if (kb < ka)
        return CsCompare::less;
    return CsCompare::equivalent;
}

} // namespace f2cs
