#pragma once

#include "sdphom/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace sdphom {

using VarId = uint32_t;

// Immutable ordered list of variable names shared by the polynomials built
// over it. Identity matters only through the name list.
class VarContext {
public:
    explicit VarContext(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.size() > 64) throw Error("variable context too large");
        for (VarId i = 0; i < names_.size(); ++i) {
            if (!index_.emplace(names_[i], i).second)
                throw Error("duplicate variable name '" + names_[i] + "'");
        }
    }

    size_t size() const { return names_.size(); }
    const std::string& name(VarId v) const { return names_.at(v); }
    const std::vector<std::string>& names() const { return names_; }
    bool has(const std::string& n) const { return index_.count(n) != 0; }
    VarId id(const std::string& n) const {
        auto it = index_.find(n);
        if (it == index_.end()) throw Error("unknown variable '" + n + "'");
        return it->second;
    }

private:
    std::vector<std::string> names_;
    std::map<std::string, VarId> index_;
};

using CtxPtr = std::shared_ptr<const VarContext>;

inline CtxPtr make_ctx(std::vector<std::string> names) {
    return std::make_shared<VarContext>(std::move(names));
}

// Sparse exponent vector; pairs sorted by variable id, exponents positive.
class Monomial {
public:
    Monomial() = default;
    static Monomial var(VarId v, uint32_t e = 1) {
        Monomial m;
        if (e > 0) m.e_.emplace_back(v, e);
        return m;
    }
    static Monomial from_pairs(std::vector<std::pair<VarId, uint32_t>> pairs) {
        std::sort(pairs.begin(), pairs.end());
        Monomial m;
        for (auto& [v, e] : pairs) {
            if (e == 0) continue;
            if (!m.e_.empty() && m.e_.back().first == v) throw Error("duplicate variable in monomial");
            m.e_.emplace_back(v, e);
        }
        return m;
    }

    bool is_one() const { return e_.empty(); }
    const std::vector<std::pair<VarId, uint32_t>>& exps() const { return e_; }

    uint32_t deg_in(VarId v) const {
        for (auto& [w, e] : e_)
            if (w == v) return e;
        return 0;
    }
    uint32_t total_degree() const {
        uint32_t d = 0;
        for (auto& [v, e] : e_) d += e;
        return d;
    }
    uint64_t support_mask() const {
        uint64_t m = 0;
        for (auto& [v, e] : e_) m |= (uint64_t{1} << v);
        return m;
    }
    bool depends_on(VarId v) const { return deg_in(v) > 0; }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        size_t i = 0, j = 0;
        while (i < a.e_.size() || j < b.e_.size()) {
            if (j >= b.e_.size() || (i < a.e_.size() && a.e_[i].first < b.e_[j].first))
                r.e_.push_back(a.e_[i++]);
            else if (i >= a.e_.size() || b.e_[j].first < a.e_[i].first)
                r.e_.push_back(b.e_[j++]);
            else {
                r.e_.emplace_back(a.e_[i].first, a.e_[i].second + b.e_[j].second);
                ++i, ++j;
            }
        }
        return r;
    }

    bool divides(const Monomial& o) const {
        size_t j = 0;
        for (auto& [v, e] : e_) {
            while (j < o.e_.size() && o.e_[j].first < v) ++j;
            if (j >= o.e_.size() || o.e_[j].first != v || o.e_[j].second < e) return false;
        }
        return true;
    }

    // this / d, requiring divisibility.
    Monomial divide(const Monomial& d) const {
        Monomial r;
        size_t j = 0;
        for (auto& [v, e] : e_) {
            uint32_t sub = 0;
            while (j < d.e_.size() && d.e_[j].first < v) ++j;
            if (j < d.e_.size() && d.e_[j].first == v) sub = d.e_[j].second;
            if (sub > e) throw Error("monomial division underflow");
            if (e > sub) r.e_.emplace_back(v, e - sub);
        }
        return r;
    }

    friend Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r;
        size_t i = 0, j = 0;
        while (i < a.e_.size() || j < b.e_.size()) {
            if (j >= b.e_.size() || (i < a.e_.size() && a.e_[i].first < b.e_[j].first))
                r.e_.push_back(a.e_[i++]);
            else if (i >= a.e_.size() || b.e_[j].first < a.e_[i].first)
                r.e_.push_back(b.e_[j++]);
            else {
                r.e_.emplace_back(a.e_[i].first, std::max(a.e_[i].second, b.e_[j].second));
                ++i, ++j;
            }
        }
        return r;
    }

    bool coprime(const Monomial& o) const { return (support_mask() & o.support_mask()) == 0; }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a.e_ == b.e_); }
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.e_ < b.e_; }  // container key only

    // Remaps variable ids; entries mapped to NOT_KEPT are required absent.
    static constexpr VarId NOT_KEPT = UINT32_MAX;
    Monomial rename(const std::vector<VarId>& map) const {
        std::vector<std::pair<VarId, uint32_t>> pairs;
        for (auto& [v, e] : e_) {
            VarId w = map.at(v);
            if (w == NOT_KEPT) throw Error("monomial depends on dropped variable");
            pairs.emplace_back(w, e);
        }
        return from_pairs(std::move(pairs));
    }

private:
    std::vector<std::pair<VarId, uint32_t>> e_;
};

enum class OrderKind { Grevlex, Lex };

// Block order: compare block by block, each block grevlex or lex over its
// listed variables (priority order within the block as listed). A block
// order whose first blocks cover a variable set S is an elimination order
// for S.
class MonomialOrder {
public:
    struct Block {
        std::vector<VarId> vars;
        OrderKind kind;
    };

    static MonomialOrder grevlex(const VarContext& ctx) {
        return single_block(ctx, OrderKind::Grevlex);
    }
    static MonomialOrder lex(const VarContext& ctx) { return single_block(ctx, OrderKind::Lex); }

    // Grevlex on `front`, then grevlex on the remaining variables.
    static MonomialOrder elimination(const VarContext& ctx, const std::vector<VarId>& front) {
        std::vector<bool> in_front(ctx.size(), false);
        for (VarId v : front) in_front.at(v) = true;
        Block b1{front, OrderKind::Grevlex}, b2{{}, OrderKind::Grevlex};
        for (VarId v = 0; v < ctx.size(); ++v)
            if (!in_front[v]) b2.vars.push_back(v);
        MonomialOrder o;
        if (!b1.vars.empty()) o.blocks_.push_back(std::move(b1));
        o.blocks_.push_back(std::move(b2));
        return o;
    }

    // 1 if a > b, 0 if equal, -1 if a < b.
    int cmp(const Monomial& a, const Monomial& b) const {
        for (const auto& blk : blocks_) {
            if (blk.kind == OrderKind::Grevlex) {
                uint64_t da = 0, db = 0;
                for (VarId v : blk.vars) {
                    da += a.deg_in(v);
                    db += b.deg_in(v);
                }
                if (da != db) return da > db ? 1 : -1;
                for (size_t i = blk.vars.size(); i-- > 0;) {
                    uint32_t ea = a.deg_in(blk.vars[i]), eb = b.deg_in(blk.vars[i]);
                    if (ea != eb) return ea > eb ? -1 : 1;  // larger power of least variable loses
                }
            } else {
                for (VarId v : blk.vars) {
                    uint32_t ea = a.deg_in(v), eb = b.deg_in(v);
                    if (ea != eb) return ea > eb ? 1 : -1;
                }
            }
        }
        return 0;
    }
    bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }

private:
    static MonomialOrder single_block(const VarContext& ctx, OrderKind k) {
        Block b{{}, k};
        for (VarId v = 0; v < ctx.size(); ++v) b.vars.push_back(v);
        MonomialOrder o;
        o.blocks_.push_back(std::move(b));
        return o;
    }
    std::vector<Block> blocks_;
};

}  // namespace sdphom
