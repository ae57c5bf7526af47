#include "sdphom/mpoly.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace sdphom {

// Context-free grevlex used for canonical term storage: total degree first,
// ties broken by the highest variable id where exponents differ, larger
// exponent there losing.
int grevlex_cmp(const Monomial& a, const Monomial& b) {
    uint32_t da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db ? 1 : -1;
    const auto& ea = a.exps();
    const auto& eb = b.exps();
    size_t i = ea.size(), j = eb.size();
    while (i > 0 || j > 0) {
        if (i == 0) return 1;
        if (j == 0) return -1;
        VarId va = ea[i - 1].first, vb = eb[j - 1].first;
        if (va != vb) return va > vb ? -1 : 1;
        if (ea[i - 1].second != eb[j - 1].second) return ea[i - 1].second > eb[j - 1].second ? -1 : 1;
        --i, --j;
    }
    return 0;
}

namespace {
struct DescCmp {
    bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_cmp(a, b) > 0; }
};
}  // namespace

MPoly MPoly::from_terms(CtxPtr ctx, std::vector<Term> terms) {
    std::map<Monomial, Rational, DescCmp> acc;
    for (auto& t : terms) {
        if (t.c.is_zero()) continue;
        auto [it, inserted] = acc.emplace(std::move(t.m), t.c);
        if (!inserted) {
            it->second += t.c;
            if (it->second.is_zero()) acc.erase(it);
        }
    }
    MPoly p(std::move(ctx));
    p.terms_.reserve(acc.size());
    for (auto& [m, c] : acc) p.terms_.push_back({m, c});
    return p;
}

MPoly MPoly::merge(const MPoly& a, const MPoly& b, bool subtract) {
    MPoly r(a.ctx_ ? a.ctx_ : b.ctx_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
        int c;
        if (i >= a.terms_.size())
            c = -1;
        else if (j >= b.terms_.size())
            c = 1;
        else
            c = grevlex_cmp(a.terms_[i].m, b.terms_[j].m);
        if (c > 0) {
            r.terms_.push_back(a.terms_[i++]);
        } else if (c < 0) {
            Term t = b.terms_[j++];
            if (subtract) t.c = -t.c;
            r.terms_.push_back(std::move(t));
        } else {
            Rational s = subtract ? a.terms_[i].c - b.terms_[j].c : a.terms_[i].c + b.terms_[j].c;
            if (!s.is_zero()) r.terms_.push_back({a.terms_[i].m, std::move(s)});
            ++i, ++j;
        }
    }
    return r;
}

MPoly MPoly::mul_term(const Monomial& m, const Rational& c) const {
    if (c.is_zero()) return MPoly(ctx_);
    MPoly r(ctx_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.m * m, t.c * c});
    // multiplying by a monomial preserves the grevlex ordering of terms
    return r;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    std::map<Monomial, Rational, DescCmp> acc;
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            Monomial m = ta.m * tb.m;
            Rational c = ta.c * tb.c;
            auto [it, inserted] = acc.emplace(std::move(m), c);
            if (!inserted) {
                it->second += c;
                if (it->second.is_zero()) acc.erase(it);
            }
        }
    }
    MPoly r(a.ctx() ? a.ctx() : b.ctx());
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc) terms.push_back({m, c});
    return MPoly::from_terms(r.ctx(), std::move(terms));
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& d) const {
    if (d.is_zero()) throw Error("division by zero polynomial");
    MPoly rem = *this, quot(ctx_);
    const Term& lt = d.terms_.front();
    while (!rem.is_zero()) {
        const Term& rt = rem.terms_.front();
        if (!lt.m.divides(rt.m)) return std::nullopt;
        Monomial m = rt.m.divide(lt.m);
        Rational c = rt.c / lt.c;
        quot += from_terms(ctx_, {{m, c}});
        rem -= d.mul_term(m, c);
    }
    return quot;
}

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.c;
        if (first) {
            if (c.sign() < 0) {
                os << "-";
                c = -c;
            }
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
            if (c.sign() < 0) c = -c;
        }
        bool need_coeff = t.m.is_one() || !(c == Rational(1));
        if (need_coeff) os << c.str();
        bool need_star = need_coeff && !t.m.is_one();
        for (const auto& [v, e] : t.m.exps()) {
            if (need_star || v != t.m.exps().front().first) os << "*";
            need_star = true;
            os << ctx_->name(v);
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

namespace {

struct Lexer {
    const std::string& s;
    size_t i = 0;
    void skip_ws() {
        while (i < s.size() && isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++i;
            return true;
        }
        return false;
    }
    std::string number() {
        skip_ws();
        size_t j = i;
        while (j < s.size() && isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) throw ParseError("expected number at '" + s.substr(i, 12) + "'");
        std::string r = s.substr(i, j - i);
        i = j;
        return r;
    }
    std::string ident() {
        skip_ws();
        size_t j = i;
        if (j < s.size() && (isalpha(static_cast<unsigned char>(s[j])) || s[j] == '_')) {
            ++j;
            while (j < s.size() && (isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
        }
        if (j == i) throw ParseError("expected identifier at '" + s.substr(i, 12) + "'");
        std::string r = s.substr(i, j - i);
        i = j;
        return r;
    }
};

}  // namespace

MPoly MPoly::parse(const CtxPtr& ctx, const std::string& text) {
    Lexer lx{text};
    MPoly result(ctx);
    bool first = true;
    while (!lx.eof()) {
        int sign = 1;
        if (lx.accept('+')) {
            if (first) throw ParseError("leading '+' in polynomial");
        } else if (lx.accept('-')) {
            sign = -1;
        } else if (!first) {
            throw ParseError("expected '+' or '-' between terms in '" + text + "'");
        }
        first = false;

        Rational coeff(sign);
        std::map<VarId, uint32_t> exps;
        bool more = true;
        while (more) {
            char c = lx.peek();
            if (isdigit(static_cast<unsigned char>(c))) {
                std::string num = lx.number();
                std::string lit = num;
                if (lx.accept('/')) lit += "/" + lx.number();
                coeff *= Rational::parse(lit);
            } else if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string name = lx.ident();
                uint32_t e = 1;
                if (lx.accept('^')) e = static_cast<uint32_t>(std::stoul(lx.number()));
                if (!ctx->has(name)) throw ParseError("unknown variable '" + name + "' in '" + text + "'");
                exps[ctx->id(name)] += e;
            } else {
                throw ParseError("unexpected character '" + std::string(1, c) + "' in '" + text + "'");
            }
            more = lx.accept('*');
        }
        std::vector<std::pair<VarId, uint32_t>> pairs(exps.begin(), exps.end());
        result += from_terms(ctx, {{Monomial::from_pairs(std::move(pairs)), coeff}});
    }
    return result;
}

std::vector<MPoly> parse_polys(const CtxPtr& ctx, const std::vector<std::string>& texts) {
    std::vector<MPoly> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(MPoly::parse(ctx, t));
    return out;
}

std::string UPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg(); i >= 0; --i) {
        Rational c = coeff(i);
        if (c.is_zero()) continue;
        if (first) {
            if (c.sign() < 0) {
                os << "-";
                c = -c;
            }
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
            if (c.sign() < 0) c = -c;
        }
        if (i == 0 || !(c == Rational(1))) os << c.str();
        if (i > 0) {
            if (!(coeff(i).abs() == Rational(1))) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace sdphom
