#include "sdphom/incidence.hpp"

#include "sdphom/ideal.hpp"

#include <algorithm>
#include <sstream>

namespace sdphom {

namespace {

std::vector<int> checked_iota(const SymmetricPencil& a, int r, std::vector<int> iota) {
    a.validate();
    if (r < 0 || r > a.m - 1) throw Error("rank stratum needs 0 <= r <= m - 1");
    if (iota.size() != static_cast<size_t>(a.m - r))
        throw Error("pinned row set needs exactly m - r rows");
    std::sort(iota.begin(), iota.end());
    for (size_t i = 0; i < iota.size(); ++i) {
        if (iota[i] < 1 || iota[i] > a.m) throw Error("pinned row out of range");
        if (i > 0 && iota[i] == iota[i - 1]) throw Error("pinned rows must be distinct");
    }
    return iota;
}

// Row positions once the pinned rows are moved to the front, 1-based; the
// symmetry reduction keeps entry (i, j) of the kernel product exactly when
// the repositioned row index is >= j.
std::vector<int> row_positions(int m, const std::vector<int>& iota) {
    std::vector<int> pos(static_cast<size_t>(m) + 1, 0);
    for (size_t k = 0; k < iota.size(); ++k) pos[iota[k]] = static_cast<int>(k) + 1;
    int next = static_cast<int>(iota.size());
    for (int i = 1; i <= m; ++i)
        if (pos[i] == 0) pos[i] = ++next;
    return pos;
}

std::vector<std::vector<size_t>> k_subsets(size_t n, size_t k) {
    std::vector<std::vector<size_t>> out;
    if (k > n) return out;
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

}  // namespace

IncidenceSystem build_incidence(const SymmetricPencil& a, const std::optional<QMatrix>& b, int r,
                                std::vector<int> iota) {
    iota = checked_iota(a, r, std::move(iota));
    IncidenceSystem inc;
    inc.m = a.m;
    inc.n = a.n;
    inc.r = r;
    inc.iota = iota;
    inc.b = b;
    inc.has_eps = b.has_value();
    int w = inc.width();

    std::vector<std::string> names;
    if (inc.has_eps) names.push_back("eps");
    for (int i = 1; i <= a.n; ++i) names.push_back("x" + std::to_string(i));
    std::vector<int> pos = row_positions(a.m, iota);
    for (int i = 1; i <= a.m; ++i) {
        if (pos[i] <= w) continue;  // pinned row
        for (int j = 1; j <= w; ++j) {
            names.push_back("y" + std::to_string(i) + "_" + std::to_string(j));
            inc.y_pos.emplace_back(i, j);
        }
    }
    inc.ctx = make_ctx(names);
    VarId next = 0;
    if (inc.has_eps) inc.eps_id = next++;
    for (int i = 0; i < a.n; ++i) inc.x_ids.push_back(next++);
    for (size_t i = 0; i < inc.y_pos.size(); ++i) inc.y_ids.push_back(next++);

    PolyMatrix ay = inc.has_eps ? a.symbol_perturbed(inc.ctx, inc.x_ids, inc.eps_id, *b)
                                : a.symbol(inc.ctx, inc.x_ids);
    PolyMatrix y(inc.ctx, a.m, w);
    size_t yk = 0;
    for (int i = 1; i <= a.m; ++i) {
        if (pos[i] <= w) {
            y.at(i - 1, pos[i] - 1) = MPoly::constant(inc.ctx, Rational(1));
        } else {
            for (int j = 1; j <= w; ++j)
                y.at(i - 1, j - 1) = MPoly::variable(inc.ctx, inc.y_ids[yk++]);
        }
    }
    PolyMatrix prod = ay * y;
    for (int i = 1; i <= a.m; ++i)
        for (int j = 1; j <= std::min(pos[i], w); ++j) inc.polys.push_back(prod.at(i - 1, j - 1));

    inc.c = (w * (a.m + r + 1)) / 2;
    if (inc.polys.size() != static_cast<size_t>(inc.c))
        throw Error("internal: reduced incidence entry count mismatch");
    return inc;
}

LagrangeSystem build_lagrange(const IncidenceSystem& inc, const ObjectiveForm& objective) {
    if (objective.coeff.size() != static_cast<size_t>(inc.n))
        throw Error("objective length must match the pencil dimension");
    LagrangeSystem sys;
    sys.incidence = inc;
    sys.objective = objective;
    sys.has_eps = inc.has_eps;
    sys.eps_id = inc.eps_id;
    sys.x_ids = inc.x_ids;
    sys.y_ids = inc.y_ids;

    std::vector<std::string> names = inc.ctx->names();
    size_t base = names.size();
    for (int i = 1; i <= inc.c; ++i) names.push_back("z" + std::to_string(i));
    sys.ctx = make_ctx(names);
    for (int i = 0; i < inc.c; ++i) sys.z_ids.push_back(static_cast<VarId>(base + i));

    std::vector<VarId> same(inc.ctx->size());
    for (VarId v = 0; v < inc.ctx->size(); ++v) same[v] = v;
    for (const MPoly& p : inc.polys) sys.f.push_back(p.rename(sys.ctx, same));

    std::vector<VarId> grad_vars = sys.x_ids;
    grad_vars.insert(grad_vars.end(), sys.y_ids.begin(), sys.y_ids.end());
    PolyMatrix jac = jacobian(sys.f, grad_vars);
    for (size_t k = 0; k < grad_vars.size(); ++k) {
        MPoly gk(sys.ctx);
        for (int i = 0; i < inc.c; ++i)
            gk += MPoly::variable(sys.ctx, sys.z_ids[i]) * jac.at(i, k);
        if (k < static_cast<size_t>(inc.n))
            gk -= MPoly::constant(sys.ctx, objective.coeff[k]);
        sys.g.push_back(std::move(gk));
    }
    sys.total_vars = inc.c + inc.n + inc.r * inc.width();
    return sys;
}

std::vector<MPoly> LagrangeSystem::full_system() const {
    std::vector<MPoly> out = f;
    out.insert(out.end(), g.begin(), g.end());
    return out;
}

UnreducedIncidence build_incidence_unreduced(const SymmetricPencil& a,
                                             const std::optional<QMatrix>& b, int r,
                                             const std::vector<int>& iota_in) {
    std::vector<int> iota = checked_iota(a, r, iota_in);
    int w = a.m - r;
    bool has_eps = b.has_value();

    std::vector<std::string> names;
    if (has_eps) names.push_back("eps");
    for (int i = 1; i <= a.n; ++i) names.push_back("x" + std::to_string(i));
    for (int i = 1; i <= a.m; ++i)
        for (int j = 1; j <= w; ++j)
            names.push_back("y" + std::to_string(i) + "_" + std::to_string(j));
    UnreducedIncidence out;
    out.ctx = make_ctx(names);

    VarId next = 0;
    VarId eps_id = 0;
    if (has_eps) eps_id = next++;
    std::vector<VarId> x_ids;
    for (int i = 0; i < a.n; ++i) x_ids.push_back(next++);
    PolyMatrix y(out.ctx, a.m, w);
    for (int i = 0; i < a.m; ++i)
        for (int j = 0; j < w; ++j) y.at(i, j) = MPoly::variable(out.ctx, next++);

    PolyMatrix ay = has_eps ? a.symbol_perturbed(out.ctx, x_ids, eps_id, *b)
                            : a.symbol(out.ctx, x_ids);
    PolyMatrix prod = ay * y;
    for (int i = 0; i < a.m; ++i)
        for (int j = 0; j < w; ++j) out.products.push_back(prod.at(i, j));
    for (int k = 0; k < w; ++k)
        for (int j = 0; j < w; ++j) {
            MPoly e = y.at(iota[k] - 1, j);
            if (k == j) e -= MPoly::constant(out.ctx, Rational(1));
            out.pinning.push_back(std::move(e));
        }
    return out;
}

RegularityReport regularity_check(const IncidenceSystem& inc, const Rational& eps0) {
    std::vector<MPoly> eqs;
    for (const MPoly& p : inc.polys)
        eqs.push_back(inc.has_eps ? p.substitute(inc.eps_id, MPoly::constant(inc.ctx, eps0)) : p);

    std::vector<VarId> vars = inc.x_ids;
    vars.insert(vars.end(), inc.y_ids.begin(), inc.y_ids.end());
    PolyMatrix jac = jacobian(eqs, vars);
    size_t k = std::min(jac.rows(), jac.cols());

    std::vector<MPoly> gens = eqs;
    for (const auto& rows : k_subsets(jac.rows(), k))
        for (const auto& cols : k_subsets(jac.cols(), k)) {
            MPoly d = determinant(jac.submatrix(rows, cols));
            if (!d.is_zero()) gens.push_back(std::move(d));
        }

    auto gb = groebner(gens, MonomialOrder::grevlex(*inc.ctx));
    RegularityReport rep;
    if (basis_is_unit(gb)) {
        rep.verdict = Regularity::Regular;
    } else {
        rep.verdict = Regularity::Singular;
        rep.witness = gb;
    }
    return rep;
}

std::vector<std::vector<int>> iota_subsets(int m, int r) {
    if (r < 0 || r > m - 1) throw Error("rank stratum needs 0 <= r <= m - 1");
    std::vector<std::vector<int>> out;
    for (const auto& s : k_subsets(static_cast<size_t>(m), static_cast<size_t>(m - r))) {
        std::vector<int> rows;
        for (size_t v : s) rows.push_back(static_cast<int>(v) + 1);
        out.push_back(std::move(rows));
    }
    return out;
}

namespace {

void dump_header(std::ostringstream& os, const char* kind, int r, const std::vector<int>& iota,
                 int c) {
    os << "# " << kind << " r=" << r << " iota={";
    for (size_t i = 0; i < iota.size(); ++i) os << (i ? "," : "") << iota[i];
    os << "} c=" << c;
}

}  // namespace

std::string dump(const IncidenceSystem& inc) {
    std::ostringstream os;
    dump_header(os, "incidence", inc.r, inc.iota, inc.c);
    os << "\n";
    for (const MPoly& p : inc.polys) os << p.str() << "\n";
    return os.str();
}

std::string dump(const LagrangeSystem& sys) {
    std::ostringstream os;
    dump_header(os, "lagrange", sys.incidence.r, sys.incidence.iota, sys.incidence.c);
    os << " N=" << sys.total_vars << "\n";
    for (const MPoly& p : sys.f) os << p.str() << "\n";
    for (const MPoly& p : sys.g) os << p.str() << "\n";
    return os.str();
}

}  // namespace sdphom
