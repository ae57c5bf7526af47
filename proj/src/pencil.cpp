#include "sdphom/pencil.hpp"

#include "json.hpp"

#include <random>
#include <utility>

namespace sdphom {

namespace {

UPoly reduce_mod(const UPoly& a, const UPoly& mod) { return a.divmod(mod).second; }

UPoly mulmod(const UPoly& a, const UPoly& b, const UPoly& mod) { return reduce_mod(a * b, mod); }

UPoly powmod(UPoly base, uint32_t e, const UPoly& mod) {
    UPoly r = UPoly::from_coeffs({Rational(1)});
    base = reduce_mod(base, mod);
    while (e > 0) {
        if (e & 1u) r = mulmod(r, base, mod);
        base = mulmod(base, base, mod);
        e >>= 1u;
    }
    return r;
}

}  // namespace

void SymmetricPencil::validate() const {
    if (m < 1) throw Error("pencil needs matrix dimension m >= 1");
    if (n < 0) throw Error("pencil needs n >= 0 coordinates");
    if (mats.size() != static_cast<size_t>(n) + 1)
        throw Error("pencil needs n + 1 matrices, constant term first");
    for (size_t k = 0; k < mats.size(); ++k) {
        const QMatrix& a = mats[k];
        if (a.rows() != static_cast<size_t>(m) || a.cols() != static_cast<size_t>(m))
            throw Error("pencil matrix " + std::to_string(k) + " is not " + std::to_string(m) +
                        "x" + std::to_string(m));
        if (!a.is_symmetric())
            throw Error("pencil matrix " + std::to_string(k) + " is not symmetric");
    }
}

QMatrix SymmetricPencil::at(const std::vector<Rational>& x) const {
    validate();
    if (x.size() != static_cast<size_t>(n)) throw Error("pencil evaluated at wrong dimension");
    QMatrix r = mats[0];
    for (int k = 0; k < n; ++k) r = r + mats[k + 1].scaled(x[k]);
    return r;
}

PolyMatrix SymmetricPencil::symbol(const CtxPtr& ctx, const std::vector<VarId>& x_ids) const {
    validate();
    if (x_ids.size() != static_cast<size_t>(n))
        throw Error("pencil symbol needs one variable per coordinate");
    PolyMatrix p = PolyMatrix::from_qmatrix(ctx, mats[0]);
    for (int k = 0; k < n; ++k) {
        MPoly xk = MPoly::variable(ctx, x_ids[k]);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                const Rational& c = mats[k + 1].at(i, j);
                if (!c.is_zero()) p.at(i, j) += xk.scaled(c);
            }
    }
    return p;
}

PolyMatrix SymmetricPencil::symbol_perturbed(const CtxPtr& ctx, const std::vector<VarId>& x_ids,
                                             VarId eps_id, const QMatrix& b) const {
    if (b.rows() != static_cast<size_t>(m) || b.cols() != static_cast<size_t>(m) ||
        !b.is_symmetric())
        throw Error("perturbation matrix must be symmetric of the pencil's dimension");
    PolyMatrix p = symbol(ctx, x_ids);
    MPoly eps = MPoly::variable(ctx, eps_id);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (!b.at(i, j).is_zero()) p.at(i, j) += eps.scaled(b.at(i, j));
    return p;
}

Rational ObjectiveForm::at(const std::vector<Rational>& x) const {
    if (x.size() != coeff.size()) throw Error("objective evaluated at wrong dimension");
    Rational v(0);
    for (size_t i = 0; i < coeff.size(); ++i) v += coeff[i] * x[i];
    return v;
}

MPoly ObjectiveForm::symbol(const CtxPtr& ctx, const std::vector<VarId>& x_ids) const {
    if (x_ids.size() != coeff.size()) throw Error("objective symbol needs one variable per term");
    MPoly p(ctx);
    for (size_t i = 0; i < coeff.size(); ++i)
        p += MPoly::variable(ctx, x_ids[i]).scaled(coeff[i]);
    return p;
}

PSDCertificate certificate_from_signs(std::vector<int> signs, int m) {
    if (signs.size() != static_cast<size_t>(m)) throw Error("need one sign per coefficient");
    PSDCertificate cert;
    cert.coeff_signs = std::move(signs);
    bool ok = true, strict = true;
    int mult = m;
    for (int k = m - 1; k >= 0; --k) {
        int s = cert.coeff_signs[k];
        int expected = ((m - k) % 2 == 0) ? 1 : -1;
        if (s == 0)
            strict = false;
        else {
            mult = k;
            if (s != expected) ok = false;
        }
    }
    cert.rank = m - mult;
    cert.verdict = !ok ? PsdVerdict::NotPsd : (strict ? PsdVerdict::PD : PsdVerdict::PSD);
    return cert;
}

PSDCertificate psd_certificate(const QMatrix& s) {
    if (s.rows() != s.cols() || !s.is_symmetric())
        throw Error("definiteness test needs a symmetric matrix");
    int m = static_cast<int>(s.rows());
    UPoly chi = s.char_poly();
    std::vector<int> signs(m);
    for (int k = 0; k < m; ++k) signs[k] = chi.coeff(k).sign();
    return certificate_from_signs(std::move(signs), m);
}

PSDCertificate psd_check(const SymmetricPencil& a, const std::vector<Rational>& x) {
    return psd_certificate(a.at(x));
}

std::vector<Rational> AlgebraicPoint::rational_coords() const {
    Rational v = alpha.exact_value();
    Rational den = q0.eval(v);
    if (den.is_zero()) throw Error("point denominator vanishes");
    std::vector<Rational> out;
    out.reserve(qi.size());
    for (const UPoly& p : qi) out.push_back(p.eval(v) / den);
    return out;
}

std::vector<MPoly> charpoly_coeffs(const SymmetricPencil& a, const CtxPtr& ctx_x,
                                   const std::vector<VarId>& x_ids) {
    a.validate();
    if (x_ids.size() != static_cast<size_t>(a.n))
        throw Error("characteristic coefficients need one variable per coordinate");
    std::string tname = "t";
    while (ctx_x->has(tname)) tname += "_";
    std::vector<std::string> names{tname};
    for (VarId v : x_ids) names.push_back(ctx_x->name(v));
    CtxPtr ctx2 = make_ctx(names);
    std::vector<VarId> inner_ids;
    for (size_t i = 0; i < x_ids.size(); ++i) inner_ids.push_back(static_cast<VarId>(i + 1));

    PolyMatrix ax = a.symbol(ctx2, inner_ids);
    PolyMatrix mat(ctx2, a.m, a.m);
    MPoly t = MPoly::variable(ctx2, 0);
    for (int i = 0; i < a.m; ++i)
        for (int j = 0; j < a.m; ++j) mat.at(i, j) = (i == j ? t : MPoly(ctx2)) - ax.at(i, j);
    MPoly chi = determinant(mat);

    std::vector<VarId> back(ctx2->size(), Monomial::NOT_KEPT);
    for (size_t i = 0; i < x_ids.size(); ++i) back[i + 1] = x_ids[i];
    std::vector<std::vector<Term>> parts(a.m);
    for (const auto& term : chi.terms()) {
        uint32_t k = term.m.deg_in(0);
        if (k >= static_cast<uint32_t>(a.m)) continue;  // the leading t^m term
        Monomial rest = term.m.divide(Monomial::var(0, k));
        parts[k].push_back({rest.rename(back), term.c});
    }
    std::vector<MPoly> out;
    out.reserve(a.m);
    for (int k = 0; k < a.m; ++k) out.push_back(MPoly::from_terms(ctx_x, std::move(parts[k])));
    return out;
}

PSDCertificate psd_check(const SymmetricPencil& a, const AlgebraicPoint& x) {
    a.validate();
    if (x.qi.size() != static_cast<size_t>(a.n)) throw Error("point dimension mismatch");
    if (x.rational()) return psd_check(a, x.rational_coords());

    std::vector<std::string> names;
    std::vector<VarId> ids;
    for (int i = 0; i < a.n; ++i) {
        names.push_back("x" + std::to_string(i + 1));
        ids.push_back(static_cast<VarId>(i));
    }
    CtxPtr ctx = make_ctx(names);
    std::vector<MPoly> coeffs = charpoly_coeffs(a, ctx, ids);

    const UPoly mod = x.alpha.minpoly();
    int s0 = sign_at(x.q0, x.alpha);
    if (s0 == 0) throw Error("point denominator vanishes");

    std::vector<int> signs(a.m);
    for (int k = 0; k < a.m; ++k) {
        // Clear denominators: c_k(x*) = N(alpha) / q0(alpha)^d with d the
        // total degree of c_k, N computed modulo the defining polynomial.
        uint32_t d = coeffs[k].total_degree();
        UPoly num;
        for (const auto& term : coeffs[k].terms()) {
            UPoly cur = UPoly::from_coeffs({term.c});
            uint32_t used = 0;
            for (const auto& [v, e] : term.m.exps()) {
                cur = mulmod(cur, powmod(x.qi[v], e, mod), mod);
                used += e;
            }
            cur = mulmod(cur, powmod(x.q0, d - used, mod), mod);
            num = num + cur;
        }
        int s = sign_at(num, x.alpha);
        signs[k] = (d % 2 == 1) ? s * s0 : s;
    }
    return certificate_from_signs(std::move(signs), a.m);
}

PerturbationMatrix sample_perturbation(int m, uint64_t seed) {
    if (m < 1) throw Error("perturbation needs dimension m >= 1");
    std::mt19937_64 rng(seed);
    std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            rows[i][j] = Rational(static_cast<long>(rng() % 21) - 10);
    QMatrix mm = QMatrix::from_rows(rows);
    return {mm.transpose() * mm + QMatrix::identity(m), seed};
}

std::optional<std::vector<Rational>> detect_zero_point(const SymmetricPencil& a) {
    a.validate();
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (int i = 0; i < a.m; ++i)
        for (int j = i; j < a.m; ++j) {
            std::vector<Rational> row(a.n);
            for (int k = 0; k < a.n; ++k) row[k] = a.mats[k + 1].at(i, j);
            rows.push_back(std::move(row));
            rhs.push_back(-a.mats[0].at(i, j));
        }
    return solve_linear(QMatrix::from_rows(rows), rhs);
}

namespace {

Rational rat_from_json(const nlohmann::json& v, const std::string& where) {
    if (v.is_string()) {
        try {
            return Rational::parse(v.get<std::string>());
        } catch (const Error&) {
            throw ParseError("bad rational in " + where + ": " + v.dump());
        }
    }
    if (v.is_number_integer()) return Rational::parse(std::to_string(v.get<long long>()));
    throw ParseError("expected a rational string in " + where + ", got " + v.dump());
}

QMatrix matrix_from_json(const nlohmann::json& v, const std::string& where) {
    if (!v.is_array() || v.empty()) throw ParseError(where + " must be a nonempty 2D array");
    size_t m = v.size();
    std::vector<std::vector<Rational>> rows;
    for (size_t i = 0; i < m; ++i) {
        const auto& r = v[i];
        if (!r.is_array() || r.size() != m)
            throw ParseError(where + " must be square, row " + std::to_string(i) +
                             " has wrong length");
        std::vector<Rational> row;
        for (size_t j = 0; j < m; ++j)
            row.push_back(rat_from_json(r[j], where + "[" + std::to_string(i) + "][" +
                                                  std::to_string(j) + "]"));
        rows.push_back(std::move(row));
    }
    return QMatrix::from_rows(rows);
}

nlohmann::json matrix_to_json(const QMatrix& q) {
    nlohmann::json rows = nlohmann::json::array();
    for (size_t i = 0; i < q.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (size_t j = 0; j < q.cols(); ++j) row.push_back(q.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("instance document must be a JSON object");
    for (const char* key : {"m", "n", "matrices", "objective"})
        if (!j.contains(key)) throw ParseError(std::string("instance is missing \"") + key + "\"");

    if (!j["m"].is_number_integer() || j["m"].get<long long>() < 1)
        throw ParseError("\"m\" must be a positive integer");
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 0)
        throw ParseError("\"n\" must be a nonnegative integer");
    Instance inst;
    inst.pencil.m = j["m"].get<int>();
    inst.pencil.n = j["n"].get<int>();

    const auto& mats = j["matrices"];
    if (!mats.is_array() || mats.size() != static_cast<size_t>(inst.pencil.n) + 1)
        throw ParseError("\"matrices\" must list n + 1 matrices, constant term first");
    for (size_t k = 0; k < mats.size(); ++k) {
        std::string where = "matrices[" + std::to_string(k) + "]";
        QMatrix a = matrix_from_json(mats[k], where);
        if (a.rows() != static_cast<size_t>(inst.pencil.m))
            throw ParseError(where + " is not " + std::to_string(inst.pencil.m) + "x" +
                             std::to_string(inst.pencil.m));
        if (!a.is_symmetric()) throw ParseError(where + " is not symmetric");
        inst.pencil.mats.push_back(std::move(a));
    }

    const auto& obj = j["objective"];
    if (!obj.is_array() || obj.size() != static_cast<size_t>(inst.pencil.n))
        throw ParseError("\"objective\" must list n coefficients");
    for (size_t i = 0; i < obj.size(); ++i)
        inst.objective.coeff.push_back(
            rat_from_json(obj[i], "objective[" + std::to_string(i) + "]"));

    inst.pencil.validate();
    return inst;
}

std::string instance_to_json(const Instance& inst) {
    inst.pencil.validate();
    nlohmann::json j;
    j["m"] = inst.pencil.m;
    j["n"] = inst.pencil.n;
    j["matrices"] = nlohmann::json::array();
    for (const QMatrix& a : inst.pencil.mats) j["matrices"].push_back(matrix_to_json(a));
    j["objective"] = nlohmann::json::array();
    for (const Rational& c : inst.objective.coeff) j["objective"].push_back(c.str());
    return j.dump(2) + "\n";
}

QMatrix parse_matrix_document(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    QMatrix q = matrix_from_json(j, "matrix");
    if (!q.is_symmetric()) throw ParseError("matrix is not symmetric");
    return q;
}

}  // namespace sdphom
