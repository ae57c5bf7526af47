#include "sdphom/bounds.hpp"

#include <algorithm>

namespace sdphom {

namespace {

void check_stratum(int m, int n, int r) {
    if (n < 1) throw Error("bounds need n >= 1");
    if (m < 2 || r < 1 || r > m - 1) throw Error("bounds need 1 <= r <= m - 1");
}

int count_c(int m, int r) { return (m - r) * (m + r + 1) / 2; }

BigInt cube(const BigInt& v) { return v * v * v; }

}  // namespace

BigInt theta1(int m, int n, int r) {
    check_stratum(m, n, r);
    int c = count_c(m, r), e = r * (m - r);
    BigInt total(0);
    int hi = std::min(n - c + e, e);
    for (int k = 0; k <= hi; ++k)
        total += binomial(c, n - k) * binomial(n, c + k - e) * binomial(e, k);
    return total;
}

BigInt curve_degree_bound(int m, int n, int r) {
    int e = r * (m - r);
    return BigInt(1 + 2 * e) * theta1(m, n, r);
}

BigInt theta_hns(int m, int n, int r) {
    check_stratum(m, n, r);
    int c = count_c(m, r);
    BigInt per_stratum = cube(binomial(c + n, n));
    BigInt uniform = cube(binomial(m * m + n, n));
    return std::min(per_stratum, uniform);
}

BigInt theta_comparison_sum(int m, int n, int r) {
    check_stratum(m, n, r);
    int c = count_c(m, r), e = r * (m - r);
    BigInt total(0);
    int hi = std::min(n - c + e, e);
    for (int k = 0; k <= hi; ++k)
        total += binomial(c, n - k) * binomial(n - 1, c + k - e - 1) * binomial(e, k);
    return total;
}

ThetaCoefficients theta_by_extraction(int m, int n, int r) {
    check_stratum(m, n, r);
    int c = count_c(m, r), e = r * (m - r);
    // coefficients of (s1+s2)^c (s2+s3)^n (s1+s3)^e with exponents clipped
    // to a <= n+1, b <= e, g <= c
    auto idx = [&](int a, int b, int g) {
        return (static_cast<size_t>(a) * static_cast<size_t>(e + 1) + static_cast<size_t>(b)) *
                   static_cast<size_t>(c + 1) +
               static_cast<size_t>(g);
    };
    std::vector<BigInt> coeff(static_cast<size_t>(n + 2) * (e + 1) * (c + 1), BigInt(0));
    for (int i = 0; i <= c; ++i) {         // s1^i s2^(c-i)
        if (c - i > e) continue;
        for (int j = 0; j <= n; ++j) {     // s2^j s3^(n-j)
            if (c - i + j > e || n - j > c) continue;
            for (int k = 0; k <= e; ++k) {  // s1^k s3^(e-k)
                int a = i + k, b = c - i + j, g = n - j + e - k;
                if (a > n + 1 || b > e || g > c) continue;
                coeff[idx(a, b, g)] += binomial(c, i) * binomial(n, j) * binomial(e, k);
            }
        }
    }
    ThetaCoefficients out;
    out.theta1 = coeff[idx(n, e, c)];
    out.theta2 = coeff[idx(n + 1, e - 1, c)];
    out.theta3 = coeff[idx(n + 1, e, c - 1)];
    return out;
}

BigInt complexity_estimate(int m, int n) {
    if (m < 2 || n < 1) throw Error("complexity estimate needs m >= 2 and n >= 1");
    BigInt total(0);
    for (int r = 1; r <= m - 1; ++r) {
        int e = r * (m - r);
        BigInt nn(count_c(m, r) + n + e);
        BigInt theta = theta_hns(m, n, r);
        total += binomial(m, r) * BigInt(e) * nn * nn * nn * nn * theta * theta;
    }
    return BigInt(n) * total;
}

StratumBounds stratum_bounds(int m, int n, int r) {
    check_stratum(m, n, r);
    StratumBounds sb;
    sb.m = m;
    sb.n = n;
    sb.r = r;
    sb.c = count_c(m, r);
    int e = r * (m - r);
    sb.total_vars = sb.c + n + e;
    sb.theta1 = theta1(m, n, r);
    sb.curve_bound = BigInt(1 + 2 * e) * sb.theta1;
    sb.theta_hns = theta_hns(m, n, r);
    sb.comparison_bound = BigInt(1 + 2 * e) * BigInt(n) * sb.theta_hns;
    return sb;
}

std::vector<StratumBounds> bounds_table(int m_lo, int m_hi, int n_lo, int n_hi) {
    if (m_lo < 2 || m_lo > m_hi || n_lo < 1 || n_lo > n_hi)
        throw Error("bad bounds table range");
    std::vector<StratumBounds> rows;
    for (int m = m_lo; m <= m_hi; ++m)
        for (int n = n_lo; n <= n_hi; ++n)
            for (int r = 1; r <= m - 1; ++r) rows.push_back(stratum_bounds(m, n, r));
    return rows;
}

}  // namespace sdphom
