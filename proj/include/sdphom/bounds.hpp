#pragma once

#include "sdphom/rational.hpp"

#include <vector>

namespace sdphom {

// Closed-form degree and cost bounds per rank stratum, exact integers
// throughout. Conventions: c = (m-r)(m+r+1)/2 reduced incidence equations,
// e = r(m-r) kernel unknowns, N = c + n + e total unknowns.
struct StratumBounds {
    int m = 0, n = 0, r = 0;
    int c = 0;
    int total_vars = 0;
    BigInt theta1;
    BigInt curve_bound;       // (1 + 2e) * theta1
    BigInt theta_hns;         // binom(c+n, n)^3, capped by binom(m^2+n, n)^3
    BigInt comparison_bound;  // (1 + 2e) * n * theta_hns
};

// Multilinear Bezout count theta1 = sum_k binom(c, n-k) binom(n, c+k-e)
// binom(e, k) over 0 <= k <= min(n-c+e, e); empty ranges give 0.
BigInt theta1(int m, int n, int r);

// Degree cap for a single homotopy curve: (1 + 2e) * theta1.
BigInt curve_degree_bound(int m, int n, int r);

// Per-stratum bound on the comparison count theta.
BigInt theta_hns(int m, int n, int r);

// Summation form of theta used by the theta1 <= n * theta comparison:
// term-by-term, b_k = a_k * (c+k-e) / n with a_k the theta1 summand.
BigInt theta_comparison_sum(int m, int n, int r);

// The three coefficients that survive when (s1+s2)^c (s2+s3)^n (s1+s3)^e
// is truncated modulo <s1^{n+2}, s2^{e+1}, s3^{c+1}>: theta1 sits on
// s1^n s2^e s3^c, theta2 on s1^{n+1} s2^{e-1} s3^c, theta3 on
// s1^{n+1} s2^e s3^{c-1}. Gives an independent recomputation of theta1;
// theta2 never exceeds e * theta1.
struct ThetaCoefficients {
    BigInt theta1, theta2, theta3;
};
ThetaCoefficients theta_by_extraction(int m, int n, int r);

// n * sum_r binom(m, r) e N^4 theta_hns^2: the operation-count estimate for
// a full solve. Reported, never asserted against wall time.
BigInt complexity_estimate(int m, int n);

StratumBounds stratum_bounds(int m, int n, int r);

// One row per (m, n, r) over inclusive ranges, ordered lexicographically.
std::vector<StratumBounds> bounds_table(int m_lo, int m_hi, int n_lo, int n_hi);

}  // namespace sdphom
