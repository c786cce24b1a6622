#include "specdesign/verify.hpp"

#include <algorithm>
#include <cmath>

namespace specdesign {

namespace {
// Numeric residuals are diagnostics; below the reporting threshold their
// exact value is evaluation noise and is clamped so reports built from
// in-memory and reloaded artifacts agree byte for byte.
double diag_residual(double r, bool exact) { return exact && r <= 1e-9 ? 0.0 : r; }
} // namespace

std::vector<RatVecFun> probe_basis(int n) {
    static const Complex rates[] = {{0.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0},
                                    {0.0, -1.0}, {2.0, 0.0}, {-2.0, 0.0}};
    std::vector<RatVecFun> probes;
    for (int m = 0; m <= 2; ++m)
        for (const Complex& k : rates)
            for (int j = 0; j < n; ++j) {
                VecFun v(n);
                v.at(j) = ExpPoly::term(1.0, m, k);
                probes.push_back(RatVecFun::from_vec(std::move(v)));
            }
    return probes;
}

double grid_residual(const RatVecFun& a, const RatVecFun& b, double xmin, double xmax,
                     int samples) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = xmin + (xmax - xmin) * double(i) / double(samples - 1);
        auto va = eval(a, x);
        auto vb = eval(b, x);
        for (std::size_t c = 0; c < va.size(); ++c)
            worst = std::max(worst, std::abs(va[c] - vb[c]));
    }
    return worst;
}

double grid_residual(const RatMatFun& a, const RatMatFun& b, double xmin, double xmax,
                     int samples) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = xmin + (xmax - xmin) * double(i) / double(samples - 1);
        auto va = eval(a, x);
        auto vb = eval(b, x);
        for (std::size_t c = 0; c < va.size(); ++c)
            worst = std::max(worst, std::abs(va[c] - vb[c]));
    }
    return worst;
}

double grid_residual_rel(const RatVecFun& a, const RatVecFun& b, double xmin, double xmax,
                         int samples) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = xmin + (xmax - xmin) * double(i) / double(samples - 1);
        auto va = eval(a, x);
        auto vb = eval(b, x);
        for (std::size_t c = 0; c < va.size(); ++c) {
            const double scale = std::max({1.0, std::abs(va[c]), std::abs(vb[c])});
            worst = std::max(worst, std::abs(va[c] - vb[c]) / scale);
        }
    }
    return worst;
}

double grid_residual_rel(const RatMatFun& a, const RatMatFun& b, double xmin, double xmax,
                         int samples) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = xmin + (xmax - xmin) * double(i) / double(samples - 1);
        auto va = eval(a, x);
        auto vb = eval(b, x);
        for (std::size_t c = 0; c < va.size(); ++c) {
            const double scale = std::max({1.0, std::abs(va[c]), std::abs(vb[c])});
            worst = std::max(worst, std::abs(va[c] - vb[c]) / scale);
        }
    }
    return worst;
}

VerificationReport verify_intertwining(const IntertwiningOperator& q, const Hamiltonian& h_plus,
                                       const Hamiltonian& h_minus) {
    if (q.n != h_plus.n || q.n != h_minus.n)
        throw DimensionMismatchError("verify_intertwining: channel count mismatch");
    VerificationReport rep;

    const MatDiffOp q_after_hplus = op_compose(as_diffop(q), as_diffop(h_plus));
    const MatDiffOp hminus_after_q = op_compose(as_diffop(h_minus), as_diffop(q));
    const bool coeff_ok = op_equal(q_after_hplus, hminus_after_q);
    rep.checks.push_back(Check{"intertwining/operator-coefficients", coeff_ok, 0.0,
                               "Q H+ - H- Q"});

    // Difference operator once; applying it to a probe IS the residual
    // Q(H+ phi) - H-(Q phi).  Coefficients that agree at the mass scale of
    // the two sides are exactly zero in the difference.
    MatDiffOp residual_op{q.n, {}};
    {
        const std::size_t m = std::max(q_after_hplus.coeff.size(), hminus_after_q.coeff.size());
        for (std::size_t j = 0; j < m; ++j) {
            RatMatFun av = j < q_after_hplus.coeff.size() ? q_after_hplus.coeff[j]
                                                           : RatMatFun::zero(q.n);
            RatMatFun bv = j < hminus_after_q.coeff.size() ? hminus_after_q.coeff[j]
                                                            : RatMatFun::zero(q.n);
            residual_op.coeff.push_back(rat_equal(av, bv) ? RatMatFun::zero(q.n)
                                                          : rat_sub(av, bv));
        }
    }
    const auto probes = probe_basis(q.n);
    bool all_ok = true;
    int first_bad = -1;
    for (std::size_t p = 0; p < probes.size(); ++p) {
        const bool ok = rat_is_zero(apply_diffop(residual_op, probes[p]));
        if (!ok && first_bad < 0) first_bad = static_cast<int>(p);
        all_ok = all_ok && ok;
    }
    // numeric diagnostic: evaluate both composition routes against each
    // probe on the grid from cached coefficient values
    double worst = 0.0;
    {
        const int samples = 41;
        const int order1 = static_cast<int>(q_after_hplus.coeff.size());
        const int order2 = static_cast<int>(hminus_after_q.coeff.size());
        const int maxorder = std::max(order1, order2);
        std::vector<std::vector<RatVecFun>> probe_ders;
        for (const RatVecFun& probe : probes)
            probe_ders.push_back(rat_derivatives(probe, maxorder - 1));
        for (int i = 0; i < samples; ++i) {
            const double x = -5.0 + 10.0 * double(i) / double(samples - 1);
            std::vector<std::vector<Complex>> c1vals, c2vals;
            for (int t = 0; t < order1; ++t) c1vals.push_back(eval(q_after_hplus.coeff[t], x));
            for (int t = 0; t < order2; ++t) c2vals.push_back(eval(hminus_after_q.coeff[t], x));
            for (const auto& ders : probe_ders) {
                std::vector<std::vector<Complex>> dvals;
                for (int t = 0; t < maxorder; ++t) dvals.push_back(eval(ders[t], x));
                for (int comp = 0; comp < q.n; ++comp) {
                    Complex a{0.0, 0.0}, b{0.0, 0.0};
                    for (int t = 0; t < order1; ++t)
                        for (int s2 = 0; s2 < q.n; ++s2)
                            a += c1vals[t][comp * q.n + s2] * dvals[t][s2];
                    for (int t = 0; t < order2; ++t)
                        for (int s2 = 0; s2 < q.n; ++s2)
                            b += c2vals[t][comp * q.n + s2] * dvals[t][s2];
                    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
                    worst = std::max(worst, std::abs(a - b) / scale);
                }
            }
        }
    }
    rep.checks.push_back(Check{"intertwining/probe-basis", all_ok, diag_residual(worst, all_ok),
                               first_bad < 0 ? "all probes"
                                             : "probe #" + std::to_string(first_bad)});

    // XN V+ + 2 X_{N-1}' - V- XN must vanish.
    RatMatFun xn = RatMatFun::from_constant(q.leading);
    RatMatFun lhs = rat_add(rat_mul(xn, h_plus.potential),
                            rat_scaled(rat_derivative(q.lower[q.order - 1]), 2.0));
    RatMatFun rhs = rat_mul(h_minus.potential, xn);
    const bool top_ok = rat_equal(lhs, rhs);
    rep.checks.push_back(Check{"intertwining/top-coefficient-identity", top_ok,
                               diag_residual(grid_residual_rel(lhs, rhs, -5.0, 5.0, 41), top_ok),
                               "XN V+ + 2 X_{N-1}' - V- XN"});
    return rep;
}

VerificationReport verify_kernel(const IntertwiningOperator& q, const TransformationSet& set,
                                 const Hamiltonian& h_plus) {
    VerificationReport rep;
    bool all_ok = true;
    double worst = 0.0;
    for (int l = 0; l < set.size(); ++l) {
        RatVecFun img = apply_operator(q, set.entry(l).phi);
        const bool ok = rat_is_zero(img);
        all_ok = all_ok && ok;
        worst = std::max(worst, grid_residual_rel(img, RatVecFun::zero(q.n), -5.0, 5.0, 41));
    }
    rep.checks.push_back(Check{"kernel/annihilation", all_ok, diag_residual(worst, all_ok),
                               "Q phi_l"});

    // H+ phi_l - sum_j T[l][j] phi_j must vanish: the kernel is H+-invariant.
    CMat t = t_matrix(set);
    bool inv_ok = true;
    double inv_worst = 0.0;
    for (int l = 0; l < set.size(); ++l) {
        RatVecFun lhs = apply_hamiltonian(h_plus, set.entry(l).phi);
        RatVecFun rhs = RatVecFun::zero(q.n);
        for (int j = 0; j < set.size(); ++j) {
            if (t.at(l, j) == Complex{0.0, 0.0}) continue;
            rhs = rat_add(rhs, rat_scaled(set.entry(j).phi, t.at(l, j)));
        }
        inv_ok = inv_ok && rat_equal(lhs, rhs);
        inv_worst = std::max(inv_worst, grid_residual_rel(lhs, rhs, -5.0, 5.0, 41));
    }
    rep.checks.push_back(Check{"kernel/h-invariance", inv_ok, diag_residual(inv_worst, inv_ok),
                               "H+ phi_l vs chain"});
    return rep;
}

VerificationReport verify_factorization(const FirstOrderBuild& b, const Hamiltonian& h_plus) {
    FactorizationReport f = factorization_report(b, h_plus);
    VerificationReport rep;
    rep.checks.push_back(Check{"factorization/h-plus", f.h_plus_factored, 0.0, "H+ = Q+ Q- + U0"});
    rep.checks.push_back(Check{"factorization/h-minus", f.h_minus_factored, 0.0, "H- = Q- Q+ + U"});
    rep.checks.push_back(Check{"factorization/commutator", f.commutator_ok, 0.0,
                               "U0' = [U0, X0t]"});
    rep.checks.push_back(Check{"factorization/transport", f.transport_ok, 0.0,
                               "Q- U0 = U Q-"});
    if (f.u0_constant)
        rep.checks.push_back(Check{"factorization/reverse-intertwining", f.reverse_intertwining,
                                   0.0, "Q+ H- = H+ Q+ (constant U0)"});
    return rep;
}

namespace {

// Characteristic polynomial coefficients of an n x n complex matrix by the
// Faddeev-LeVerrier recursion: t^n + c[n-1] t^{n-1} + ... + c[0].  Eigenvalue
// multisets are compared through these coefficients; a defective matrix would
// otherwise cost half the precision in a numerical eigensolver.
std::vector<Complex> char_poly(const std::vector<Complex>& a, int n) {
    std::vector<Complex> m(n * n, Complex{0.0, 0.0}); // running M_k
    std::vector<Complex> c(n, Complex{0.0, 0.0});
    std::vector<Complex> next(n * n);
    for (int k = 1; k <= n; ++k) {
        // next = A (M + c_prev I): first iteration uses M = 0, c_prev = 1.
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Complex s{0.0, 0.0};
                for (int t = 0; t < n; ++t) s += a[i * n + t] * m[t * n + j];
                next[i * n + j] = s;
            }
        if (k == 1)
            next = a;
        Complex tr{0.0, 0.0};
        for (int i = 0; i < n; ++i) tr += next[i * n + i];
        const Complex ck = -tr / double(k);
        c[n - k] = ck;
        m = next;
        for (int i = 0; i < n; ++i) m[i * n + i] += ck;
    }
    return c;
}

} // namespace

VerificationReport verify_u0_spectrum(const RatMatFun& u0, const TransformationSet& set) {
    const int n = u0.n();
    auto coeffs_at = [&](double x) { return char_poly(eval(u0, x), n); };
    const auto at0 = coeffs_at(0.0);
    const auto at1 = coeffs_at(1.37);

    // Coefficients of prod_l (t - lambda_l), ascending powers.
    std::vector<Complex> p{Complex{1.0, 0.0}};
    for (const ChainEntry& e : set.entries()) {
        std::vector<Complex> q(p.size() + 1, Complex{0.0, 0.0});
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i + 1] += p[i];
            q[i] -= e.lambda * p[i];
        }
        p = std::move(q);
    }
    std::vector<Complex> expected(p.begin(), p.begin() + n);

    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(at0[i] - at1[i]));
        worst = std::max(worst, std::abs(at0[i] - expected[i]));
    }
    VerificationReport rep;
    const bool spec_ok = worst <= 1e-8;
    rep.checks.push_back(Check{"u0/spectrum-constancy", spec_ok, diag_residual(worst, spec_ok),
                               "char poly of U0 at x=0 and x=1.37 vs set spectral values"});
    return rep;
}

VerificationReport merge(std::initializer_list<VerificationReport> reports) {
    VerificationReport out;
    for (const VerificationReport& r : reports)
        out.checks.insert(out.checks.end(), r.checks.begin(), r.checks.end());
    return out;
}

} // namespace specdesign
