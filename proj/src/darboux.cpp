#include "specdesign/darboux.hpp"

namespace specdesign {

namespace {

bool den_trivial(const ExpPoly& d) {
    return d.is_constant() && d.terms()[0].coeff == Complex{1.0, 0.0};
}

// Operator of order N with identity leading coefficient annihilating the
// polynomial vector-functions g_l (there are n*N of them).  Coefficient
// column l of X_j is -1/W times the Wronskian determinant with the column
// (j, l) replaced by the N-th derivative column.
struct PolyAnnihilator {
    std::vector<MatFun> lower_num; // X_j numerators, j = 0..N-1
    ExpPoly w;                     // the polynomial Wronskian
};

PolyAnnihilator poly_annihilator(const std::vector<VecFun>& g, int n, int order) {
    const int d = n * order;
    // Rows: functions; columns: derivative order groups of n components each,
    // then the replacement column uses the order-th derivatives.
    std::vector<std::vector<VecFun>> der(d);
    for (int l = 0; l < d; ++l) {
        der[l].push_back(g[l]);
        for (int k = 1; k <= order; ++k) der[l].push_back(der[l].back().derivative());
    }
    MatFun a(d);
    for (int l = 0; l < d; ++l)
        for (int k = 0; k < order; ++k)
            for (int m = 0; m < n; ++m) a.at(l, k * n + m) = der[l][k].at(m);
    PolyAnnihilator out;
    out.w = det(a);
    if (determinant_degenerate(a, out.w))
        throw DegenerateWronskianError("annihilating_operator: Wronskian is identically zero");
    for (int j = 0; j < order; ++j) {
        MatFun xj(n);
        for (int l = 0; l < n; ++l) {
            const int pos = j * n + l;
            for (int comp = 0; comp < n; ++comp) {
                MatFun replaced = a;
                for (int r = 0; r < d; ++r) replaced.at(r, pos) = der[r][order].at(comp);
                xj.at(comp, l) = -det(replaced);
            }
        }
        out.lower_num.push_back(xj);
    }
    return out;
}

RatMatFun cmat_mul(const CMat& c, const RatMatFun& m) {
    return rat_mul(RatMatFun::from_constant(c), m);
}

} // namespace

IntertwiningOperator annihilating_operator(const TransformationSet& set, const CMat& xn) {
    const int n = set.n();
    if (set.size() % n != 0)
        throw DimensionMismatchError("annihilating_operator: set size must be a multiple of n");
    const int order = set.size() / n;
    if (std::abs(xn.det()) < 1e-300)
        throw SingularLeadingError("annihilating_operator: degenerate leading coefficient");

    CommonDenSet cd = to_common_den(set);
    PolyAnnihilator pa = poly_annihilator(cd.nums, n, order);

    IntertwiningOperator q;
    q.n = n;
    q.order = order;
    q.leading = xn;
    if (den_trivial(cd.den)) {
        for (int j = 0; j < order; ++j)
            q.lower.push_back(cmat_mul(xn, RatMatFun{pa.lower_num[j], pa.w}));
    } else {
        // Conjugation by the shared denominator: the annihilator of {g/w} is
        // Q' f = (1/w) A (w f) with A the polynomial annihilator of {g}, so
        // X'_t = (1/w) sum_{j>=t} C(j,t) B_j w^{(j-t)}.
        std::vector<ExpPoly> wder{cd.den};
        for (int k = 1; k <= order; ++k) wder.push_back(wder.back().derivative());
        for (int t = 0; t < order; ++t) {
            std::vector<RatMatFun> parts;
            double binom = 1.0; // C(j, t) accumulated over j
            for (int j = t; j <= order; ++j) {
                if (j > t) binom = binom * double(j) / double(j - t);
                RatMatFun bj = (j == order) ? RatMatFun::identity(n)
                                            : RatMatFun{pa.lower_num[j], pa.w};
                RatMatFun term = rat_mul(bj, RatMatFun{MatFun::identity(n).scaled(wder[j - t]),
                                                       ExpPoly::one()});
                if (binom != 1.0) term = rat_scaled(term, binom);
                parts.push_back(std::move(term));
            }
            RatMatFun acc = rat_mul(rat_sum(parts), RatMatFun{MatFun::identity(n), cd.den});
            q.lower.push_back(cmat_mul(xn, acc));
        }
    }

    // Kernel sanity: every set entry must be annihilated exactly.
    for (int l = 0; l < set.size(); ++l)
        if (!rat_is_zero(apply_operator(q, set.entry(l).phi)))
            throw AlgebraError("annihilating_operator: constructed operator misses its kernel");
    return q;
}

RatMatFun superpotential(const TransformationSet& set) {
    const int n = set.n();
    if (set.size() != n)
        throw DimensionMismatchError("superpotential: need exactly n chain entries");

    // Column-determinant route (identity leading coefficient).
    IntertwiningOperator q = annihilating_operator(set, CMat::identity(n));
    RatMatFun via_columns = q.lower[0];

    // Matrix route: X0t = -Phi' Phi^{-1} with the functions as columns.
    CommonDenSet cd = to_common_den(set);
    MatFun phi(n);
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i) phi.at(i, l) = cd.nums[l].at(i);
    RatMatFun phi_rat{phi, cd.den};
    RatMatFun deriv = rat_derivative(phi_rat);
    RatMatFun via_matrix = rat_scaled(rat_mul(deriv, rat_inverse(phi_rat)), Complex{-1.0, 0.0});

    if (!rat_equal(via_columns, via_matrix))
        throw AlgebraError("superpotential: column and matrix routes disagree");
    return via_columns;
}

void require_consistent(const TransformationSet& set, const Hamiltonian& h) {
    if (h.n != set.n())
        throw DimensionMismatchError("require_consistent: channel count mismatch");
    for (int l = 0; l < set.size(); ++l) {
        RatVecFun rhs = rat_scaled(set.entry(l).phi, set.entry(l).lambda);
        if (set.entry(l).sigma == 1) rhs = rat_add(rhs, set.entry(l + 1).phi);
        if (!rat_equal(apply_hamiltonian(h, set.entry(l).phi), rhs))
            throw SetInconsistentError("transformation set is not a formal chain of the potential");
    }
}

FirstOrderBuild build_first_order(const TransformationSet& set, const CMat& x1,
                                  const Hamiltonian& v_plus) {
    const int n = set.n();
    if (set.size() != n)
        throw DimensionMismatchError("build_first_order: need exactly n chain entries");
    if (std::abs(x1.det()) < 1e-300)
        throw SingularLeadingError("build_first_order: degenerate leading coefficient");
    require_consistent(set, v_plus);

    RatMatFun x0t = superpotential(set);
    const CMat x1inv = x1.inverse();

    FirstOrderBuild b;
    b.superpot = x0t;
    b.q_minus = IntertwiningOperator{n, 1, x1, {cmat_mul(x1, x0t)}};
    CMat neg_x1inv(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) neg_x1inv.at(i, j) = -x1inv.at(i, j);
    b.q_plus = IntertwiningOperator{
        n, 1, neg_x1inv, {rat_mul(x0t, RatMatFun::from_constant(x1inv))}};

    // Residual term of the factorization, by two independent routes.
    RatMatFun x0t_sq = rat_mul(x0t, x0t);
    RatMatFun x0t_d = rat_derivative(x0t);
    RatMatFun u0_a = rat_add(rat_sub(v_plus.potential, x0t_sq), x0t_d);

    CommonDenSet cd = to_common_den(set);
    MatFun phi(n);
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i) phi.at(i, l) = cd.nums[l].at(i);
    RatMatFun phi_rat{phi, cd.den};
    CMat t = t_matrix(set);
    CMat tt(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) tt.at(i, j) = t.at(j, i);
    RatMatFun u0_b =
        rat_mul(rat_mul(phi_rat, RatMatFun::from_constant(tt)), rat_inverse(phi_rat));
    if (!rat_equal(u0_a, u0_b))
        throw AlgebraError("build_first_order: the two residual-term routes disagree");
    b.u0 = u0_a;
    b.u = rat_mul(cmat_mul(x1, b.u0), RatMatFun::from_constant(x1inv));
    b.v0 = rat_add(b.u0, x0t_sq);

    // V- = X1 (V+ + 2 X0t') X1^{-1}.
    RatMatFun inner = rat_add(v_plus.potential, rat_scaled(x0t_d, 2.0));
    b.h_minus = Hamiltonian{n, rat_mul(cmat_mul(x1, inner), RatMatFun::from_constant(x1inv))};
    return b;
}

OrderNBuild build_order_n(const TransformationSet& set, const CMat& xn,
                          const Hamiltonian& v_plus) {
    const int n = set.n();
    if (set.size() % n != 0)
        throw DimensionMismatchError("build_order_n: set size must be a multiple of n");
    require_consistent(set, v_plus);

    IntertwiningOperator q = annihilating_operator(set, xn);
    const CMat xninv = xn.inverse();
    // V- = XN V+ XN^{-1} + 2 X_{N-1}' XN^{-1}.
    RatMatFun xm1_d = rat_derivative(q.lower[q.order - 1]);
    RatMatFun vminus = rat_add(rat_mul(cmat_mul(xn, v_plus.potential),
                                       RatMatFun::from_constant(xninv)),
                               rat_scaled(rat_mul(xm1_d, RatMatFun::from_constant(xninv)), 2.0));
    return OrderNBuild{q, Hamiltonian{n, vminus}};
}

OrderNBuild build_reverse(const Hamiltonian& h_minus, const TransformationSet& kernel_functions) {
    require_consistent(kernel_functions, h_minus);
    return build_order_n(kernel_functions, CMat::identity(h_minus.n), h_minus);
}

FactorizationReport factorization_report(const FirstOrderBuild& b, const Hamiltonian& h_plus) {
    FactorizationReport rep;
    MatDiffOp qm = as_diffop(b.q_minus);
    MatDiffOp qp = as_diffop(b.q_plus);
    MatDiffOp hp = as_diffop(h_plus);
    MatDiffOp hm = as_diffop(b.h_minus);

    // H+ - Q+Q- - U0 and H- - Q-Q+ - U, as operator-coefficient identities.
    MatDiffOp qpqm_u0 = op_compose(qp, qm);
    qpqm_u0.coeff[0] = rat_add(qpqm_u0.coeff[0], b.u0);
    rep.h_plus_factored = op_equal(hp, qpqm_u0);
    MatDiffOp qmqp_u = op_compose(qm, qp);
    qmqp_u.coeff[0] = rat_add(qmqp_u.coeff[0], b.u);
    rep.h_minus_factored = op_equal(hm, qmqp_u);

    RatMatFun comm = rat_sub(rat_mul(b.u0, b.superpot), rat_mul(b.superpot, b.u0));
    rep.commutator_ok = rat_equal(rat_derivative(b.u0), comm);

    rep.transport_ok = op_equal(op_mul_right(qm, b.u0), op_mul_left(b.u, qm));

    rep.u0_constant = rat_is_zero(rat_derivative(b.u0));
    if (rep.u0_constant)
        rep.reverse_intertwining = op_equal(op_compose(qp, hm), op_compose(hp, qp));
    return rep;
}

} // namespace specdesign
