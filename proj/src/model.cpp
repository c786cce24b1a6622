#include "specdesign/model.hpp"

#include <cmath>

namespace specdesign {

RatVecFun apply_hamiltonian(const Hamiltonian& h, const RatVecFun& v) {
    if (h.n != v.n()) throw DimensionMismatchError("apply_hamiltonian: channel count mismatch");
    auto derivs = rat_derivatives(v, 2);
    RatVecFun second = rat_scaled(derivs[2], Complex{-1.0, 0.0});
    if (rat_is_zero(h.potential)) return second;
    return rat_sum({second, rat_mul(h.potential, v)});
}

TransformationSet::TransformationSet(int n, std::vector<ChainEntry> entries)
    : n_(n), entries_(std::move(entries)) {
    if (n_ < 1) throw ValidationError("TransformationSet: channel count must be >= 1");
    if (entries_.empty()) throw ValidationError("TransformationSet: empty set");
    for (std::size_t l = 0; l < entries_.size(); ++l) {
        const ChainEntry& e = entries_[l];
        if (e.phi.n() != n_)
            throw DimensionMismatchError("TransformationSet: entry has wrong component count");
        if (e.sigma != 0 && e.sigma != 1)
            throw ValidationError("TransformationSet: sigma must be 0 or 1");
        if (rat_is_zero(e.phi))
            throw ValidationError("TransformationSet: identically zero entry");
        if (e.phi.den.is_zero())
            throw ValidationError("TransformationSet: zero denominator");
    }
    for (std::size_t l = 0; l + 1 < entries_.size(); ++l) {
        if (entries_[l].sigma == 1 && entries_[l].lambda != entries_[l + 1].lambda)
            throw ChainConstraintError(
                "TransformationSet: sigma = 1 link requires equal adjacent spectral values");
    }
    if (entries_.back().sigma != 0)
        throw ChainConstraintError("TransformationSet: final entry must close its chain (sigma 0)");
}

bool TransformationSet::polynomial() const {
    for (const ChainEntry& e : entries_)
        if (!e.phi.den.is_one()) return false;
    return true;
}

CMat t_matrix(const TransformationSet& set) {
    const int d = set.size();
    CMat t(d);
    for (int l = 0; l < d; ++l) {
        t.at(l, l) = set.entry(l).lambda;
        if (set.entry(l).sigma == 1) t.at(l, l + 1) = 1.0;
    }
    return t;
}

RatVecFun apply_operator(const IntertwiningOperator& q, const RatVecFun& v) {
    if (q.n != v.n()) throw DimensionMismatchError("apply_operator: channel count mismatch");
    auto derivs = rat_derivatives(v, q.order);
    std::vector<RatVecFun> parts;
    parts.push_back(rat_mul(RatMatFun::from_constant(q.leading), derivs[q.order]));
    for (int j = 0; j < q.order; ++j) parts.push_back(rat_mul(q.lower[j], derivs[j]));
    return rat_sum(parts);
}

MatDiffOp as_diffop(const IntertwiningOperator& q) {
    MatDiffOp op{q.n, {}};
    op.coeff = q.lower;
    op.coeff.push_back(RatMatFun::from_constant(q.leading));
    return op;
}

MatDiffOp as_diffop(const Hamiltonian& h) {
    MatDiffOp op{h.n, {}};
    op.coeff.resize(3, RatMatFun::zero(h.n));
    op.coeff[0] = h.potential;
    op.coeff[2] = RatMatFun{MatFun::identity(h.n).scaled(Complex{-1.0, 0.0}), ExpPoly::one()};
    return op;
}

MatDiffOp op_compose(const MatDiffOp& a, const MatDiffOp& b) {
    const int oa = static_cast<int>(a.coeff.size()) - 1;
    const int ob = static_cast<int>(b.coeff.size()) - 1;
    // d^i (B_j f^{(j)}) = sum_t C(i,t) B_j^{(t)} f^{(i+j-t)}
    std::vector<std::vector<RatMatFun>> parts(oa + ob + 1);
    for (int j = 0; j <= ob; ++j) {
        if (rat_is_zero(b.coeff[j])) continue;
        std::vector<RatMatFun> bder{b.coeff[j]};
        for (int t = 1; t <= oa; ++t) bder.push_back(rat_derivative(bder.back()));
        for (int i = 0; i <= oa; ++i) {
            if (rat_is_zero(a.coeff[i])) continue;
            double binom = 1.0;
            for (int t = 0; t <= i; ++t) {
                if (t > 0) binom = binom * double(i - t + 1) / double(t);
                RatMatFun term = rat_mul(a.coeff[i], bder[t]);
                if (binom != 1.0) term = rat_scaled(term, binom);
                parts[i + j - t].push_back(std::move(term));
            }
        }
    }
    MatDiffOp r{a.n, std::vector<RatMatFun>(oa + ob + 1, RatMatFun::zero(a.n))};
    for (int m = 0; m <= oa + ob; ++m)
        if (!parts[m].empty()) r.coeff[m] = rat_sum(parts[m]);
    return r;
}

MatDiffOp op_sub(const MatDiffOp& a, const MatDiffOp& b) {
    MatDiffOp r{a.n, {}};
    const std::size_t m = std::max(a.coeff.size(), b.coeff.size());
    r.coeff.resize(m, RatMatFun::zero(a.n));
    for (std::size_t j = 0; j < m; ++j) {
        RatMatFun av = j < a.coeff.size() ? a.coeff[j] : RatMatFun::zero(a.n);
        RatMatFun bv = j < b.coeff.size() ? b.coeff[j] : RatMatFun::zero(a.n);
        r.coeff[j] = rat_sub(av, bv);
    }
    return r;
}

MatDiffOp op_mul_left(const RatMatFun& m, const MatDiffOp& a) {
    MatDiffOp r{a.n, {}};
    for (const RatMatFun& c : a.coeff) r.coeff.push_back(rat_mul(m, c));
    return r;
}

MatDiffOp op_mul_right(const MatDiffOp& a, const RatMatFun& m) {
    MatDiffOp mult{a.n, {m}};
    return op_compose(a, mult);
}

bool op_is_zero(const MatDiffOp& a) {
    for (const RatMatFun& c : a.coeff)
        if (!rat_is_zero(c)) return false;
    return true;
}

bool op_equal(const MatDiffOp& a, const MatDiffOp& b) {
    const std::size_t m = std::max(a.coeff.size(), b.coeff.size());
    for (std::size_t j = 0; j < m; ++j) {
        const RatMatFun& av = j < a.coeff.size() ? a.coeff[j] : RatMatFun::zero(a.n);
        const RatMatFun& bv = j < b.coeff.size() ? b.coeff[j] : RatMatFun::zero(a.n);
        if (!rat_equal(av, bv)) return false;
    }
    return true;
}


RatVecFun apply_diffop(const MatDiffOp& a, const RatVecFun& v) {
    if (a.n != v.n()) throw DimensionMismatchError("apply_diffop: channel count mismatch");
    auto derivs = rat_derivatives(v, static_cast<int>(a.coeff.size()) - 1);
    std::vector<RatVecFun> parts;
    for (std::size_t j = 0; j < a.coeff.size(); ++j) {
        if (rat_is_zero(a.coeff[j])) continue;
        parts.push_back(rat_mul(a.coeff[j], derivs[j]));
    }
    if (parts.empty()) return RatVecFun::zero(a.n);
    return rat_sum(parts);
}

CommonDenSet to_common_den(const TransformationSet& set) {
    CommonDenSet out;
    bool shared = true;
    for (int l = 1; l < set.size(); ++l)
        if (!set.entry(l).phi.den.identical(set.entry(0).phi.den)) shared = false;
    if (shared) {
        out.den = set.entry(0).phi.den.expanded();
        for (int l = 0; l < set.size(); ++l) out.nums.push_back(set.entry(l).phi.num);
    } else {
        // Product denominator; each numerator picks up the other denominators.
        Den total;
        for (int l = 0; l < set.size(); ++l) total = total * set.entry(l).phi.den;
        out.den = total.expanded();
        for (int l = 0; l < set.size(); ++l) {
            const ExpPoly scale = set.entry(l).phi.den.cofactor(total);
            VecFun g(set.n());
            for (int i = 0; i < set.n(); ++i) g.at(i) = set.entry(l).phi.num.at(i) * scale;
            out.nums.push_back(g);
        }
    }
    // Fold a constant denominator into the numerators so the q_d/den^(d+1)
    // derivative pattern below only ever sees a genuinely varying den.
    if (out.den.is_constant() && out.den.terms()[0].coeff != Complex{1.0, 0.0}) {
        const Complex inv = 1.0 / out.den.terms()[0].coeff;
        for (VecFun& g : out.nums)
            for (int i = 0; i < g.n(); ++i) g.at(i) = g.at(i).scaled(inv);
        out.den = ExpPoly::one();
    }
    return out;
}

namespace {

bool den_trivial(const ExpPoly& d) {
    return d.is_constant() && d.terms()[0].coeff == Complex{1.0, 0.0};
}

// Rows: one per function; columns grouped by derivative order, each group
// holding the n components.
MatFun wronskian_matrix(const std::vector<VecFun>& funcs, int n, int order) {
    const int d = static_cast<int>(funcs.size());
    MatFun a(d);
    for (int l = 0; l < d; ++l) {
        VecFun cur = funcs[l];
        for (int der = 0; der < order; ++der) {
            for (int m = 0; m < n; ++m) a.at(l, der * n + m) = cur.at(m);
            if (der + 1 < order) cur = cur.derivative();
        }
    }
    return a;
}

} // namespace

RatPoly wronskian(const TransformationSet& set, int order) {
    if (order < 1) throw ValidationError("wronskian: order must be >= 1");
    if (set.size() != set.n() * order)
        throw DimensionMismatchError("wronskian: set size must equal n * order");
    CommonDenSet cd = to_common_den(set);
    ExpPoly num = det(wronskian_matrix(cd.nums, set.n(), order));
    if (den_trivial(cd.den)) return RatPoly{num, ExpPoly::one()};
    // With phi_l = g_l/den, the column (d,m) of the g-matrix expands into
    // lower-derivative columns of the same component plus den times the
    // phi-column, so det(g-matrix) = den^(n*order) * det(phi-matrix).
    ExpPoly denpow = ExpPoly::one();
    for (int i = 0; i < set.n() * order; ++i) denpow = denpow * cd.den;
    return RatPoly{num, denpow};
}

Hamiltonian potential_from_set(const TransformationSet& set) {
    const int n = set.n();
    if (set.size() != n)
        throw DimensionMismatchError("potential_from_set: need exactly n chain entries");
    CommonDenSet cd = to_common_den(set);
    MatFun a = wronskian_matrix(cd.nums, n, 1);
    ExpPoly w = det(a);
    if (determinant_degenerate(a, w))
        throw DegenerateWronskianError("potential_from_set: Wronskian is zero");

    // Row i of the linear system: sum_j v[l][j] phi_{i,j} = rhs_i(l) with
    // rhs_i(l) = phi_{i,l}'' + lambda_i phi_{i,l} + sigma_i phi_{i+1,l}.
    // With phi = g/den, scaling equation i by den^3 gives polynomial data:
    // coefficient matrix g_{i,j} * den^2 and the scaled right-hand numerator.
    const bool poly = den_trivial(cd.den);
    ExpPoly den2 = poly ? ExpPoly::one() : cd.den * cd.den;
    MatFun amat(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) amat.at(i, j) = poly ? a.at(i, j) : a.at(i, j) * den2;
    ExpPoly wscaled = det(amat);

    std::vector<VecFun> rhs; // rhs[i] over components l, scaled like amat rows
    for (int i = 0; i < n; ++i) {
        RatVecFun phi{cd.nums[i], cd.den};
        auto derivs = rat_derivatives(phi, 2); // derivs[2] = q2/den^3
        VecFun num(n);
        for (int l = 0; l < n; ++l) {
            ExpPoly low = cd.nums[i].at(l).scaled(set.entry(i).lambda);
            if (set.entry(i).sigma == 1) low = low + cd.nums[i + 1].at(l);
            num.at(l) = poly ? derivs[2].num.at(l) + low : derivs[2].num.at(l) + low * den2;
        }
        rhs.push_back(num);
    }

    MatFun vnum(n);
    for (int l = 0; l < n; ++l) {
        for (int j = 0; j < n; ++j) {
            MatFun replaced = amat;
            for (int i = 0; i < n; ++i) replaced.at(i, j) = rhs[i].at(l);
            vnum.at(l, j) = det(replaced);
        }
    }
    return Hamiltonian{n, RatMatFun{vnum, wscaled}};
}

NonvanishingReport check_nonvanishing(const ExpPoly& w, double xmin, double xmax, int samples,
                                      double tol) {
    if (w.is_zero()) throw ZeroFunctionError("check_nonvanishing: zero function");
    if (samples < 2) throw ValidationError("check_nonvanishing: need at least 2 samples");
    NonvanishingReport rep;
    rep.plus = w.asymptotics(Direction::PlusInf);
    rep.minus = w.asymptotics(Direction::MinusInf);
    bool clear = true;
    bool first = true;
    for (int i = 0; i < samples; ++i) {
        const double x = xmin + (xmax - xmin) * double(i) / double(samples - 1);
        const double v = std::abs(w.eval(x));
        const double scale = w.magnitude_scale(x);
        if (first || v < rep.min_abs) {
            rep.min_abs = v;
            rep.min_abs_x = x;
            first = false;
        }
        if (v <= tol * scale) clear = false;
    }
    if (!clear)
        rep.verdict = NonvanishingReport::Verdict::Fail;
    else if (rep.plus.oscillatory || rep.minus.oscillatory)
        rep.verdict = NonvanishingReport::Verdict::Inconclusive;
    else
        rep.verdict = NonvanishingReport::Verdict::Pass;
    return rep;
}

} // namespace specdesign
