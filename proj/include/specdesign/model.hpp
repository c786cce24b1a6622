#ifndef SPECDESIGN_MODEL_HPP
#define SPECDESIGN_MODEL_HPP

#include <vector>

#include "specdesign/matfun.hpp"

namespace specdesign {

// H = -I_n d^2/dx^2 + V(x).
struct Hamiltonian {
    int n = 0;
    RatMatFun potential;

    static Hamiltonian free_particle(int n) { return Hamiltonian{n, RatMatFun::zero(n)}; }
};

// -v'' + V v.  Throws DimensionMismatchError.
RatVecFun apply_hamiltonian(const Hamiltonian& h, const RatVecFun& v);

// One link of a transformation chain: H phi = lambda phi + sigma phi_next.
// sigma = 1 marks an associated function, sigma = 0 an eigenfunction.
// phi may sit in the rational closure; plain exp-polynomial vectors embed
// with denominator one.
struct ChainEntry {
    RatVecFun phi;
    Complex lambda;
    int sigma = 0;

    ChainEntry(RatVecFun f, Complex l, int s) : phi(std::move(f)), lambda(l), sigma(s) {}
    ChainEntry(VecFun f, Complex l, int s)
        : phi(RatVecFun::from_vec(std::move(f))), lambda(l), sigma(s) {}
};

// Ordered list of chain entries; the entry after a sigma = 1 link must carry
// the same lambda, and the final entry closes the chain (sigma = 0).
class TransformationSet {
public:
    TransformationSet(int n, std::vector<ChainEntry> entries);

    int n() const { return n_; }
    int size() const { return static_cast<int>(entries_.size()); }
    const ChainEntry& entry(int l) const { return entries_[l]; }
    const std::vector<ChainEntry>& entries() const { return entries_; }

    // Every denominator is the constant one.
    bool polynomial() const;

private:
    int n_;
    std::vector<ChainEntry> entries_;
};

// Shared-denominator view of a set: phi_l = nums[l] / den with one expanded
// scalar denominator; a constant denominator is folded into the numerators.
struct CommonDenSet {
    std::vector<VecFun> nums;
    ExpPoly den = ExpPoly::one();
};
CommonDenSet to_common_den(const TransformationSet& set);

// Constant matrix T with T[l][l] = lambda_l and T[l][l+1] = sigma_l, so that
// H Phi_l = sum_j T[l][j] Phi_j reproduces the chain relations.
CMat t_matrix(const TransformationSet& set);

// Q = X_N d^N + sum_{j<N} X_j(x) d^j with constant nondegenerate X_N.
struct IntertwiningOperator {
    int n = 0;
    int order = 0;
    CMat leading;                // X_N
    std::vector<RatMatFun> lower; // lower[j] = X_j, j = 0..order-1
};

RatVecFun apply_operator(const IntertwiningOperator& q, const RatVecFun& v);

// General matrix differential operator sum_j coeff[j] d^j (no constraint on
// the top coefficient); used for operator-level identity checks.
struct MatDiffOp {
    int n = 0;
    std::vector<RatMatFun> coeff; // coeff[j] multiplies d^j
};

MatDiffOp as_diffop(const IntertwiningOperator& q);
MatDiffOp as_diffop(const Hamiltonian& h);
MatDiffOp op_compose(const MatDiffOp& a, const MatDiffOp& b); // a after b
MatDiffOp op_sub(const MatDiffOp& a, const MatDiffOp& b);
MatDiffOp op_mul_left(const RatMatFun& m, const MatDiffOp& a);  // (M f) after a
MatDiffOp op_mul_right(const MatDiffOp& a, const RatMatFun& m); // a after (M f)
bool op_is_zero(const MatDiffOp& a);
// Coefficientwise rat_equal of two operators.
bool op_equal(const MatDiffOp& a, const MatDiffOp& b);
RatVecFun apply_diffop(const MatDiffOp& a, const RatVecFun& v);

// Wronskian of the set for an order-N construction: determinant of the
// nN x nN matrix whose row l holds the components of phi_l and their
// derivatives up to order N-1.  The denominator is one for polynomial sets.
RatPoly wronskian(const TransformationSet& set, int order);

// Cramer reconstruction of the potential from n chain entries.
// Throws DegenerateWronskianError when the Wronskian vanishes identically.
Hamiltonian potential_from_set(const TransformationSet& set);

struct NonvanishingReport {
    enum class Verdict { Pass, Fail, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    double min_abs = 0.0;   // smallest |W| over the sample grid
    double min_abs_x = 0.0; // where it occurred
    Asymptotics plus;       // dominant behaviour toward +inf
    Asymptotics minus;      // and toward -inf
};

// Sampling plus asymptotic screening; a heuristic, not a proof.
// Throws ZeroFunctionError when w is identically zero.
NonvanishingReport check_nonvanishing(const ExpPoly& w, double xmin, double xmax, int samples,
                                      double tol = 1e-9);

} // namespace specdesign

#endif
