#ifndef SPECDESIGN_MATFUN_HPP
#define SPECDESIGN_MATFUN_HPP

#include <vector>

#include "specdesign/expalg.hpp"

namespace specdesign {

// Constant complex n x n matrix.
class CMat {
public:
    CMat() = default;
    explicit CMat(int n) : n_(n), e_(n * n) {}
    static CMat identity(int n);

    int n() const { return n_; }
    Complex& at(int i, int j) { return e_[i * n_ + j]; }
    const Complex& at(int i, int j) const { return e_[i * n_ + j]; }

    Complex det() const;
    // Throws SingularMatrixError when det is (numerically) zero.
    CMat inverse() const;
    CMat operator*(const CMat& o) const;

private:
    int n_ = 0;
    std::vector<Complex> e_;
};

// n-component vector of exp-polynomials.
class VecFun {
public:
    VecFun() = default;
    explicit VecFun(int n) : c_(n) {}
    explicit VecFun(std::vector<ExpPoly> comps) : c_(std::move(comps)) {}

    int n() const { return static_cast<int>(c_.size()); }
    ExpPoly& at(int i) { return c_[i]; }
    const ExpPoly& at(int i) const { return c_[i]; }

    bool is_zero() const;
    VecFun derivative() const;
    VecFun operator+(const VecFun& o) const;
    VecFun operator-(const VecFun& o) const;
    VecFun scaled(Complex s) const;

private:
    std::vector<ExpPoly> c_;
};

// Square matrix of exp-polynomials.
class MatFun {
public:
    MatFun() = default;
    explicit MatFun(int n) : n_(n), e_(n * n) {}
    static MatFun identity(int n);
    static MatFun from_constant(const CMat& m);

    int n() const { return n_; }
    ExpPoly& at(int i, int j) { return e_[i * n_ + j]; }
    const ExpPoly& at(int i, int j) const { return e_[i * n_ + j]; }

    bool is_zero() const;
    MatFun derivative() const;
    MatFun operator+(const MatFun& o) const;
    MatFun operator-(const MatFun& o) const;
    MatFun operator*(const MatFun& o) const;
    VecFun operator*(const VecFun& v) const;
    MatFun scaled(Complex s) const;
    MatFun scaled(const ExpPoly& s) const;

private:
    int n_ = 0;
    std::vector<ExpPoly> e_;
};

// Exact determinant by cofactor expansion (memoized over column subsets).
ExpPoly det(const MatFun& m);
MatFun adjugate(const MatFun& m);

// A determinant of nearly dependent rows is treated as zero once its value is
// negligible against the Hadamard mass of its expansion everywhere sampled.
bool determinant_degenerate(const MatFun& a, const ExpPoly& w);

// Scalar fraction num/den over the exp-polynomial ring.  No GCD cancellation
// is ever attempted; equality is decided by cross-multiplied is_zero.
struct RatPoly {
    ExpPoly num;
    ExpPoly den = ExpPoly::one();
    bool is_zero() const { return num.is_zero(); }
    Complex eval(double x) const { return num.eval(x) / den.eval(x); }
};

// Shared scalar denominator kept in factored form f1^e1 * f2^e2 * ...
// Sums join denominators through the least common multiple over structurally
// identical factors instead of the blind pairwise product; that keeps the
// coefficient magnitudes of long operator chains near the scale of the data,
// which the relative zero tests depend on.  The observable value is always
// the expanded product.
class Den {
public:
    Den() = default; // the constant one
    Den(const ExpPoly& p);

    bool is_one() const { return f_.empty(); }
    bool is_zero() const;
    bool identical(const Den& o) const;
    Complex eval(double x) const;
    ExpPoly expanded() const;
    Den operator*(const Den& o) const;
    static Den lcm(const Den& a, const Den& b);
    // expanded form of lcm / this; the factors of this must divide the lcm
    ExpPoly cofactor(const Den& lcm_den) const;

    // quotient-rule pieces for d/dx (N / this):
    //   result = (N' * base - N * dlog) / (this * base)
    // with base the product of the distinct factors to the first power and
    // dlog = base * (log this)'.
    ExpPoly base() const;
    ExpPoly dlog() const;
    Den derivative_den() const; // every factor exponent raised by one

    const std::vector<std::pair<ExpPoly, int>>& factors() const { return f_; }

private:
    std::vector<std::pair<ExpPoly, int>> f_;
};

// n x n matrix of fractions with one shared scalar denominator.
struct RatMatFun {
    MatFun num;
    Den den;

    int n() const { return num.n(); }
    static RatMatFun zero(int n) { return RatMatFun{MatFun(n), Den()}; }
    static RatMatFun identity(int n) { return RatMatFun{MatFun::identity(n), Den()}; }
    static RatMatFun from_constant(const CMat& m) {
        return RatMatFun{MatFun::from_constant(m), Den()};
    }
};

// n-vector of fractions with one shared scalar denominator.
struct RatVecFun {
    VecFun num;
    Den den;

    int n() const { return num.n(); }
    static RatVecFun zero(int n) { return RatVecFun{VecFun(n), Den()}; }
    static RatVecFun from_vec(VecFun v) { return RatVecFun{std::move(v), Den()}; }
};

bool rat_is_zero(const RatMatFun& r);
bool rat_is_zero(const RatVecFun& r);
bool rat_is_zero(const RatPoly& r);

// Equality of two fractions as functions, decided on the cross-multiplied
// difference judged against the coefficient mass of both sides.  Rounding
// artifacts born in buckets without large partners are measured against the
// genuine scale of the comparison instead of themselves.
bool rat_equal(const RatMatFun& a, const RatMatFun& b);
bool rat_equal(const RatVecFun& a, const RatVecFun& b);
// The same mass-referenced decision for plain scalars.
bool poly_equal(const ExpPoly& a, const ExpPoly& b);

RatMatFun rat_add(const RatMatFun& a, const RatMatFun& b);
RatMatFun rat_sub(const RatMatFun& a, const RatMatFun& b);
RatMatFun rat_mul(const RatMatFun& a, const RatMatFun& b);
RatMatFun rat_scaled(const RatMatFun& a, Complex s);
RatMatFun rat_derivative(const RatMatFun& a);

RatVecFun rat_add(const RatVecFun& a, const RatVecFun& b);
RatVecFun rat_sub(const RatVecFun& a, const RatVecFun& b);
RatVecFun rat_mul(const RatMatFun& a, const RatVecFun& v);
RatVecFun rat_scaled(const RatVecFun& a, Complex s);
RatVecFun rat_derivative(const RatVecFun& a);

// Single-merge sums over the least common denominator of all addends.
RatVecFun rat_sum(const std::vector<RatVecFun>& parts);
RatMatFun rat_sum(const std::vector<RatMatFun>& parts);

RatPoly rat_add(const RatPoly& a, const RatPoly& b);
RatPoly rat_sub(const RatPoly& a, const RatPoly& b);
RatPoly rat_mul(const RatPoly& a, const RatPoly& b);

// v, v', ..., v^(order); the factored quotient rule keeps denominators at
// den^(d+1) instead of den^(2^d).
std::vector<RatVecFun> rat_derivatives(const RatVecFun& v, int order);

// adj(M)/det(M).  Throws SingularMatrixError when det(M) is the zero function.
RatMatFun adjugate_inverse(const MatFun& m);
// (num/den)^{-1} = den*adj(num)/det(num).
RatMatFun rat_inverse(const RatMatFun& m);

// Numeric evaluation (diagnostics; the exact path is the term algebra).
std::vector<Complex> eval(const RatVecFun& v, double x);
std::vector<Complex> eval(const RatMatFun& m, double x);

} // namespace specdesign

#endif
