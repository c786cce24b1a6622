#ifndef SPECDESIGN_EXPALG_HPP
#define SPECDESIGN_EXPALG_HPP

#include <complex>
#include <vector>

#include "specdesign/errors.hpp"

namespace specdesign {

using Complex = std::complex<double>;

// One term c * x^m * exp(k x).  Canonical forms never hold a zero coefficient.
struct ExpTerm {
    Complex coeff;
    int power = 0;
    Complex rate;
};

enum class Direction { PlusInf, MinusInf };

// Dominant behaviour of an exp-polynomial toward one end of the axis.
struct Asymptotics {
    double rate_re = 0.0; // real part of the dominant rate
    int power = 0;        // polynomial degree within the dominant rate group
    bool oscillatory = false; // several distinct Im(k) share the dominant (Re k, m)
};

// Finite sum of terms c * x^m * e^{kx} with complex c, k and integer m >= 0.
// The zero function is the empty term list.  Values are immutable once built;
// every operation returns a fresh canonical value.
class ExpPoly {
public:
    // Two rates are identified when |k1-k2| <= kRateTol * max(1,|k1|,|k2|).
    static constexpr double kRateTol = 1e-12;
    // Within a merge group a coefficient c is treated as zero when
    // |c| <= kCoeffTol * max|c_i| over the group being merged.
    static constexpr double kCoeffTol = 1e-12;
    // Powers above this indicate a runaway computation.
    static constexpr int kPowerCap = 64;

    ExpPoly() = default;

    static ExpPoly zero() { return ExpPoly{}; }
    static ExpPoly constant(Complex c);
    static ExpPoly one() { return constant(1.0); }
    static ExpPoly term(Complex c, int power, Complex rate);
    // x^power
    static ExpPoly monomial(int power);
    // e^{rate x}
    static ExpPoly exponential(Complex rate);
    static ExpPoly from_terms(std::vector<ExpTerm> ts);
    // Single-canonicalization sum: cancellation partners from every addend
    // meet in one merge, so no rounding leftovers outlive their reference
    // scale.  Chained binary sums cannot guarantee that.
    static ExpPoly sum(const std::vector<ExpPoly>& ps);

    const std::vector<ExpTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // Single term with m = 0, k = 0.
    bool is_constant() const;

    ExpPoly operator-() const;
    ExpPoly scaled(Complex s) const;
    ExpPoly derivative() const;
    ExpPoly derivative(int order) const;

    Complex eval(double x) const;
    // Sum of |c| |x|^m e^{Re(k) x}: the local magnitude against which a value
    // of the polynomial should be judged small.
    double magnitude_scale(double x) const;

    // Throws ZeroFunctionError on the zero function.
    Asymptotics asymptotics(Direction dir) const;

    // Structural equality of canonical forms (bitwise on coefficients/rates).
    bool identical(const ExpPoly& other) const;

    friend ExpPoly operator+(const ExpPoly& a, const ExpPoly& b);
    friend ExpPoly operator-(const ExpPoly& a, const ExpPoly& b);
    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);

private:
    std::vector<ExpTerm> terms_; // canonical: merged, ordered, no zeros
};

ExpPoly operator*(Complex s, const ExpPoly& p);

} // namespace specdesign

#endif
