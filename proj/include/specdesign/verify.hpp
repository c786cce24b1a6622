#ifndef SPECDESIGN_VERIFY_HPP
#define SPECDESIGN_VERIFY_HPP

#include <string>

#include "specdesign/darboux.hpp"

namespace specdesign {

struct Check {
    std::string name;
    bool exact = false;     // structure-level zero of the defining residual
    double residual = 0.0;  // worst numeric deviation on the diagnostic grid
    std::string where;      // location hint
};

struct VerificationReport {
    std::vector<Check> checks;
    bool overall() const {
        for (const Check& c : checks)
            if (!c.exact) return false;
        return true;
    }
};

// Fixed probe family x^m e^{kx} e_j with m <= 2, k in {0, 1, -1, i, -i, 2, -2}.
// Versioned: reports stay comparable across runs.
std::vector<RatVecFun> probe_basis(int n);

// Q H+ - H- Q on every probe, decided by cross-multiplied is_zero, plus the
// coefficient identity XN V+ + 2 X_{N-1}' - V- XN and the full
// operator-coefficient residual.
VerificationReport verify_intertwining(const IntertwiningOperator& q, const Hamiltonian& h_plus,
                                       const Hamiltonian& h_minus);

// Q phi_l = 0 for every set entry and invariance of the kernel under H+
// through the chain matrix.
VerificationReport verify_kernel(const IntertwiningOperator& q, const TransformationSet& set,
                                 const Hamiltonian& h_plus);

VerificationReport verify_factorization(const FirstOrderBuild& b, const Hamiltonian& h_plus);

// Eigenvalues of U0 sampled at two points agree and reproduce the spectral
// values of the set (the Jordan data of the chain matrix).
VerificationReport verify_u0_spectrum(const RatMatFun& u0, const TransformationSet& set);

VerificationReport merge(std::initializer_list<VerificationReport> reports);

// Numeric helpers for diagnostics.  The plain version is the maximum
// absolute entry deviation; the relative version scales each sample by the
// local magnitude and is what the verification checks report.
double grid_residual(const RatVecFun& a, const RatVecFun& b, double xmin, double xmax, int samples);
double grid_residual(const RatMatFun& a, const RatMatFun& b, double xmin, double xmax, int samples);
double grid_residual_rel(const RatVecFun& a, const RatVecFun& b, double xmin, double xmax,
                         int samples);
double grid_residual_rel(const RatMatFun& a, const RatMatFun& b, double xmin, double xmax,
                         int samples);

} // namespace specdesign

#endif
