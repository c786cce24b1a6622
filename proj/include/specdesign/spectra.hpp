#ifndef SPECDESIGN_SPECTRA_HPP
#define SPECDESIGN_SPECTRA_HPP

#include "specdesign/model.hpp"

namespace specdesign {

// Jordan chain of formal vector-functions for one spectral value:
// (H - lambda) members[0] = 0 and (H - lambda) members[i] = members[i-1].
struct SpectralChain {
    Complex lambda;
    std::vector<RatVecFun> members;
};

// Throws unless the chain relations hold exactly for h.
void validate_chain(const SpectralChain& chain, const Hamiltonian& h);

// Push a chain through an intertwining operator.  A leading run of exactly
// zero images is dropped and the rest reindexed; the output chain is checked
// against h_minus.  Throws EmptyImageError when everything maps to zero.
struct MappedChain {
    SpectralChain chain;
    int trimmed = 0; // how many leading members mapped to zero
};
MappedChain map_chain(const IntertwiningOperator& q, const SpectralChain& chain,
                      const Hamiltonian& h_minus);

enum class Normalizability { Normalizable, NonNormalizable, Inconclusive };

struct BoundStateVerdict {
    Normalizability verdict = Normalizability::Inconclusive;
    bool oscillatory = false; // decay decided on an oscillatory borderline
    // dominant exponent data (numerator minus denominator) at each end
    double excess_plus = 0.0;
    double excess_minus = 0.0;
};

// Asymptotic-exponent classification of a state in the rational closure.
// Throws ZeroStateError on the identically zero state.
BoundStateVerdict classify_normalizability(const RatVecFun& state);

enum class ModeKind { Eigen, Associated1 };

// Formal modes of the free Hamiltonian -I d^2 for lambda = -k^2: the
// eigenvector e^{kx} e_ch and the first associated pull -(x/2k) e^{kx} e_ch.
// The sign of k selects the growing/decaying branch.  Throws ZeroRateError.
RatVecFun free_mode(int n, Complex k, int channel, ModeKind kind);

// Conjugation by a constant nondegenerate matrix.
Hamiltonian similarity(const CMat& c, const Hamiltonian& h);
IntertwiningOperator similarity(const CMat& c, const IntertwiningOperator& q);
RatVecFun similarity(const CMat& c, const RatVecFun& v);
RatMatFun similarity(const CMat& c, const RatMatFun& m);

// Q applied to the plane wave e^{i kappa x} e_ch.
RatVecFun plane_wave_image(const IntertwiningOperator& q, double kappa, int channel);

// Trapezoid integral of |state|^2 over [-L, L]; the growth of this integral
// across increasing L is the numeric normalizability oracle.
double norm_squared_integral(const RatVecFun& state, double L, int samples);

} // namespace specdesign

#endif
