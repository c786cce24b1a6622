#ifndef SPECDESIGN_DARBOUX_HPP
#define SPECDESIGN_DARBOUX_HPP

#include "specdesign/model.hpp"

namespace specdesign {

// Result of a first-order construction Q1- = X1 (d + X0t) with superpotential
// X0t, together with the partner Hamiltonian and factorization data.
struct FirstOrderBuild {
    IntertwiningOperator q_minus;
    IntertwiningOperator q_plus;
    Hamiltonian h_minus;
    RatMatFun superpot; // X0t, identity-leading gauge
    RatMatFun u0;       // residual of H+ = Q+ Q- + U0
    RatMatFun u;        // X1 U0 X1^{-1}
    RatMatFun v0;       // U0 + X0t^2
};

struct OrderNBuild {
    IntertwiningOperator q;
    Hamiltonian h_minus;
};

// The unique operator of order N with leading coefficient xn annihilating all
// set entries, via the Wronskian column formulas.  Rational entries with a
// shared denominator w are handled by conjugation: the annihilator of {g/w}
// is (1/w) A w where A annihilates the numerators {g}.
IntertwiningOperator annihilating_operator(const TransformationSet& set, const CMat& xn);

// X0t = -Phi' Phi^{-1}, cross-checked against the column-determinant route;
// disagreement is a hard error.  Throws DegenerateWronskianError.
RatMatFun superpotential(const TransformationSet& set);

FirstOrderBuild build_first_order(const TransformationSet& set, const CMat& x1,
                                  const Hamiltonian& v_plus);

OrderNBuild build_order_n(const TransformationSet& set, const CMat& xn,
                          const Hamiltonian& v_plus);

// Operator intertwining in the opposite direction, built from formal
// eigen-/associated functions of h_minus; leading coefficient is the
// identity.  The recovered partner potential is reported in the result.
OrderNBuild build_reverse(const Hamiltonian& h_minus, const TransformationSet& kernel_functions);

struct FactorizationReport {
    bool h_plus_factored = false;       // H+ - Q+ Q- - U0 vanishes
    bool h_minus_factored = false;      // H- - Q- Q+ - U vanishes
    bool commutator_ok = false;         // U0' - [U0, X0t] vanishes
    bool transport_ok = false;          // Q- U0 - U Q- vanishes
    bool u0_constant = false;           // U0' vanishes
    bool reverse_intertwining = false;  // Q+ H- - H+ Q+ vanishes
};

FactorizationReport factorization_report(const FirstOrderBuild& b, const Hamiltonian& h_plus);

// Exact chain-relation check of the set against a potential: residuals of
// H phi_l - lambda_l phi_l - sigma_l phi_{l+1}.  Throws SetInconsistentError.
void require_consistent(const TransformationSet& set, const Hamiltonian& h);

} // namespace specdesign

#endif
