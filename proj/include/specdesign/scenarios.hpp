#ifndef SPECDESIGN_SCENARIOS_HPP
#define SPECDESIGN_SCENARIOS_HPP

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include "specdesign/darboux.hpp"
#include "specdesign/spectra.hpp"
#include "specdesign/verify.hpp"

namespace specdesign {

struct Grid {
    double xmin = -5.0;
    double xmax = 5.0;
    int samples = 201;
};

// Bundled two-channel families over the free Hamiltonian plus a custom mode.
//   s51       two eigenfunctions at distinct spectral values
//   s51-case1 the decoupled hyperbolic special case (k1, k2, x0)
//   s52       two eigenfunctions at one spectral value
//   s53       eigenfunction plus first-order associated function
//   custom    caller-supplied chain entries (and optional potential)
struct ScenarioConfig {
    std::string id = "s51";
    Complex k1{1.0, 0.0};
    Complex k2{2.0, 0.0};
    std::array<Complex, 8> c{Complex{1.0, 0.0}, {}, {}, {}, {}, {}, {}, {}};
    double x0 = 0.0;
    Complex alpha{1.0, 0.0}; // free constant of the degenerate reductions
    Grid grid;
    double wtol = 1e-9;
    // custom payload
    int n = 2;
    std::vector<ChainEntry> custom_entries;
    bool has_custom_potential = false;
    RatMatFun custom_potential;

    // Named shorthands: k for the equal-rate scenarios.
    Complex k() const { return k1; }
};

// Generic admissible constants for quick runs of each bundled scenario.
ScenarioConfig default_config(const std::string& id);

struct ScenarioInstance {
    Hamiltonian h_plus;
    TransformationSet set;
    RatPoly w;
    NonvanishingReport wcheck;
};

// Builds the transformation set from the config templates.  Throws
// ConstraintViolatedError on structural violations and
// DegenerateWronskianError when the Wronskian vanishes identically.
ScenarioInstance instantiate(const ScenarioConfig& config);

// Expected bound-state content per predicate branch of the classification.
struct ExpectedStates {
    int scenario_case = 0; // 1..4
    std::string branch;    // e.g. "2a"
    bool state1 = false;   // s51: state at lambda1; s52: first state; s53: eigenfunction
    bool state2 = false;   // s51: state at lambda2; s52: second state; s53: associated partner
};

// Decides which branch the constants satisfy.  Throws
// UnclassifiedConstantsError when none matches or two different cases match.
ExpectedStates expected_bound_states(const ScenarioConfig& config);

// All branch labels of a scenario's truth table.
std::vector<std::string> branch_labels(const std::string& scenario_id);

// Draws admissible constants inside one branch (magnitudes in [0.2, 2],
// uniform phases, rejection on the Wronskian check).
ScenarioConfig sample_branch(const std::string& scenario_id, const std::string& branch,
                             std::mt19937_64& rng);

// Draws generic admissible constants for the scenario (the case-1 branch).
ScenarioConfig sample_generic(const std::string& scenario_id, std::mt19937_64& rng);

// Truth-table evaluation of one config: build, classify the designated
// candidate states, compare against the expected branch content, and
// cross-check each verdict with the norm-growth integral oracle.
struct BranchOutcome {
    ExpectedStates expected;
    bool classifier_matches = false;
    bool growth_oracle_matches = false;
    std::string detail;
};
BranchOutcome evaluate_truth_table_branch(const ScenarioConfig& config);

// ---- closed-form ground truth (hand-transcribed; never shares code with
// ---- the builders) ----

ExpPoly oracle_wronskian(const ScenarioConfig& config);
RatMatFun oracle_superpotential(const ScenarioConfig& config);
RatMatFun oracle_u0(const ScenarioConfig& config);
RatMatFun oracle_v_minus(const ScenarioConfig& config);
// Named states; throws OracleMissingError for unknown names.
RatVecFun oracle_state(const ScenarioConfig& config, const std::string& name);
std::vector<std::string> oracle_state_names(const std::string& scenario_id);

// Inputs (free-Hamiltonian modes) whose images under Q1- are the named
// states; used to build the corresponding state for comparison.
RatVecFun oracle_state_preimage(const ScenarioConfig& config, const std::string& name);

// Compares a build against every closed form the scenario carries: the
// Wronskian, superpotential, residual term, partner potential, and the named
// mapped states.  Exactness is the cross-multiplied structural test; each
// check also reports the maximum deviation on the config grid and requires
// it below 1e-9.  Throws OracleMissingError for scenarios without forms.
VerificationReport verify_scenario_oracles(const FirstOrderBuild& b,
                                           const ScenarioConfig& config);

// Reduction data of the similarity blocks.
struct ReductionOracle {
    CMat c;           // the conjugating matrix
    ExpPoly w;        // reduced Wronskian
    bool has_u0 = false;
    RatMatFun u0;     // reduced residual term, when printed
    bool has_v_minus = false;
    RatMatFun v_minus;
    std::vector<std::pair<std::string, RatVecFun>> states; // reduced states
};
// which: s51 "delta1-nonzero" | "delta1-zero"; s52 "c6-nonzero" | "c6-zero";
// s53 "delta1-nonzero".  Throws OracleMissingError otherwise.
ReductionOracle oracle_reduction(const ScenarioConfig& config, const std::string& which);

} // namespace specdesign

#endif
