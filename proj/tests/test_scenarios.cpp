#include <doctest.h>

#include "specdesign/scenarios.hpp"
#include "specdesign/verify.hpp"
#include "testutil.hpp"

using namespace specdesign;

TEST_CASE("instantiation validates structural constraints") {
    SUBCASE("first constant is pinned") {
        ScenarioConfig cfg = default_config("s51");
        cfg.c[0] = Complex{2.0, 0.0};
        CHECK_THROWS_AS(instantiate(cfg), ConstraintViolatedError);
    }
    SUBCASE("distinct spectral values are required") {
        ScenarioConfig cfg = default_config("s51");
        cfg.k2 = -cfg.k1; // same lambda
        CHECK_THROWS_AS(instantiate(cfg), ConstraintViolatedError);
    }
    SUBCASE("identically vanishing Wronskian is rejected") {
        ScenarioConfig cfg = default_config("s52");
        // all three coefficient groups zero
        cfg.c[6] = Complex{0.0, 0.0};                      // C7
        cfg.c[7] = cfg.c[2] * cfg.c[5];                    // C8 = C3 C6
        cfg.c[3] = cfg.c[1] * cfg.c[7] / cfg.c[5];         // C4 = C2 C8 / C6
        CHECK_THROWS_AS(instantiate(cfg), DegenerateWronskianError);
    }
    SUBCASE("unknown identifiers are rejected") {
        ScenarioConfig cfg;
        cfg.id = "s99";
        CHECK_THROWS_AS(instantiate(cfg), ConstraintViolatedError);
    }
}

TEST_CASE("default configurations are admissible") {
    for (const char* id : {"s51", "s51-case1", "s52", "s53"}) {
        ScenarioConfig cfg = default_config(id);
        ScenarioInstance inst = instantiate(cfg);
        CHECK(inst.wcheck.verdict == NonvanishingReport::Verdict::Pass);
    }
}

TEST_CASE("classification branch decisions") {
    SUBCASE("generic constants land in the two-state case") {
        ScenarioConfig cfg = default_config("s51");
        ExpectedStates e = expected_bound_states(cfg);
        CHECK(e.scenario_case == 1);
        CHECK(e.state1);
        CHECK(e.state2);
    }
    SUBCASE("decoupled hyperbolic case is the two-state branch") {
        ExpectedStates e = expected_bound_states(default_config("s51-case1"));
        CHECK(e.scenario_case == 1);
    }
    SUBCASE("unclassifiable constants are surfaced") {
        ScenarioConfig cfg = default_config("s51");
        cfg.k1 = Complex{1.0, 0.0};
        cfg.k2 = Complex{-0.6, 0.0}; // negative real part fits no branch
        CHECK_THROWS_AS(expected_bound_states(cfg), UnclassifiedConstantsError);
    }
}

TEST_CASE("every truth-table branch admits a sample that classifies back to it") {
    std::mt19937_64 rng(401);
    for (const char* id : {"s51", "s52", "s53"}) {
        for (const std::string& branch : branch_labels(id)) {
            CAPTURE(id);
            CAPTURE(branch);
            ScenarioConfig cfg = sample_branch(id, branch, rng);
            ExpectedStates e = expected_bound_states(cfg);
            CHECK(branch[0] == e.branch[0]); // same case
        }
    }
}

TEST_CASE("built quantities match the closed forms exactly") {
    std::mt19937_64 rng(409);
    for (const char* id : {"s51", "s51-case1", "s52", "s53"}) {
        CAPTURE(id);
        ScenarioConfig cfg = default_config(id);
        ScenarioInstance inst = instantiate(cfg);
        FirstOrderBuild b = build_first_order(inst.set, CMat::identity(2), inst.h_plus);
        CHECK((inst.w.num - oracle_wronskian(cfg)).is_zero());
        CHECK(rat_equal(b.superpot, oracle_superpotential(cfg)));
        CHECK(rat_equal(b.u0, oracle_u0(cfg)));
        CHECK(rat_equal(b.h_minus.potential, oracle_v_minus(cfg)));
        CHECK(grid_residual(b.h_minus.potential, oracle_v_minus(cfg), -5.0, 5.0, 201) <= 1e-9);
        for (const std::string& name : oracle_state_names(id)) {
            CAPTURE(name);
            RatVecFun built = apply_operator(b.q_minus, oracle_state_preimage(cfg, name));
            CHECK(rat_equal(built, oracle_state(cfg, name)));
        }
    }
}

TEST_CASE("mapped-state dependence relations collapse exactly") {
    std::mt19937_64 rng(419);
    SUBCASE("distinct-rate family") {
        ScenarioConfig cfg = sample_generic("s51", rng);
        ScenarioInstance inst = instantiate(cfg);
        FirstOrderBuild b = build_first_order(inst.set, CMat::identity(2), inst.h_plus);
        auto img = [&](const char* name) {
            return apply_operator(b.q_minus, oracle_state_preimage(cfg, name));
        };
        // combinations matching the kernel functions vanish
        RatVecFun first = rat_sum({img("psi1"), rat_scaled(img("psi2"), cfg.c[1]),
                                   rat_scaled(img("psi3"), cfg.c[2]),
                                   rat_scaled(img("psi4"), cfg.c[3])});
        CHECK(rat_is_zero(first));
        RatVecFun second = rat_sum({rat_scaled(img("psi5"), cfg.c[4]),
                                    rat_scaled(img("psi6"), cfg.c[5]),
                                    rat_scaled(img("psi7"), cfg.c[6]),
                                    rat_scaled(img("psi8"), cfg.c[7])});
        CHECK(rat_is_zero(second));
    }
    SUBCASE("equal-rate family") {
        ScenarioConfig cfg = sample_generic("s52", rng);
        ScenarioInstance inst = instantiate(cfg);
        FirstOrderBuild b = build_first_order(inst.set, CMat::identity(2), inst.h_plus);
        auto img = [&](const char* name) {
            return apply_operator(b.q_minus, oracle_state_preimage(cfg, name));
        };
        RatVecFun first = rat_sum({img("psi1"), rat_scaled(img("psi2"), cfg.c[1]),
                                   rat_scaled(img("psi3"), cfg.c[2]),
                                   rat_scaled(img("psi4"), cfg.c[3])});
        CHECK(rat_is_zero(first));
        RatVecFun second = rat_sum({rat_scaled(img("psi2"), cfg.c[5]),
                                    rat_scaled(img("psi3"), cfg.c[6]),
                                    rat_scaled(img("psi4"), cfg.c[7])});
        CHECK(rat_is_zero(second));
    }
    SUBCASE("Jordan family") {
        ScenarioConfig cfg = sample_generic("s53", rng);
        ScenarioInstance inst = instantiate(cfg);
        FirstOrderBuild b = build_first_order(inst.set, CMat::identity(2), inst.h_plus);
        auto img = [&](const char* name) {
            return apply_operator(b.q_minus, oracle_state_preimage(cfg, name));
        };
        RatVecFun zero_row = rat_sum({img("psi1_0"), rat_scaled(img("psi3_0"), cfg.c[2])});
        // psi2_0 and psi4_0 come from the opposite-sign modes
        RatVecFun m2 = apply_operator(b.q_minus, free_mode(2, -cfg.k1, 0, ModeKind::Eigen));
        RatVecFun m4 = apply_operator(b.q_minus, free_mode(2, -cfg.k1, 1, ModeKind::Eigen));
        zero_row = rat_sum({zero_row, rat_scaled(m2, cfg.c[1]), rat_scaled(m4, cfg.c[3])});
        CHECK(rat_is_zero(zero_row));

        // second relation mixes the associated images with eigen images
        RatVecFun a2 = apply_operator(b.q_minus, free_mode(2, -cfg.k1, 0, ModeKind::Associated1));
        RatVecFun a4 = apply_operator(b.q_minus, free_mode(2, -cfg.k1, 1, ModeKind::Associated1));
        RatVecFun rel = rat_sum({img("psi1_1"), rat_scaled(a2, cfg.c[1]),
                                 rat_scaled(img("psi3_1"), cfg.c[2]), rat_scaled(a4, cfg.c[3]),
                                 rat_scaled(m2, cfg.c[5]), rat_scaled(img("psi3_0"), cfg.c[6]),
                                 rat_scaled(m4, cfg.c[7])});
        CHECK(rat_is_zero(rel));
    }
}

TEST_CASE("printed first components of the Jordan bound states") {
    // double-entry bookkeeping for the transcription: the combination route
    // must match the directly printed scalar coefficients
    ScenarioConfig cfg = default_config("s53");
    const Complex k = cfg.k1;
    const Complex c2 = cfg.c[1], c3 = cfg.c[2], c4 = cfg.c[3], c6 = cfg.c[5], c7 = cfg.c[6],
                  c8 = cfg.c[7];
    const Complex d1 = c4 - c2 * c3;
    const Complex d27 = c2 * c7 - c3 * c6;
    const Complex d28 = c2 * c8 - c4 * c6;

    RatVecFun psi60 = oracle_state(cfg, "psi6_0");
    VecFun direct0(2);
    direct0.at(0) = ExpPoly::from_terms(
        {ExpTerm{2.0 * k * (d1 / (4.0 * k * k) - c2 * c7), 0, k},
         ExpTerm{-2.0 * k * (c2 * d1 / (4.0 * k * k) + d28), 0, -k}});
    CHECK((psi60.num.at(0) - direct0.at(0)).is_zero());

    RatVecFun psi61 = oracle_state(cfg, "psi6_1");
    ExpPoly direct1 = ExpPoly::from_terms(
        {ExpTerm{d1 / (4.0 * k * k) - c2 * c7, 1, k},
         ExpTerm{(c8 + d27) / (2.0 * k) - 2.0 * k * c6 * c7, 0, k},
         ExpTerm{(d28 + c2 * c2 * c7) / (2.0 * k), 0, -k},
         ExpTerm{c2 * d1 / (4.0 * k * k) + d28, 1, -k}});
    CHECK((psi61.num.at(0) - direct1).is_zero());
}

TEST_CASE("similarity reductions reach the printed reduced forms") {
    SUBCASE("distinct-rate family with invertible chain matrix") {
        ScenarioConfig cfg = default_config("s51");
        ScenarioInstance inst = instantiate(cfg);
        FirstOrderBuild b = build_first_order(inst.set, CMat::identity(2), inst.h_plus);
        ReductionOracle red = oracle_reduction(cfg, "delta1-nonzero");
        const Complex d1 = cfg.c[3] - cfg.c[1] * cfg.c[2];
        // reduced Wronskian is W / delta1
        CHECK((red.w - inst.w.num.scaled(1.0 / d1)).is_zero());
        CHECK(rat_equal(similarity(red.c, b.u0), red.u0));
        for (const auto& [name, reduced] : red.states) {
            RatVecFun built = apply_operator(b.q_minus, oracle_state_preimage(cfg, name));
            CHECK(rat_equal(similarity(red.c, built), reduced));
        }
    }
    SUBCASE("distinct-rate family with the degenerate chain matrix") {
        ScenarioConfig cfg = default_config("s51");
        cfg.c[3] = cfg.c[1] * cfg.c[2]; // delta1 = 0
        cfg.alpha = Complex{0.7, 0.4};
        ScenarioInstance inst = instantiate(cfg);
        FirstOrderBuild b = build_first_order(inst.set, CMat::identity(2), inst.h_plus);
        ReductionOracle red = oracle_reduction(cfg, "delta1-zero");
        CHECK((red.w - inst.w.num.scaled(-1.0 / cfg.alpha)).is_zero());
        for (const auto& [name, reduced] : red.states) {
            RatVecFun built = apply_operator(b.q_minus, oracle_state_preimage(cfg, name));
            CHECK(rat_equal(similarity(red.c, built), reduced));
        }
    }
    SUBCASE("equal-rate family diagonalizes") {
        for (bool with_c6 : {true, false}) {
            ScenarioConfig cfg = default_config("s52");
            if (!with_c6) cfg.c[5] = Complex{0.0, 0.0};
            ScenarioInstance inst = instantiate(cfg);
            FirstOrderBuild b = build_first_order(inst.set, CMat::identity(2), inst.h_plus);
            ReductionOracle red = oracle_reduction(cfg, with_c6 ? "c6-nonzero" : "c6-zero");
            CHECK((red.w - inst.w.num).is_zero());
            CHECK(rat_equal(similarity(red.c, b.u0), red.u0));
            REQUIRE(red.has_v_minus);
            RatMatFun conj = similarity(red.c, b.h_minus.potential);
            CHECK(rat_equal(conj, red.v_minus));
            CHECK(grid_residual(conj, red.v_minus, -5.0, 5.0, 201) <= 1e-9);
        }
    }
    SUBCASE("Jordan family with invertible chain matrix") {
        ScenarioConfig cfg = default_config("s53");
        ScenarioInstance inst = instantiate(cfg);
        FirstOrderBuild b = build_first_order(inst.set, CMat::identity(2), inst.h_plus);
        ReductionOracle red = oracle_reduction(cfg, "delta1-nonzero");
        const Complex d1 = cfg.c[3] - cfg.c[1] * cfg.c[2];
        CHECK((red.w - inst.w.num.scaled(1.0 / d1)).is_zero());
        CHECK(rat_equal(similarity(red.c, b.u0), red.u0));
    }
}

TEST_CASE("coefficient matrices of the Jordan potential satisfy the stated identity") {
    ScenarioConfig cfg = default_config("s53");
    const Complex c2 = cfg.c[1], c3 = cfg.c[2], c4 = cfg.c[3], c6 = cfg.c[5], c7 = cfg.c[6],
                  c8 = cfg.c[7];
    const Complex d1 = c4 - c2 * c3, d27 = c2 * c7 - c3 * c6, d28 = c2 * c8 - c4 * c6,
                  d38 = c3 * c8 - c4 * c7;
    const Complex m1[4] = {c3, -1.0, c3 * c3, -c3};
    const Complex m2[4] = {c2 * c4, -c2 * c2, c4 * c4, -c2 * c4};
    const Complex m3[4] = {c4 + c2 * c3, -2.0 * c2, 2.0 * c3 * c4, -(c4 + c2 * c3)};
    const Complex m4[4] = {c8 - d27, -2.0 * c6, 2.0 * d38, -(c8 - d27)};
    for (int i = 0; i < 4; ++i) {
        const Complex r = 2.0 * d28 * m1[i] + 2.0 * c7 * m2[i] - (c8 + d27) * m3[i] + d1 * m4[i];
        CHECK(std::abs(r) < 1e-12);
    }
}

TEST_CASE("truth table spot checks") {
    std::mt19937_64 rng(431);
    for (const char* id : {"s51", "s52", "s53"}) {
        CAPTURE(id);
        ScenarioConfig cfg = sample_branch(id, "1", rng);
        BranchOutcome out = evaluate_truth_table_branch(cfg);
        CHECK(out.classifier_matches);
        CHECK(out.growth_oracle_matches);
    }
    // one negative branch each
    {
        ScenarioConfig cfg = sample_branch("s52", "4b", rng);
        BranchOutcome out = evaluate_truth_table_branch(cfg);
        CHECK(out.expected.scenario_case == 4);
        CHECK(out.classifier_matches);
        CHECK(out.growth_oracle_matches);
    }
    {
        ScenarioConfig cfg = sample_branch("s53", "3", rng);
        BranchOutcome out = evaluate_truth_table_branch(cfg);
        CHECK(out.expected.scenario_case == 3);
        CHECK(out.classifier_matches);
        CHECK(out.growth_oracle_matches);
    }
}

TEST_CASE("the decoupled-constants bound state matches its printed closed form") {
    // the family corner where the eigenfunction member vanishes and the
    // associated image becomes the bound state
    std::mt19937_64 rng(443);
    ScenarioConfig cfg = sample_branch("s53", "3", rng);
    ScenarioInstance inst = instantiate(cfg);
    FirstOrderBuild b = build_first_order(inst.set, CMat::identity(2), inst.h_plus);
    RatVecFun built = apply_operator(b.q_minus, oracle_state_preimage(cfg, "psi6_1"));
    CHECK(rat_equal(built, oracle_state(cfg, "psi6_1_c2c4zero")));
    CHECK(classify_normalizability(built).verdict == Normalizability::Normalizable);
}

TEST_CASE("scenario oracle sweep through the report interface") {
    for (const char* id : {"s51", "s51-case1", "s52", "s53"}) {
        CAPTURE(id);
        ScenarioConfig cfg = default_config(id);
        ScenarioInstance inst = instantiate(cfg);
        FirstOrderBuild b = build_first_order(inst.set, CMat::identity(2), inst.h_plus);
        VerificationReport rep = verify_scenario_oracles(b, cfg);
        CHECK(rep.overall());
        for (const Check& c : rep.checks) CHECK(c.residual <= 1e-9);
    }
    ScenarioConfig custom;
    custom.id = "custom";
    VecFun phi(1);
    phi.at(0) = ExpPoly::exponential(Complex{0.5, 0.0});
    custom.n = 1;
    custom.custom_entries.emplace_back(phi, Complex{-0.25, 0.0}, 0);
    ScenarioInstance inst = instantiate(custom);
    FirstOrderBuild b = build_first_order(inst.set, CMat::identity(1), inst.h_plus);
    CHECK_THROWS_AS(verify_scenario_oracles(b, custom), OracleMissingError);
}

TEST_CASE("custom scenario round: derive the potential from the set") {
    // single-channel set with a derived potential equal to zero
    const Complex k{0.8, 0.0};
    VecFun phi(1);
    phi.at(0) = ExpPoly::exponential(k);
    ScenarioConfig cfg;
    cfg.id = "custom";
    cfg.n = 1;
    cfg.custom_entries.emplace_back(phi, -k * k, 0);
    ScenarioInstance inst = instantiate(cfg);
    CHECK(rat_is_zero(inst.h_plus.potential));
}
