#include <doctest.h>

#include "sl2flow/verify.hpp"

#include <stdexcept>
#include <string>

using namespace sl2flow;

TEST_SUITE("verify") {

TEST_CASE("tolerances are pinned") {
    // frozen: loosening one of these to make a red configuration pass would
    // defeat the whole self-check, so any change must show up in review
    CHECK(tolerances::kExact == 0.0);
    CHECK(tolerances::kShuffleHom == 1e-9);
    CHECK(tolerances::kTwoRoute == 1e-6);
    CHECK(tolerances::kFlow == 1e-6);
    CHECK(tolerances::kRiccati == 1e-5);
    CHECK(tolerances::kDerivative == 1e-4);
    CHECK(tolerances::kFlowOracleStep == 1e-4);
}

TEST_CASE("needs controls or draws") {
    VerifyConfig cfg;
    cfg.draws = 0;
    cfg.controls.reset();
    CHECK_THROWS_AS(run_verification(cfg), std::invalid_argument);
}

TEST_CASE("battery passes on gentle explicit controls") {
    VerifyConfig cfg;
    cfg.degree = 8;
    cfg.steps = 2000;
    cfg.draws = 0;
    cfg.shuffle_pairs = 10;
    cfg.controls = ControlSpec::constant(0.3, 0.15, -0.1, 0.2);

    auto report = run_verification(cfg);
    CHECK(report.degree == 8);
    CHECK(report.draws == 0);
    REQUIRE(report.checks.size() == 9);
    CHECK(report.checks[0].name == "fixed_point_residual");
    CHECK(report.checks[1].name == "triple_identity");
    CHECK(report.checks[2].name == "sigma_phi_symmetry");
    CHECK(report.checks[3].name == "shuffle_homomorphism");
    CHECK(report.checks[4].name == "xi_c_two_route");
    CHECK(report.checks[5].name == "exp_identity");
    CHECK(report.checks[6].name == "flow_factorization");
    CHECK(report.checks[7].name == "riccati_oracle");
    CHECK(report.checks[8].name == "derivative_residual");
    for (const auto& c : report.checks) {
        INFO(c.name, " max_error=", c.max_error, " tolerance=", c.tolerance);
        CHECK(c.pass);
    }
    CHECK(report.all_pass);
    CHECK((report.convention == "left" || report.convention == "right"));

    auto text = report_to_text(report);
    CHECK(text.find("PASS  fixed_point_residual") != std::string::npos);
    CHECK(text.find("riccati_oracle") != std::string::npos);
    CHECK(text.find("all checks passed") != std::string::npos);
}

TEST_CASE("seeded random draws are reproducible") {
    VerifyConfig cfg;
    cfg.degree = 5;
    cfg.steps = 500;
    cfg.draws = 2;
    cfg.seed = 31;
    cfg.shuffle_pairs = 5;

    auto r1 = run_verification(cfg);
    auto r2 = run_verification(cfg);
    REQUIRE(r1.checks.size() == r2.checks.size());
    for (std::size_t i = 0; i < r1.checks.size(); ++i) {
        CHECK(r1.checks[i].name == r2.checks[i].name);
        CHECK(r1.checks[i].max_error == r2.checks[i].max_error);
    }
    CHECK(r1.convention == r2.convention);
}

}  // TEST_SUITE
