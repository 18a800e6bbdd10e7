#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "szegolab/io.hpp"

using namespace szegolab;

TEST_CASE("domain specs round trip through the key-value format") {
    Eigen::MatrixXd coeffs(2, 2);
    coeffs << -1.0, 0.5, 1.0, 0.25;
    const DomainSpec specs[] = {DomainSpec::unit_ball(2), DomainSpec::bumped_ball(0.0625),
                                DomainSpec::siegel(2),
                                DomainSpec::reinhardt_profile(coeffs)};
    for (const auto& spec : specs) {
        const auto back = parse_domain_spec(serialize_domain_spec(spec));
        CHECK(back == spec);
    }
}

TEST_CASE("domain parsing rejects malformed input") {
    CHECK_THROWS_AS((void)parse_domain_spec("kind = torus\n"), Error);
    CHECK_THROWS_AS((void)parse_domain_spec("n = 2\n"), Error);
    CHECK_THROWS_AS((void)parse_domain_spec("kind = bumped-ball\n"), Error);  // no epsilon
    CHECK_THROWS_AS((void)domain_from_name("polydisc", 0.0), Error);
    CHECK(domain_from_name("ball", 0.0) == DomainSpec::unit_ball(2));
    CHECK(domain_from_name("bumped-ball", 0.07) == DomainSpec::bumped_ball(0.07));
}

TEST_CASE("key-value parser handles comments and blank lines") {
    std::istringstream is("# header\n\nkind = ball  \n  degree=12 # trailing\n");
    const auto kv = parse_key_value(is);
    CHECK(kv.at("kind") == "ball");
    CHECK(kv.at("degree") == "12");
    std::istringstream bad("just words\n");
    CHECK_THROWS_AS((void)parse_key_value(bad), Error);
}

TEST_CASE("complex vector literals round trip") {
    CVec v(2);
    v << cplx(0.25, -1.5), cplx(0.0, 2.0);
    const CVec back = parse_cvec(format_cvec(v));
    CHECK((back - v).norm() == 0.0);
    CHECK(parse_cvec("1;0").size() == 2);
    CHECK_THROWS_AS((void)parse_cvec("abc"), Error);
}

TEST_CASE("17-significant-digit formatting is value-exact") {
    for (double v : {kPi, 1.0 / 3.0, 4.0 * kPi * kPi * kPi, -1.5e-13}) {
        CHECK(std::stod(format_g17(v)) == v);
    }
}

TEST_CASE("scaling and curvature CSV schemas") {
    std::ostringstream os;
    write_scaling_csv(os, {{2, 0.25, 0.25, 0.01, 1e-12}});
    CHECK(os.str().rfind("j,delta,eta,residual,opnorm(Q-I)\n", 0) == 0);
    CHECK(os.str().find("\n2,0.25,0.25,") != std::string::npos);

    CurvatureReport row;
    row.z = CVec::Zero(2);
    row.X = CVec(Eigen::Vector2cd(1.0, 0.0));
    row.tau = std::sqrt(2.0);
    row.g = 4.0;
    row.beta = 124.0;
    row.R = -1.0;
    row.Ric = -1.5;
    std::ostringstream cs;
    write_curvature_csv(cs, {row});
    CHECK(cs.str().rfind("z,X,tau,g,beta,R,Ric,tail_bound\n", 0) == 0);
    CHECK(cs.str().find("-1.5") != std::string::npos);
}
