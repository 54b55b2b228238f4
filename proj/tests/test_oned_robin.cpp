#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "robinpolya/oned_robin.hpp"
#include "robinpolya/rootfind.hpp"

using namespace robinpolya;

namespace {

// Independent p = 2 oracles: the classical reductions of the boundary
// relation, sqrt(mu) tan(sqrt(mu) s0) = beta for beta > 0 and
// sqrt(-mu) tanh(sqrt(-mu) s0) = |beta| for beta < 0, solved by scalar
// bisection on pole-free forms.
double mu_trig_p2(double beta, double s0) {
    const double pi = 3.14159265358979323846;
    auto f = [&](double t) {
        return t * std::sin(t * s0) - beta * std::cos(t * s0);
    };
    const double t = bisect(f, 1e-14, (pi / s0) * 0.5 * (1.0 - 1e-15), 1e-14).root;
    return t * t;
}

double mu_hyp_p2(double beta, double s0) {
    auto f = [&](double t) { return t * std::tanh(t * s0) - std::abs(beta); };
    double hi = 1.0;
    while (f(hi) < 0.0) hi *= 2.0;
    const double t = bisect(f, 1e-14, hi, 1e-14).root;
    return -t * t;
}

}  // namespace

TEST_CASE("RobinParams validation") {
    CHECK_THROWS_AS(RobinParams(PExponent(2.0), 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(RobinParams(PExponent(2.0), 1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(
        RobinParams(PExponent(2.0), std::numeric_limits<double>::infinity(), 1.0),
        std::invalid_argument);
}

TEST_CASE("mu1 zero branch") {
    const auto r = mu1(RobinParams(PExponent(2.0), 0.0, 1.0));
    CHECK(r.mu == 0.0);
    CHECK(r.branch == Mu1Branch::zero);
}

TEST_CASE("mu1 matches the p = 2 tangent reduction") {
    // frozen from the oracle below: mu_trig_p2(1, 1) = 0.7401738843949670
    const auto r = mu1(RobinParams(PExponent(2.0), 1.0, 1.0));
    CHECK(r.branch == Mu1Branch::trigonometric);
    CHECK(r.mu == Catch::Approx(0.740174).margin(1e-6));
    CHECK(r.mu == Catch::Approx(mu_trig_p2(1.0, 1.0)).epsilon(1e-10));

    for (double beta : {0.1, 0.5, 2.0, 10.0}) {
        for (double s0 : {0.25, 1.0, 4.0}) {
            const auto m = mu1(RobinParams(PExponent(2.0), beta, s0));
            INFO("beta = " << beta << ", s0 = " << s0);
            CHECK(m.mu == Catch::Approx(mu_trig_p2(beta, s0)).epsilon(1e-9));
        }
    }
}

TEST_CASE("mu1 matches the p = 2 hyperbolic reduction") {
    // frozen from the oracle: mu_hyp_p2(-1, 1) = -1.4392288398906453
    const auto r = mu1(RobinParams(PExponent(2.0), -1.0, 1.0));
    CHECK(r.branch == Mu1Branch::hyperbolic);
    CHECK(r.mu == Catch::Approx(-1.439229).margin(1e-6));
    CHECK(r.mu == Catch::Approx(mu_hyp_p2(-1.0, 1.0)).epsilon(1e-10));

    for (double beta : {-0.1, -0.5, -2.0}) {
        for (double s0 : {0.25, 1.0, 4.0}) {
            const auto m = mu1(RobinParams(PExponent(2.0), beta, s0));
            INFO("beta = " << beta << ", s0 = " << s0);
            CHECK(m.mu == Catch::Approx(mu_hyp_p2(beta, s0)).epsilon(1e-9));
        }
    }
}

TEST_CASE("mu1 approaches the Dirichlet value as beta grows") {
    const double pi = 3.14159265358979323846;
    const auto r = mu1(RobinParams(PExponent(2.0), 1e6, 1.0));
    const double dirichlet = (pi / 2.0) * (pi / 2.0);
    CHECK(r.mu < dirichlet);
    CHECK(r.mu == Catch::Approx(dirichlet).epsilon(0.01));
}

TEST_CASE("mu1 sign, bounds and transcendental residual on the sweep") {
    for (double p : {1.5, 2.0, 3.0}) {
        PExponent pe(p);
        for (double beta : {-2.0, -0.5, 0.5, 1.0, 5.0}) {
            for (double s0 : {0.25, 1.0, 4.0}) {
                RobinParams rp(pe, beta, s0);
                const auto r = mu1(rp);
                INFO("p = " << p << ", beta = " << beta << ", s0 = " << s0);

                // sign of mu matches the sign of beta
                CHECK(r.mu * beta > 0.0);
                CHECK(r.boundary_residual < 1e-9);
                // constants are admissible for either sign of beta
                CHECK(r.mu <= beta / s0 + 1e-10);

                if (beta > 0.0) {
                    // strict upper bound by the Dirichlet-interval value
                    CHECK(r.mu < (p - 1.0) * std::pow(pi_p(pe) / (2.0 * s0), p));
                    // constants are admissible: mu <= beta / s0
                    CHECK(r.mu <= beta / s0 + 1e-10);
                    // displayed transcendental equation, trigonometric branch:
                    // mu/(p-1) = beta^{p'} / (cos_p^{-p}(omega s0) - 1)
                    const double omega = std::pow(r.mu / (p - 1.0), 1.0 / p);
                    const double x0 = cos_p(pe, omega * s0).value;
                    const double lhs = r.mu / (p - 1.0);
                    const double rhs = std::pow(beta, pe.pconj) /
                                       (std::pow(x0, -p) - 1.0);
                    CHECK(std::abs(lhs - rhs) / std::abs(lhs) < 1e-9);
                } else {
                    // mu <= -(p-1)|beta|^{p'}
                    CHECK(r.mu <= -(p - 1.0) * std::pow(std::abs(beta), pe.pconj)
                                      + 1e-12);
                    // hyperbolic branch of the displayed equation
                    const double omega = std::pow(-r.mu / (p - 1.0), 1.0 / p);
                    const double x0 = cosh_p(pe, omega * s0).value;
                    const double lhs = -r.mu / (p - 1.0);
                    const double rhs = std::pow(std::abs(beta), pe.pconj) /
                                       (1.0 - std::pow(x0, -p));
                    CHECK(std::abs(lhs - rhs) / std::abs(lhs) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("mu1 is nondecreasing in beta") {
    for (double p : {1.5, 2.0, 3.0}) {
        PExponent pe(p);
        for (double s0 : {0.25, 1.0}) {
            double prev = -std::numeric_limits<double>::infinity();
            for (double beta : {-2.0, -0.5, 0.0, 0.5, 1.0, 5.0}) {
                const double mu = mu1(RobinParams(pe, beta, s0)).mu;
                INFO("p = " << p << ", s0 = " << s0 << ", beta = " << beta);
                CHECK(mu >= prev - 1e-10);
                prev = mu;
            }
        }
    }
}

TEST_CASE("eigenfunction samples satisfy endpoint and boundary conditions") {
    PExponent p2(2.0);
    RobinParams rp(p2, 1.0, 1.0);
    const auto r = mu1(rp);
    const std::vector<double> grid{0.0, 0.25, 0.5, 0.75, 1.0};
    const auto samples = eigenfunction_samples(rp, r, grid);
    CHECK(samples[0].value == 1.0);
    CHECK(samples[0].derivative == 0.0);
    for (const auto& s : samples) CHECK(s.value > 0.0);
    // Robin boundary condition at s0 (p = 2): X'(s0) + beta X(s0) = 0
    const auto& end = samples.back();
    CHECK(std::abs(end.derivative + rp.beta * end.value) < 1e-10);

    // beta < 0: eigenfunction strictly increasing
    RobinParams rn(p2, -1.0, 1.0);
    const auto rneg = mu1(rn);
    const auto sneg = eigenfunction_samples(rn, rneg, grid);
    for (size_t i = 1; i < sneg.size(); ++i)
        CHECK(sneg[i].value > sneg[i - 1].value);

    CHECK_THROWS_AS(eigenfunction_samples(rp, r, {1.5}), std::invalid_argument);
    CHECK_THROWS_AS(eigenfunction_samples(rp, r, {-0.5}), std::invalid_argument);
}

TEST_CASE("general p boundary condition residual of the eigenfunction") {
    for (double p : {1.5, 3.0}) {
        PExponent pe(p);
        for (double beta : {1.0, -0.5}) {
            RobinParams rp(pe, beta, 1.0);
            const auto r = mu1(rp);
            const auto s = eigenfunction_samples(rp, r, {1.0}).front();
            const double flux = std::pow(std::abs(s.derivative), p - 2.0) *
                                s.derivative;
            const double bc = flux + beta * std::pow(std::abs(s.value), p - 2.0) *
                                         s.value;
            INFO("p = " << p << ", beta = " << beta);
            CHECK(std::abs(bc) < 1e-9 * (1.0 + std::abs(beta)));
        }
    }
}

TEST_CASE("discrete oracle: unconstrained matches mu1") {
    // spec example: (p=2, beta=1, s0=1, n=2000) within 1e-3 relative
    RobinParams rp(PExponent(2.0), 1.0, 1.0);
    const auto o = mu1_discrete_oracle(rp, 2000, false);
    const double mu = mu1(rp).mu;
    CHECK(o.converged);
    CHECK(std::abs(o.value - mu) / mu < 1e-3);
    // the discrete minimum is an upper bound for the continuum infimum
    CHECK(o.value >= mu - 1e-12);
}

TEST_CASE("discrete oracle: beta = 0 gives zero") {
    RobinParams rp(PExponent(3.0), 0.0, 1.0);
    const auto o = mu1_discrete_oracle(rp, 64, false);
    CHECK(std::abs(o.value) < 1e-8);
}

TEST_CASE("discrete oracle: constrained lands between mu1 and beta/s0") {
    // For beta < 0 the monotone class excludes the increasing eigenfunction;
    // constants are admissible, so the constrained value sits in
    // [mu1, beta/s0].
    RobinParams rp(PExponent(2.0), -1.0, 1.0);
    const auto o = mu1_discrete_oracle(rp, 500, true);
    const double mu = mu1(rp).mu;
    CHECK(o.value >= mu - 1e-9);
    CHECK(o.value <= rp.beta / rp.s0 + 1e-6);
}

TEST_CASE("discrete oracle: constrained equals unconstrained for beta > 0") {
    // the beta > 0 eigenfunction is decreasing, so the cone constraint
    // is inactive at the minimizer
    RobinParams rp(PExponent(2.0), 1.0, 1.0);
    const auto c = mu1_discrete_oracle(rp, 500, true);
    const auto u = mu1_discrete_oracle(rp, 500, false);
    CHECK(c.value == Catch::Approx(u.value).epsilon(1e-6));
}

TEST_CASE("discrete oracle input validation") {
    RobinParams rp(PExponent(2.0), 1.0, 1.0);
    CHECK_THROWS_AS(mu1_discrete_oracle(rp, 4, false), std::invalid_argument);
}

TEST_CASE("discrete oracle converges to mu1 under grid refinement") {
    for (double p : {1.5, 3.0}) {
        PExponent pe(p);
        for (double beta : {-0.5, 1.0}) {
            RobinParams rp(pe, beta, 1.0);
            const double mu = mu1(rp).mu;
            const double gap1 =
                std::abs(mu1_discrete_oracle(rp, 250, false).value - mu);
            const double gap2 =
                std::abs(mu1_discrete_oracle(rp, 2000, false).value - mu);
            INFO("p = " << p << ", beta = " << beta);
            CHECK(gap2 < gap1 + 1e-12);
            CHECK(gap2 / std::abs(mu) < 5e-3);
        }
    }
}
