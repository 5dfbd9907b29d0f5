#include "polyharm/kernels.hpp"
#include "polyharm/operators.hpp"
#include "polyharm/structure.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace polyharm;
using Catch::Approx;

namespace {

std::vector<double> interior_point(std::mt19937_64& rng, unsigned n, double rmax = 0.8,
                                   double pole_clearance = 0.1) {
    auto uniform = [&rng]() { return double(rng() >> 11) * 0x1p-53; };
    std::vector<double> x(n);
    while (true) {
        double ns = 0;
        for (unsigned i = 0; i < n; ++i) {
            x[i] = 2.0 * uniform() - 1.0;
            ns += x[i] * x[i];
        }
        if (ns > rmax * rmax) continue;
        double d = (x[0] - 1.0) * (x[0] - 1.0);
        for (unsigned i = 1; i < n; ++i) d += x[i] * x[i];
        if (d < pole_clearance * pole_clearance) continue;
        return x;
    }
}

}  // namespace

TEST_CASE("jet arithmetic basics") {
    std::vector<double> x = {0.3, -0.2, 0.4};
    Jet2 ns = jet_norm_sq(x);
    CHECK(ns.value == Approx(0.29).epsilon(1e-15));
    for (unsigned i = 0; i < 3; ++i) {
        CHECK(ns.grad[i] == Approx(2 * x[i]).epsilon(1e-15));
        for (unsigned k = 0; k < 3; ++k)
            CHECK(ns.h(i, k) == Approx(i == k ? 2.0 : 0.0).margin(1e-15));
    }

    Jet2 c = Jet2::constant(3, 4.5);
    for (unsigned i = 0; i < 3; ++i) CHECK(c.grad[i] == 0.0);
    CHECK(c.trace() == 0.0);
}

TEST_CASE("jet hessians are symmetric") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 10; ++it) {
        std::vector<double> x = interior_point(rng, 3);
        KernelSpec spec(0.5, unit_vector(3));
        Jet2 jet = poisson_kernel_jet(spec, x);
        for (unsigned i = 0; i < 3; ++i)
            for (unsigned k = 0; k < i; ++k)
                CHECK(std::abs(jet.h(i, k) - jet.h(k, i)) <= 1e-14 * (1.0 + std::abs(jet.h(i, k))));
    }
}

TEST_CASE("jet arithmetic against exact polynomial derivatives") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 15; ++it) {
        unsigned n = 2 + unsigned(rng() % 3);
        ExactPolynomial u = detail::random_polynomial(n, 6, rng);
        JetField field = polynomial_field(u);
        std::vector<double> x = interior_point(rng, n, 0.9, 0.0);
        Jet2 jet = field(x);

        double scale = 1.0 + std::abs(jet.value);
        CHECK(std::abs(jet.value - u.eval_double(x)) / scale <= 1e-12);
        for (unsigned i = 0; i < n; ++i) {
            double gi = u.derivative(i).eval_double(x);
            CHECK(std::abs(jet.grad[i] - gi) / (1.0 + std::abs(gi)) <= 1e-12);
            for (unsigned k = 0; k <= i; ++k) {
                double hik = u.derivative(i).derivative(k).eval_double(x);
                CHECK(std::abs(jet.h(i, k) - hik) / (1.0 + std::abs(hik)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("poisson kernel values") {
    // theta=0 reduces to the classical Poisson kernel with C_0 = 1
    KernelSpec spec0(0.0, unit_vector(3));
    std::vector<double> x = {0.2, 0.1, -0.3};
    double ns = 0.04 + 0.01 + 0.09;
    double d2 = (0.2 - 1.0) * (0.2 - 1.0) + 0.01 + 0.09;
    CHECK(poisson_kernel(spec0, x) ==
          Approx((1.0 - ns) / std::pow(d2, 1.5)).epsilon(1e-13));

    // x = 0 gives C_theta for any pole
    KernelSpec spec1(1.0, unit_vector(3, 1));
    std::vector<double> origin(3, 0.0);
    CHECK(poisson_kernel(spec1, origin) == Approx(c_theta(1.0, 3)).epsilon(1e-13));

    // n=3, theta=1, x=(1/2,0,0): C_1 (3/4)^3 / (1/2)^5 = 10.125
    KernelSpec spec(1.0, unit_vector(3));
    std::vector<double> half = {0.5, 0.0, 0.0};
    CHECK(poisson_kernel(spec, half) == Approx(10.125).epsilon(1e-13));
}

TEST_CASE("kernel guards") {
    KernelSpec spec(0.0, unit_vector(3));
    std::vector<double> outside = {0.9999999999999, 0.0, 0.0};
    CHECK_THROWS_AS(poisson_kernel(spec, outside), std::domain_error);
    std::vector<double> bad = {1.1, 0.0, 0.0};
    CHECK_THROWS_AS(poisson_kernel(spec, bad), std::domain_error);
    CHECK_THROWS_AS(KernelSpec(0.0, std::vector<double>{0.5, 0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("L_theta annihilates its Poisson kernel pointwise") {
    std::mt19937_64 rng(11);
    for (double theta : {0.0, 0.5, 1.0, 2.0}) {
        for (unsigned n : {2u, 3u}) {
            KernelSpec spec(theta, unit_vector(n));
            double worst = 0.0;
            for (int it = 0; it < 100; ++it) {
                std::vector<double> x = interior_point(rng, n);
                Jet2 jet = poisson_kernel_jet(spec, x);
                double res = std::abs(L_residual_from_jet(theta, jet, x)) /
                             (1.0 + std::abs(jet.value));
                worst = std::max(worst, res);
            }
            CHECK(worst <= 1e-8);
        }
    }
}

TEST_CASE("L residual of exact polynomials matches the exact operator") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 10; ++it) {
        unsigned n = 2 + unsigned(rng() % 3);
        ExactPolynomial u = detail::random_polynomial(n, 5, rng);
        Rational theta(3, 2);
        ExactPolynomial lu = apply_L(theta, u);
        JetField field = polynomial_field(u);
        std::vector<double> x = interior_point(rng, n, 0.9, 0.0);
        double via_jet = L_residual_at(to_double(theta), field, x);
        double via_exact = lu.eval_double(x);
        CHECK(std::abs(via_jet - via_exact) / (1.0 + std::abs(via_exact)) <= 1e-10);
    }
}

TEST_CASE("radial profile field: Phi_theta annihilation at points") {
    std::mt19937_64 rng(17);
    for (double theta : {0.5, 1.5}) {
        PhiTheta phi = phi_theta(parse_rational(theta == 0.5 ? "1/2" : "3/2"), 3);
        JetField field = radial_profile_field(phi.profile);
        double worst = 0.0;
        for (int it = 0; it < 40; ++it) {
            std::vector<double> x = interior_point(rng, 3, 0.85, 0.0);
            Jet2 jet = field(x);
            double res = std::abs(L_residual_from_jet(theta, jet, x)) /
                         (1.0 + std::abs(jet.value));
            worst = std::max(worst, res);
        }
        CHECK(worst <= 1e-8);
    }
}

TEST_CASE("u_jn values and structure") {
    std::vector<double> origin(3, 0.0);
    CHECK(u_jn(0, 2, origin) == Approx(1.0).epsilon(1e-15));  // (1-0)^(N-1)
    CHECK(u_jn(1, 1, origin) == Approx(1.0).epsilon(1e-15));  // kernel without C_0 at x=0

    // U_{j,N} = M^(N-j)[P_{j-1}] / C_{j-1}
    std::mt19937_64 rng(19);
    for (unsigned n : {2u, 3u}) {
        for (unsigned N : {1u, 2u, 3u}) {
            for (unsigned j = 1; j <= N; ++j) {
                std::vector<double> x = interior_point(rng, n);
                double ns = 0;
                for (double v : x) ns += v * v;
                KernelSpec spec(double(j) - 1.0, unit_vector(n));
                double expected = std::pow(1.0 - ns, double(N - j)) * poisson_kernel(spec, x) /
                                  c_theta(double(j) - 1.0, n);
                CHECK(u_jn(j, N, x) == Approx(expected).epsilon(1e-12));
            }
        }
    }
    std::vector<double> x = {0.3, 0.0, 0.0};
    CHECK_THROWS_AS(u_jn(3, 2, x), std::invalid_argument);
}

TEST_CASE("u_jn generator is annihilated by L_{j-1} pointwise") {
    // for (n,N,j) = (3,2,1): U_{1,2} = M[w] with w = P_0 / C_0 solving L_0 w = 0
    std::mt19937_64 rng(23);
    double worst = 0.0;
    for (int it = 0; it < 50; ++it) {
        std::vector<double> x = interior_point(rng, 3);
        Jet2 u = u_jn_jet(1, 2, x);
        Jet2 m = (1.0 - jet_norm_sq(x)).pow(-1.0);  // strip the M factor
        Jet2 w = u * m;
        double res = std::abs(L_residual_from_jet(0.0, w, x)) / (1.0 + std::abs(w.value));
        worst = std::max(worst, res);
    }
    CHECK(worst <= 1e-7);
}

TEST_CASE("exponent paths agree: numeric (1-|x|^2)^(1+2 theta) vs exact M power") {
    // 1+2 theta a non-negative integer: theta = 1/2 -> M^2, theta = 3/2 -> M^4
    std::mt19937_64 rng(31);
    for (auto [theta, power] : {std::pair<double, unsigned>{0.5, 2u}, {1.5, 4u}}) {
        for (unsigned n : {2u, 3u}) {
            ExactPolynomial exact = m_power(ExactPolynomial::constant(n, 1), power);
            for (int it = 0; it < 20; ++it) {
                std::vector<double> x = interior_point(rng, n, 0.95, 0.0);
                Jet2 numeric = (1.0 - jet_norm_sq(x)).pow(1.0 + 2.0 * theta);
                double ref = exact.eval_double(x);
                CHECK(std::abs(numeric.value - ref) / (1.0 + std::abs(ref)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("theta-Poisson integrals") {
    std::vector<double> x = {0.25, -0.1, 0.2};
    auto one = [](std::span<const double>) { return 1.0; };

    // theta = 0, f = 1: harmonic extension of 1 is 1
    CHECK(theta_poisson_integral(0.0, one, x) == Approx(1.0).epsilon(1e-8));

    // x = 0: value is C_theta for any theta
    std::vector<double> origin(3, 0.0);
    for (double theta : {0.0, 0.5, 1.0})
        CHECK(theta_poisson_integral(theta, one, origin) ==
              Approx(c_theta(theta, 3)).epsilon(1e-10));

    // theta = 0, f = zeta_1: reproduces the solid harmonic x1
    auto zeta1 = [](std::span<const double> z) { return z[0]; };
    CHECK(theta_poisson_integral(0.0, zeta1, x) == Approx(x[0]).epsilon(1e-8));

    // theta = 1, f = 1: by uniqueness the solution is Phi_1(x)/Phi_1(boundary)
    double expected = 0.75 * (1.0 + (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / 3.0);
    CHECK(theta_poisson_integral(1.0, one, x) == Approx(expected).epsilon(1e-8));

    CHECK_THROWS_AS(theta_poisson_integral(-0.5, one, x), std::domain_error);
}

TEST_CASE("theta-Poisson integral satisfies the equation pointwise") {
    // smooth boundary data f(zeta) = zeta_1, theta = 1, n = 3
    std::mt19937_64 rng(29);
    auto f = [](std::span<const double> z) { return z[0]; };
    double worst = 0.0;
    for (int it = 0; it < 10; ++it) {
        std::vector<double> x = interior_point(rng, 3, 0.7, 0.0);
        Jet2 u = theta_poisson_integral_jet(1.0, f, x, 24);
        double res = std::abs(L_residual_from_jet(1.0, u, x)) / (1.0 + std::abs(u.value));
        worst = std::max(worst, res);
    }
    CHECK(worst <= 1e-6);
}
