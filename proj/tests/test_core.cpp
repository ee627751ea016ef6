#include <doctest.h>

#include <cmath>
#include <limits>

#include "heat/core.hpp"
#include "heat/rng.hpp"
#include "heat/sync_solver.hpp"

using namespace heat;

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

TEST_SUITE("core") {

TEST_CASE("derive_r examples") {
    CHECK(derive_r(0.5, 0.01, 0.1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(derive_r(1.0, 1.0, 1.0) == 1.0);
    CHECK(derive_r(0.25, 0.02, 0.1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(derive_r(0.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(derive_r(1.0, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(derive_r(1.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("derive_r inverse round-trip within 2 ulps") {
    SplitMix64 rng(7);
    for (int t = 0; t < 1000; ++t) {
        double a = 0.01 + rng.next_double() * 10.0;
        double dt = 0.001 + rng.next_double();
        double dx = 0.01 + rng.next_double();
        double back = derive_r(a, dt, dx) * dx * dx / dt;
        CHECK(std::abs(back - a) <= 2.0 * kEps * a);
    }
}

TEST_CASE("SolverParams stability window") {
    CHECK(SolverParams::checked(0.5, 0.01, 0.1).r() == doctest::Approx(0.5));
    CHECK_THROWS_AS(SolverParams::checked(0.6, 1.0, 1.0), std::domain_error);
    CHECK(SolverParams::unchecked(0.6, 1.0, 1.0).r() == doctest::Approx(0.6));
    CHECK(SolverParams::from_r(0.5).r() == 0.5);
    CHECK_THROWS_AS(SolverParams::from_r(0.6), std::domain_error);
    CHECK(SolverParams::from_r(0.6, true).r() == 0.6);
}

TEST_CASE("TemperatureField invariants") {
    CHECK_THROWS_AS(TemperatureField({1.0, 2.0}), std::domain_error);
    CHECK_THROWS_AS(TemperatureField({1.0, std::nan(""), 3.0}), std::domain_error);
    CHECK_THROWS_AS(
        TemperatureField({1.0, std::numeric_limits<double>::infinity(), 0.0}),
        std::domain_error);
    TemperatureField f({1.0, 2.0, 3.0});
    CHECK(f.size() == 3);
    CHECK(f[1] == 2.0);
}

TEST_CASE("cosine_init examples") {
    CHECK_THROWS_AS(cosine_init(2), std::domain_error);
    TemperatureField u = cosine_init(100);
    CHECK(u[0] == 1.0);
    CHECK(std::abs(u[99]) <= 1e-15);
    CHECK(std::abs(u[33]) <= 1e-15);  // 3*pi*33/198 = pi/2
}

TEST_CASE("linear_steady_state examples") {
    TemperatureField a = linear_steady_state(5, 1.0, 0.0);
    CHECK(a.values() == std::vector<double>{1.0, 0.75, 0.5, 0.25, 0.0});
    TemperatureField b = linear_steady_state(3, 2.0, 2.0);
    CHECK(b.values() == std::vector<double>{2.0, 2.0, 2.0});
    TemperatureField c = linear_steady_state(4, 0.0, 3.0);
    CHECK(c.values() == std::vector<double>{0.0, 1.0, 2.0, 3.0});
}

TEST_CASE("linear steady state is a sync fixed point for any stable r") {
    SplitMix64 rng(11);
    for (int t = 0; t < 50; ++t) {
        std::size_t n = 3 + rng.next_bounded(61);
        double r = 0.5 * (rng.next_double() * 0.999 + 0.001);
        double c1 = rng.next_double() * 4.0 - 2.0;
        double c2 = rng.next_double() * 4.0 - 2.0;
        TemperatureField steady = linear_steady_state(n, c1, c2);
        TemperatureField stepped =
            sync_step(steady, SolverParams::from_r(r),
                      BoundaryCondition::dirichlet(c1, c2));
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(stepped[i] - steady[i]) <= 1e-14);
    }
}

TEST_CASE("l2_norm examples and brute-force oracle") {
    CHECK(l2_norm(TemperatureField({3.0, 4.0, 0.0})) == 5.0);
    CHECK(l2_norm(TemperatureField(std::vector<double>(10, 0.0))) == 0.0);

    TemperatureField u = cosine_init(100);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < u.size(); ++i)
        acc += (long double)u[i] * u[i];
    double oracle = double(std::sqrt(acc));
    CHECK(l2_norm(u) == doctest::Approx(oracle).epsilon(1e-14));
    CHECK(l2_norm(u) == doctest::Approx(6.1339220731926485).epsilon(1e-14));
}

TEST_CASE("l2_norm scaling and positivity") {
    SplitMix64 rng(13);
    for (int t = 0; t < 200; ++t) {
        std::size_t n = 3 + rng.next_bounded(29);
        std::vector<double> v(n);
        for (auto& x : v) x = rng.next_double() * 2.0 - 1.0;
        TemperatureField u(v);
        double s = rng.next_double() * 10.0 - 5.0;
        for (auto& x : v) x *= s;
        double lhs = l2_norm(TemperatureField(v));
        double rhs = std::abs(s) * l2_norm(u);
        CHECK(std::abs(lhs - rhs) <= 4.0 * kEps * std::max(1.0, rhs));
        CHECK(l2_norm(u) >= 0.0);
    }
}

TEST_CASE("total_heat examples and oracle") {
    CHECK(total_heat(TemperatureField({2.0, 0.0, 1.0})) == 3.0);
    CHECK(total_heat(TemperatureField({1.0, 1.0, 1.0, 1.0})) == 4.0);

    TemperatureField u = cosine_init(100);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < u.size(); ++i) acc += u[i];
    CHECK(total_heat(u) == doctest::Approx(double(acc)).epsilon(1e-14));
    CHECK(total_heat(u) == doctest::Approx(50.0).epsilon(1e-13));
}

TEST_CASE("PartitionSpec") {
    PartitionSpec p(100, 1);
    CHECK(p.pe_count() == 100);
    CHECK(p.pe_of(42) == 42);
    PartitionSpec q(100, 25);
    CHECK(q.pe_count() == 4);
    CHECK(q.pe_of(24) == 0);
    CHECK(q.pe_of(25) == 1);
    CHECK(q.crosses(24, 25));
    CHECK(!q.crosses(25, 26));
    CHECK_THROWS_AS(PartitionSpec(100, 7), std::domain_error);
    CHECK_THROWS_AS(PartitionSpec(100, 0), std::domain_error);
}

}  // TEST_SUITE
