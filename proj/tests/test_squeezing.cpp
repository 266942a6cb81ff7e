#include "sqz/squeezing.hpp"

#include <cmath>

#include "doctest.h"

using namespace sqz;
using namespace sqz::jts;
using namespace sqz::dom;
using namespace sqz::kob;
using namespace sqz::sqf;

namespace {

const double kInvSqrt2 = 0.7071067811865476;

Vec cpoint(std::initializer_list<Complex> entries) {
    Vec v(static_cast<int>(entries.size()));
    int i = 0;
    for (const auto& e : entries) v(i++) = e;
    return v;
}

}  // namespace

TEST_CASE("exact squeezing constants") {
    for (int n = 1; n <= 4; ++n) {
        DomainSpec ball({CartanFactor::type_i(1, n)});
        const auto b = exact_constant(ball);
        CHECK(b.exact);
        CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-15));
    }
    DomainSpec bidisc({CartanFactor::type_i(1, 1), CartanFactor::type_i(1, 1)});
    CHECK(exact_constant(bidisc).lower == doctest::Approx(kInvSqrt2).epsilon(1e-14));
    DomainSpec d22({CartanFactor::type_i(2, 2)});
    CHECK(exact_constant(d22).lower == doctest::Approx(kInvSqrt2).epsilon(1e-14));
    DomainSpec mixed({CartanFactor::type_i(2, 2), CartanFactor::type_iv(5)});
    CHECK(exact_constant(mixed).lower == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(exact_constant(mixed).upper == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("product combinator") {
    CHECK(product_lower_bound({1.0, 1.0}) == doctest::Approx(kInvSqrt2).epsilon(1e-15));
    // (1/sqrt2, 1/sqrt3) -> 1/sqrt5
    CHECK(product_lower_bound({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(3.0)}) ==
          doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
    CHECK(product_lower_bound({0.37}) == doctest::Approx(0.37).epsilon(1e-15));
    CHECK_THROWS_AS(product_lower_bound({0.5, 0.0}), ArgumentError);
    CHECK_THROWS_AS(product_lower_bound({-0.2}), ArgumentError);
    CHECK_THROWS_AS(product_lower_bound({}), ArgumentError);
}

TEST_CASE("combinator equals the exact product constant") {
    Rng rng(12);
    for (int t = 0; t < 20; ++t) {
        std::vector<CartanFactor> factors;
        std::vector<double> parts;
        const int m = rng.uniform_int(1, 4);
        for (int i = 0; i < m; ++i) {
            switch (rng.uniform_int(0, 3)) {
                case 0: factors.push_back(CartanFactor::type_i(rng.uniform_int(1, 3),
                                                               rng.uniform_int(3, 4))); break;
                case 1: factors.push_back(CartanFactor::type_ii(rng.uniform_int(2, 5))); break;
                case 2: factors.push_back(CartanFactor::type_iii(rng.uniform_int(1, 4))); break;
                default: factors.push_back(CartanFactor::type_iv(rng.uniform_int(2, 6))); break;
            }
            parts.push_back(exact_constant(DomainSpec({factors.back()})).lower);
        }
        const double combined = product_lower_bound(parts);
        const double direct = exact_constant(DomainSpec(factors)).lower;
        CHECK(combined == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("auxiliary conversion intervals") {
    const auto full = aux_conversion(1.0, 2, AuxDirection::StdToAux);
    CHECK(full.lo == doctest::Approx(kInvSqrt2).epsilon(1e-15));
    CHECK(full.hi == doctest::Approx(1.0).epsilon(1e-15));

    const auto id = aux_conversion(0.42, 1, AuxDirection::StdToAux);
    CHECK(id.lo == doctest::Approx(0.42).epsilon(1e-15));
    CHECK(id.hi == doctest::Approx(0.42).epsilon(1e-15));

    const auto back = aux_conversion(0.5, 4, AuxDirection::AuxToStd);
    CHECK(back.lo == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(back.hi == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(aux_conversion(0.0, 2, AuxDirection::StdToAux), ArgumentError);
    CHECK_THROWS_AS(aux_conversion(1.5, 2, AuxDirection::StdToAux), ArgumentError);
    CHECK_THROWS_AS(aux_conversion(0.5, 0, AuxDirection::StdToAux), ArgumentError);
}

TEST_CASE("aux round trips contain the original value") {
    Rng rng(8);
    for (int t = 0; t < 200; ++t) {
        const double s = rng.uniform(1e-3, 1.0);
        const int r = rng.uniform_int(1, 6);
        const auto aux = aux_conversion(s, r, AuxDirection::StdToAux);
        for (double a : {aux.lo, aux.hi}) {
            const auto back = aux_conversion(a, r, AuxDirection::AuxToStd);
            CHECK(back.lo <= s + 1e-15);
            CHECK(back.hi >= s - 1e-15);
        }
        // the exact constant of a rank-r domain sits inside its own interval
        const double c = 1.0 / std::sqrt(static_cast<double>(r));
        const auto ci = aux_conversion(c, r, AuxDirection::StdToAux);
        CHECK(ci.lo <= c + 1e-15);
        CHECK(ci.hi >= c - 1e-15);
    }
}

TEST_CASE("removed-set bounds: ball equality") {
    DomainSpec ball({CartanFactor::type_i(1, 2)});
    const auto set = RemovedSet::finite({Vec(Vec::Zero(2))});
    Rng rng(62);
    for (int t = 0; t < 25; ++t) {
        Vec z(2);
        z << rng.complex_gaussian(), rng.complex_gaussian();
        z *= rng.uniform(0.05, 0.95) / z.norm();
        const auto b = removed_set_bounds(ball, z, set);
        CHECK(b.exact);
        CHECK(b.lower == doctest::Approx(z.norm()).epsilon(1e-12));
        CHECK(b.upper == doctest::Approx(z.norm()).epsilon(1e-12));
    }
}

TEST_CASE("removed-set bounds: higher-rank two-sided estimate") {
    DomainSpec d22({CartanFactor::type_i(2, 2)});
    const auto set = RemovedSet::finite({Vec(Vec::Zero(4))});
    // |z|_D = 0.5 at z = diag(0.5, 0.2)
    Vec z = cpoint({Complex(0.5, 0), Complex(0, 0), Complex(0, 0), Complex(0.2, 0)});
    const auto b = removed_set_bounds(d22, z, set);
    CHECK_FALSE(b.exact);
    CHECK(b.upper == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(b.lower == doctest::Approx(0.5 * kInvSqrt2).epsilon(1e-12));
    CHECK(b.lower <= b.upper);

    // the bounds tend to 1 as z approaches the boundary with S fixed
    DomainSpec ball({CartanFactor::type_i(1, 2)});
    const auto compact = RemovedSet::closed_ball(ball, Vec(Vec::Zero(2)), 0.1, 64, 3);
    double prev = 0.0;
    for (double t : {0.5, 0.9, 0.99, 0.9999}) {
        Vec zt = cpoint({Complex(t, 0.0), Complex(0.0, 0.0)});
        const auto bt = removed_set_bounds(ball, zt, compact);
        CHECK(bt.lower >= prev - 1e-12);
        prev = bt.lower;
    }
    CHECK(prev > 0.99);

    // degenerate base point inside S
    const auto bz = removed_set_bounds(d22, Vec(Vec::Zero(4)), set);
    CHECK(bz.lower == 0.0);
    CHECK(bz.upper == 0.0);

    DomainSpec prod({CartanFactor::type_i(1, 1), CartanFactor::type_i(1, 1)});
    CHECK_THROWS_AS(removed_set_bounds(prod, Vec(Vec::Zero(2)), set), PreconditionError);
}

TEST_CASE("removed-set bounds are monotone in the sample set") {
    DomainSpec ball({CartanFactor::type_i(1, 2)});
    Rng rng(4);
    Vec z = cpoint({Complex(0.2, 0.1), Complex(0.1, -0.3)});
    std::vector<Vec> pts;
    double prev_up = 1.0, prev_lo = 1.0;
    for (int t = 0; t < 10; ++t) {
        Vec p(2);
        p << rng.complex_gaussian(), rng.complex_gaussian();
        p *= rng.uniform(0.1, 0.9) / p.norm();
        pts.push_back(p);
        const auto b = removed_set_bounds(ball, z, RemovedSet::finite(pts));
        CHECK(b.upper <= prev_up + 1e-15);
        CHECK(b.lower <= prev_lo + 1e-15);
        prev_up = b.upper;
        prev_lo = b.lower;
    }
}

TEST_CASE("product exclusion diagnostics") {
    // s = 0.8, n = 3, both hypotheses: part (a) fires for m = 2 and 3
    const auto d1 = product_exclusion(0.8, {true, true, 3});
    REQUIRE(d1.size() == 2);
    CHECK(d1[0].part == 'a');
    CHECK(d1[0].m == 2);
    CHECK(d1[1].m == 3);

    // s = 0.5 is below 1/sqrt(m) for every m <= 4: nothing to conclude
    CHECK(product_exclusion(0.5, {true, true, 4}).empty());
    // in higher dimension the same value does exclude very long products
    const auto d_long = product_exclusion(0.5, {true, true, 6});
    REQUIRE(d_long.size() == 2);
    CHECK(d_long[0].m == 5);
    CHECK(d_long[1].m == 6);

    // boundary case documents the strict inequality: 0.6 < 1/sqrt(2)
    CHECK(product_exclusion(0.6, {false, true, 4}).empty());

    // part (b) alone (pseudoconvex, n >= 4)
    const auto d2 = product_exclusion(0.75, {false, true, 5});
    REQUIRE(d2.size() == 1);
    CHECK(d2[0].part == 'b');
    CHECK(d2[0].m == 2);

    // both parts with a high value in dimension 4
    const auto d3 = product_exclusion(0.99, {true, true, 4});
    int count_a = 0, count_b = 0;
    for (const auto& d : d3) (d.part == 'a' ? count_a : count_b)++;
    CHECK(count_a == 3);  // m = 2, 3, 4
    CHECK(count_b == 1);  // m = 2

    // without hypotheses no conclusion is available
    CHECK(product_exclusion(0.99, {false, false, 4}).empty());
    CHECK_THROWS_AS(product_exclusion(0.0, {true, true, 3}), ArgumentError);
}

TEST_CASE("Hardy certificate: bidisc reference case") {
    // oracle: F o phi_j (zeta) = zeta eps_j / sqrt(2), the only Fourier
    // coefficient is 1/sqrt(2) at k = 1, so the circle mass is rho^2/2
    DomainSpec bidisc({CartanFactor::type_i(1, 1), CartanFactor::type_i(1, 1)});
    const auto cert = domain_certificate(bidisc, 1.0 / std::sqrt(2.0), 4096);
    CHECK(cert.p == 2);
    CHECK(cert.chain_ok);
    CHECK(cert.failure.empty());
    REQUIRE(cert.per_disc_mass.size() == 2);
    for (double m : cert.per_disc_mass) {
        CHECK(m >= 0.499);
        CHECK(m <= 0.5);
        CHECK(m == doctest::Approx(0.999 * 0.999 / 2.0).epsilon(1e-12));
    }
    CHECK(cert.total_mass >= 0.998);
    CHECK(cert.total_mass <= 1.0);
    CHECK(cert.conclusion == doctest::Approx(kInvSqrt2).epsilon(1e-15));

    // reference-case slack forms
    const double r2 = 0.5;
    for (double m : cert.per_disc_mass) CHECK(m >= r2 * (1.0 - 10.0 / 4096));
    CHECK(cert.total_mass <= 1.0 + 10.0 / 4096);

    // stage masses are nondecreasing in rho, slack shrinks
    REQUIRE(cert.stages.size() == 3);
    for (std::size_t s = 1; s < cert.stages.size(); ++s) {
        CHECK(cert.stages[s].total_mass >= cert.stages[s - 1].total_mass - 1e-15);
        CHECK(cert.stages[s].slack < cert.stages[s - 1].slack);
        for (std::size_t j = 0; j < cert.per_disc_mass.size(); ++j)
            CHECK(cert.stages[s].per_disc_mass[j] >= cert.stages[s - 1].per_disc_mass[j] - 1e-15);
    }
}

TEST_CASE("Hardy certificate: single disc in the ball") {
    DomainSpec ball({CartanFactor::type_i(1, 2)});
    EmbeddingMap identity = [](const Vec& z) { return z; };
    std::vector<DiscMap> discs = {[](Complex zeta) {
        Vec v = Vec::Zero(2);
        v(0) = zeta;
        return v;
    }};
    const auto cert = hardy_certificate(identity, discs, 1.0, 4096);
    CHECK(cert.chain_ok);
    CHECK(cert.p == 1);
    CHECK(cert.per_disc_mass[0] == doctest::Approx(0.999 * 0.999).epsilon(1e-12));
    CHECK(cert.conclusion == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("Hardy certificate: I(2,2) reproduces the exact constant") {
    DomainSpec d22({CartanFactor::type_i(2, 2)});
    const auto cert = domain_certificate(d22, -1.0, 4096);
    CHECK(cert.chain_ok);
    CHECK(cert.R == doctest::Approx(kInvSqrt2).epsilon(1e-15));
    CHECK(cert.conclusion == doctest::Approx(exact_constant(d22).upper).epsilon(1e-12));
    for (double m : cert.per_disc_mass) CHECK(m == doctest::Approx(0.999 * 0.999 / 2.0).epsilon(1e-12));
}

TEST_CASE("Hardy certificate failure reports") {
    DomainSpec bidisc({CartanFactor::type_i(1, 1), CartanFactor::type_i(1, 1)});
    // an R too large for the masses: the report flags it instead of throwing
    const auto bad = domain_certificate(bidisc, 0.95, 4096);
    CHECK_FALSE(bad.chain_ok);
    CHECK_FALSE(bad.failure.empty());

    // a disc that is not centred
    EmbeddingMap identity = [](const Vec& z) { return z; };
    std::vector<DiscMap> off = {[](Complex zeta) {
        Vec v = Vec::Zero(2);
        v(0) = zeta * 0.5 + 0.3;
        return v;
    }};
    const auto cert2 = hardy_certificate(identity, off, 0.5, 256);
    CHECK_FALSE(cert2.chain_ok);

    CHECK_THROWS_AS(hardy_certificate(identity, off, 0.5, 1000), ArgumentError);  // not 2^k
    CHECK_THROWS_AS(hardy_certificate(identity, off, 1.5, 1024), ArgumentError);
    CHECK_THROWS_AS(hardy_certificate(identity, {}, 0.5, 1024), ArgumentError);
}

TEST_CASE("exact constant sits inside the degenerate removed-set limits") {
    // with S a tiny set far from z, tanh(K) is close to 1 and the sandwich
    // tanh(K)/sqrt(r) <= s <= tanh(K) contains the exact constant
    DomainSpec d22({CartanFactor::type_i(2, 2)});
    const double s_exact = exact_constant(d22).lower;
    Vec far = cpoint({Complex(0.97, 0), Complex(0, 0), Complex(0, 0), Complex(0.9, 0)});
    const auto set = RemovedSet::finite({far});
    const auto b = removed_set_bounds(d22, Vec(Vec::Zero(4)), set);
    CHECK(b.lower <= s_exact + 1e-12);
    CHECK(b.upper >= s_exact - 0.2);  // tanh(K) with K = atanh(0.97) is ~0.97
}
