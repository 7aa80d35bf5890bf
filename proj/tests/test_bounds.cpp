#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "swfa/bounds.hpp"

using namespace swfa;
using wfa::Mode;

TEST_CASE("solve_t satisfies the tail equation") {
    for (double delta : {0.5, 0.05, 0.01, 1e-4}) {
        for (double k : {2.0, 5.0, 17.0}) {
            const double t = bounds::solve_t(delta, k);
            CHECK(k * t / (std::expm1(t) - t) == doctest::Approx(delta).epsilon(1e-8));
        }
    }
    const double t = bounds::solve_t(0.05, 2.0);
    CHECK(t > 5.40);
    CHECK(t < 5.42);
    CHECK_THROWS_AS(bounds::solve_t(0.0), std::invalid_argument);
    CHECK_THROWS_AS(bounds::solve_t(1.5), std::invalid_argument);
}

TEST_CASE("solve_t is decreasing in delta") {
    double prev = 0.0;
    for (double delta : {0.5, 0.2, 0.05, 0.01, 0.001}) {
        const double t = bounds::solve_t(delta);
        CHECK(t > prev);
        prev = t;
    }
}

TEST_CASE("standard bound reproduces the published values") {
    struct Row {
        double s2;
        long n;
        double expected;
    };
    // (S2, N) -> dimension-free bound at delta = 0.05.
    const Row rows[] = {
        {8.23, 20000, 0.0669},  {6.25, 100000, 0.0260}, {6.52, 20000, 0.0595},
        {13.40, 20000, 0.0853}, {10.65, 20000, 0.0761}, {6.35, 20000, 0.0588},
        {6.97, 20000, 0.0615},  {8.09, 20000, 0.0663},  {8.82, 20000, 0.0692},
        {9.74, 20000, 0.0728},  {7.39, 20000, 0.0634},
    };
    for (const auto& row : rows) {
        const auto report = bounds::bound_standard(row.s2, row.n, 0.05);
        CHECK(std::abs(report.value - row.expected) < 0.0005);
        CHECK(report.b_used == doctest::Approx(2.0));
        CHECK(report.sigma2_used == doctest::Approx(row.s2));
    }
}

TEST_CASE("prefix bound with the finite-l b term") {
    struct Row {
        double s1, s2;
        int l;
        long n;
        double expected;
    };
    // eta = 1 rows: b = min(l+1, inf) + S1.
    const Row rows[] = {
        {8.23, 57.84, 8, 20000, 0.1784},   {6.25, 31.06, 9, 100000, 0.0582},
        {6.52, 29.61, 8, 20000, 0.1279},   {13.40, 160.92, 5, 20000, 0.2967},
        {10.65, 93.34, 5, 20000, 0.2261},  {6.35, 38.11, 9, 20000, 0.1450},
        {6.97, 43.53, 7, 20000, 0.1547},   {8.09, 65.87, 4, 20000, 0.1899},
        {8.82, 90.81, 6, 20000, 0.2230},   {9.74, 111.84, 4, 20000, 0.2472},
        {7.39, 62.11, 7, 20000, 0.1846},
    };
    for (const auto& row : rows) {
        const auto report = bounds::bound_prefix(row.s1, row.s2, 1.0, row.n, 0.05, row.l);
        CHECK(std::abs(report.value - row.expected) < 0.001);
        CHECK(report.b_used == doctest::Approx(row.l + 1.0 + row.s1));
    }

    // eta < 1: geometric term can beat l + 1.
    const auto geo = bounds::bound_prefix(2.0, 5.0, 0.5, 20000, 0.05, 10);
    CHECK(geo.b_used == doctest::Approx(2.0 + 2.0));  // min(11, 2) + S1
    const auto no_l = bounds::bound_prefix(2.0, 5.0, 0.5, 20000, 0.05);
    CHECK(no_l.b_used == doctest::Approx(2.0 + 2.0));
    CHECK(geo.value == doctest::Approx(no_l.value));

    CHECK_THROWS_AS(bounds::bound_prefix(2.0, 5.0, 1.0, 20000, 0.05), std::invalid_argument);
}

TEST_CASE("k_eta") {
    CHECK(bounds::k_eta(0.1) == doctest::Approx(1.0));
    CHECK(bounds::k_eta(1.0 / std::exp(1.0)) == doctest::Approx(1.0));
    const double eta = 0.5;
    CHECK(bounds::k_eta(eta) ==
          doctest::Approx(1.0 / (-std::exp(1.0) * eta * std::log(eta))).epsilon(1e-12));
    // (n+1) eta^n <= K_eta for all n >= 0.
    for (double e : {0.1, 0.3, 1.0 / std::exp(1.0), 0.5, 0.7, 0.9, 0.99}) {
        const double cap = bounds::k_eta(e);
        for (int n = 0; n <= 2000; ++n) CHECK((n + 1) * std::pow(e, n) <= cap + 1e-12);
    }
    CHECK_THROWS_AS(bounds::k_eta(1.0), std::invalid_argument);
}

TEST_CASE("factor bound") {
    const double s1 = 2.0, s2 = 5.0, eta = 0.5;
    const long n = 20000;
    const auto report = bounds::bound_factor(s1, s2, eta, n, 0.05);
    const double t = bounds::solve_t(0.05);
    const double sigma2 = bounds::k_eta(eta) * s2;
    const double b = 1.0 / ((1.0 - eta) * (1.0 - eta)) + s1;
    CHECK(report.sigma2_used == doctest::Approx(sigma2));
    CHECK(report.b_used == doctest::Approx(b));
    CHECK(report.value ==
          doctest::Approx(std::sqrt(2.0 * sigma2 * t / n) + b * t / (3.0 * n)).epsilon(1e-12));
    CHECK_THROWS_AS(bounds::bound_factor(s1, s2, 1.0, n, 0.05), std::invalid_argument);
}

TEST_CASE("baseline bound") {
    // 6M/sqrt(N) * (sqrt(ln d) + sqrt(ln 1/delta))
    const double v = bounds::bound_baseline_eq1(1.0, 87381, 20000, 0.05);
    const double expected =
        6.0 / std::sqrt(20000.0) * (std::sqrt(std::log(87381.0)) + std::sqrt(std::log(20.0)));
    CHECK(v == doctest::Approx(expected).epsilon(1e-12));
    CHECK(v == doctest::Approx(0.21654).epsilon(1e-3));
    CHECK_THROWS_AS(bounds::bound_baseline_eq1(1.0, 1, 20000, 0.05), std::invalid_argument);

    // The dimension-free bound beats the baseline on the published instances.
    const auto dim_free = bounds::bound_standard(8.23, 20000, 0.05);
    CHECK(dim_free.value < v);
}

TEST_CASE("restricted sigma2 and the optimized bound") {
    const auto rep = testing::p1();
    const auto b = std::make_shared<const lang::Basis>(rep.alphabet, 2);

    // sum over U x V of p(uv): lengths 0..4 with multiplicity of splits.
    double brute = 0.0;
    for (const auto& u : b->words())
        for (const auto& v : b->words()) {
            lang::Word uv = u;
            uv.insert(uv.end(), v.begin(), v.end());
            brute += wfa::evaluate(rep, uv);
        }
    CHECK(bounds::restricted_sigma2(rep, b, b, Mode::standard) ==
          doctest::Approx(brute).epsilon(1e-12));

    // Restriction never exceeds the full second moment.
    for (auto [mode, eta] : {std::pair{Mode::standard, 0.0}, {Mode::prefix, 0.7},
                             {Mode::factor, 0.5}}) {
        const double restricted = bounds::restricted_sigma2(rep, b, b, mode, eta);
        const double full = wfa::moment(rep, 2, mode, eta);
        CHECK(restricted <= full + 1e-12);

        const auto opt = bounds::bound_opt(rep, b, b, mode, eta, 20000, 0.05, b->max_len());
        bounds::BoundReport plain;
        switch (mode) {
            case Mode::standard:
                plain = bounds::bound_standard(full, 20000, 0.05);
                break;
            case Mode::prefix:
                plain = bounds::bound_prefix(wfa::moment(rep, 1, mode, eta), full, eta, 20000,
                                             0.05, b->max_len());
                break;
            case Mode::factor:
                plain = bounds::bound_factor(wfa::moment(rep, 1, mode, eta), full, eta, 20000,
                                             0.05);
                break;
        }
        CHECK(opt.value <= plain.value + 1e-12);
        CHECK(opt.b_used == doctest::Approx(plain.b_used));
    }
}
