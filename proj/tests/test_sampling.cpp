#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace swfa;
using lang::Word;

TEST_CASE("splitmix64 reference values") {
    CHECK(sampling::splitmix64(0) == 0xE220A8397B1DCDAFull);
    CHECK(sampling::splitmix64(1) == 0x910A2DEC89025CC1ull);
    CHECK(sampling::splitmix64(2) == 0x975835DE1C9756CEull);
}

TEST_CASE("sampling is deterministic per seed and per index") {
    const auto pfa = wfa::PfaForm::checked(testing::p1());
    const auto a = sampling::sample(pfa, 100, 42);
    const auto b = sampling::sample(pfa, 100, 42);
    CHECK(a.strings == b.strings);
    const auto c = sampling::sample(pfa, 100, 43);
    CHECK(a.strings != c.strings);

    // String i depends only on (seed, i), not on n.
    const auto shorter = sampling::sample(pfa, 10, 42);
    for (size_t i = 0; i < shorter.strings.size(); ++i) CHECK(shorter.strings[i] == a.strings[i]);
}

TEST_CASE("empirical distribution sums to one") {
    const lang::Alphabet ab({"a", "b"});
    const auto pfa = sampling::make_random_pfa(ab, 3, 9);
    const auto s = sampling::sample(pfa, 5000, 17);
    const auto dist = sampling::empirical_distribution(s);
    double total = 0.0;
    for (const auto& [w, p] : dist) {
        CHECK(p > 0.0);
        total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sampled lengths from p1 pass a chi-squared test") {
    const auto pfa = wfa::PfaForm::checked(testing::p1());
    const long n = 50000;
    const auto s = sampling::sample(pfa, n, 2024);

    // p(|w| = k) = 0.5^{k+1}; pool the tail once expected counts drop below 10.
    std::vector<double> expected;
    double tail = 1.0;
    while (tail * n >= 10.0 && expected.size() < 60) {
        const double p = std::pow(0.5, double(expected.size()) + 1.0);
        if ((tail - p) * n < 10.0) break;
        expected.push_back(p * n);
        tail -= p;
    }
    expected.push_back(tail * n);

    std::vector<long> observed(expected.size(), 0);
    for (const auto& w : s.strings) {
        const size_t cell = std::min(w.size(), expected.size() - 1);
        ++observed[cell];
    }
    double chi2 = 0.0;
    for (size_t i = 0; i < expected.size(); ++i) {
        const double d = double(observed[i]) - expected[i];
        chi2 += d * d / expected[i];
    }
    // Wilson-Hilferty approximation of the 0.999 quantile.
    const double df = double(expected.size()) - 1.0;
    const double z = 3.0902;
    const double base = 1.0 - 2.0 / (9.0 * df) + z * std::sqrt(2.0 / (9.0 * df));
    const double threshold = df * base * base * base;
    CHECK(chi2 < threshold);
}

TEST_CASE("two-symbol pfa matches its model probabilities") {
    const lang::Alphabet ab({"a", "b"});
    const auto pfa = sampling::make_random_pfa(ab, 2, 31);
    const long n = 100000;
    const auto s = sampling::sample(pfa, n, 55);
    const auto dist = sampling::empirical_distribution(s);
    const lang::Basis basis(ab, 3);
    for (const auto& u : basis.words()) {
        const double p = wfa::evaluate(pfa.rep, u);
        const auto it = dist.find(u);
        const double freq = it == dist.end() ? 0.0 : it->second;
        const double margin = 5.0 * std::sqrt(p * (1.0 - p) / double(n)) + 1e-4;
        CHECK(std::abs(freq - p) <= margin);
    }
}

TEST_CASE("make_random_pfa produces a valid pfa") {
    const lang::Alphabet ab({"a", "b", "c"});
    for (uint64_t seed = 0; seed < 20; ++seed) {
        const auto pfa = sampling::make_random_pfa(ab, 4, seed, /*min_stop=*/0.2);
        const auto report = wfa::validate(pfa.rep, /*require_pfa=*/true);
        CHECK(report.pfa_valid);
        CHECK(report.convergent);
        for (int q = 0; q < pfa.rep.dim(); ++q) {
            CHECK(pfa.rep.final(q) >= 0.2 - 1e-12);
            double row = pfa.rep.final(q);
            for (const auto& m : pfa.rep.transition) row += m.row(q).sum();
            CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}
