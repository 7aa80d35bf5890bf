#include <doctest.h>

#include <Eigen/SVD>
#include <random>
#include <sstream>

#include "support.hpp"
#include "swfa/hankel.hpp"

using namespace swfa;
using hankel::BasisPtr;
using lang::Basis;
using lang::Word;
using testing::p1;
using wfa::Mode;

namespace {

BasisPtr basis_ab(int l) {
    return std::make_shared<const Basis>(lang::Alphabet({"a", "b"}), l);
}

BasisPtr basis_a(int l) { return std::make_shared<const Basis>(lang::Alphabet({"a"}), l); }

double dense_sigma_max(const Eigen::MatrixXd& m) {
    return Eigen::BDCSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

}  // namespace

TEST_CASE("per-string hankel, standard and prefix") {
    const auto b = basis_ab(1);
    const Word ab_word = b->alphabet().parse("a b");

    const auto std_h = hankel::per_string_hankel(ab_word, b, b, Mode::standard);
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(3, 3);
    expected(1, 2) = 1.0;  // (a, b)
    CHECK((std_h.dense() - expected).cwiseAbs().maxCoeff() == 0.0);

    const auto pre1 = hankel::per_string_hankel(ab_word, b, b, Mode::prefix, 1.0);
    Eigen::MatrixXd exp_pre = Eigen::MatrixXd::Zero(3, 3);
    exp_pre(0, 0) = 1.0;  // (eps, eps)
    exp_pre(0, 1) = 1.0;  // (eps, a)
    exp_pre(1, 0) = 1.0;  // (a, eps)
    exp_pre(1, 2) = 1.0;  // (a, b)
    CHECK((pre1.dense() - exp_pre).cwiseAbs().maxCoeff() == 0.0);

    const auto pre_half = hankel::per_string_hankel(ab_word, b, b, Mode::prefix, 0.5);
    CHECK(pre_half.dense()(0, 1) == doctest::Approx(0.5));  // uv="a", |w|-|uv| = 1
}

TEST_CASE("per-string hankel, factor weights count decompositions") {
    const auto b = basis_ab(1);
    const Word a_word = b->alphabet().parse("a");
    for (double eta : {0.25, 0.5, 1.0}) {
        const auto h = hankel::per_string_hankel(a_word, b, b, Mode::factor, eta);
        // Two decompositions x.eps.y of "a", each with |xy| = 1.
        CHECK(h.dense()(0, 0) == doctest::Approx(2.0 * eta));
    }
}

TEST_CASE("eta=0 collapses prefix and factor to standard") {
    const auto b = basis_ab(2);
    std::mt19937_64 gen(3);
    std::uniform_int_distribution<int> len(0, 6), sym(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        Word w(len(gen));
        for (auto& x : w) x = sym(gen);
        const auto std_h = hankel::per_string_hankel(w, b, b, Mode::standard).dense();
        const auto pre = hankel::per_string_hankel(w, b, b, Mode::prefix, 0.0).dense();
        const auto fac = hankel::per_string_hankel(w, b, b, Mode::factor, 0.0).dense();
        CHECK((pre - std_h).cwiseAbs().maxCoeff() == 0.0);
        CHECK((fac - std_h).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("empirical hankel reproduces the worked S={a,ab} matrices") {
    const auto b = basis_ab(1);
    const std::vector<Word> sample = {b->alphabet().parse("a"), b->alphabet().parse("a b")};

    Eigen::MatrixXd h_std(3, 3), h_pre(3, 3), h_fac(3, 3);
    h_std << 0, 0.5, 0, 0.5, 0, 0.5, 0, 0, 0;
    h_pre << 1, 1, 0, 1, 0, 0.5, 0, 0, 0;
    h_fac << 2.5, 1, 0.5, 1, 0, 0.5, 0.5, 0, 0;

    CHECK((hankel::empirical_hankel(sample, b, b, Mode::standard).dense() - h_std)
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK((hankel::empirical_hankel(sample, b, b, Mode::prefix, 1.0).dense() - h_pre)
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK((hankel::empirical_hankel(sample, b, b, Mode::factor, 1.0).dense() - h_fac)
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK_THROWS_AS(hankel::empirical_hankel({}, b, b, Mode::standard), std::invalid_argument);
}

TEST_CASE("exact hankel of p1") {
    const auto rep = p1();
    const auto b = basis_a(1);
    const auto h = hankel::exact_hankel(rep, b, b, Mode::standard);
    Eigen::MatrixXd expected(2, 2);
    expected << 0.5, 0.25, 0.25, 0.125;
    CHECK((h.dense() - expected).cwiseAbs().maxCoeff() < 1e-15);

    const auto hp = hankel::exact_hankel(rep, b, b, Mode::prefix, 1.0);
    CHECK(hp.entry(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("exact hankel entries equal evaluations of the transformed representation") {
    const auto rep = testing::random_rep(3, 2, 99);
    const auto b = std::make_shared<const Basis>(rep.alphabet, 3);
    for (auto [mode, eta] : {std::pair{Mode::standard, 0.0}, {Mode::prefix, 0.6},
                             {Mode::factor, 0.4}}) {
        const auto h = hankel::exact_hankel(rep, b, b, mode, eta);
        const auto transformed = wfa::transform_rep(rep, mode, eta);
        std::mt19937_64 gen(5);
        std::uniform_int_distribution<int> pick(0, static_cast<int>(b->size()) - 1);
        for (int trial = 0; trial < 100; ++trial) {
            const int ui = pick(gen), vi = pick(gen);
            Word uv = b->word(ui);
            const Word& v = b->word(vi);
            uv.insert(uv.end(), v.begin(), v.end());
            CHECK(h.entry(ui, vi) ==
                  doctest::Approx(wfa::evaluate(transformed, uv)).epsilon(1e-12));
        }
    }
}

TEST_CASE("induced norms") {
    Eigen::MatrixXd m(2, 2);
    m << 1, -2, 3, 4;
    const auto n = hankel::induced_norms(m);
    CHECK(n.norm1 == doctest::Approx(6.0));
    CHECK(n.norm_inf == doctest::Approx(7.0));

    const auto id = hankel::induced_norms(Eigen::MatrixXd::Identity(3, 3));
    CHECK(id.norm1 == doctest::Approx(1.0));
    CHECK(id.norm_inf == doctest::Approx(1.0));
    CHECK(id.norm2 == doctest::Approx(1.0));

    std::mt19937_64 gen(17);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::MatrixXd r(20, 20);
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j) r(i, j) = normal(gen);
        const auto nr = hankel::induced_norms(r);
        CHECK(nr.norm2 <= std::sqrt(nr.norm1 * nr.norm_inf) + 1e-12);
    }
}

TEST_CASE("dilation preserves the spectral norm and doubles the squared trace") {
    Eigen::MatrixXd z1(1, 1);
    z1 << 1;
    Eigen::MatrixXd expected(2, 2);
    expected << 0, 1, 1, 0;
    CHECK((hankel::dilate(z1) - expected).cwiseAbs().maxCoeff() == 0.0);

    std::mt19937_64 gen(23);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd z(10, 7);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 7; ++j) z(i, j) = normal(gen);
    const Eigen::MatrixXd x = hankel::dilate(z);
    CHECK(dense_sigma_max(x) == doctest::Approx(dense_sigma_max(z)).epsilon(1e-10));
    CHECK((x * x).trace() == doctest::Approx(2.0 * z.array().square().sum()).epsilon(1e-12));
}

TEST_CASE("spectral_norm_diff: exact zero and synthetic diagonal") {
    const auto rep = p1();
    const auto b = basis_a(3);
    const auto exact = hankel::exact_hankel(rep, b, b, Mode::standard);
    hankel::SparseHankel equal;
    equal.row_basis = b;
    equal.col_basis = b;
    equal.matrix = exact.dense().sparseView();
    equal.sample_size = 1;
    CHECK(hankel::spectral_norm_diff(equal, exact, hankel::NormMethod::power).value < 1e-9);
    CHECK(hankel::spectral_norm_diff(equal, exact, hankel::NormMethod::dense).value < 1e-12);

    const auto b2 = basis_a(1);
    hankel::SparseHankel diag;
    diag.row_basis = b2;
    diag.col_basis = b2;
    Eigen::MatrixXd d(2, 2);
    d << 3, 0, 0, 4;
    diag.matrix = d.sparseView();
    diag.sample_size = 1;
    hankel::FactoredHankel zero;
    zero.row_basis = b2;
    zero.col_basis = b2;
    zero.left = Eigen::MatrixXd::Zero(2, 1);
    zero.right = Eigen::MatrixXd::Zero(1, 2);
    CHECK(hankel::spectral_norm_diff(diag, zero, hankel::NormMethod::power).value ==
          doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("matrix-free spectral norm matches a dense SVD oracle") {
    std::mt19937_64 gen(31);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto b = std::make_shared<const Basis>(lang::Alphabet({"a", "b", "c", "d"}), 3);
    const int n = static_cast<int>(b->size());  // 85
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::MatrixXd sparse_part = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (unit(gen) < 0.03) sparse_part(i, j) = normal(gen);
        hankel::FactoredHankel low_rank;
        low_rank.row_basis = b;
        low_rank.col_basis = b;
        low_rank.left.resize(n, 3);
        low_rank.right.resize(3, n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < 3; ++k) {
                low_rank.left(i, k) = 0.1 * normal(gen);
                low_rank.right(k, i) = 0.1 * normal(gen);
            }
        hankel::SparseHankel hs;
        hs.row_basis = b;
        hs.col_basis = b;
        hs.matrix = sparse_part.sparseView();
        hs.sample_size = 1;

        const double oracle = dense_sigma_max(sparse_part - low_rank.left * low_rank.right);
        const auto est = hankel::spectral_norm_diff(hs, low_rank, hankel::NormMethod::power);
        CHECK(est.value == doctest::Approx(oracle).epsilon(1e-8));
    }
}

TEST_CASE("empirical hankel converges entrywise to the exact hankel") {
    const auto rep = p1();
    const auto pfa = wfa::PfaForm::checked(rep);
    const auto b = basis_a(3);
    const long n = 100000;
    const auto s = sampling::sample(pfa, n, 12345);
    const auto emp = hankel::empirical_hankel(s.strings, b, b, Mode::standard).dense();
    const auto exact = hankel::exact_hankel(rep, b, b, Mode::standard).dense();
    for (int i = 0; i < emp.rows(); ++i) {
        for (int j = 0; j < emp.cols(); ++j) {
            const double p = exact(i, j);
            const double margin = 4.0 * std::sqrt(p * (1.0 - p) / double(n));
            CHECK(std::abs(emp(i, j) - p) <= margin + 1e-12);
        }
    }
}

TEST_CASE("per-string norm bounds from the concentration lemmas") {
    const lang::Alphabet ab({"a", "b"});
    const auto pfa = sampling::make_random_pfa(ab, 3, 77);
    const auto b = std::make_shared<const Basis>(ab, 4);
    const int l = 4;
    const auto s = sampling::sample(pfa, 200, 99);

    SUBCASE("prefix lemma") {
        for (double eta : {0.25, 0.5, 0.9}) {
            const double s1 = wfa::moment(pfa.rep, 1, Mode::prefix, eta);
            const double cap = 1.0 / (1.0 - eta) + s1 + 1e-9;
            const auto exact = hankel::exact_hankel(pfa.rep, b, b, Mode::prefix, eta).dense();
            for (const auto& w : s.strings) {
                const auto diff =
                    hankel::per_string_hankel(w, b, b, Mode::prefix, eta).dense() - exact;
                const auto norms = hankel::induced_norms(diff);
                CHECK(norms.norm1 <= cap);
                CHECK(norms.norm_inf <= cap);
            }
        }
    }
    SUBCASE("finite-l refinement, including eta = 1") {
        for (double eta : {0.5, 1.0}) {
            const double s1 = wfa::moment(pfa.rep, 1, Mode::prefix, eta);
            const double geo = eta < 1.0 ? 1.0 / (1.0 - eta)
                                         : std::numeric_limits<double>::infinity();
            const double cap = std::min(double(l + 1), geo) + s1 + 1e-9;
            const auto exact = hankel::exact_hankel(pfa.rep, b, b, Mode::prefix, eta).dense();
            for (const auto& w : s.strings) {
                const auto diff =
                    hankel::per_string_hankel(w, b, b, Mode::prefix, eta).dense() - exact;
                const auto norms = hankel::induced_norms(diff);
                CHECK(norms.norm1 <= cap);
                CHECK(norms.norm_inf <= cap);
            }
        }
    }
    SUBCASE("factor lemma") {
        for (double eta : {0.25, 0.5, 0.9}) {
            const double s1 = wfa::moment(pfa.rep, 1, Mode::factor, eta);
            const double cap = 1.0 / ((1.0 - eta) * (1.0 - eta)) + s1 + 1e-9;
            const auto exact = hankel::exact_hankel(pfa.rep, b, b, Mode::factor, eta).dense();
            for (const auto& w : s.strings) {
                const auto diff =
                    hankel::per_string_hankel(w, b, b, Mode::factor, eta).dense() - exact;
                const auto norms = hankel::induced_norms(diff);
                CHECK(norms.norm1 <= cap);
                CHECK(norms.norm_inf <= cap);
            }
        }
    }
}

TEST_CASE("coordinate export format") {
    const auto b = basis_ab(1);
    const std::vector<Word> sample = {b->alphabet().parse("a"), b->alphabet().parse("a b")};
    const auto h = hankel::empirical_hankel(sample, b, b, Mode::standard);
    std::ostringstream out;
    hankel::write_coordinate_file(out, h, Mode::standard, 0.0);
    std::istringstream in(out.str());
    std::string tag, mode;
    double eta;
    int nu, nv;
    long n;
    in >> tag >> mode >> eta >> nu >> nv >> n;
    CHECK(tag == "hankel");
    CHECK(mode == "standard");
    CHECK(nu == 3);
    CHECK(nv == 3);
    CHECK(n == 2);
    int row, col;
    double value, total = 0.0;
    int entries = 0;
    while (in >> row >> col >> value) {
        CHECK(h.dense()(row, col) == doctest::Approx(value));
        total += value;
        ++entries;
    }
    CHECK(entries == 3);  // (eps,a), (a,eps), (a,b), each 0.5
    CHECK(total == doctest::Approx(1.5));
}
