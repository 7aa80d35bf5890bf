#include "swfa/hankel.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <cstdio>
#include <random>
#include <unordered_map>

namespace swfa::hankel {

namespace {

constexpr uint64_t kNormSeed = 0xC0FFEE;
constexpr double kEntryFlush = 1e-300;
constexpr long kDenseFallbackCells = 4'000'000;

using EntryMap = std::unordered_map<int64_t, double>;

void add_splits(EntryMap& acc, const Word& s, Eigen::Index begin, Eigen::Index len, double weight,
                const Basis& rows, const Basis& cols, int64_t ncols) {
    const Eigen::Index max_u = std::min<Eigen::Index>(len, rows.max_len());
    const Eigen::Index min_u = std::max<Eigen::Index>(0, len - cols.max_len());
    for (Eigen::Index i = min_u; i <= max_u; ++i) {
        const Word u(s.begin() + begin, s.begin() + begin + i);
        const ptrdiff_t r = rows.index_of(u);
        if (r < 0) continue;
        const Word v(s.begin() + begin + i, s.begin() + begin + len);
        const ptrdiff_t c = cols.index_of(v);
        if (c < 0) continue;
        acc[r * ncols + c] += weight;
    }
}

// Per-string contribution; enumerates only the splits compatible with w.
void accumulate_string(EntryMap& acc, const Word& w, const Basis& rows, const Basis& cols,
                       Mode mode, double eta, double scale) {
    const int64_t ncols = static_cast<int64_t>(cols.size());
    const Eigen::Index n = static_cast<Eigen::Index>(w.size());
    switch (mode) {
        case Mode::standard:
            add_splits(acc, w, 0, n, scale, rows, cols, ncols);
            break;
        case Mode::prefix:
            for (Eigen::Index plen = 0; plen <= n; ++plen) {
                const Eigen::Index tail = n - plen;
                const double weight = tail == 0 ? 1.0 : std::pow(eta, double(tail));
                if (weight == 0.0) continue;
                add_splits(acc, w, 0, plen, scale * weight, rows, cols, ncols);
            }
            break;
        case Mode::factor:
            for (Eigen::Index len = 0; len <= n; ++len) {
                const Eigen::Index context = n - len;
                const double weight = context == 0 ? 1.0 : std::pow(eta, double(context));
                if (weight == 0.0) continue;
                for (Eigen::Index begin = 0; begin + len <= n; ++begin) {
                    add_splits(acc, w, begin, len, scale * weight, rows, cols, ncols);
                }
            }
            break;
    }
}

SparseHankel from_entries(const EntryMap& acc, BasisPtr rows, BasisPtr cols, long sample_size) {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(acc.size());
    const int64_t ncols = static_cast<int64_t>(cols->size());
    for (const auto& [key, value] : acc) {
        if (value == 0.0) continue;
        triplets.emplace_back(static_cast<int>(key / ncols), static_cast<int>(key % ncols), value);
    }
    SparseHankel h;
    h.row_basis = std::move(rows);
    h.col_basis = std::move(cols);
    h.matrix.resize(static_cast<Eigen::Index>(h.row_basis->size()),
                    static_cast<Eigen::Index>(h.col_basis->size()));
    h.matrix.setFromTriplets(triplets.begin(), triplets.end());
    h.sample_size = sample_size;
    return h;
}

Eigen::VectorXd seeded_unit_vector(Eigen::Index n, uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(gen);
    const double norm = v.norm();
    return norm > 0 ? Eigen::VectorXd(v / norm) : Eigen::VectorXd::Unit(n, 0);
}

// Power iteration on the Gram operator of op. Convergence: relative change
// of the singular-value estimate below tol for 10 consecutive iterations.
template <typename Op, typename Adj>
NormEstimate power_singular_value(const Op& op, const Adj& adj, Eigen::Index ncols,
                                  int max_iterations = 5000, double tol = 1e-12) {
    NormEstimate est;
    Eigen::VectorXd x = seeded_unit_vector(ncols, kNormSeed);
    double sigma = 0.0;
    int stable = 0;
    for (int it = 1; it <= max_iterations; ++it) {
        Eigen::VectorXd y = op(x);
        const double new_sigma = y.norm();
        est.iterations = it;
        if (new_sigma == 0.0) {
            est.value = 0.0;
            est.last_rel_change = 0.0;
            return est;
        }
        est.last_rel_change = std::abs(new_sigma - sigma) / new_sigma;
        sigma = new_sigma;
        stable = est.last_rel_change < tol ? stable + 1 : 0;
        if (stable >= 10) {
            est.value = sigma;
            return est;
        }
        x = adj(y);
        const double xn = x.norm();
        if (xn == 0.0) {
            est.value = sigma;
            return est;
        }
        x /= xn;
    }
    est.value = sigma;
    est.converged = false;
    return est;
}

}  // namespace

double FactoredHankel::entry(Eigen::Index u, Eigen::Index v) const {
    const double value = left.row(u).dot(right.col(v));
    return std::abs(value) < kEntryFlush ? 0.0 : value;
}

Eigen::MatrixXd FactoredHankel::dense() const {
    Eigen::MatrixXd m = left * right;
    return m.unaryExpr([](double x) { return std::abs(x) < kEntryFlush ? 0.0 : x; });
}

SparseHankel per_string_hankel(const Word& w, BasisPtr row_basis, BasisPtr col_basis, Mode mode,
                               double eta) {
    EntryMap acc;
    accumulate_string(acc, w, *row_basis, *col_basis, mode, eta, 1.0);
    return from_entries(acc, std::move(row_basis), std::move(col_basis), 1);
}

SparseHankel empirical_hankel(const std::vector<Word>& sample, BasisPtr row_basis,
                              BasisPtr col_basis, Mode mode, double eta) {
    if (sample.empty()) throw std::invalid_argument("empirical_hankel: empty sample");
    EntryMap acc;
    const double scale = 1.0 / static_cast<double>(sample.size());
    for (const auto& w : sample) {
        accumulate_string(acc, w, *row_basis, *col_basis, mode, eta, scale);
    }
    return from_entries(acc, std::move(row_basis), std::move(col_basis),
                        static_cast<long>(sample.size()));
}

FactoredHankel exact_hankel(const LinearRepresentation& rep, BasisPtr row_basis,
                            BasisPtr col_basis, Mode mode, double eta) {
    const LinearRepresentation t = wfa::transform_rep(rep, mode, eta);
    const auto report = wfa::validate(t);
    if (!report.convergent) throw divergence_error("exact_hankel: representation diverges");
    const int d = t.dim();

    FactoredHankel h;
    h.row_basis = std::move(row_basis);
    h.col_basis = std::move(col_basis);
    h.left.resize(static_cast<Eigen::Index>(h.row_basis->size()), d);
    h.right.resize(d, static_cast<Eigen::Index>(h.col_basis->size()));

    // alpha_{ux} = alpha_u M_x; the proper prefix of each basis string
    // precedes it in quasi-lexicographic order.
    h.left.row(0) = t.initial.transpose();
    for (size_t i = 1; i < h.row_basis->size(); ++i) {
        const Word& u = h.row_basis->word(i);
        const Word parent(u.begin(), u.end() - 1);
        const ptrdiff_t pi = h.row_basis->index_of(parent);
        h.left.row(static_cast<Eigen::Index>(i)) =
            h.left.row(static_cast<Eigen::Index>(pi)) * t.transition[u.back()];
    }
    // beta_{xv} = M_x beta_v, shared across suffixes.
    h.right.col(0) = t.final;
    for (size_t j = 1; j < h.col_basis->size(); ++j) {
        const Word& v = h.col_basis->word(j);
        const Word suffix(v.begin() + 1, v.end());
        const ptrdiff_t sj = h.col_basis->index_of(suffix);
        h.right.col(static_cast<Eigen::Index>(j)) =
            t.transition[v.front()] * h.right.col(static_cast<Eigen::Index>(sj));
    }
    return h;
}

InducedNorms induced_norms(const Eigen::MatrixXd& m) {
    InducedNorms n;
    if (m.size() == 0) return n;
    n.norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
    n.norm_inf = m.cwiseAbs().rowwise().sum().maxCoeff();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
    n.norm2 = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
    return n;
}

InducedNorms induced_norms(const Eigen::SparseMatrix<double>& m) {
    InducedNorms n;
    Eigen::VectorXd col_sums = Eigen::VectorXd::Zero(m.cols());
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(m.rows());
    for (int k = 0; k < m.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) {
            col_sums[it.col()] += std::abs(it.value());
            row_sums[it.row()] += std::abs(it.value());
        }
    }
    n.norm1 = col_sums.size() ? col_sums.maxCoeff() : 0.0;
    n.norm_inf = row_sums.size() ? row_sums.maxCoeff() : 0.0;
    const auto est = power_singular_value([&](const Eigen::VectorXd& x) { return m * x; },
                                          [&](const Eigen::VectorXd& y) { return m.transpose() * y; },
                                          m.cols());
    n.norm2 = est.value;
    return n;
}

Eigen::MatrixXd dilate(const Eigen::MatrixXd& z) {
    const Eigen::Index m = z.rows(), n = z.cols();
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(m + n, m + n);
    x.topRightCorner(m, n) = z;
    x.bottomLeftCorner(n, m) = z.transpose();
    return x;
}

NormEstimate spectral_norm_diff(const SparseHankel& hs, const FactoredHankel& hp,
                                NormMethod method) {
    if (hs.row_basis->size() != hp.row_basis->size() ||
        hs.col_basis->size() != hp.col_basis->size()) {
        throw std::invalid_argument("spectral_norm_diff: basis mismatch");
    }
    const long cells = static_cast<long>(hs.matrix.rows()) * static_cast<long>(hs.matrix.cols());
    if (method == NormMethod::dense ||
        (method == NormMethod::automatic && cells <= kDenseFallbackCells)) {
        const Eigen::MatrixXd diff = hs.dense() - hp.dense();
        NormEstimate est;
        Eigen::BDCSVD<Eigen::MatrixXd> svd(diff);
        est.value = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
        est.iterations = 0;
        return est;
    }
    auto op = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return hs.matrix * x - hp.left * (hp.right * x);
    };
    auto adj = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
        return hs.matrix.transpose() * y - hp.right.transpose() * (hp.left.transpose() * y);
    };
    return power_singular_value(op, adj, hs.matrix.cols());
}

void write_coordinate_file(std::ostream& out, const SparseHankel& h, Mode mode, double eta) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", eta);
    out << "hankel " << wfa::mode_name(mode) << ' ' << buf << ' ' << h.row_basis->size() << ' '
        << h.col_basis->size() << ' ' << h.sample_size << '\n';
    for (int k = 0; k < h.matrix.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(h.matrix, k); it; ++it) {
            std::snprintf(buf, sizeof(buf), "%.17g", it.value());
            out << it.row() << ' ' << it.col() << ' ' << buf << '\n';
        }
    }
}

}  // namespace swfa::hankel
