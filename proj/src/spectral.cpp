#include "swfa/spectral.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <random>

namespace swfa::spectral {

namespace {

constexpr uint64_t kSvdSeed = 0xC0FFEE;
constexpr long kDenseFallbackCells = 4'000'000;

Eigen::MatrixXd seeded_gaussian(Eigen::Index rows, Eigen::Index cols, uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(gen);
    return m;
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& m) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    return qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
}

SvdResult dense_truncated(const Eigen::MatrixXd& m, int rank) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdResult out;
    out.left = svd.matrixU().leftCols(rank);
    out.singular_values = svd.singularValues().head(rank);
    out.right = svd.matrixV().leftCols(rank);
    return out;
}

}  // namespace

SvdResult truncated_svd(const SparseHankel& h, int rank, NormMethod method) {
    const Eigen::Index m = h.matrix.rows(), n = h.matrix.cols();
    if (rank < 1 || rank > std::min(m, n))
        throw std::invalid_argument("truncated_svd: rank out of range");
    if (method == NormMethod::dense ||
        (method == NormMethod::automatic && static_cast<long>(m) * n <= kDenseFallbackCells)) {
        return dense_truncated(h.dense(), rank);
    }

    // Block subspace iteration with oversampling.
    const Eigen::Index block = std::min<Eigen::Index>(2 * rank, std::min(m, n));
    Eigen::MatrixXd q = orthonormalize(h.matrix * seeded_gaussian(n, block, kSvdSeed));
    Eigen::VectorXd prev = Eigen::VectorXd::Zero(rank);
    SvdResult out;
    for (int it = 0; it < 300; ++it) {
        const Eigen::MatrixXd z = orthonormalize(h.matrix.transpose() * q);
        q = orthonormalize(h.matrix * z);
        const Eigen::MatrixXd b = q.transpose() * h.matrix;  // block x n
        Eigen::BDCSVD<Eigen::MatrixXd> small(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
        out.left = q * small.matrixU().leftCols(rank);
        out.singular_values = small.singularValues().head(rank);
        out.right = small.matrixV().leftCols(rank);
        const double scale = std::max(out.singular_values(0), 1e-300);
        if (((out.singular_values - prev).cwiseAbs() / scale).maxCoeff() < 1e-10) break;
        prev = out.singular_values;
    }
    return out;
}

SvdResult truncated_svd(const FactoredHankel& h, int rank) {
    const Eigen::Index inner = h.left.cols();
    if (rank < 1 || rank > inner)
        throw std::invalid_argument("truncated_svd: rank exceeds factorization width");
    const Eigen::HouseholderQR<Eigen::MatrixXd> qa(h.left);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qb(h.right.transpose());
    const Eigen::MatrixXd ra =
        qa.matrixQR().topRows(inner).template triangularView<Eigen::Upper>();
    const Eigen::MatrixXd rb =
        qb.matrixQR().topRows(inner).template triangularView<Eigen::Upper>();
    const Eigen::MatrixXd core = ra * rb.transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(core, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXd qa_full =
        qa.householderQ() * Eigen::MatrixXd::Identity(h.left.rows(), inner);
    const Eigen::MatrixXd qb_full =
        qb.householderQ() * Eigen::MatrixXd::Identity(h.right.cols(), inner);
    SvdResult out;
    out.left = qa_full * svd.matrixU().leftCols(rank);
    out.singular_values = svd.singularValues().head(rank);
    out.right = qb_full * svd.matrixV().leftCols(rank);
    return out;
}

LinearRepresentation extract_representation(const SvdResult& svd, const Basis& col_basis,
                                            const Eigen::VectorXd& p_on_cols) {
    const Eigen::Index nv = svd.right.rows();
    const int d = static_cast<int>(svd.right.cols());
    if (static_cast<size_t>(nv) != col_basis.size())
        throw std::invalid_argument("extract_representation: basis/right-vector size mismatch");
    if (p_on_cols.size() != nv)
        throw std::invalid_argument("extract_representation: series vector size mismatch");
    if (col_basis.size() == 0 || !col_basis.word(0).empty())
        throw std::invalid_argument("extract_representation: epsilon must index the basis");

    const lang::Alphabet& alphabet = col_basis.alphabet();
    Eigen::VectorXd initial = svd.right.transpose() * p_on_cols;
    Eigen::VectorXd final = svd.right.row(0).transpose();

    // Shift operators restricted to V = Sigma^{<=l}, with the Gram matrix of
    // the shiftable rows as a correction. Writing R_v = (M_v T)^T G for the
    // exact rank-d Hankel, A_x^T = G^T M_x K G and N = G^T K G with
    // K = sum_{|v|<l} M_v T T^T M_v^T, so M_x = A_x^T N^+ = G^T M_x G^{-T}:
    // the construction is exact at the true rank, boundary rows included.
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d, d);
    std::vector<Eigen::MatrixXd> shifted_gram(alphabet.size(), Eigen::MatrixXd::Zero(d, d));
    for (size_t vi = 0; vi < col_basis.size(); ++vi) {
        const Word& v = col_basis.word(vi);
        if (static_cast<int>(v.size()) >= col_basis.max_len()) continue;
        const auto row_v = svd.right.row(static_cast<Eigen::Index>(vi));
        gram.noalias() += row_v.transpose() * row_v;
        Word xv(v.size() + 1);
        std::copy(v.begin(), v.end(), xv.begin() + 1);
        for (int x = 0; x < alphabet.size(); ++x) {
            xv.front() = x;
            const ptrdiff_t xvi = col_basis.index_of(xv);
            if (xvi < 0) continue;
            shifted_gram[x].noalias() +=
                svd.right.row(static_cast<Eigen::Index>(xvi)).transpose() * row_v;
        }
    }
    // Pseudo-inverse: the Gram matrix is singular when the shiftable rows do
    // not span the learned subspace (e.g. V = {epsilon}).
    Eigen::JacobiSVD<Eigen::MatrixXd> gram_svd(gram, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& gs = gram_svd.singularValues();
    const double cutoff = gs.size() > 0 ? gs(0) * 1e-12 : 0.0;
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(gs.size());
    for (Eigen::Index i = 0; i < gs.size(); ++i)
        if (gs(i) > cutoff && gs(i) > 0.0) inv(i) = 1.0 / gs(i);
    const Eigen::MatrixXd gram_pinv =
        gram_svd.matrixV() * inv.asDiagonal() * gram_svd.matrixU().transpose();

    std::vector<Eigen::MatrixXd> transition(alphabet.size());
    for (int x = 0; x < alphabet.size(); ++x) transition[x] = shifted_gram[x] * gram_pinv;
    return LinearRepresentation(alphabet, std::move(initial), std::move(transition),
                                std::move(final));
}

namespace {

LearnedModel finish_learn(const SvdResult& svd, const Eigen::VectorXd& p_on_cols,
                          BasisPtr row_basis, BasisPtr col_basis, Mode mode, double eta,
                          int rank) {
    LinearRepresentation rep = extract_representation(svd, *col_basis, p_on_cols);
    if (mode != Mode::standard) rep = wfa::de_smooth(rep, mode, eta);
    return LearnedModel{std::move(rep), mode, eta, rank, std::move(row_basis),
                        std::move(col_basis)};
}

}  // namespace

LearnedModel learn(const std::vector<Word>& sample, BasisPtr row_basis, BasisPtr col_basis,
                   Mode mode, double eta, int rank) {
    if (rank < 1) throw std::invalid_argument("learn: rank must be >= 1");
    const SparseHankel h = hankel::empirical_hankel(sample, row_basis, col_basis, mode, eta);
    const SvdResult svd = truncated_svd(h, rank);
    // The epsilon row of the Hankel is exactly the mode-eta empirical series on V.
    const Eigen::VectorXd p_on_cols = h.matrix.row(0).transpose();
    return finish_learn(svd, p_on_cols, std::move(row_basis), std::move(col_basis), mode, eta,
                        rank);
}

LearnedModel learn_exact(const LinearRepresentation& target, BasisPtr row_basis,
                         BasisPtr col_basis, Mode mode, double eta, int rank) {
    if (rank < 1) throw std::invalid_argument("learn_exact: rank must be >= 1");
    const FactoredHankel h = hankel::exact_hankel(target, row_basis, col_basis, mode, eta);
    const SvdResult svd = truncated_svd(h, rank);
    const Eigen::VectorXd p_on_cols = (h.left.row(0) * h.right).transpose();
    return finish_learn(svd, p_on_cols, std::move(row_basis), std::move(col_basis), mode, eta,
                        rank);
}

double subspace_distance(const Eigen::MatrixXd& r1, const Eigen::MatrixXd& r2) {
    if (r1.rows() != r2.rows() || r1.cols() != r2.cols())
        throw std::invalid_argument("subspace_distance: dimension mismatch");
    const Eigen::MatrixXd overlap = r1.transpose() * r2;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(overlap);
    // Singular values of R1^T R2 are the cosines of the principal angles.
    const double mean_cos = svd.singularValues().mean();
    return 1.0 - mean_cos;
}

double stewart_bound(double norm_diff, double sigma_min_target) {
    if (!(sigma_min_target > 0.0))
        throw std::invalid_argument("stewart_bound: sigma_min must be positive");
    return std::max(0.0, norm_diff / sigma_min_target);
}

double l1_distance_upto(const LinearRepresentation& rep1, const LinearRepresentation& rep2,
                        int max_len) {
    if (!(rep1.alphabet == rep2.alphabet))
        throw std::invalid_argument("l1_distance_upto: alphabets differ");
    const Basis basis(rep1.alphabet, max_len);
    // Shared-prefix forward vectors, one per basis string.
    Eigen::MatrixXd fwd1(basis.size(), rep1.dim());
    Eigen::MatrixXd fwd2(basis.size(), rep2.dim());
    fwd1.row(0) = rep1.initial.transpose();
    fwd2.row(0) = rep2.initial.transpose();
    double total = std::abs(fwd1.row(0).dot(rep1.final) - fwd2.row(0).dot(rep2.final));
    for (size_t i = 1; i < basis.size(); ++i) {
        const Word& u = basis.word(i);
        const Word parent(u.begin(), u.end() - 1);
        const Eigen::Index pi = static_cast<Eigen::Index>(basis.index_of(parent));
        fwd1.row(static_cast<Eigen::Index>(i)) = fwd1.row(pi) * rep1.transition[u.back()];
        fwd2.row(static_cast<Eigen::Index>(i)) = fwd2.row(pi) * rep2.transition[u.back()];
        total += std::abs(fwd1.row(static_cast<Eigen::Index>(i)).dot(rep1.final) -
                          fwd2.row(static_cast<Eigen::Index>(i)).dot(rep2.final));
    }
    return total;
}

}  // namespace swfa::spectral
