#pragma once

#include "swfa/hankel.hpp"

namespace swfa::spectral {

using hankel::BasisPtr;
using hankel::FactoredHankel;
using hankel::NormMethod;
using hankel::SparseHankel;
using lang::Basis;
using lang::Word;
using wfa::LinearRepresentation;
using wfa::Mode;

struct SvdResult {
    Eigen::MatrixXd left;             // |U| x d, orthonormal columns
    Eigen::VectorXd singular_values;  // non-increasing
    Eigen::MatrixXd right;            // |V| x d, orthonormal columns
};

struct LearnedModel {
    LinearRepresentation rep;
    Mode mode = Mode::standard;
    double eta = 0.0;
    int rank = 0;
    BasisPtr row_basis;
    BasisPtr col_basis;
};

// Top-d singular triplets. Sparse inputs use block subspace iteration
// (2d oversampled columns, tolerance 1e-10 on singular-value change);
// small matrices fall back to a dense SVD under NormMethod::automatic.
SvdResult truncated_svd(const SparseHankel& h, int rank,
                        NormMethod method = NormMethod::automatic);

// Exact SVD through the d x d core of the factorization; rank must not
// exceed the factorization width.
SvdResult truncated_svd(const FactoredHankel& h, int rank);

// Canonical representation from the right singular vectors: transitions are
// the V-restricted shift operators corrected by the Gram matrix of the
// shiftable rows, so learning from an exact Hankel at the true rank is
// exactly consistent. p_on_cols holds the series estimate indexed by the
// column basis.
LinearRepresentation extract_representation(const SvdResult& svd, const Basis& col_basis,
                                            const Eigen::VectorXd& p_on_cols);

LearnedModel learn(const std::vector<Word>& sample, BasisPtr row_basis, BasisPtr col_basis,
                   Mode mode, double eta, int rank);

// Same pipeline fed by the exact Hankel of a target (consistency checks,
// --exact runs).
LearnedModel learn_exact(const LinearRepresentation& target, BasisPtr row_basis,
                         BasisPtr col_basis, Mode mode, double eta, int rank);

// 1 - mean of the principal-angle cosines between the column spans;
// 0 for coinciding spans, 1 for orthogonal ones.
double subspace_distance(const Eigen::MatrixXd& r1, const Eigen::MatrixXd& r2);

// |sin(theta)| <= ||H_S - H_r||_2 / sigma_min(H_r); values > 1 are vacuous.
double stewart_bound(double norm_diff, double sigma_min_target);

double l1_distance_upto(const LinearRepresentation& rep1, const LinearRepresentation& rep2,
                        int max_len);

}  // namespace swfa::spectral
