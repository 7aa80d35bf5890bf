#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <memory>
#include <ostream>

#include "swfa/wfa.hpp"

namespace swfa::hankel {

using lang::Basis;
using lang::Word;
using wfa::LinearRepresentation;
using wfa::Mode;

using BasisPtr = std::shared_ptr<const Basis>;

// Empirical Hankel matrix over U x V, stored sparse.
struct SparseHankel {
    BasisPtr row_basis;
    BasisPtr col_basis;
    Eigen::SparseMatrix<double> matrix;  // |U| x |V|
    long sample_size = 0;

    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix); }
};

// Exact rank-d Hankel of a d-dimensional representation as a product A.B:
// row u of A is I'^T M_u, column v of B is M_v T' (primed vectors are the
// mode-eta transforms).
struct FactoredHankel {
    BasisPtr row_basis;
    BasisPtr col_basis;
    Eigen::MatrixXd left;   // |U| x d
    Eigen::MatrixXd right;  // d x |V|

    double entry(Eigen::Index u, Eigen::Index v) const;
    Eigen::MatrixXd dense() const;
};

SparseHankel per_string_hankel(const Word& w, BasisPtr row_basis, BasisPtr col_basis, Mode mode,
                               double eta = 0.0);

SparseHankel empirical_hankel(const std::vector<Word>& sample, BasisPtr row_basis,
                              BasisPtr col_basis, Mode mode, double eta = 0.0);

FactoredHankel exact_hankel(const LinearRepresentation& rep, BasisPtr row_basis,
                            BasisPtr col_basis, Mode mode, double eta = 0.0);

struct InducedNorms {
    double norm1 = 0.0;    // max column abs-sum
    double norm_inf = 0.0; // max row abs-sum
    double norm2 = 0.0;    // largest singular value
};

InducedNorms induced_norms(const Eigen::MatrixXd& m);
InducedNorms induced_norms(const Eigen::SparseMatrix<double>& m);

// [[0, Z], [Z^T, 0]]; preserves the spectral norm.
Eigen::MatrixXd dilate(const Eigen::MatrixXd& z);

enum class NormMethod { automatic, power, dense };

struct NormEstimate {
    double value = 0.0;
    int iterations = 0;
    double last_rel_change = 0.0;
    bool converged = true;
};

// Largest singular value of (H_S - A.B) without materializing the
// difference: power iteration on the Gram operator of x -> H_S x - A(Bx).
// Dense SVD is used instead when |U|*|V| <= 4e6 and method is automatic.
NormEstimate spectral_norm_diff(const SparseHankel& hs, const FactoredHankel& hp,
                                NormMethod method = NormMethod::automatic);

// Coordinate-list text export:
//   hankel <mode> <eta> <|U|> <|V|> <N>
//   <row> <col> <value>
void write_coordinate_file(std::ostream& out, const SparseHankel& h, Mode mode, double eta);

}  // namespace swfa::hankel
