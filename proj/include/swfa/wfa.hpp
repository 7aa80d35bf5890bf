#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "swfa/lang.hpp"

namespace swfa::wfa {

using lang::Alphabet;
using lang::Word;

enum class Mode { standard, prefix, factor };

std::string mode_name(Mode m);
Mode mode_from_name(const std::string& name);

// <I, (M_x)_{x in Sigma}, T>: a finite-dimensional linear representation
// of a rational series, r(u) = I^T M_{u_1}...M_{u_n} T.
struct LinearRepresentation {
    Alphabet alphabet;
    Eigen::VectorXd initial;
    std::vector<Eigen::MatrixXd> transition;  // one d x d matrix per symbol
    Eigen::VectorXd final;

    LinearRepresentation() = default;
    LinearRepresentation(Alphabet alphabet, Eigen::VectorXd initial,
                         std::vector<Eigen::MatrixXd> transition, Eigen::VectorXd final);

    int dim() const { return static_cast<int>(initial.size()); }
    Eigen::MatrixXd letter_sum() const;  // M_Sigma
};

struct ValidationReport {
    double spectral_radius = 0.0;
    bool convergent = false;
    bool pfa_checked = false;
    bool pfa_valid = false;
    std::vector<std::string> messages;
};

// Non-negative representation with stochastic normalization; supports
// exact sampling. tolerance bounds the allowed normalization slack.
struct PfaForm {
    LinearRepresentation rep;
    double tolerance = 1e-9;

    static PfaForm checked(LinearRepresentation rep, double tolerance = 1e-9);
};

double evaluate(const LinearRepresentation& rep, const Word& u);

// r(Sigma^*) = I^T (I_d - M_Sigma)^{-1} T, via a linear solve.
double series_sum(const LinearRepresentation& rep);

// S^(k) of the mode-eta series:
//   standard: I^T (I-M)^{-k} T
//   prefix:   I^T (I-M)^{-k} (I-eta M)^{-1} T
//   factor:   I^T (I-eta M)^{-1} (I-M)^{-k} (I-eta M)^{-1} T
double moment(const LinearRepresentation& rep, int k, Mode mode, double eta = 0.0);

// prefix: <I, M, (I-eta M)^{-1} T>; factor: <(I-eta M^T)^{-1} I, M, (I-eta M)^{-1} T>.
LinearRepresentation transform_rep(const LinearRepresentation& rep, Mode mode, double eta);

// Inverse of transform_rep: recovers T (and I in factor mode) by
// multiplying back with (I - eta M_Sigma).
LinearRepresentation de_smooth(const LinearRepresentation& rep, Mode mode, double eta);

// Power-iteration estimate of rho(M_Sigma); 200 iterations from the
// normalized all-ones vector, deterministic.
double spectral_radius_estimate(const Eigen::MatrixXd& m);

ValidationReport validate(const LinearRepresentation& rep, bool require_pfa = false,
                          double pfa_tolerance = 1e-9);

}  // namespace swfa::wfa
