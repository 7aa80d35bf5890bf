#pragma once

#include <optional>

#include "swfa/hankel.hpp"

namespace swfa::bounds {

using hankel::BasisPtr;
using wfa::LinearRepresentation;
using wfa::Mode;

struct BoundSpec {
    Mode mode = Mode::standard;
    double eta = 0.0;
    long n = 0;              // sample size
    double delta = 0.05;     // failure probability
    double s1 = 0.0;         // first moment of the mode-eta series
    double s2 = 0.0;         // second moment of the mode-eta series
    std::optional<int> l;    // max basis length, enables the finite-l b-term
    double k_trace = 2.0;
};

struct BoundReport {
    BoundSpec spec;
    double t = 0.0;
    double b_used = 0.0;
    double sigma2_used = 0.0;
    double value = 0.0;  // sqrt(2*sigma2*t/N) + b*t/(3N)
};

// Unique t > 0 with k_trace * t / (e^t - t - 1) = delta, by bisection.
double solve_t(double delta, double k_trace = 2.0);

// sqrt(2*S2*t/N) + 2t/(3N); b = 2.
BoundReport bound_standard(double s2, long n, double delta);

// b = min(l+1, 1/(1-eta)) + S1 when l is given, else 1/(1-eta) + S1.
// eta = 1 requires l (finite-l form).
BoundReport bound_prefix(double s1, double s2, double eta, long n, double delta,
                         std::optional<int> l = std::nullopt);

// (n+1)*eta^n <= K_eta: 1 for eta <= 1/e, else 1/(-e*eta*ln(eta)).
double k_eta(double eta);

// sigma2 = K_eta * S2; b = (1-eta)^{-2} + S1; requires eta < 1.
BoundReport bound_factor(double s1, double s2, double eta, long n, double delta);

// (6M/sqrt(N)) * (sqrt(ln d) + sqrt(ln(1/delta))).
double bound_baseline_eq1(double m, long d, long n, double delta);

// Sum of the mode-eta series over U x V, from the factored Hankel vectors.
double restricted_sigma2(const LinearRepresentation& rep, BasisPtr row_basis, BasisPtr col_basis,
                         Mode mode, double eta = 0.0);

// Mode bound with sigma2 restricted to U x V instead of the full moment.
BoundReport bound_opt(const LinearRepresentation& rep, BasisPtr row_basis, BasisPtr col_basis,
                      Mode mode, double eta, long n, double delta,
                      std::optional<int> l = std::nullopt);

}  // namespace swfa::bounds
