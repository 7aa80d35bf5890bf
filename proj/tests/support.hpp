#pragma once

#include <random>

#include "swfa/sampling.hpp"
#include "swfa/wfa.hpp"

namespace swfa::testing {

// <[1], M_a=[0.5], [0.5]> over {a}: the geometric language p(a^n) = 0.5^{n+1}.
inline wfa::LinearRepresentation p1() {
    lang::Alphabet alphabet({"a"});
    Eigen::VectorXd i(1), t(1);
    i << 1.0;
    t << 0.5;
    Eigen::MatrixXd ma(1, 1);
    ma << 0.5;
    return wfa::LinearRepresentation(alphabet, i, {ma}, t);
}

// Random convergent representation with entries in [-1,1] rescaled so the
// spectral radius of M_Sigma is at most rho_target.
inline wfa::LinearRepresentation random_rep(int dim, int alphabet_size, uint64_t seed,
                                            double rho_target = 0.9) {
    std::mt19937_64 gen(sampling::splitmix64(seed));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<std::string> symbols;
    for (int x = 0; x < alphabet_size; ++x) symbols.push_back(std::string(1, char('a' + x)));
    lang::Alphabet alphabet(symbols);

    Eigen::VectorXd initial(dim), final(dim);
    for (int i = 0; i < dim; ++i) initial[i] = unit(gen);
    for (int i = 0; i < dim; ++i) final[i] = unit(gen);
    std::vector<Eigen::MatrixXd> transition(alphabet_size);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(dim, dim);
    for (auto& m : transition) {
        m.resize(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) m(r, c) = unit(gen);
        sum += m;
    }
    const double rho = std::max(Eigen::EigenSolver<Eigen::MatrixXd>(sum, false)
                                    .eigenvalues()
                                    .cwiseAbs()
                                    .maxCoeff(),
                                1e-6);
    const double scale = rho_target / rho;
    for (auto& m : transition) m *= scale;
    return wfa::LinearRepresentation(alphabet, initial, transition, final);
}

}  // namespace swfa::testing
