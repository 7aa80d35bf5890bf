#include "swfa/wfa.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>

namespace swfa::wfa {

namespace {

constexpr double kConvergenceMargin = 1e-6;
constexpr double kSolveRelResidual = 1e-12;

// Solves (I - c*M) x = rhs with one step of iterative refinement and a
// relative residual check.
Eigen::VectorXd resolvent_solve(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu,
                                const Eigen::MatrixXd& system, const Eigen::VectorXd& rhs) {
    Eigen::VectorXd x = lu.solve(rhs);
    Eigen::VectorXd r = rhs - system * x;
    x += lu.solve(r);
    r = rhs - system * x;
    const double scale = rhs.norm();
    if (scale > 0 && !(r.norm() <= kSolveRelResidual * scale)) {
        throw divergence_error("resolvent solve did not reach the required residual; "
                               "system is numerically singular");
    }
    if (!x.allFinite()) throw divergence_error("resolvent solve produced non-finite values");
    return x;
}

}  // namespace

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::standard: return "standard";
        case Mode::prefix: return "prefix";
        case Mode::factor: return "factor";
    }
    return "?";
}

Mode mode_from_name(const std::string& name) {
    if (name == "standard") return Mode::standard;
    if (name == "prefix") return Mode::prefix;
    if (name == "factor") return Mode::factor;
    throw std::invalid_argument("unknown mode: " + name);
}

LinearRepresentation::LinearRepresentation(Alphabet alphabet_in, Eigen::VectorXd initial_in,
                                           std::vector<Eigen::MatrixXd> transition_in,
                                           Eigen::VectorXd final_in)
    : alphabet(std::move(alphabet_in)),
      initial(std::move(initial_in)),
      transition(std::move(transition_in)),
      final(std::move(final_in)) {
    const auto d = initial.size();
    if (d <= 0) throw std::invalid_argument("representation dimension must be positive");
    if (final.size() != d) throw std::invalid_argument("initial/final dimension mismatch");
    if (static_cast<int>(transition.size()) != alphabet.size())
        throw std::invalid_argument("one transition matrix per alphabet symbol required");
    for (const auto& m : transition) {
        if (m.rows() != d || m.cols() != d)
            throw std::invalid_argument("transition matrix dimension mismatch");
    }
}

Eigen::MatrixXd LinearRepresentation::letter_sum() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim(), dim());
    for (const auto& mx : transition) m += mx;
    return m;
}

double evaluate(const LinearRepresentation& rep, const Word& u) {
    Eigen::RowVectorXd v = rep.initial.transpose();
    for (int32_t x : u) {
        if (x < 0 || x >= rep.alphabet.size())
            throw symbol_error("symbol id out of range: " + std::to_string(x));
        v *= rep.transition[x];
    }
    return v.dot(rep.final);
}

double spectral_radius_estimate(const Eigen::MatrixXd& m) {
    // Power iteration is unreliable when the dominant eigenvalues form a
    // complex pair; representations are small, so solve exactly.
    return Eigen::EigenSolver<Eigen::MatrixXd>(m, /*computeEigenvectors=*/false)
        .eigenvalues()
        .cwiseAbs()
        .maxCoeff();
}

namespace {

void require_convergent(const LinearRepresentation& rep, const Eigen::MatrixXd& m_sigma) {
    const double rho = spectral_radius_estimate(m_sigma);
    if (!(rho < 1.0 - kConvergenceMargin)) {
        throw divergence_error("series diverges: spectral radius estimate " + std::to_string(rho));
    }
    (void)rep;
}

}  // namespace

double series_sum(const LinearRepresentation& rep) {
    return moment(rep, 1, Mode::standard);
}

double moment(const LinearRepresentation& rep, int k, Mode mode, double eta) {
    if (k < 1) throw std::invalid_argument("moment order k must be >= 1");
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("eta must lie in [0,1]");
    const Eigen::MatrixXd m_sigma = rep.letter_sum();
    require_convergent(rep, m_sigma);
    const auto d = rep.dim();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
    const Eigen::MatrixXd sys = id - m_sigma;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys);

    Eigen::VectorXd v = rep.final;
    if (mode != Mode::standard && eta > 0.0) {
        const Eigen::MatrixXd sys_eta = id - eta * m_sigma;
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu_eta(sys_eta);
        v = resolvent_solve(lu_eta, sys_eta, v);
        for (int i = 0; i < k; ++i) v = resolvent_solve(lu, sys, v);
        if (mode == Mode::factor) v = resolvent_solve(lu_eta, sys_eta, v);
    } else {
        for (int i = 0; i < k; ++i) v = resolvent_solve(lu, sys, v);
    }
    return rep.initial.dot(v);
}

LinearRepresentation transform_rep(const LinearRepresentation& rep, Mode mode, double eta) {
    if (mode == Mode::standard) return rep;
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("eta must lie in [0,1]");
    const auto d = rep.dim();
    const Eigen::MatrixXd m_sigma = rep.letter_sum();
    if (eta > 0.0) require_convergent(rep, m_sigma);
    const Eigen::MatrixXd sys = Eigen::MatrixXd::Identity(d, d) - eta * m_sigma;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys);
    LinearRepresentation out = rep;
    out.final = resolvent_solve(lu, sys, rep.final);
    if (mode == Mode::factor) {
        const Eigen::MatrixXd sys_t = sys.transpose();
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu_t(sys_t);
        out.initial = resolvent_solve(lu_t, sys_t, rep.initial);
    }
    return out;
}

LinearRepresentation de_smooth(const LinearRepresentation& rep, Mode mode, double eta) {
    if (mode == Mode::standard) return rep;
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("eta must lie in [0,1]");
    const auto d = rep.dim();
    const Eigen::MatrixXd sys = Eigen::MatrixXd::Identity(d, d) - eta * rep.letter_sum();
    LinearRepresentation out = rep;
    out.final = sys * rep.final;
    if (mode == Mode::factor) out.initial = sys.transpose() * rep.initial;
    return out;
}

PfaForm PfaForm::checked(LinearRepresentation rep, double tolerance) {
    PfaForm pfa{std::move(rep), tolerance};
    const auto report = validate(pfa.rep, /*require_pfa=*/true, tolerance);
    if (!report.pfa_valid) {
        std::string msg = "model is not in PFA normal form";
        for (const auto& m : report.messages) msg += "; " + m;
        throw std::invalid_argument(msg);
    }
    return pfa;
}

ValidationReport validate(const LinearRepresentation& rep, bool require_pfa,
                          double pfa_tolerance) {
    ValidationReport report;
    const Eigen::MatrixXd m_sigma = rep.letter_sum();
    report.spectral_radius = spectral_radius_estimate(m_sigma);
    report.convergent = report.spectral_radius < 1.0 - kConvergenceMargin;
    if (!report.convergent) report.messages.push_back("spectral radius estimate >= 1");
    if (require_pfa) {
        report.pfa_checked = true;
        report.pfa_valid = true;
        const double tol = pfa_tolerance;
        auto fail = [&](const std::string& msg) {
            report.pfa_valid = false;
            report.messages.push_back(msg);
        };
        if ((rep.initial.array() < -tol).any() || (rep.final.array() < -tol).any())
            fail("negative initial or final weight");
        for (const auto& m : rep.transition) {
            if ((m.array() < -tol).any()) {
                fail("negative transition weight");
                break;
            }
        }
        if (std::abs(rep.initial.sum() - 1.0) > tol) fail("initial weights do not sum to 1");
        const Eigen::VectorXd out = rep.final + m_sigma * Eigen::VectorXd::Ones(rep.dim());
        if ((out.array() - 1.0).abs().maxCoeff() > tol)
            fail("per-state stop + outgoing weights do not sum to 1");
    }
    return report;
}

}  // namespace swfa::wfa
