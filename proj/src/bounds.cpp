#include "swfa/bounds.hpp"

#include <cmath>
#include <limits>

namespace swfa::bounds {

namespace {

double bernstein_value(double sigma2, double b, double t, long n) {
    return std::sqrt(2.0 * sigma2 * t / static_cast<double>(n)) +
           b * t / (3.0 * static_cast<double>(n));
}

BoundReport make_report(BoundSpec spec, double b, double sigma2) {
    if (spec.n < 1) throw std::invalid_argument("bound: sample size must be >= 1");
    BoundReport report;
    report.spec = spec;
    report.t = solve_t(spec.delta, spec.k_trace);
    report.b_used = b;
    report.sigma2_used = sigma2;
    report.value = bernstein_value(sigma2, b, report.t, spec.n);
    return report;
}

double prefix_b_term(double s1, double eta, std::optional<int> l) {
    if (eta >= 1.0 && !l)
        throw std::invalid_argument("bound_prefix: eta = 1 requires a finite basis length l");
    const double geometric = eta < 1.0 ? 1.0 / (1.0 - eta)
                                       : std::numeric_limits<double>::infinity();
    return (l ? std::min(double(*l + 1), geometric) : geometric) + s1;
}

}  // namespace

double solve_t(double delta, double k_trace) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("solve_t: delta not in (0,1]");
    if (!(k_trace > 0.0)) throw std::invalid_argument("solve_t: k_trace must be positive");
    auto tail = [k_trace](double t) { return k_trace * t / (std::expm1(t) - t); };
    double lo = 1e-8, hi = 200.0;
    if (tail(hi) > delta) throw std::invalid_argument("solve_t: delta below attainable range");
    // tail is strictly decreasing on (0, inf).
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (tail(mid) > delta ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

BoundReport bound_standard(double s2, long n, double delta) {
    if (!(s2 > 0.0)) throw std::invalid_argument("bound_standard: S2 must be positive");
    return make_report({Mode::standard, 0.0, n, delta, 1.0, s2, std::nullopt, 2.0}, 2.0, s2);
}

BoundReport bound_prefix(double s1, double s2, double eta, long n, double delta,
                         std::optional<int> l) {
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("bound_prefix: eta not in [0,1]");
    const double b = prefix_b_term(s1, eta, l);
    return make_report({Mode::prefix, eta, n, delta, s1, s2, l, 2.0}, b, s2);
}

double k_eta(double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("k_eta: eta not in (0,1]");
    if (eta == 1.0)
        throw std::invalid_argument("k_eta: unbounded at eta = 1 ((n+1)*eta^n grows without bound)");
    if (eta <= std::exp(-1.0)) return 1.0;
    return 1.0 / (-std::exp(1.0) * eta * std::log(eta));
}

BoundReport bound_factor(double s1, double s2, double eta, long n, double delta) {
    if (eta < 0.0 || eta >= 1.0) throw std::invalid_argument("bound_factor: eta not in [0,1)");
    const double keta = eta == 0.0 ? 1.0 : k_eta(eta);
    const double b = 1.0 / ((1.0 - eta) * (1.0 - eta)) + s1;
    return make_report({Mode::factor, eta, n, delta, s1, s2, std::nullopt, 2.0}, b, keta * s2);
}

double bound_baseline_eq1(double m, long d, long n, double delta) {
    if (!(m > 0.0)) throw std::invalid_argument("bound_baseline_eq1: M must be positive");
    if (d < 2) throw std::invalid_argument("bound_baseline_eq1: d must be >= 2");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("bound_baseline_eq1: delta not in (0,1)");
    return 6.0 * m / std::sqrt(static_cast<double>(n)) *
           (std::sqrt(std::log(static_cast<double>(d))) + std::sqrt(std::log(1.0 / delta)));
}

double restricted_sigma2(const LinearRepresentation& rep, BasisPtr row_basis, BasisPtr col_basis,
                         Mode mode, double eta) {
    const hankel::FactoredHankel h =
        hankel::exact_hankel(rep, std::move(row_basis), std::move(col_basis), mode, eta);
    const Eigen::RowVectorXd row_sum = h.left.colwise().sum();
    const Eigen::VectorXd col_sum = h.right.rowwise().sum();
    return row_sum.dot(col_sum);
}

BoundReport bound_opt(const LinearRepresentation& rep, BasisPtr row_basis, BasisPtr col_basis,
                      Mode mode, double eta, long n, double delta, std::optional<int> l) {
    const double sigma2 = restricted_sigma2(rep, row_basis, col_basis, mode, eta);
    switch (mode) {
        case Mode::standard: {
            BoundReport report = make_report({mode, 0.0, n, delta, 1.0, sigma2, l, 2.0}, 2.0, sigma2);
            return report;
        }
        case Mode::prefix: {
            const double s1 = wfa::moment(rep, 1, mode, eta);
            const double b = prefix_b_term(s1, eta, l);
            return make_report({mode, eta, n, delta, s1, sigma2, l, 2.0}, b, sigma2);
        }
        case Mode::factor: {
            if (eta >= 1.0) throw std::invalid_argument("bound_opt: factor mode requires eta < 1");
            const double s1 = wfa::moment(rep, 1, mode, eta);
            const double keta = eta == 0.0 ? 1.0 : k_eta(eta);
            const double b = 1.0 / ((1.0 - eta) * (1.0 - eta)) + s1;
            return make_report({mode, eta, n, delta, s1, sigma2, l, 2.0}, b, keta * sigma2);
        }
    }
    throw std::invalid_argument("bound_opt: unknown mode");
}

}  // namespace swfa::bounds
