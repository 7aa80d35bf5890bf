// Command-line workflows: sampling, Hankel export, moments, concentration
// bounds, spectral-norm experiments, and spectral learning runs.

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "swfa/bounds.hpp"
#include "swfa/io.hpp"
#include "swfa/sampling.hpp"
#include "swfa/spectral.hpp"

namespace {

using namespace swfa;
using hankel::BasisPtr;
using lang::Basis;
using wfa::LinearRepresentation;
using wfa::Mode;

struct CommonOpts {
    std::string model_path;
    std::string sample_path;
    std::string out_path;
    std::string mode_name = "standard";
    double eta = 0.0;
    int l = 4;
    long n = 20000;
    int trials = 1;
    double delta = 0.05;
    uint64_t seed = 0;
    int rank = 0;
    bool exact = false;
};

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot write output file: " + path);
    return file;
}

std::string echo_config(const std::string& verb, const CommonOpts& o) {
    std::ostringstream s;
    s << "# swfa v1 " << verb << " mode=" << o.mode_name << " eta=" << io::csv_num(o.eta)
      << " l=" << o.l << " n=" << o.n << " trials=" << o.trials
      << " delta=" << io::csv_num(o.delta) << " seed=" << o.seed << " rank=" << o.rank
      << " exact=" << (o.exact ? 1 : 0)
      << " model=" << (o.model_path.empty() ? "-" : o.model_path)
      << " sample=" << (o.sample_path.empty() ? "-" : o.sample_path);
    return s.str();
}

LinearRepresentation load_model_checked(const std::string& path) {
    LinearRepresentation rep = io::load_model(path);
    const auto report = wfa::validate(rep);
    if (!report.convergent) {
        std::cerr << "warning: model " << path << " may diverge (spectral radius estimate "
                  << report.spectral_radius << ")\n";
    }
    return rep;
}

BasisPtr make_basis(const lang::Alphabet& alphabet, int l) {
    return std::make_shared<const Basis>(alphabet, l);
}

int cmd_sample(const CommonOpts& o) {
    const auto pfa = wfa::PfaForm::checked(load_model_checked(o.model_path));
    const auto s = sampling::sample(pfa, o.n, o.seed, o.model_path);
    std::ofstream file;
    io::render_sample(open_out(file, o.out_path), s, pfa.rep.alphabet);
    return 0;
}

int cmd_moments(const CommonOpts& o) {
    const auto rep = load_model_checked(o.model_path);
    const Mode mode = wfa::mode_from_name(o.mode_name);
    std::ofstream file;
    auto& out = open_out(file, o.out_path);
    out << echo_config("moments", o) << "\nk,mode,eta,value\n";
    for (int k = 1; k <= 3; ++k) {
        out << k << ',' << o.mode_name << ',' << io::csv_num(o.eta) << ','
            << io::csv_num(wfa::moment(rep, k, mode, o.eta)) << '\n';
    }
    return 0;
}

int cmd_hankel(const CommonOpts& o) {
    const auto rep = load_model_checked(o.model_path);
    const Mode mode = wfa::mode_from_name(o.mode_name);
    const auto basis = make_basis(rep.alphabet, o.l);
    std::ofstream file;
    auto& out = open_out(file, o.out_path);
    if (o.exact) {
        const auto exact = hankel::exact_hankel(rep, basis, basis, mode, o.eta);
        // Materialize nonzero entries so the export format matches the sparse case.
        const Eigen::MatrixXd dense = exact.dense();
        hankel::SparseHankel h;
        h.row_basis = basis;
        h.col_basis = basis;
        h.matrix = dense.sparseView();
        h.sample_size = 0;
        hankel::write_coordinate_file(out, h, mode, o.eta);
        return 0;
    }
    std::vector<lang::Word> strings;
    if (!o.sample_path.empty()) {
        strings = io::load_sample(o.sample_path, rep.alphabet).strings;
    } else {
        const auto pfa = wfa::PfaForm::checked(rep);
        strings = sampling::sample(pfa, o.n, o.seed).strings;
    }
    const auto h = hankel::empirical_hankel(strings, basis, basis, mode, o.eta);
    hankel::write_coordinate_file(out, h, mode, o.eta);
    return 0;
}

struct BoundsCliOpts {
    double s1 = -1.0;
    double s2 = -1.0;
    double eq1_m = -1.0;
    long eq1_d = 0;
};

void print_bound_row(std::ostream& out, const std::string& kind,
                     const bounds::BoundReport& report) {
    out << kind << ',' << wfa::mode_name(report.spec.mode) << ','
        << io::csv_num(report.spec.eta) << ','
        << (report.spec.l ? std::to_string(*report.spec.l) : std::string("-")) << ','
        << report.spec.n << ',' << io::csv_num(report.spec.delta) << ','
        << io::csv_num(report.t, 10) << ',' << io::csv_num(report.sigma2_used) << ','
        << io::csv_num(report.b_used) << ',' << io::csv_num(report.value) << '\n';
}

int cmd_bounds(const CommonOpts& o, const BoundsCliOpts& b, bool l_given) {
    const Mode mode = wfa::mode_from_name(o.mode_name);
    std::optional<int> l = l_given ? std::optional<int>(o.l) : std::nullopt;

    double s1 = b.s1, s2 = b.s2;
    std::optional<LinearRepresentation> rep;
    if (!o.model_path.empty()) rep = load_model_checked(o.model_path);
    if (s2 < 0.0) {
        if (!rep) throw std::runtime_error("bounds: provide --s2 or --model to compute moments");
        s1 = wfa::moment(*rep, 1, mode, o.eta);
        s2 = wfa::moment(*rep, 2, mode, o.eta);
    } else if (s1 < 0.0) {
        s1 = 1.0;
    }

    std::ofstream file;
    auto& out = open_out(file, o.out_path);
    out << echo_config("bounds", o) << "\nbound,mode,eta,l,n,delta,t,sigma2,b,value\n";
    switch (mode) {
        case Mode::standard:
            print_bound_row(out, "dim-free", bounds::bound_standard(s2, o.n, o.delta));
            break;
        case Mode::prefix:
            print_bound_row(out, "dim-free", bounds::bound_prefix(s1, s2, o.eta, o.n, o.delta, l));
            break;
        case Mode::factor:
            print_bound_row(out, "dim-free", bounds::bound_factor(s1, s2, o.eta, o.n, o.delta));
            break;
    }
    if (rep) {
        const auto basis = make_basis(rep->alphabet, o.l);
        print_bound_row(out, "opt-UV",
                        bounds::bound_opt(*rep, basis, basis, mode, o.eta, o.n, o.delta, l));
    }
    if (b.eq1_m > 0.0 && b.eq1_d >= 2) {
        const double value = bounds::bound_baseline_eq1(b.eq1_m, b.eq1_d, o.n, o.delta);
        out << "eq1," << o.mode_name << ',' << io::csv_num(o.eta) << ",-," << o.n << ','
            << io::csv_num(o.delta) << ",-,-,-," << io::csv_num(value) << '\n';
    }
    return 0;
}

int cmd_experiment(const CommonOpts& o, bool l_given) {
    const Mode mode = wfa::mode_from_name(o.mode_name);
    const auto pfa = wfa::PfaForm::checked(load_model_checked(o.model_path));
    const auto basis = make_basis(pfa.rep.alphabet, o.l);
    const auto exact = hankel::exact_hankel(pfa.rep, basis, basis, mode, o.eta);

    std::vector<double> observed;
    observed.reserve(o.trials);
    std::ofstream file;
    auto& out = open_out(file, o.out_path);
    out << echo_config("experiment", o) << "\ntrial,seed,observed_norm\n";
    for (int trial = 0; trial < o.trials; ++trial) {
        const uint64_t trial_seed = sampling::splitmix64(o.seed ^ static_cast<uint64_t>(trial));
        const auto s = sampling::sample(pfa, o.n, trial_seed);
        const auto emp = hankel::empirical_hankel(s.strings, basis, basis, mode, o.eta);
        const double norm = hankel::spectral_norm_diff(emp, exact).value;
        observed.push_back(norm);
        out << trial << ',' << trial_seed << ',' << io::csv_num(norm) << '\n';
    }

    std::optional<int> l = l_given ? std::optional<int>(o.l) : std::nullopt;
    const double s1 = wfa::moment(pfa.rep, 1, mode, o.eta);
    const double s2 = wfa::moment(pfa.rep, 2, mode, o.eta);
    bounds::BoundReport dim_free;
    switch (mode) {
        case Mode::standard: dim_free = bounds::bound_standard(s2, o.n, o.delta); break;
        case Mode::prefix: dim_free = bounds::bound_prefix(s1, s2, o.eta, o.n, o.delta, l); break;
        case Mode::factor: dim_free = bounds::bound_factor(s1, s2, o.eta, o.n, o.delta); break;
    }
    const auto opt = bounds::bound_opt(pfa.rep, basis, basis, mode, o.eta, o.n, o.delta, l);

    std::vector<double> sorted = observed;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double max = sorted.back();
    const long covered = std::count_if(observed.begin(), observed.end(),
                                       [&](double v) { return v <= dim_free.value; });
    out << "summary,trials,max_observed,median_observed,bound_dimfree,bound_opt,coverage\n";
    out << "summary," << o.trials << ',' << io::csv_num(max) << ',' << io::csv_num(median) << ','
        << io::csv_num(dim_free.value) << ',' << io::csv_num(opt.value) << ','
        << io::csv_num(static_cast<double>(covered) / o.trials) << '\n';
    return 0;
}

int cmd_learn(const CommonOpts& o, const std::string& metrics_path) {
    if (o.rank < 1) throw CLI::ValidationError("learn", "--rank is required and must be >= 1");
    const Mode mode = wfa::mode_from_name(o.mode_name);
    const auto target = load_model_checked(o.model_path);
    const auto basis = make_basis(target.alphabet, o.l);

    spectral::LearnedModel learned;
    std::vector<lang::Word> strings;
    if (o.exact) {
        learned = spectral::learn_exact(target, basis, basis, mode, o.eta, o.rank);
    } else {
        if (!o.sample_path.empty()) {
            strings = io::load_sample(o.sample_path, target.alphabet).strings;
        } else {
            const auto pfa = wfa::PfaForm::checked(target);
            strings = sampling::sample(pfa, o.n, o.seed).strings;
        }
        learned = spectral::learn(strings, basis, basis, mode, o.eta, o.rank);
    }
    if (!o.out_path.empty()) io::save_model(o.out_path, learned.rep);

    // Diagnostics against the target.
    const auto exact = hankel::exact_hankel(target, basis, basis, mode, o.eta);
    const auto exact_svd = spectral::truncated_svd(exact, o.rank);
    const double sigma_min = exact_svd.singular_values(o.rank - 1);
    const double l1 = spectral::l1_distance_upto(learned.rep, target, std::min(o.l + 2, 6));

    std::ofstream file;
    auto& out = open_out(file, metrics_path);
    out << echo_config("learn", o) << "\nmetric,value\n";
    out << "l1_distance," << io::csv_num(l1) << '\n';
    if (!o.exact) {
        const auto emp = hankel::empirical_hankel(strings, basis, basis, mode, o.eta);
        const auto emp_svd = spectral::truncated_svd(emp, o.rank);
        const double norm = hankel::spectral_norm_diff(emp, exact).value;
        out << "subspace_distance,"
            << io::csv_num(spectral::subspace_distance(exact_svd.right, emp_svd.right)) << '\n';
        out << "stewart_bound," << io::csv_num(spectral::stewart_bound(norm, sigma_min)) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral learning of rational stochastic languages from Hankel matrices"};
    app.require_subcommand(1);

    CommonOpts o;
    BoundsCliOpts b;
    std::string metrics_path;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--model", o.model_path, "wfa v1 model file");
        cmd->add_option("--sample", o.sample_path, "sample file");
        cmd->add_option("--out", o.out_path, "output path (default stdout)");
        cmd->add_option("--mode", o.mode_name, "standard | prefix | factor");
        cmd->add_option("--eta", o.eta, "smoothing parameter in [0,1]");
        cmd->add_option("--l", o.l, "basis max string length");
        cmd->add_option("--n", o.n, "sample size");
        cmd->add_option("--trials", o.trials, "number of trials");
        cmd->add_option("--delta", o.delta, "failure probability");
        cmd->add_option("--seed", o.seed, "random seed");
        cmd->add_option("--rank", o.rank, "truncation rank");
        cmd->add_flag("--exact", o.exact, "use the exact Hankel of the model");
        return cmd;
    };

    auto* sample_cmd = add_common(app.add_subcommand("sample", "draw strings from a PFA model"));
    sample_cmd->get_option("--model")->required();
    auto* moments_cmd = add_common(app.add_subcommand("moments", "moments of the mode-eta series"));
    moments_cmd->get_option("--model")->required();
    auto* hankel_cmd = add_common(app.add_subcommand("hankel", "export a Hankel matrix"));
    hankel_cmd->get_option("--model")->required();
    auto* bounds_cmd = add_common(app.add_subcommand("bounds", "concentration bound report"));
    bounds_cmd->add_option("--s1", b.s1, "first moment of the mode-eta series");
    bounds_cmd->add_option("--s2", b.s2, "second moment of the mode-eta series");
    bounds_cmd->add_option("--eq1-m", b.eq1_m, "almost-sure norm bound M for the baseline row");
    bounds_cmd->add_option("--eq1-d", b.eq1_d, "minimal matrix dimension d for the baseline row");
    auto* experiment_cmd =
        add_common(app.add_subcommand("experiment", "empirical vs exact Hankel norms and bounds"));
    experiment_cmd->get_option("--model")->required();
    auto* learn_cmd = add_common(app.add_subcommand("learn", "spectral learning run"));
    learn_cmd->get_option("--model")->required();
    learn_cmd->add_option("--metrics", metrics_path, "metrics CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sample_cmd->parsed()) return cmd_sample(o);
        if (moments_cmd->parsed()) return cmd_moments(o);
        if (hankel_cmd->parsed()) return cmd_hankel(o);
        if (bounds_cmd->parsed()) return cmd_bounds(o, b, bounds_cmd->count("--l") > 0);
        if (experiment_cmd->parsed()) return cmd_experiment(o, experiment_cmd->count("--l") > 0);
        if (learn_cmd->parsed()) return cmd_learn(o, metrics_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
