#include "swfa/sampling.hpp"

#include <random>

namespace swfa::sampling {

namespace {

constexpr long kMaxLength = 1'000'000;

}  // namespace

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

Sample sample(const PfaForm& pfa, long n, uint64_t seed, std::string source) {
    const auto& rep = pfa.rep;
    const int d = rep.dim();
    const int k = rep.alphabet.size();

    Sample out;
    out.seed = seed;
    out.source = std::move(source);
    out.strings.reserve(static_cast<size_t>(n));

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (long i = 0; i < n; ++i) {
        std::mt19937_64 gen(splitmix64(seed ^ static_cast<uint64_t>(i)));
        // Start state ~ I.
        double u = unit(gen);
        int state = d - 1;
        double cum = 0.0;
        for (int j = 0; j < d; ++j) {
            cum += rep.initial[j];
            if (u < cum) {
                state = j;
                break;
            }
        }
        Word w;
        for (;;) {
            if (static_cast<long>(w.size()) > kMaxLength)
                throw std::runtime_error("sample: runaway string generation");
            u = unit(gen);
            if (u < rep.final[state]) break;
            double acc = rep.final[state];
            int next_state = -1;
            int symbol = -1;
            for (int x = 0; x < k && symbol < 0; ++x) {
                for (int j = 0; j < d; ++j) {
                    acc += rep.transition[x](state, j);
                    if (u < acc) {
                        symbol = x;
                        next_state = j;
                        break;
                    }
                }
            }
            if (symbol < 0) break;  // normalization slack: treat as stop
            w.push_back(symbol);
            state = next_state;
        }
        out.strings.push_back(std::move(w));
    }
    return out;
}

std::unordered_map<Word, double, WordHash> empirical_distribution(const Sample& s) {
    if (s.strings.empty()) throw std::invalid_argument("empirical_distribution: empty sample");
    std::unordered_map<Word, double, WordHash> freq;
    const double w = 1.0 / static_cast<double>(s.strings.size());
    for (const auto& str : s.strings) freq[str] += w;
    return freq;
}

PfaForm make_random_pfa(const lang::Alphabet& alphabet, int states, uint64_t seed,
                        double min_stop) {
    if (states < 1) throw std::invalid_argument("make_random_pfa: states must be >= 1");
    if (min_stop <= 0.0 || min_stop >= 0.9)
        throw std::invalid_argument("make_random_pfa: min_stop must lie in (0, 0.9)");
    std::mt19937_64 gen(splitmix64(seed));
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Eigen::VectorXd initial(states);
    for (int i = 0; i < states; ++i) initial[i] = unit(gen) + 1e-3;
    initial /= initial.sum();

    Eigen::VectorXd stop(states);
    std::vector<Eigen::MatrixXd> transition(alphabet.size(),
                                            Eigen::MatrixXd::Zero(states, states));
    for (int i = 0; i < states; ++i) {
        stop[i] = min_stop + (0.9 - min_stop) * unit(gen);
        double total = 0.0;
        std::vector<double> raw(static_cast<size_t>(alphabet.size()) * states);
        for (auto& r : raw) {
            r = unit(gen) + 1e-3;
            total += r;
        }
        const double mass = (1.0 - stop[i]) / total;
        size_t idx = 0;
        for (int x = 0; x < alphabet.size(); ++x)
            for (int j = 0; j < states; ++j) transition[x](i, j) = raw[idx++] * mass;
    }
    return PfaForm::checked(
        wfa::LinearRepresentation(alphabet, std::move(initial), std::move(transition),
                                  std::move(stop)));
}

}  // namespace swfa::sampling
