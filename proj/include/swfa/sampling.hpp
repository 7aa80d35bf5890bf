#pragma once

#include <unordered_map>

#include "swfa/wfa.hpp"

namespace swfa::sampling {

using lang::Word;
using lang::WordHash;
using wfa::PfaForm;

struct Sample {
    std::vector<Word> strings;
    uint64_t seed = 0;
    std::string source;
};

// Draws n i.i.d. strings from the PFA. Deterministic: string i uses the
// generator seeded with splitmix64(seed ^ i). Each step makes a single
// uniform draw against the cumulative (stop, symbols x states) row.
Sample sample(const PfaForm& pfa, long n, uint64_t seed, std::string source = "");

// Relative frequencies, summing to 1.
std::unordered_map<Word, double, WordHash> empirical_distribution(const Sample& s);

// Random test/benchmark target: per-state stop probability in
// [min_stop, 0.9], transition mass spread uniformly.
PfaForm make_random_pfa(const lang::Alphabet& alphabet, int states, uint64_t seed,
                        double min_stop = 0.1);

uint64_t splitmix64(uint64_t x);

}  // namespace swfa::sampling
