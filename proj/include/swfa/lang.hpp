#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "swfa/errors.hpp"

namespace swfa::lang {

// A string is a sequence of symbol ids over a fixed ordered alphabet.
// Symbols are short tokens (e.g. "a", "12"), not single characters.
using Word = std::vector<int32_t>;

class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    int size() const { return static_cast<int>(symbols_.size()); }
    const std::string& symbol(int id) const { return symbols_.at(id); }
    const std::vector<std::string>& symbols() const { return symbols_; }

    // -1 if unknown.
    int find(const std::string& sym) const;
    int require(const std::string& sym) const;  // throws symbol_error

    Word parse(const std::string& space_separated) const;
    std::string format(const Word& w) const;  // space-separated, "" for epsilon

    bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

private:
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, int> index_;
};

struct WordHash {
    size_t operator()(const Word& w) const noexcept {
        size_t h = 0x9e3779b97f4a7c15ull;
        for (int32_t s : w) h = (h ^ static_cast<size_t>(s)) * 0x100000001b3ull;
        return h;
    }
};

// All strings of length <= max_len in quasi-lexicographic order
// (by length first, then lexicographic in alphabet order), epsilon first.
class Basis {
public:
    static constexpr size_t kDefaultCap = 50'000'000;

    Basis(Alphabet alphabet, int max_len, size_t cap = kDefaultCap);

    const Alphabet& alphabet() const { return alphabet_; }
    int max_len() const { return max_len_; }
    size_t size() const { return words_.size(); }
    const Word& word(size_t i) const { return words_[i]; }
    const std::vector<Word>& words() const { return words_; }

    // -1 if absent.
    ptrdiff_t index_of(const Word& w) const;
    bool contains(const Word& w) const { return index_of(w) >= 0; }

private:
    Alphabet alphabet_;
    int max_len_ = 0;
    std::vector<Word> words_;
    std::unordered_map<Word, size_t, WordHash> index_;
};

bool is_prefix(const Word& u, const Word& w);

// Number of decompositions w = x.u.y; |w|+1 for u = epsilon.
long factor_occurrences(const Word& w, const Word& u);

}  // namespace swfa::lang
