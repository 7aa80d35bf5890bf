#include "swfa/lang.hpp"

#include <sstream>

namespace swfa::lang {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw std::invalid_argument("alphabet must be nonempty");
    for (size_t i = 0; i < symbols_.size(); ++i) {
        auto [it, inserted] = index_.emplace(symbols_[i], static_cast<int>(i));
        if (!inserted) throw std::invalid_argument("duplicate alphabet symbol: " + symbols_[i]);
    }
}

int Alphabet::find(const std::string& sym) const {
    auto it = index_.find(sym);
    return it == index_.end() ? -1 : it->second;
}

int Alphabet::require(const std::string& sym) const {
    int id = find(sym);
    if (id < 0) throw symbol_error("unknown symbol: " + sym);
    return id;
}

Word Alphabet::parse(const std::string& space_separated) const {
    Word w;
    std::istringstream in(space_separated);
    std::string tok;
    while (in >> tok) w.push_back(require(tok));
    return w;
}

std::string Alphabet::format(const Word& w) const {
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += symbol(w[i]);
    }
    return out;
}

Basis::Basis(Alphabet alphabet, int max_len, size_t cap)
    : alphabet_(std::move(alphabet)), max_len_(max_len) {
    if (max_len < 0) throw std::invalid_argument("basis max_len must be >= 0");
    const size_t k = static_cast<size_t>(alphabet_.size());
    size_t total = 1, layer = 1;
    for (int n = 1; n <= max_len; ++n) {
        if (layer > cap / k || total > cap - layer * k) throw std::length_error("basis size exceeds cap");
        layer *= k;
        total += layer;
    }
    words_.reserve(total);
    words_.emplace_back();  // epsilon
    size_t layer_begin = 0;
    for (int n = 1; n <= max_len; ++n) {
        const size_t layer_end = words_.size();
        for (size_t i = layer_begin; i < layer_end; ++i) {
            for (int x = 0; x < alphabet_.size(); ++x) {
                Word w = words_[i];
                w.push_back(x);
                words_.push_back(std::move(w));
            }
        }
        layer_begin = layer_end;
    }
    index_.reserve(words_.size());
    for (size_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], i);
}

ptrdiff_t Basis::index_of(const Word& w) const {
    auto it = index_.find(w);
    return it == index_.end() ? -1 : static_cast<ptrdiff_t>(it->second);
}

bool is_prefix(const Word& u, const Word& w) {
    if (u.size() > w.size()) return false;
    return std::equal(u.begin(), u.end(), w.begin());
}

long factor_occurrences(const Word& w, const Word& u) {
    if (u.size() > w.size()) return 0;
    long count = 0;
    for (size_t pos = 0; pos + u.size() <= w.size(); ++pos) {
        if (std::equal(u.begin(), u.end(), w.begin() + pos)) ++count;
    }
    return count;
}

}  // namespace swfa::lang
