#include "swfa/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace swfa::io {

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Reads lines, stripping comments and blanks, tracking line numbers.
class LineReader {
public:
    LineReader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

    bool next(std::string& out) {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++line_;
            const auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
            out = raw;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error(name_ + ":" + std::to_string(line_) + ": " + msg);
    }

    std::string require(const std::string& what) {
        std::string s;
        if (!next(s)) fail("unexpected end of file, expected " + what);
        return s;
    }

private:
    std::istream& in_;
    std::string name_;
    long line_ = 0;
};

std::vector<double> parse_floats(LineReader& reader, const std::string& line, size_t expected,
                                 const std::string& what) {
    std::istringstream in(line);
    std::vector<double> values;
    double x;
    while (in >> x) values.push_back(x);
    std::string trailing;
    if (in.clear(), in >> trailing) reader.fail("malformed number in " + what);
    if (values.size() != expected)
        reader.fail(what + ": expected " + std::to_string(expected) + " values, got " +
                    std::to_string(values.size()));
    return values;
}

}  // namespace

LinearRepresentation parse_model(std::istream& in, const std::string& name) {
    LineReader reader(in, name);
    std::string line = reader.require("'wfa v1' header");
    {
        std::istringstream h(line);
        std::string magic, version;
        h >> magic >> version;
        if (magic != "wfa" || version != "v1") reader.fail("expected 'wfa v1' header");
    }
    line = reader.require("alphabet line");
    std::vector<std::string> symbols;
    {
        std::istringstream a(line);
        std::string tok;
        a >> tok;
        if (tok != "alphabet") reader.fail("expected 'alphabet <sym>...'");
        while (a >> tok) symbols.push_back(tok);
        if (symbols.empty()) reader.fail("alphabet must list at least one symbol");
    }
    lang::Alphabet alphabet(symbols);

    int dim = 0;
    {
        std::istringstream d(reader.require("dim line"));
        std::string tok;
        d >> tok >> dim;
        if (tok != "dim" || dim < 1) reader.fail("expected 'dim <positive integer>'");
    }

    auto parse_vector = [&](const std::string& keyword) {
        std::string l = reader.require(keyword + " line");
        std::istringstream v(l);
        std::string tok;
        v >> tok;
        if (tok != keyword) reader.fail("expected '" + keyword + " <" + std::to_string(dim) +
                                        " floats>'");
        std::string rest;
        std::getline(v, rest);
        const auto values = parse_floats(reader, rest, static_cast<size_t>(dim), keyword);
        return Eigen::Map<const Eigen::VectorXd>(values.data(), dim).eval();
    };
    Eigen::VectorXd initial = parse_vector("initial");
    Eigen::VectorXd final = parse_vector("final");

    std::vector<Eigen::MatrixXd> transition(symbols.size());
    std::vector<bool> seen(symbols.size(), false);
    for (size_t b = 0; b < symbols.size(); ++b) {
        std::string l = reader.require("matrix block");
        std::istringstream m(l);
        std::string tok, sym;
        m >> tok >> sym;
        if (tok != "matrix") reader.fail("expected 'matrix <symbol>'");
        const int id = alphabet.find(sym);
        if (id < 0) reader.fail("matrix for unknown symbol: " + sym);
        if (seen[id]) reader.fail("duplicate matrix block for symbol: " + sym);
        seen[id] = true;
        Eigen::MatrixXd mx(dim, dim);
        for (int r = 0; r < dim; ++r) {
            const auto row = parse_floats(reader, reader.require("matrix row"),
                                          static_cast<size_t>(dim), "matrix row");
            for (int c = 0; c < dim; ++c) mx(r, c) = row[c];
        }
        transition[id] = std::move(mx);
    }
    return LinearRepresentation(std::move(alphabet), std::move(initial), std::move(transition),
                                std::move(final));
}

LinearRepresentation load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open model file: " + path);
    return parse_model(in, path);
}

void render_model(std::ostream& out, const LinearRepresentation& rep) {
    out << "wfa v1\nalphabet";
    for (const auto& s : rep.alphabet.symbols()) out << ' ' << s;
    out << "\ndim " << rep.dim() << "\ninitial";
    for (int i = 0; i < rep.dim(); ++i) out << ' ' << fmt17(rep.initial[i]);
    out << "\nfinal";
    for (int i = 0; i < rep.dim(); ++i) out << ' ' << fmt17(rep.final[i]);
    out << '\n';
    for (int x = 0; x < rep.alphabet.size(); ++x) {
        out << "matrix " << rep.alphabet.symbol(x) << '\n';
        for (int r = 0; r < rep.dim(); ++r) {
            for (int c = 0; c < rep.dim(); ++c) {
                if (c) out << ' ';
                out << fmt17(rep.transition[x](r, c));
            }
            out << '\n';
        }
    }
}

void save_model(const std::string& path, const LinearRepresentation& rep) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    render_model(out, rep);
}

void render_sample(std::ostream& out, const Sample& s, const lang::Alphabet& alphabet) {
    out << "# sample model=" << (s.source.empty() ? "-" : s.source) << " seed=" << s.seed
        << " n=" << s.strings.size() << '\n';
    for (const auto& w : s.strings) out << alphabet.format(w) << '\n';
}

void save_sample(const std::string& path, const Sample& s, const lang::Alphabet& alphabet) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write sample file: " + path);
    render_sample(out, s, alphabet);
}

Sample parse_sample(std::istream& in, const lang::Alphabet& alphabet, const std::string& name) {
    Sample s;
    std::string line;
    long lineno = 0;
    bool body = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!body && !line.empty() && line[0] == '#') {
            std::istringstream h(line.substr(1));
            std::string tok;
            while (h >> tok) {
                if (tok.rfind("model=", 0) == 0) s.source = tok.substr(6);
                if (tok.rfind("seed=", 0) == 0) s.seed = std::stoull(tok.substr(5));
            }
            continue;
        }
        body = true;
        lang::Word w;
        std::istringstream ws(line);
        std::string sym;
        while (ws >> sym) {
            const int id = alphabet.find(sym);
            if (id < 0)
                throw parse_error(name + ":" + std::to_string(lineno) +
                                  ": unknown symbol in sample: " + sym);
            w.push_back(id);
        }
        s.strings.push_back(std::move(w));
    }
    return s;
}

Sample load_sample(const std::string& path, const lang::Alphabet& alphabet) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open sample file: " + path);
    return parse_sample(in, alphabet, path);
}

std::string csv_num(double x, int significant_digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, x);
    return buf;
}

}  // namespace swfa::io
