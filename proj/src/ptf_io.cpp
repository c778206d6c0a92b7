#include "ptf/ptf_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace ptf {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& token, int line, const char* what) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0')
        throw parse_error(line, std::string("malformed ") + what + ": '" + token + "'");
    if (!std::isfinite(v)) throw parse_error(line, std::string(what) + " is not finite");
    return v;
}

}  // namespace

std::string serialize(const Ptf& f) {
    std::ostringstream out;
    out << "PTF v1\n";
    out << "n=" << f.poly.var_count() << " theta=" << format_double(f.theta) << "\n";
    for (const auto& [mono, coeff] : f.poly.terms()) {
        out << format_double(coeff) << " :";
        for (const auto& [idx, mult] : mono.entries())
            for (uint32_t k = 0; k < mult; ++k) out << ' ' << idx;
        out << "\n";
    }
    return out.str();
}

std::string serialize(const Polynomial& p) { return serialize(Ptf{p, 0.0}); }

Ptf parse_ptf(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    auto next_content_line = [&](std::string& out) -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            const std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            out = t;
            return true;
        }
        return false;
    };

    std::string header;
    if (!next_content_line(header)) throw parse_error(lineno, "missing header");
    if (header != "PTF v1") throw parse_error(lineno, "malformed header, expected 'PTF v1'");

    std::string meta;
    if (!next_content_line(meta)) throw parse_error(lineno, "missing 'n=... theta=...' line");
    std::istringstream ms(meta);
    std::string ntok, ttok;
    if (!(ms >> ntok >> ttok) || ntok.rfind("n=", 0) != 0 || ttok.rfind("theta=", 0) != 0)
        throw parse_error(lineno, "malformed header line, expected 'n=<int> theta=<decimal>'");
    std::string extra;
    if (ms >> extra) throw parse_error(lineno, "unexpected trailing content on header line");
    const double nval = parse_number(ntok.substr(2), lineno, "variable count");
    if (nval < 0 || nval != std::floor(nval) || nval > 4e9)
        throw parse_error(lineno, "variable count must be a non-negative integer");
    const uint32_t n = static_cast<uint32_t>(nval);
    const double theta = parse_number(ttok.substr(6), lineno, "theta");

    Polynomial poly(n);
    std::set<Monomial> seen;
    std::string term_line;
    while (next_content_line(term_line)) {
        const size_t colon = term_line.find(':');
        if (colon == std::string::npos) throw parse_error(lineno, "term line is missing ':'");
        const std::string coeff_tok = trim(term_line.substr(0, colon));
        if (coeff_tok.empty()) throw parse_error(lineno, "term line is missing a coefficient");
        const double coeff = parse_number(coeff_tok, lineno, "coefficient");

        std::istringstream is(term_line.substr(colon + 1));
        std::vector<uint32_t> indices;
        std::string tok;
        while (is >> tok) {
            const double iv = parse_number(tok, lineno, "index");
            if (iv < 0 || iv != std::floor(iv)) throw parse_error(lineno, "indices must be non-negative integers");
            if (iv >= static_cast<double>(n)) throw parse_error(lineno, "index " + tok + " >= n");
            if (!indices.empty() && static_cast<uint32_t>(iv) < indices.back())
                throw parse_error(lineno, "indices not sorted ascending");
            indices.push_back(static_cast<uint32_t>(iv));
        }
        const Monomial mono = Monomial::from_indices(indices);
        if (!seen.insert(mono).second) throw parse_error(lineno, "duplicate monomial line");
        poly.add_term(mono, coeff);
    }
    return Ptf{std::move(poly), theta};
}

Ptf load_ptf_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_ptf(buf.str());
}

void save_ptf_file(const Ptf& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << serialize(f);
}

}  // namespace ptf
