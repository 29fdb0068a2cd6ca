#include "cremona/textio.hpp"

#include <sstream>

#include "cremona/errors.hpp"

namespace cremona {

std::string poly_to_text(const MPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        os << mag.get_str();
        for (std::size_t v = 0; v < p.vars().size(); ++v)
            os << " " << p.vars()[v] << "^" << e[v];
    }
    return os.str();
}

MPoly poly_from_text(const std::string& text, const std::vector<std::string>& vars) {
    MPoly p(vars);
    std::istringstream is(text);
    std::string tok;
    if (!(is >> tok)) throw Error("empty polynomial text");
    if (tok == "0") {
        if (is >> tok) throw Error("trailing tokens after zero polynomial");
        return p;
    }
    int sign = 1;
    if (tok == "-") {
        sign = -1;
        if (!(is >> tok)) throw Error("dangling sign in polynomial text");
    } else if (!tok.empty() && tok[0] == '-') {
        sign = -1;
        tok = tok.substr(1);
    }
    while (true) {
        Rational c = rational_from_string(tok) * sign;
        Exponents e(vars.size(), 0);
        for (std::size_t v = 0; v < vars.size(); ++v) {
            if (!(is >> tok)) throw Error("truncated term in polynomial text");
            auto caret = tok.find('^');
            if (caret == std::string::npos || tok.substr(0, caret) != vars[v])
                throw Error("bad factor '" + tok + "' (expected " + vars[v] + "^<e>)");
            e[v] = std::stoi(tok.substr(caret + 1));
        }
        p.add_term(e, c);
        if (!(is >> tok)) break;
        if (tok == "+") sign = 1;
        else if (tok == "-") sign = -1;
        else throw Error("expected '+'/'-' between terms, got '" + tok + "'");
        if (!(is >> tok)) throw Error("dangling sign in polynomial text");
    }
    return p;
}

std::string matrix_to_csv(const std::vector<std::vector<Rational>>& rows) {
    std::ostringstream os;
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) os << ",";
            os << row[j].get_str();
        }
        os << "\n";
    }
    return os.str();
}

} // namespace cremona
