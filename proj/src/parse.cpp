#include "dbga/parse.hpp"

#include <fstream>
#include <sstream>

namespace dbga {

namespace {

struct PendingRel { std::string text; int line; };

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) {
        if (t[0] == '#') break;
        out.push_back(t);
    }
    return out;
}

Scalar parse_coeff(Field f, const std::string& s, int line) {
    try {
        size_t slash = s.find('/');
        if (slash == std::string::npos) return Scalar::integer(f, std::stoll(s));
        return Scalar::fraction(f, std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw err_parse("line " + std::to_string(line) + ": bad coefficient '" + s + "'");
    }
}

// "<coeff>*<path>" or bare "<path>"; path = dot-separated names right to left.
Term parse_term(const Presentation& P, Field f, const std::string& s, int line) {
    std::string coeff = "1", path = s;
    size_t star = s.find('*');
    // generator names may contain '*' (reversed arrows); a coefficient is
    // present only if the prefix before the first '*' parses as a number
    if (star != std::string::npos) {
        std::string pre = s.substr(0, star);
        bool numeric = !pre.empty();
        for (char c : pre)
            if (!(isdigit((unsigned char)c) || c == '-' || c == '+' || c == '/')) numeric = false;
        if (numeric) { coeff = pre; path = s.substr(star + 1); }
    }
    if (path.empty()) throw err_parse("line " + std::to_string(line) + ": empty path");
    std::vector<std::string> names;
    std::string cur;
    for (char c : path) {
        if (c == '.') { names.push_back(cur); cur.clear(); }
        else cur += c;
    }
    names.push_back(cur);
    Word w;
    if (names.size() == 1 && names[0].rfind("e_", 0) == 0) {
        w.vertex = P.vertex_index(names[0].substr(2));
    } else {
        // printed right to left; application order is the reverse
        for (auto it = names.rbegin(); it != names.rend(); ++it) {
            try {
                w.gens.push_back(P.gen_index(*it));
            } catch (const EngineError&) {
                throw err_parse("line " + std::to_string(line) + ": unknown generator '" + *it + "'");
            }
        }
        w.vertex = P.gens()[w.gens.front()].src;
    }
    return Term{parse_coeff(f, coeff, line), std::move(w)};
}

Element parse_combination(const Presentation& P, Field f, const std::vector<std::string>& toks,
                          size_t start, int line) {
    if (start < toks.size() && toks[start] == "0") return Element{};
    std::vector<Term> terms;
    Scalar sign = Scalar::one(f);
    for (size_t i = start; i < toks.size(); ++i) {
        if (toks[i] == "+") { sign = Scalar::one(f); continue; }
        if (toks[i] == "-") { sign = -Scalar::one(f); continue; }
        Term t = parse_term(P, f, toks[i], line);
        t.coeff = t.coeff * sign;
        terms.push_back(std::move(t));
        sign = Scalar::one(f);
    }
    return P.from_terms(std::move(terms));
}

}  // namespace

std::shared_ptr<Presentation> parse_presentation(std::istream& in, Field f) {
    std::vector<std::string> vertices;
    std::vector<Generator> gens;
    std::vector<PendingRel> rels, diffs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokens(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "vertex") {
            if (toks.size() != 2) throw err_parse("line " + std::to_string(lineno) + ": vertex <name>");
            vertices.push_back(toks[1]);
        } else if (kw == "arrow") {
            if (toks.size() != 4 && !(toks.size() == 7 && toks[4] == "deg"))
                throw err_parse("line " + std::to_string(lineno) +
                                ": arrow <name> <src> <tgt> [deg <c> <b>]");
            Generator g;
            g.name = toks[1];
            int si = -1, ti = -1;
            for (size_t i = 0; i < vertices.size(); ++i) {
                if (vertices[i] == toks[2]) si = (int)i;
                if (vertices[i] == toks[3]) ti = (int)i;
            }
            if (si < 0 || ti < 0)
                throw err_parse("line " + std::to_string(lineno) + ": unknown vertex in arrow");
            g.src = si;
            g.tgt = ti;
            if (toks.size() == 7) {
                try {
                    g.deg = Bidegree{std::stoi(toks[5]), std::stoi(toks[6])};
                } catch (const std::exception&) {
                    throw err_parse("line " + std::to_string(lineno) + ": bad degree");
                }
            }
            gens.push_back(std::move(g));
        } else if (kw == "relation") {
            std::string rest;
            for (size_t i = 1; i < toks.size(); ++i) rest += toks[i] + " ";
            rels.push_back({rest, lineno});
        } else if (kw == "differential") {
            if (toks.size() < 4 || toks[2] != "=")
                throw err_parse("line " + std::to_string(lineno) + ": differential <arrow> = <combination|0>");
            std::string rest = toks[1];
            for (size_t i = 3; i < toks.size(); ++i) rest += " " + toks[i];
            diffs.push_back({rest, lineno});
        } else {
            throw err_parse("line " + std::to_string(lineno) + ": unknown keyword '" + kw + "'");
        }
    }
    auto P = std::make_shared<Presentation>(f, std::move(vertices), std::move(gens));
    for (const auto& pr : rels) {
        auto toks2 = tokens(pr.text);
        P->add_relation(parse_combination(*P, f, toks2, 0, pr.line));
    }
    for (const auto& pd : diffs) {
        auto toks2 = tokens(pd.text);
        int g;
        try {
            g = P->gen_index(toks2[0]);
        } catch (const EngineError&) {
            throw err_parse("line " + std::to_string(pd.line) + ": unknown generator '" + toks2[0] + "'");
        }
        P->set_differential(g, parse_combination(*P, f, toks2, 1, pd.line));
    }
    P->freeze();
    return P;
}

std::shared_ptr<Presentation> parse_presentation_file(const std::string& path, Field f) {
    std::ifstream in(path);
    if (!in) throw err_parse("cannot open file: " + path);
    auto P = parse_presentation(in, f);
    P->name = path;
    return P;
}

std::string serialize_presentation(const Presentation& P) {
    std::ostringstream out;
    for (const auto& v : P.vertices()) out << "vertex " << v << "\n";
    for (const auto& g : P.gens()) {
        out << "arrow " << g.name << " " << P.vertices()[g.src] << " " << P.vertices()[g.tgt];
        if (!(g.deg == Bidegree{0, 0})) out << " deg " << g.deg.c << " " << g.deg.b;
        out << "\n";
    }
    auto combo = [&](const Element& e) {
        if (e.is_zero()) return std::string("0");
        std::string s;
        for (size_t i = 0; i < e.terms.size(); ++i) {
            const auto& t = e.terms[i];
            Scalar c = t.coeff;
            bool neg = c.str()[0] == '-';
            if (i == 0) s += neg ? "- " : "";
            else s += neg ? " - " : " + ";
            Scalar abs = neg ? -c : c;
            s += abs.str() + "*" + P.word_str(t.word);
        }
        return s;
    };
    for (const auto& r : P.relations()) out << "relation " << combo(r) << "\n";
    for (size_t g = 0; g < P.gens().size(); ++g)
        if (!P.differential((int)g).is_zero())
            out << "differential " << P.gens()[g].name << " = " << combo(P.differential((int)g)) << "\n";
    return out.str();
}

}  // namespace dbga
