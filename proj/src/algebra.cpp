#include "dbga/algebra.hpp"
#include "dbga/parallel.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace dbga {

std::vector<Scalar> CellBasis::reduce(std::vector<Scalar> v) const {
    // rel_rref is stored over reversed column order so that pivots eliminate
    // the longest words and normal forms land on short representatives
    int n = (int)v.size();
    for (size_t k = 0; k < rel_pivots.size(); ++k) {
        int j = rel_pivots[k];
        if (v[j].is_zero()) continue;
        Scalar f = v[j];
        for (int c = 0; c < rel_rref.cols(); ++c) {
            const Scalar& r = rel_rref.at((int)k, c);
            if (!r.is_zero()) v[n - 1 - c] = v[n - 1 - c] - f * r;
        }
    }
    return v;
}

void Presentation::init() {
    diff_.assign(gens_.size(), Element{});
    for (const auto& g : gens_) {
        if (g.src < 0 || g.src >= (int)vertices_.size() || g.tgt < 0 || g.tgt >= (int)vertices_.size())
            throw err_pre("InvalidGenerator", "generator endpoint out of range: " + g.name);
    }
    std::vector<int> order(gens_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return gens_[x].name < gens_[y].name; });
    name_rank_.assign(gens_.size(), 0);
    for (size_t r = 0; r < order.size(); ++r) {
        if (r > 0 && gens_[order[r]].name == gens_[order[r - 1]].name)
            throw err_pre("DuplicateName", "generator name repeated: " + gens_[order[r]].name);
        name_rank_[order[r]] = (int)r;
    }
    out_gens_.assign(vertices_.size(), {});
    for (size_t i = 0; i < gens_.size(); ++i) out_gens_[gens_[i].src].push_back((int)i);
}

int Presentation::vertex_index(const std::string& name) const {
    for (size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i] == name) return (int)i;
    throw err_pre("UnknownVertex", name);
}

int Presentation::gen_index(const std::string& name) const {
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return (int)i;
    throw err_pre("UnknownGenerator", name);
}

Bidegree Presentation::word_deg(const Word& w) const {
    Bidegree d{0, 0};
    for (int g : w.gens) d = d + gens_[g].deg;
    return d;
}

bool Presentation::word_less(const Word& x, const Word& y) const {
    if (x.gens.size() != y.gens.size()) return x.gens.size() < y.gens.size();
    if (x.lazy()) return x.vertex < y.vertex;
    for (size_t i = 0; i < x.gens.size(); ++i) {
        int rx = name_rank_[x.gens[i]], ry = name_rank_[y.gens[i]];
        if (rx != ry) return rx < ry;
    }
    return false;
}

std::string Presentation::word_str(const Word& w) const {
    if (w.lazy()) return "e_" + vertices_[w.vertex];
    std::string s;
    for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it) {
        if (!s.empty()) s += ".";
        s += gens_[*it].name;
    }
    return s;
}

std::string Presentation::element_str(const Element& e) const {
    if (e.is_zero()) return "0";
    std::string s;
    for (const auto& t : e.terms) {
        if (!s.empty()) s += " + ";
        s += t.coeff.str() + "*" + word_str(t.word);
    }
    return s;
}

void Presentation::add_relation(Element rel) {
    if (frozen_) throw err_pre("Frozen", "cannot add relations after freeze");
    if (!rel.is_zero()) relations_.push_back(std::move(rel));
}

void Presentation::set_differential(int gen, Element d) {
    if (frozen_) throw err_pre("Frozen", "cannot set differentials after freeze");
    diff_[gen] = std::move(d);
}

namespace {

// Raw combine: merge equal words, drop zeros, validate homogeneity. No
// relation reduction (usable before freeze).
Element raw_combine(const Presentation& P, std::vector<Term> terms) {
    std::vector<Term> out;
    for (auto& t : terms) {
        if (t.coeff.is_zero()) continue;
        for (size_t i = 0; i + 1 < t.word.gens.size(); ++i)
            if (P.gens()[t.word.gens[i]].tgt != P.gens()[t.word.gens[i + 1]].src)
                throw err_pre("NonComposable", "word is not a composable path");
        bool merged = false;
        for (auto& o : out)
            if (o.word == t.word) {
                o.coeff = o.coeff + t.coeff;
                merged = true;
                break;
            }
        if (!merged) out.push_back(t);
    }
    std::vector<Term> nz;
    for (auto& t : out)
        if (!t.coeff.is_zero()) nz.push_back(t);
    Element e{std::move(nz)};
    if (!e.is_zero()) {
        Bidegree d = P.word_deg(e.terms[0].word);
        int s = P.word_src(e.terms[0].word), t = P.word_tgt(e.terms[0].word);
        for (const auto& tm : e.terms) {
            if (!(P.word_deg(tm.word) == d) || P.word_src(tm.word) != s || P.word_tgt(tm.word) != t)
                throw err_pre("InhomogeneousElement", "terms with mixed bidegree or endpoints");
        }
        std::sort(e.terms.begin(), e.terms.end(),
                  [&](const Term& x, const Term& y) { return P.word_less(x.word, y.word); });
    }
    return e;
}

}  // namespace

Element Presentation::lazy_element(int vertex) const {
    return Element{{Term{Scalar::one(field_), Word{vertex, {}}}}};
}

Element Presentation::gen_element(int gen) const {
    return Element{{Term{Scalar::one(field_), Word{gens_[gen].src, {gen}}}}};
}

Element Presentation::from_terms(std::vector<Term> terms) const {
    Element e = raw_combine(*this, std::move(terms));
    if (e.is_zero() || !frozen_) return e;
    Bidegree d = word_deg(e.terms[0].word);
    const CellBasis& cb = cell(d);
    std::vector<Scalar> v(cb.words.size(), Scalar::zero(field_));
    for (const auto& t : e.terms) {
        int idx = -1;
        for (size_t i = 0; i < cb.words.size(); ++i)
            if (cb.words[i] == t.word) { idx = (int)i; break; }
        if (idx < 0) throw err_pre("InternalError", "word missing from its cell: " + word_str(t.word));
        v[idx] = v[idx] + t.coeff;
    }
    v = cb.reduce(std::move(v));
    std::vector<Term> out;
    for (size_t i = 0; i < cb.words.size(); ++i)
        if (!v[i].is_zero()) out.push_back(Term{v[i], cb.words[i]});
    return Element{std::move(out)};
}

Element Presentation::scale(const Element& e, const Scalar& s) const {
    if (s.is_zero()) return zero();
    Element r = e;
    for (auto& t : r.terms) t.coeff = t.coeff * s;
    return r;
}

Element Presentation::add(const Element& x, const Element& y) const {
    std::vector<Term> terms = x.terms;
    terms.insert(terms.end(), y.terms.begin(), y.terms.end());
    return from_terms(std::move(terms));
}

Element Presentation::multiply(const Element& x, const Element& y) const {
    if (x.is_zero() || y.is_zero()) return zero();
    if (element_src(x) != element_tgt(y))
        throw err_pre("NonComposable", "source of left factor differs from target of right factor");
    std::vector<Term> terms;
    for (const auto& tx : x.terms)
        for (const auto& ty : y.terms) {
            Word w;
            if (ty.word.lazy() && tx.word.lazy()) w = ty.word;
            else {
                w.vertex = word_src(ty.word);
                w.gens = ty.word.gens;
                w.gens.insert(w.gens.end(), tx.word.gens.begin(), tx.word.gens.end());
            }
            terms.push_back(Term{tx.coeff * ty.coeff, std::move(w)});
        }
    return from_terms(std::move(terms));
}

Element Presentation::differentiate(const Element& x) const {
    std::vector<Term> terms;
    for (const auto& t : x.terms) {
        const auto& gs = t.word.gens;
        int n = (int)gs.size();
        int suffix_coh = 0;  // sum of cohomological degrees of factors after position i
        std::vector<int> coh(n);
        for (int i = 0; i < n; ++i) coh[i] = gens_[gs[i]].deg.c;
        for (int i = n - 1; i >= 0; --i) {
            const Element& dg = diff_[gs[i]];
            if (!dg.is_zero()) {
                Scalar sign = (suffix_coh % 2 == 0) ? Scalar::one(field_) : -Scalar::one(field_);
                for (const auto& dt : dg.terms) {
                    Word w;
                    std::vector<int> ng(gs.begin(), gs.begin() + i);
                    ng.insert(ng.end(), dt.word.gens.begin(), dt.word.gens.end());
                    ng.insert(ng.end(), gs.begin() + i + 1, gs.end());
                    if (ng.empty()) w = Word{word_src(t.word), {}};
                    else w = Word{0, std::move(ng)}, w.vertex = gens_[w.gens.front()].src;
                    terms.push_back(Term{t.coeff * dt.coeff * sign, std::move(w)});
                }
            }
            suffix_coh += coh[i];
        }
    }
    return from_terms(std::move(terms));
}

Bidegree Presentation::element_deg(const Element& e) const {
    if (e.is_zero()) throw err_pre("InternalError", "bidegree of zero element");
    return word_deg(e.terms[0].word);
}

bool Presentation::equal(const Element& x, const Element& y) const {
    Element d = add(x, scale(y, -Scalar::one(field_)));
    return d.is_zero();
}

void Presentation::freeze() {
    if (frozen_) return;
    // Acyclicity of the bidegree-(0,0) generator subquiver.
    int n = (int)vertices_.size();
    std::vector<int> state(n, 0);
    bool acyclic = true;
    std::function<void(int)> dfs = [&](int v) {
        state[v] = 1;
        for (int g : out_gens_[v]) {
            if (!(gens_[g].deg == Bidegree{0, 0})) continue;
            int w = gens_[g].tgt;
            if (state[w] == 1) { acyclic = false; return; }
            if (state[w] == 0) dfs(w);
            if (!acyclic) return;
        }
        state[v] = 2;
    };
    for (int v = 0; v < n && acyclic; ++v)
        if (state[v] == 0) dfs(v);

    // Grading certificate: a coordinate functional that is >= 1 on every
    // generator of nonzero bidegree.
    bool found = false;
    for (auto [pc, pb] : {std::pair<int, int>{0, -1}, {0, 1}, {-1, 0}, {1, 0}}) {
        bool ok = true;
        for (const auto& g : gens_) {
            if (g.deg == Bidegree{0, 0}) continue;
            if (pc * g.deg.c + pb * g.deg.b < 1) { ok = false; break; }
        }
        if (ok) { phi_c_ = pc; phi_b_ = pb; found = true; break; }
    }
    admissible_ = found && acyclic;
    max_phi_ = 0;
    for (const auto& g : gens_) max_phi_ = std::max(max_phi_, phi(g.deg));
    // sign of generator degrees per coordinate, when uniform
    bool cpos = true, cneg = true, bpos = true, bneg = true;
    for (const auto& g : gens_) {
        if (g.deg.c < 0) cpos = false;
        if (g.deg.c > 0) cneg = false;
        if (g.deg.b < 0) bpos = false;
        if (g.deg.b > 0) bneg = false;
    }
    coh_sign_ = cpos ? 1 : cneg ? -1 : 0;
    adams_sign_ = bpos ? 1 : bneg ? -1 : 0;
    frozen_ = true;

    // Differential sanity. Bidegree of d(g) must be deg(g) + (1,0); d^2 = 0
    // holds raw (combining identical free words) or, with relations, after
    // reduction in the relevant cell.
    for (size_t g = 0; g < gens_.size(); ++g) {
        const Element& dg = diff_[g];
        if (dg.is_zero()) continue;
        if (!(word_deg(dg.terms[0].word) == gens_[g].deg + kDiffDegree))
            throw err_pre("InhomogeneousDifferential", "d(" + gens_[g].name + ") has wrong bidegree");
        if (word_src(dg.terms[0].word) != gens_[g].src || word_tgt(dg.terms[0].word) != gens_[g].tgt)
            throw err_pre("InhomogeneousDifferential", "d(" + gens_[g].name + ") has wrong endpoints");
        std::vector<Term> dd;
        for (const auto& t : dg.terms) {
            Element one_term{{t}};
            Element d2 = admissible_ ? differentiate(one_term) : Element{};
            if (!admissible_) {
                // raw Leibniz expansion without cell reduction
                const auto& gs = t.word.gens;
                int suffix = 0;
                for (int i = (int)gs.size() - 1; i >= 0; --i) {
                    const Element& dgi = diff_[gs[i]];
                    if (!dgi.is_zero()) {
                        Scalar sign = (suffix % 2 == 0) ? Scalar::one(field_) : -Scalar::one(field_);
                        for (const auto& dt : dgi.terms) {
                            std::vector<int> ng(gs.begin(), gs.begin() + i);
                            ng.insert(ng.end(), dt.word.gens.begin(), dt.word.gens.end());
                            ng.insert(ng.end(), gs.begin() + i + 1, gs.end());
                            Word w = ng.empty() ? Word{word_src(t.word), {}} : Word{gens_[ng.front()].src, ng};
                            dd.push_back(Term{t.coeff * dt.coeff * sign, w});
                        }
                    }
                    suffix += gens_[gs[i]].deg.c;
                }
            } else {
                for (auto& tt : d2.terms) dd.push_back(Term{tt.coeff * Scalar::one(field_), tt.word});
            }
        }
        Element sq = admissible_ ? from_terms(std::move(dd)) : raw_combine(*this, std::move(dd));
        if (!sq.is_zero()) throw err_pre("DifferentialNotSquareZero", "d^2(" + gens_[g].name + ") != 0");
    }
    // d must preserve the relation ideal.
    if (admissible_) {
        for (const auto& r : relations_) {
            Element dr = differentiate(from_terms(std::vector<Term>(r.terms)));
            if (!dr.is_zero())
                throw err_pre("DifferentialBreaksRelations", "d of a relation is nonzero in the quotient");
        }
    }
}

void Presentation::enumerate_from(int vertex, Bidegree cur, Bidegree target, std::vector<int>& stack,
                                  std::vector<Word>& out) const {
    if (cur == target && !stack.empty())
        out.push_back(Word{gens_[stack.front()].src, stack});
    int at = stack.empty() ? vertex : gens_[stack.back()].tgt;
    for (int g : out_gens_[at]) {
        Bidegree nd = cur + gens_[g].deg;
        if (phi(nd) > phi(target)) continue;
        // one-sided degree bounds prune overshoot early
        if (coh_sign_ > 0 && nd.c > target.c) continue;
        if (coh_sign_ < 0 && nd.c < target.c) continue;
        if (adams_sign_ > 0 && nd.b > target.b) continue;
        if (adams_sign_ < 0 && nd.b < target.b) continue;
        stack.push_back(g);
        enumerate_from(vertex, nd, target, stack, out);
        stack.pop_back();
    }
}

std::set<Bidegree> Presentation::special_degree_sums(int phi_cap) const {
    std::set<Bidegree> special;
    for (const auto& g : gens_)
        if (!(g.deg == Bidegree{0, 0})) special.insert(g.deg);
    std::set<Bidegree> sums{{0, 0}};
    bool grew = true;
    while (grew) {
        grew = false;
        for (Bidegree s : std::vector<Bidegree>(sums.begin(), sums.end()))
            for (Bidegree g : special) {
                Bidegree t = s + g;
                if (phi(t) <= phi_cap && !sums.count(t)) { sums.insert(t); grew = true; }
            }
    }
    return sums;
}

bool Presentation::cell_feasible(Bidegree d) const {
    if (!frozen_ || !admissible_) return true;
    if (phi(d) < 0) return false;
    {
        std::shared_lock lk(cache_mx_);
        if (phi(d) <= sums_phi_cap_) return sums_cache_.count(d) > 0;
    }
    auto sums = special_degree_sums(phi(d));
    std::unique_lock lk(cache_mx_);
    if (phi(d) > sums_phi_cap_) {
        sums_cache_ = std::move(sums);
        sums_phi_cap_ = phi(d);
    }
    return sums_cache_.count(d) > 0;
}

std::vector<Word> Presentation::enumerate_words(Bidegree d) const {
    {
        std::shared_lock lk(cache_mx_);
        auto it = word_cache_.find(d);
        if (it != word_cache_.end()) return it->second;
    }
    std::vector<Word> out;
    if (d == Bidegree{0, 0})
        for (int v = 0; v < (int)vertices_.size(); ++v) out.push_back(Word{v, {}});
    if (phi(d) >= 0) {
        std::vector<int> stack;
        for (int v = 0; v < (int)vertices_.size(); ++v) enumerate_from(v, {0, 0}, d, stack, out);
    }
    std::sort(out.begin(), out.end(), [&](const Word& x, const Word& y) { return word_less(x, y); });
    std::unique_lock lk(cache_mx_);
    auto [it, ins] = word_cache_.try_emplace(d, std::move(out));
    return it->second;
}

std::unique_ptr<CellBasis> Presentation::build_cell(Bidegree d) const {
    auto cb = std::make_unique<CellBasis>();
    cb->deg = d;
    cb->words = enumerate_words(d);
    std::map<std::pair<int, std::vector<int>>, int> index;
    for (size_t i = 0; i < cb->words.size(); ++i)
        index[{cb->words[i].lazy() ? cb->words[i].vertex : -1, cb->words[i].gens}] = (int)i;

    std::vector<std::vector<Scalar>> ideal_rows;
    if (!relations_.empty()) {
        // Achievable bidegrees of words: sums of the distinct nonzero
        // generator degrees, bounded by the phi budget.
        std::set<Bidegree> sums = special_degree_sums(phi(d));
        for (const auto& rel : relations_) {
            Bidegree rd = word_deg(rel.terms[0].word);
            int ru = word_src(rel.terms[0].word), rv = word_tgt(rel.terms[0].word);
            for (Bidegree bq : sums) {
                Bidegree bp = d - rd - bq;
                if (phi(bp) < 0 || !sums.count(bp)) continue;
                std::vector<Word> qs = enumerate_words(bq), ps = enumerate_words(bp);
                for (const Word& q : qs) {
                    if (word_tgt(q) != ru) continue;
                    for (const Word& p : ps) {
                        if (word_src(p) != rv) continue;
                        std::vector<Scalar> row(cb->words.size(), Scalar::zero(field_));
                        bool any = false;
                        for (const auto& t : rel.terms) {
                            std::vector<int> g = q.gens;
                            g.insert(g.end(), t.word.gens.begin(), t.word.gens.end());
                            g.insert(g.end(), p.gens.begin(), p.gens.end());
                            auto it = index.find({g.empty() ? word_src(q) : -1, g});
                            if (it == index.end())
                                throw err_pre("InternalError", "relation sandwich escaped its cell");
                            row[it->second] = row[it->second] + t.coeff;
                            any = true;
                        }
                        if (any) ideal_rows.push_back(std::move(row));
                    }
                }
            }
        }
    }
    // columns reversed: pivots then land on the longest words, keeping the
    // shortest as quotient representatives
    int nw = (int)cb->words.size();
    ExactMatrix rel(field_, (int)ideal_rows.size(), nw);
    for (size_t r = 0; r < ideal_rows.size(); ++r)
        for (int c = 0; c < nw; ++c)
            if (!ideal_rows[r][nw - 1 - c].is_zero()) rel.set((int)r, c, ideal_rows[r][nw - 1 - c]);
    auto rr = rel.rref();
    for (int pc : rr.pivot_cols) cb->rel_pivots.push_back(nw - 1 - pc);
    // keep only the pivot rows (still in reversed column order)
    ExactMatrix rows(field_, (int)rr.pivot_cols.size(), nw);
    for (size_t k = 0; k < rr.pivot_cols.size(); ++k)
        for (int c = 0; c < nw; ++c) rows.set((int)k, c, rr.mat.at((int)k, c));
    cb->rel_rref = std::move(rows);
    std::vector<bool> pivot(cb->words.size(), false);
    for (int c : cb->rel_pivots) pivot[c] = true;
    cb->word_to_quotient.assign(cb->words.size(), -1);
    for (size_t i = 0; i < cb->words.size(); ++i)
        if (!pivot[i]) {
            cb->word_to_quotient[i] = (int)cb->quotient.size();
            cb->quotient.push_back((int)i);
        }
    return cb;
}

const CellBasis& Presentation::cell(Bidegree d) const {
    if (!frozen_) throw err_pre("NotFrozen", "presentation must be frozen before basis queries");
    if (!admissible_)
        throw err_pre("UnboundedBidegree",
                      "presentation fails the finiteness certificate; refusing basis enumeration");
    {
        std::shared_lock lk(cache_mx_);
        auto it = cache_.find(d);
        if (it != cache_.end()) return *it->second;
    }
    auto cb = build_cell(d);
    std::unique_lock lk(cache_mx_);
    auto [it, inserted] = cache_.try_emplace(d, std::move(cb));
    return *it->second;
}

std::vector<Element> Presentation::cell_basis_elements(Bidegree d) const {
    const CellBasis& cb = cell(d);
    std::vector<Element> out;
    for (int i : cb.quotient)
        out.push_back(Element{{Term{Scalar::one(field_), cb.words[i]}}});
    return out;
}

std::vector<int> Presentation::cell_block(Bidegree d, int tgt, int src) const {
    const CellBasis& cb = cell(d);
    std::vector<int> out;
    for (size_t q = 0; q < cb.quotient.size(); ++q) {
        const Word& w = cb.words[cb.quotient[q]];
        if (word_tgt(w) == tgt && word_src(w) == src) out.push_back((int)q);
    }
    return out;
}

std::vector<Scalar> Presentation::coordinates(const Element& e, Bidegree d) const {
    const CellBasis& cb = cell(d);
    std::vector<Scalar> v(cb.quotient.size(), Scalar::zero(field_));
    for (const auto& t : e.terms) {
        int idx = -1;
        for (size_t i = 0; i < cb.words.size(); ++i)
            if (cb.words[i] == t.word) { idx = (int)i; break; }
        if (idx < 0 || cb.word_to_quotient[idx] < 0)
            throw err_pre("InternalError", "element not in normal form for its cell");
        v[cb.word_to_quotient[idx]] = v[cb.word_to_quotient[idx]] + t.coeff;
    }
    return v;
}

BidegreeTable Presentation::dimension_table(const Window& w) const {
    BidegreeTable t;
    t.window = w;
    for (Bidegree d : w.cells()) t.set(d, cell_dim(d));
    return t;
}

void Presentation::validate_window(const Window& w) const {
    for (Bidegree d : w.cells())
        for (const Element& e : cell_basis_elements(d)) {
            Element dd = differentiate(differentiate(e));
            if (!dd.is_zero()) throw err_pre("DifferentialNotSquareZero", "d^2 != 0 on " + element_str(e));
        }
}

std::shared_ptr<Presentation> path_algebra(Field f, std::vector<std::string> vertices,
                                           std::vector<Generator> arrows) {
    for (auto& a : arrows)
        if (!(a.deg == Bidegree{0, 0}))
            throw err_pre("InvalidGenerator", "path algebra arrows must sit in bidegree (0,0)");
    auto P = std::make_shared<Presentation>(f, std::move(vertices), std::move(arrows));
    P->freeze();
    // path_algebra requires genuine acyclicity
    try {
        P->cell({0, 0});
    } catch (const EngineError&) {
        throw err_pre("CyclicQuiver", "path algebra requires an acyclic quiver");
    }
    return P;
}

std::shared_ptr<Presentation> collapse(const Presentation& alg, int N) {
    if (N < 2) throw err_pre("InvalidCollapse", "collapse requires N >= 2");
    std::vector<Generator> gens = alg.gens();
    for (auto& g : gens) g.deg = Bidegree{g.deg.c + g.deg.b * N, 0};
    auto P = std::make_shared<Presentation>(alg.field(), alg.vertices(), std::move(gens));
    for (const auto& r : alg.relations()) P->add_relation(Element{r.terms});
    for (size_t g = 0; g < alg.gens().size(); ++g)
        if (!alg.differential((int)g).is_zero())
            P->set_differential((int)g, Element{alg.differential((int)g).terms});
    P->name = alg.name + "/N" + std::to_string(N);
    P->freeze();
    return P;
}

std::shared_ptr<Presentation> opposite(const Presentation& alg) {
    for (size_t g = 0; g < alg.gens().size(); ++g)
        if (!alg.differential((int)g).is_zero())
            throw err_pre("UnsupportedType", "opposite presentation only supported for zero differential");
    std::vector<Generator> gens = alg.gens();
    for (auto& g : gens) std::swap(g.src, g.tgt);
    auto P = std::make_shared<Presentation>(alg.field(), alg.vertices(), std::move(gens));
    auto op_elem = [&](const Element& e) {
        std::vector<Term> terms;
        for (const auto& t : e.terms) {
            Word w = t.word;
            std::reverse(w.gens.begin(), w.gens.end());
            if (!w.gens.empty()) w.vertex = alg.gens()[w.gens.front()].tgt;
            // Koszul sign for reversing a product of homogeneous factors.
            long swaps = 0, seen_odd = 0;
            for (int g : t.word.gens) {
                int c = alg.gens()[g].deg.c & 1;
                if (c) { swaps += seen_odd; seen_odd += 1; }
            }
            Scalar coeff = (swaps % 2 == 0) ? t.coeff : -t.coeff;
            terms.push_back(Term{coeff, std::move(w)});
        }
        return Element{std::move(terms)};
    };
    for (const auto& r : alg.relations()) P->add_relation(op_elem(r));
    P->name = alg.name + "^op";
    P->freeze();
    return P;
}

namespace {

BidegreeTable cohomology_impl(const Presentation& alg, const Window& w, bool parallel) {
    std::vector<Bidegree> cells = w.cells();
    std::vector<int> dims(cells.size(), 0);
    auto cell_diff = [&](Bidegree from) {
        const CellBasis& src = alg.cell(from);
        Bidegree to = from + kDiffDegree;
        const CellBasis& dst = alg.cell(to);
        ExactMatrix m(alg.field(), dst.dim(), src.dim());
        for (int j = 0; j < src.dim(); ++j) {
            Element e{{Term{Scalar::one(alg.field()), src.words[src.quotient[j]]}}};
            Element de = alg.differentiate(e);
            if (de.is_zero()) continue;
            auto v = alg.coordinates(de, to);
            for (int i = 0; i < dst.dim(); ++i)
                if (!v[i].is_zero()) m.set(i, j, v[i]);
        }
        return m;
    };
    parallel_for(
        (int)cells.size(),
        [&](int i) {
            Bidegree d = cells[i];
            ExactMatrix din = cell_diff(d - kDiffDegree);
            ExactMatrix dout = cell_diff(d);
            dims[i] = cohomology_dim(din, dout);
        },
        parallel);
    BidegreeTable t;
    t.window = w;
    for (size_t i = 0; i < cells.size(); ++i) t.set(cells[i], dims[i]);
    return t;
}

}  // namespace

BidegreeTable algebra_cohomology(const Presentation& alg, const Window& w, bool parallel) {
    return cohomology_impl(alg, w, parallel);
}

BidegreeTable algebra_cohomology_serial(const Presentation& alg, const Window& w) {
    return cohomology_impl(alg, w, false);
}

}  // namespace dbga
