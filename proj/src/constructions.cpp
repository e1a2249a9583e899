#include "dbga/constructions.hpp"

#include <algorithm>

namespace dbga {

namespace {

// All paths of a path algebra grouped on demand. A must be admissible with
// every generator in bidegree (0,0).
std::vector<Word> path_basis(const Presentation& A) {
    const CellBasis& cb = A.cell({0, 0});
    std::vector<Word> out;
    for (int i : cb.quotient) out.push_back(cb.words[i]);
    return out;
}

void require_path_algebra(const Presentation& A) {
    for (const auto& g : A.gens())
        if (!(g.deg == Bidegree{0, 0}))
            throw err_pre("CyclicQuiver", "construction requires a plain path algebra base");
    if (!A.admissible()) throw err_pre("CyclicQuiver", "construction requires an acyclic quiver");
    if (!A.relations().empty())
        throw err_pre("UnsupportedType", "construction requires a relation-free path algebra");
}

}  // namespace

int DualData::path_index(const Word& w) const {
    for (size_t i = 0; i < paths.size(); ++i)
        if (paths[i] == w) return (int)i;
    return -1;
}

ProjectiveBimoduleComplex ProjectiveBimoduleComplex::shifted(int r, int s) const {
    ProjectiveBimoduleComplex out = *this;
    for (auto& sm : out.summands) sm.shift = Bidegree{sm.shift.c - r, sm.shift.b - s};
    if (r % 2 != 0) {
        Field f = base->field();
        for (auto& [k, pairs] : out.diff)
            for (auto& p : pairs) p.left = base->scale(p.left, -Scalar::one(f));
    }
    return out;
}

BidegreeTable ProjectiveBimoduleComplex::dimension_table(const Window& w) const {
    BidegreeTable t;
    t.window = w;
    auto paths = path_basis(*base);
    auto count_from = [&](int v) {
        int n = 0;
        for (const auto& p : paths)
            if (base->word_src(p) == v) ++n;
        return n;
    };
    auto count_to = [&](int v) {
        int n = 0;
        for (const auto& p : paths)
            if (base->word_tgt(p) == v) ++n;
        return n;
    };
    for (const auto& sm : summands) {
        if (!w.contains(sm.shift)) continue;
        // Ae_l has the paths with source l; e_rA those with target r.
        t.cells[sm.shift] += count_from(sm.left_v) * count_to(sm.right_v);
        if (t.cells[sm.shift] == 0) t.cells.erase(sm.shift);
    }
    return t;
}

BidegreeTable ProjectiveBimoduleComplex::cohomology_table(const Window& w) const {
    // Basis of a cell: (summand s, x in Ae_l, y in e_rA) with shift_s in the cell.
    struct Vec { int summand; Word x; Word y; };
    Field f = base->field();
    auto paths = path_basis(*base);
    auto cell_basis = [&](Bidegree d) {
        std::vector<Vec> out;
        for (size_t s = 0; s < summands.size(); ++s) {
            if (!(summands[s].shift == d)) continue;
            for (const auto& x : paths) {
                if (base->word_src(x) != summands[s].left_v) continue;
                for (const auto& y : paths) {
                    if (base->word_tgt(y) != summands[s].right_v) continue;
                    out.push_back({(int)s, x, y});
                }
            }
        }
        return out;
    };
    auto diff_matrix = [&](const std::vector<Vec>& from, const std::vector<Vec>& to) {
        ExactMatrix m(f, (int)to.size(), (int)from.size());
        for (size_t j = 0; j < from.size(); ++j) {
            const Vec& v = from[j];
            for (const auto& [key, pairs] : diff) {
                if (key.second != v.summand) continue;
                int r = key.first;
                for (const auto& pr : pairs) {
                    // x·gen_s·y ↦ (x∘l)·gen_r·(r'∘y)
                    Element xl = base->multiply(Element{{Term{Scalar::one(f), v.x}}}, pr.left);
                    Element ry = base->multiply(pr.right, Element{{Term{Scalar::one(f), v.y}}});
                    if (xl.is_zero() || ry.is_zero()) continue;
                    for (const auto& tx : xl.terms)
                        for (const auto& ty : ry.terms) {
                            for (size_t i = 0; i < to.size(); ++i)
                                if (to[i].summand == r && to[i].x == tx.word && to[i].y == ty.word)
                                    m.add_at((int)i, (int)j, tx.coeff * ty.coeff);
                        }
                }
            }
        }
        return m;
    };
    BidegreeTable t;
    t.window = w;
    for (Bidegree d : w.cells()) {
        auto mid = cell_basis(d);
        auto lo = cell_basis(d - kDiffDegree);
        auto hi = cell_basis(d + kDiffDegree);
        ExactMatrix din = diff_matrix(lo, mid);
        ExactMatrix dout = diff_matrix(mid, hi);
        t.set(d, cohomology_dim(din, dout));
    }
    return t;
}

std::map<std::pair<int, int>, int> ProjectiveBimoduleComplex::euler_by_vertex_pair() const {
    std::map<std::pair<int, int>, int> out;
    auto paths = path_basis(*base);
    for (const auto& sm : summands) {
        int sign = (sm.shift.c % 2 == 0) ? 1 : -1;
        for (const auto& x : paths) {
            if (base->word_src(x) != sm.left_v) continue;
            for (const auto& y : paths) {
                if (base->word_tgt(y) != sm.right_v) continue;
                out[{base->word_tgt(x), base->word_src(y)}] += sign;
            }
        }
    }
    return out;
}

ProjectiveBimoduleComplex standard_resolution(std::shared_ptr<const Presentation> A) {
    require_path_algebra(*A);
    Field f = A->field();
    ProjectiveBimoduleComplex C;
    C.base = A;
    int nv = (int)A->vertices().size();
    for (int i = 0; i < nv; ++i)
        C.summands.push_back({i, i, {0, 0}, "z_" + A->vertices()[i]});
    for (size_t a = 0; a < A->gens().size(); ++a) {
        const Generator& g = A->gens()[a];
        C.summands.push_back({g.tgt, g.src, {-1, 0}, "w_" + g.name});
        int s = nv + (int)a;
        // d(w_a) = a ⊗ e_{s(a)}  -  e_{t(a)} ⊗ a
        C.diff[{g.src, s}].push_back({A->gen_element((int)a), A->lazy_element(g.src)});
        C.diff[{g.tgt, s}].push_back(
            {A->scale(A->lazy_element(g.tgt), -Scalar::one(f)), A->gen_element((int)a)});
    }
    return C;
}

ProjectiveBimoduleComplex inverse_dualizing(std::shared_ptr<const Presentation> A) {
    require_path_algebra(*A);
    Field f = A->field();
    ProjectiveBimoduleComplex C;
    C.base = A;
    int nv = (int)A->vertices().size();
    for (int i = 0; i < nv; ++i)
        C.summands.push_back({i, i, {0, 0}, "z_" + A->vertices()[i]});
    for (size_t a = 0; a < A->gens().size(); ++a) {
        const Generator& g = A->gens()[a];
        C.summands.push_back({g.src, g.tgt, {1, 0}, g.name + "*"});
        int star = nv + (int)a;
        // d(z_{t(a)}) gains a·(a* gen)·e_{t(a)}, d(z_{s(a)}) loses
        // e_{s(a)}·(a* gen)·a. Signs chosen so that after the [X-1] shift
        // (which negates d) the tensor algebra carries
        // d t_i = Σ_{t(a)=i} aa* - Σ_{s(a)=i} a*a.
        C.diff[{star, g.tgt}].push_back(
            {A->scale(A->gen_element((int)a), -Scalar::one(f)), A->lazy_element(g.tgt)});
        C.diff[{star, g.src}].push_back({A->lazy_element(g.src), A->gen_element((int)a)});
    }
    return C;
}

DualData dual_bimodule(std::shared_ptr<const Presentation> A) {
    require_path_algebra(*A);
    DualData D;
    D.base = A;
    D.paths = path_basis(*A);
    for (const auto& p : D.paths) {
        std::string nm;
        if (p.lazy()) nm = "e_" + A->vertices()[p.vertex];
        else
            for (int g : p.gens) nm += (nm.empty() ? "" : "_") + A->gens()[g].name;
        D.dual_names.push_back(nm + "^");
    }
    size_t na = A->gens().size(), np = D.paths.size();
    D.left_act.assign(na, std::vector<int>(np, -1));
    D.right_act.assign(na, std::vector<int>(np, -1));
    for (size_t a = 0; a < na; ++a)
        for (size_t p = 0; p < np; ++p) {
            const Word& w = D.paths[p];
            // a · p^ = x^ when p = x ∘ a (p starts with a in application order)
            if (!w.lazy() && w.gens.front() == (int)a) {
                Word x;
                x.gens.assign(w.gens.begin() + 1, w.gens.end());
                x.vertex = x.gens.empty() ? A->gens()[a].tgt : A->gens()[x.gens.front()].src;
                D.left_act[a][p] = D.path_index(x);
            }
            // p^ · a = x^ when p = a ∘ x (p ends with a)
            if (!w.lazy() && w.gens.back() == (int)a) {
                Word x;
                x.gens.assign(w.gens.begin(), w.gens.end() - 1);
                x.vertex = x.gens.empty() ? A->gens()[a].src : w.vertex;
                D.right_act[a][p] = D.path_index(x);
            }
        }
    return D;
}

std::shared_ptr<Presentation> tensor_algebra(std::shared_ptr<const Presentation> A,
                                             const ProjectiveBimoduleComplex& xhat,
                                             const std::vector<std::string>& gen_names) {
    require_path_algebra(*A);
    Field f = A->field();
    std::vector<Generator> gens = A->gens();
    size_t na = gens.size();
    for (size_t s = 0; s < xhat.summands.size(); ++s) {
        const auto& sm = xhat.summands[s];
        Generator g;
        g.name = s < gen_names.size() ? gen_names[s] : sm.gen_name;
        g.src = sm.right_v;
        g.tgt = sm.left_v;
        g.deg = sm.shift;
        if (g.deg == Bidegree{0, 0})
            throw err_pre("NonConvergentGrading",
                          "tensor algebra generator lands in bidegree (0,0); grading does not converge");
        gens.push_back(std::move(g));
    }
    auto P = std::make_shared<Presentation>(f, A->vertices(), std::move(gens));
    // Differential induced from the bimodule complex.
    for (const auto& [key, pairs] : xhat.diff) {
        auto [r, s] = key;
        std::vector<Term> terms;
        for (const auto& pr : pairs) {
            // gen_s ↦ l · gen_r · r'  =  multiply(multiply(l, gen_r), r')
            for (const auto& lt : pr.left.terms)
                for (const auto& rt : pr.right.terms) {
                    Word w = rt.word;
                    Word mid{0, {(int)(na + r)}};
                    std::vector<int> gs = w.gens;
                    gs.push_back((int)(na + r));
                    gs.insert(gs.end(), lt.word.gens.begin(), lt.word.gens.end());
                    Word full{w.lazy() ? xhat.summands[r].right_v : w.vertex, gs};
                    terms.push_back(Term{lt.coeff * rt.coeff, full});
                }
        }
        std::vector<Term> merged = P->differential((int)(na + s)).terms;
        merged.insert(merged.end(), terms.begin(), terms.end());
        P->set_differential((int)(na + s), Element{merged});
    }
    P->freeze();
    return P;
}

ProjectiveBimoduleComplex cy_theta(std::shared_ptr<const Presentation> A, CompletionMode mode,
                                   int N) {
    require_path_algebra(*A);
    if (mode == CompletionMode::CollapsedN && N < 2)
        throw err_pre("InvalidCollapse", "collapsed completion requires N >= 2");
    ProjectiveBimoduleComplex theta = inverse_dualizing(A).shifted(-1, 1);
    for (auto& sm : theta.summands)
        if (sm.gen_name.rfind("z_", 0) == 0) sm.gen_name = "t_" + sm.gen_name.substr(2);
    if (mode == CompletionMode::CollapsedN)
        for (auto& sm : theta.summands) sm.shift = Bidegree{sm.shift.c + sm.shift.b * N, 0};
    return theta;
}

std::shared_ptr<Presentation> cy_completion(std::shared_ptr<const Presentation> A,
                                            CompletionMode mode, int N) {
    auto T = tensor_algebra(A, cy_theta(A, mode, N));
    if (mode == CompletionMode::BigradedX) T->name = "cyX(" + A->name + ")";
    else T->name = "cyN" + std::to_string(N) + "(" + A->name + ")";
    return T;
}

TrivialExtensionData trivial_extension(std::shared_ptr<const Presentation> A, CompletionMode mode,
                                       int N) {
    require_path_algebra(*A);
    if (mode == CompletionMode::CollapsedN && N < 2)
        throw err_pre("InvalidCollapse", "collapsed trivial extension requires N >= 2");
    Field f = A->field();
    TrivialExtensionData E;
    E.base = A;
    E.mode = mode;
    E.N = N;
    E.dual = dual_bimodule(A);
    Bidegree ddeg = mode == CompletionMode::BigradedX ? Bidegree{0, 1} : Bidegree{N, 0};

    std::vector<Generator> gens = A->gens();
    size_t na = gens.size(), np = E.dual.paths.size();
    E.dual_gen.assign(np, -1);
    for (size_t p = 0; p < np; ++p) {
        Generator g;
        g.name = E.dual.dual_names[p];
        g.src = A->word_tgt(E.dual.paths[p]);
        g.tgt = A->word_src(E.dual.paths[p]);
        g.deg = ddeg;
        E.dual_gen[p] = (int)gens.size();
        gens.push_back(std::move(g));
    }
    auto P = std::make_shared<Presentation>(f, A->vertices(), std::move(gens));
    auto dual_word = [&](int p) { return Word{P->gens()[E.dual_gen[p]].src, {E.dual_gen[p]}}; };
    // dual ∘ dual = 0 for every composable pair
    for (size_t p = 0; p < np; ++p)
        for (size_t q = 0; q < np; ++q) {
            int dp = E.dual_gen[p], dq = E.dual_gen[q];
            if (P->gens()[dq].tgt != P->gens()[dp].src) continue;
            Word w{P->gens()[dq].src, {dq, dp}};
            P->add_relation(Element{{Term{Scalar::one(f), w}}});
        }
    // straightening: a ∘ p^ and p^ ∘ a reduce via the action tables
    for (size_t a = 0; a < na; ++a)
        for (size_t p = 0; p < np; ++p) {
            const Generator& ga = A->gens()[a];
            int dp = E.dual_gen[p];
            if (P->gens()[dp].tgt == ga.src) {  // a ∘ p^ : p^ first
                std::vector<Term> terms{Term{Scalar::one(f), Word{P->gens()[dp].src, {dp, (int)a}}}};
                int val = E.dual.left_act[a][p];
                if (val >= 0) terms.push_back(Term{-Scalar::one(f), dual_word(val)});
                P->add_relation(Element{terms});
            }
            if (ga.tgt == P->gens()[dp].src) {  // p^ ∘ a : a first
                std::vector<Term> terms{Term{Scalar::one(f), Word{ga.src, {(int)a, dp}}}};
                int val = E.dual.right_act[a][p];
                if (val >= 0) terms.push_back(Term{-Scalar::one(f), dual_word(val)});
                P->add_relation(Element{terms});
            }
        }
    P->name = (mode == CompletionMode::BigradedX ? "trivX(" : "trivN" + std::to_string(N) + "(") +
              A->name + ")";
    P->freeze();
    E.ext = P;
    return E;
}

}  // namespace dbga
