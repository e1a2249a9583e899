#include "dbga/perfect.hpp"
#include "dbga/parallel.hpp"

#include <algorithm>

namespace dbga {

void PerfectModule::set_entry(int r, int s, Element e) {
    if (e.is_zero()) diff.erase({r, s});
    else diff[{r, s}] = std::move(e);
}

const Element* PerfectModule::entry(int r, int s) const {
    auto it = diff.find({r, s});
    return it == diff.end() ? nullptr : &it->second;
}

void PerfectModule::validate() const {
    Field f = alg->field();
    for (const auto& [key, e] : diff) {
        auto [r, s] = key;
        if (r < 0 || r >= size() || s < 0 || s >= size())
            throw err_pre("ShapeMismatch", "differential entry out of range");
        if (e.is_zero()) continue;
        if (alg->element_tgt(e) != summands[s].vertex || alg->element_src(e) != summands[r].vertex)
            throw err_pre("ShapeMismatch", "differential entry has wrong endpoints");
        Bidegree want = summands[s].shift - summands[r].shift + kDiffDegree;
        if (!(alg->element_deg(e) == want))
            throw err_pre("ShapeMismatch", "differential entry has wrong bidegree");
    }
    // (D·D)(g_s) = Σ_r d(D_{rs})·g_r + Σ_{r,u} (-1)^{|D_{rs}|} D_{rs}∘D_{ur} g_u
    for (int s = 0; s < size(); ++s) {
        std::map<int, Element> acc;
        for (const auto& [key, e] : diff) {
            if (key.second != s) continue;
            int r = key.first;
            Element de = alg->differentiate(e);
            if (!de.is_zero()) acc[r] = acc.count(r) ? alg->add(acc[r], de) : de;
            int sign = alg->element_coh(e) % 2 == 0 ? 1 : -1;
            for (const auto& [key2, e2] : diff) {
                if (key2.second != r) continue;
                int u = key2.first;
                Element prod = alg->multiply(e, e2);
                if (prod.is_zero()) continue;
                if (sign < 0) prod = alg->scale(prod, -Scalar::one(f));
                acc[u] = acc.count(u) ? alg->add(acc[u], prod) : prod;
            }
        }
        for (auto& [u, e] : acc)
            if (!e.is_zero())
                throw err_pre("DifferentialNotSquareZero", "module differential does not square to zero");
    }
}

bool PerfectModule::is_minimal() const {
    for (const auto& [key, e] : diff)
        for (const auto& t : e.terms)
            if (t.word.lazy()) return false;
    return true;
}

BidegreeTable PerfectModule::dimension_table(const Window& w) const {
    BidegreeTable t;
    t.window = w;
    for (Bidegree d : w.cells()) {
        int dim = 0;
        for (const auto& sm : summands) {
            Bidegree need = d - sm.shift;
            const CellBasis& cb = alg->cell(need);
            for (int i : cb.quotient)
                if (alg->word_src(cb.words[i]) == sm.vertex) ++dim;
        }
        t.set(d, dim);
    }
    return t;
}

PerfectModule zero_module(std::shared_ptr<const Presentation> alg) { return PerfectModule{alg, {}, {}}; }

PerfectModule free_module(std::shared_ptr<const Presentation> alg) {
    PerfectModule m{alg, {}, {}};
    for (int v = 0; v < (int)alg->vertices().size(); ++v) m.summands.push_back({v, {0, 0}});
    return m;
}

PerfectModule projective_summand(std::shared_ptr<const Presentation> alg, int vertex, Bidegree shift) {
    return PerfectModule{alg, {{vertex, shift}}, {}};
}

PerfectModule shift_module(const PerfectModule& m, Bidegree d) {
    PerfectModule out = m;
    for (auto& sm : out.summands) sm.shift = sm.shift - d;
    if (d.c % 2 != 0) {
        Field f = m.alg->field();
        for (auto& [k, e] : out.diff) e = m.alg->scale(e, -Scalar::one(f));
    }
    return out;
}

PerfectModule direct_sum(const PerfectModule& x, const PerfectModule& y) {
    if (x.alg.get() != y.alg.get()) throw err_pre("AlgebraMismatch", "direct sum over different algebras");
    PerfectModule out{x.alg, x.summands, x.diff};
    int off = x.size();
    out.summands.insert(out.summands.end(), y.summands.begin(), y.summands.end());
    for (const auto& [k, e] : y.diff) out.diff[{k.first + off, k.second + off}] = e;
    return out;
}

ModMorphism identity_morphism(const PerfectModule& m) {
    ModMorphism f{m, m, {0, 0}, {}};
    for (int s = 0; s < m.size(); ++s) f.entries[{s, s}] = m.alg->lazy_element(m.summands[s].vertex);
    return f;
}

ModMorphism d_morphism(const ModMorphism& f) {
    const auto& A = *f.from.alg;
    Field fl = A.field();
    ModMorphism out{f.from, f.to, f.deg + kDiffDegree, {}};
    int n = f.deg.c;
    auto acc = [&](int t, int s, Element e) {
        if (e.is_zero()) return;
        auto it = out.entries.find({t, s});
        if (it == out.entries.end()) out.entries[{t, s}] = std::move(e);
        else {
            it->second = A.add(it->second, e);
            if (it->second.is_zero()) out.entries.erase(it);
        }
    };
    for (const auto& [key, w] : f.entries) {
        auto [t0, s0] = key;
        acc(t0, s0, A.differentiate(w));
        int sgn_w = A.element_coh(w) % 2 == 0 ? 1 : -1;
        for (const auto& [nk, ne] : f.to.diff) {
            if (nk.second != t0) continue;
            Element prod = A.multiply(w, ne);
            if (sgn_w < 0) prod = A.scale(prod, -Scalar::one(fl));
            acc(nk.first, s0, std::move(prod));
        }
        for (const auto& [mk, me] : f.from.diff) {
            if (mk.first != s0) continue;
            int scol = mk.second;
            Element prod = A.multiply(me, w);
            int sgn = ((n * (1 + A.element_coh(me))) % 2 == 0) ? -1 : 1;
            if (sgn < 0) prod = A.scale(prod, -Scalar::one(fl));
            acc(t0, scol, std::move(prod));
        }
    }
    return out;
}

bool morphism_closed(const ModMorphism& f) { return d_morphism(f).entries.empty(); }

ModMorphism compose(const ModMorphism& g, const ModMorphism& f) {
    const auto& A = *f.from.alg;
    Field fl = A.field();
    ModMorphism out{f.from, g.to, f.deg + g.deg, {}};
    int ng = g.deg.c;
    for (const auto& [fk, fe] : f.entries) {
        auto [t, s] = fk;
        int sgn_f = (ng * A.element_coh(fe)) % 2 == 0 ? 1 : -1;
        for (const auto& [gk, ge] : g.entries) {
            if (gk.second != t) continue;
            Element prod = A.multiply(fe, ge);
            if (prod.is_zero()) continue;
            if (sgn_f < 0) prod = A.scale(prod, -Scalar::one(fl));
            auto it = out.entries.find({gk.first, s});
            if (it == out.entries.end()) out.entries[{gk.first, s}] = std::move(prod);
            else {
                it->second = A.add(it->second, prod);
                if (it->second.is_zero()) out.entries.erase(it);
            }
        }
    }
    return out;
}

PerfectModule cone(const ModMorphism& f) {
    if (!(f.deg == Bidegree{0, 0})) throw err_pre("NotClosed", "cone requires a degree-(0,0) morphism");
    if (!morphism_closed(f)) throw err_pre("NotClosed", "cone requires a closed morphism");
    const PerfectModule& M = f.from;
    const PerfectModule& N = f.to;
    Field fl = M.alg->field();
    PerfectModule out{M.alg, {}, {}};
    for (const auto& sm : M.summands) out.summands.push_back({sm.vertex, sm.shift - Bidegree{1, 0}});
    for (const auto& sn : N.summands) out.summands.push_back(sn);
    int off = M.size();
    for (const auto& [k, e] : M.diff) out.diff[{k.first, k.second}] = M.alg->scale(e, -Scalar::one(fl));
    for (const auto& [k, e] : N.diff) out.diff[{k.first + off, k.second + off}] = e;
    for (const auto& [k, e] : f.entries) out.diff[{k.first + off, k.second}] = e;
    out.validate();
    return out;
}

PerfectModule minimize(const PerfectModule& m) {
    PerfectModule cur = m;
    Field fl = m.alg->field();
    const auto& A = *m.alg;
    for (;;) {
        int ur = -1, us = -1;
        Scalar lambda = Scalar::zero(fl);
        for (const auto& [k, e] : cur.diff) {
            for (const auto& t : e.terms)
                if (t.word.lazy()) {
                    if (e.terms.size() > 1)
                        throw err_pre("UnsupportedType",
                                      "unit entry with a nonscalar (0,0) component; cannot invert");
                    ur = k.first;
                    us = k.second;
                    lambda = t.coeff;
                    break;
                }
            if (ur >= 0) break;
        }
        if (ur < 0) return cur;
        int s = us, r = ur;
        Scalar linv = lambda.inverse();
        PerfectModule next{cur.alg, {}, {}};
        std::vector<int> remap(cur.size(), -1);
        for (int i = 0; i < cur.size(); ++i) {
            if (i == s || i == r) continue;
            remap[i] = next.size();
            next.summands.push_back(cur.summands[i]);
        }
        // D'_{xv} = D_{xv} - lambda^{-1} (D_{rv} ∘ D_{xs})
        for (const auto& [k, e] : cur.diff) {
            auto [x, v] = k;
            if (x == s || x == r || v == s || v == r) continue;
            next.diff[{remap[x], remap[v]}] = e;
        }
        for (const auto& [k1, drv] : cur.diff) {
            if (k1.first != r) continue;
            int v = k1.second;
            if (v == s || v == r) continue;
            for (const auto& [k2, dxs] : cur.diff) {
                if (k2.second != s) continue;
                int x = k2.first;
                if (x == s || x == r) continue;
                Element corr = A.scale(A.multiply(drv, dxs), -linv);
                if (corr.is_zero()) continue;
                auto key = std::make_pair(remap[x], remap[v]);
                auto it = next.diff.find(key);
                if (it == next.diff.end()) next.diff[key] = corr;
                else {
                    it->second = A.add(it->second, corr);
                    if (it->second.is_zero()) next.diff.erase(it);
                }
            }
        }
        cur = std::move(next);
    }
}

PerfectModule induct(const PerfectModule& m, std::shared_ptr<const Presentation> B) {
    const auto& A = *m.alg;
    std::vector<int> gen_map(A.gens().size());
    for (size_t g = 0; g < A.gens().size(); ++g) {
        const Generator& ga = A.gens()[g];
        int bi;
        try {
            bi = B->gen_index(ga.name);
        } catch (const EngineError&) {
            throw err_pre("NotAnEmbedding", "generator " + ga.name + " missing in target algebra");
        }
        const Generator& gb = B->gens()[bi];
        if (gb.src != ga.src || gb.tgt != ga.tgt || !(gb.deg == ga.deg))
            throw err_pre("NotAnEmbedding", "generator " + ga.name + " changes shape in target algebra");
        gen_map[g] = bi;
    }
    PerfectModule out{B, m.summands, {}};
    for (const auto& [k, e] : m.diff) {
        std::vector<Term> terms;
        for (const auto& t : e.terms) {
            Word w = t.word;
            for (auto& g : w.gens) g = gen_map[g];
            terms.push_back(Term{t.coeff, std::move(w)});
        }
        out.diff[k] = B->from_terms(std::move(terms));
    }
    return out;
}

PerfectModule collapse_module(const PerfectModule& m, int N,
                              std::shared_ptr<const Presentation> collapsed) {
    if (N < 2) throw err_pre("InvalidCollapse", "collapse requires N >= 2");
    PerfectModule out{collapsed, {}, {}};
    for (const auto& sm : m.summands)
        out.summands.push_back({sm.vertex, {sm.shift.c + sm.shift.b * N, 0}});
    for (const auto& [k, e] : m.diff) {
        std::vector<Term> terms(e.terms.begin(), e.terms.end());
        out.diff[k] = collapsed->from_terms(std::move(terms));
    }
    return out;
}

std::vector<HomCellItem> hom_cell_basis(const PerfectModule& M, const PerfectModule& N, Bidegree d) {
    if (M.alg.get() != N.alg.get()) throw err_pre("AlgebraMismatch", "hom between different algebras");
    const auto& A = *M.alg;
    std::vector<HomCellItem> items;
    for (int s = 0; s < M.size(); ++s)
        for (int t = 0; t < N.size(); ++t) {
            Bidegree need = M.summands[s].shift - N.summands[t].shift + d;
            const CellBasis& cb = A.cell(need);
            for (int i : cb.quotient) {
                const Word& w = cb.words[i];
                if (A.word_tgt(w) == M.summands[s].vertex && A.word_src(w) == N.summands[t].vertex)
                    items.push_back({s, t, w});
            }
        }
    return items;
}

namespace {

int item_index(const std::vector<HomCellItem>& items, int s, int t, const Word& w) {
    for (size_t i = 0; i < items.size(); ++i)
        if (items[i].s == s && items[i].t == t && items[i].w == w) return (int)i;
    return -1;
}

}  // namespace

ExactMatrix hom_cell_diff(const PerfectModule& M, const PerfectModule& N, Bidegree d) {
    const auto& A = *M.alg;
    Field fl = A.field();
    auto from = hom_cell_basis(M, N, d);
    auto to = hom_cell_basis(M, N, d + kDiffDegree);
    ExactMatrix mat(fl, (int)to.size(), (int)from.size());
    int n = d.c;
    for (size_t j = 0; j < from.size(); ++j) {
        const auto& it = from[j];
        Element w{{Term{Scalar::one(fl), it.w}}};
        auto put = [&](int t, int s, const Element& e) {
            if (e.is_zero()) return;
            for (const auto& term : e.terms) {
                int idx = item_index(to, s, t, term.word);
                if (idx < 0) throw err_pre("InternalError", "hom differential escaped its cell");
                mat.add_at(idx, (int)j, term.coeff);
            }
        };
        put(it.t, it.s, A.differentiate(w));
        int sgn_w = A.element_coh(w) % 2 == 0 ? 1 : -1;
        for (const auto& [nk, ne] : N.diff) {
            if (nk.second != it.t) continue;
            Element prod = A.multiply(w, ne);
            if (sgn_w < 0) prod = A.scale(prod, -Scalar::one(fl));
            put(nk.first, it.s, prod);
        }
        for (const auto& [mk, me] : M.diff) {
            if (mk.first != it.s) continue;
            Element prod = A.multiply(me, w);
            int sgn = ((n * (1 + A.element_coh(me))) % 2 == 0) ? -1 : 1;
            if (sgn < 0) prod = A.scale(prod, -Scalar::one(fl));
            put(it.t, mk.second, prod);
        }
    }
    return mat;
}

ModMorphism morphism_from_coords(const PerfectModule& M, const PerfectModule& N, Bidegree d,
                                 const std::vector<Scalar>& coords) {
    const auto& A = *M.alg;
    auto items = hom_cell_basis(M, N, d);
    if (coords.size() != items.size()) throw err_pre("ShapeMismatch", "coordinate length mismatch");
    ModMorphism f{M, N, d, {}};
    for (size_t i = 0; i < items.size(); ++i) {
        if (coords[i].is_zero()) continue;
        Element e{{Term{coords[i], items[i].w}}};
        auto key = std::make_pair(items[i].t, items[i].s);
        auto it = f.entries.find(key);
        if (it == f.entries.end()) f.entries[key] = e;
        else it->second = A.add(it->second, e);
    }
    return f;
}

namespace {

BidegreeTable hom_table_impl(const PerfectModule& M, const PerfectModule& N, const Window& w,
                             bool parallel) {
    std::vector<Bidegree> cells = w.cells();
    std::vector<int> dims(cells.size(), 0);
    parallel_for(
        (int)cells.size(),
        [&](int i) {
            Bidegree d = cells[i];
            ExactMatrix din = hom_cell_diff(M, N, d - kDiffDegree);
            ExactMatrix dout = hom_cell_diff(M, N, d);
            dims[i] = cohomology_dim(din, dout);
        },
        parallel);
    BidegreeTable t;
    t.window = w;
    for (size_t i = 0; i < cells.size(); ++i) t.set(cells[i], dims[i]);
    return t;
}

}  // namespace

BidegreeTable hom_table(const PerfectModule& M, const PerfectModule& N, const Window& w, bool parallel) {
    return hom_table_impl(M, N, w, parallel);
}

BidegreeTable hom_table_serial(const PerfectModule& M, const PerfectModule& N, const Window& w) {
    return hom_table_impl(M, N, w, false);
}

namespace {

struct TensorIndex {
    struct Item { int cs; Word w; int ms; };
    std::vector<Item> items;
    int find(int cs, const Word& w, int ms) const {
        for (size_t i = 0; i < items.size(); ++i)
            if (items[i].cs == cs && items[i].ms == ms && items[i].w == w) return (int)i;
        return -1;
    }
};

TensorIndex tensor_index(const ProjectiveBimoduleComplex& C, const PerfectModule& M) {
    TensorIndex ix;
    const auto& A = *M.alg;
    for (size_t cs = 0; cs < C.summands.size(); ++cs) {
        const auto& csm = C.summands[cs];
        for (int ms = 0; ms < M.size(); ++ms) {
            const CellBasis& cb = A.cell({0, 0});
            for (int i : cb.quotient) {
                const Word& w = cb.words[i];
                if (A.word_tgt(w) == csm.right_v && A.word_src(w) == M.summands[ms].vertex)
                    ix.items.push_back({(int)cs, w, ms});
            }
        }
    }
    return ix;
}

}  // namespace

PerfectModule bimodule_tensor(const ProjectiveBimoduleComplex& C, const PerfectModule& M) {
    const auto& A = *M.alg;
    Field fl = A.field();
    TensorIndex ix = tensor_index(C, M);
    PerfectModule out{M.alg, {}, {}};
    for (const auto& it : ix.items)
        out.summands.push_back(
            {C.summands[it.cs].left_v, M.summands[it.ms].shift + C.summands[it.cs].shift});
    for (size_t j = 0; j < ix.items.size(); ++j) {
        const auto& src = ix.items[j];
        // (i) C differential: gen_cs ⊗ w ⊗ g ↦ Σ l·gen_cr ⊗ (r'∘w) ⊗ g
        for (const auto& [key, pairs] : C.diff) {
            if (key.second != src.cs) continue;
            int cr = key.first;
            for (const auto& pr : pairs) {
                Element rw = A.multiply(pr.right, Element{{Term{Scalar::one(fl), src.w}}});
                for (const auto& tw : rw.terms) {
                    int tgt = ix.find(cr, tw.word, src.ms);
                    if (tgt < 0) throw err_pre("InternalError", "tensor differential escaped the index");
                    Element add = A.scale(pr.left, tw.coeff);
                    auto key2 = std::make_pair(tgt, (int)j);
                    auto it2 = out.diff.find(key2);
                    if (it2 == out.diff.end()) out.diff[key2] = add;
                    else {
                        it2->second = A.add(it2->second, add);
                        if (it2->second.is_zero()) out.diff.erase(it2);
                    }
                }
            }
        }
        // (ii) M differential with sign (-1)^{coh of the C generator}
        int sgn = C.summands[src.cs].shift.c % 2 == 0 ? 1 : -1;
        for (const auto& [mk, me] : M.diff) {
            if (mk.second != src.ms) continue;
            Element wm = A.multiply(Element{{Term{Scalar::one(fl), src.w}}}, me);
            for (const auto& tw : wm.terms) {
                int tgt = ix.find(src.cs, tw.word, mk.first);
                if (tgt < 0) throw err_pre("InternalError", "tensor differential escaped the index");
                Scalar c = sgn < 0 ? -tw.coeff : tw.coeff;
                Element add = A.scale(A.lazy_element(C.summands[src.cs].left_v), c);
                auto key2 = std::make_pair(tgt, (int)j);
                auto it2 = out.diff.find(key2);
                if (it2 == out.diff.end()) out.diff[key2] = add;
                else {
                    it2->second = A.add(it2->second, add);
                    if (it2->second.is_zero()) out.diff.erase(it2);
                }
            }
        }
    }
    return out;
}

ModMorphism bimodule_tensor_mor(const ProjectiveBimoduleComplex& C, const ModMorphism& f) {
    const auto& A = *f.from.alg;
    Field fl = A.field();
    PerfectModule src = bimodule_tensor(C, f.from);
    PerfectModule dst = bimodule_tensor(C, f.to);
    TensorIndex ixs = tensor_index(C, f.from);
    TensorIndex ixd = tensor_index(C, f.to);
    ModMorphism out{src, dst, f.deg, {}};
    int n = f.deg.c;
    for (size_t j = 0; j < ixs.items.size(); ++j) {
        const auto& it = ixs.items[j];
        int sgn = (n * C.summands[it.cs].shift.c) % 2 == 0 ? 1 : -1;
        for (const auto& [fk, fe] : f.entries) {
            if (fk.second != it.ms) continue;
            Element wm = A.multiply(Element{{Term{Scalar::one(fl), it.w}}}, fe);
            for (const auto& tw : wm.terms) {
                int tgt = ixd.find(it.cs, tw.word, fk.first);
                if (tgt < 0) throw err_pre("InternalError", "tensor morphism escaped the index");
                Scalar c = sgn < 0 ? -tw.coeff : tw.coeff;
                Element add = A.scale(A.lazy_element(C.summands[it.cs].left_v), c);
                auto key2 = std::make_pair(tgt, (int)j);
                auto it2 = out.entries.find(key2);
                if (it2 == out.entries.end()) out.entries[key2] = add;
                else {
                    it2->second = A.add(it2->second, add);
                    if (it2->second.is_zero()) out.entries.erase(it2);
                }
            }
        }
    }
    return out;
}

PerfectModule restrict_along_augmentation(const PerfectModule& R,
                                          std::shared_ptr<const Presentation> T,
                                          const ProjectiveBimoduleComplex& theta) {
    const auto& A = *R.alg;
    Field fl = A.field();
    PerfectModule M = induct(bimodule_tensor(theta, R), T);
    PerfectModule N = induct(R, T);
    // multiplication map: gen_cs ⊗ w ⊗ g_i ↦ (gen_T(cs) ∘ w) · g_i
    TensorIndex ix = tensor_index(theta, R);
    ModMorphism mu{M, N, {0, 0}, {}};
    for (size_t j = 0; j < ix.items.size(); ++j) {
        const auto& it = ix.items[j];
        int tg = T->gen_index(theta.summands[it.cs].gen_name);
        std::vector<int> gs;
        for (int g : it.w.gens) gs.push_back(T->gen_index(A.gens()[g].name));
        gs.push_back(tg);
        Word w{it.w.lazy() ? it.w.vertex : T->gens()[gs.front()].src, gs};
        Element e = T->from_terms({Term{Scalar::one(fl), w}});
        if (e.is_zero()) continue;
        auto key = std::make_pair(it.ms, (int)j);
        auto it2 = mu.entries.find(key);
        if (it2 == mu.entries.end()) mu.entries[key] = e;
        else it2->second = T->add(it2->second, e);
    }
    if (!morphism_closed(mu))
        throw err_pre("InternalError", "augmentation multiplication map is not closed");
    return cone(mu);
}

}  // namespace dbga
