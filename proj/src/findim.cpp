#include "dbga/findim.hpp"
#include "dbga/parallel.hpp"

#include <algorithm>

namespace dbga {

void FinDimModule::validate() const {
    Field f = alg->field();
    int n = dim();
    if ((int)act.size() != (int)alg->gens().size())
        throw err_pre("ShapeMismatch", "one action matrix per generator required");
    for (size_t g = 0; g < act.size(); ++g) {
        const Generator& gen = alg->gens()[g];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (act[g].at(i, j).is_zero()) continue;
                if (vertex[j] != gen.src || vertex[i] != gen.tgt || !(deg[i] == deg[j] + gen.deg))
                    throw err_pre("ShapeMismatch", "action entry violates vertex or degree constraints");
            }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (diff.at(i, j).is_zero()) continue;
            if (vertex[i] != vertex[j] || !(deg[i] == deg[j] + kDiffDegree))
                throw err_pre("ShapeMismatch", "module differential violates constraints");
        }
    if (!(diff * diff).is_zero()) throw err_pre("DifferentialNotSquareZero", "module d^2 != 0");
    for (const auto& rel : alg->relations())
        if (!act_element(rel).is_zero())
            throw err_pre("ShapeMismatch", "relation acts nontrivially on module");
    // Leibniz: act(d(g)) = diff∘act(g) - (-1)^{|g|} act(g)∘diff
    for (size_t g = 0; g < act.size(); ++g) {
        ExactMatrix lhs = alg->differential((int)g).is_zero()
                              ? ExactMatrix(f, n, n)
                              : act_element(alg->differential((int)g));
        ExactMatrix rhs = diff * act[g];
        ExactMatrix ad = act[g] * diff;
        int sgn = alg->gens()[g].deg.c % 2 == 0 ? -1 : 1;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                rhs.add_at(i, j, sgn < 0 ? -ad.at(i, j) : ad.at(i, j));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (lhs.at(i, j) != rhs.at(i, j))
                    throw err_pre("ShapeMismatch", "action does not satisfy the Leibniz rule");
    }
}

ExactMatrix FinDimModule::act_word(const Word& w) const {
    Field f = alg->field();
    int n = dim();
    if (w.lazy()) {
        ExactMatrix m(f, n, n);
        for (int i = 0; i < n; ++i)
            if (vertex[i] == w.vertex) m.set(i, i, Scalar::one(f));
        return m;
    }
    ExactMatrix m = act[w.gens[0]];
    for (size_t k = 1; k < w.gens.size(); ++k) m = act[w.gens[k]] * m;
    return m;
}

ExactMatrix FinDimModule::act_element(const Element& e) const {
    Field f = alg->field();
    int n = dim();
    ExactMatrix m(f, n, n);
    for (const auto& t : e.terms) {
        ExactMatrix wm = act_word(t.word);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!wm.at(i, j).is_zero()) m.add_at(i, j, t.coeff * wm.at(i, j));
    }
    return m;
}

BidegreeTable FinDimModule::dimension_table(const Window& w) const {
    BidegreeTable t;
    t.window = w;
    for (int i = 0; i < dim(); ++i)
        if (w.contains(deg[i])) t.cells[deg[i]] += 1;
    return t;
}

FinDimModule simple_module(std::shared_ptr<const Presentation> alg, int v) {
    Field f = alg->field();
    FinDimModule m;
    m.alg = alg;
    m.vertex = {v};
    m.deg = {{0, 0}};
    m.act.assign(alg->gens().size(), ExactMatrix(f, 1, 1));
    m.diff = ExactMatrix(f, 1, 1);
    return m;
}

FinDimModule shift_findim(const FinDimModule& f, Bidegree d) {
    FinDimModule out = f;
    for (auto& b : out.deg) b = b - d;
    if (d.c % 2 != 0) {
        Field fl = f.alg->field();
        for (int i = 0; i < out.diff.rows(); ++i)
            for (int j = 0; j < out.diff.cols(); ++j)
                if (!out.diff.at(i, j).is_zero()) out.diff.set(i, j, -out.diff.at(i, j));
    }
    return out;
}

std::vector<Bidegree> support_cells(const Presentation& alg) {
    int width = std::max(alg.max_phi(), 1);
    std::vector<Bidegree> out;
    int level = 0;
    int empty_run = 0;
    const int kLevelCap = 200;
    while (level < kLevelCap) {
        auto sums = alg.special_degree_sums(level);
        bool any = false;
        for (Bidegree d : sums) {
            if (alg.phi_value(d) != level) continue;
            if (alg.cell_dim(d) > 0) {
                out.push_back(d);
                any = true;
            }
        }
        empty_run = any ? 0 : empty_run + 1;
        if (empty_run >= width + 1) return out;
        ++level;
    }
    throw err_pre("UnsupportedType", "algebra is not finite-dimensional");
}

FinDimModule free_findim(std::shared_ptr<const Presentation> alg, int v, Bidegree shift) {
    Field f = alg->field();
    FinDimModule m;
    m.alg = alg;
    struct Loc { Bidegree cell; int qpos; };
    std::vector<Loc> locs;
    for (Bidegree cell : support_cells(*alg)) {
        const CellBasis& cb = alg->cell(cell);
        for (size_t q = 0; q < cb.quotient.size(); ++q) {
            const Word& w = cb.words[cb.quotient[q]];
            if (alg->word_src(w) != v) continue;
            locs.push_back({cell, (int)q});
            m.vertex.push_back(alg->word_tgt(w));
            m.deg.push_back(cell + shift);
        }
    }
    int n = (int)m.vertex.size();
    auto find_loc = [&](Bidegree cell, int qpos) {
        for (int i = 0; i < n; ++i)
            if (locs[i].cell == cell && locs[i].qpos == qpos) return i;
        return -1;
    };
    m.act.assign(alg->gens().size(), ExactMatrix(f, n, n));
    for (size_t g = 0; g < alg->gens().size(); ++g) {
        for (int j = 0; j < n; ++j) {
            const CellBasis& cb = alg->cell(locs[j].cell);
            const Word& w = cb.words[cb.quotient[locs[j].qpos]];
            if (alg->word_tgt(w) != alg->gens()[g].src) continue;
            Element prod = alg->multiply(alg->gen_element((int)g),
                                         Element{{Term{Scalar::one(f), w}}});
            if (prod.is_zero()) continue;
            Bidegree tcell = locs[j].cell + alg->gens()[g].deg;
            auto coords = alg->coordinates(prod, tcell);
            for (size_t q = 0; q < coords.size(); ++q) {
                if (coords[q].is_zero()) continue;
                int i = find_loc(tcell, (int)q);
                if (i < 0) throw err_pre("InternalError", "free module action escaped its support");
                m.act[g].add_at(i, j, coords[q]);
            }
        }
    }
    m.diff = ExactMatrix(f, n, n);
    for (int j = 0; j < n; ++j) {
        const CellBasis& cb = alg->cell(locs[j].cell);
        const Word& w = cb.words[cb.quotient[locs[j].qpos]];
        Element dw = alg->differentiate(Element{{Term{Scalar::one(f), w}}});
        if (dw.is_zero()) continue;
        Bidegree tcell = locs[j].cell + kDiffDegree;
        auto coords = alg->coordinates(dw, tcell);
        for (size_t q = 0; q < coords.size(); ++q) {
            if (coords[q].is_zero()) continue;
            int i = find_loc(tcell, (int)q);
            if (i < 0) throw err_pre("InternalError", "free module differential escaped its support");
            m.diff.add_at(i, j, coords[q]);
        }
    }
    return m;
}

FinDimModule base_as_module(const TrivialExtensionData& ext) {
    const auto& A = *ext.base;
    auto E = ext.ext;
    Field f = E->field();
    FinDimModule m;
    m.alg = E;
    std::vector<Word> paths = ext.dual.paths;
    for (const auto& p : paths) {
        m.vertex.push_back(A.word_tgt(p));
        m.deg.push_back({0, 0});
    }
    int n = (int)paths.size();
    m.act.assign(E->gens().size(), ExactMatrix(f, n, n));
    for (size_t g = 0; g < A.gens().size(); ++g) {
        // arrows of A keep their name and index order in E
        int eg = E->gen_index(A.gens()[g].name);
        for (int j = 0; j < n; ++j) {
            if (A.word_tgt(paths[j]) != A.gens()[g].src) continue;
            Element prod = A.multiply(A.gen_element((int)g), Element{{Term{Scalar::one(f), paths[j]}}});
            for (const auto& t : prod.terms)
                for (int i = 0; i < n; ++i)
                    if (paths[i] == t.word) m.act[eg].add_at(i, j, t.coeff);
        }
    }
    m.diff = ExactMatrix(f, n, n);
    return m;
}

FinDimModule base_as_module_op(const TrivialExtensionData& ext,
                               std::shared_ptr<const Presentation> opE) {
    const auto& A = *ext.base;
    Field f = opE->field();
    FinDimModule m;
    m.alg = opE;
    std::vector<Word> paths = ext.dual.paths;
    for (const auto& p : paths) {
        m.vertex.push_back(A.word_src(p));  // right-module support
        m.deg.push_back({0, 0});
    }
    int n = (int)paths.size();
    m.act.assign(opE->gens().size(), ExactMatrix(f, n, n));
    for (size_t g = 0; g < A.gens().size(); ++g) {
        int eg = opE->gen_index(A.gens()[g].name);
        for (int j = 0; j < n; ++j) {
            // right action p·a = p ∘ a (a first)
            if (A.word_src(paths[j]) != A.gens()[g].tgt) continue;
            Element prod = A.multiply(Element{{Term{Scalar::one(f), paths[j]}}}, A.gen_element((int)g));
            for (const auto& t : prod.terms)
                for (int i = 0; i < n; ++i)
                    if (paths[i] == t.word) m.act[eg].add_at(i, j, t.coeff);
        }
    }
    m.diff = ExactMatrix(f, n, n);
    return m;
}

FinDimModule dual_part_module(const TrivialExtensionData& ext) {
    const auto& A = *ext.base;
    auto E = ext.ext;
    Field f = E->field();
    FinDimModule m;
    m.alg = E;
    int n = (int)ext.dual.paths.size();
    for (const auto& p : ext.dual.paths) {
        m.vertex.push_back(A.word_src(p));  // left support of the dual of p
        m.deg.push_back(ext.dual_deg());
    }
    m.act.assign(E->gens().size(), ExactMatrix(f, n, n));
    for (size_t g = 0; g < A.gens().size(); ++g) {
        int eg = E->gen_index(A.gens()[g].name);
        for (int j = 0; j < n; ++j) {
            int i = ext.dual.left_act[g][j];
            if (i >= 0) m.act[eg].set(i, j, Scalar::one(f));
        }
    }
    m.diff = ExactMatrix(f, n, n);
    return m;
}

ExactMatrix hom_findim_cell_diff(const PerfectModule& M, const FinDimModule& S, Bidegree d) {
    if (M.alg.get() != S.alg.get()) throw err_pre("AlgebraMismatch", "hom between different algebras");
    const auto& A = *M.alg;
    Field f = A.field();
    struct Item { int s; int k; };
    auto basis = [&](Bidegree dd) {
        std::vector<Item> out;
        for (int s = 0; s < M.size(); ++s)
            for (int k = 0; k < S.dim(); ++k)
                if (S.vertex[k] == M.summands[s].vertex && S.deg[k] == M.summands[s].shift + dd)
                    out.push_back({s, k});
        return out;
    };
    auto from = basis(d);
    auto to = basis(d + kDiffDegree);
    auto find_to = [&](int s, int k) {
        for (size_t i = 0; i < to.size(); ++i)
            if (to[i].s == s && to[i].k == k) return (int)i;
        return -1;
    };
    ExactMatrix mat(f, (int)to.size(), (int)from.size());
    int n = d.c;
    for (size_t j = 0; j < from.size(); ++j) {
        // d_S ∘ f
        for (int k2 = 0; k2 < S.dim(); ++k2) {
            const Scalar& c = S.diff.at(k2, from[j].k);
            if (c.is_zero()) continue;
            int i = find_to(from[j].s, k2);
            if (i < 0) throw err_pre("InternalError", "findim hom differential escaped its cell");
            mat.add_at(i, (int)j, c);
        }
        // -(-1)^{n(1+|D_M|)} act(D_M entry)
        for (const auto& [mk, me] : M.diff) {
            if (mk.first != from[j].s) continue;
            ExactMatrix am = S.act_element(me);
            int sgn = ((n * (1 + A.element_coh(me))) % 2 == 0) ? -1 : 1;
            for (int k2 = 0; k2 < S.dim(); ++k2) {
                Scalar c = am.at(k2, from[j].k);
                if (c.is_zero()) continue;
                int i = find_to(mk.second, k2);
                if (i < 0) throw err_pre("InternalError", "findim hom differential escaped its cell");
                mat.add_at(i, (int)j, sgn < 0 ? -c : c);
            }
        }
    }
    return mat;
}

BidegreeTable hom_to_findim(const PerfectModule& M, const FinDimModule& S, const Window& w,
                            bool parallel) {
    std::vector<Bidegree> cells = w.cells();
    std::vector<int> dims(cells.size(), 0);
    parallel_for(
        (int)cells.size(),
        [&](int i) {
            ExactMatrix din = hom_findim_cell_diff(M, S, cells[i] - kDiffDegree);
            ExactMatrix dout = hom_findim_cell_diff(M, S, cells[i]);
            dims[i] = cohomology_dim(din, dout);
        },
        parallel);
    BidegreeTable t;
    t.window = w;
    for (size_t i = 0; i < cells.size(); ++i) t.set(cells[i], dims[i]);
    return t;
}

std::pair<FinDimModule, FinDimModule> adams_truncate(const FinDimModule& f, int p) {
    Field fl = f.alg->field();
    int n = f.dim();
    std::vector<int> low, high;
    for (int i = 0; i < n; ++i) (f.deg[i].b <= p ? low : high).push_back(i);
    bool up = false, down = false;
    auto scan = [&](const ExactMatrix& m) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (m.at(i, j).is_zero()) continue;
                if (f.deg[j].b <= p && f.deg[i].b > p) up = true;
                if (f.deg[j].b > p && f.deg[i].b <= p) down = true;
            }
    };
    for (const auto& m : f.act) scan(m);
    scan(f.diff);
    if (up && down)
        throw err_pre("TruncationNotModule", "actions cross the Adams cut in both directions");
    auto restrict_to = [&](const std::vector<int>& idx) {
        FinDimModule out;
        out.alg = f.alg;
        for (int i : idx) {
            out.vertex.push_back(f.vertex[i]);
            out.deg.push_back(f.deg[i]);
        }
        int m = (int)idx.size();
        auto proj = [&](const ExactMatrix& big) {
            ExactMatrix small(fl, m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) small.set(i, j, big.at(idx[i], idx[j]));
            return small;
        };
        for (const auto& a : f.act) out.act.push_back(proj(a));
        out.diff = proj(f.diff);
        return out;
    };
    return {restrict_to(low), restrict_to(high)};
}

FinDimModule nu_module(const PerfectModule& M, const DualData& dual) {
    const auto& A = *M.alg;
    Field f = A.field();
    FinDimModule out;
    out.alg = M.alg;
    struct Item { int s; int p; };
    std::vector<Item> items;
    for (int s = 0; s < M.size(); ++s)
        for (size_t p = 0; p < dual.paths.size(); ++p)
            if (A.word_tgt(dual.paths[p]) == M.summands[s].vertex) {
                items.push_back({s, (int)p});
                out.vertex.push_back(A.word_src(dual.paths[p]));
                out.deg.push_back(M.summands[s].shift);
            }
    int n = (int)items.size();
    auto find_item = [&](int s, int p) {
        for (int i = 0; i < n; ++i)
            if (items[i].s == s && items[i].p == p) return i;
        return -1;
    };
    out.act.assign(A.gens().size(), ExactMatrix(f, n, n));
    for (size_t g = 0; g < A.gens().size(); ++g)
        for (int j = 0; j < n; ++j) {
            int q = dual.left_act[g][items[j].p];
            if (q < 0) continue;
            int i = find_item(items[j].s, q);
            if (i >= 0) out.act[g].set(i, j, Scalar::one(f));
        }
    out.diff = ExactMatrix(f, n, n);
    // nu of the map x ↦ x·m : duals pull back along left multiplication by m
    for (const auto& [mk, me] : M.diff) {
        auto [r, s] = mk;
        for (const auto& t : me.terms) {
            for (int j = 0; j < n; ++j) {
                if (items[j].s != s) continue;
                const Word& x = dual.paths[items[j].p];
                const Word& mw = t.word;
                // y with m ∘ y = x, i.e. x ends with mw in application order
                size_t lm = mw.gens.size();
                if (x.gens.size() < lm) continue;
                bool suffix = true;
                for (size_t k = 0; k < lm; ++k)
                    if (x.gens[x.gens.size() - lm + k] != mw.gens[k]) suffix = false;
                if (!suffix) continue;
                Word y;
                y.gens.assign(x.gens.begin(), x.gens.end() - lm);
                if (y.gens.empty())
                    y.vertex = mw.lazy() ? x.vertex : A.gens()[mw.gens.front()].src;
                else
                    y.vertex = x.vertex;
                int q = dual.path_index(y);
                if (q < 0) continue;
                int i = find_item(r, q);
                if (i < 0) throw err_pre("InternalError", "nu differential escaped the index");
                out.diff.add_at(i, j, t.coeff);
            }
        }
    }
    return out;
}

FinDimModule nu_findim(const FinDimModule& F, const DualData& dual) {
    // DA ⊗_A F: vertex-matched pairs p^ ⊗ x modulo (p^·a) ⊗ x = p^ ⊗ (a·x).
    const auto& A = *F.alg;
    Field f = A.field();
    struct Item { int p; int k; };
    std::vector<Item> items;
    for (size_t p = 0; p < dual.paths.size(); ++p)
        for (int k = 0; k < F.dim(); ++k)
            if (A.word_tgt(dual.paths[p]) == F.vertex[k]) items.push_back({(int)p, k});
    int n = (int)items.size();
    auto find_item = [&](int p, int k) {
        for (int i = 0; i < n; ++i)
            if (items[i].p == p && items[i].k == k) return i;
        return -1;
    };
    // middle-action relations
    std::vector<std::vector<Scalar>> rels;
    for (size_t a = 0; a < A.gens().size(); ++a) {
        const Generator& ga = A.gens()[a];
        for (size_t p = 0; p < dual.paths.size(); ++p) {
            if (A.word_tgt(dual.paths[p]) != ga.tgt) continue;
            for (int k = 0; k < F.dim(); ++k) {
                if (F.vertex[k] != ga.src) continue;
                std::vector<Scalar> row(n, Scalar::zero(f));
                bool nz = false;
                int q = dual.right_act[a][p];
                if (q >= 0) {
                    int i = find_item(q, k);
                    if (i < 0) throw err_pre("InternalError", "nu relation escaped the index");
                    row[i] = row[i] + Scalar::one(f);
                    nz = true;
                }
                for (int k2 = 0; k2 < F.dim(); ++k2) {
                    const Scalar& c = F.act[a].at(k2, k);
                    if (c.is_zero()) continue;
                    int i = find_item((int)p, k2);
                    if (i < 0) throw err_pre("InternalError", "nu relation escaped the index");
                    row[i] = row[i] - c;
                    nz = true;
                }
                if (nz) rels.push_back(std::move(row));
            }
        }
    }
    ExactMatrix rmat(f, (int)rels.size(), n);
    for (size_t r = 0; r < rels.size(); ++r)
        for (int c = 0; c < n; ++c)
            if (!rels[r][c].is_zero()) rmat.set((int)r, c, rels[r][c]);
    auto rr = rmat.rref();
    std::vector<bool> pivot(n, false);
    for (int pc : rr.pivot_cols) pivot[pc] = true;
    std::vector<int> rep;       // quotient basis -> raw index
    std::vector<int> raw2q(n, -1);
    for (int i = 0; i < n; ++i)
        if (!pivot[i]) {
            raw2q[i] = (int)rep.size();
            rep.push_back(i);
        }
    auto reduce = [&](std::vector<Scalar> v) {
        for (size_t r = 0; r < rr.pivot_cols.size(); ++r) {
            int j = rr.pivot_cols[r];
            if (v[j].is_zero()) continue;
            Scalar fct = v[j];
            for (int c = 0; c < n; ++c) {
                const Scalar& x = rr.mat.at((int)r, c);
                if (!x.is_zero()) v[c] = v[c] - fct * x;
            }
        }
        return v;
    };
    int m = (int)rep.size();
    FinDimModule out;
    out.alg = F.alg;
    for (int i : rep) {
        out.vertex.push_back(A.word_src(dual.paths[items[i].p]));
        out.deg.push_back(F.deg[items[i].k]);
    }
    out.act.assign(A.gens().size(), ExactMatrix(f, m, m));
    for (size_t g = 0; g < A.gens().size(); ++g)
        for (int j = 0; j < m; ++j) {
            int q = dual.left_act[g][items[rep[j]].p];
            if (q < 0) continue;
            int i = find_item(q, items[rep[j]].k);
            if (i < 0) continue;
            std::vector<Scalar> v(n, Scalar::zero(f));
            v[i] = Scalar::one(f);
            v = reduce(std::move(v));
            for (int c = 0; c < n; ++c)
                if (!v[c].is_zero()) out.act[g].add_at(raw2q[c], j, v[c]);
        }
    out.diff = ExactMatrix(f, m, m);
    for (int j = 0; j < m; ++j) {
        std::vector<Scalar> v(n, Scalar::zero(f));
        bool nz = false;
        for (int k2 = 0; k2 < F.dim(); ++k2) {
            const Scalar& c = F.diff.at(k2, items[rep[j]].k);
            if (c.is_zero()) continue;
            int i = find_item(items[rep[j]].p, k2);
            if (i < 0) throw err_pre("InternalError", "nu differential escaped the index");
            v[i] = v[i] + c;
            nz = true;
        }
        if (!nz) continue;
        v = reduce(std::move(v));
        for (int c = 0; c < n; ++c)
            if (!v[c].is_zero()) out.diff.add_at(raw2q[c], j, v[c]);
    }
    return out;
}

FinDimModule adams_slice(const PerfectModule& M, int q, std::shared_ptr<const Presentation> A) {
    const auto& T = *M.alg;
    Field f = T.field();
    FinDimModule out;
    out.alg = A;
    struct Item { int s; Word w; };
    std::vector<Item> items;
    // Cells of T with fixed Adams degree are finite exactly when phi is the
    // Adams-negative functional (completions of path algebras).
    if (T.phi_value({0, -1}) != 1)
        throw err_pre("UnsupportedType", "adams_slice requires an Adams-negative completion");
    for (int s = 0; s < M.size(); ++s) {
        int need_b = q - M.summands[s].shift.b;
        if (need_b > 0) continue;
        for (Bidegree cand : T.special_degree_sums(-need_b)) {
            if (cand.b != need_b) continue;
            const CellBasis& cb = T.cell(cand);
            for (int i : cb.quotient) {
                const Word& w = cb.words[i];
                if (T.word_src(w) == M.summands[s].vertex) items.push_back({s, w});
            }
        }
    }
    int n = (int)items.size();
    for (const auto& it : items) {
        out.vertex.push_back(T.word_tgt(it.w));
        out.deg.push_back({M.summands[it.s].shift.c + T.word_deg(it.w).c, 0});
    }
    auto find_item = [&](int s, const Word& w) {
        for (int i = 0; i < n; ++i)
            if (items[i].s == s && items[i].w == w) return i;
        return -1;
    };
    out.act.assign(A->gens().size(), ExactMatrix(f, n, n));
    for (size_t g = 0; g < A->gens().size(); ++g) {
        int tg = T.gen_index(A->gens()[g].name);
        for (int j = 0; j < n; ++j) {
            if (T.word_tgt(items[j].w) != T.gens()[tg].src) continue;
            Element prod = T.multiply(T.gen_element(tg), Element{{Term{Scalar::one(f), items[j].w}}});
            for (const auto& t : prod.terms) {
                int i = find_item(items[j].s, t.word);
                if (i < 0) throw err_pre("InternalError", "slice action escaped the slice");
                out.act[g].add_at(i, j, t.coeff);
            }
        }
    }
    out.diff = ExactMatrix(f, n, n);
    for (int j = 0; j < n; ++j) {
        const auto& it = items[j];
        Element w{{Term{Scalar::one(f), it.w}}};
        Element dw = T.differentiate(w);
        for (const auto& t : dw.terms) {
            int i = find_item(it.s, t.word);
            if (i < 0) throw err_pre("InternalError", "slice differential escaped the slice");
            out.diff.add_at(i, j, t.coeff);
        }
        int sgn = T.element_coh(w) % 2 == 0 ? 1 : -1;
        for (const auto& [mk, me] : M.diff) {
            if (mk.second != it.s) continue;
            Element prod = T.multiply(w, me);
            for (const auto& t : prod.terms) {
                int i = find_item(mk.first, t.word);
                if (i < 0) throw err_pre("InternalError", "slice differential escaped the slice");
                out.diff.add_at(i, j, sgn < 0 ? -t.coeff : t.coeff);
            }
        }
    }
    return out;
}

namespace {

std::vector<std::vector<Scalar>> column_span_solve(Field f, const ExactMatrix& B,
                                                   const std::vector<std::vector<Scalar>>& vs) {
    // Solve B x = v for each v; throws if inconsistent.
    int rows = B.rows(), cols = B.cols();
    ExactMatrix aug(f, rows, cols + (int)vs.size());
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug.set(i, j, B.at(i, j));
        for (size_t k = 0; k < vs.size(); ++k) aug.set(i, cols + (int)k, vs[k][i]);
    }
    auto rr = aug.rref();
    for (int pc : rr.pivot_cols)
        if (pc >= cols) throw err_pre("InternalError", "vector outside column span");
    std::vector<std::vector<Scalar>> out(vs.size(), std::vector<Scalar>(cols, Scalar::zero(f)));
    for (size_t r = 0; r < rr.pivot_cols.size(); ++r) {
        int pc = rr.pivot_cols[r];
        for (size_t k = 0; k < vs.size(); ++k) out[k][pc] = rr.mat.at((int)r, cols + (int)k);
    }
    return out;
}

}  // namespace

FinDimModule cohomology_findim(const FinDimModule& F) {
    Field f = F.alg->field();
    if (!F.alg->relations().empty())
        throw err_pre("UnsupportedType", "cohomology splitting requires a hereditary path algebra");
    int n = F.dim();
    // representatives of ker/im per (bidegree, vertex) block
    std::vector<std::vector<Scalar>> reps;          // vectors in F coordinates
    std::vector<int> rep_vertex;
    std::vector<Bidegree> rep_deg;
    std::set<std::pair<std::pair<int, int>, int>> blocks;
    for (int i = 0; i < n; ++i) blocks.insert({{F.deg[i].c, F.deg[i].b}, F.vertex[i]});
    // ker and im as global column collections for reduction
    std::vector<std::vector<Scalar>> all_basis;
    for (auto& [dg, v] : blocks) {
        Bidegree d{dg.first, dg.second};
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (F.deg[i] == d && F.vertex[i] == v) idx.push_back(i);
        // restriction of diff to the block, mapping into the (d+1) block
        std::vector<int> tgt;
        for (int i = 0; i < n; ++i)
            if (F.deg[i] == d + kDiffDegree && F.vertex[i] == v) tgt.push_back(i);
        std::vector<int> src_prev;
        for (int i = 0; i < n; ++i)
            if (F.deg[i] == d - kDiffDegree && F.vertex[i] == v) src_prev.push_back(i);
        ExactMatrix dout(f, (int)tgt.size(), (int)idx.size());
        for (size_t i = 0; i < tgt.size(); ++i)
            for (size_t j = 0; j < idx.size(); ++j) dout.set((int)i, (int)j, F.diff.at(tgt[i], idx[j]));
        ExactMatrix din(f, (int)idx.size(), (int)src_prev.size());
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = 0; j < src_prev.size(); ++j)
                din.set((int)i, (int)j, F.diff.at(idx[i], src_prev[j]));
        auto ker = dout.kernel_basis();
        // image columns
        std::vector<std::vector<Scalar>> img;
        auto rr = din.rref();
        // use din columns spanning the image: all columns, reduce later
        for (int j = 0; j < din.cols(); ++j) {
            std::vector<Scalar> col((size_t)idx.size(), Scalar::zero(f));
            bool nz = false;
            for (size_t i = 0; i < idx.size(); ++i) {
                col[i] = din.at((int)i, j);
                if (!col[i].is_zero()) nz = true;
            }
            if (nz) img.push_back(std::move(col));
        }
        // pick ker vectors independent modulo the image: incremental rank
        ExactMatrix acc(f, (int)idx.size(), (int)(img.size() + ker.size()));
        int cc = 0;
        for (auto& c : img) {
            for (size_t i = 0; i < c.size(); ++i) acc.set((int)i, cc, c[i]);
            ++cc;
        }
        int base_rank = acc.rank();
        std::vector<std::vector<Scalar>> chosen;
        for (auto& kv : ker) {
            for (size_t i = 0; i < kv.size(); ++i) acc.set((int)i, cc, kv[i]);
            ++cc;
            if (acc.rank() > base_rank + (int)chosen.size()) chosen.push_back(kv);
            else {
                for (size_t i = 0; i < kv.size(); ++i) acc.set((int)i, cc - 1, Scalar::zero(f));
                --cc;
            }
        }
        for (auto& kv : chosen) {
            std::vector<Scalar> full(n, Scalar::zero(f));
            for (size_t i = 0; i < idx.size(); ++i) full[idx[i]] = kv[i];
            reps.push_back(std::move(full));
            rep_vertex.push_back(v);
            rep_deg.push_back(d);
        }
        (void)rr;
    }
    int m = (int)reps.size();
    FinDimModule out;
    out.alg = F.alg;
    out.vertex = rep_vertex;
    out.deg = rep_deg;
    out.act.assign(F.alg->gens().size(), ExactMatrix(f, m, m));
    out.diff = ExactMatrix(f, m, m);
    // induced action: act on representatives, solve against [reps | im | ker-complement...]
    for (size_t g = 0; g < F.alg->gens().size(); ++g) {
        for (int j = 0; j < m; ++j) {
            // apply action
            std::vector<Scalar> img_v(n, Scalar::zero(f));
            for (int c = 0; c < n; ++c) {
                if (reps[j][c].is_zero()) continue;
                for (int r = 0; r < n; ++r) {
                    const Scalar& a = F.act[g].at(r, c);
                    if (!a.is_zero()) img_v[r] = img_v[r] + a * reps[j][c];
                }
            }
            bool nz = false;
            for (auto& s : img_v)
                if (!s.is_zero()) nz = true;
            if (!nz) continue;
            // express as rep-combination + boundary: solve [reps diff] x = v
            ExactMatrix B(f, n, m + n);
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < m; ++c) B.set(r, c, reps[c][r]);
                for (int c = 0; c < n; ++c) B.set(r, m + c, F.diff.at(r, c));
            }
            auto sol = column_span_solve(f, B, {img_v});
            for (int r = 0; r < m; ++r)
                if (!sol[0][r].is_zero()) out.act[g].add_at(r, j, sol[0][r]);
        }
    }
    return out;
}

}  // namespace dbga
