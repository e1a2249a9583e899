#include "dbga/resolve.hpp"

#include <algorithm>

namespace dbga {

namespace {

// Glued finite-dimensional model of a direct sum of shifted projectives,
// remembering which summand each basis element belongs to.
struct FreeModel {
    FinDimModule mod;
    std::vector<int> owner;          // basis element -> summand position
    std::vector<Word> word;          // basis element -> word in the algebra
};

FreeModel glue_free(std::shared_ptr<const Presentation> alg, const std::vector<Summand>& sums) {
    Field f = alg->field();
    FreeModel out;
    out.mod.alg = alg;
    std::vector<FinDimModule> parts;
    std::vector<std::vector<Word>> words;
    for (const auto& sm : sums) {
        FinDimModule part = free_findim(alg, sm.vertex, sm.shift);
        // recover the word list in the same order free_findim enumerates
        std::vector<Word> ws;
        for (Bidegree cell : support_cells(*alg)) {
            const CellBasis& cb = alg->cell(cell);
            for (int i : cb.quotient)
                if (alg->word_src(cb.words[i]) == sm.vertex) ws.push_back(cb.words[i]);
        }
        if ((int)ws.size() != part.dim())
            throw err_pre("InternalError", "free model word list out of sync");
        parts.push_back(std::move(part));
        words.push_back(std::move(ws));
    }
    int total = 0;
    for (const auto& p : parts) total += p.dim();
    out.mod.act.assign(alg->gens().size(), ExactMatrix(f, total, total));
    out.mod.diff = ExactMatrix(f, total, total);
    int off = 0;
    for (size_t k = 0; k < parts.size(); ++k) {
        const auto& p = parts[k];
        for (int i = 0; i < p.dim(); ++i) {
            out.mod.vertex.push_back(p.vertex[i]);
            out.mod.deg.push_back(p.deg[i]);
            out.owner.push_back((int)k);
            out.word.push_back(words[k][i]);
        }
        for (size_t g = 0; g < alg->gens().size(); ++g)
            for (int i = 0; i < p.dim(); ++i)
                for (int j = 0; j < p.dim(); ++j)
                    if (!p.act[g].at(i, j).is_zero())
                        out.mod.act[g].set(off + i, off + j, p.act[g].at(i, j));
        for (int i = 0; i < p.dim(); ++i)
            for (int j = 0; j < p.dim(); ++j)
                if (!p.diff.at(i, j).is_zero()) out.mod.diff.set(off + i, off + j, p.diff.at(i, j));
        off += p.dim();
    }
    return out;
}

// Deterministic top representatives: block basis vectors independent of the
// radical span, chosen in index order.
struct TopClass {
    std::vector<Scalar> vec;  // in cur coordinates
    int vertex;
    Bidegree deg;
};

std::vector<TopClass> top_classes(const FinDimModule& cur) {
    Field f = cur.alg->field();
    int n = cur.dim();
    std::vector<std::vector<Scalar>> rad;
    for (size_t g = 0; g < cur.act.size(); ++g)
        for (int j = 0; j < n; ++j) {
            std::vector<Scalar> col(n, Scalar::zero(f));
            bool nz = false;
            for (int i = 0; i < n; ++i) {
                col[i] = cur.act[g].at(i, j);
                if (!col[i].is_zero()) nz = true;
            }
            if (nz) rad.push_back(std::move(col));
        }
    std::vector<TopClass> out;
    std::set<std::pair<std::pair<int, int>, int>> blocks;
    for (int i = 0; i < n; ++i) blocks.insert({{cur.deg[i].c, cur.deg[i].b}, cur.vertex[i]});
    for (auto& [dg, v] : blocks) {
        Bidegree d{dg.first, dg.second};
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (cur.deg[i] == d && cur.vertex[i] == v) idx.push_back(i);
        // columns of rad restricted to the block
        std::vector<std::vector<Scalar>> cols;
        for (const auto& r : rad) {
            std::vector<Scalar> c(idx.size(), Scalar::zero(f));
            bool nz = false;
            for (size_t i = 0; i < idx.size(); ++i) {
                c[i] = r[idx[i]];
                if (!c[i].is_zero()) nz = true;
            }
            if (nz) cols.push_back(std::move(c));
        }
        ExactMatrix acc(f, (int)idx.size(), (int)(cols.size() + idx.size()));
        int cc = 0;
        for (auto& c : cols) {
            for (size_t i = 0; i < c.size(); ++i) acc.set((int)i, cc, c[i]);
            ++cc;
        }
        int rank = acc.rank();
        for (size_t j = 0; j < idx.size(); ++j) {
            acc.set((int)j, cc, Scalar::one(f));
            int nr = acc.rank();
            if (nr > rank) {
                rank = nr;
                ++cc;
                TopClass t;
                t.vec.assign(n, Scalar::zero(f));
                t.vec[idx[j]] = Scalar::one(f);
                t.vertex = v;
                t.deg = d;
                out.push_back(std::move(t));
            } else {
                acc.set((int)j, cc, Scalar::zero(f));
            }
        }
    }
    return out;
}

std::vector<std::vector<Scalar>> solve_columns(Field f, const ExactMatrix& B,
                                               const std::vector<std::vector<Scalar>>& vs) {
    int rows = B.rows(), cols = B.cols();
    ExactMatrix aug(f, rows, cols + (int)vs.size());
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug.set(i, j, B.at(i, j));
        for (size_t k = 0; k < vs.size(); ++k) aug.set(i, cols + (int)k, vs[k][i]);
    }
    auto rr = aug.rref();
    for (int pc : rr.pivot_cols)
        if (pc >= cols) throw err_pre("InternalError", "vector outside span in resolution step");
    std::vector<std::vector<Scalar>> out(vs.size(), std::vector<Scalar>(cols, Scalar::zero(f)));
    for (size_t r = 0; r < rr.pivot_cols.size(); ++r)
        for (size_t k = 0; k < vs.size(); ++k)
            out[k][rr.pivot_cols[r]] = rr.mat.at((int)r, cols + (int)k);
    return out;
}

}  // namespace

PerfectModule minimal_resolution(std::shared_ptr<const Presentation> alg, const FinDimModule& F,
                                 const ZoneFn& zone, int step_cap) {
    if (F.has_differential())
        throw err_pre("UnsupportedType", "minimal_resolution expects a zero-differential module");
    Field f = alg->field();
    PerfectModule res{alg, {}, {}};
    FinDimModule cur = F;
    // embedding of cur into the previous free model (empty at step 0)
    std::vector<std::vector<Scalar>> cur_in_W;
    FreeModel W;
    std::vector<int> prev_res_index;  // previous layer summand -> res index

    for (int step = 0; step <= step_cap; ++step) {
        if (cur.dim() == 0) return res;
        // step 0 covers F in place; later steps sit one cohomological degree
        // below the kernel class they cover
        Bidegree drop = step == 0 ? Bidegree{0, 0} : kDiffDegree;
        auto tops = top_classes(cur);
        std::vector<TopClass> kept;
        for (auto& t : tops)
            if (zone(t.deg - drop)) kept.push_back(std::move(t));
        if (kept.empty()) return res;  // window-complete

        std::vector<Summand> new_sums;
        std::vector<int> new_res_index;
        for (const auto& t : kept) {
            new_res_index.push_back(res.size());
            res.summands.push_back({t.vertex, t.deg - drop});
            new_sums.push_back({t.vertex, t.deg - drop});
        }
        // differential entries from the new layer into the previous one
        if (step > 0) {
            for (size_t k = 0; k < kept.size(); ++k) {
                // kept[k].vec is in cur coordinates; express in W coordinates
                std::vector<Scalar> wv(W.mod.dim(), Scalar::zero(f));
                for (int c = 0; c < cur.dim(); ++c) {
                    if (kept[k].vec[c].is_zero()) continue;
                    for (int r = 0; r < W.mod.dim(); ++r)
                        wv[r] = wv[r] + kept[k].vec[c] * cur_in_W[c][r];
                }
                std::map<int, std::vector<Term>> per_summand;
                for (int r = 0; r < W.mod.dim(); ++r)
                    if (!wv[r].is_zero())
                        per_summand[W.owner[r]].push_back(Term{wv[r], W.word[r]});
                for (auto& [j, terms] : per_summand) {
                    Element e = alg->from_terms(std::move(terms));
                    if (!e.is_zero()) res.set_entry(prev_res_index[j], new_res_index[k], e);
                }
            }
        }
        // cover map and its kernel
        FreeModel Wn = glue_free(alg, new_sums);
        // column c of Phi: image of basis element c of Wn
        ExactMatrix phi(f, cur.dim(), Wn.mod.dim());
        for (int c = 0; c < Wn.mod.dim(); ++c) {
            ExactMatrix aw = cur.act_word(Wn.word[c]);  // action on cur
            const auto& rep = kept[Wn.owner[c]].vec;
            for (int i = 0; i < cur.dim(); ++i) {
                Scalar acc = Scalar::zero(f);
                for (int j = 0; j < cur.dim(); ++j)
                    if (!aw.at(i, j).is_zero() && !rep[j].is_zero()) acc = acc + aw.at(i, j) * rep[j];
                if (!acc.is_zero()) phi.set(i, c, acc);
            }
        }
        // kernel per (degree, vertex) block of Wn
        std::vector<std::vector<Scalar>> kvecs;
        std::vector<int> kvert;
        std::vector<Bidegree> kdeg;
        std::set<std::pair<std::pair<int, int>, int>> blocks;
        for (int i = 0; i < Wn.mod.dim(); ++i)
            blocks.insert({{Wn.mod.deg[i].c, Wn.mod.deg[i].b}, Wn.mod.vertex[i]});
        for (auto& [dg, v] : blocks) {
            Bidegree d{dg.first, dg.second};
            std::vector<int> idx;
            for (int i = 0; i < Wn.mod.dim(); ++i)
                if (Wn.mod.deg[i] == d && Wn.mod.vertex[i] == v) idx.push_back(i);
            ExactMatrix sub(f, cur.dim(), (int)idx.size());
            for (int r = 0; r < cur.dim(); ++r)
                for (size_t j = 0; j < idx.size(); ++j) sub.set(r, (int)j, phi.at(r, idx[j]));
            for (auto& kv : sub.kernel_basis()) {
                std::vector<Scalar> full(Wn.mod.dim(), Scalar::zero(f));
                for (size_t j = 0; j < idx.size(); ++j) full[idx[j]] = kv[j];
                kvecs.push_back(std::move(full));
                kvert.push_back(v);
                kdeg.push_back(d);
            }
        }
        // kernel as a module: actions solved against the kernel basis
        FinDimModule K;
        K.alg = alg;
        K.vertex = kvert;
        K.deg = kdeg;
        int m = (int)kvecs.size();
        ExactMatrix KB(f, Wn.mod.dim(), m);
        for (int c = 0; c < m; ++c)
            for (int r = 0; r < Wn.mod.dim(); ++r) KB.set(r, c, kvecs[c][r]);
        K.act.assign(alg->gens().size(), ExactMatrix(f, m, m));
        for (size_t g = 0; g < alg->gens().size(); ++g) {
            std::vector<std::vector<Scalar>> imgs;
            std::vector<int> cols;
            for (int c = 0; c < m; ++c) {
                std::vector<Scalar> img(Wn.mod.dim(), Scalar::zero(f));
                bool nz = false;
                for (int r = 0; r < Wn.mod.dim(); ++r) {
                    Scalar acc = Scalar::zero(f);
                    for (int j = 0; j < Wn.mod.dim(); ++j)
                        if (!Wn.mod.act[g].at(r, j).is_zero() && !kvecs[c][j].is_zero())
                            acc = acc + Wn.mod.act[g].at(r, j) * kvecs[c][j];
                    img[r] = acc;
                    if (!acc.is_zero()) nz = true;
                }
                if (nz) {
                    imgs.push_back(std::move(img));
                    cols.push_back(c);
                }
            }
            if (!imgs.empty()) {
                auto sols = solve_columns(f, KB, imgs);
                for (size_t k = 0; k < cols.size(); ++k)
                    for (int r = 0; r < m; ++r)
                        if (!sols[k][r].is_zero()) K.act[g].set(r, cols[k], sols[k][r]);
            }
        }
        K.diff = ExactMatrix(f, m, m);
        cur = std::move(K);
        cur_in_W = std::move(kvecs);
        W = std::move(Wn);
        prev_res_index = new_res_index;
    }
    throw err_cap("GlobalDimensionCapExceeded", "resolution did not terminate within the step cap");
}

PerfectModule projective_replacement(const FinDimModule& F, int step_cap) {
    for (const auto& g : F.alg->gens())
        if (!(g.deg == Bidegree{0, 0}))
            throw err_pre("UnsupportedType",
                          "projective_replacement requires an algebra concentrated in bidegree (0,0)");
    FinDimModule H = F.has_differential() ? cohomology_findim(F) : F;
    if (H.dim() == 0) return zero_module(F.alg);
    return minimal_resolution(F.alg, H, [](Bidegree) { return true; }, step_cap);
}

PerfectModule serre(const PerfectModule& M, const DualData& dual) {
    FinDimModule tw = nu_module(M, dual);
    if (tw.dim() == 0) return zero_module(M.alg);
    return projective_replacement(tw);
}

PerfectModule inverse_serre(const PerfectModule& M) {
    auto A = M.alg;
    auto inv = inverse_dualizing(A);
    return minimize(bimodule_tensor(inv, M));
}

namespace {

// Resolutions start at bidegree (0,0) and reach the needed summand range
// step by step, so the zone must contain the whole corridor from zero.
ZoneFn corridor_zone(int lo_c, int hi_c, int lo_b, int hi_b, int slack) {
    int lc = std::min(lo_c - slack, 0), hc = std::max(hi_c + slack, 0);
    int lb = std::min(lo_b, 0), hb = std::max(hi_b, 0);
    return [lc, hc, lb, hb](Bidegree s) {
        return s.c >= lc && s.c <= hc && s.b >= lb && s.b <= hb;
    };
}

}  // namespace

PerfectModule resolve_base_over_extension(const TrivialExtensionData& ext, const Window& w) {
    FinDimModule A0 = base_as_module(ext);
    int slack = (int)ext.ext->vertices().size() + 2;
    // hom cells sit at -sigma, one cohomological step of slack on both sides
    ZoneFn zone = corridor_zone(-w.cmax - 1, -w.cmin + 1, -w.amax, -w.amin, slack);
    return minimal_resolution(ext.ext, A0, zone);
}

BidegreeTable rhom_base_endo_table(const TrivialExtensionData& ext, const Window& w) {
    PerfectModule res = resolve_base_over_extension(ext, w);
    return hom_to_findim(res, base_as_module(ext), w);
}

BidegreeTable first_term_table(const TrivialExtensionData& ext, const Window& w) {
    auto opE = opposite(*ext.ext);
    FinDimModule Aop = base_as_module_op(ext, opE);
    Bidegree dd = ext.dual_deg();
    int slack = (int)ext.ext->vertices().size() + 2;
    // tensor cells sit at sigma + dual_deg
    ZoneFn zone = corridor_zone(w.cmin - dd.c - 1, w.cmax - dd.c + 1, w.amin - dd.b, w.amax - dd.b,
                                slack);
    PerfectModule res = minimal_resolution(opE, Aop, zone);
    // (right resolution of A) ⊗_E (dual part): per summand e_v E ⊗ Y = e_v·Y
    const auto& A = *ext.base;
    Field f = opE->field();
    struct Item { int s; int p; };
    auto basis = [&](Bidegree cell) {
        std::vector<Item> out;
        for (int s = 0; s < res.size(); ++s)
            for (size_t p = 0; p < ext.dual.paths.size(); ++p) {
                if (A.word_src(ext.dual.paths[p]) != res.summands[s].vertex) continue;
                if (res.summands[s].shift + dd == cell) out.push_back({s, (int)p});
            }
        return out;
    };
    // Left action of the E-element matching an opposite-algebra word: the
    // E-word is the reversal, so generators apply from the back.
    auto act_word_on_dual = [&](const Word& opw, int p) -> int {
        int cur = p;
        for (auto it = opw.gens.rbegin(); it != opw.gens.rend(); ++it) {
            int g = *it;
            if (g >= (int)A.gens().size()) return -1;  // dual generator acts by zero
            cur = ext.dual.left_act[g][cur];
            if (cur < 0) return -1;
        }
        return cur;
    };
    auto cell_matrix = [&](Bidegree from) {
        auto src = basis(from);
        auto dst = basis(from + kDiffDegree);
        ExactMatrix m(f, (int)dst.size(), (int)src.size());
        for (size_t j = 0; j < src.size(); ++j) {
            for (const auto& [k, e] : res.diff) {
                if (k.second != src[j].s) continue;
                for (const auto& t : e.terms) {
                    int q = t.word.lazy() ? src[j].p : act_word_on_dual(t.word, src[j].p);
                    if (q < 0) continue;
                    for (size_t i = 0; i < dst.size(); ++i)
                        if (dst[i].s == k.first && dst[i].p == q) m.add_at((int)i, (int)j, t.coeff);
                }
            }
        }
        return m;
    };
    BidegreeTable t;
    t.window = w;
    for (Bidegree d : w.cells()) {
        ExactMatrix din = cell_matrix(d - kDiffDegree);
        ExactMatrix dout = cell_matrix(d);
        t.set(d, cohomology_dim(din, dout));
    }
    return t;
}

PerfectModule psi_stabilize(const PerfectModule& M, std::shared_ptr<const Presentation> A,
                            const DualData& dual, const std::vector<PerfectModule>& panel,
                            const PsiOptions& opt) {
    auto tables = [&](const PerfectModule& R) {
        std::vector<BidegreeTable> out;
        for (const auto& p : panel) out.push_back(hom_table(R, p, opt.cmp_window));
        return out;
    };
    PerfectModule prev = zero_module(A);
    std::vector<BidegreeTable> prev_tabs;
    int agree = 0;
    for (int q = 0; q <= opt.qcap; ++q) {
        FinDimModule S = adams_slice(M, -q, A);
        PerfectModule R = S.dim() == 0 ? zero_module(A) : projective_replacement(S);
        // each Serre twist needs projective terms, so stay at the perfect level
        for (int i = 0; i < q; ++i)
            R = R.size() == 0 ? R : shift_module(serre(R, dual), {1, 0});
        auto tabs = tables(R);
        if (q > 0 && tabs.size() == prev_tabs.size()) {
            bool same = true;
            for (size_t i = 0; i < tabs.size(); ++i)
                if (!(tabs[i] == prev_tabs[i])) same = false;
            agree = same ? agree + 1 : 0;
            if (agree >= 2) return R;
        }
        prev = R;
        prev_tabs = std::move(tabs);
    }
    throw err_cap("StabilizationCapExceeded", "direct system did not stabilize within the cap");
}

}  // namespace dbga
