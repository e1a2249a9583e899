#include "dbga/verify.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace dbga {

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                     t0)
            .count();
    }
};

std::string window_str(const Window& w) {
    std::ostringstream s;
    s << "[" << w.cmin << "," << w.cmax << "]x[" << w.amin << "," << w.amax << "]";
    return s.str();
}

void fill_boundary(CheckReport& r, const Window& w) {
    for (int b = w.amin; b <= w.amax; ++b) {
        r.excluded_boundary.push_back({w.cmin, b});
        r.excluded_boundary.push_back({w.cmax, b});
    }
}

bool table_zero_interior(const BidegreeTable& t) {
    for (auto& [d, n] : t.cells)
        if (n != 0 && !t.window.on_boundary(d)) return false;
    return true;
}

}  // namespace

std::vector<std::string> check_names() {
    return {"iota-ff", "rkd", "sg", "orthogonality", "torsion-pairs", "collapse", "cluster"};
}

CheckReport check_iota_ff(std::shared_ptr<const Presentation> A, const VerifyOptions& opt) {
    Timer timer;
    CheckReport r;
    r.check = "iota-ff";
    r.inputs["quiver"] = A->name;
    r.inputs["window"] = window_str(opt.t_window);
    const Window& w = opt.t_window;
    auto T = cy_completion(A, CompletionMode::BigradedX);
    PerfectModule F = free_module(T);
    r.computed = hom_table(F, F, w);
    // expected: H^*(A) on the Adams-0 row, algebra cohomology route elsewhere
    BidegreeTable route = algebra_cohomology(*T, w);
    r.expected.window = w;
    int dimA = A->cell_dim({0, 0});
    for (auto& [d, n] : route.cells)
        if (d.b != 0) r.expected.set(d, n);
    if (w.contains({0, 0})) r.expected.set({0, 0}, dimA);
    r.assert_that("adams-0 row equals H^*(A)",
                  r.computed.adams_row(0).equal_interior(r.expected.adams_row(0)));
    r.assert_that("other rows match the algebra-cohomology route",
                  r.computed.equal_interior(route) || r.computed.equal_interior(r.expected));
    fill_boundary(r, w);
    r.match = r.computed.equal_interior(r.expected) && r.all_assertions();
    r.runtime_ms = timer.ms();
    return r;
}

CheckReport check_rkd(std::shared_ptr<const Presentation> A, const VerifyOptions& opt) {
    Timer timer;
    CheckReport r;
    r.check = "rkd";
    r.inputs["quiver"] = A->name;
    r.inputs["window"] = window_str(opt.e_window);
    const Window& w = opt.e_window;
    auto T = cy_completion(A, CompletionMode::BigradedX);
    auto theta = cy_theta(A);
    PerfectModule rhoA = minimize(restrict_along_augmentation(free_module(A), T, theta));
    auto ext = trivial_extension(A, CompletionMode::BigradedX);
    r.computed = hom_table(rhoA, rhoA, w);
    // structural dimensions of the trivial extension: the base at (0,0) and
    // the dual part at its shift
    r.expected.window = w;
    int dA = A->cell_dim({0, 0});
    if (w.contains({0, 0})) r.expected.set({0, 0}, dA);
    if (w.contains(ext.dual_deg())) r.expected.set(ext.dual_deg(), dA);
    r.assert_that("endomorphism table equals the trivial extension table",
                  r.computed.equal_interior(r.expected));
    // homs into the free module give the dual part
    BidegreeTable against_T = hom_table(rhoA, free_module(T), w);
    BidegreeTable dual_expected;
    dual_expected.window = w;
    if (w.contains({0, 1})) dual_expected.set({0, 1}, A->cell_dim({0, 0}));
    r.assert_that("hom into T equals the shifted dual part",
                  against_T.equal_interior(dual_expected));
    fill_boundary(r, w);
    r.match = r.all_assertions();
    r.runtime_ms = timer.ms();
    return r;
}

CheckReport check_sg(std::shared_ptr<const Presentation> A, const VerifyOptions& opt) {
    Timer timer;
    CheckReport r;
    r.check = "sg";
    r.inputs["quiver"] = A->name;
    // widen the Adams range so the Koszul-dual tail is visible
    Window w(opt.e_window.cmin, opt.e_window.cmax, -4, opt.e_window.amax);
    r.inputs["window"] = window_str(w);
    auto ext = trivial_extension(A, CompletionMode::BigradedX);
    BidegreeTable rhom = rhom_base_endo_table(ext, w);
    int dimA = A->cell_dim({0, 0});
    // (a) Adams-0 part is H^*(A)
    BidegreeTable adams0_expected;
    adams0_expected.window = w;
    if (w.contains({0, 0})) adams0_expected.set({0, 0}, dimA);
    r.computed = rhom.adams_row(0);
    r.expected = adams0_expected;
    r.assert_that("adams-0 part of RHom_E(A,A) equals H^*(A)",
                  r.computed.equal_interior(adams0_expected));
    // (b) the triangle's first term has no Adams-0 part
    BidegreeTable first = first_term_table(ext, w);
    r.assert_that("first term vanishes in Adams degree 0",
                  table_zero_interior(first.adams_row(0)));
    // (c) the remaining part matches the completion-cohomology route
    auto T = cy_completion(A, CompletionMode::BigradedX);
    BidegreeTable tail_route = algebra_cohomology(*T, w);
    bool tail_ok = true;
    for (int c = w.cmin + 1; c < w.cmax; ++c)
        for (int b = w.amin; b <= w.amax; ++b)
            if (b != 0 && rhom.at({c, b}) != tail_route.at({c, b})) tail_ok = false;
    r.assert_that("nonzero-Adams part matches the completion cohomology", tail_ok);
    // (d) first term is the tail reflected through the duality mirror
    bool mirror_ok = true;
    for (int c = w.cmin + 1; c < w.cmax; ++c)
        for (int b = w.amin; b <= w.amax; ++b) {
            if (b == 0) continue;
            Bidegree m{-c, 1 - b};
            if (!w.interior(m)) continue;
            if (first.at({c, b}) != rhom.at(m)) mirror_ok = false;
        }
    r.assert_that("first term mirrors the Koszul tail", mirror_ok);
    fill_boundary(r, w);
    r.match = r.all_assertions();
    r.runtime_ms = timer.ms();
    return r;
}

CheckReport check_orthogonality(std::shared_ptr<const Presentation> A, const VerifyOptions& opt) {
    Timer timer;
    CheckReport r;
    r.check = "orthogonality";
    r.inputs["quiver"] = A->name;
    r.inputs["seed"] = std::to_string(opt.seed);
    auto T = cy_completion(A, CompletionMode::BigradedX);
    auto theta = cy_theta(A);
    int n = (int)A->vertices().size();
    Window grid(-2, 2, -2, 2);
    r.inputs["window"] = window_str(grid);
    // hom(P_i, S_j) tables: cell (a,b) is Hom(P_i[-a-bX], S_j)
    BidegreeTable agg;
    agg.window = grid;
    bool pairs_ok = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            BidegreeTable t = hom_to_findim(projective_summand(T, i), simple_module(T, j), grid);
            for (auto& [d, v] : t.cells) agg.cells[d] += v;
            for (int c = grid.cmin; c <= grid.cmax; ++c)
                for (int b = grid.amin; b <= grid.amax; ++b) {
                    int want = (i == j && c == 0 && b == 0) ? 1 : 0;
                    if (t.at({c, b}) != want) pairs_ok = false;
                }
        }
    r.computed = agg;
    r.expected.window = grid;
    r.expected.set({0, 0}, n);
    r.assert_that("hom(P_i[a+bX], S_j) vanishes unless i=j, a=b=0", pairs_ok);
    // X-Calabi-Yau duality on sampled cells: Hom(S_j, Z) vs D Hom(Z, S_j)
    std::mt19937_64 rng(opt.seed);
    std::vector<PerfectModule> zpool;
    zpool.push_back(free_module(T));
    zpool.push_back(minimize(restrict_along_augmentation(free_module(A), T, theta)));
    for (int v = 0; v < n; ++v)
        zpool.push_back(shift_module(projective_summand(T, v), {(int)(rng() % 3) - 1, -(int)(rng() % 2)}));
    std::vector<PerfectModule> sreps;
    for (int j = 0; j < n; ++j)
        sreps.push_back(
            minimize(restrict_along_augmentation(projective_replacement(simple_module(A, j)), T, theta)));
    bool duality_ok = true;
    std::uniform_int_distribution<int> cpick(-2, 2), bpick(-2, 0);
    for (int s = 0; s < opt.samples; ++s) {
        const PerfectModule& Z = zpool[rng() % zpool.size()];
        const PerfectModule& S = sreps[rng() % sreps.size()];
        Bidegree cell{cpick(rng), bpick(rng)};
        Bidegree mirror{-cell.c, 1 - cell.b};
        int lhs = hom_table(S, Z, Window(cell.c - 1, cell.c + 1, cell.b, cell.b)).at(cell);
        int rhs = hom_table(Z, S, Window(mirror.c - 1, mirror.c + 1, mirror.b, mirror.b)).at(mirror);
        if (lhs != rhs) duality_ok = false;
    }
    r.assert_that("X-Calabi-Yau duality dimension equality on samples", duality_ok);
    fill_boundary(r, grid);
    r.match = r.computed.equal_interior(r.expected) && r.all_assertions();
    r.runtime_ms = timer.ms();
    return r;
}

CheckReport check_torsion_pairs(std::shared_ptr<const Presentation> A, const VerifyOptions& opt) {
    Timer timer;
    CheckReport r;
    r.check = "torsion-pairs";
    r.inputs["quiver"] = A->name;
    r.inputs["seed"] = std::to_string(opt.seed);
    Window w(-4, 2, -3, 3);
    r.inputs["window"] = window_str(w);
    auto T = cy_completion(A, CompletionMode::BigradedX);
    auto theta = cy_theta(A);
    int n = (int)A->vertices().size();
    // orthogonality half: Hom(P_i[nonnegative Adams], S_j[negative Adams]) = 0
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> cpick(-2, 2), bpos(0, 2), bneg(-3, -1);
    bool proj_ok = true;
    for (int s = 0; s < opt.samples; ++s) {
        int i = (int)(rng() % n), j = (int)(rng() % n);
        Bidegree sp{cpick(rng), bpos(rng)};
        Bidegree ss{cpick(rng), bneg(rng)};
        BidegreeTable t = hom_to_findim(shift_module(projective_summand(T, i), sp),
                                        shift_findim(simple_module(T, j), ss), Window(-1, 1, 0, 0));
        if (t.at({0, 0}) != 0) proj_ok = false;
    }
    r.assert_that("hom from nonnegative projective shifts to negative simple shifts vanishes",
                  proj_ok);
    // stable t-structure half: negative-Adams hom cells between simple classes vanish
    std::vector<PerfectModule> sreps;
    for (int j = 0; j < n; ++j)
        sreps.push_back(
            minimize(restrict_along_augmentation(projective_replacement(simple_module(A, j)), T, theta)));
    bool simple_ok = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            BidegreeTable t = hom_table(sreps[i], sreps[j], Window(-3, 3, -3, -1));
            if (!table_zero_interior(t)) simple_ok = false;
        }
    r.assert_that("negative-Adams homs between simple classes vanish", simple_ok);
    // decomposition at dimension level: dims T = dims (Theta ⊗ T) + dims A
    PerfectModule thetaT = induct(bimodule_tensor(theta, free_module(A)), T);
    r.computed = free_module(T).dimension_table(w);
    BidegreeTable part = thetaT.dimension_table(w);
    r.expected.window = w;
    for (auto& [d, v] : part.cells) r.expected.cells[d] += v;
    BidegreeTable adims = A->dimension_table(Window(w.cmin, w.cmax, 0, 0));
    for (auto& [d, v] : adims.cells) r.expected.cells[d] += v;
    r.assert_that("tensor-algebra decomposition adds up cell-wise",
                  r.computed.equal_interior(r.expected));
    fill_boundary(r, w);
    r.match = r.all_assertions();
    r.runtime_ms = timer.ms();
    return r;
}

int preprojective_total_dim(std::shared_ptr<const Presentation> A, int length_cap) {
    // Doubled quiver with relations e_i (Σ_a aa* - a*a) e_i, dimensions counted
    // by length-graded word enumeration. Independent of the cell machinery.
    Field f = A->field();
    struct Arrow { int src, tgt; };
    std::vector<Arrow> arr;
    for (const auto& g : A->gens()) {
        arr.push_back({g.src, g.tgt});
        arr.push_back({g.tgt, g.src});  // the reversed arrow, index 2k+1
    }
    int nv = (int)A->vertices().size();
    // relations per vertex: sum over a of (aa* - a*a) restricted to e_i ... e_i
    struct Rel { std::vector<std::pair<int, std::pair<int, int>>> terms; };  // coeff, (first, second)
    std::vector<Rel> rels(nv);
    for (size_t k = 0; k < A->gens().size(); ++k) {
        int a = (int)(2 * k), astar = (int)(2 * k + 1);
        rels[arr[a].tgt].terms.push_back({1, {astar, a}});   // a after a*
        rels[arr[a].src].terms.push_back({-1, {a, astar}});  // a* after a
    }
    // words of length L as sequences of arrow indices (application order)
    std::vector<std::vector<std::vector<int>>> words_by_len;
    words_by_len.push_back({});
    for (int v = 0; v < nv; ++v) words_by_len[0].push_back({});  // lazy words marked by vertex index
    std::vector<int> lazy_vertex(nv);
    for (int v = 0; v < nv; ++v) lazy_vertex[v] = v;
    int total = 0;
    std::vector<std::vector<int>> prev;  // words of length L-1
    for (int v = 0; v < nv; ++v) total += 1;
    prev.clear();
    for (size_t a = 0; a < arr.size(); ++a) prev.push_back({(int)a});
    int L = 1;
    while (L <= length_cap) {
        // filter composable
        std::vector<std::vector<int>> cur;
        for (const auto& w : prev) {
            bool ok = true;
            for (size_t i = 0; i + 1 < w.size(); ++i)
                if (arr[w[i]].tgt != arr[w[i + 1]].src) ok = false;
            if (ok) cur.push_back(w);
        }
        if (cur.empty()) return total;
        // relation span inside length L: p ∘ rel ∘ q with |p| + |q| = L - 2
        std::vector<std::vector<Scalar>> rows;
        auto index_of = [&](const std::vector<int>& w) {
            for (size_t i = 0; i < cur.size(); ++i)
                if (cur[i] == w) return (int)i;
            return -1;
        };
        if (L >= 2) {
            for (int lp = 0; lp + 2 <= L; ++lp) {
                int lq = L - 2 - lp;
                // enumerate q of length lq, p of length lp among composable words
                std::function<void(std::vector<int>&, int)> gen_words =
                    [&](std::vector<int>& stack, int want) {
                        (void)stack;
                        (void)want;
                    };
                // simple: iterate all length-lq and length-lp composable words
                std::vector<std::vector<int>> qs, ps;
                std::function<void(std::vector<int>&, int, std::vector<std::vector<int>>&)> build =
                    [&](std::vector<int>& st, int want, std::vector<std::vector<int>>& out) {
                        if ((int)st.size() == want) {
                            out.push_back(st);
                            return;
                        }
                        for (size_t a = 0; a < arr.size(); ++a) {
                            if (!st.empty() && arr[st.back()].tgt != arr[a].src) continue;
                            st.push_back((int)a);
                            build(st, want, out);
                            st.pop_back();
                        }
                    };
                std::vector<int> st;
                build(st, lq, qs);
                build(st, lp, ps);
                for (const auto& q : qs)
                    for (int v = 0; v < nv; ++v) {
                        if (!q.empty() && arr[q.back()].tgt != v) continue;
                        for (const auto& p : ps) {
                            if (!p.empty() && arr[p.front()].src != v) continue;
                            std::vector<Scalar> row(cur.size(), Scalar::zero(f));
                            bool nz = false;
                            for (const auto& t : rels[v].terms) {
                                std::vector<int> w = q;
                                w.push_back(t.second.first);
                                w.push_back(t.second.second);
                                w.insert(w.end(), p.begin(), p.end());
                                bool comp = true;
                                for (size_t i = 0; i + 1 < w.size(); ++i)
                                    if (arr[w[i]].tgt != arr[w[i + 1]].src) comp = false;
                                if (!comp) continue;
                                int idx = index_of(w);
                                if (idx < 0) continue;
                                row[idx] = row[idx] + Scalar::integer(f, t.first);
                                nz = true;
                            }
                            if (nz) rows.push_back(std::move(row));
                        }
                    }
            }
        }
        ExactMatrix rm(f, (int)rows.size(), (int)cur.size());
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < rows[i].size(); ++j)
                if (!rows[i][j].is_zero()) rm.set((int)i, (int)j, rows[i][j]);
        int dim = (int)cur.size() - rm.rank();
        if (dim == 0) return total;
        total += dim;
        // extend words
        std::vector<std::vector<int>> next;
        for (const auto& w : cur)
            for (size_t a = 0; a < arr.size(); ++a)
                if (arr[w.back()].tgt == arr[a].src) {
                    std::vector<int> w2 = w;
                    w2.push_back((int)a);
                    next.push_back(std::move(w2));
                }
        prev = std::move(next);
        ++L;
    }
    throw err_cap("GlobalDimensionCapExceeded", "preprojective oracle did not terminate");
}

namespace {

// Exact cohomology of a single hom cell (cells never depend on a window).
int exact_hom_cell(const PerfectModule& M, const PerfectModule& N, Bidegree d) {
    ExactMatrix din = hom_cell_diff(M, N, d - kDiffDegree);
    ExactMatrix dout = hom_cell_diff(M, N, d);
    return cohomology_dim(din, dout);
}

int exact_algebra_cell(const Presentation& P, Bidegree d) {
    return algebra_cohomology(P, Window(d.c, d.c, d.b, d.b), false).at(d);
}

// Arithmetic support test for hom cells: false means provably zero.
bool hom_cell_possibly_nonzero(const PerfectModule& M, const PerfectModule& N, Bidegree d) {
    for (const auto& sm : M.summands)
        for (const auto& sn : N.summands)
            if (M.alg->cell_feasible(sm.shift - sn.shift + d)) return true;
    return false;
}

}  // namespace

CheckReport check_collapse(std::shared_ptr<const Presentation> A, const VerifyOptions& opt) {
    Timer timer;
    CheckReport r;
    r.check = "collapse";
    r.inputs["quiver"] = A->name;
    r.inputs["N"] = std::to_string(opt.N);
    int N = opt.N;
    if (N < 2) throw err_pre("InvalidCollapse", "collapse check requires N >= 2");
    auto T = cy_completion(A, CompletionMode::BigradedX);

    // E-side identity: H^k(E_N) = Σ_{a+bN=k} H^{a,b}(E_X); support is b in {0,1}
    auto EX = trivial_extension(A, CompletionMode::BigradedX);
    auto EN = trivial_extension(A, CompletionMode::CollapsedN, N);
    bool eok = true;
    for (int k = -1; k <= N + 1; ++k) {
        int sum = exact_algebra_cell(*EX.ext, {k, 0}) + exact_algebra_cell(*EX.ext, {k - N, 1});
        if (sum != exact_algebra_cell(*EN.ext, {k, 0})) eok = false;
    }
    r.assert_that("trivial-extension cohomology collapses cell-wise", eok);

    if (N >= 3) {
        // T-side identity; the completion lives in the band -b <= c <= -2b
        auto TN = cy_completion(A, CompletionMode::CollapsedN, N);
        int kmin = -(N + 1), kmax = 1;
        r.computed.window = Window(kmin - 1, kmax + 1, 0, 0);
        r.expected.window = r.computed.window;
        bool tok = true;
        for (int k = kmin; k <= kmax; ++k) {
            int sum = 0;
            for (int b = 0; b >= k - 1; --b)
                if (b * (N - 1) <= k && k <= b * (N - 2)) sum += exact_algebra_cell(*T, {k - b * N, b});
            int got = exact_algebra_cell(*TN, {k, 0});
            r.expected.set({k, 0}, sum);
            r.computed.set({k, 0}, got);
            if (sum != got) tok = false;
        }
        r.assert_that("completion cohomology collapses cell-wise", tok);

        // module level: collapsed hom tables equal collapsed sums. The free
        // pair runs the full depth; pairs with the augmentation resolution
        // stay shallow (their deep chain spaces are large and exact).
        auto theta = cy_theta(A);
        std::vector<PerfectModule> panel{free_module(T),
                                         minimize(restrict_along_augmentation(free_module(A), T, theta))};
        auto floordiv = [](int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
        bool mok = true;
        for (size_t pi = 0; pi < panel.size(); ++pi)
            for (size_t pj = 0; pj < panel.size(); ++pj) {
                const PerfectModule& M = panel[pi];
                const PerfectModule& Mp = panel[pj];
                PerfectModule cm = collapse_module(M, N, TN);
                PerfectModule cmp = collapse_module(Mp, N, TN);
                int kmin = (pi == 0 && pj == 0) ? -(N + 1) : -2;
                for (int k = kmin; k <= N + 1; ++k) {
                    int sum = 0;
                    int blo = floordiv(k - 3, N - 2) - 3;
                    for (int b = 2; b >= blo; --b) {
                        Bidegree cell{k - b * N, b};
                        if (hom_cell_possibly_nonzero(M, Mp, cell)) sum += exact_hom_cell(M, Mp, cell);
                    }
                    int got = exact_hom_cell(cm, cmp, {k, 0});
                    if (sum != got) mok = false;
                }
            }
        r.assert_that("module hom tables collapse cell-wise", mok);

        // cluster level: endomorphism total of the generator through both routes
        if (N - 1 >= 2) {
            auto dual = dual_bimodule(A);
            OrbitHomResult endo = orbit_hom(free_module(A), free_module(A), sigma_functor(A, dual, N - 1));
            Window wsg(-(3 * N + 4), 3, 0, 0);
            BidegreeTable t1 = rhom_base_endo_table(EN, wsg);
            BidegreeTable t2 = first_term_table(EN, wsg);
            int sg0 = t1.at({0, 0}) - t2.at({0, 0});
            r.assert_that("cluster endomorphism total matches the singularity route",
                          endo.total == sg0 && endo.converged);
        }
    } else {
        // N = 2: the degree-0 collapsed cohomology sum against the
        // preprojective-algebra oracle
        int oracle = preprojective_total_dim(A);
        int sum = 0, zrun = 0;
        for (int b = 0; b >= -(int)A->vertices().size() - 6; --b) {
            int v = exact_algebra_cell(*T, {-b * N, b});
            sum += v;
            zrun = v == 0 ? zrun + 1 : 0;
            if (zrun >= 2 && b < -1) break;
        }
        r.computed.window = Window(-1, 1, 0, 0);
        r.computed.set({0, 0}, sum);
        r.expected.window = r.computed.window;
        r.expected.set({0, 0}, oracle);
        r.assert_that("degree-0 collapsed sum equals the preprojective dimension", sum == oracle);
    }
    r.match = r.all_assertions();
    r.runtime_ms = timer.ms();
    return r;
}

int ar_oracle_hom(int n, const IntervalObject& X, const IntervalObject& Y, int m, int cap) {
    // closed forms for thin modules over the linear ascending A_n quiver
    auto hom0 = [&](const IntervalObject& a, const IntervalObject& b) {
        return (b.lo <= a.lo && a.lo <= b.hi && b.hi <= a.hi) ? 1 : 0;
    };
    auto ext1 = [&](const IntervalObject& a, const IntervalObject& b) {
        return (a.lo < b.lo && b.lo <= a.hi + 1 && a.hi + 1 <= b.hi) ? 1 : 0;
    };
    auto hom_d = [&](const IntervalObject& a, const IntervalObject& b) {
        int delta = b.shift - a.shift;
        if (delta == 0) return hom0(a, b);
        if (delta == 1) return ext1(a, b);
        return 0;
    };
    auto nu = [&](IntervalObject o) {
        if (o.hi == n - 1) return IntervalObject{0, o.lo, o.shift};           // P_a -> I_a
        return IntervalObject{o.lo + 1, o.hi + 1, o.shift + 1};
    };
    auto nu_inv = [&](IntervalObject o) {
        if (o.lo == 0) return IntervalObject{o.hi, n - 1, o.shift};           // I_b -> P_b
        return IntervalObject{o.lo - 1, o.hi - 1, o.shift - 1};
    };
    auto F = [&](IntervalObject o) {
        o.shift -= m;
        return nu(o);
    };
    auto Finv = [&](IntervalObject o) {
        o = nu_inv(o);
        o.shift += m;
        return o;
    };
    int total = hom_d(X, Y);
    IntervalObject cur = Y;
    for (int p = 1; p <= cap; ++p) {
        cur = F(cur);
        total += hom_d(X, cur);
    }
    cur = Y;
    for (int p = 1; p <= cap; ++p) {
        cur = Finv(cur);
        total += hom_d(X, cur);
    }
    return total;
}

CheckReport check_cluster(std::shared_ptr<const Presentation> A, const VerifyOptions& opt) {
    Timer timer;
    CheckReport r;
    r.check = "cluster";
    r.inputs["quiver"] = A->name;
    r.inputs["m"] = std::to_string(opt.m);
    auto chain = chain_order(*A);
    int n = (int)chain.size();
    // the oracle needs the ascending orientation along the chain
    std::vector<int> pos(A->vertices().size());
    for (int i = 0; i < n; ++i) pos[chain[i]] = i;
    bool ascending = true, descending = true;
    for (const auto& g : A->gens()) {
        if (pos[g.tgt] != pos[g.src] + 1) ascending = false;
        if (pos[g.tgt] != pos[g.src] - 1) descending = false;
    }
    if (!ascending && descending) {
        std::reverse(chain.begin(), chain.end());
        for (int i = 0; i < n; ++i) pos[chain[i]] = i;
        ascending = true;
    }
    if (!ascending)
        throw err_pre("UnsupportedType", "cluster oracle requires a linearly oriented A_n quiver");

    auto dual = dual_bimodule(A);
    ClusterTable tab = cluster_table(A, dual, opt.m);
    // oracle objects in the same order as cluster_domain
    std::vector<IntervalObject> oracle;
    for (int lo = 0; lo < n; ++lo)
        for (int hi = lo; hi < n; ++hi) oracle.push_back({lo, hi, 0});
    for (int v = 0; v < (int)A->vertices().size(); ++v)
        for (int j = 1; j <= opt.m - 1; ++j) oracle.push_back({pos[v], n - 1, j});

    size_t sz = tab.names.size();
    r.computed.window = Window(-1, (int)sz, 0, std::max((int)sz - 1, 0));
    r.expected.window = r.computed.window;
    bool agree = true, diag = true, conv = true;
    for (size_t i = 0; i < sz; ++i)
        for (size_t j = 0; j < sz; ++j) {
            int got = tab.entries[i][j].total;
            int want = ar_oracle_hom(n, oracle[i], oracle[j], opt.m);
            r.computed.set({(int)i, (int)j}, got);
            r.expected.set({(int)i, (int)j}, want);
            if (got != want) agree = false;
            if (i == j && got != 1) diag = false;
            if (!tab.entries[i][j].converged) conv = false;
        }
    r.assert_that("orbit route agrees with the interval-combinatorics oracle", agree);
    r.assert_that("diagonal entries are 1", diag);
    r.assert_that("all orbit sums converged", conv);
    int expect_size = n * (n + 1) / 2 + n * (opt.m - 1);
    r.assert_that("fundamental domain size", (int)sz == expect_size);
    // rigidity: the orbit hom into the suspension vanishes
    EndofunctorData F = sigma_functor(A, dual, opt.m);
    auto dom = cluster_domain(A, dual, opt.m);
    bool rigid = true;
    for (const auto& o : dom) {
        OrbitHomResult up = orbit_hom(o.module, shift_module(o.module, {1, 0}), F);
        if (up.total != 0) rigid = false;
    }
    r.assert_that("rigidity: orbit hom to the suspension vanishes", rigid);
    r.match = r.all_assertions();
    r.runtime_ms = timer.ms();
    return r;
}

CheckReport run_check(const std::string& name, std::shared_ptr<const Presentation> A,
                      const VerifyOptions& opt) {
    if (name == "iota-ff") return check_iota_ff(A, opt);
    if (name == "rkd") return check_rkd(A, opt);
    if (name == "sg") return check_sg(A, opt);
    if (name == "orthogonality") return check_orthogonality(A, opt);
    if (name == "torsion-pairs") return check_torsion_pairs(A, opt);
    if (name == "collapse") return check_collapse(A, opt);
    if (name == "cluster") return check_cluster(A, opt);
    throw err_pre("UnknownCheck", name);
}

}  // namespace dbga
