#include "dbga/orbit.hpp"

#include <algorithm>

namespace dbga {

EndofunctorData sigma_functor(std::shared_ptr<const Presentation> A, const DualData& dual, int m) {
    EndofunctorData F;
    F.name = "sigma_" + std::to_string(m);
    F.forward = [A, dual, m](const PerfectModule& M) {
        if (M.size() == 0) return M;
        return shift_module(serre(M, dual), {-m, 0});
    };
    F.backward = [A, m](const PerfectModule& M) {
        if (M.size() == 0) return M;
        return shift_module(inverse_serre(M), {m, 0});
    };
    return F;
}

EndofunctorData identity_functor() {
    EndofunctorData F;
    F.name = "id";
    F.forward = [](const PerfectModule& M) { return M; };
    F.backward = [](const PerfectModule& M) { return M; };
    return F;
}

bool audit_endofunctor(const EndofunctorData& F, const std::vector<PerfectModule>& panel,
                       const Window& w) {
    for (const auto& M : panel) {
        PerfectModule rt = F.backward(F.forward(M));
        for (const auto& P : panel)
            if (!(hom_table(M, P, w) == hom_table(rt, P, w))) return false;
    }
    return true;
}

std::vector<BidegreeTable> left_lax_hom(const PerfectModule& X, const PerfectModule& Y,
                                        const EndofunctorData& F, int pmax, const Window& w) {
    std::vector<BidegreeTable> out;
    PerfectModule cur = Y;
    for (int p = 0; p <= pmax; ++p) {
        out.push_back(hom_table(X, cur, w));
        if (p < pmax) cur = F.forward(cur);
    }
    return out;
}

OrbitHomResult orbit_hom(const PerfectModule& X, const PerfectModule& Y, const EndofunctorData& F,
                         int cap) {
    OrbitHomResult r;
    Window cell(-1, 1, 0, 0);
    auto dim_at = [&](const PerfectModule& Z) { return hom_table(X, Z, cell).at({0, 0}); };
    // forward side
    {
        PerfectModule cur = Y;
        int zeros = 0;
        for (int p = 0; p <= cap; ++p) {
            int d = dim_at(cur);
            r.by_power[p] = d;
            zeros = d == 0 ? zeros + 1 : 0;
            if (p >= 1 && zeros >= 2) break;
            if (p == cap) { r.converged = false; goto backward; }
            cur = F.forward(cur);
        }
    }
    r.converged = true;
backward:
    if (F.backward) {
        PerfectModule cur = Y;
        int zeros = 0;
        bool conv = false;
        for (int p = 1; p <= cap; ++p) {
            cur = F.backward(cur);
            int d = dim_at(cur);
            r.by_power[-p] = d;
            zeros = d == 0 ? zeros + 1 : 0;
            if (p >= 2 && zeros >= 2) { conv = true; break; }
        }
        r.converged = r.converged && conv;
    }
    for (auto& [p, d] : r.by_power) r.total += d;
    return r;
}

DgEndofunctor theta_functor(const ProjectiveBimoduleComplex& theta) {
    DgEndofunctor F;
    F.name = "theta_tensor";
    F.on_obj = [theta](const PerfectModule& M) { return bimodule_tensor(theta, M); };
    F.on_mor = [theta](const ModMorphism& f) { return bimodule_tensor_mor(theta, f); };
    return F;
}

LaxMorphism lax_compose(const DgEndofunctor& F, const LaxMorphism& g, const LaxMorphism& f) {
    ModMorphism gf = g.f;
    for (int i = 0; i < f.p; ++i) gf = F.on_mor(gf);
    return LaxMorphism{f.p + g.p, compose(gf, f.f)};
}

namespace {

ModMorphism scale_mor(const ModMorphism& f, const Scalar& s) {
    ModMorphism out = f;
    for (auto& [k, e] : out.entries) e = f.from.alg->scale(e, s);
    return out;
}

ModMorphism add_mor(const ModMorphism& x, const ModMorphism& y) {
    ModMorphism out = x;
    const auto& A = *x.from.alg;
    for (const auto& [k, e] : y.entries) {
        auto it = out.entries.find(k);
        if (it == out.entries.end()) out.entries[k] = e;
        else {
            it->second = A.add(it->second, e);
            if (it->second.is_zero()) out.entries.erase(it);
        }
    }
    return out;
}

bool mor_equal(const ModMorphism& x, const ModMorphism& y) {
    ModMorphism d = add_mor(x, scale_mor(y, -Scalar::one(x.from.alg->field())));
    return d.entries.empty();
}

// random morphism of the given degree (coefficients in {-2..2})
ModMorphism random_morphism(const PerfectModule& M, const PerfectModule& N, Bidegree d,
                            std::mt19937_64& rng) {
    Field f = M.alg->field();
    auto items = hom_cell_basis(M, N, d);
    std::uniform_int_distribution<int> coeff(-2, 2);
    std::vector<Scalar> coords;
    for (size_t i = 0; i < items.size(); ++i) coords.push_back(Scalar::integer(f, coeff(rng)));
    return morphism_from_coords(M, N, d, coords);
}

// random closed degree-(0,0) morphism
ModMorphism random_closed(const PerfectModule& M, const PerfectModule& N, std::mt19937_64& rng) {
    Field f = M.alg->field();
    ExactMatrix d = hom_cell_diff(M, N, {0, 0});
    auto ker = d.kernel_basis();
    std::vector<Scalar> coords((size_t)d.cols(), Scalar::zero(f));
    std::uniform_int_distribution<int> coeff(-1, 1);
    for (const auto& kv : ker) {
        Scalar c = Scalar::integer(f, coeff(rng));
        for (size_t i = 0; i < kv.size(); ++i) coords[i] = coords[i] + c * kv[i];
    }
    return morphism_from_coords(M, N, {0, 0}, coords);
}

struct PairsObject {
    PerfectModule m1, m2;
    ModMorphism gamma;  // m2 -> F(m1), closed, degree (0,0)
};

struct PairsMorphism {
    ModMorphism b1, b2, h;  // h: m2 -> F(m1') of degree n-1
    int n = 0;
};

}  // namespace

PairsReport pairs_check(std::shared_ptr<const Presentation> A, int trials, std::uint64_t seed) {
    PairsReport rep;
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    Field f = A->field();
    DgEndofunctor F = theta_functor(cy_theta(A));
    auto dual = dual_bimodule(A);

    // object pool: small perfect complexes
    std::vector<PerfectModule> pool;
    pool.push_back(free_module(A));
    for (int v = 0; v < (int)A->vertices().size(); ++v) {
        pool.push_back(projective_summand(A, v));
        pool.push_back(shift_module(projective_summand(A, v), {1, 0}));
        pool.push_back(projective_replacement(simple_module(A, v)));
    }
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> degree_pick(-1, 1);

    auto fail = [&](const std::string& what) {
        ++rep.failures;
        if (rep.failed_properties.size() < 8) rep.failed_properties.push_back(what);
    };

    auto d_triple = [&](const PairsObject& src, const PairsObject& dst, const PairsMorphism& t) {
        // d(b1,b2,h) = (db1, db2, dh - (-1)^n F(b1)∘gamma + (-1)^n gamma'∘b2)
        PairsMorphism out;
        out.n = t.n + 1;
        out.b1 = d_morphism(t.b1);
        out.b2 = d_morphism(t.b2);
        ModMorphism dh = d_morphism(t.h);
        ModMorphism fb1_gamma = compose(F.on_mor(t.b1), src.gamma);
        ModMorphism gamma_b2 = compose(dst.gamma, t.b2);
        Scalar sgn = t.n % 2 == 0 ? Scalar::one(f) : -Scalar::one(f);
        out.h = add_mor(dh, add_mor(scale_mor(fb1_gamma, -sgn), scale_mor(gamma_b2, sgn)));
        return out;
    };
    auto compose_triple = [&](const PairsMorphism& t2, const PairsMorphism& t1) {
        // (b1'b1, b2'b2, F(b1')∘h + (-1)^{n1} h'∘b2)
        PairsMorphism out;
        out.n = t1.n + t2.n;
        out.b1 = compose(t2.b1, t1.b1);
        out.b2 = compose(t2.b2, t1.b2);
        Scalar sgn = t1.n % 2 == 0 ? Scalar::one(f) : -Scalar::one(f);
        out.h = add_mor(compose(F.on_mor(t2.b1), t1.h), scale_mor(compose(t2.h, t1.b2), sgn));
        return out;
    };
    auto zero_triple = [&](const PairsObject& src, const PairsObject& dst) {
        bool is_zero = true;
        (void)is_zero;
        return PairsMorphism{ModMorphism{src.m1, dst.m1, {0, 0}, {}},
                             ModMorphism{src.m2, dst.m2, {0, 0}, {}},
                             ModMorphism{src.m2, F.on_obj(dst.m1), {-1, 0}, {}}, 0};
    };

    for (int trial = 0; trial < trials; ++trial) {
        ++rep.trials;
        PairsObject X{pool[pick(rng)], pool[pick(rng)], {}};
        PairsObject Y{pool[pick(rng)], pool[pick(rng)], {}};
        PairsObject Z{pool[pick(rng)], pool[pick(rng)], {}};
        X.gamma = random_closed(X.m2, F.on_obj(X.m1), rng);
        Y.gamma = random_closed(Y.m2, F.on_obj(Y.m1), rng);
        Z.gamma = random_closed(Z.m2, F.on_obj(Z.m1), rng);

        int n1 = degree_pick(rng), n2 = degree_pick(rng);
        PairsMorphism s;
        s.n = n1;
        s.b1 = random_morphism(X.m1, Y.m1, {n1, 0}, rng);
        s.b2 = random_morphism(X.m2, Y.m2, {n1, 0}, rng);
        s.h = random_morphism(X.m2, F.on_obj(Y.m1), {n1 - 1, 0}, rng);
        PairsMorphism t;
        t.n = n2;
        t.b1 = random_morphism(Y.m1, Z.m1, {n2, 0}, rng);
        t.b2 = random_morphism(Y.m2, Z.m2, {n2, 0}, rng);
        t.h = random_morphism(Y.m2, F.on_obj(Z.m1), {n2 - 1, 0}, rng);

        // degree bookkeeping: h one degree below the triple
        if (!(s.h.deg == Bidegree{n1 - 1, 0})) fail("degree bookkeeping");

        // d^2 = 0
        PairsMorphism ds = d_triple(X, Y, s);
        PairsMorphism dds = d_triple(X, Y, ds);
        if (!dds.b1.entries.empty() || !dds.b2.entries.empty() || !dds.h.entries.empty())
            fail("d^2 = 0");

        // graded Leibniz: d(t∘s) = dt∘s + (-1)^{n2} t∘ds
        PairsMorphism ts = compose_triple(t, s);
        PairsMorphism lhs = d_triple(X, Z, ts);
        PairsMorphism dt = d_triple(Y, Z, t);
        PairsMorphism r1 = compose_triple(dt, s);
        PairsMorphism r2 = compose_triple(t, ds);
        Scalar sg = n2 % 2 == 0 ? Scalar::one(f) : -Scalar::one(f);
        ModMorphism rb1 = add_mor(r1.b1, scale_mor(r2.b1, sg));
        ModMorphism rb2 = add_mor(r1.b2, scale_mor(r2.b2, sg));
        ModMorphism rh = add_mor(r1.h, scale_mor(r2.h, sg));
        if (!mor_equal(lhs.b1, rb1) || !mor_equal(lhs.b2, rb2) || !mor_equal(lhs.h, rh))
            fail("graded Leibniz for composition");

        // associativity with a third morphism
        PairsMorphism u;
        u.n = 0;
        u.b1 = random_morphism(Z.m1, X.m1, {0, 0}, rng);
        u.b2 = random_morphism(Z.m2, X.m2, {0, 0}, rng);
        u.h = random_morphism(Z.m2, F.on_obj(X.m1), {-1, 0}, rng);
        PairsMorphism l = compose_triple(u, compose_triple(t, s));
        PairsMorphism rr = compose_triple(compose_triple(u, t), s);
        if (!mor_equal(l.b1, rr.b1) || !mor_equal(l.b2, rr.b2) || !mor_equal(l.h, rr.h))
            fail("associativity");

        // unit: (id, id, 0) composes trivially
        PairsMorphism idX = zero_triple(X, X);
        idX.b1 = identity_morphism(X.m1);
        idX.b2 = identity_morphism(X.m2);
        PairsMorphism via = compose_triple(s, idX);
        if (!mor_equal(via.b1, s.b1) || !mor_equal(via.b2, s.b2) || !mor_equal(via.h, s.h))
            fail("right unit");
        PairsMorphism idY = zero_triple(Y, Y);
        idY.b1 = identity_morphism(Y.m1);
        idY.b2 = identity_morphism(Y.m2);
        PairsMorphism via2 = compose_triple(idY, s);
        if (!mor_equal(via2.b1, s.b1) || !mor_equal(via2.b2, s.b2) || !mor_equal(via2.h, s.h))
            fail("left unit");
    }
    return rep;
}

std::vector<int> chain_order(const Presentation& A) {
    int n = (int)A.vertices().size();
    std::vector<std::vector<int>> adj(n);
    for (const auto& g : A.gens()) {
        if (g.src == g.tgt) throw err_pre("UnsupportedType", "loops are not type A");
        adj[g.src].push_back(g.tgt);
        adj[g.tgt].push_back(g.src);
    }
    if (n == 1) {
        if (!A.gens().empty()) throw err_pre("UnsupportedType", "not a type A quiver");
        return {0};
    }
    int start = -1;
    for (int v = 0; v < n; ++v) {
        if (adj[v].size() == 1 && start < 0) start = v;
        if (adj[v].size() > 2) throw err_pre("UnsupportedType", "not a type A quiver");
    }
    if (start < 0) throw err_pre("UnsupportedType", "not a type A quiver");
    std::vector<int> chain{start};
    int prev = -1, cur = start;
    while ((int)chain.size() < n) {
        int next = -1;
        for (int w : adj[cur])
            if (w != prev) next = w;
        if (next < 0) throw err_pre("UnsupportedType", "not a type A quiver");
        chain.push_back(next);
        prev = cur;
        cur = next;
    }
    if ((int)A.gens().size() != n - 1) throw err_pre("UnsupportedType", "not a type A quiver");
    return chain;
}

FinDimModule interval_findim(std::shared_ptr<const Presentation> A, const std::vector<int>& chain,
                             int lo, int hi) {
    Field f = A->field();
    FinDimModule m;
    m.alg = A;
    std::vector<int> pos_of(A->vertices().size(), -1);
    for (size_t i = 0; i < chain.size(); ++i) pos_of[chain[i]] = (int)i;
    std::vector<int> slot(A->vertices().size(), -1);
    for (int p = lo; p <= hi; ++p) {
        slot[chain[p]] = m.dim();
        m.vertex.push_back(chain[p]);
        m.deg.push_back({0, 0});
    }
    int n = m.dim();
    m.act.assign(A->gens().size(), ExactMatrix(f, n, n));
    for (size_t g = 0; g < A->gens().size(); ++g) {
        const Generator& ga = A->gens()[g];
        int ps = pos_of[ga.src], pt = pos_of[ga.tgt];
        if (ps >= lo && ps <= hi && pt >= lo && pt <= hi)
            m.act[g].set(slot[ga.tgt], slot[ga.src], Scalar::one(f));
    }
    m.diff = ExactMatrix(f, n, n);
    return m;
}

std::vector<ClusterDomainObject> cluster_domain(std::shared_ptr<const Presentation> A,
                                                const DualData& dual, int m) {
    (void)dual;
    if (m < 2) throw err_pre("UnsupportedType", "cluster parameter m must be >= 2");
    auto chain = chain_order(*A);
    int n = (int)chain.size();
    std::vector<ClusterDomainObject> out;
    for (int lo = 0; lo < n; ++lo)
        for (int hi = lo; hi < n; ++hi) {
            FinDimModule iv = interval_findim(A, chain, lo, hi);
            out.push_back({"M[" + std::to_string(lo + 1) + "," + std::to_string(hi + 1) + "]",
                           projective_replacement(iv)});
        }
    for (int v = 0; v < (int)A->vertices().size(); ++v)
        for (int j = 1; j <= m - 1; ++j)
            out.push_back({"P_" + A->vertices()[v] + "[" + std::to_string(j) + "]",
                           shift_module(projective_summand(A, v), {j, 0})});
    return out;
}

ClusterTable cluster_table(std::shared_ptr<const Presentation> A, const DualData& dual, int m,
                           int cap) {
    EndofunctorData F = sigma_functor(A, dual, m);
    auto dom = cluster_domain(A, dual, m);
    ClusterTable t;
    for (const auto& o : dom) t.names.push_back(o.name);
    t.entries.resize(dom.size());
    for (size_t i = 0; i < dom.size(); ++i) {
        t.entries[i].resize(dom.size());
        for (size_t j = 0; j < dom.size(); ++j)
            t.entries[i][j] = orbit_hom(dom[i].module, dom[j].module, F, cap);
    }
    return t;
}

}  // namespace dbga
