#pragma once

#include "dbga/resolve.hpp"

#include <random>

namespace dbga {

// Endofunctor on perfect modules given by object rules; the backward rule
// realizes the quasi-inverse and is audited, not assumed.
struct EndofunctorData {
    std::string name;
    std::function<PerfectModule(const PerfectModule&)> forward;
    std::function<PerfectModule(const PerfectModule&)> backward;
};

// Sigma_m = Serre ∘ [-m] over a hereditary path algebra.
EndofunctorData sigma_functor(std::shared_ptr<const Presentation> A, const DualData& dual, int m);
EndofunctorData identity_functor();

// Round-trip audit: backward(forward(M)) has the hom tables of M against a
// panel of test objects.
bool audit_endofunctor(const EndofunctorData& F, const std::vector<PerfectModule>& panel,
                       const Window& w);

// Hom tables of (X, F^p Y) for p = 0..pmax.
std::vector<BidegreeTable> left_lax_hom(const PerfectModule& X, const PerfectModule& Y,
                                        const EndofunctorData& F, int pmax, const Window& w);

struct OrbitHomResult {
    std::map<int, int> by_power;  // p -> dim Hom^{(0,0)}(X, F^p Y)
    int total = 0;
    bool converged = false;
};

// Degree-(0,0) orbit Hom dimensions, extending the power range until two
// consecutive zeros appear on each side (or the cap is hit).
OrbitHomResult orbit_hom(const PerfectModule& X, const PerfectModule& Y, const EndofunctorData& F,
                         int cap = 12);

// --- dg functor with morphism action (for the property checks) -------------
struct DgEndofunctor {
    std::string name;
    std::function<PerfectModule(const PerfectModule&)> on_obj;
    std::function<ModMorphism(const ModMorphism&)> on_mor;
};

// Tensor with a free bimodule complex; exact on morphisms.
DgEndofunctor theta_functor(const ProjectiveBimoduleComplex& theta);

// Lax composition g ⋄ f = (F^p g) ∘ f of lax morphisms (p, f), (q, g).
struct LaxMorphism {
    int p = 0;
    ModMorphism f;
};
LaxMorphism lax_compose(const DgEndofunctor& F, const LaxMorphism& g, const LaxMorphism& f);

// Property check of the pairs-category structure: objects (M1, M2, gamma)
// with gamma: M2 -> F(M1) closed of degree (0,0); morphisms (b1, b2, h) with
// differential d(b1,b2,h) = (db1, db2, dh - (-1)^n F(b1)∘gamma + (-1)^n
// gamma'∘b2) and composition (b1'b1, b2'b2, F(b1')∘h + (-1)^n h'∘b2).
// Verifies d^2 = 0, the graded Leibniz rule, associativity and the unit on
// seeded random panels; failures are counted in the report.
struct PairsReport {
    std::uint64_t seed = 0;
    int trials = 0;
    int failures = 0;
    std::vector<std::string> failed_properties;
};
PairsReport pairs_check(std::shared_ptr<const Presentation> A, int trials, std::uint64_t seed);

// --- cluster machinery -------------------------------------------------------
// Chain order of an A_n-shaped quiver (path as undirected graph).
std::vector<int> chain_order(const Presentation& A);
// Thin module supported on chain positions [lo, hi] (0-based, inclusive).
FinDimModule interval_findim(std::shared_ptr<const Presentation> A, const std::vector<int>& chain,
                             int lo, int hi);

struct ClusterDomainObject {
    std::string name;
    PerfectModule module;
};
// ind(mod A) ∪ {P_i[j], 1 <= j <= m-1} as perfect complexes.
std::vector<ClusterDomainObject> cluster_domain(std::shared_ptr<const Presentation> A,
                                                const DualData& dual, int m);

struct ClusterTable {
    std::vector<std::string> names;
    std::vector<std::vector<OrbitHomResult>> entries;  // [row X][col Y]
};
ClusterTable cluster_table(std::shared_ptr<const Presentation> A, const DualData& dual, int m,
                           int cap = 12);

}  // namespace dbga
