#pragma once

#include "dbga/findim.hpp"

#include <functional>

namespace dbga {

using ZoneFn = std::function<bool(Bidegree)>;

// Iterated minimal projective covers of a zero-differential module. Classes
// whose cover summand would land outside the zone are left uncovered; the
// zone must be derived from the window the result will be used in.
PerfectModule minimal_resolution(std::shared_ptr<const Presentation> alg, const FinDimModule& F,
                                 const ZoneFn& zone, int step_cap = 200);

// Minimal complex of projectives quasi-isomorphic to F over an ordinary
// algebra concentrated in bidegree (0,0). Complexes are split through their
// cohomology first (hereditary base required for that path).
PerfectModule projective_replacement(const FinDimModule& F, int step_cap = 64);

// Serre functor on perfect modules over a hereditary path algebra: the
// Nakayama twist followed by projective replacement.
PerfectModule serre(const PerfectModule& M, const DualData& dual);
// Quasi-inverse Serre functor via the inverse dualizing complex.
PerfectModule inverse_serre(const PerfectModule& M);

// Window-complete minimal resolution of the base A over its trivial
// extension E (restriction along the augmentation).
PerfectModule resolve_base_over_extension(const TrivialExtensionData& ext, const Window& w);
// RHom_E(A, A) dimension table.
BidegreeTable rhom_base_endo_table(const TrivialExtensionData& ext, const Window& w);
// Dimension table of A ⊗^L_E (dual part of E): the first term of the
// singularity-category triangle. Computed by resolving A on the right.
BidegreeTable first_term_table(const TrivialExtensionData& ext, const Window& w);

struct PsiOptions {
    int qcap = 12;
    Window cmp_window = Window(-6, 4, -2, 2);
};

// Stabilized term of the direct system M_0 -> nu(M_{-1})[1] -> ...: extracts
// Adams components, twists by the Serre kernel, and returns the perfect
// A-module once two consecutive steps agree on the panel's hom tables.
PerfectModule psi_stabilize(const PerfectModule& M, std::shared_ptr<const Presentation> A,
                            const DualData& dual, const std::vector<PerfectModule>& panel,
                            const PsiOptions& opt = {});

}  // namespace dbga
