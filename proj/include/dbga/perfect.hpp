#pragma once

#include "dbga/constructions.hpp"

namespace dbga {

// One free summand Be_vertex with its generator placed at `shift`.
struct Summand {
    int vertex = 0;
    Bidegree shift;
};

// Finite complex of shifted vertex projectives over a presented algebra.
// D(g_s) = Σ_r D[(r,s)]·g_r with D[(r,s)] in e_{i_s} B e_{i_r} of bidegree
// shift_s - shift_r + (1,0). Left modules; module maps are right
// multiplications by algebra elements.
struct PerfectModule {
    std::shared_ptr<const Presentation> alg;
    std::vector<Summand> summands;
    std::map<std::pair<int, int>, Element> diff;  // key (row r, col s)

    int size() const { return (int)summands.size(); }
    void set_entry(int r, int s, Element e);
    const Element* entry(int r, int s) const;
    // Checks entry homogeneity/endpoints and D·D = 0 (exact, no window).
    void validate() const;
    // Every differential entry lies in the radical (no scalar part).
    bool is_minimal() const;
    // Dimension of the underlying bigraded module per cell.
    BidegreeTable dimension_table(const Window& w) const;
};

// Degree-homogeneous morphism f: M -> N of bidegree `deg`.
// f(g_s) = Σ_t entries[(t,s)]·g_t with entries[(t,s)] in e_{i_s} B e_{j_t}
// of bidegree shift^M_s - shift^N_t + deg.
struct ModMorphism {
    PerfectModule from;
    PerfectModule to;
    Bidegree deg;
    std::map<std::pair<int, int>, Element> entries;
};

PerfectModule zero_module(std::shared_ptr<const Presentation> alg);
PerfectModule free_module(std::shared_ptr<const Presentation> alg);
PerfectModule projective_summand(std::shared_ptr<const Presentation> alg, int vertex,
                                 Bidegree shift = {0, 0});
// M[c + bX]: summand shifts move by (-c,-b); differential scales by (-1)^c.
PerfectModule shift_module(const PerfectModule& m, Bidegree d);
PerfectModule direct_sum(const PerfectModule& x, const PerfectModule& y);
// Mapping cone: M[1] block first, then N; differential [[-D_M, 0], [f, D_N]].
PerfectModule cone(const ModMorphism& f);

// Differential of a morphism in the Hom complex.
ModMorphism d_morphism(const ModMorphism& f);
bool morphism_closed(const ModMorphism& f);
ModMorphism compose(const ModMorphism& g, const ModMorphism& f);
ModMorphism identity_morphism(const PerfectModule& m);

// Cancels unit differential entries (Gaussian elimination on scalar
// components) until every entry is radical.
PerfectModule minimize(const PerfectModule& m);

// Reinterpret an A-module over B when A's generators embed in B by name
// with identical endpoints and bidegrees.
PerfectModule induct(const PerfectModule& m, std::shared_ptr<const Presentation> B);

// Re-place each summand shift (c,b) at (c+bN, 0) over the collapsed algebra.
PerfectModule collapse_module(const PerfectModule& m, int N,
                              std::shared_ptr<const Presentation> collapsed);

// Hom-complex cell basis for hom_table and morphism sampling.
struct HomCellItem {
    int s, t;  // summand of M, summand of N
    Word w;
};
std::vector<HomCellItem> hom_cell_basis(const PerfectModule& M, const PerfectModule& N, Bidegree d);
ExactMatrix hom_cell_diff(const PerfectModule& M, const PerfectModule& N, Bidegree d);
ModMorphism morphism_from_coords(const PerfectModule& M, const PerfectModule& N, Bidegree d,
                                 const std::vector<Scalar>& coords);

BidegreeTable hom_table(const PerfectModule& M, const PerfectModule& N, const Window& w,
                        bool parallel = true);
BidegreeTable hom_table_serial(const PerfectModule& M, const PerfectModule& N, const Window& w);

// C ⊗_A M for a free bimodule complex C over the path algebra A; block
// expansion with one summand per (C summand, path of e_rAe_i, M summand).
PerfectModule bimodule_tensor(const ProjectiveBimoduleComplex& C, const PerfectModule& M);
// Same expansion on morphisms (id_C ⊗ f).
ModMorphism bimodule_tensor_mor(const ProjectiveBimoduleComplex& C, const ModMorphism& f);

// Perfect T-module realizing the A-module R with the Θ-action killed:
// cone(T⊗Θ⊗R -> T⊗R) with the multiplication map. T must extend A and carry
// one generator per Θ-summand (cy_completion provides `theta` and the name
// correspondence).
PerfectModule restrict_along_augmentation(const PerfectModule& R,
                                          std::shared_ptr<const Presentation> T,
                                          const ProjectiveBimoduleComplex& theta);

}  // namespace dbga
