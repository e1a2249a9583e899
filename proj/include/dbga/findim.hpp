#pragma once

#include "dbga/perfect.hpp"

namespace dbga {

// Explicit finite-dimensional bigraded module with generator actions and a
// bidegree-(1,0) differential. Left modules: an arrow a: i -> j maps the
// vertex-i part to the vertex-j part.
struct FinDimModule {
    std::shared_ptr<const Presentation> alg;
    std::vector<int> vertex;     // per basis element
    std::vector<Bidegree> deg;   // per basis element
    std::vector<ExactMatrix> act;  // per generator, dim x dim
    ExactMatrix diff;              // dim x dim

    int dim() const { return (int)vertex.size(); }
    void validate() const;
    ExactMatrix act_word(const Word& w) const;
    ExactMatrix act_element(const Element& e) const;
    BidegreeTable dimension_table(const Window& w) const;
    bool has_differential() const { return !diff.is_zero(); }
};

FinDimModule simple_module(std::shared_ptr<const Presentation> alg, int vertex);
// M[c + bX]: basis degrees move by (-c,-b); differential scales by (-1)^c.
FinDimModule shift_findim(const FinDimModule& f, Bidegree d);

// All bidegrees where a finite-dimensional algebra has nonzero cells.
// Throws UnsupportedType when the algebra is not finite-dimensional.
std::vector<Bidegree> support_cells(const Presentation& alg);
// Finite-dimensional model of the projective Be_v with generator at `shift`.
FinDimModule free_findim(std::shared_ptr<const Presentation> alg, int v, Bidegree shift = {0, 0});

// The base path algebra A as a module over its trivial extension (the dual
// part acts by zero) -- restriction along the augmentation E -> A.
FinDimModule base_as_module(const TrivialExtensionData& ext);
// Same over the opposite extension (A as a right E-module).
FinDimModule base_as_module_op(const TrivialExtensionData& ext,
                               std::shared_ptr<const Presentation> opE);
// The dual part Y[-X] of the trivial extension as a left E-module.
FinDimModule dual_part_module(const TrivialExtensionData& ext);

// Hom(M, S) tables for perfect M and finite-dimensional S over one algebra.
ExactMatrix hom_findim_cell_diff(const PerfectModule& M, const FinDimModule& S, Bidegree d);
BidegreeTable hom_to_findim(const PerfectModule& M, const FinDimModule& S, const Window& w,
                            bool parallel = true);

// Adams truncation: (sigma_{<=p}, sigma_{>p}); dimension tables add cell-wise.
std::pair<FinDimModule, FinDimModule> adams_truncate(const FinDimModule& f, int p);

// Serre twist DA ⊗_A M of a perfect module over a path algebra, as a
// finite-dimensional complex (the Nakayama functor applied summand-wise).
FinDimModule nu_module(const PerfectModule& M, const DualData& dual);
// DA ⊗_A F for finite-dimensional F.
FinDimModule nu_findim(const FinDimModule& F, const DualData& dual);

// Adams-degree-q component of a perfect module over a completion T of A,
// restricted to an A-module complex (re-graded to Adams 0).
FinDimModule adams_slice(const PerfectModule& M, int q, std::shared_ptr<const Presentation> A);

// Cohomology of a finite-dimensional complex as a new module with induced
// actions. Valid over hereditary path algebras (complexes split there).
FinDimModule cohomology_findim(const FinDimModule& F);

}  // namespace dbga
