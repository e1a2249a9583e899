#pragma once

#include "dbga/algebra.hpp"

namespace dbga {

// Complex of free bimodule summands Ae_left ⊗ e_right A over a path algebra,
// each with a generator placed at an element bidegree.
struct BimoduleSummand {
    int left_v = 0;
    int right_v = 0;
    Bidegree shift;
    std::string gen_name;
};

// Differential entry from summand s to summand r: gen_s ↦ Σ_k l_k·gen_r·r_k.
struct BimodulePair {
    Element left;
    Element right;
};

struct ProjectiveBimoduleComplex {
    std::shared_ptr<const Presentation> base;
    std::vector<BimoduleSummand> summands;
    std::map<std::pair<int, int>, std::vector<BimodulePair>> diff;  // key (r, s)

    // M[r + sX]: element bidegrees move by (-r, -s); differential scales by (-1)^r.
    ProjectiveBimoduleComplex shifted(int r, int s) const;

    // Per-cell dimension of the underlying bigraded bimodule.
    BidegreeTable dimension_table(const Window& w) const;
    // Per-cell cohomology of the total complex.
    BidegreeTable cohomology_table(const Window& w) const;
    // Dimension per (left vertex, right vertex) pair with sign (-1)^{coh shift}.
    std::map<std::pair<int, int>, int> euler_by_vertex_pair() const;
};

// Two-term bar-type resolution of A as a bimodule:
//   degree -1: one summand per arrow, degree 0: one summand per vertex,
//   d(w_a) = a ⊗ e_{s(a)} - e_{t(a)} ⊗ a.
ProjectiveBimoduleComplex standard_resolution(std::shared_ptr<const Presentation> A);

// The bimodule dual of standard_resolution: generators z_i in degree 0 and
// a* in degree +1. The sign of the differential is chosen so that the
// tensor algebra of the [X-1]-shift carries d t_i = e_i(Σ_a aa* - a*a)e_i.
ProjectiveBimoduleComplex inverse_dualizing(std::shared_ptr<const Presentation> A);

// k-dual of a finite-dimensional path algebra with both actions tabulated.
// The dual of a path p behaves as a reversed arrow t(p) -> s(p).
struct DualData {
    std::shared_ptr<const Presentation> base;
    std::vector<Word> paths;              // path basis of A
    std::vector<std::string> dual_names;  // one per path
    // left_act[a][p] / right_act[a][p]: index of the resulting dual path or -1.
    std::vector<std::vector<int>> left_act;
    std::vector<std::vector<int>> right_act;
    int path_index(const Word& w) const;
};

DualData dual_bimodule(std::shared_ptr<const Presentation> A);

enum class CompletionMode { BigradedX, CollapsedN };

// Tensor algebra of a bimodule complex over A: one generator per bimodule
// summand plus the arrows of A, with the induced differential.
std::shared_ptr<Presentation> tensor_algebra(std::shared_ptr<const Presentation> A,
                                             const ProjectiveBimoduleComplex& xhat,
                                             const std::vector<std::string>& gen_names = {});

// The shifted inverse dualizing complex whose tensor algebra is the
// Calabi-Yau completion, with generators already named t_i / a*.
ProjectiveBimoduleComplex cy_theta(std::shared_ptr<const Presentation> A,
                                   CompletionMode mode = CompletionMode::BigradedX, int N = 0);

// Calabi-Yau completion: arrows a at (0,0), reversed arrows a* at (2,-1),
// loops t_i at (1,-1), d t_i = e_i(Σ_a aa* - a*a)e_i. Collapsed mode places
// the same generators at a* : 2-N, t : 1-N (single grading).
std::shared_ptr<Presentation> cy_completion(std::shared_ptr<const Presentation> A,
                                            CompletionMode mode, int N = 0);

// Square-zero trivial extension A ⊕ DA with the dual part at Adams degree +1
// (bigraded mode) or at cohomological degree N (collapsed mode). Presented by
// straightening relations; the action tables are kept for module plumbing.
struct TrivialExtensionData {
    std::shared_ptr<const Presentation> base;
    std::shared_ptr<Presentation> ext;
    DualData dual;
    std::vector<int> dual_gen;  // path index -> generator index in ext
    CompletionMode mode = CompletionMode::BigradedX;
    int N = 0;
    Bidegree dual_deg() const { return mode == CompletionMode::BigradedX ? Bidegree{0, 1} : Bidegree{N, 0}; }
};

TrivialExtensionData trivial_extension(std::shared_ptr<const Presentation> A, CompletionMode mode,
                                       int N = 0);

}  // namespace dbga
