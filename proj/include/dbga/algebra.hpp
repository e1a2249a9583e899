#pragma once

#include "dbga/matrix.hpp"

#include <mutex>

#include <functional>
#include <memory>
#include <optional>
#include <shared_mutex>

namespace dbga {

// A generator of a bigraded quiver algebra. Ordinary arrows carry bidegree
// (0,0); completion/extension generators carry nonzero bidegrees.
struct Generator {
    std::string name;
    int src = 0;
    int tgt = 0;
    Bidegree deg;
};

// A composable word of generators in application order: gens[0] acts first.
// The printed form is right-to-left ("b.a" means a, then b). An empty word
// is the lazy path at `vertex`.
struct Word {
    int vertex = 0;  // source vertex; for lazy words also the target
    std::vector<int> gens;
    bool lazy() const { return gens.empty(); }
    friend bool operator==(const Word& x, const Word& y) { return x.vertex == y.vertex && x.gens == y.gens; }
};

struct Term {
    Scalar coeff;
    Word word;
};

// Normalized homogeneous element: all terms share one bidegree and one
// (source, target) pair, and the term list is reduced against the cell basis.
struct Element {
    std::vector<Term> terms;
    bool is_zero() const { return terms.empty(); }
};

class Presentation;

// Basis data for one bidegree cell: every composable word of that bidegree,
// the relation-ideal span in RREF, and the resulting quotient basis.
struct CellBasis {
    Bidegree deg;
    std::vector<Word> words;              // all words, sorted (length, name-lex)
    std::vector<int> quotient;            // indices of non-pivot words = basis
    std::vector<int> word_to_quotient;    // -1 for pivot words
    ExactMatrix rel_rref;                 // rows reduce pivot words
    std::vector<int> rel_pivots;
    int dim() const { return (int)quotient.size(); }
    // Reduce a raw coordinate vector over `words` modulo the relation span.
    std::vector<Scalar> reduce(std::vector<Scalar> v) const;
};

// A bigraded quiver algebra given by generators, homogeneous relations and a
// differential on generators (extended by the graded Leibniz rule). Immutable
// after construction; the per-bidegree basis cache supports concurrent reads.
class Presentation {
  public:
    Presentation(Field f, std::vector<std::string> vertices, std::vector<Generator> gens)
        : field_(f), vertices_(std::move(vertices)), gens_(std::move(gens)) {
        init();
    }

    Field field() const { return field_; }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Generator>& gens() const { return gens_; }
    int vertex_index(const std::string& name) const;
    int gen_index(const std::string& name) const;

    void add_relation(Element rel);          // before freeze
    void set_differential(int gen, Element d);  // before freeze
    const std::vector<Element>& relations() const { return relations_; }
    const Element& differential(int gen) const { return diff_[gen]; }

    // Validates and locks the presentation: degree homogeneity, composability,
    // d^2 = 0 on generators, and the cell-finiteness certificate.
    void freeze();
    bool frozen() const { return frozen_; }
    // True when every bidegree cell is provably finite-dimensional: the
    // (0,0) generators span an acyclic quiver and a coordinate functional is
    // positive on all other generators. Basis queries refuse otherwise.
    bool admissible() const { return admissible_; }

    // --- words -------------------------------------------------------------
    int word_src(const Word& w) const { return w.lazy() ? w.vertex : gens_[w.gens.front()].src; }
    int word_tgt(const Word& w) const { return w.lazy() ? w.vertex : gens_[w.gens.back()].tgt; }
    Bidegree word_deg(const Word& w) const;
    bool word_less(const Word& x, const Word& y) const;  // (length, name-lex)
    std::string word_str(const Word& w) const;
    std::string element_str(const Element& e) const;

    // --- elements ----------------------------------------------------------
    Element zero() const { return Element{}; }
    Element lazy_element(int vertex) const;
    Element gen_element(int gen) const;
    Element from_terms(std::vector<Term> terms) const;  // normalizes
    Element scale(const Element& e, const Scalar& s) const;
    Element add(const Element& x, const Element& y) const;
    // x after y (right-to-left composition); error if endpoints mismatch.
    Element multiply(const Element& x, const Element& y) const;
    Element differentiate(const Element& x) const;
    Bidegree element_deg(const Element& e) const;
    int element_src(const Element& e) const { return word_src(e.terms.front().word); }
    int element_tgt(const Element& e) const { return word_tgt(e.terms.front().word); }
    int element_coh(const Element& e) const { return element_deg(e).c; }
    bool equal(const Element& x, const Element& y) const;

    // --- cells -------------------------------------------------------------
    const CellBasis& cell(Bidegree d) const;
    int cell_dim(Bidegree d) const { return cell(d).dim(); }
    // Basis of the (tgt i, src j) block of a cell, as elements.
    std::vector<Element> cell_basis_elements(Bidegree d) const;
    std::vector<int> cell_block(Bidegree d, int tgt, int src) const;  // quotient positions
    // Coordinates of a normalized element over the cell quotient basis.
    std::vector<Scalar> coordinates(const Element& e, Bidegree d) const;

    // Graded dimension (pre-cohomology) per cell over a window.
    BidegreeTable dimension_table(const Window& w) const;

    // Bidegrees reachable as sums of nonzero generator degrees within the
    // phi budget; every nonzero cell lies in this set.
    std::set<Bidegree> special_degree_sums(int phi_cap) const;
    int phi_value(Bidegree d) const { return phi(d); }
    int max_phi() const { return max_phi_; }
    // Arithmetic support test: false means the cell is provably zero.
    bool cell_feasible(Bidegree d) const;

    // Leibniz/d^2/relation-compatibility audit over a window (throws on failure).
    void validate_window(const Window& w) const;

    std::string name;  // informational label used by reports

  private:
    void init();
    std::vector<Word> enumerate_words(Bidegree d) const;
    void enumerate_from(int vertex, Bidegree cur, Bidegree target, std::vector<int>& stack,
                        std::vector<Word>& out) const;
    std::unique_ptr<CellBasis> build_cell(Bidegree d) const;
    // phi(deg) >= 1 for every non-(0,0) generator; 0 on (0,0) ones.
    int phi(Bidegree d) const { return phi_c_ * d.c + phi_b_ * d.b; }

    Field field_;
    std::vector<std::string> vertices_;
    std::vector<Generator> gens_;
    std::vector<Element> relations_;
    std::vector<Element> diff_;
    std::vector<int> name_rank_;  // generator -> rank in name order
    bool frozen_ = false;
    bool admissible_ = false;
    int phi_c_ = 0, phi_b_ = 0;
    int coh_sign_ = 0, adams_sign_ = 0;
    int max_phi_ = 0;                       // max phi over generators
    std::vector<std::vector<int>> out_gens_;  // by source vertex

    mutable std::shared_mutex cache_mx_;
    mutable std::map<Bidegree, std::unique_ptr<CellBasis>> cache_;
    mutable std::set<Bidegree> sums_cache_;
    mutable int sums_phi_cap_ = -1;
    mutable std::map<Bidegree, std::vector<Word>> word_cache_;
};

// Plain path algebra of an acyclic quiver: generators at (0,0), no
// relations, zero differential.
std::shared_ptr<Presentation> path_algebra(Field f, std::vector<std::string> vertices,
                                           std::vector<Generator> arrows);

// Replace each bidegree (a,b) by (a+bN, 0) in generators, relations and
// differential. Accepted for any N >= 2; the result may fail the
// finiteness certificate (then basis queries refuse).
std::shared_ptr<Presentation> collapse(const Presentation& alg, int N);

// Opposite presentation (reverses every generator and word). Only valid for
// zero-differential presentations; used for right-module computations.
std::shared_ptr<Presentation> opposite(const Presentation& alg);

// Cohomology dimension table of the algebra itself over a window. Cells are
// computed exactly (neighbors outside the window are enumerated as needed);
// boundary columns are still flagged by the window for comparisons.
BidegreeTable algebra_cohomology(const Presentation& alg, const Window& w, bool parallel = true);

// Serial reference implementation kept for testing the parallel path.
BidegreeTable algebra_cohomology_serial(const Presentation& alg, const Window& w);

}  // namespace dbga
