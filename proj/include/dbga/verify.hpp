#pragma once

#include "dbga/orbit.hpp"

namespace dbga {

struct CheckReport {
    std::string check;
    std::map<std::string, std::string> inputs;
    BidegreeTable expected;
    BidegreeTable computed;
    bool match = false;
    std::vector<Bidegree> excluded_boundary;
    std::vector<std::pair<std::string, bool>> assertions;  // name -> passed
    long long runtime_ms = 0;

    void assert_that(const std::string& name, bool ok) { assertions.push_back({name, ok}); }
    bool all_assertions() const {
        for (auto& [n, ok] : assertions)
            if (!ok) return false;
        return true;
    }
};

struct VerifyOptions {
    Window t_window = Window(-8, 2, -4, 1);   // T-side default
    Window e_window = Window(-2, 8, -1, 4);   // E-side default
    std::uint64_t seed = 1;
    int samples = 20;
    int N = 3;
    int m = 2;
};

// Full faithfulness of the induction to the completion: the Adams-0 row of
// End(T) equals H^*(A); other rows agree with the algebra-cohomology route.
CheckReport check_iota_ff(std::shared_ptr<const Presentation> A, const VerifyOptions& opt);

// Relative Koszul duality: End of the augmentation resolution equals the
// trivial extension table, and its homs into T give the dual part.
CheckReport check_rkd(std::shared_ptr<const Presentation> A, const VerifyOptions& opt);

// Shrunk singularity endomorphisms via the extension-side triangle.
CheckReport check_sg(std::shared_ptr<const Presentation> A, const VerifyOptions& opt);

// Projective/simple orthogonality over the completion.
CheckReport check_orthogonality(std::shared_ptr<const Presentation> A, const VerifyOptions& opt);

// Hom-vanishing halves of the torsion pairs plus the tensor-algebra
// decomposition at dimension level.
CheckReport check_torsion_pairs(std::shared_ptr<const Presentation> A, const VerifyOptions& opt);

// Degree collapsing: algebra-, module- and cluster-level comparisons.
CheckReport check_collapse(std::shared_ptr<const Presentation> A, const VerifyOptions& opt);

// Orbit-route cluster table against the interval-combinatorics oracle.
CheckReport check_cluster(std::shared_ptr<const Presentation> A, const VerifyOptions& opt);

CheckReport run_check(const std::string& name, std::shared_ptr<const Presentation> A,
                      const VerifyOptions& opt);
std::vector<std::string> check_names();

// Independent oracle: total dimension of the preprojective algebra computed
// by length-graded word enumeration with early stop.
int preprojective_total_dim(std::shared_ptr<const Presentation> A, int length_cap = 64);

// Independent oracle: cluster-category hom dimensions from interval
// combinatorics on the linear A_n quiver (Hom/Ext closed forms + Nakayama
// shift rules on (interval, shift) pairs).
struct IntervalObject {
    int lo = 0, hi = 0;  // chain positions, 0-based; projectives have hi = n-1
    int shift = 0;       // suspension count
};
int ar_oracle_hom(int n, const IntervalObject& X, const IntervalObject& Y, int m, int cap = 12);

}  // namespace dbga
