// Acceptance suite: every criterion prints one PASS/FAIL line with its
// runtime; the binary exits nonzero if any criterion fails or overruns its
// budget. Exact integer comparisons throughout.

#include "dbga/io_json.hpp"
#include "helpers.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

using namespace dbga;
using namespace dbga::testing;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, double budget_s,
               const std::function<bool()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string error;
    try {
        ok = body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = dt < budget_s;
    if (!ok || !in_budget) ++failures;
    std::printf("[%s] criterion %d: %s (%.2fs%s)%s\n", ok && in_budget ? "PASS" : "FAIL", number,
                label.c_str(), dt, in_budget ? "" : " OVER BUDGET",
                error.empty() ? "" : ("  error: " + error).c_str());
    std::fflush(stdout);
}

PerfectModule s1_complex(std::shared_ptr<const Presentation> A) {
    PerfectModule m{A, {{1, {-1, 0}}, {0, {0, 0}}}, {}};
    m.set_entry(1, 0, A->gen_element(A->gen_index("a")));
    return m;
}

}  // namespace

int main() {
    VerifyOptions opt;
    opt.t_window = Window(-8, 2, -4, 0);

    criterion(1, "full faithfulness of the completion embedding (A_1..A_3)", 30.0, [&] {
        std::vector<int> dims{1, 3, 6};
        std::vector<std::shared_ptr<Presentation>> qs{a1(), a2(), a3()};
        for (size_t i = 0; i < qs.size(); ++i) {
            auto t0 = std::chrono::steady_clock::now();
            CheckReport rep = check_iota_ff(qs[i], opt);
            double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (!rep.match || dt >= 10.0) return false;
            // the Adams-0 row is exactly {(0,0): dim kQ}
            BidegreeTable row = rep.computed.adams_row(0);
            for (auto& [d, n] : row.cells)
                if (!row.window.on_boundary(d) && n != (d == Bidegree{0, 0} ? dims[i] : 0))
                    return false;
            if (row.at({0, 0}) != dims[i]) return false;
        }
        return true;
    });

    criterion(2, "relative Koszul duality tables (A_1, A_2)", 30.0, [&] {
        for (auto A : {a1(), a2()}) {
            CheckReport rep = check_rkd(A, opt);
            if (!rep.match) return false;
            int d = A->cell_dim({0, 0});
            if (rep.computed.at({0, 0}) != d || rep.computed.at({0, 1}) != d) return false;
        }
        return true;
    });

    criterion(3, "shrunk singularity endomorphisms (A_1, A_2)", 60.0, [&] {
        for (auto A : {a1(), a2()}) {
            CheckReport rep = check_sg(A, opt);
            if (!rep.match) return false;
            // the cone table: Adams-0 part of RHom_E(A,A), which must be
            // {(0,0): dim A} off-boundary
            for (auto& [d, n] : rep.computed.cells)
                if (!rep.computed.window.on_boundary(d) &&
                    n != (d == Bidegree{0, 0} ? A->cell_dim({0, 0}) : 0))
                    return false;
        }
        return true;
    });

    criterion(4, "psi-after-induction round trip on a five-module panel", 60.0, [&] {
        auto A = a2();
        auto T = cy_completion(A, CompletionMode::BigradedX);
        auto dual = dual_bimodule(A);
        PerfectModule P1 = projective_summand(A, 0);
        PerfectModule P2 = projective_summand(A, 1);
        PerfectModule S1 = s1_complex(A);
        ModMorphism f{P2, P1, {0, 0}, {}};
        f.entries[{0, 0}] = A->gen_element(0);
        PerfectModule C = cone(f);
        PerfectModule Sh = shift_module(P1, {1, 0});
        std::vector<PerfectModule> panel{P1, P2, S1, C, Sh};
        Window w(-3, 3, -1, 1);
        for (const auto& L : panel) {
            PerfectModule back = psi_stabilize(induct(L, T), A, dual, panel);
            for (const auto& P : panel)
                if (!(hom_table(back, P, w) == hom_table(L, P, w))) return false;
        }
        return true;
    });

    criterion(5, "orthogonality and X-Calabi-Yau duality samples (A_2)", 30.0, [&] {
        VerifyOptions o = opt;
        o.samples = 20;
        CheckReport rep = check_orthogonality(a2(), o);
        return rep.match;
    });

    criterion(6, "degree collapsing identities (A_1, A_2; N = 2, 3)", 120.0, [&] {
        for (auto A : {a1(), a2()})
            for (int N : {2, 3}) {
                VerifyOptions o = opt;
                o.N = N;
                CheckReport rep = check_collapse(A, o);
                if (!rep.match) return false;
                if (N == 2 && A->vertices().size() == 2 && rep.computed.at({0, 0}) != 4) return false;
            }
        return true;
    });

    criterion(7, "cluster tables against the interval oracle (A_1..A_3, m = 2)", 60.0, [&] {
        std::vector<size_t> sizes{2, 5, 9};
        std::vector<std::shared_ptr<Presentation>> qs{a1(), a2(), a3()};
        for (size_t i = 0; i < qs.size(); ++i) {
            VerifyOptions o = opt;
            o.m = 2;
            CheckReport rep = check_cluster(qs[i], o);
            if (!rep.match) return false;
            auto dom = cluster_domain(qs[i], dual_bimodule(qs[i]), 2);
            if (dom.size() != sizes[i]) return false;
        }
        return true;
    });

    criterion(8, "structural property suites", 120.0, [&] {
        // d^2 = 0 and the Leibniz rule across the shipped presentations
        for (auto A : {a1(), a2(), a3()}) {
            cy_completion(A, CompletionMode::BigradedX)->validate_window(Window(-1, 4, -2, 0));
            cy_completion(A, CompletionMode::CollapsedN, 3)->validate_window(Window(-4, 1, 0, 0));
            trivial_extension(A, CompletionMode::BigradedX).ext->validate_window(Window(-1, 1, -1, 2));
        }
        // the pairs-category structure on 200 seeded trials
        PairsReport pr = pairs_check(a2(), 200, 1);
        if (pr.failures != 0 || pr.trials != 200) return false;
        // Adams filtration additivity on the regular extension modules
        auto EX = trivial_extension(a2(), CompletionMode::BigradedX);
        for (int v = 0; v < 2; ++v) {
            FinDimModule reg = free_findim(EX.ext, v);
            for (int p : {-1, 0, 1}) {
                auto [lo, hi] = adams_truncate(reg, p);
                Window w(-1, 1, -1, 2);
                BidegreeTable whole = reg.dimension_table(w);
                BidegreeTable sum = lo.dimension_table(w);
                for (auto& [d, n] : hi.dimension_table(w).cells) sum.cells[d] += n;
                if (!(whole == sum)) return false;
            }
        }
        // window monotonicity: nested windows agree on the smaller interior
        VerifyOptions small;
        small.t_window = Window(-6, 1, -3, 0);
        small.e_window = Window(-1, 6, -1, 3);
        VerifyOptions big;
        big.t_window = Window(-8, 2, -4, 1);
        big.e_window = Window(-2, 8, -1, 4);
        for (const auto& name : check_names()) {
            CheckReport rs = run_check(name, a2(), small);
            CheckReport rb = run_check(name, a2(), big);
            if (!rs.match || !rb.match) return false;
            const Window& w = rs.computed.window;
            for (int c = w.cmin + 1; c < w.cmax; ++c)
                for (int b = w.amin; b <= w.amax; ++b)
                    if (rb.computed.window.interior({c, b}) &&
                        rs.computed.at({c, b}) != rb.computed.at({c, b}))
                        return false;
        }
        return true;
    });

    criterion(9, "byte-identical payloads under repeated runs", 60.0, [&] {
        VerifyOptions o = opt;
        o.seed = 7;
        for (const auto& name : check_names()) {
            auto p1 = dump_payload(strip_runtime(report_to_json(run_check(name, a2(), o))));
            auto p2 = dump_payload(strip_runtime(report_to_json(run_check(name, a2(), o))));
            if (p1 != p2) return false;
        }
        auto A = a2();
        auto dual = dual_bimodule(A);
        auto c1 = dump_payload(cluster_to_json(cluster_table(A, dual, 2)));
        auto c2 = dump_payload(cluster_to_json(cluster_table(A, dual, 2)));
        if (c1 != c2) return false;
        auto T = cy_completion(A, CompletionMode::BigradedX);
        auto t1 = dump_payload(table_to_json(algebra_cohomology(*T, Window(-6, 2, -3, 0))));
        auto T2 = cy_completion(A, CompletionMode::BigradedX);
        auto t2 = dump_payload(table_to_json(algebra_cohomology(*T2, Window(-6, 2, -3, 0))));
        return t1 == t2;
    });

    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
                failures);
    return failures == 0 ? 0 : 1;
}
