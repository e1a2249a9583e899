#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dbga/io_json.hpp"
#include "helpers.hpp"

using namespace dbga;
using namespace dbga::testing;

TEST_CASE("all checks match on the shipped quivers") {
    VerifyOptions opt;
    for (auto A : {a1(), a2(), a3()})
        for (const auto& name : check_names()) {
            CheckReport rep = run_check(name, A, opt);
            INFO(name << " over " << A->name);
            for (auto& [an, ok] : rep.assertions) {
                INFO("assertion: " << an);
                CHECK(ok);
            }
            CHECK(rep.match);
        }
}

TEST_CASE("collapse check at N = 2 uses the preprojective oracle") {
    VerifyOptions opt;
    opt.N = 2;
    for (auto A : {a1(), a2(), a3()}) {
        CheckReport rep = run_check("collapse", A, opt);
        CHECK(rep.match);
    }
    // the oracle values themselves: preprojective algebras of A_1..A_3
    CHECK(preprojective_total_dim(a1()) == 1);
    CHECK(preprojective_total_dim(a2()) == 4);
    CHECK(preprojective_total_dim(a3()) == 10);
}

TEST_CASE("interval combinatorics oracle spot values") {
    // kA_2: pentagon entries
    CHECK(ar_oracle_hom(2, {0, 1, 0}, {0, 0, 0}, 2) == 1);  // hom(P1, S1)
    CHECK(ar_oracle_hom(2, {0, 0, 0}, {1, 1, 0}, 2) == 0);  // hom(S1, P2)
    CHECK(ar_oracle_hom(2, {0, 1, 0}, {1, 1, 0}, 2) == 0);  // hom(P1, P2)
    CHECK(ar_oracle_hom(2, {1, 1, 0}, {0, 1, 0}, 2) == 1);  // hom(P2, P1)
    for (int lo = 0; lo < 2; ++lo)
        for (int hi = lo; hi < 2; ++hi) CHECK(ar_oracle_hom(2, {lo, hi, 0}, {lo, hi, 0}, 2) == 1);
    // kA_1: identity table on {P_1, P_1[1]}
    CHECK(ar_oracle_hom(1, {0, 0, 0}, {0, 0, 1}, 2) == 0);
    CHECK(ar_oracle_hom(1, {0, 0, 1}, {0, 0, 1}, 2) == 1);
}

TEST_CASE("window monotonicity of check tables") {
    VerifyOptions small;
    small.t_window = Window(-6, 1, -3, 0);
    small.e_window = Window(-1, 6, -1, 3);
    VerifyOptions big;
    big.t_window = Window(-8, 2, -4, 1);
    big.e_window = Window(-2, 8, -1, 4);
    for (const auto& name : {"iota-ff", "rkd", "sg"}) {
        CheckReport rs = run_check(name, a2(), small);
        CheckReport rb = run_check(name, a2(), big);
        CHECK(rs.match);
        CHECK(rb.match);
        // interior cells of the smaller run keep their values in the bigger run
        const Window& w = rs.computed.window;
        for (int c = w.cmin + 1; c < w.cmax; ++c)
            for (int b = w.amin; b <= w.amax; ++b)
                if (rb.computed.window.interior({c, b}))
                    CHECK(rs.computed.at({c, b}) == rb.computed.at({c, b}));
    }
}

TEST_CASE("reports are reproducible bit-exactly") {
    VerifyOptions opt;
    opt.seed = 99;
    for (const auto& name : {"orthogonality", "torsion-pairs", "cluster"}) {
        CheckReport r1 = run_check(name, a2(), opt);
        CheckReport r2 = run_check(name, a2(), opt);
        CHECK(dump_payload(strip_runtime(report_to_json(r1))) ==
              dump_payload(strip_runtime(report_to_json(r2))));
    }
}

TEST_CASE("json serialization shape") {
    VerifyOptions opt;
    CheckReport rep = run_check("iota-ff", a2(), opt);
    json j = report_to_json(rep);
    CHECK(j["check"] == "iota-ff");
    CHECK(j["match"] == true);
    CHECK(j.contains("expected"));
    CHECK(j.contains("computed"));
    CHECK(j.contains("runtime_ms"));
    CHECK(strip_runtime(j).contains("runtime_ms") == false);
    // cells are sorted by (c, b)
    auto cells = j["computed"]["cells"];
    for (size_t i = 1; i < cells.size(); ++i) {
        auto a = std::pair<int, int>(cells[i - 1]["c"], cells[i - 1]["b"]);
        auto b = std::pair<int, int>(cells[i]["c"], cells[i]["b"]);
        CHECK(a < b);
    }
}
