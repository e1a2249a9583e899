#include "dbga/io_json.hpp"
#include "dbga/parallel.hpp"
#include "dbga/parse.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace dbga;

namespace {

struct GlobalOpts {
    std::string field = "q";
    std::vector<int> window;  // cmin cmax amin amax
    std::uint64_t seed = 1;
    int jobs = 0;
    std::string out;
    std::string format = "json";
    std::string golden_dir;
};

Field parse_field(const std::string& s) {
    if (s == "q") return field_rationals();
    if (s.rfind("p:", 0) == 0) return field_prime(std::stoull(s.substr(2)));
    throw err_parse("field must be q or p:<prime>");
}

Window parse_window(const std::vector<int>& w, Window dflt) {
    if (w.empty()) return dflt;
    if (w.size() != 4) throw err_parse("--window needs cmin cmax amin amax");
    return Window(w[0], w[1], w[2], w[3]);
}

std::shared_ptr<Presentation> load_quiver(const std::string& path, Field f) {
    if (path.empty()) throw err_parse("a quiver file is required (-q)");
    return parse_presentation_file(path, f);
}

struct AlgSpec {
    std::string kind = "path";  // path | cyX | cyN | trivX | trivN
    int N = 0;
};

AlgSpec parse_alg(const std::string& s) {
    AlgSpec a;
    if (s == "path") a.kind = "path";
    else if (s == "cyX") a.kind = "cyX";
    else if (s.rfind("cyN=", 0) == 0) { a.kind = "cyN"; a.N = std::stoi(s.substr(4)); }
    else if (s == "trivX") a.kind = "trivX";
    else if (s.rfind("trivN=", 0) == 0) { a.kind = "trivN"; a.N = std::stoi(s.substr(6)); }
    else throw err_parse("unknown algebra spec: " + s);
    return a;
}

std::shared_ptr<Presentation> make_algebra(std::shared_ptr<Presentation> base, const AlgSpec& a) {
    if (a.kind == "path") return base;
    if (a.kind == "cyX") return cy_completion(base, CompletionMode::BigradedX);
    if (a.kind == "cyN") return cy_completion(base, CompletionMode::CollapsedN, a.N);
    if (a.kind == "trivX") return trivial_extension(base, CompletionMode::BigradedX).ext;
    return trivial_extension(base, CompletionMode::CollapsedN, a.N).ext;
}

// module specs for hom/psi: free | aug | proj:<vertex> | simple:<vertex>
PerfectModule make_module(const std::string& spec, std::shared_ptr<Presentation> base,
                          std::shared_ptr<Presentation> alg, const AlgSpec& a, Bidegree shift) {
    PerfectModule m = [&]() {
        if (spec == "free") return free_module(alg);
        if (spec == "aug") {
            if (a.kind != "cyX" && a.kind != "cyN")
                throw err_pre("UnsupportedType", "aug module requires a completion algebra");
            auto theta = cy_theta(base, a.kind == "cyX" ? CompletionMode::BigradedX
                                                        : CompletionMode::CollapsedN,
                                  a.N);
            return minimize(restrict_along_augmentation(free_module(base), alg, theta));
        }
        if (spec.rfind("proj:", 0) == 0)
            return projective_summand(alg, alg->vertex_index(spec.substr(5)));
        if (spec.rfind("simple:", 0) == 0) {
            int v = base->vertex_index(spec.substr(7));
            PerfectModule repl = projective_replacement(simple_module(base, v));
            if (a.kind == "path") return repl;
            if (a.kind == "cyX" || a.kind == "cyN") {
                auto theta = cy_theta(base, a.kind == "cyX" ? CompletionMode::BigradedX
                                                            : CompletionMode::CollapsedN,
                                      a.N);
                return minimize(restrict_along_augmentation(repl, alg, theta));
            }
            throw err_pre("UnsupportedType", "simple modules over extensions are not exposed here");
        }
        throw err_parse("unknown module spec: " + spec);
    }();
    return shift == Bidegree{0, 0} ? m : shift_module(m, shift);
}

void emit(const GlobalOpts& g, const std::string& payload) {
    if (g.out.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(g.out);
    if (!f) throw err_pre("IoError", "cannot write " + g.out);
    f << payload;
    std::cout << "wrote " << g.out << "\n";
}

std::string render_table(const GlobalOpts& g, const BidegreeTable& t) {
    if (g.format == "csv") return table_to_csv(t);
    if (g.format == "markdown") return table_to_markdown(t);
    return dump_payload(table_to_json(t));
}

// golden comparison: record on first run, fail on drift afterwards
int golden_compare(const GlobalOpts& g, const std::string& name, const std::string& payload) {
    if (g.golden_dir.empty()) return 0;
    std::string path = g.golden_dir + "/" + name + ".golden";
    std::ifstream in(path);
    if (!in) {
        std::ofstream outf(path);
        if (!outf) throw err_pre("IoError", "cannot write golden file " + path);
        outf << payload;
        std::cerr << "golden: recorded " << path << "\n";
        return 0;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    if (buf.str() != payload) {
        std::cerr << "golden: drift detected against " << path << "\n";
        return 5;
    }
    std::cerr << "golden: matches " << path << "\n";
    return 0;
}

std::string sanitize(std::string s) {
    for (auto& c : s)
        if (!isalnum((unsigned char)c)) c = '_';
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computational engine for differential bigraded quiver algebras"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalOpts g;
    app.add_option("--field", g.field, "ground field: q or p:<prime>");
    app.add_option("--window", g.window, "window: cmin cmax amin amax")->expected(4);
    app.add_option("--seed", g.seed, "seed for randomized checks");
    app.add_option("--jobs", g.jobs, "worker threads for cell computations");
    app.add_option("--out", g.out, "output file (default stdout)");
    app.add_option("--format", g.format, "json | csv | markdown");
    app.add_option("--golden", g.golden_dir, "golden directory: record or compare payloads");

    std::string quiver, mode = "X", alg_s = "path", lhs = "free", rhs = "free", module = "free";
    std::string check_name, compute_what;
    std::vector<int> lhs_shift{0, 0}, rhs_shift{0, 0};
    int N = 3, m = 2, cap = 12;

    auto* build = app.add_subcommand("build", "construct an algebra presentation");
    std::string build_what;
    build->add_option("what", build_what, "path-algebra | cy | triv-ext")->required();
    build->add_option("-q,--quiver", quiver, "quiver file")->required();
    build->add_option("--mode", mode, "X or N=<n>");

    auto* compute = app.add_subcommand("compute", "run a computation");
    compute->add_option("what", compute_what, "cohomology | hom | orbit-hom | cluster | psi | collapse")
        ->required();
    compute->add_option("-q,--quiver", quiver, "quiver file")->required();
    compute->add_option("--alg", alg_s, "path | cyX | cyN=<n> | trivX | trivN=<n>");
    compute->add_option("--lhs", lhs, "module spec: free | aug | proj:<v> | simple:<v>");
    compute->add_option("--rhs", rhs, "module spec");
    compute->add_option("--lhs-shift", lhs_shift, "shift c b for lhs")->expected(2);
    compute->add_option("--rhs-shift", rhs_shift, "shift c b for rhs")->expected(2);
    compute->add_option("--X", lhs, "orbit source module spec");
    compute->add_option("--Y", rhs, "orbit target module spec");
    compute->add_option("--module", module, "psi input module spec");
    compute->add_option("--m", m, "cluster / orbit parameter");
    compute->add_option("--N", N, "collapse parameter");
    compute->add_option("--cap", cap, "orbit power cap");

    auto* verify = app.add_subcommand("verify", "run a named verification check");
    verify->add_option("check", check_name, "iota-ff | rkd | sg | orthogonality | torsion-pairs | collapse | cluster")
        ->required();
    verify->add_option("-q,--quiver", quiver, "quiver file")->required();
    verify->add_option("--N", N, "collapse parameter");
    verify->add_option("--m", m, "cluster parameter");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Field f = parse_field(g.field);
        if (g.jobs >= 1) set_worker_threads(g.jobs);
        auto base = load_quiver(quiver, f);

        if (build->parsed()) {
            std::shared_ptr<Presentation> alg;
            Window w = parse_window(g.window, Window(-6, 2, -3, 1));
            if (build_what == "path-algebra") {
                alg = base;
            } else if (build_what == "cy") {
                if (mode == "X") alg = cy_completion(base, CompletionMode::BigradedX);
                else if (mode.rfind("N=", 0) == 0)
                    alg = cy_completion(base, CompletionMode::CollapsedN, std::stoi(mode.substr(2)));
                else throw err_parse("--mode must be X or N=<n>");
            } else if (build_what == "triv-ext") {
                if (mode == "X") alg = trivial_extension(base, CompletionMode::BigradedX).ext;
                else if (mode.rfind("N=", 0) == 0)
                    alg = trivial_extension(base, CompletionMode::CollapsedN, std::stoi(mode.substr(2))).ext;
                else throw err_parse("--mode must be X or N=<n>");
                w = parse_window(g.window, Window(-1, mode == "X" ? 2 : std::stoi(mode.substr(2)) + 1,
                                                  mode == "X" ? -1 : 0, mode == "X" ? 2 : 0));
            } else {
                throw err_parse("build expects path-algebra, cy or triv-ext");
            }
            std::string text = serialize_presentation(*alg);
            BidegreeTable dims = alg->dimension_table(w);
            std::ostringstream payload;
            payload << text << "# dimension table (graded, pre-cohomology)\n";
            for (const auto& [d, n] : dims.cells)
                payload << "# dim(" << d.c << "," << d.b << ") = " << n << "\n";
            emit(g, payload.str());
            return golden_compare(g, sanitize("build_" + build_what + "_" + mode + "_" + quiver),
                                  payload.str());
        }

        if (verify->parsed()) {
            VerifyOptions opt;
            opt.seed = g.seed;
            opt.N = N;
            opt.m = m;
            if (!g.window.empty()) {
                Window w = parse_window(g.window, opt.t_window);
                opt.t_window = w;
                opt.e_window = w;
            }
            CheckReport rep = run_check(check_name, base, opt);
            std::string payload = dump_payload(report_to_json(rep));
            emit(g, payload);
            std::cerr << "check " << check_name << ": " << (rep.match ? "match" : "MISMATCH") << " ("
                      << rep.runtime_ms << " ms)\n";
            int gc = golden_compare(g, sanitize("verify_" + check_name + "_" + quiver),
                                    dump_payload(strip_runtime(report_to_json(rep))));
            if (gc != 0) return gc;
            return rep.match ? 0 : 5;
        }

        // compute subcommands
        AlgSpec aspec = parse_alg(alg_s);
        auto alg = make_algebra(base, aspec);
        std::string payload;
        int exit_code = 0;
        if (compute_what == "cohomology") {
            Window w = parse_window(g.window, aspec.kind == "path" ? Window(-2, 2, -1, 1)
                                                                   : Window(-8, 2, -4, 1));
            payload = render_table(g, algebra_cohomology(*alg, w));
        } else if (compute_what == "hom") {
            Window w = parse_window(g.window, Window(-4, 4, -2, 2));
            PerfectModule X = make_module(lhs, base, alg, aspec, {lhs_shift[0], lhs_shift[1]});
            PerfectModule Y = make_module(rhs, base, alg, aspec, {rhs_shift[0], rhs_shift[1]});
            payload = render_table(g, hom_table(X, Y, w));
        } else if (compute_what == "collapse") {
            if (aspec.kind != "cyX" && aspec.kind != "trivX")
                throw err_pre("UnsupportedType", "compute collapse expects a bigraded algebra (--alg cyX or trivX)");
            auto collapsed = collapse(*alg, N);
            Window w = parse_window(g.window, Window(-2 * N, N + 1, 0, 0));
            payload = render_table(g, algebra_cohomology(*collapsed, w));
        } else if (compute_what == "orbit-hom") {
            auto dual = dual_bimodule(base);
            EndofunctorData F = sigma_functor(base, dual, m);
            PerfectModule X = make_module(lhs, base, base, AlgSpec{"path", 0}, {lhs_shift[0], lhs_shift[1]});
            PerfectModule Y = make_module(rhs, base, base, AlgSpec{"path", 0}, {rhs_shift[0], rhs_shift[1]});
            OrbitHomResult r = orbit_hom(X, Y, F, cap);
            json j = orbit_result_to_json(r);
            j["X"] = lhs;
            j["Y"] = rhs;
            j["m"] = m;
            payload = dump_payload(j);
            if (!r.converged) exit_code = 4;
        } else if (compute_what == "cluster") {
            auto dual = dual_bimodule(base);
            ClusterTable t = cluster_table(base, dual, m, cap);
            json j = cluster_to_json(t);
            j["m"] = m;
            j["seed"] = g.seed;
            payload = dump_payload(j);
        } else if (compute_what == "psi") {
            if (aspec.kind != "cyX") throw err_pre("UnsupportedType", "psi expects --alg cyX");
            auto dual = dual_bimodule(base);
            std::vector<PerfectModule> panel{free_module(base)};
            for (int v = 0; v < (int)base->vertices().size(); ++v)
                panel.push_back(projective_summand(base, v));
            PerfectModule M = module == "xshift"
                                  ? shift_module(free_module(alg), {0, 1})
                                  : make_module(module, base, alg, aspec, {0, 0});
            PerfectModule R = psi_stabilize(M, base, dual, panel);
            Window w = parse_window(g.window, Window(-4, 4, -2, 2));
            payload = render_table(g, hom_table(R, free_module(base), w));
        } else {
            throw err_parse("unknown compute subcommand: " + compute_what);
        }
        emit(g, payload);
        int gc = golden_compare(g, sanitize("compute_" + compute_what + "_" + alg_s + "_" + quiver),
                                payload);
        return gc != 0 ? gc : exit_code;
    } catch (const EngineError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return (int)e.kind();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
