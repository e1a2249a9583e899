#include "dbga/io_json.hpp"

#include <sstream>

namespace dbga {

json window_to_json(const Window& w) {
    return json{{"c", {w.cmin, w.cmax}}, {"b", {w.amin, w.amax}}};
}

json table_to_json(const BidegreeTable& t) {
    json cells = json::array();
    for (const auto& [d, n] : t.cells) {
        if (n == 0) continue;
        cells.push_back(json{{"c", d.c},
                             {"b", d.b},
                             {"dim", n},
                             {"boundary", t.window.on_boundary(d)}});
    }
    return json{{"window", window_to_json(t.window)}, {"cells", cells}};
}

json report_to_json(const CheckReport& r) {
    json asserts = json::array();
    for (const auto& [name, ok] : r.assertions) asserts.push_back(json{{"name", name}, {"passed", ok}});
    json excluded = json::array();
    for (const auto& d : r.excluded_boundary) excluded.push_back(json{{"c", d.c}, {"b", d.b}});
    return json{{"check", r.check},
                {"inputs", r.inputs},
                {"expected", table_to_json(r.expected)},
                {"computed", table_to_json(r.computed)},
                {"assertions", asserts},
                {"match", r.match},
                {"excluded_boundary", excluded},
                {"runtime_ms", r.runtime_ms}};
}

json orbit_result_to_json(const OrbitHomResult& r) {
    json by = json::object();
    for (const auto& [p, d] : r.by_power) by[std::to_string(p)] = d;
    return json{{"by_power", by}, {"total", r.total}, {"converged", r.converged}};
}

json cluster_to_json(const ClusterTable& t) {
    json pairs = json::array();
    for (size_t i = 0; i < t.names.size(); ++i)
        for (size_t j = 0; j < t.names.size(); ++j) {
            json e = orbit_result_to_json(t.entries[i][j]);
            e["X"] = t.names[i];
            e["Y"] = t.names[j];
            pairs.push_back(e);
        }
    return json{{"objects", t.names}, {"pairs", pairs}};
}

json pairs_to_json(const PairsReport& r) {
    return json{{"seed", r.seed},
                {"trials", r.trials},
                {"failures", r.failures},
                {"failed_properties", r.failed_properties}};
}

std::string table_to_csv(const BidegreeTable& t) {
    std::ostringstream out;
    out << "c,b,dim,boundary\n";
    for (const auto& [d, n] : t.cells) {
        if (n == 0) continue;
        out << d.c << "," << d.b << "," << n << "," << (t.window.on_boundary(d) ? 1 : 0) << "\n";
    }
    return out.str();
}

std::string table_to_markdown(const BidegreeTable& t) {
    std::ostringstream out;
    out << "| c \\ b |";
    for (int b = t.window.amin; b <= t.window.amax; ++b) out << " " << b << " |";
    out << "\n|---|";
    for (int b = t.window.amin; b <= t.window.amax; ++b) out << "---|";
    out << "\n";
    for (int c = t.window.cmax; c >= t.window.cmin; --c) {
        out << "| " << c << " |";
        for (int b = t.window.amin; b <= t.window.amax; ++b) {
            int v = t.at({c, b});
            out << " " << (v ? std::to_string(v) : ".") << " |";
        }
        out << "\n";
    }
    return out.str();
}

std::string dump_payload(const json& j) { return j.dump(2) + "\n"; }

json strip_runtime(json j) {
    if (j.is_object()) {
        j.erase("runtime_ms");
        for (auto& [k, v] : j.items()) v = strip_runtime(v);
    } else if (j.is_array()) {
        for (auto& v : j) v = strip_runtime(v);
    }
    return j;
}

}  // namespace dbga
