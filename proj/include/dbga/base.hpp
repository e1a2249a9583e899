#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dbga {

// Error taxonomy shared by the whole engine. The kind maps to the CLI exit
// code (parse 2, precondition 3, cap 4, mismatch 5).
enum class ErrKind { Parse = 2, Precondition = 3, Cap = 4, Mismatch = 5 };

class EngineError : public std::runtime_error {
  public:
    EngineError(ErrKind kind, std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), kind_(kind), name_(std::move(name)) {}
    ErrKind kind() const { return kind_; }
    const std::string& name() const { return name_; }

  private:
    ErrKind kind_;
    std::string name_;
};

inline EngineError err_parse(const std::string& what) { return EngineError(ErrKind::Parse, "ParseError", what); }
inline EngineError err_pre(const char* name, const std::string& what) { return EngineError(ErrKind::Precondition, name, what); }
inline EngineError err_cap(const char* name, const std::string& what) { return EngineError(ErrKind::Cap, name, what); }

// (cohomological, Adams) degree. The differential always has bidegree (1,0).
struct Bidegree {
    int c = 0;
    int b = 0;
    friend Bidegree operator+(Bidegree x, Bidegree y) { return {x.c + y.c, x.b + y.b}; }
    friend Bidegree operator-(Bidegree x, Bidegree y) { return {x.c - y.c, x.b - y.b}; }
    friend bool operator==(Bidegree x, Bidegree y) { return x.c == y.c && x.b == y.b; }
    friend bool operator!=(Bidegree x, Bidegree y) { return !(x == y); }
    friend bool operator<(Bidegree x, Bidegree y) { return x.c != y.c ? x.c < y.c : x.b < y.b; }
};

inline const Bidegree kDiffDegree{1, 0};

// Finite rectangle of bidegrees used to truncate infinite graded objects.
struct Window {
    int cmin = 0, cmax = 0, amin = 0, amax = 0;
    Window() = default;
    Window(int c0, int c1, int a0, int a1) : cmin(c0), cmax(c1), amin(a0), amax(a1) {
        if (cmin > cmax || amin > amax)
            throw err_pre("InvalidWindow", "window bounds out of order");
    }
    bool contains(Bidegree d) const { return d.c >= cmin && d.c <= cmax && d.b >= amin && d.b <= amax; }
    // Cells on the cohomological edges cannot be compared across windows.
    bool on_boundary(Bidegree d) const { return d.c == cmin || d.c == cmax; }
    bool interior(Bidegree d) const { return contains(d) && !on_boundary(d); }
    std::vector<Bidegree> cells() const {
        std::vector<Bidegree> out;
        for (int c = cmin; c <= cmax; ++c)
            for (int b = amin; b <= amax; ++b) out.push_back({c, b});
        return out;
    }
};

// Map bidegree -> dimension; absent key means 0. Every windowed result
// records the window it was computed in.
struct BidegreeTable {
    Window window;
    std::map<Bidegree, int> cells;

    int at(Bidegree d) const {
        auto it = cells.find(d);
        return it == cells.end() ? 0 : it->second;
    }
    void set(Bidegree d, int dim) {
        if (dim != 0) cells[d] = dim;
    }
    bool equal_interior(const BidegreeTable& other) const {
        for (int c = window.cmin + 1; c < window.cmax; ++c)
            for (int b = window.amin; b <= window.amax; ++b)
                if (at({c, b}) != other.at({c, b})) return false;
        return true;
    }
    // Restrict to one Adams row, keeping the window.
    BidegreeTable adams_row(int b) const {
        BidegreeTable t;
        t.window = window;
        for (auto& [d, n] : cells)
            if (d.b == b) t.cells[d] = n;
        return t;
    }
    friend bool operator==(const BidegreeTable& x, const BidegreeTable& y) { return x.cells == y.cells; }
};

}  // namespace dbga
