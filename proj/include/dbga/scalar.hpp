#pragma once

#include "dbga/base.hpp"

#include <cstdlib>
#include <numeric>
#include <string>

namespace dbga {

// Ground field descriptor: p == 0 means the rationals, otherwise Z/p.
struct Field {
    std::uint64_t p = 0;
    bool rational() const { return p == 0; }
    friend bool operator==(Field x, Field y) { return x.p == y.p; }
    friend bool operator!=(Field x, Field y) { return x.p != y.p; }
};

bool is_prime(std::uint64_t n);

inline Field field_rationals() { return Field{0}; }
inline Field field_prime(std::uint64_t p) {
    if (!is_prime(p)) throw err_pre("NotPrime", "characteristic " + std::to_string(p) + " is not prime");
    return Field{p};
}

// Exact field element. Rationals are kept in lowest terms with positive
// denominator; prime-field values live in [0, p) with den == 1. Arithmetic
// never rounds; 64-bit overflow throws instead of wrapping.
class Scalar {
  public:
    Scalar() = default;
    static Scalar zero(Field f) { return Scalar(f, 0, 1); }
    static Scalar one(Field f) { return Scalar(f, 1, 1); }
    static Scalar integer(Field f, long long n);
    static Scalar fraction(Field f, long long num, long long den);

    Field field() const { return f_; }
    bool is_zero() const { return num_ == 0; }
    long long num() const { return num_; }
    long long den() const { return den_; }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const { return *this + (-o); }
    Scalar operator*(const Scalar& o) const;
    Scalar inverse() const;
    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        return x.f_ == y.f_ && x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    std::string str() const;

  private:
    Scalar(Field f, long long n, long long d) : f_(f), num_(n), den_(d) {}
    void normalize();

    Field f_{0};
    long long num_ = 0;
    long long den_ = 1;
};

}  // namespace dbga
