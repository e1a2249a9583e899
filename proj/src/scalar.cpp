#include "dbga/scalar.hpp"

namespace dbga {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == d) return true;
        if (n % d == 0) return false;
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
        return (std::uint64_t)((__uint128_t)a * b % m);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
        std::uint64_t r = 1;
        a %= m;
        while (e) {
            if (e & 1) r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

namespace {

long long checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw err_pre("CoefficientOverflow", "exact rational arithmetic exceeded 64-bit range");
    return (long long)v;
}

long long mod_pos(__int128 v, std::uint64_t p) {
    __int128 m = (__int128)p;
    __int128 r = v % m;
    if (r < 0) r += m;
    return (long long)r;
}

}  // namespace

void Scalar::normalize() {
    if (!f_.rational()) {
        num_ = mod_pos(num_, f_.p);
        den_ = 1;
        return;
    }
    if (num_ == 0) { den_ = 1; return; }
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    long long g = std::gcd(std::llabs(num_), den_);
    num_ /= g;
    den_ /= g;
}

Scalar Scalar::integer(Field f, long long n) {
    Scalar s(f, n, 1);
    s.normalize();
    return s;
}

Scalar Scalar::fraction(Field f, long long num, long long den) {
    if (den == 0) throw err_pre("DivisionByZero", "zero denominator");
    if (!f.rational()) {
        Scalar d = integer(f, den);
        return integer(f, num) * d.inverse();
    }
    Scalar s(f, num, den);
    s.normalize();
    return s;
}

Scalar Scalar::operator-() const {
    Scalar s(f_, f_.rational() ? -num_ : num_ == 0 ? 0 : (long long)f_.p - num_, den_);
    return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
    if (f_ != o.f_) throw err_pre("FieldMismatch", "mixed ground fields");
    if (!f_.rational()) {
        Scalar s(f_, mod_pos((__int128)num_ + o.num_, f_.p), 1);
        return s;
    }
    __int128 n = (__int128)num_ * o.den_ + (__int128)o.num_ * den_;
    __int128 d = (__int128)den_ * o.den_;
    __int128 g = 1;
    if (n != 0) {
        __int128 a = n < 0 ? -n : n, b = d;
        while (b) { __int128 t = a % b; a = b; b = t; }
        g = a;
    } else {
        g = d;
    }
    Scalar s(f_, checked(n / g), checked(d / g));
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
    if (f_ != o.f_) throw err_pre("FieldMismatch", "mixed ground fields");
    if (!f_.rational()) {
        Scalar s(f_, mod_pos((__int128)num_ * o.num_, f_.p), 1);
        return s;
    }
    // Cross-cancel before multiplying to keep magnitudes small.
    long long a = num_, b = den_, c = o.num_, d = o.den_;
    long long g1 = std::gcd(std::llabs(a), d);
    long long g2 = std::gcd(std::llabs(c), b);
    a /= g1; d /= g1;
    c /= g2; b /= g2;
    Scalar s(f_, checked((__int128)a * c), checked((__int128)b * d));
    s.normalize();
    return s;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw err_pre("DivisionByZero", "inverse of zero");
    if (f_.rational()) {
        Scalar s(f_, den_, num_);
        s.normalize();
        return s;
    }
    // Fermat: p is prime, so a^(p-2) inverts a.
    std::uint64_t p = f_.p;
    auto mulmod = [&](std::uint64_t x, std::uint64_t y) { return (std::uint64_t)((__uint128_t)x * y % p); };
    std::uint64_t r = 1, a = (std::uint64_t)num_, e = p - 2;
    while (e) {
        if (e & 1) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return Scalar(f_, (long long)r, 1);
}

std::string Scalar::str() const {
    if (f_.rational() && den_ != 1) return std::to_string(num_) + "/" + std::to_string(den_);
    return std::to_string(num_);
}

}  // namespace dbga
