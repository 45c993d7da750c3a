#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dimfn {

/// Exact rational number backed by GMP. Always kept in lowest terms with a
/// positive denominator; zero is 0/1.
class Rat {
public:
    Rat() = default;
    Rat(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    Rat(long num, long den);
    explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    /// Accepts `p`, `-p`, `p/q`.
    static Rat parse(std::string_view text);

    const mpq_class& raw() const { return v_; }
    std::string str() const;

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    Rat abs() const { return sign() < 0 ? -*this : *this; }
    std::size_t hash() const;

private:
    mpq_class v_{0};
};

}  // namespace dimfn

template <>
struct std::hash<dimfn::Rat> {
    std::size_t operator()(const dimfn::Rat& r) const { return r.hash(); }
};
