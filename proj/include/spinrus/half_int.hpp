// Exact half-integer quantum numbers (j, m, Sz) stored as twice their value.

#pragma once

#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace spinrus {

class HalfInt {
public:
    constexpr HalfInt() = default;
    constexpr HalfInt(int whole) : twice_(2 * whole) {}

    static constexpr HalfInt from_twice(int twice) {
        HalfInt h;
        h.twice_ = twice;
        return h;
    }

    constexpr int twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr double value() const { return 0.5 * twice_; }

    // Exact integer value; only valid when is_integer().
    constexpr int whole() const {
        if (!is_integer()) {
            throw std::domain_error("HalfInt::whole() on a proper half-integer");
        }
        return twice_ / 2;
    }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) {
        return from_twice(a.twice_ + b.twice_);
    }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) {
        return from_twice(a.twice_ - b.twice_);
    }
    constexpr HalfInt operator-() const { return from_twice(-twice_); }

    friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

    friend HalfInt abs(HalfInt a) { return from_twice(std::abs(a.twice_)); }

    std::string str() const {
        if (is_integer()) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

private:
    int twice_ = 0;
};

// Throws unless (j, m) is a valid angular-momentum pair: j >= 0, |m| <= j,
// and j - m an integer.
inline void require_jm(HalfInt j, HalfInt m) {
    if (j.twice() < 0) {
        throw std::domain_error("negative angular momentum j = " + j.str());
    }
    if (std::abs(m.twice()) > j.twice()) {
        throw std::domain_error("|m| > j for (j, m) = (" + j.str() + ", " + m.str() + ")");
    }
    if ((j.twice() + m.twice()) % 2 != 0) {
        throw std::domain_error("j and m differ by a non-integer: (" + j.str() + ", " +
                                m.str() + ")");
    }
}

}  // namespace spinrus
