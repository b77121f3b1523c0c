// Signed square roots of exact rationals: the value domain of Clebsch-Gordan
// coefficients. Arithmetic on the radicand stays in arbitrary precision; only
// value() rounds to double.

#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinrus {

class ExactRadical {
public:
    ExactRadical() : sign_(0), radicand_(0) {}

    ExactRadical(int sign, mpq_class radicand) : sign_(sign), radicand_(std::move(radicand)) {
        if (radicand_ < 0) {
            throw std::domain_error("ExactRadical: negative radicand");
        }
        radicand_.canonicalize();
        if (radicand_ == 0) sign_ = 0;
        if (sign_ == 0 && radicand_ != 0) {
            throw std::domain_error("ExactRadical: zero sign with nonzero radicand");
        }
        if (sign_ != 0) sign_ = sign_ > 0 ? 1 : -1;
    }

    static ExactRadical zero() { return ExactRadical(); }
    static ExactRadical one() { return ExactRadical(1, mpq_class(1)); }

    int sign() const { return sign_; }
    const mpq_class& radicand() const { return radicand_; }

    // The exact square, sign dropped.
    mpq_class squared() const { return sign_ == 0 ? mpq_class(0) : radicand_; }

    double value() const { return sign_ * std::sqrt(radicand_.get_d()); }

    friend ExactRadical operator*(const ExactRadical& a, const ExactRadical& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return zero();
        return ExactRadical(a.sign_ * b.sign_, a.radicand_ * b.radicand_);
    }

    ExactRadical operator-() const {
        if (sign_ == 0) return zero();
        return ExactRadical(-sign_, radicand_);
    }

    friend bool operator==(const ExactRadical& a, const ExactRadical& b) {
        return a.sign_ == b.sign_ && a.radicand_ == b.radicand_;
    }

    std::string str() const {
        if (sign_ == 0) return "0";
        std::string s = sign_ < 0 ? "-" : "+";
        return s + "sqrt(" + radicand_.get_str() + ")";
    }

private:
    int sign_;
    mpq_class radicand_;
};

}  // namespace spinrus
