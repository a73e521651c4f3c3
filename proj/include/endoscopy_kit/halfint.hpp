#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace ek {

/// A half-integer, stored exactly as twice its value.
///
/// Archimedean exponent parameters in this library live in (1/2)Z; storing
/// 2x as an integer avoids floating-point identity headaches.
class HalfInt {
public:
    HalfInt() : two_x_(0) {}
    explicit HalfInt(int two_x) : two_x_(two_x) {}

    static HalfInt from_int(int x) { return HalfInt(2 * x); }

    /// Parse a decimal string such as "0.5", "-2", "1.0"; rejects values
    /// that are not half-integers.
    static HalfInt parse(const std::string& s) {
        double v = std::stod(s);
        return from_double(v);
    }

    static HalfInt from_double(double v) {
        double t = 2.0 * v;
        double r = std::round(t);
        if (std::abs(t - r) > 1e-9) throw std::invalid_argument("not a half-integer: " + std::to_string(v));
        return HalfInt(static_cast<int>(r));
    }

    int two_x() const { return two_x_; }
    bool is_integer() const { return two_x_ % 2 == 0; }
    int as_integer() const {
        if (!is_integer()) throw std::domain_error("half-integer is not an integer");
        return two_x_ / 2;
    }
    double value() const { return two_x_ / 2.0; }

    HalfInt operator-() const { return HalfInt(-two_x_); }
    friend HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.two_x_ + b.two_x_); }
    friend HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.two_x_ - b.two_x_); }
    friend bool operator==(HalfInt a, HalfInt b) { return a.two_x_ == b.two_x_; }
    friend bool operator!=(HalfInt a, HalfInt b) { return a.two_x_ != b.two_x_; }
    friend bool operator<(HalfInt a, HalfInt b) { return a.two_x_ < b.two_x_; }

    std::string str() const {
        if (is_integer()) return std::to_string(two_x_ / 2);
        return std::to_string(two_x_) + "/2";
    }

private:
    int two_x_;
};

} // namespace ek
