// Locale-independent floating-point formatting, fixed at 12 significant
// digits for every file the toolkit writes.

#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <system_error>

namespace spinrus {

inline constexpr int kOutputDigits = 12;

inline std::string format_sig(double value, int digits = kOutputDigits) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, digits);
    if (res.ec != std::errc()) throw std::runtime_error("format_sig: conversion failed");
    return std::string(buf, res.ptr);
}

// Nearest double to the 12-significant-digit decimal rendering, so numbers
// embedded in JSON documents round-trip through the same formatting rule.
inline double round_sig(double value, int digits = kOutputDigits) {
    const std::string s = format_sig(value, digits);
    double out = value;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

}  // namespace spinrus
