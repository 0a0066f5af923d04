#include "rps/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace rps {

namespace {

std::string strip_negative_zero(std::string s) {
    if (!s.empty() && s.front() == '-' && s.find_first_not_of("0.", 1) == std::string::npos) {
        s.erase(0, 1);
    }
    return s;
}

}  // namespace

std::string format_fixed(double value, int decimals) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, decimals);
    if (ec != std::errc{}) return "nan";
    return strip_negative_zero(std::string(buf.data(), end));
}

std::string format_shortest(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) return "nan";
    return strip_negative_zero(std::string(buf.data(), end));
}

}  // namespace rps
