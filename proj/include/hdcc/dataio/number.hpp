#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string_view>

namespace hdcc::dataio {

/// Longest accepted field. The generated readers use the same limit.
inline constexpr std::size_t kMaxFieldLength = 63;

namespace detail {

inline std::size_t digits(std::string_view s, std::size_t i)
{
    std::size_t n = 0;
    while (i + n < s.size() && std::isdigit(static_cast<unsigned char>(s[i + n])))
        ++n;
    return n;
}

} // namespace detail

/// `[+-]? (D+ (. D*)? | . D+) ([eE] [+-]? D+)?` with nothing else around it.
/// No whitespace, no inf/nan, no hex: the emitted C readers check the same
/// grammar before calling strtod, so both sides accept exactly the same text.
inline bool is_decimal_number(std::string_view s)
{
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-'))
        ++i;
    const std::size_t int_digits = detail::digits(s, i);
    i += int_digits;
    std::size_t frac_digits = 0;
    if (i < s.size() && s[i] == '.') {
        ++i;
        frac_digits = detail::digits(s, i);
        i += frac_digits;
    }
    if (int_digits == 0 && frac_digits == 0)
        return false;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-'))
            ++i;
        const std::size_t exp_digits = detail::digits(s, i);
        if (exp_digits == 0)
            return false;
        i += exp_digits;
    }
    return i == s.size();
}

inline bool is_integer(std::string_view s)
{
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-'))
        ++i;
    const std::size_t n = detail::digits(s, i);
    return n > 0 && i + n == s.size();
}

/// Locale-independent, correctly rounded. Overflow and underflow are
/// rejected.
inline std::optional<double> parse_real(std::string_view s)
{
    if (s.size() > kMaxFieldLength || !is_decimal_number(s))
        return std::nullopt;
    if (s.front() == '+')
        s.remove_prefix(1);
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

inline std::optional<std::int64_t> parse_integer(std::string_view s)
{
    if (s.size() > kMaxFieldLength || !is_integer(s))
        return std::nullopt;
    if (s.front() == '+')
        s.remove_prefix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

} // namespace hdcc::dataio
