#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace triadic {

/// Three-way decision: accept (0), remain undecided (1/2), reject (1).
enum class Verdict : std::uint8_t { Accept = 0, Boundary = 1, Reject = 2 };

inline constexpr std::array<Verdict, 3> kAllVerdicts{Verdict::Accept, Verdict::Boundary,
                                                     Verdict::Reject};

constexpr std::size_t index_of(Verdict v) noexcept { return static_cast<std::size_t>(v); }

constexpr std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Accept: return "accept";
        case Verdict::Boundary: return "boundary";
        case Verdict::Reject: return "reject";
    }
    return "?";
}

inline std::optional<Verdict> parse_verdict(std::string_view s) noexcept {
    if (s == "accept" || s == "0") return Verdict::Accept;
    if (s == "boundary" || s == "1/2") return Verdict::Boundary;
    if (s == "reject" || s == "1") return Verdict::Reject;
    return std::nullopt;
}

}  // namespace triadic
