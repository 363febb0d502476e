#pragma once

#include "relprec/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace relprec {

/// Precision-p binary format with unbounded exponent range: the representable
/// values are 0 and m * 2^e with |m| < 2^p. No overflow, underflow or
/// exceptional values exist in this model.
struct Format {
    int precision;
    explicit Format(int p) : precision(p) {
        if (p < 2) throw std::invalid_argument("Format: precision must be >= 2");
    }
};

enum class RoundingMode { RU, RD, RZ, RN };

/// Tie handling for RN. Both choices satisfy the nearest-value contract;
/// ToEven is the deterministic default used everywhere unless asked otherwise.
enum class RnTies { ToEven, ToAway };

const char* to_string(RoundingMode m);
std::optional<RoundingMode> rounding_mode_from_string(std::string_view s);

bool is_representable(const Rational& x, const Format& f);

/// Rounds x to the format. RU: least representable >= x; RD: greatest <= x;
/// RZ: toward zero; RN: nearest. Exact for representable inputs, never maps a
/// nonzero value to zero, and preserves sign.
Dyadic round(const Rational& x, const Format& f, RoundingMode m, RnTies ties = RnTies::ToEven);

/// 2^(1-p) for the directed modes, 2^-p for RN.
Rational unit_roundoff(const Format& f, RoundingMode m);

/// Test-point generator: every representable value with magnitude in
/// [2^exp_lo, 2^(exp_hi+1)) plus, between each pair of consecutive
/// representables, subsamples_per_gap - 1 equally spaced off-grid points
/// (exact midpoints included when subsamples_per_gap is even). Both signs,
/// never zero.
struct FloatGrid {
    Format format;
    long exp_lo = 0;
    long exp_hi = 0;
    int subsamples_per_gap = 1;
};

std::vector<Rational> enumerate_grid(const FloatGrid& g);

/// Parses "p=<int>,emin=<int>,emax=<int>,sub=<int>" (later keys optional,
/// defaults emin=-2, emax=2, sub=4).
FloatGrid parse_grid_spec(std::string_view spec);

}  // namespace relprec
