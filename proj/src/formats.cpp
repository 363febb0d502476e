#include "relprec/formats.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

namespace relprec {

const char* to_string(RoundingMode m) {
    switch (m) {
        case RoundingMode::RU: return "RU";
        case RoundingMode::RD: return "RD";
        case RoundingMode::RZ: return "RZ";
        case RoundingMode::RN: return "RN";
    }
    return "?";
}

std::optional<RoundingMode> rounding_mode_from_string(std::string_view s) {
    std::string t(s);
    for (auto& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (t == "ru") return RoundingMode::RU;
    if (t == "rd") return RoundingMode::RD;
    if (t == "rz") return RoundingMode::RZ;
    if (t == "rn") return RoundingMode::RN;
    return std::nullopt;
}

bool is_representable(const Rational& x, const Format& f) {
    if (x.is_zero()) return true;
    if (mpz_popcount(x.den().get_mpz_t()) != 1) return false;
    Dyadic d = Dyadic::from_rational(x);
    return d.mantissa_bits() <= f.precision;
}

namespace {

// Floor of |x| * 2^-e as an integer, plus exactness flag.
std::pair<mpz_class, bool> scaled_floor(const Rational& ax, long e) {
    mpz_class n = ax.num(), d = ax.den();
    if (e <= 0)
        mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(-e));
    else
        mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(e));
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return {q, r == 0};
}

// Rounds |x| up/down/nearest within the positive representables.
Dyadic round_magnitude(const Rational& ax, const Format& f, RoundingMode m, RnTies ties) {
    long e = ax.floor_log2() - (f.precision - 1);
    auto [mant, exact] = scaled_floor(ax, e);
    if (exact) return Dyadic(mant, e);
    Dyadic down(mant, e);
    Dyadic up(mant + 1, e);
    switch (m) {
        case RoundingMode::RD:
        case RoundingMode::RZ:
            return down;
        case RoundingMode::RU:
            return up;
        case RoundingMode::RN: {
            // compare x - down against up - x via 2*|x| vs down + up
            Rational doubled = ax * Rational(2);
            Rational mid = down.to_rational() + up.to_rational();
            if (doubled < mid) return down;
            if (doubled > mid) return up;
            if (ties == RnTies::ToAway) return up;
            return mpz_even_p(mant.get_mpz_t()) ? down : up;
        }
    }
    return down;
}

}  // namespace

Dyadic round(const Rational& x, const Format& f, RoundingMode m, RnTies ties) {
    if (x.is_zero()) return Dyadic();
    bool negative = x.sign() < 0;
    RoundingMode mag_mode = m;
    if (negative) {
        if (m == RoundingMode::RU) mag_mode = RoundingMode::RD;
        else if (m == RoundingMode::RD) mag_mode = RoundingMode::RU;
        else if (m == RoundingMode::RZ) mag_mode = RoundingMode::RZ;
    }
    Dyadic mag = round_magnitude(x.abs(), f, mag_mode, ties);
    return negative ? -mag : mag;
}

Rational unit_roundoff(const Format& f, RoundingMode m) {
    long p = f.precision;
    return m == RoundingMode::RN ? Rational::pow2(-p) : Rational::pow2(1 - p);
}

std::vector<Rational> enumerate_grid(const FloatGrid& g) {
    if (g.exp_lo > g.exp_hi) throw std::invalid_argument("FloatGrid: exp_lo > exp_hi");
    if (g.subsamples_per_gap < 1)
        throw std::invalid_argument("FloatGrid: subsamples_per_gap must be >= 1");

    const int p = g.format.precision;
    mpz_class mant_lo, mant_hi;
    mpz_ui_pow_ui(mant_lo.get_mpz_t(), 2, static_cast<unsigned long>(p - 1));
    mpz_ui_pow_ui(mant_hi.get_mpz_t(), 2, static_cast<unsigned long>(p));
    std::vector<Rational> reps;
    for (long e = g.exp_lo; e <= g.exp_hi; ++e) {
        long scale = e - (p - 1);
        for (mpz_class m = mant_lo; m < mant_hi; ++m)
            reps.push_back(Rational(m) * Rational::pow2(scale));
    }

    std::vector<Rational> out;
    out.reserve(reps.size() * 2 * g.subsamples_per_gap);
    for (std::size_t i = 0; i < reps.size(); ++i) {
        out.push_back(reps[i]);
        out.push_back(-reps[i]);
        if (i + 1 < reps.size()) {
            Rational step = (reps[i + 1] - reps[i]) / Rational(g.subsamples_per_gap);
            for (int t = 1; t < g.subsamples_per_gap; ++t) {
                Rational v = reps[i] + Rational(t) * step;
                out.push_back(v);
                out.push_back(-v);
            }
        }
    }
    return out;
}

FloatGrid parse_grid_spec(std::string_view spec) {
    long p = -1, emin = -2, emax = 2, sub = 4;
    std::string s(spec);
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string field = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        pos = comma == std::string::npos ? s.size() : comma + 1;
        std::size_t eq = field.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("grid spec: expected key=value in \"" + field + "\"");
        std::string key = field.substr(0, eq);
        long value = std::stol(field.substr(eq + 1));
        if (key == "p") p = value;
        else if (key == "emin") emin = value;
        else if (key == "emax") emax = value;
        else if (key == "sub") sub = value;
        else throw std::invalid_argument("grid spec: unknown key \"" + key + "\"");
    }
    if (p < 2) throw std::invalid_argument("grid spec: p must be given and >= 2");
    FloatGrid g{Format(static_cast<int>(p)), emin, emax, static_cast<int>(sub)};
    if (g.exp_lo > g.exp_hi) throw std::invalid_argument("grid spec: emin > emax");
    if (g.subsamples_per_gap < 1) throw std::invalid_argument("grid spec: sub must be >= 1");
    return g;
}

}  // namespace relprec
