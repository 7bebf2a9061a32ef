#pragma once

// Admissible levels of osp(1|2) and the label sets of the three algebra
// families that enter the branching: osp(1|2), sl2, and Virasoro.

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "ospvoa/errors.hpp"
#include "ospvoa/rational.hpp"

namespace ospvoa {

/// k + 3/2 = p / (2 p') with p > 1, p' > 0 coprime, p + p' even, gcd(p, (p+p')/2) = 1.
class AdmissibleLevel {
public:
    AdmissibleLevel(std::int64_t p, std::int64_t p_prime) : p_(p), pp_(p_prime)
    {
        if (p <= 1 || p_prime <= 0)
            throw invalid_level("need p > 1 and p' > 0");
        if (std::gcd(p, p_prime) != 1)
            throw invalid_level("p and p' must be coprime");
        if ((p + p_prime) % 2 != 0)
            throw invalid_level("p + p' must be even");
        if (std::gcd(p, (p + p_prime) / 2) != 1)
            throw invalid_level("p and (p + p')/2 must be coprime");
    }

    /// Positive integer level k: (p, p') = (2k + 3, 1).
    static AdmissibleLevel from_k(std::int64_t k)
    {
        if (k < 1)
            throw invalid_level("integer level must be >= 1");
        return {2 * k + 3, 1};
    }

    std::int64_t p() const { return p_; }
    std::int64_t p_prime() const { return pp_; }
    std::int64_t delta() const { return p_ + pp_; }
    std::int64_t u() const { return (p_ + pp_) / 2; }
    Rational k() const { return make_rational(p_, 2 * pp_) - Rational(3, 2); }
    bool is_integral() const { return pp_ == 1; }

    std::int64_t integer_k() const
    {
        if (!is_integral())
            throw invalid_level("level is not a positive integer");
        return (p_ - 3) / 2;
    }

    std::string str() const { return "(p,p')=(" + std::to_string(p_) + "," + std::to_string(pp_) + ")"; }

    friend bool operator==(const AdmissibleLevel&, const AdmissibleLevel&) = default;

private:
    std::int64_t p_;
    std::int64_t pp_;
};

struct OspLabel {
    std::int64_t r;
    std::int64_t s;
    friend bool operator==(const OspLabel&, const OspLabel&) = default;
};

struct VirLabel {
    std::int64_t r;
    std::int64_t s;
    friend bool operator==(const VirLabel&, const VirLabel&) = default;
    friend auto operator<=>(const VirLabel&, const VirLabel&) = default;
};

struct Sl2Label {
    std::int64_t r;
    std::int64_t s;
    friend bool operator==(const Sl2Label&, const Sl2Label&) = default;
};

inline std::string to_string(const VirLabel& l)
{
    return "V(" + std::to_string(l.r) + "," + std::to_string(l.s) + ")";
}

inline void validate(const AdmissibleLevel& level, const OspLabel& l)
{
    if (l.r < 1 || l.r > level.p() - 1 || l.s < 0 || l.s > level.p_prime() - 1 || (l.r + l.s) % 2 == 0)
        throw invalid_label("osp label (" + std::to_string(l.r) + "," + std::to_string(l.s) + ") at " +
                            level.str());
}

inline void validate(const AdmissibleLevel& level, const Sl2Label& l)
{
    if (l.r < 1 || l.r > level.u() - 1 || l.s < 0 || l.s > level.p_prime() - 1)
        throw invalid_label("sl2 label (" + std::to_string(l.r) + "," + std::to_string(l.s) + ") at " +
                            level.str());
}

inline void validate_vir(std::int64_t u, std::int64_t p, const VirLabel& l)
{
    if (l.r < 1 || l.r > u - 1 || l.s < 1 || l.s > p - 1)
        throw invalid_label(to_string(l) + " for Vir(u=" + std::to_string(u) + ", p=" + std::to_string(p) + ")");
}

inline void validate_vir_params(std::int64_t u, std::int64_t p)
{
    if (u < 2 || p < 2 || std::gcd(u, p) != 1)
        throw invalid_level("Virasoro parameters need u, p >= 2 coprime");
}

/// All valid osp labels (r, s), r-major.
inline std::vector<OspLabel> osp_labels(const AdmissibleLevel& level)
{
    std::vector<OspLabel> out;
    for (std::int64_t r = 1; r <= level.p() - 1; ++r)
        for (std::int64_t s = 0; s <= level.p_prime() - 1; ++s)
            if ((r + s) % 2 == 1)
                out.push_back({r, s});
    return out;
}

/// Representative of {(r,s), (u-r, p-s)}: the lexicographically smaller one.
inline VirLabel canonical(std::int64_t u, std::int64_t p, const VirLabel& l)
{
    VirLabel other{u - l.r, p - l.s};
    return other < l ? other : l;
}

/// Canonical Virasoro labels in lexicographic order; (1,1) comes first.
inline std::vector<VirLabel> vir_labels(std::int64_t u, std::int64_t p)
{
    validate_vir_params(u, p);
    std::vector<VirLabel> out;
    for (std::int64_t r = 1; r <= u - 1; ++r)
        for (std::int64_t s = 1; s <= p - 1; ++s)
            if (canonical(u, p, {r, s}) == VirLabel{r, s})
                out.push_back({r, s});
    return out;
}

/// c = 1 - 6 (u - p)^2 / (u p)
inline Rational vir_central_charge(std::int64_t u, std::int64_t p)
{
    return 1 - make_rational(6 * (u - p) * (u - p), u * p);
}

/// h_{r,s} = ((u s - p r)^2 - (u - p)^2) / (4 u p)
inline Rational vir_weight(std::int64_t u, std::int64_t p, const VirLabel& l)
{
    const std::int64_t x = u * l.s - p * l.r;
    return make_rational(x * x - (u - p) * (u - p), 4 * u * p);
}

/// 3k / (k + 2)
inline Rational sl2_central_charge(const Rational& k) { return 3 * k / (k + 2); }

/// Conformal weight of the integrable sl2 module with r - 1 = 2j: (r^2 - 1) / (4 (k + 2)).
inline Rational sl2_weight(const Rational& k, std::int64_t r) { return make_rational(r * r - 1) / (4 * (k + 2)); }

/// c(sl2 at level k) + c(Vir(p, (p+p')/2)).
inline Rational osp_central_charge(const AdmissibleLevel& level)
{
    return sl2_central_charge(level.k()) + vir_central_charge(level.u(), level.p());
}

} // namespace ospvoa
