#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "ospvoa/errors.hpp"
#include "ospvoa/levels.hpp"

namespace ospvoa {

/// N^{w t''}_{t,t'}: 1 iff |t - t'| + 1 <= t'' <= min(t + t' - 1, 2w - t - t') and t + t' + t'' is odd.
/// t, t' must lie in [1, w-1]; t'' >= w is accepted and gives 0, since the upper bound never exceeds w - 1.
inline int n_coeff(std::int64_t w, std::int64_t t, std::int64_t t1, std::int64_t t2)
{
    if (w < 2)
        throw out_of_range("n_coeff needs w >= 2, got " + std::to_string(w));
    for (std::int64_t x : {t, t1})
        if (x < 1 || x > w - 1)
            throw out_of_range("n_coeff index " + std::to_string(x) + " outside [1, " + std::to_string(w - 1) + "]");
    if (t2 < 1)
        throw out_of_range("n_coeff index " + std::to_string(t2) + " below 1");
    const std::int64_t lo = std::llabs(t - t1) + 1;
    const std::int64_t hi = std::min(t + t1 - 1, 2 * w - t - t1);
    return (lo <= t2 && t2 <= hi && (t + t1 + t2) % 2 == 1) ? 1 : 0;
}

/// Structure constants N_{a,b}^c over an ordered label set.
class FusionTensor {
public:
    FusionTensor(std::vector<std::string> labels, std::size_t unit)
        : labels_(std::move(labels)), unit_(unit), n_(labels_.size() * labels_.size() * labels_.size(), 0)
    {
        if (unit_ >= labels_.size())
            throw out_of_range("unit index");
    }

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t unit() const { return unit_; }

    int at(std::size_t a, std::size_t b, std::size_t c) const { return n_[index(a, b, c)]; }
    void set(std::size_t a, std::size_t b, std::size_t c, int v) { n_[index(a, b, c)] = v; }

    bool unit_ok() const
    {
        for (std::size_t b = 0; b < size(); ++b)
            for (std::size_t c = 0; c < size(); ++c)
                if (at(unit_, b, c) != (b == c ? 1 : 0))
                    return false;
        return true;
    }

    bool commutative() const
    {
        for (std::size_t a = 0; a < size(); ++a)
            for (std::size_t b = 0; b < size(); ++b)
                for (std::size_t c = 0; c < size(); ++c)
                    if (at(a, b, c) != at(b, a, c))
                        return false;
        return true;
    }

    /// sum_e N_ab^e N_ec^d = sum_e N_bc^e N_ae^d for all a, b, c, d.
    bool associative() const
    {
        const std::size_t n = size();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t d = 0; d < n; ++d) {
                        long lhs = 0, rhs = 0;
                        for (std::size_t e = 0; e < n; ++e) {
                            lhs += static_cast<long>(at(a, b, e)) * at(e, c, d);
                            rhs += static_cast<long>(at(b, c, e)) * at(a, e, d);
                        }
                        if (lhs != rhs)
                            return false;
                    }
        return true;
    }

    /// The unique a* with N(a, a*, unit) = 1, if there is exactly one.
    std::optional<std::size_t> dual(std::size_t a) const
    {
        std::optional<std::size_t> found;
        for (std::size_t b = 0; b < size(); ++b) {
            if (at(a, b, unit_) == 0)
                continue;
            if (found || at(a, b, unit_) != 1)
                return std::nullopt;
            found = b;
        }
        return found;
    }

    /// Unique duals exist and N(a, b, c) = N(a*, c, b).
    bool duality_ok() const
    {
        std::vector<std::size_t> d(size());
        for (std::size_t a = 0; a < size(); ++a) {
            auto x = dual(a);
            if (!x)
                return false;
            d[a] = *x;
        }
        for (std::size_t a = 0; a < size(); ++a)
            for (std::size_t b = 0; b < size(); ++b)
                for (std::size_t c = 0; c < size(); ++c)
                    if (at(a, b, c) != at(d[a], c, b))
                        return false;
        return true;
    }

    bool non_negative() const
    {
        for (int v : n_)
            if (v < 0)
                return false;
        return true;
    }

    /// Labels c with N(a, b, c) != 0, as "c" or "m*c".
    std::vector<std::string> product(std::size_t a, std::size_t b) const
    {
        std::vector<std::string> out;
        for (std::size_t c = 0; c < size(); ++c)
            if (int v = at(a, b, c); v != 0)
                out.push_back(v == 1 ? labels_[c] : std::to_string(v) + "*" + labels_[c]);
        return out;
    }

    std::size_t find(const std::string& label) const
    {
        for (std::size_t i = 0; i < size(); ++i)
            if (labels_[i] == label)
                return i;
        throw invalid_label("no label " + label);
    }

    friend bool operator==(const FusionTensor&, const FusionTensor&) = default;

private:
    std::size_t index(std::size_t a, std::size_t b, std::size_t c) const
    {
        if (a >= size() || b >= size() || c >= size())
            throw out_of_range("fusion label index");
        return (a * size() + b) * size() + c;
    }

    std::vector<std::string> labels_;
    std::size_t unit_;
    std::vector<int> n_;
};

/// V_{r,s} x V_{r',s'} = sum N^{u r''}_{r r'} N^{p s''}_{s s'} V_{r'',s''}, folded onto canonical labels.
inline FusionTensor vir_fusion(std::int64_t u, std::int64_t p)
{
    const auto labels = vir_labels(u, p);
    std::vector<std::string> names;
    for (const auto& l : labels)
        names.push_back(to_string(l));
    FusionTensor t(names, 0);
    for (std::size_t a = 0; a < labels.size(); ++a)
        for (std::size_t b = 0; b < labels.size(); ++b)
            for (std::size_t c = 0; c < labels.size(); ++c) {
                const VirLabel& x = labels[a];
                const VirLabel& y = labels[b];
                int sum = 0;
                for (const VirLabel& z : {labels[c], VirLabel{u - labels[c].r, p - labels[c].s}})
                    sum += n_coeff(u, x.r, y.r, z.r) * n_coeff(p, x.s, y.s, z.s);
                t.set(a, b, c, sum);
            }
    return t;
}

inline std::string sl2_label_name(std::int64_t r) { return "L(" + std::to_string(r) + ")"; }
inline std::string osp_label_name(std::int64_t r) { return "M(" + std::to_string(r) + ")"; }
inline std::string coset_label_name(std::int64_t nu, std::int64_t r)
{
    return "C(" + std::to_string(nu) + "," + std::to_string(r) + ")";
}

namespace detail {

inline void require_positive_level(std::int64_t k)
{
    if (k < 1)
        throw invalid_level("k must be >= 1, got " + std::to_string(k));
}

} // namespace detail

/// Integrable sl2 at level k: labels r = 1..k+1, N = N^{k+2}.
inline FusionTensor sl2_fusion(std::int64_t k)
{
    detail::require_positive_level(k);
    std::vector<std::string> names;
    for (std::int64_t r = 1; r <= k + 1; ++r)
        names.push_back(sl2_label_name(r));
    FusionTensor t(names, 0);
    for (std::int64_t a = 1; a <= k + 1; ++a)
        for (std::int64_t b = 1; b <= k + 1; ++b)
            for (std::int64_t c = 1; c <= k + 1; ++c)
                t.set(a - 1, b - 1, c - 1, n_coeff(k + 2, a, b, c));
    return t;
}

/// Induced modules M_r, r = 1..2k+2, with N = N^{2k+3}; M_r is local iff r is odd.
struct OspFusion {
    FusionTensor tensor;
    std::vector<bool> local;
};

inline OspFusion osp_fusion(std::int64_t k)
{
    detail::require_positive_level(k);
    const std::int64_t n = 2 * k + 2;
    std::vector<std::string> names;
    std::vector<bool> local;
    for (std::int64_t r = 1; r <= n; ++r) {
        names.push_back(osp_label_name(r));
        local.push_back(r % 2 == 1);
    }
    FusionTensor t(names, 0);
    for (std::int64_t a = 1; a <= n; ++a)
        for (std::int64_t b = 1; b <= n; ++b)
            for (std::int64_t c = 1; c <= n; ++c)
                t.set(a - 1, b - 1, c - 1, n_coeff(2 * k + 3, a, b, c));
    return {std::move(t), std::move(local)};
}

/// Local modules of the even subalgebra: M_r^even = labels 0..2k+1, M_r^odd = 2k+2..4k+3.
/// M^odd = L^odd x M^even with L^odd an order-two simple current, so parities add.
inline FusionTensor extended_fusion(std::int64_t k)
{
    detail::require_positive_level(k);
    const std::int64_t n = 2 * k + 2;
    std::vector<std::string> names;
    for (int parity = 0; parity < 2; ++parity)
        for (std::int64_t r = 1; r <= n; ++r)
            names.push_back(osp_label_name(r) + (parity == 0 ? "e" : "o"));
    FusionTensor t(names, 0);
    for (std::int64_t a = 0; a < 2 * n; ++a)
        for (std::int64_t b = 0; b < 2 * n; ++b)
            for (std::int64_t c = 0; c < 2 * n; ++c) {
                const bool parity_ok = ((a / n) + (b / n)) % 2 == c / n;
                t.set(a, b, c, parity_ok ? n_coeff(2 * k + 3, a % n + 1, b % n + 1, c % n + 1) : 0);
            }
    return t;
}

struct SuperFusionEntry {
    int even_dim = 0;
    int odd_dim = 0;
    int sdim = 0;
    friend bool operator==(const SuperFusionEntry&, const SuperFusionEntry&) = default;
};

/// Parity-graded intertwiner dimensions: sdim = eps eps' eps'' N^{2k+3}.
inline SuperFusionEntry super_fusion(std::int64_t k, std::int64_t r, int eps, std::int64_t r1, int eps1,
                                     std::int64_t r2, int eps2)
{
    detail::require_positive_level(k);
    for (int e : {eps, eps1, eps2})
        if (e != 1 && e != -1)
            throw out_of_range("parity must be +1 or -1");
    const int n = n_coeff(2 * k + 3, r, r1, r2);
    const int sign = eps * eps1 * eps2;
    return sign > 0 ? SuperFusionEntry{n, 0, n} : SuperFusionEntry{0, n, -n};
}

/// Coset labels (nu, r): nu in Z/2k, r odd in 1..2k+1, nu-major.
struct CosetLabel {
    std::int64_t nu;
    std::int64_t r;
    friend bool operator==(const CosetLabel&, const CosetLabel&) = default;
};

inline std::vector<CosetLabel> coset_labels(std::int64_t k)
{
    detail::require_positive_level(k);
    std::vector<CosetLabel> out;
    for (std::int64_t nu = 0; nu < 2 * k; ++nu)
        for (std::int64_t r = 1; r <= 2 * k + 2; r += 2)
            out.push_back({nu, r});
    return out;
}

inline void validate(std::int64_t k, const CosetLabel& l)
{
    if (l.nu < 0 || l.nu >= 2 * k || l.r < 1 || l.r > 2 * k + 2 || l.r % 2 == 0)
        throw invalid_label(coset_label_name(l.nu, l.r) + " at k = " + std::to_string(k));
}

/// C_{nu,r} x C_{lambda,r'} = sum N^{2k+3} C_{nu+lambda, r''}.
inline FusionTensor parafermion_fusion(std::int64_t k)
{
    const auto labels = coset_labels(k);
    std::vector<std::string> names;
    for (const auto& l : labels)
        names.push_back(coset_label_name(l.nu, l.r));
    FusionTensor t(names, 0);
    for (std::size_t a = 0; a < labels.size(); ++a)
        for (std::size_t b = 0; b < labels.size(); ++b)
            for (std::size_t c = 0; c < labels.size(); ++c) {
                const bool charge = labels[c].nu == (labels[a].nu + labels[b].nu) % (2 * k);
                t.set(a, b, c, charge ? n_coeff(2 * k + 3, labels[a].r, labels[b].r, labels[c].r) : 0);
            }
    return t;
}

} // namespace ospvoa
