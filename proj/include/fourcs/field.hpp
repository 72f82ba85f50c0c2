#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "fourcs/errors.hpp"

namespace fourcs {

/// Exact arithmetic in GF(p^k). Elements are identified by their index in a
/// fixed total order: an element with polynomial coefficients (c0, c1, ...)
/// over Z_p (constant term first) has id c0 + c1*p + c2*p^2 + ... For prime
/// fields the id is just the residue.
///
/// Construction picks the lexicographically smallest monic irreducible
/// modulus and the smallest primitive element in id order, and precomputes
/// the full discrete-log table, so fields of equal (p, k) are identical and
/// everything built on them is reproducible. Immutable after construction.
class FieldSpec {
public:
    using Elem = std::uint64_t;

    static constexpr std::uint64_t kMaxOrder = std::uint64_t(1) << 20;

    FieldSpec(std::uint32_t p, std::uint32_t k) : p_(p), k_(k) {
        if (k == 0) raise(Errc::bad_argument, "extension degree must be >= 1");
        if (!is_prime(p)) raise(Errc::not_prime, std::to_string(p) + " is not prime");
        q_ = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            if (q_ > kMaxOrder / p) raise(Errc::limit_exceeded, "field order exceeds 2^20");
            q_ *= p;
        }
        if (k_ > 1) modulus_ = smallest_irreducible();
        build_tables();
    }

    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::uint64_t q() const { return q_; }

    /// Non-leading modulus coefficients plus the implicit leading 1;
    /// empty for prime fields.
    std::vector<std::uint32_t> modulus() const {
        if (k_ == 1) return {};
        auto m = modulus_;
        m.push_back(1);
        return m;
    }

    Elem alpha() const { return alpha_; }

    std::vector<std::uint32_t> coeffs(Elem x) const {
        std::vector<std::uint32_t> c(k_);
        for (std::uint32_t i = 0; i < k_; ++i) {
            c[i] = std::uint32_t(x % p_);
            x /= p_;
        }
        return c;
    }

    Elem add(Elem a, Elem b) const {
        Elem r = 0, mult = 1;
        for (std::uint32_t i = 0; i < k_; ++i) {
            r += (a % p_ + b % p_) % p_ * mult;
            a /= p_;
            b /= p_;
            mult *= p_;
        }
        return r;
    }

    Elem neg(Elem a) const {
        Elem r = 0, mult = 1;
        for (std::uint32_t i = 0; i < k_; ++i) {
            r += (p_ - a % p_) % p_ * mult;
            a /= p_;
            mult *= p_;
        }
        return r;
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }

    Elem pow(Elem a, std::uint64_t e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        return exp_[std::uint64_t(__int128(log_[a]) * e % (q_ - 1))];
    }

    /// Discrete log base alpha; defined for nonzero elements only.
    std::uint64_t log(Elem x) const {
        if (x == 0) raise(Errc::zero_argument, "log of zero");
        return log_[x];
    }

    Elem exp(std::uint64_t e) const { return exp_[e % (q_ - 1)]; }

    static bool is_prime(std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    /// Writes q = p^k for prime p; false when q is not a prime power.
    static bool prime_power(std::uint64_t q, std::uint32_t& p, std::uint32_t& k) {
        if (q < 2) return false;
        std::uint64_t base = q;
        for (std::uint64_t d = 2; d * d <= q; ++d)
            if (q % d == 0) {
                base = d;
                break;
            }
        std::uint64_t x = q;
        k = 0;
        while (x > 1) {
            if (x % base != 0) return false;
            x /= base;
            ++k;
        }
        p = std::uint32_t(base);
        return true;
    }

private:
    // Polynomial multiplication mod (modulus_, p); used only to bootstrap the
    // log/exp tables.
    Elem mul_poly(Elem a, Elem b) const {
        std::vector<std::uint32_t> prod(2 * k_, 0);
        auto ca = coeffs_raw(a), cb = coeffs_raw(b);
        for (std::uint32_t i = 0; i < k_; ++i)
            for (std::uint32_t j = 0; j < k_; ++j)
                prod[i + j] = std::uint32_t((prod[i + j] + std::uint64_t(ca[i]) * cb[j]) % p_);
        for (std::uint32_t d = 2 * k_; d-- > k_;) {
            const std::uint32_t c = prod[d];
            if (c == 0) continue;
            prod[d] = 0;
            // x^d = x^(d-k) * (-modulus lower part)
            for (std::uint32_t i = 0; i < k_; ++i) {
                std::uint64_t t = std::uint64_t(c) * modulus_[i] % p_;
                prod[d - k_ + i] = std::uint32_t((prod[d - k_ + i] + p_ - t) % p_);
            }
        }
        Elem r = 0, mult = 1;
        for (std::uint32_t i = 0; i < k_; ++i) {
            r += prod[i] * mult;
            mult *= p_;
        }
        return r;
    }

    std::vector<std::uint32_t> coeffs_raw(Elem x) const {
        std::vector<std::uint32_t> c(k_);
        for (std::uint32_t i = 0; i < k_; ++i) {
            c[i] = std::uint32_t(x % p_);
            x /= p_;
        }
        return c;
    }

    Elem pow_poly(Elem a, std::uint64_t e) const {
        Elem r = 1;
        while (e) {
            if (e & 1) r = mul_poly(r, a);
            a = mul_poly(a, a);
            e >>= 1;
        }
        return r;
    }

    // --- irreducibility over Z_p, via polynomial arithmetic on coefficient
    // vectors (independent of the element encoding above) ---

    using Poly = std::vector<std::uint32_t>; // coefficient i of x^i; trimmed

    static Poly trim(Poly f) {
        while (!f.empty() && f.back() == 0) f.pop_back();
        return f;
    }

    Poly poly_mod(Poly a, const Poly& m) const {
        a = trim(std::move(a));
        const std::uint64_t inv_lead = mod_inverse(m.back());
        while (a.size() >= m.size()) {
            const std::uint64_t c = a.back() * inv_lead % p_;
            const std::size_t shift = a.size() - m.size();
            for (std::size_t i = 0; i < m.size(); ++i)
                a[shift + i] = std::uint32_t((a[shift + i] + p_ - c * m[i] % p_) % p_);
            a = trim(std::move(a));
        }
        return a;
    }

    Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m) const {
        if (a.empty() || b.empty()) return {};
        Poly prod(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                prod[i + j] = std::uint32_t((prod[i + j] + std::uint64_t(a[i]) * b[j]) % p_);
        return poly_mod(std::move(prod), m);
    }

    Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m) const {
        Poly r{1};
        base = poly_mod(std::move(base), m);
        while (e) {
            if (e & 1) r = poly_mulmod(r, base, m);
            base = poly_mulmod(base, base, m);
            e >>= 1;
        }
        return r;
    }

    Poly poly_gcd(Poly a, Poly b) const {
        a = trim(std::move(a));
        b = trim(std::move(b));
        while (!b.empty()) {
            Poly r = poly_mod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    std::uint64_t mod_inverse(std::uint64_t a) const {
        // Fermat; p_ is prime.
        std::uint64_t r = 1, e = p_ - 2, base = a % p_;
        while (e) {
            if (e & 1) r = r * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return r;
    }

    /// Rabin's test: f of degree k is irreducible iff x^(p^k) = x (mod f)
    /// and gcd(x^(p^(k/r)) - x, f) = 1 for every prime r dividing k.
    bool is_irreducible(const Poly& f) const {
        const Poly x{0, 1};
        auto x_frob = [&](std::uint32_t deg) {
            // x^(p^deg) mod f, by repeated powering to the p.
            Poly r = x;
            for (std::uint32_t i = 0; i < deg; ++i) r = poly_powmod(r, p_, f);
            return r;
        };
        Poly top = x_frob(k_);
        Poly diff = top;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = std::uint32_t((diff[1] + p_ - 1) % p_);
        if (!trim(diff).empty()) return false;
        for (std::uint32_t r = 2; r <= k_; ++r) {
            if (k_ % r != 0 || !is_prime(r)) continue;
            Poly sub = x_frob(k_ / r);
            sub.resize(std::max<std::size_t>(sub.size(), 2), 0);
            sub[1] = std::uint32_t((sub[1] + p_ - 1) % p_);
            if (poly_gcd(f, trim(sub)).size() > 1) return false;
        }
        return true;
    }

    /// Smallest monic irreducible of degree k, ordering candidates by their
    /// non-leading coefficients read as a base-p integer (constant term least
    /// significant).
    std::vector<std::uint32_t> smallest_irreducible() const {
        for (std::uint64_t idx = 0; idx < q_; ++idx) {
            Poly f(k_ + 1, 0);
            std::uint64_t x = idx;
            for (std::uint32_t i = 0; i < k_; ++i) {
                f[i] = std::uint32_t(x % p_);
                x /= p_;
            }
            f[k_] = 1;
            if (is_irreducible(f)) {
                f.pop_back();
                return f;
            }
        }
        raise(Errc::no_witness, "no irreducible modulus found"); // unreachable
    }

    void build_tables() {
        // Factor q-1 once for the order checks.
        std::vector<std::uint64_t> prime_divs;
        std::uint64_t m = q_ - 1;
        for (std::uint64_t d = 2; d * d <= m; ++d)
            if (m % d == 0) {
                prime_divs.push_back(d);
                while (m % d == 0) m /= d;
            }
        if (m > 1) prime_divs.push_back(m);

        alpha_ = 0;
        for (Elem cand = 1; cand < q_; ++cand) {
            bool primitive = true;
            for (std::uint64_t r : prime_divs)
                if (pow_poly(cand, (q_ - 1) / r) == 1) {
                    primitive = false;
                    break;
                }
            if (primitive) {
                alpha_ = cand;
                break;
            }
        }
        if (alpha_ == 0) raise(Errc::no_witness, "no primitive element found"); // unreachable

        log_.assign(q_, 0);
        exp_.assign(q_ - 1, 0);
        Elem e = 1;
        for (std::uint64_t i = 0; i + 1 < q_; ++i) {
            exp_[i] = e;
            log_[e] = i;
            e = mul_poly(e, alpha_);
        }
        if (e != 1) raise(Errc::no_witness, "field arithmetic inconsistency"); // unreachable
    }

    std::uint32_t p_;
    std::uint32_t k_;
    std::uint64_t q_;
    std::vector<std::uint32_t> modulus_; // non-leading coefficients, size k (k > 1 only)
    Elem alpha_ = 0;
    std::vector<std::uint64_t> log_;
    std::vector<Elem> exp_;
};

inline FieldSpec make_field(std::uint32_t p, std::uint32_t k) { return FieldSpec(p, k); }

/// Value of the order-4 multiplicative character: chi(x) = i^exponent.
struct CharValue {
    int exponent = 0; // in {0,1,2,3} representing 1, i, -1, -i

    friend CharValue operator*(CharValue a, CharValue b) {
        return CharValue{(a.exponent + b.exponent) & 3};
    }
    friend bool operator==(CharValue a, CharValue b) { return a.exponent == b.exponent; }

    std::string name() const {
        static const char* names[] = {"1", "i", "-1", "-i"};
        return names[exponent & 3];
    }
};

/// chi(x) = i^(log_alpha(x) mod 4); requires 4 | q-1 and x != 0.
inline CharValue quartic_character(const FieldSpec& f, FieldSpec::Elem x) {
    if ((f.q() - 1) % 4 != 0)
        raise(Errc::bad_order, "q = " + std::to_string(f.q()) + " is not 1 (mod 4)");
    if (x == 0) raise(Errc::zero_argument, "character of zero");
    return CharValue{int(f.log(x) & 3)};
}

} // namespace fourcs
