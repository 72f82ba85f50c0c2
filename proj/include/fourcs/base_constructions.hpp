#pragma once

#include <cstdint>
#include <vector>

#include "fourcs/core.hpp"
#include "fourcs/errors.hpp"
#include "fourcs/field.hpp"

namespace fourcs {

/// Witness for the character construction: a base 4-cycle (0, x, x-1, x^2)
/// over GF(q) whose element x satisfies chi(x^2) = -1,
/// chi((x^2-x+1)^2) = -1 and chi(x*(x^2-x+1)) = 1.
struct CharacterBase {
    std::uint64_t q = 0;
    FieldSpec::Elem x = 0;
    FourCycle base_cycle;
};

namespace detail_base {

inline void require_character_order(std::uint64_t q) {
    std::uint32_t p = 0, k = 0;
    if (!FieldSpec::prime_power(q, p, k))
        raise(Errc::bad_order, std::to_string(q) + " is not a prime power");
    if (q % 8 != 1) raise(Errc::bad_order, std::to_string(q) + " is not 1 (mod 8)");
    if (p == 3) raise(Errc::bad_order, std::to_string(q) + " is a power of three");
}

inline bool base_conditions(const FieldSpec& f, FieldSpec::Elem x) {
    if (x == 0 || x == 1) return false;
    // w = x^2 - x + 1; w = 0 would collapse the base cycle (x^2 = x - 1).
    const auto w = f.add(f.sub(f.mul(x, x), x), 1);
    if (w == 0) return false;
    // In exponent form: chi(x^2) = -1  <=>  log x odd (2*log = 2 mod 4);
    // chi(w^2) = -1  <=>  log w odd;  chi(x*w) = 1  <=>  log x + log w = 0 mod 4.
    const auto lx = f.log(x), lw = f.log(w);
    return (lx & 1) && (lw & 1) && ((lx + lw) % 4 == 0);
}

} // namespace detail_base

/// All x meeting the three character conditions, in the fixed element order.
inline std::vector<CharacterBase> find_base_candidates(const FieldSpec& f) {
    detail_base::require_character_order(f.q());
    std::vector<CharacterBase> out;
    for (FieldSpec::Elem x = 2; x < f.q(); ++x) {
        if (!detail_base::base_conditions(f, x)) continue;
        const auto x2 = f.mul(x, x);
        out.push_back({f.q(), x,
                       canonicalize(Vertex(0), Vertex(x), Vertex(f.sub(x, 1)), Vertex(x2))});
    }
    return out;
}

/// First valid x in the fixed element order. The cited existence result
/// guarantees one for every admissible q; NoWitness here indicates a
/// field-arithmetic bug rather than a legitimate outcome.
inline CharacterBase find_base_x(const FieldSpec& f) {
    detail_base::require_character_order(f.q());
    for (FieldSpec::Elem x = 2; x < f.q(); ++x)
        if (detail_base::base_conditions(f, x)) {
            const auto x2 = f.mul(x, x);
            return {f.q(), x,
                    canonicalize(Vertex(0), Vertex(x), Vertex(f.sub(x, 1)), Vertex(x2))};
        }
    raise(Errc::no_witness, "no base element x found in GF(" + std::to_string(f.q()) + ")");
}

/// Develops (0, x, x-1, x^2) under z -> z*alpha^(4n) + y over all y in GF(q)
/// and 0 <= n < (q-1)/8. Vertex labels are field-element ids.
inline FourCycleSystem construct_character_4cs(const FieldSpec& f, const CharacterBase& base) {
    detail_base::require_character_order(f.q());
    const std::uint64_t q = f.q();
    FourCycleSystem sys;
    sys.order = Vertex(q);
    sys.cycles.reserve(q * (q - 1) / 8);
    const auto x = base.x;
    const auto xm1 = f.sub(x, 1);
    const auto x2 = f.mul(x, x);
    for (std::uint64_t n = 0; n < (q - 1) / 8; ++n) {
        const auto m = f.exp(4 * n);
        const auto a = f.mul(x, m), b = f.mul(xm1, m), c = f.mul(x2, m);
        for (FieldSpec::Elem y = 0; y < q; ++y)
            sys.cycles.push_back(
                canonicalize(Vertex(y), Vertex(f.add(a, y)), Vertex(f.add(b, y)),
                             Vertex(f.add(c, y))));
    }
    return sys;
}

inline FourCycleSystem construct_character_4cs(std::uint64_t q) {
    detail_base::require_character_order(q);
    std::uint32_t p = 0, k = 0;
    FieldSpec::prime_power(q, p, k);
    const FieldSpec f(p, k);
    return construct_character_4cs(f, find_base_x(f));
}

/// The cyclic 4CS(9): orbit of (0, 1, 8, 5) under Z_9.
inline FourCycleSystem construct_cyclic_4cs9() {
    FourCycleSystem sys;
    sys.order = 9;
    sys.cycles.reserve(9);
    for (Vertex a = 0; a < 9; ++a)
        sys.cycles.push_back(
            canonicalize(a, (1 + a) % 9, (8 + a) % 9, (5 + a) % 9));
    return sys;
}

} // namespace fourcs
