#pragma once

// Naive reference predicates for tests. They read only the raw operation tables and never touch
// StructureCache or the decomposition search, so they check the library independently.

#include <cstdint>
#include <optional>
#include <vector>

#include "wnc/wnc.hpp"

namespace oracle {

using wnc::ElementId;
using wnc::RingTable;

inline bool is_idempotent(const RingTable& r, ElementId x) { return r.mul(x, x) == x; }

inline bool is_nilpotent(const RingTable& r, ElementId x) {
    ElementId p = x;
    for (std::size_t k = 0; k <= r.order(); ++k) {
        if (p == r.zero()) return true;
        p = r.mul(p, x);
    }
    return false;
}

inline bool is_unit(const RingTable& r, ElementId x) {
    for (auto y : r.elements())
        if (r.mul(x, y) == r.one() && r.mul(y, x) == r.one()) return true;
    return false;
}

/// x in J(R) iff 1 - y x is invertible for every y.
inline bool in_radical(const RingTable& r, ElementId x) {
    for (auto y : r.elements())
        if (!is_unit(r, r.sub(r.one(), r.mul(y, x)))) return false;
    return true;
}

/// Companion-class membership for every element, computed once per ring.
struct Classes {
    std::vector<std::uint8_t> nil, unit, rad, idem;

    explicit Classes(const RingTable& r) : nil(r.order()), unit(r.order()), rad(r.order()), idem(r.order()) {
        for (auto c : r.elements()) {
            nil[c.index] = is_nilpotent(r, c);
            unit[c.index] = is_unit(r, c);
            idem[c.index] = is_idempotent(r, c);
        }
        // 1 - y c invertible for every y, reusing the unit table.
        for (auto c : r.elements()) {
            bool ok = true;
            for (auto y : r.elements())
                if (!unit[r.sub(r.one(), r.mul(y, c)).index]) {
                    ok = false;
                    break;
                }
            rad[c.index] = ok;
        }
    }

    const std::vector<std::uint8_t>& of(wnc::CompanionClass k) const {
        switch (k) {
            case wnc::CompanionClass::Nilpotent: return nil;
            case wnc::CompanionClass::Unit: return unit;
            case wnc::CompanionClass::Radical: return rad;
        }
        return nil;
    }
};

/// Double loop over every companion c and every idempotent e of R.
inline bool decomposable(const RingTable& r, const Classes& k, ElementId x, wnc::DecompKind kind,
                         const std::vector<ElementId>* pool = nullptr) {
    const auto t = wnc::traits(kind);
    std::vector<std::uint8_t> in_pool(r.order(), pool ? 0 : 1);
    if (pool)
        for (auto e : *pool) in_pool[e.index] = 1;
    const auto& cls = k.of(t.companion);
    for (auto c : r.elements()) {
        if (!cls[c.index]) continue;
        for (auto e : r.elements()) {
            if (!in_pool[e.index] || !k.idem[e.index]) continue;
            if (t.commuting && r.mul(c, e) != r.mul(e, c)) continue;
            if (r.add(c, e) == x) return true;
            if (t.both_signs && r.add(c, r.neg(e)) == x) return true;
        }
    }
    return false;
}

inline bool decomposable(const RingTable& r, ElementId x, wnc::DecompKind kind,
                         const std::vector<ElementId>* pool = nullptr) {
    return decomposable(r, Classes(r), x, kind, pool);
}

/// map must be a bijection a -> b preserving +, *, and 1.
inline bool is_isomorphism(const RingTable& a, const RingTable& b, const std::vector<ElementId>& map) {
    if (a.order() != b.order() || map.size() != a.order()) return false;
    std::vector<std::uint8_t> hit(b.order(), 0);
    for (auto m : map) {
        if (m.index >= b.order() || hit[m.index]) return false;
        hit[m.index] = 1;
    }
    if (map[a.one().index] != b.one()) return false;
    for (auto x : a.elements())
        for (auto y : a.elements()) {
            if (map[a.add(x, y).index] != b.add(map[x.index], map[y.index])) return false;
            if (map[a.mul(x, y).index] != b.mul(map[x.index], map[y.index])) return false;
        }
    return true;
}

}  // namespace oracle
