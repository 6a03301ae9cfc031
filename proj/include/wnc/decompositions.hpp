#pragma once

/**
 * @file decompositions.hpp
 * @brief Certificate-producing decision procedures for the cleanness notions.
 *
 * Every notion decomposes an element x as companion +/- idempotent, where the companion is drawn
 * from Nil(R), U(R) or J(R) depending on the family. Searches are exhaustive and run in a fixed
 * order (idempotents ascending, + before -), so certificates are deterministic.
 */

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wnc/constructions.hpp"
#include "wnc/ring.hpp"
#include "wnc/structure.hpp"

namespace wnc {

enum class DecompKind {
    Clean,
    StronglyClean,
    WeaklyClean,
    NilClean,
    StronglyNilClean,
    WeakNilClean,
    WeakStarNilClean,
    SWeakNilClean,
    SWeakStarNilClean,
    JClean,
    StronglyJClean,
    WeakJClean,
    WeakStarJClean,
};

inline constexpr std::array kAllKinds = {
    DecompKind::Clean,        DecompKind::StronglyClean,     DecompKind::WeaklyClean,
    DecompKind::NilClean,     DecompKind::StronglyNilClean,  DecompKind::WeakNilClean,
    DecompKind::WeakStarNilClean, DecompKind::SWeakNilClean, DecompKind::SWeakStarNilClean,
    DecompKind::JClean,       DecompKind::StronglyJClean,    DecompKind::WeakJClean,
    DecompKind::WeakStarJClean,
};

enum class CompanionClass { Nilpotent, Unit, Radical };
enum class Sign { Plus, Minus };

struct KindTraits {
    std::string_view name;
    CompanionClass companion;
    bool both_signs;
    bool commuting;
    bool restricted;  // idempotent drawn from a prescribed pool S
};

constexpr KindTraits traits(DecompKind k) {
    switch (k) {
        case DecompKind::Clean: return {"clean", CompanionClass::Unit, false, false, false};
        case DecompKind::StronglyClean: return {"strongly-clean", CompanionClass::Unit, false, true, false};
        case DecompKind::WeaklyClean: return {"weakly-clean", CompanionClass::Unit, true, false, false};
        case DecompKind::NilClean: return {"nil-clean", CompanionClass::Nilpotent, false, false, false};
        case DecompKind::StronglyNilClean: return {"strongly-nil-clean", CompanionClass::Nilpotent, false, true, false};
        case DecompKind::WeakNilClean: return {"weak-nil-clean", CompanionClass::Nilpotent, true, false, false};
        case DecompKind::WeakStarNilClean: return {"weak-star-nil-clean", CompanionClass::Nilpotent, true, true, false};
        case DecompKind::SWeakNilClean: return {"s-weak-nil-clean", CompanionClass::Nilpotent, true, false, true};
        case DecompKind::SWeakStarNilClean: return {"s-weak-star-nil-clean", CompanionClass::Nilpotent, true, true, true};
        case DecompKind::JClean: return {"j-clean", CompanionClass::Radical, false, false, false};
        case DecompKind::StronglyJClean: return {"strongly-j-clean", CompanionClass::Radical, false, true, false};
        case DecompKind::WeakJClean: return {"weak-j-clean", CompanionClass::Radical, true, false, false};
        case DecompKind::WeakStarJClean: return {"weak-star-j-clean", CompanionClass::Radical, true, true, false};
    }
    return {"?", CompanionClass::Nilpotent, false, false, false};
}

inline std::string kind_name(DecompKind k) { return std::string(traits(k).name); }

inline std::optional<DecompKind> parse_kind(std::string_view name) {
    for (auto k : kAllKinds)
        if (traits(k).name == name) return k;
    return std::nullopt;
}

inline const char* sign_symbol(Sign s) { return s == Sign::Plus ? "+" : "-"; }

/**
 * A cleanness notion: a kind, plus the idempotent pool S for the S-restricted kinds.
 * Implicitly constructible from an unrestricted kind.
 */
struct Notion {
    DecompKind kind;
    std::optional<Subset> pool;

    Notion(DecompKind k) : kind(k) {}  // NOLINT(google-explicit-constructor)
    Notion(DecompKind k, Subset s) : kind(k), pool(std::move(s)) {}
};

/// The {0,1}-restricted weak nil clean notion.
inline Notion zero_one_weak_nil_clean(const RingTable& r) {
    return Notion(DecompKind::SWeakNilClean, Subset(r, {r.zero(), r.one()}));
}

struct DecompCert {
    DecompKind kind;
    ElementId target;
    ElementId idempotent;
    ElementId companion;
    Sign sign;
    bool commutes;

    friend bool operator==(const DecompCert&, const DecompCert&) = default;
};

inline bool in_class(const StructureCache& s, CompanionClass c, ElementId x) {
    switch (c) {
        case CompanionClass::Nilpotent: return s.is_nilpotent(x);
        case CompanionClass::Unit: return s.is_unit(x);
        case CompanionClass::Radical: return s.in_radical(x);
    }
    return false;
}

/// Candidate idempotents for a notion, ascending. Throws invalid_subset when S is not in Idem(R).
inline std::vector<ElementId> idempotent_pool(const RingTable& r, const StructureCache& s, const Notion& notion) {
    s.check_ring(r);
    const auto t = traits(notion.kind);
    if (!t.restricted) {
        if (notion.pool) throw usage_error(kind_name(notion.kind) + " does not take an idempotent pool");
        return s.idempotents();
    }
    if (!notion.pool) throw usage_error(kind_name(notion.kind) + " requires an idempotent pool S");
    notion.pool->check_ring(r);
    for (auto e : notion.pool->members())
        if (!s.is_idempotent(e))
            throw invalid_subset("S contains " + std::to_string(e.index) + ", which is not idempotent in " + r.label());
    if (notion.pool->empty()) throw invalid_subset("S must be non-empty");
    return notion.pool->members();
}

namespace detail {

template <typename Visit>
void search(const RingTable& r, const StructureCache& s, ElementId x, DecompKind kind,
            const std::vector<ElementId>& pool, Visit&& visit) {
    const auto t = traits(kind);
    for (auto e : pool) {
        for (auto sign : {Sign::Plus, Sign::Minus}) {
            if (sign == Sign::Minus && !t.both_signs) continue;
            const auto c = sign == Sign::Plus ? r.sub(x, e) : r.add(x, e);
            if (!in_class(s, t.companion, c)) continue;
            const bool commutes = r.commutes(c, e);
            if (t.commuting && !commutes) continue;
            if (!visit(DecompCert{kind, x, e, c, sign, commutes})) return;
        }
    }
}

}  // namespace detail

/// First certificate in canonical order, or nothing when x admits no decomposition of this kind.
inline std::optional<DecompCert> find_decomp(const RingTable& r, const StructureCache& s, ElementId x,
                                             const Notion& notion) {
    r.check(x);
    const auto pool = idempotent_pool(r, s, notion);
    std::optional<DecompCert> found;
    detail::search(r, s, x, notion.kind, pool, [&](const DecompCert& c) {
        found = c;
        return false;
    });
    return found;
}

/// Every certificate of x, in canonical order.
inline std::vector<DecompCert> all_decomps(const RingTable& r, const StructureCache& s, ElementId x,
                                           const Notion& notion) {
    r.check(x);
    const auto pool = idempotent_pool(r, s, notion);
    std::vector<DecompCert> out;
    detail::search(r, s, x, notion.kind, pool, [&](const DecompCert& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

/// Re-evaluates a certificate against the ring: arithmetic, companion class, commuting flag, sign rules.
inline bool recheck(const RingTable& r, const StructureCache& s, const DecompCert& c) {
    s.check_ring(r);
    for (auto x : {c.target, c.idempotent, c.companion})
        if (x.index >= r.order()) return false;
    const auto t = traits(c.kind);
    const auto value = c.sign == Sign::Plus ? r.add(c.companion, c.idempotent) : r.sub(c.companion, c.idempotent);
    if (value != c.target) return false;
    if (r.mul(c.idempotent, c.idempotent) != c.idempotent) return false;
    if (!in_class(s, t.companion, c.companion)) return false;
    if (c.commutes != r.commutes(c.companion, c.idempotent)) return false;
    if (t.commuting && !c.commutes) return false;
    if (!t.both_signs && c.sign != Sign::Plus) return false;
    return true;
}

struct RingVerdict {
    DecompKind kind;
    bool holds = false;
    /// Smallest element with no decomposition, when holds is false.
    std::optional<ElementId> witness_failure;
    /// One certificate per element, ascending by element, when holds is true.
    std::vector<DecompCert> certs;
};

inline RingVerdict ring_verdict(const RingTable& r, const StructureCache& s, const Notion& notion) {
    const auto pool = idempotent_pool(r, s, notion);
    RingVerdict v{notion.kind, true, std::nullopt, {}};
    v.certs.reserve(r.order());
    for (auto x : r.elements()) {
        std::optional<DecompCert> found;
        detail::search(r, s, x, notion.kind, pool, [&](const DecompCert& c) {
            found = c;
            return false;
        });
        if (!found) {
            v.holds = false;
            v.witness_failure = x;
            v.certs.clear();
            return v;
        }
        v.certs.push_back(*found);
    }
    return v;
}

inline bool holds(const RingTable& r, const StructureCache& s, const Notion& notion) {
    return ring_verdict(r, s, notion).holds;
}

enum class Side { Right, Left };

struct ExchangeReport {
    Side side;
    bool holds = true;
    std::optional<ElementId> failure;
    /// witness[x] is an idempotent e with e in xR and 1-e in (1-x)R (or the left analogue).
    std::vector<std::optional<ElementId>> witness;
};

/**
 * Exchange property, elementwise: for every x some idempotent e lies in xR with 1 - e in (1 - x)R
 * (right form), or in Rx with 1 - e in R(1 - x) (left form).
 */
inline ExchangeReport exchange_report(const RingTable& r, const StructureCache& s, Side side) {
    s.check_ring(r);
    ExchangeReport rep{side, true, std::nullopt, std::vector<std::optional<ElementId>>(r.order())};
    for (auto x : r.elements()) {
        const auto y = r.sub(r.one(), x);
        const auto xs = side == Side::Right ? right_multiples(r, x) : left_multiples(r, x);
        const auto ys = side == Side::Right ? right_multiples(r, y) : left_multiples(r, y);
        for (auto e : s.idempotents()) {
            if (xs.contains(e) && ys.contains(r.sub(r.one(), e))) {
                rep.witness[x.index] = e;
                break;
            }
        }
        if (!rep.witness[x.index] && rep.holds) {
            rep.holds = false;
            rep.failure = x;
        }
    }
    return rep;
}

inline bool is_exchange(const RingTable& r, const StructureCache& s, Side side = Side::Right) {
    return exchange_report(r, s, side).holds;
}

/// For every a there is k <= |R| with a^k in a^{k+1}R and a^k in Ra^{k+1}.
inline bool is_strongly_pi_regular(const RingTable& r) {
    for (auto a : r.elements()) {
        bool ok = false;
        ElementId p = a;
        for (std::size_t k = 1; k <= r.order() && !ok; ++k) {
            const auto q = r.mul(p, a);
            bool right = false, left = false;
            for (auto t : r.elements()) {
                right = right || r.mul(q, t) == p;
                left = left || r.mul(t, q) == p;
                if (right && left) break;
            }
            ok = right && left;
            p = q;
        }
        if (!ok) return false;
    }
    return true;
}

struct LiftReport {
    bool holds = true;
    /// Outcome did not depend on which coset representative was tested.
    bool representative_independent = true;
    /// lift[c] is an idempotent of R lifting idempotent coset c (absent for non-idempotent cosets).
    std::vector<std::optional<ElementId>> lift;
    std::optional<ElementId> failure;  // a coset with no lift
};

enum class LiftMode { Classical, Weak };

/**
 * Idempotent lifting modulo a two-sided ideal I: every idempotent coset c has an idempotent e of
 * R with e - x in I (classical), or e - x in I or e + x in I (weak), for x in c. Every
 * representative of every coset is tested.
 */
inline LiftReport lift_report(const RingTable& r, const StructureCache& s, const Subset& ideal, LiftMode mode) {
    const auto q = quotient(r, ideal);
    const StructureCache qs(q.table);
    LiftReport rep;
    rep.lift.resize(q.table.order());
    for (auto c : qs.idempotents()) {
        std::optional<bool> outcome;
        for (auto x : r.elements()) {
            if (q.project(x) != c) continue;
            std::optional<ElementId> found;
            for (auto e : s.idempotents()) {
                if (ideal.contains(r.sub(e, x)) || (mode == LiftMode::Weak && ideal.contains(r.add(e, x)))) {
                    found = e;
                    break;
                }
            }
            if (!outcome) {
                outcome = found.has_value();
                rep.lift[c.index] = found;
            } else if (*outcome != found.has_value()) {
                rep.representative_independent = false;
            }
        }
        if (outcome && !*outcome && rep.holds) {
            rep.holds = false;
            rep.failure = c;
        }
    }
    return rep;
}

inline bool lifts_idempotents_weakly(const RingTable& r, const StructureCache& s, const Subset& ideal) {
    return lift_report(r, s, ideal, LiftMode::Weak).holds;
}

inline bool lifts_idempotents(const RingTable& r, const StructureCache& s, const Subset& ideal) {
    return lift_report(r, s, ideal, LiftMode::Classical).holds;
}

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// 4 p^(k-1): an upper bound on |{n +/- e}| in Z_{p^k}, where Idem = {0,1} and |Nil| = p^(k-1).
inline std::uint64_t nil_clean_count_bound(std::uint64_t p, unsigned k) {
    if (!is_prime(p)) throw usage_error(std::to_string(p) + " is not prime");
    if (k < 1) throw usage_error("exponent must be at least 1");
    std::uint64_t v = 4;
    for (unsigned i = 1; i < k; ++i) {
        if (v > std::numeric_limits<std::uint64_t>::max() / p) throw usage_error("bound overflows 64 bits");
        v *= p;
    }
    return v;
}

}  // namespace wnc
