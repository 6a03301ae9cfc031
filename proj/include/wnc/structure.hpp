#pragma once

/**
 * @file structure.hpp
 * @brief Structural sets of a finite ring: units, idempotents, nilpotents, Jacobson radical,
 *        annihilators and two-sided ideals.
 */

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wnc/ring.hpp"

namespace wnc {

/**
 * Memoized U(R), Idem(R), Nil(R) with nilpotency indices, and J(R).
 *
 * J(R) is computed with the quasi-regularity criterion {x : 1 - r x is a unit for all r}.
 * In a finite ring a one-sided inverse is two-sided, so the one-sided test is exact.
 */
class StructureCache {
public:
    explicit StructureCache(const RingTable& r)
        : ring_id_(r.id()),
          inverse_(r.order(), -1),
          idempotent_(r.order(), 0),
          nil_index_(r.order(), 0),
          radical_(r.order(), 0) {
        const auto n = static_cast<std::uint32_t>(r.order());
        for (std::uint32_t a = 0; a < n; ++a) {
            const ElementId x{a};
            if (r.mul(x, x) == x) idempotent_[a] = 1;
            if (inverse_[a] < 0) {
                for (std::uint32_t b = 0; b < n; ++b) {
                    const ElementId y{b};
                    if (r.mul(x, y) == r.one() && r.mul(y, x) == r.one()) {
                        inverse_[a] = static_cast<std::int32_t>(b);
                        inverse_[b] = static_cast<std::int32_t>(a);
                        break;
                    }
                }
            }
            // Nilpotent iff some power with exponent at most |R| vanishes.
            ElementId p = x;
            for (std::uint32_t k = 1; k <= n; ++k) {
                if (p == r.zero()) {
                    nil_index_[a] = k;
                    break;
                }
                p = r.mul(p, x);
            }
        }
        for (std::uint32_t a = 0; a < n; ++a) {
            bool quasi_regular = true;
            for (std::uint32_t b = 0; b < n && quasi_regular; ++b)
                quasi_regular = inverse_[r.sub(r.one(), r.mul(ElementId{b}, ElementId{a})).index] >= 0;
            radical_[a] = quasi_regular ? 1 : 0;
        }
        for (std::uint32_t a = 0; a < n; ++a) {
            const ElementId x{a};
            if (inverse_[a] >= 0) units_.push_back(x);
            if (idempotent_[a]) idempotents_.push_back(x);
            if (nil_index_[a]) nilpotents_.push_back(x);
            if (radical_[a]) radical_list_.push_back(x);
        }
    }

    std::uint64_t ring_id() const noexcept { return ring_id_; }

    bool is_unit(ElementId x) const { return inverse_.at(x.index) >= 0; }
    bool is_idempotent(ElementId x) const { return idempotent_.at(x.index) != 0; }
    bool is_nilpotent(ElementId x) const { return nil_index_.at(x.index) != 0; }
    bool in_radical(ElementId x) const { return radical_.at(x.index) != 0; }

    std::optional<ElementId> inverse(ElementId x) const {
        const auto v = inverse_.at(x.index);
        if (v < 0) return std::nullopt;
        return ElementId{static_cast<std::uint32_t>(v)};
    }

    /// Smallest k >= 1 with x^k = 0, or 0 when x is not nilpotent.
    std::uint32_t nilpotency_index(ElementId x) const { return nil_index_.at(x.index); }

    const std::vector<ElementId>& units() const noexcept { return units_; }
    const std::vector<ElementId>& idempotents() const noexcept { return idempotents_; }
    const std::vector<ElementId>& nilpotents() const noexcept { return nilpotents_; }
    const std::vector<ElementId>& radical() const noexcept { return radical_list_; }

    void check_ring(const RingTable& r) const {
        if (r.id() != ring_id_) throw usage_error("structure cache does not belong to " + r.label());
    }

private:
    std::uint64_t ring_id_;
    std::vector<std::int32_t> inverse_;
    std::vector<std::uint8_t> idempotent_;
    std::vector<std::uint32_t> nil_index_;
    std::vector<std::uint8_t> radical_;
    std::vector<ElementId> units_;
    std::vector<ElementId> idempotents_;
    std::vector<ElementId> nilpotents_;
    std::vector<ElementId> radical_list_;
};

inline StructureCache structure(const RingTable& r) { return StructureCache(r); }

/**
 * A subset of a specific ring, with ideal flags recomputed from the members on construction.
 * Members are kept sorted ascending.
 */
class Subset {
public:
    Subset(const RingTable& r, std::vector<ElementId> members)
        : ring_id_(r.id()), order_(r.order()), label_(r.label()), bits_(r.order(), 0) {
        for (auto x : members) {
            r.check(x);
            bits_[x.index] = 1;
        }
        for (std::uint32_t i = 0; i < order_; ++i)
            if (bits_[i]) members_.push_back(ElementId{i});
        compute_flags(r);
    }

    std::uint64_t ring_id() const noexcept { return ring_id_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const std::vector<ElementId>& members() const noexcept { return members_; }

    bool contains(ElementId x) const {
        if (x.index >= order_) throw usage_error("element " + std::to_string(x.index) + " is not in " + label_);
        return bits_[x.index] != 0;
    }

    bool is_additive_subgroup() const noexcept { return additive_subgroup_; }
    bool is_left_ideal() const noexcept { return left_ideal_; }
    bool is_right_ideal() const noexcept { return right_ideal_; }
    bool is_ideal() const noexcept { return left_ideal_ && right_ideal_; }
    bool is_whole_ring() const noexcept { return members_.size() == order_; }

    void check_same_ring(const Subset& other) const {
        if (other.ring_id_ != ring_id_) throw usage_error("subsets of different rings cannot be compared");
    }

    void check_ring(const RingTable& r) const {
        if (r.id() != ring_id_) throw usage_error("subset does not belong to " + r.label());
    }

    bool subset_of(const Subset& other) const {
        check_same_ring(other);
        for (auto x : members_)
            if (!other.bits_[x.index]) return false;
        return true;
    }

    friend bool operator==(const Subset& a, const Subset& b) {
        a.check_same_ring(b);
        return a.members_ == b.members_;
    }

    /// Canonical order: by size, then lexicographically by member list.
    friend bool canonical_less(const Subset& a, const Subset& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.members_ < b.members_;
    }

private:
    void compute_flags(const RingTable& r) {
        additive_subgroup_ = bits_[r.zero().index] != 0;
        for (auto a : members_) {
            if (!additive_subgroup_) break;
            if (!bits_[r.neg(a).index]) additive_subgroup_ = false;
            for (auto b : members_)
                if (!bits_[r.add(a, b).index]) {
                    additive_subgroup_ = false;
                    break;
                }
        }
        left_ideal_ = right_ideal_ = additive_subgroup_;
        if (!additive_subgroup_) return;
        for (auto s : members_) {
            for (std::uint32_t i = 0; i < order_ && (left_ideal_ || right_ideal_); ++i) {
                const ElementId x{i};
                if (!bits_[r.mul(x, s).index]) left_ideal_ = false;
                if (!bits_[r.mul(s, x).index]) right_ideal_ = false;
            }
        }
    }

    std::uint64_t ring_id_;
    std::size_t order_;
    std::string label_;
    std::vector<std::uint8_t> bits_;
    std::vector<ElementId> members_;
    bool additive_subgroup_ = false;
    bool left_ideal_ = false;
    bool right_ideal_ = false;
};

inline Subset intersection(const RingTable& r, const Subset& a, const Subset& b) {
    a.check_ring(r);
    a.check_same_ring(b);
    std::vector<ElementId> out;
    for (auto x : a.members())
        if (b.contains(x)) out.push_back(x);
    return Subset(r, std::move(out));
}

inline Subset whole_ring(const RingTable& r) { return Subset(r, r.elements()); }

inline Subset units_of(const RingTable& r, const StructureCache& s) {
    s.check_ring(r);
    return Subset(r, s.units());
}
inline Subset idempotents_of(const RingTable& r, const StructureCache& s) {
    s.check_ring(r);
    return Subset(r, s.idempotents());
}
inline Subset nilpotents_of(const RingTable& r, const StructureCache& s) {
    s.check_ring(r);
    return Subset(r, s.nilpotents());
}
inline Subset radical_of(const RingTable& r, const StructureCache& s) {
    s.check_ring(r);
    return Subset(r, s.radical());
}

/// {r : r x = 0}
inline Subset ann_left(const RingTable& r, ElementId x) {
    r.check(x);
    std::vector<ElementId> out;
    for (auto y : r.elements())
        if (r.mul(y, x) == r.zero()) out.push_back(y);
    return Subset(r, std::move(out));
}

/// {r : x r = 0}
inline Subset ann_right(const RingTable& r, ElementId x) {
    r.check(x);
    std::vector<ElementId> out;
    for (auto y : r.elements())
        if (r.mul(x, y) == r.zero()) out.push_back(y);
    return Subset(r, std::move(out));
}

/// R x = {r x : r in R}
inline Subset left_multiples(const RingTable& r, ElementId x) {
    r.check(x);
    std::vector<ElementId> out;
    for (auto y : r.elements()) out.push_back(r.mul(y, x));
    return Subset(r, std::move(out));
}

/// x R = {x r : r in R}
inline Subset right_multiples(const RingTable& r, ElementId x) {
    r.check(x);
    std::vector<ElementId> out;
    for (auto y : r.elements()) out.push_back(r.mul(x, y));
    return Subset(r, std::move(out));
}

/// Smallest two-sided ideal containing gens, computed by worklist closure.
inline Subset ideal_generated_by(const RingTable& r, const std::vector<ElementId>& gens) {
    const auto n = r.order();
    std::vector<std::uint8_t> in(n, 0);
    std::vector<ElementId> members;
    std::deque<ElementId> work;
    auto push = [&](ElementId x) {
        if (!in[x.index]) {
            in[x.index] = 1;
            work.push_back(x);
        }
    };
    push(r.zero());
    for (auto g : gens) {
        r.check(g);
        push(g);
    }
    while (!work.empty()) {
        const auto a = work.front();
        work.pop_front();
        members.push_back(a);
        push(r.neg(a));
        for (auto x : r.elements()) {
            push(r.mul(x, a));
            push(r.mul(a, x));
        }
        // Sums with everything admitted so far; later arrivals pair with a when they are popped.
        for (std::size_t i = 0; i < members.size(); ++i) push(r.add(a, members[i]));
    }
    return Subset(r, std::move(members));
}

/// I + J for two-sided ideals I, J.
inline Subset ideal_sum(const RingTable& r, const Subset& a, const Subset& b) {
    a.check_same_ring(b);
    std::vector<ElementId> out;
    out.reserve(a.size() * b.size());
    for (auto x : a.members())
        for (auto y : b.members()) out.push_back(r.add(x, y));
    return Subset(r, std::move(out));
}

/**
 * Every two-sided ideal of R, sorted canonically. Principal ideals are generated first; the
 * lattice is then saturated under pairwise sums until no new ideal appears. Every ideal of a
 * finite ring is a finite sum of principal ideals, so the result is complete.
 */
inline std::vector<Subset> all_ideals(const RingTable& r) {
    std::vector<Subset> ideals;
    std::set<std::vector<ElementId>> seen;
    auto admit = [&](Subset s) {
        if (seen.insert(s.members()).second) ideals.push_back(std::move(s));
    };
    for (auto x : r.elements()) admit(ideal_generated_by(r, {x}));
    for (std::size_t i = 0; i < ideals.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (ideals[i].subset_of(ideals[j]) || ideals[j].subset_of(ideals[i])) continue;
            admit(ideal_sum(r, ideals[i], ideals[j]));
        }
    }
    std::sort(ideals.begin(), ideals.end(), [](const Subset& a, const Subset& b) { return canonical_less(a, b); });
    return ideals;
}

/// Maximal proper two-sided ideals, sorted canonically. The zero ring has none.
inline std::vector<Subset> maximal_ideals(const RingTable& r) {
    const auto ideals = all_ideals(r);
    std::vector<Subset> proper;
    for (const auto& i : ideals)
        if (!i.is_whole_ring()) proper.push_back(i);
    std::vector<Subset> out;
    for (std::size_t i = 0; i < proper.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < proper.size() && maximal; ++j)
            if (j != i && proper[j].size() > proper[i].size() && proper[i].subset_of(proper[j])) maximal = false;
        if (maximal) out.push_back(proper[i]);
    }
    return out;
}

inline bool is_boolean(const RingTable& r, const StructureCache& s) { return s.idempotents().size() == r.order(); }

}  // namespace wnc
