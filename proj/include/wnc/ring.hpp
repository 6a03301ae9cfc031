#pragma once

/**
 * @file ring.hpp
 * @brief Finite associative rings with unity stored as explicit operation tables.
 *
 * A RingTable is the universe every other part of the library speaks about. Elements are
 * identified by an ElementId, the index of the element inside its table. Tables are immutable
 * once built, so they can be shared freely between threads.
 *
 * Table entries are stored as 16-bit indices, which caps the order of a ring at kMaxOrder.
 */

#include <atomic>
#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "wnc/error.hpp"

namespace wnc {

struct ElementId {
    std::uint32_t index = 0;

    friend auto operator<=>(const ElementId&, const ElementId&) = default;
};

inline std::ostream& operator<<(std::ostream& os, ElementId x) { return os << x.index; }

inline constexpr std::size_t kMaxOrder = 65536;

class RingTable {
public:
    using entry_type = std::uint16_t;

    /// Takes ownership of raw tables. Validates shape and index range only; ring axioms are
    /// checked separately by verify_ring_axioms.
    RingTable(std::size_t order, std::vector<entry_type> add, std::vector<entry_type> mul,
              std::vector<entry_type> neg, ElementId zero, ElementId one, std::string label,
              std::vector<std::string> names = {})
        : order_(order),
          add_(std::move(add)),
          mul_(std::move(mul)),
          neg_(std::move(neg)),
          zero_(zero),
          one_(one),
          label_(std::move(label)),
          names_(std::move(names)),
          id_(next_id()) {
        if (order_ == 0) throw construction_error("ring order must be positive");
        if (order_ > kMaxOrder) throw capacity_error("ring order " + std::to_string(order_) + " exceeds table capacity");
        if (add_.size() != order_ * order_ || mul_.size() != order_ * order_ || neg_.size() != order_)
            throw construction_error("table dimensions do not match order " + std::to_string(order_));
        if (!names_.empty() && names_.size() != order_)
            throw construction_error("element name list does not match order");
        auto in_range = [this](entry_type v) { return v < order_; };
        for (auto v : add_)
            if (!in_range(v)) throw construction_error("addition table entry out of range");
        for (auto v : mul_)
            if (!in_range(v)) throw construction_error("multiplication table entry out of range");
        for (auto v : neg_)
            if (!in_range(v)) throw construction_error("negation table entry out of range");
        if (zero_.index >= order_ || one_.index >= order_) throw construction_error("zero or one out of range");
    }

    /**
     * Fills the tables by evaluating callbacks on every pair of indices. Negation is solved from
     * the addition table, so add must make (R, +) a group for the result to be meaningful.
     */
    template <typename AddFn, typename MulFn>
    static RingTable tabulate(std::size_t order, AddFn&& add_fn, MulFn&& mul_fn, ElementId zero, ElementId one,
                              std::string label, std::vector<std::string> names = {}) {
        if (order == 0) throw construction_error("ring order must be positive");
        if (order > kMaxOrder) throw capacity_error("ring order " + std::to_string(order) + " exceeds table capacity");
        std::vector<entry_type> add(order * order), mul(order * order), neg(order, 0);
        for (std::uint32_t a = 0; a < order; ++a) {
            for (std::uint32_t b = 0; b < order; ++b) {
                add[a * order + b] = static_cast<entry_type>(add_fn(a, b));
                mul[a * order + b] = static_cast<entry_type>(mul_fn(a, b));
            }
        }
        for (std::uint32_t a = 0; a < order; ++a) {
            for (std::uint32_t b = 0; b < order; ++b) {
                if (add[a * order + b] == zero.index) {
                    neg[a] = static_cast<entry_type>(b);
                    break;
                }
            }
        }
        return RingTable(order, std::move(add), std::move(mul), std::move(neg), zero, one, std::move(label),
                         std::move(names));
    }

    std::size_t order() const noexcept { return order_; }
    ElementId zero() const noexcept { return zero_; }
    ElementId one() const noexcept { return one_; }
    const std::string& label() const noexcept { return label_; }

    /// Identity of this table instance; copies share it.
    std::uint64_t id() const noexcept { return id_; }

    ElementId element(std::size_t index) const {
        if (index >= order_) throw usage_error("element " + std::to_string(index) + " is not in " + label_);
        return ElementId{static_cast<std::uint32_t>(index)};
    }

    void check(ElementId x) const {
        if (x.index >= order_)
            throw usage_error("element " + std::to_string(x.index) + " is not in " + label_ + " (order " +
                              std::to_string(order_) + ")");
    }

    ElementId add(ElementId a, ElementId b) const { return ElementId{add_[a.index * order_ + b.index]}; }
    ElementId mul(ElementId a, ElementId b) const { return ElementId{mul_[a.index * order_ + b.index]}; }
    ElementId neg(ElementId a) const { return ElementId{neg_[a.index]}; }
    ElementId sub(ElementId a, ElementId b) const { return add(a, neg(b)); }

    ElementId mul(ElementId a, ElementId b, ElementId c) const { return mul(mul(a, b), c); }

    /// x^k with x^0 = 1.
    ElementId pow(ElementId x, std::size_t k) const {
        ElementId acc = one_;
        for (std::size_t i = 0; i < k; ++i) acc = mul(acc, x);
        return acc;
    }

    /// n·1 for a non-negative integer n.
    ElementId integer(std::size_t n) const {
        ElementId acc = zero_;
        for (std::size_t i = 0; i < n; ++i) acc = add(acc, one_);
        return acc;
    }

    bool commutes(ElementId a, ElementId b) const { return mul(a, b) == mul(b, a); }

    bool is_commutative() const {
        for (std::uint32_t a = 0; a < order_; ++a)
            for (std::uint32_t b = a + 1; b < order_; ++b)
                if (mul_[a * order_ + b] != mul_[b * order_ + a]) return false;
        return true;
    }

    /// Human-readable construction coordinates of an element (falls back to its index).
    std::string name(ElementId x) const {
        check(x);
        return names_.empty() ? std::to_string(x.index) : names_[x.index];
    }

    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::vector<entry_type>& add_table() const noexcept { return add_; }
    const std::vector<entry_type>& mul_table() const noexcept { return mul_; }
    const std::vector<entry_type>& neg_table() const noexcept { return neg_; }

    std::vector<ElementId> elements() const {
        std::vector<ElementId> out(order_);
        for (std::uint32_t i = 0; i < order_; ++i) out[i] = ElementId{i};
        return out;
    }

private:
    static std::uint64_t next_id() {
        static std::atomic<std::uint64_t> counter{1};
        return counter.fetch_add(1, std::memory_order_relaxed);
    }

    std::size_t order_;
    std::vector<entry_type> add_;
    std::vector<entry_type> mul_;
    std::vector<entry_type> neg_;
    ElementId zero_;
    ElementId one_;
    std::string label_;
    std::vector<std::string> names_;
    std::uint64_t id_;
};

/// Same order, same distinguished elements and identical tables.
inline bool same_table(const RingTable& a, const RingTable& b) {
    return a.order() == b.order() && a.zero() == b.zero() && a.one() == b.one() && a.add_table() == b.add_table() &&
           a.mul_table() == b.mul_table();
}

struct AxiomCheck {
    std::string axiom;
    bool pass = true;
    std::vector<ElementId> witness;
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    const AxiomCheck* first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return &c;
        return nullptr;
    }
};

/**
 * Scans every ring axiom exhaustively. Each failing axiom carries the first witness found in
 * ascending index order. Cost is O(order^3).
 */
inline AxiomReport verify_ring_axioms(const RingTable& r) {
    const auto n = static_cast<std::uint32_t>(r.order());
    AxiomReport report;
    auto scan1 = [&](std::string name, auto&& holds) {
        AxiomCheck c{std::move(name), true, {}};
        for (std::uint32_t a = 0; a < n && c.pass; ++a)
            if (!holds(ElementId{a})) c = {c.axiom, false, {ElementId{a}}};
        report.checks.push_back(std::move(c));
    };
    auto scan2 = [&](std::string name, auto&& holds) {
        AxiomCheck c{std::move(name), true, {}};
        for (std::uint32_t a = 0; a < n && c.pass; ++a)
            for (std::uint32_t b = 0; b < n && c.pass; ++b)
                if (!holds(ElementId{a}, ElementId{b})) c = {c.axiom, false, {ElementId{a}, ElementId{b}}};
        report.checks.push_back(std::move(c));
    };
    auto scan3 = [&](std::string name, auto&& holds) {
        AxiomCheck c{std::move(name), true, {}};
        for (std::uint32_t a = 0; a < n && c.pass; ++a)
            for (std::uint32_t b = 0; b < n && c.pass; ++b)
                for (std::uint32_t d = 0; d < n && c.pass; ++d)
                    if (!holds(ElementId{a}, ElementId{b}, ElementId{d}))
                        c = {c.axiom, false, {ElementId{a}, ElementId{b}, ElementId{d}}};
        report.checks.push_back(std::move(c));
    };

    const auto z = r.zero();
    const auto o = r.one();
    scan1("additive identity", [&](ElementId a) { return r.add(a, z) == a && r.add(z, a) == a; });
    scan1("additive inverse", [&](ElementId a) { return r.add(a, r.neg(a)) == z && r.add(r.neg(a), a) == z; });
    scan2("additive commutativity", [&](ElementId a, ElementId b) { return r.add(a, b) == r.add(b, a); });
    scan3("additive associativity",
          [&](ElementId a, ElementId b, ElementId c) { return r.add(r.add(a, b), c) == r.add(a, r.add(b, c)); });
    scan1("multiplicative identity", [&](ElementId a) { return r.mul(a, o) == a && r.mul(o, a) == a; });
    scan3("multiplicative associativity",
          [&](ElementId a, ElementId b, ElementId c) { return r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c)); });
    scan3("left distributivity", [&](ElementId a, ElementId b, ElementId c) {
        return r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c));
    });
    scan3("right distributivity", [&](ElementId a, ElementId b, ElementId c) {
        return r.mul(r.add(a, b), c) == r.add(r.mul(a, c), r.mul(b, c));
    });
    AxiomCheck distinct{"zero differs from one", r.order() == 1 || z != o, {}};
    if (!distinct.pass) distinct.witness = {z, o};
    report.checks.push_back(std::move(distinct));
    return report;
}

/// Debug dump: header lines with order and label, then the three tables row-major.
inline void write_tables_csv(std::ostream& os, const RingTable& r) {
    const auto n = r.order();
    os << "order," << n << "\n";
    os << "label,\"" << r.label() << "\"\n";
    os << "zero," << r.zero().index << "\none," << r.one().index << "\n";
    auto emit = [&](const char* name, const std::vector<RingTable::entry_type>& t) {
        os << "table," << name << "\n";
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) os << (b ? "," : "") << t[a * n + b];
            os << "\n";
        }
    };
    emit("add", r.add_table());
    emit("mul", r.mul_table());
    os << "table,neg\n";
    for (std::size_t a = 0; a < n; ++a) os << (a ? "," : "") << r.neg_table()[a];
    os << "\n";
}

}  // namespace wnc
