#pragma once

/**
 * @file constructions.hpp
 * @brief Builders for the finite rings used throughout the library and the ring-expression DSL.
 *
 * Element encodings are fixed mixed-radix layouts, so indices are stable across runs:
 *
 * - `Z(n)`: index i is the residue i.
 * - `prod(R1,...,Rk)`: tuple (a1,...,ak), first factor most significant.
 * - `M<k>(R)`: the k*k entries row-major, entry (0,0) most significant.
 * - `T<k>(R)`: the upper-triangular entries (i <= j) row-major.
 * - `eqdiag<k>(R)`: the shared diagonal value first, then the strictly upper entries row-major.
 * - `idealize(R, M)`: pair (r, m) with index r*|M| + m.
 * - `corner(R, f)`: the elements of fRf in ascending order of their index in R.
 * - `quot(R, [g...])`: cosets ordered by their smallest member, which is also the representative.
 * - `skew(R, s, n)`: coefficient tuple (a0,...,a_{n-1}), a0 most significant.
 */

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wnc/ring.hpp"
#include "wnc/structure.hpp"

namespace wnc {

struct BuildOptions {
    std::size_t size_budget = 20000;
    /// Built rings up to this order are axiom-checked unconditionally.
    std::size_t verify_limit = 256;

    /// Defaults, with the budget overridden by WNC_SIZE_BUDGET when set.
    static BuildOptions from_env() {
        BuildOptions opts;
        if (const char* v = std::getenv("WNC_SIZE_BUDGET"); v && *v) {
            char* end = nullptr;
            const auto parsed = std::strtoull(v, &end, 10);
            if (end && *end == '\0' && parsed > 0) opts.size_budget = static_cast<std::size_t>(parsed);
        }
        return opts;
    }
};

namespace detail {

inline std::size_t checked_order(const std::vector<std::size_t>& factors, const BuildOptions& opts,
                                 const std::string& what) {
    std::size_t acc = 1;
    for (auto f : factors) {
        if (f != 0 && acc > std::numeric_limits<std::size_t>::max() / f) {
            acc = std::numeric_limits<std::size_t>::max();
            break;
        }
        acc *= f;
    }
    if (acc > opts.size_budget || acc > kMaxOrder)
        throw capacity_error(what + " would have " +
                             (acc == std::numeric_limits<std::size_t>::max() ? std::string("too many")
                                                                            : std::to_string(acc)) +
                             " elements, over the budget of " + std::to_string(std::min(opts.size_budget, kMaxOrder)));
    return acc;
}

inline std::size_t power_order(std::size_t base, std::size_t exponent, const BuildOptions& opts,
                               const std::string& what) {
    return checked_order(std::vector<std::size_t>(exponent, base), opts, what);
}

inline void verify_or_throw(const RingTable& r) {
    const auto report = verify_ring_axioms(r);
    if (const auto* f = report.first_failure()) {
        std::ostringstream os;
        os << r.label() << " violates " << f->axiom << " at (";
        for (std::size_t i = 0; i < f->witness.size(); ++i) os << (i ? "," : "") << f->witness[i].index;
        os << ")";
        throw construction_error(os.str());
    }
}

inline void maybe_verify(const RingTable& r, const BuildOptions& opts) {
    if (r.order() <= opts.verify_limit) verify_or_throw(r);
}

inline bool is_atomic_name(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

/// Mixed-radix index <-> digit tuple, first digit most significant.
class Radix {
public:
    Radix(std::size_t base, std::size_t digits) : bases_(digits, base) {}
    explicit Radix(std::vector<std::size_t> bases) : bases_(std::move(bases)) {}

    std::size_t digits() const noexcept { return bases_.size(); }

    std::vector<std::uint32_t> decode(std::size_t index) const {
        std::vector<std::uint32_t> out(bases_.size());
        for (std::size_t i = bases_.size(); i-- > 0;) {
            out[i] = static_cast<std::uint32_t>(index % bases_[i]);
            index /= bases_[i];
        }
        return out;
    }

    template <typename Digits>
    std::uint32_t encode(const Digits& d) const {
        std::size_t index = 0;
        for (std::size_t i = 0; i < bases_.size(); ++i) index = index * bases_[i] + d[i];
        return static_cast<std::uint32_t>(index);
    }

private:
    std::vector<std::size_t> bases_;
};

}  // namespace detail

inline RingTable zn(std::size_t n, const BuildOptions& opts = {}) {
    if (n == 0) throw construction_error("Z(n) requires n >= 1");
    detail::checked_order({n}, opts, "Z(" + std::to_string(n) + ")");
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i) names[i] = std::to_string(i);
    return RingTable::tabulate(
        n, [n](std::uint32_t a, std::uint32_t b) { return (a + b) % n; },
        [n](std::uint32_t a, std::uint32_t b) { return static_cast<std::uint32_t>((std::uint64_t{a} * b) % n); },
        ElementId{0}, ElementId{static_cast<std::uint32_t>(1 % n)}, "Z(" + std::to_string(n) + ")", std::move(names));
}

inline RingTable product(const std::vector<RingTable>& factors, const BuildOptions& opts = {}) {
    if (factors.empty()) throw construction_error("prod requires at least one factor");
    std::vector<std::size_t> orders;
    std::string label = "prod(";
    for (std::size_t i = 0; i < factors.size(); ++i) {
        orders.push_back(factors[i].order());
        label += (i ? "," : "") + factors[i].label();
    }
    label += ")";
    const auto order = detail::checked_order(orders, opts, label);
    const detail::Radix radix(orders);
    std::vector<std::vector<std::uint32_t>> coords(order);
    std::vector<std::string> names(order);
    for (std::size_t i = 0; i < order; ++i) {
        coords[i] = radix.decode(i);
        std::string nm = "(";
        for (std::size_t f = 0; f < factors.size(); ++f) nm += (f ? "," : "") + factors[f].name(ElementId{coords[i][f]});
        names[i] = nm + ")";
    }
    auto combine = [&](auto op) {
        return [&, op](std::uint32_t a, std::uint32_t b) {
            std::vector<std::uint32_t> out(factors.size());
            for (std::size_t f = 0; f < factors.size(); ++f)
                out[f] = op(factors[f], ElementId{coords[a][f]}, ElementId{coords[b][f]}).index;
            return radix.encode(out);
        };
    };
    std::vector<std::uint32_t> zero(factors.size()), one(factors.size());
    for (std::size_t f = 0; f < factors.size(); ++f) {
        zero[f] = factors[f].zero().index;
        one[f] = factors[f].one().index;
    }
    auto r = RingTable::tabulate(
        order, combine([](const RingTable& t, ElementId x, ElementId y) { return t.add(x, y); }),
        combine([](const RingTable& t, ElementId x, ElementId y) { return t.mul(x, y); }), ElementId{radix.encode(zero)},
        ElementId{radix.encode(one)}, std::move(label), std::move(names));
    detail::maybe_verify(r, opts);
    return r;
}

enum class MatrixKind { Full, Upper, EqualDiagonal };

namespace detail {

/**
 * Subrings of M_k(R) described by slots: each slot is a set of positions that share one value,
 * positions outside every slot are zero.
 */
inline RingTable matrix_like(MatrixKind kind, std::size_t k, const RingTable& base, const BuildOptions& opts) {
    std::vector<std::vector<std::size_t>> slots;
    std::string prefix;
    switch (kind) {
        case MatrixKind::Full:
            prefix = "M";
            for (std::size_t i = 0; i < k * k; ++i) slots.push_back({i});
            break;
        case MatrixKind::Upper:
            prefix = "T";
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = i; j < k; ++j) slots.push_back({i * k + j});
            break;
        case MatrixKind::EqualDiagonal: {
            prefix = "eqdiag";
            std::vector<std::size_t> diag;
            for (std::size_t i = 0; i < k; ++i) diag.push_back(i * k + i);
            slots.push_back(diag);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = i + 1; j < k; ++j) slots.push_back({i * k + j});
            break;
        }
    }
    std::string label = prefix + std::to_string(k) + "(" + base.label() + ")";
    const auto order = power_order(base.order(), slots.size(), opts, label);
    const Radix radix(base.order(), slots.size());
    const auto cells = k * k;
    const auto z = base.zero().index;

    std::vector<std::uint32_t> entries(order * cells, z);
    std::vector<std::string> names(order);
    for (std::size_t i = 0; i < order; ++i) {
        const auto digits = radix.decode(i);
        for (std::size_t s = 0; s < slots.size(); ++s)
            for (auto pos : slots[s]) entries[i * cells + pos] = digits[s];
        std::string nm = "[";
        for (std::size_t r = 0; r < k; ++r) {
            nm += (r ? ",[" : "[");
            for (std::size_t c = 0; c < k; ++c) nm += (c ? "," : "") + base.name(ElementId{entries[i * cells + r * k + c]});
            nm += "]";
        }
        names[i] = nm + "]";
    }
    auto encode = [&](const std::vector<std::uint32_t>& m) {
        std::vector<std::uint32_t> digits(slots.size());
        for (std::size_t s = 0; s < slots.size(); ++s) digits[s] = m[slots[s].front()];
        return radix.encode(digits);
    };
    auto add = [&](std::uint32_t a, std::uint32_t b) {
        std::vector<std::uint32_t> m(cells);
        for (std::size_t p = 0; p < cells; ++p)
            m[p] = base.add(ElementId{entries[a * cells + p]}, ElementId{entries[b * cells + p]}).index;
        return encode(m);
    };
    auto mul = [&](std::uint32_t a, std::uint32_t b) {
        std::vector<std::uint32_t> m(cells, z);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) {
                ElementId acc{z};
                for (std::size_t t = 0; t < k; ++t)
                    acc = base.add(acc, base.mul(ElementId{entries[a * cells + r * k + t]},
                                                 ElementId{entries[b * cells + t * k + c]}));
                m[r * k + c] = acc.index;
            }
        return encode(m);
    };
    std::vector<std::uint32_t> identity(cells, z);
    for (std::size_t i = 0; i < k; ++i) identity[i * k + i] = base.one().index;
    auto r = RingTable::tabulate(order, add, mul, ElementId{encode(std::vector<std::uint32_t>(cells, z))},
                                 ElementId{encode(identity)}, std::move(label),
                                 std::move(names));
    maybe_verify(r, opts);
    return r;
}

}  // namespace detail

inline RingTable matrix_ring(std::size_t k, const RingTable& base, const BuildOptions& opts = {}) {
    if (k < 1) throw construction_error("M<k> requires k >= 1");
    return detail::matrix_like(MatrixKind::Full, k, base, opts);
}

inline RingTable upper_triangular(std::size_t k, const RingTable& base, const BuildOptions& opts = {}) {
    if (k < 1) throw construction_error("T<k> requires k >= 1");
    return detail::matrix_like(MatrixKind::Upper, k, base, opts);
}

/// Upper-triangular k*k matrices whose diagonal entries all coincide.
inline RingTable eq_diag_subring(std::size_t k, const RingTable& base, const BuildOptions& opts = {}) {
    if (k < 2) throw construction_error("eqdiag<k> requires k >= 2");
    return detail::matrix_like(MatrixKind::EqualDiagonal, k, base, opts);
}

/// A finite left module over a ring: an abelian group with an action table r.m.
struct LeftModule {
    std::size_t order = 0;
    std::vector<std::uint32_t> add;     // order * order
    std::vector<std::uint32_t> action;  // ring order * order
    std::uint32_t zero = 0;
    std::vector<std::string> names;
    std::string label;
};

/// R as a left module over itself.
inline LeftModule self_module(const RingTable& r) {
    LeftModule m;
    m.order = r.order();
    m.add.resize(m.order * m.order);
    m.action.resize(r.order() * m.order);
    for (std::uint32_t a = 0; a < m.order; ++a)
        for (std::uint32_t b = 0; b < m.order; ++b) {
            m.add[a * m.order + b] = r.add(ElementId{a}, ElementId{b}).index;
            m.action[a * m.order + b] = r.mul(ElementId{a}, ElementId{b}).index;
        }
    m.zero = r.zero().index;
    m.names.resize(m.order);
    for (std::uint32_t a = 0; a < m.order; ++a) m.names[a] = r.name(ElementId{a});
    m.label = "self";
    return m;
}

/// Z_m as a module over Z_n (the table of `zn(n)`), r.x = r*x mod m. Requires m | n.
inline LeftModule cyclic_module(const RingTable& zn_table, std::size_t m) {
    const auto n = zn_table.order();
    if (m == 0 || n % m != 0)
        throw invalid_module("Z(" + std::to_string(m) + ") is not a module over " + zn_table.label() + ": " +
                             std::to_string(m) + " does not divide " + std::to_string(n));
    LeftModule mod;
    mod.order = m;
    mod.add.resize(m * m);
    mod.action.resize(n * m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) mod.add[a * m + b] = static_cast<std::uint32_t>((a + b) % m);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t x = 0; x < m; ++x) mod.action[r * m + x] = static_cast<std::uint32_t>((r * x) % m);
    mod.zero = 0;
    mod.names.resize(m);
    for (std::size_t a = 0; a < m; ++a) mod.names[a] = std::to_string(a);
    mod.label = "Z(" + std::to_string(m) + ")";
    return mod;
}

/**
 * Idealization R(M) = R (+) M with (r,m)(r',m') = (rr', r.m' + r'.m). The product law is used
 * verbatim; over a noncommutative R it need not be associative, so the result is always
 * axiom-checked when R is noncommutative.
 */
inline RingTable idealization(const RingTable& r, const LeftModule& m, const BuildOptions& opts = {}) {
    std::string label = "idealize(" + r.label() + "," + m.label + ")";
    const auto order = detail::checked_order({r.order(), m.order}, opts, label);
    const auto mo = static_cast<std::uint32_t>(m.order);
    auto act = [&](std::uint32_t ring_el, std::uint32_t mod_el) { return m.action[ring_el * mo + mod_el]; };
    auto madd = [&](std::uint32_t x, std::uint32_t y) { return m.add[x * mo + y]; };
    std::vector<std::string> names(order);
    for (std::uint32_t i = 0; i < order; ++i) names[i] = "(" + r.name(ElementId{i / mo}) + "," + m.names[i % mo] + ")";
    auto table = RingTable::tabulate(
        order,
        [&](std::uint32_t a, std::uint32_t b) {
            return r.add(ElementId{a / mo}, ElementId{b / mo}).index * mo + madd(a % mo, b % mo);
        },
        [&](std::uint32_t a, std::uint32_t b) {
            const ElementId ra{a / mo}, rb{b / mo};
            return r.mul(ra, rb).index * mo + madd(act(ra.index, b % mo), act(rb.index, a % mo));
        },
        ElementId{r.zero().index * mo + m.zero}, ElementId{r.one().index * mo + m.zero}, std::move(label),
        std::move(names));
    if (!r.is_commutative())
        detail::verify_or_throw(table);
    else
        detail::maybe_verify(table, opts);
    return table;
}

struct CornerRing {
    RingTable table;
    /// embedding[i] is the element of R represented by index i of fRf.
    std::vector<ElementId> embedding;
};

/// fRf with unity f, plus its embedding back into R.
inline CornerRing corner(const RingTable& r, ElementId f, const BuildOptions& opts = {}) {
    r.check(f);
    if (r.mul(f, f) != f)
        throw invalid_idempotent("element " + std::to_string(f.index) + " of " + r.label() + " is not idempotent");
    std::vector<std::uint8_t> in(r.order(), 0);
    for (auto x : r.elements()) in[r.mul(f, x, f).index] = 1;
    std::vector<ElementId> embedding;
    std::vector<std::int32_t> position(r.order(), -1);
    for (std::uint32_t i = 0; i < r.order(); ++i)
        if (in[i]) {
            position[i] = static_cast<std::int32_t>(embedding.size());
            embedding.push_back(ElementId{i});
        }
    std::string label = "corner(" + r.label() + "," + std::to_string(f.index) + ")";
    detail::checked_order({embedding.size()}, opts, label);
    std::vector<std::string> names;
    for (auto e : embedding) names.push_back(r.name(e));
    auto pos = [&](ElementId x) { return static_cast<std::uint32_t>(position[x.index]); };
    auto table = RingTable::tabulate(
        embedding.size(), [&](std::uint32_t a, std::uint32_t b) { return pos(r.add(embedding[a], embedding[b])); },
        [&](std::uint32_t a, std::uint32_t b) { return pos(r.mul(embedding[a], embedding[b])); },
        ElementId{pos(r.zero())}, ElementId{pos(f)}, std::move(label), std::move(names));
    detail::maybe_verify(table, opts);
    return {std::move(table), std::move(embedding)};
}

struct QuotientRing {
    RingTable table;
    /// projection[x] is the coset of x.
    std::vector<ElementId> projection;
    /// representatives[c] is the smallest member of coset c.
    std::vector<ElementId> representatives;

    ElementId project(ElementId x) const { return projection.at(x.index); }
};

/// R/I for a two-sided ideal I; each coset is represented by its smallest member.
inline QuotientRing quotient(const RingTable& r, const Subset& ideal, std::optional<std::string> label = {},
                             const BuildOptions& opts = {}) {
    ideal.check_ring(r);
    if (!ideal.is_ideal()) throw invalid_ideal("subset is not a two-sided ideal of " + r.label());
    if (!label) {
        std::string l = "quot(" + r.label() + ",[";
        for (std::size_t i = 0; i < ideal.members().size(); ++i)
            l += (i ? "," : "") + std::to_string(ideal.members()[i].index);
        label = l + "])";
    }
    std::vector<std::int32_t> coset_of(r.order(), -1);
    std::vector<ElementId> reps;
    for (auto x : r.elements()) {
        if (coset_of[x.index] >= 0) continue;
        const auto c = static_cast<std::int32_t>(reps.size());
        reps.push_back(x);
        for (auto i : ideal.members()) coset_of[r.add(x, i).index] = c;
    }
    detail::checked_order({reps.size()}, opts, *label);
    std::vector<ElementId> projection(r.order());
    for (std::uint32_t i = 0; i < r.order(); ++i) projection[i] = ElementId{static_cast<std::uint32_t>(coset_of[i])};
    std::vector<std::string> names;
    for (auto x : reps) names.push_back("[" + r.name(x) + "]");
    auto table = RingTable::tabulate(
        reps.size(), [&](std::uint32_t a, std::uint32_t b) { return projection[r.add(reps[a], reps[b]).index].index; },
        [&](std::uint32_t a, std::uint32_t b) { return projection[r.mul(reps[a], reps[b]).index].index; },
        projection[r.zero().index], projection[r.one().index], std::move(*label), std::move(names));
    detail::maybe_verify(table, opts);
    return {std::move(table), std::move(projection), std::move(reps)};
}

/// Throws invalid_endomorphism unless sigma is an additive, multiplicative map fixing 1.
inline void check_endomorphism(const RingTable& r, const std::vector<ElementId>& sigma) {
    if (sigma.size() != r.order()) throw invalid_endomorphism("endomorphism map has the wrong length");
    for (auto s : sigma)
        if (s.index >= r.order()) throw invalid_endomorphism("endomorphism map leaves the ring");
    if (sigma[r.one().index] != r.one()) throw invalid_endomorphism("endomorphism does not fix 1");
    for (auto a : r.elements())
        for (auto b : r.elements()) {
            if (sigma[r.add(a, b).index] != r.add(sigma[a.index], sigma[b.index]))
                throw invalid_endomorphism("map is not additive at (" + std::to_string(a.index) + "," +
                                           std::to_string(b.index) + ")");
            if (sigma[r.mul(a, b).index] != r.mul(sigma[a.index], sigma[b.index]))
                throw invalid_endomorphism("map is not multiplicative at (" + std::to_string(a.index) + "," +
                                           std::to_string(b.index) + ")");
        }
}

/**
 * The automorphism of prod(factors) sending coordinate i to position perm[i]. Factors that trade
 * places must have identical tables.
 */
inline std::vector<ElementId> factor_permutation(const std::vector<RingTable>& factors,
                                                 const std::vector<std::size_t>& perm) {
    const auto k = factors.size();
    if (perm.size() != k) throw invalid_endomorphism("permutation length does not match the number of factors");
    std::vector<std::uint8_t> hit(k, 0);
    for (auto p : perm) {
        if (p >= k || hit[p]) throw invalid_endomorphism("factor permutation is not a permutation");
        hit[p] = 1;
    }
    for (std::size_t i = 0; i < k; ++i)
        if (!same_table(factors[i], factors[perm[i]]))
            throw invalid_endomorphism("factor permutation moves " + factors[i].label() + " onto non-isomorphic " +
                                       factors[perm[i]].label());
    std::vector<std::size_t> orders;
    std::size_t order = 1;
    for (const auto& f : factors) {
        orders.push_back(f.order());
        order *= f.order();
    }
    const detail::Radix radix(orders);
    std::vector<ElementId> sigma(order);
    for (std::size_t x = 0; x < order; ++x) {
        const auto d = radix.decode(x);
        std::vector<std::uint32_t> out(k);
        for (std::size_t i = 0; i < k; ++i) out[perm[i]] = d[i];
        sigma[x] = ElementId{radix.encode(out)};
    }
    return sigma;
}

/**
 * The truncated skew polynomial ring R[x; sigma]/(x^n): coefficient tuples (a0..a_{n-1}) with
 * x a = sigma(a) x and x^n = 0.
 */
inline RingTable skew_poly_quot(const RingTable& r, const std::vector<ElementId>& sigma, std::size_t n,
                                const std::string& endo_label = "id", const BuildOptions& opts = {}) {
    if (n < 1) throw construction_error("skew truncation requires n >= 1");
    check_endomorphism(r, sigma);
    std::string label = "skew(" + r.label() + "," + endo_label + "," + std::to_string(n) + ")";
    const auto order = detail::power_order(r.order(), n, opts, label);
    const detail::Radix radix(r.order(), n);

    // sigma_pow[i][a] = sigma^i(a)
    std::vector<std::vector<ElementId>> sigma_pow(n, std::vector<ElementId>(r.order()));
    for (std::uint32_t a = 0; a < r.order(); ++a) sigma_pow[0][a] = ElementId{a};
    for (std::size_t i = 1; i < n; ++i)
        for (std::uint32_t a = 0; a < r.order(); ++a) sigma_pow[i][a] = sigma[sigma_pow[i - 1][a].index];

    std::vector<std::vector<std::uint32_t>> coeffs(order);
    std::vector<std::string> names(order);
    for (std::size_t i = 0; i < order; ++i) {
        coeffs[i] = radix.decode(i);
        std::string nm;
        for (std::size_t d = 0; d < n; ++d) {
            auto c = r.name(ElementId{coeffs[i][d]});
            if (!detail::is_atomic_name(c)) c = "(" + c + ")";
            if (d) nm += "+";
            nm += c;
            if (d == 1) nm += "x";
            if (d > 1) nm += "x^" + std::to_string(d);
        }
        names[i] = nm;
    }
    auto table = RingTable::tabulate(
        order,
        [&](std::uint32_t a, std::uint32_t b) {
            std::vector<std::uint32_t> out(n);
            for (std::size_t d = 0; d < n; ++d) out[d] = r.add(ElementId{coeffs[a][d]}, ElementId{coeffs[b][d]}).index;
            return radix.encode(out);
        },
        [&](std::uint32_t a, std::uint32_t b) {
            std::vector<ElementId> out(n, r.zero());
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; i + j < n; ++j)
                    out[i + j] = r.add(out[i + j], r.mul(ElementId{coeffs[a][i]}, sigma_pow[i][coeffs[b][j]]));
            std::vector<std::uint32_t> digits(n);
            for (std::size_t d = 0; d < n; ++d) digits[d] = out[d].index;
            return radix.encode(digits);
        },
        ElementId{radix.encode(std::vector<std::uint32_t>(n, r.zero().index))},
        [&] {
            std::vector<std::uint32_t> one(n, r.zero().index);
            one[0] = r.one().index;
            return ElementId{radix.encode(one)};
        }(),
        std::move(label), std::move(names));
    detail::maybe_verify(table, opts);
    return table;
}

inline std::vector<ElementId> identity_map(const RingTable& r) { return r.elements(); }

// ---------------------------------------------------------------------------------------------
// Ring expressions

struct RingExpr;
using ExprPtr = std::shared_ptr<const RingExpr>;

struct ModuleSpec {
    enum class Kind { Self, Cyclic };
    Kind kind = Kind::Self;
    std::size_t modulus = 0;  // Cyclic only
};

struct EndoSpec {
    enum class Kind { Identity, FactorPermutation };
    Kind kind = Kind::Identity;
    /// Zero-based: factor i moves to position permutation[i].
    std::vector<std::size_t> permutation;

    static EndoSpec swap(std::size_t i, std::size_t j, std::size_t factors) {
        EndoSpec e{Kind::FactorPermutation, {}};
        for (std::size_t t = 0; t < factors; ++t) e.permutation.push_back(t);
        std::swap(e.permutation.at(i), e.permutation.at(j));
        return e;
    }
};

struct ZnNode {
    std::size_t n;
};
struct ProdNode {
    std::vector<ExprPtr> factors;
};
struct MatrixNode {
    MatrixKind kind;
    std::size_t k;
    ExprPtr base;
};
struct IdealizeNode {
    ExprPtr base;
    ModuleSpec module;
};
struct CornerNode {
    ExprPtr base;
    std::size_t idempotent;
};
struct QuotNode {
    ExprPtr base;
    std::vector<std::size_t> generators;
};
struct SkewNode {
    ExprPtr base;
    EndoSpec endo;
    std::size_t n;
};

struct RingExpr {
    std::variant<ZnNode, ProdNode, MatrixNode, IdealizeNode, CornerNode, QuotNode, SkewNode> node;
};

inline ExprPtr make_expr(auto node) { return std::make_shared<const RingExpr>(RingExpr{std::move(node)}); }

std::string to_string(const RingExpr& e);

inline std::string to_string(const ModuleSpec& m) {
    return m.kind == ModuleSpec::Kind::Self ? "self" : "Z(" + std::to_string(m.modulus) + ")";
}

inline std::string to_string(const EndoSpec& e) {
    if (e.kind == EndoSpec::Kind::Identity) return "id";
    std::vector<std::size_t> moved;
    for (std::size_t i = 0; i < e.permutation.size(); ++i)
        if (e.permutation[i] != i) moved.push_back(i);
    if (moved.size() == 2 && e.permutation[moved[0]] == moved[1])
        return "swap(" + std::to_string(moved[0] + 1) + "," + std::to_string(moved[1] + 1) + ")";
    std::string s = "perm(";
    for (std::size_t i = 0; i < e.permutation.size(); ++i) s += (i ? "," : "") + std::to_string(e.permutation[i] + 1);
    return s + ")";
}

/// Normalized expression text; this is also the label of the built ring.
inline std::string to_string(const RingExpr& e) {
    struct Visitor {
        std::string operator()(const ZnNode& z) const { return "Z(" + std::to_string(z.n) + ")"; }
        std::string operator()(const ProdNode& p) const {
            std::string s = "prod(";
            for (std::size_t i = 0; i < p.factors.size(); ++i) s += (i ? "," : "") + to_string(*p.factors[i]);
            return s + ")";
        }
        std::string operator()(const MatrixNode& m) const {
            const char* prefix = m.kind == MatrixKind::Full ? "M" : m.kind == MatrixKind::Upper ? "T" : "eqdiag";
            return prefix + std::to_string(m.k) + "(" + to_string(*m.base) + ")";
        }
        std::string operator()(const IdealizeNode& i) const {
            return "idealize(" + to_string(*i.base) + "," + to_string(i.module) + ")";
        }
        std::string operator()(const CornerNode& c) const {
            return "corner(" + to_string(*c.base) + "," + std::to_string(c.idempotent) + ")";
        }
        std::string operator()(const QuotNode& q) const {
            std::string s = "quot(" + to_string(*q.base) + ",[";
            for (std::size_t i = 0; i < q.generators.size(); ++i) s += (i ? "," : "") + std::to_string(q.generators[i]);
            return s + "])";
        }
        std::string operator()(const SkewNode& s) const {
            return "skew(" + to_string(*s.base) + "," + to_string(s.endo) + "," + std::to_string(s.n) + ")";
        }
    };
    return std::visit(Visitor{}, e.node);
}

inline constexpr std::string_view kGrammarSynopsis =
    "ring expression grammar (whitespace-insensitive, keywords case-insensitive):\n"
    "  expr := Z(<n>) | prod(expr, expr, ...) | M<k>(expr) | T<k>(expr) | eqdiag<k>(expr)\n"
    "        | idealize(expr, self | Z(<m>)) | corner(expr, <index>) | quot(expr, [i1, i2, ...])\n"
    "        | skew(expr, id | swap(<i>,<j>) | perm(<p1>,...), <n>)\n";

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    ExprPtr parse() {
        auto e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw syntax_error(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string keyword() {
        skip_ws();
        const auto start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string k(text_.substr(start, pos_ - start));
        for (auto& c : k) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return k;
    }

    std::size_t number() {
        skip_ws();
        const auto start = pos_;
        std::size_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            const auto d = static_cast<std::size_t>(text_[pos_] - '0');
            if (v > (std::numeric_limits<std::size_t>::max() - d) / 10) fail("integer too large");
            v = v * 10 + d;
            ++pos_;
        }
        if (pos_ == start) fail("expected an integer");
        return v;
    }

    ExprPtr expr() {
        skip_ws();
        const auto start = pos_;
        const auto kw = keyword();
        if (kw == "z") {
            expect('(');
            const auto n = number();
            expect(')');
            return make_expr(ZnNode{n});
        }
        if (kw == "prod") {
            expect('(');
            ProdNode p;
            p.factors.push_back(expr());
            while (peek(',')) {
                expect(',');
                p.factors.push_back(expr());
            }
            expect(')');
            return make_expr(std::move(p));
        }
        if (kw == "m" || kw == "t" || kw == "eqdiag") {
            const auto k = number();
            expect('(');
            auto base = expr();
            expect(')');
            const auto kind = kw == "m" ? MatrixKind::Full : kw == "t" ? MatrixKind::Upper : MatrixKind::EqualDiagonal;
            return make_expr(MatrixNode{kind, k, std::move(base)});
        }
        if (kw == "idealize") {
            expect('(');
            auto base = expr();
            expect(',');
            ModuleSpec m;
            const auto mk = keyword();
            if (mk == "self") {
                m.kind = ModuleSpec::Kind::Self;
            } else if (mk == "z") {
                expect('(');
                m = {ModuleSpec::Kind::Cyclic, number()};
                expect(')');
            } else {
                fail("expected 'self' or Z(<m>)");
            }
            expect(')');
            return make_expr(IdealizeNode{std::move(base), m});
        }
        if (kw == "corner") {
            expect('(');
            auto base = expr();
            expect(',');
            const auto f = number();
            expect(')');
            return make_expr(CornerNode{std::move(base), f});
        }
        if (kw == "quot") {
            expect('(');
            auto base = expr();
            expect(',');
            expect('[');
            QuotNode q{std::move(base), {}};
            if (!peek(']')) {
                q.generators.push_back(number());
                while (peek(',')) {
                    expect(',');
                    q.generators.push_back(number());
                }
            }
            expect(']');
            expect(')');
            return make_expr(std::move(q));
        }
        if (kw == "skew") {
            expect('(');
            auto base = expr();
            expect(',');
            EndoSpec endo;
            const auto ek = keyword();
            if (ek == "id") {
                endo.kind = EndoSpec::Kind::Identity;
            } else if (ek == "swap" || ek == "perm") {
                endo.kind = EndoSpec::Kind::FactorPermutation;
                expect('(');
                std::vector<std::size_t> args{number()};
                while (peek(',')) {
                    expect(',');
                    args.push_back(number());
                }
                expect(')');
                for (auto a : args)
                    if (a == 0) fail("factor positions are 1-based");
                if (ek == "swap") {
                    if (args.size() != 2) fail("swap takes two factor positions");
                    endo = swap_from_args(base, args[0] - 1, args[1] - 1);
                } else {
                    for (auto a : args) endo.permutation.push_back(a - 1);
                }
            } else {
                fail("expected 'id', swap(i,j) or perm(...)");
            }
            expect(',');
            const auto n = number();
            expect(')');
            return make_expr(SkewNode{std::move(base), std::move(endo), n});
        }
        pos_ = start;
        fail(kw.empty() ? "expected a ring expression" : "unknown ring constructor '" + kw + "'");
    }

    /// swap(i,j) is a transposition on the factor list of a prod(...) base.
    EndoSpec swap_from_args(const ExprPtr& base, std::size_t i, std::size_t j) {
        std::size_t factors = std::max(i, j) + 1;
        if (const auto* p = std::get_if<ProdNode>(&base->node)) factors = std::max(factors, p->factors.size());
        return EndoSpec::swap(i, j, factors);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline ExprPtr parse_ring_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

/// Builds the table for an expression. Every intermediate ring is subject to the size budget.
inline RingTable build(const RingExpr& e, const BuildOptions& opts = {}) {
    struct Visitor {
        const BuildOptions& opts;

        RingTable operator()(const ZnNode& z) const { return zn(z.n, opts); }
        RingTable operator()(const ProdNode& p) const {
            std::vector<RingTable> factors;
            for (const auto& f : p.factors) factors.push_back(build(*f, opts));
            return product(factors, opts);
        }
        RingTable operator()(const MatrixNode& m) const {
            const auto base = build(*m.base, opts);
            switch (m.kind) {
                case MatrixKind::Full:
                    return matrix_ring(m.k, base, opts);
                case MatrixKind::Upper:
                    return upper_triangular(m.k, base, opts);
                case MatrixKind::EqualDiagonal:
                    return eq_diag_subring(m.k, base, opts);
            }
            throw construction_error("unknown matrix kind");
        }
        RingTable operator()(const IdealizeNode& i) const {
            const auto base = build(*i.base, opts);
            if (i.module.kind == ModuleSpec::Kind::Self) return idealization(base, self_module(base), opts);
            if (!std::holds_alternative<ZnNode>(i.base->node))
                throw invalid_module("Z(" + std::to_string(i.module.modulus) + ") modules attach only to Z(n), not " +
                                     base.label());
            return idealization(base, cyclic_module(base, i.module.modulus), opts);
        }
        RingTable operator()(const CornerNode& c) const {
            const auto base = build(*c.base, opts);
            if (c.idempotent >= base.order())
                throw invalid_idempotent("element " + std::to_string(c.idempotent) + " is not in " + base.label());
            return corner(base, ElementId{static_cast<std::uint32_t>(c.idempotent)}, opts).table;
        }
        RingTable operator()(const QuotNode& q) const {
            const auto base = build(*q.base, opts);
            std::vector<ElementId> gens;
            for (auto g : q.generators) {
                if (g >= base.order())
                    throw usage_error("generator " + std::to_string(g) + " is not in " + base.label());
                gens.push_back(ElementId{static_cast<std::uint32_t>(g)});
            }
            std::string label = "quot(" + base.label() + ",[";
            for (std::size_t i = 0; i < q.generators.size(); ++i) label += (i ? "," : "") + std::to_string(q.generators[i]);
            label += "])";
            return quotient(base, ideal_generated_by(base, gens), label, opts).table;
        }
        RingTable operator()(const SkewNode& s) const {
            if (s.endo.kind == EndoSpec::Kind::Identity) {
                const auto base = build(*s.base, opts);
                return skew_poly_quot(base, identity_map(base), s.n, "id", opts);
            }
            const auto* p = std::get_if<ProdNode>(&s.base->node);
            if (!p) throw invalid_endomorphism("factor permutations need a prod(...) base");
            std::vector<RingTable> factors;
            for (const auto& f : p->factors) factors.push_back(build(*f, opts));
            const auto sigma = factor_permutation(factors, s.endo.permutation);
            return skew_poly_quot(product(factors, opts), sigma, s.n, to_string(s.endo), opts);
        }
    };
    return std::visit(Visitor{opts}, e.node);
}

inline RingTable build(std::string_view text, const BuildOptions& opts = {}) { return build(*parse_ring_expr(text), opts); }

}  // namespace wnc
