#pragma once

/**
 * @file theorems.hpp
 * @brief Executable checks of the weak nil clean theory over concrete finite rings.
 *
 * Each check returns pass, fail (with a witness payload) or not-applicable. Not-applicable is a
 * first-class outcome: a check never passes vacuously on a ring outside its hypotheses.
 */

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "wnc/constructions.hpp"
#include "wnc/decompositions.hpp"
#include "wnc/ring.hpp"
#include "wnc/structure.hpp"

namespace wnc {

using Json = nlohmann::ordered_json;

enum class Outcome { Pass, Fail, NotApplicable, Error };

inline const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Pass: return "pass";
        case Outcome::Fail: return "fail";
        case Outcome::NotApplicable: return "not-applicable";
        case Outcome::Error: return "error";
    }
    return "?";
}

struct CheckResult {
    Outcome outcome = Outcome::Pass;
    Json witness;  // null when there is nothing to report

    static CheckResult pass() { return {Outcome::Pass, nullptr}; }
    static CheckResult fail(Json w) { return {Outcome::Fail, std::move(w)}; }
    static CheckResult not_applicable(std::string reason) { return {Outcome::NotApplicable, Json{{"reason", reason}}}; }
};

inline Json ids(const std::vector<ElementId>& xs) {
    Json a = Json::array();
    for (auto x : xs) a.push_back(x.index);
    return a;
}

inline Json cert_json(const DecompCert& c) {
    return Json{{"x", c.target.index},
                {"e", c.idempotent.index},
                {"companion", c.companion.index},
                {"sign", sign_symbol(c.sign)},
                {"commutes", c.commutes}};
}

/// A built corpus member with its structure; expr is absent for tables supplied directly.
struct Specimen {
    ExprPtr expr;
    RingTable table;
    StructureCache cache;

    explicit Specimen(RingTable t, ExprPtr e = nullptr) : expr(std::move(e)), table(std::move(t)), cache(table) {}

    const std::string& label() const { return table.label(); }
};

// ---------------------------------------------------------------------------------------------
// Individual checks

inline CheckResult check_J_subset_Nil(const RingTable& r, const StructureCache& s) {
    if (!holds(r, s, DecompKind::WeakNilClean)) return CheckResult::not_applicable("ring is not weak nil clean");
    for (auto x : s.radical())
        if (!s.is_nilpotent(x)) return CheckResult::fail({{"radical_element_not_nilpotent", x.index}});
    return CheckResult::pass();
}

inline CheckResult check_quotient_preservation(const RingTable& r, const StructureCache& s, const Subset& ideal) {
    if (!holds(r, s, DecompKind::WeakNilClean)) return CheckResult::not_applicable("ring is not weak nil clean");
    const auto q = quotient(r, ideal);
    const StructureCache qs(q.table);
    const auto v = ring_verdict(q.table, qs, DecompKind::WeakNilClean);
    if (v.holds) return CheckResult::pass();
    return CheckResult::fail({{"ideal", ids(ideal.members())}, {"quotient_element", v.witness_failure->index}});
}

/// Product is weak nil clean iff every factor is, with at most one factor not nil clean.
inline CheckResult check_product_theorem(const std::vector<RingTable>& factors, const BuildOptions& opts = {}) {
    const auto prod = product(factors, opts);
    const StructureCache ps(prod);
    const bool product_wnc = holds(prod, ps, DecompKind::WeakNilClean);
    bool all_wnc = true;
    std::size_t not_nil_clean = 0;
    Json per = Json::array();
    for (const auto& f : factors) {
        const StructureCache fs(f);
        const bool wnc = holds(f, fs, DecompKind::WeakNilClean);
        const bool nc = holds(f, fs, DecompKind::NilClean);
        all_wnc = all_wnc && wnc;
        if (!nc) ++not_nil_clean;
        per.push_back(Json{{"factor", f.label()}, {"weak_nil_clean", wnc}, {"nil_clean", nc}});
    }
    const bool predicted = all_wnc && not_nil_clean <= 1;
    if (product_wnc == predicted) return CheckResult::pass();
    return CheckResult::fail({{"product_weak_nil_clean", product_wnc}, {"factors", per}});
}

/**
 * Commutative R: weak nil clean R has weak nil clean R/Nil(R); conversely a weak nil clean
 * R/Nil(R) with idempotents lifting modulo Nil(R) forces R weak nil clean.
 */
inline CheckResult check_nilradical_quotient(const RingTable& r, const StructureCache& s) {
    if (!r.is_commutative()) return CheckResult::not_applicable("ring is not commutative");
    const Subset nil(r, s.nilpotents());
    if (!nil.is_ideal()) return CheckResult::fail({{"nilpotents_not_an_ideal", true}});
    const auto q = quotient(r, nil);
    const StructureCache qs(q.table);
    const bool r_wnc = holds(r, s, DecompKind::WeakNilClean);
    const bool q_wnc = holds(q.table, qs, DecompKind::WeakNilClean);
    const bool lifts = lifts_idempotents(r, s, nil);
    const bool forward = !r_wnc || q_wnc;
    const bool backward = !(q_wnc && lifts) || r_wnc;
    if (forward && backward) return CheckResult::pass();
    return CheckResult::fail({{"ring_weak_nil_clean", r_wnc}, {"quotient_weak_nil_clean", q_wnc}, {"lifts", lifts}});
}

inline CheckResult check_idealization(const RingTable& r, const LeftModule& m, const BuildOptions& opts = {}) {
    const auto ideal = idealization(r, m, opts);
    const StructureCache is(ideal);
    const bool base = holds(r, StructureCache(r), DecompKind::WeakNilClean);
    const bool whole = holds(ideal, is, DecompKind::WeakNilClean);
    if (base == whole) return CheckResult::pass();
    return CheckResult::fail({{"base_weak_nil_clean", base}, {"idealization_weak_nil_clean", whole}});
}

namespace detail {

inline bool strip_factor(std::uint64_t& n, std::uint64_t p, unsigned& count) {
    count = 0;
    while (n % p == 0) {
        n /= p;
        ++count;
    }
    return count > 0;
}

/// n = p^k for a prime p; returns p.
inline std::optional<std::uint64_t> prime_power_base(std::uint64_t n) {
    if (n < 2) return std::nullopt;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        return n == 1 ? std::optional<std::uint64_t>(p) : std::nullopt;
    }
    return n;
}

}  // namespace detail

/// n = 2^r 3^t with r >= 0 and t >= 1.
inline bool is_two_three_form(std::uint64_t n) {
    unsigned r = 0, t = 0;
    detail::strip_factor(n, 2, r);
    detail::strip_factor(n, 3, t);
    return n == 1 && t >= 1;
}

/// Classification of a single Z(n) given its table.
inline CheckResult check_zn_member(std::uint64_t n, const RingTable& r, const StructureCache& s) {
    const bool wnc = holds(r, s, DecompKind::WeakNilClean);
    const bool nc = holds(r, s, DecompKind::NilClean);
    Json failures = Json::array();
    if ((wnc && !nc) != is_two_three_form(n)) failures.push_back("weak-not-nil flag disagrees with the 2^r 3^t form");
    if (const auto p = detail::prime_power_base(n)) {
        unsigned k = 0;
        std::uint64_t m = n;
        detail::strip_factor(m, *p, k);
        if (*p == 2 && !nc) failures.push_back("Z(2^k) is not nil clean");
        if (*p == 3 && !(wnc && !nc)) failures.push_back("Z(3^k) is not weak-but-not-nil clean");
        if (*p > 3) {
            if (nil_clean_count_bound(*p, k) >= n) failures.push_back("count bound does not rule out p > 3");
            if (wnc) failures.push_back("Z(p^k) with p > 3 is weak nil clean");
        }
    }
    if (failures.empty()) return CheckResult::pass();
    return CheckResult::fail({{"n", n}, {"weak_nil_clean", wnc}, {"nil_clean", nc}, {"problems", failures}});
}

struct ZnClassification {
    bool pass = true;
    std::vector<std::uint64_t> weak_not_nil;
    std::vector<std::uint64_t> mismatches;
};

/// Sweeps Z(n) for 2 <= n <= n_max.
inline ZnClassification check_zn_classification(std::uint64_t n_max, const BuildOptions& opts = {}) {
    ZnClassification out;
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        const auto r = zn(n, opts);
        const StructureCache s(r);
        if (holds(r, s, DecompKind::WeakNilClean) && !holds(r, s, DecompKind::NilClean)) out.weak_not_nil.push_back(n);
        if (check_zn_member(n, r, s).outcome != Outcome::Pass) out.mismatches.push_back(n);
    }
    out.pass = out.mismatches.empty();
    return out;
}

/**
 * For every weak* nil clean certificate x = n +/- e: ann_l(x) is in ann_l(e), ann_r(x) in
 * ann_r(e), ann_l(x) in R(1-e) and ann_r(x) in (1-e)R.
 */
inline CheckResult check_annihilator_lemmas(const RingTable& r, const StructureCache& s) {
    std::map<std::uint32_t, std::pair<Subset, Subset>> ann_e;      // e -> (ann_l(e), ann_r(e))
    std::map<std::uint32_t, std::pair<Subset, Subset>> comp_mult;  // e -> (R(1-e), (1-e)R)
    for (auto e : s.idempotents()) {
        const auto f = r.sub(r.one(), e);
        ann_e.emplace(e.index, std::make_pair(ann_left(r, e), ann_right(r, e)));
        comp_mult.emplace(e.index, std::make_pair(left_multiples(r, f), right_multiples(r, f)));
    }
    for (auto x : r.elements()) {
        const auto certs = all_decomps(r, s, x, DecompKind::WeakStarNilClean);
        if (certs.empty()) continue;
        const auto al = ann_left(r, x);
        const auto ar = ann_right(r, x);
        for (const auto& c : certs) {
            const auto& [ael, aer] = ann_e.at(c.idempotent.index);
            const auto& [rl, rr] = comp_mult.at(c.idempotent.index);
            const char* broken = !al.subset_of(ael)  ? "ann_l(x) in ann_l(e)"
                                 : !ar.subset_of(aer) ? "ann_r(x) in ann_r(e)"
                                 : !al.subset_of(rl)  ? "ann_l(x) in R(1-e)"
                                 : !ar.subset_of(rr)  ? "ann_r(x) in (1-e)R"
                                                      : nullptr;
            if (broken) return CheckResult::fail({{"containment", broken}, {"cert", cert_json(c)}});
        }
    }
    return CheckResult::pass();
}

/**
 * For x in fRf: x is weak* nil clean in R iff it is weak* nil clean in fRf, and every weak*
 * certificate (n, e) in R projects to the certificate (fnf, fef) of the corner ring.
 */
inline CheckResult check_corner_theorem(const RingTable& r, const StructureCache& s, ElementId f,
                                        DecompKind kind = DecompKind::WeakStarNilClean) {
    const auto c = corner(r, f);
    const StructureCache cs(c.table);
    std::vector<std::int32_t> position(r.order(), -1);
    for (std::uint32_t i = 0; i < c.embedding.size(); ++i) position[c.embedding[i].index] = static_cast<std::int32_t>(i);
    for (std::uint32_t i = 0; i < c.embedding.size(); ++i) {
        const auto x = c.embedding[i];
        const auto in_ring = all_decomps(r, s, x, kind);
        const bool in_corner = find_decomp(c.table, cs, ElementId{i}, kind).has_value();
        if (in_ring.empty() != !in_corner)
            return CheckResult::fail({{"f", f.index}, {"x", x.index}, {"in_ring", !in_ring.empty()}, {"in_corner", in_corner}});
        for (const auto& cert : in_ring) {
            const auto pn = r.mul(f, cert.companion, f);
            const auto pe = r.mul(f, cert.idempotent, f);
            const auto pn_at = position[pn.index];
            const auto pe_at = position[pe.index];
            bool valid = pn_at >= 0 && pe_at >= 0;
            if (valid) {
                const ElementId cn{static_cast<std::uint32_t>(pn_at)}, ce{static_cast<std::uint32_t>(pe_at)};
                valid = recheck(c.table, cs, DecompCert{kind, ElementId{i}, ce, cn, cert.sign, c.table.commutes(cn, ce)});
            }
            if (!valid)
                return CheckResult::fail({{"f", f.index}, {"projection_invalid", cert_json(cert)}});
        }
    }
    return CheckResult::pass();
}

/// A {0,1}-weak nil clean ring (with 1 != 0) has exactly one maximal ideal; Nil(R) is that ideal and equals J(R).
inline CheckResult check_S_unique_maximal(const RingTable& r, const StructureCache& s) {
    if (r.order() == 1) return CheckResult::not_applicable("zero ring has no maximal ideal");
    if (!holds(r, s, zero_one_weak_nil_clean(r)))
        return CheckResult::not_applicable("ring is not {0,1}-weak nil clean");
    const auto maximal = maximal_ideals(r);
    if (maximal.size() != 1) {
        Json all = Json::array();
        for (const auto& m : maximal) all.push_back(ids(m.members()));
        return CheckResult::fail({{"maximal_ideals", all}});
    }
    for (auto x : r.elements())
        if (!s.is_unit(x) && !s.is_nilpotent(x)) return CheckResult::fail({{"neither_unit_nor_nilpotent", x.index}});
    for (auto u : s.units())
        if (!s.is_nilpotent(r.sub(u, r.one())) && !s.is_nilpotent(r.add(u, r.one())))
            return CheckResult::fail({{"unit_not_plus_minus_one_plus_nilpotent", u.index}});
    const Subset nil(r, s.nilpotents());
    if (!nil.is_ideal()) return CheckResult::fail({{"nilpotents_not_an_ideal", true}});
    if (!(nil == Subset(r, s.radical()))) return CheckResult::fail({{"radical_differs_from_nilpotents", true}});
    if (!(nil == maximal.front())) return CheckResult::fail({{"maximal_ideal_differs_from_nilpotents", true}});
    return CheckResult::pass();
}

/// If R is S-weak* nil clean then S = Idem(R).
inline CheckResult check_S_rigidity(const RingTable& r, const StructureCache& s, const Subset& pool) {
    if (!holds(r, s, Notion(DecompKind::SWeakStarNilClean, pool))) return CheckResult::pass();
    if (pool.size() == s.idempotents().size()) return CheckResult::pass();
    return CheckResult::fail({{"S", ids(pool.members())}, {"idempotents", ids(s.idempotents())}});
}

/**
 * The exchange-witness identities behind weak* nil clean certificates:
 * x = n - e gives x - (1-n)^{-1} e (1-n) = (1-n)^{-1}(x - x^2);
 * x = n + e gives x - e = u^{-1}(x^2 - x) with u = (2e - 1) + n.
 */
inline bool weakstar_identity_holds(const RingTable& r, const StructureCache& s, const DecompCert& c) {
    const auto x = c.target, n = c.companion, e = c.idempotent;
    const auto x2 = r.mul(x, x);
    if (c.sign == Sign::Minus) {
        const auto u = r.sub(r.one(), n);
        const auto inv = s.inverse(u);
        if (!inv) return false;
        return r.sub(x, r.mul(*inv, e, u)) == r.mul(*inv, r.sub(x, x2));
    }
    const auto u = r.add(r.sub(r.add(e, e), r.one()), n);
    const auto inv = s.inverse(u);
    if (!inv) return false;
    return r.sub(x, e) == r.mul(*inv, r.sub(x2, x));
}

inline CheckResult check_weakstar_exchange(const RingTable& r, const StructureCache& s) {
    if (!holds(r, s, DecompKind::WeakStarNilClean)) return CheckResult::not_applicable("ring is not weak* nil clean");
    const auto right = exchange_report(r, s, Side::Right);
    const auto left = exchange_report(r, s, Side::Left);
    if (!right.holds || !left.holds)
        return CheckResult::fail({{"right_exchange", right.holds}, {"left_exchange", left.holds},
                                  {"element", (right.holds ? left.failure : right.failure)->index}});
    for (auto x : r.elements())
        for (const auto& c : all_decomps(r, s, x, DecompKind::WeakStarNilClean))
            if (!weakstar_identity_holds(r, s, c)) return CheckResult::fail({{"identity_fails", cert_json(c)}});
    return CheckResult::pass();
}

/// Strongly nil clean iff weak* nil clean with 2 nilpotent.
inline CheckResult check_strongly_nilclean_equiv(const RingTable& r, const StructureCache& s) {
    const bool snc = holds(r, s, DecompKind::StronglyNilClean);
    const bool wsnc = holds(r, s, DecompKind::WeakStarNilClean);
    const bool two_nil = s.is_nilpotent(r.integer(2));
    if (snc == (wsnc && two_nil)) return CheckResult::pass();
    return CheckResult::fail({{"strongly_nil_clean", snc}, {"weak_star_nil_clean", wsnc}, {"two_nilpotent", two_nil}});
}

inline CheckResult check_strongly_pi_regular(const RingTable& r, const StructureCache& s) {
    if (!s.is_nilpotent(r.integer(2)) || !holds(r, s, DecompKind::WeakStarNilClean))
        return CheckResult::not_applicable("ring is not weak* nil clean with 2 nilpotent");
    if (is_strongly_pi_regular(r)) return CheckResult::pass();
    return CheckResult::fail({{"strongly_pi_regular", false}});
}

/**
 * Weak J-clean bundle:
 * (a) weak* J-clean elements are strongly clean;
 * (b) weak* J-clean certificates satisfy ann_l(a) in ann_l(e) and ann_r(a) in ann_r(e);
 * (c) for every idempotent f, a in fRf is weak* J-clean in R iff in fRf;
 * (d) R/J(R) boolean with weak idempotent lifting modulo J(R) gives weak J-clean;
 * (e) weak* J-clean with R/J(R) boolean gives J-clean.
 */
inline CheckResult check_weak_jclean_suite(const RingTable& r, const StructureCache& s) {
    Json parts = Json::object();
    Json failure;
    auto record = [&](const char* part, Outcome o, Json w = nullptr) {
        parts[part] = outcome_name(o);
        if (o == Outcome::Fail && failure.is_null()) failure = Json{{"part", part}, {"detail", std::move(w)}};
    };

    // (a), (b)
    Outcome a = Outcome::Pass, b = Outcome::Pass;
    Json aw, bw;
    for (auto x : r.elements()) {
        const auto certs = all_decomps(r, s, x, DecompKind::WeakStarJClean);
        if (certs.empty()) continue;
        if (a == Outcome::Pass && !find_decomp(r, s, x, DecompKind::StronglyClean)) {
            a = Outcome::Fail;
            aw = Json{{"x", x.index}};
        }
        const auto al = ann_left(r, x);
        const auto ar = ann_right(r, x);
        for (const auto& c : certs) {
            if (b == Outcome::Pass &&
                (!al.subset_of(ann_left(r, c.idempotent)) || !ar.subset_of(ann_right(r, c.idempotent)))) {
                b = Outcome::Fail;
                bw = cert_json(c);
            }
        }
    }
    record("a", a, aw);
    record("b", b, bw);

    // (c)
    Outcome c_out = Outcome::Pass;
    Json cw;
    for (auto f : s.idempotents()) {
        const auto cr = corner(r, f);
        const StructureCache cs(cr.table);
        for (std::uint32_t i = 0; i < cr.embedding.size() && c_out == Outcome::Pass; ++i) {
            const bool in_ring = find_decomp(r, s, cr.embedding[i], DecompKind::WeakStarJClean).has_value();
            const bool in_corner = find_decomp(cr.table, cs, ElementId{i}, DecompKind::WeakStarJClean).has_value();
            if (in_ring != in_corner) {
                c_out = Outcome::Fail;
                cw = Json{{"f", f.index}, {"x", cr.embedding[i].index}, {"in_ring", in_ring}, {"in_corner", in_corner}};
            }
        }
    }
    record("c", c_out, cw);

    // (d), (e)
    const Subset radical(r, s.radical());
    const auto q = quotient(r, radical);
    const StructureCache qs(q.table);
    const bool boolean = is_boolean(q.table, qs);
    if (!boolean) {
        record("d", Outcome::NotApplicable);
        record("e", Outcome::NotApplicable);
    } else {
        if (lifts_idempotents_weakly(r, s, radical))
            record("d", holds(r, s, DecompKind::WeakJClean) ? Outcome::Pass : Outcome::Fail);
        else
            record("d", Outcome::NotApplicable);
        if (holds(r, s, DecompKind::WeakStarJClean))
            record("e", holds(r, s, DecompKind::JClean) ? Outcome::Pass : Outcome::Fail);
        else
            record("e", Outcome::NotApplicable);
    }

    if (!failure.is_null()) {
        failure["parts"] = parts;
        return CheckResult::fail(std::move(failure));
    }
    return {Outcome::Pass, Json{{"parts", parts}}};
}

/// R[x; s]/(x^n) is weak nil clean iff R is; (x) is a nil ideal with quotient R.
inline CheckResult check_skew_quotient(const RingTable& base, const RingTable& skew) {
    const StructureCache bs(base), ss(skew);
    const auto vb = ring_verdict(base, bs, DecompKind::WeakNilClean);
    const auto vs = ring_verdict(skew, ss, DecompKind::WeakNilClean);
    if (vb.holds == vs.holds) return CheckResult::pass();
    Json w{{"base_weak_nil_clean", vb.holds}, {"skew_weak_nil_clean", vs.holds}};
    if (vs.witness_failure) w["element"] = vs.witness_failure->index;
    return CheckResult::fail(std::move(w));
}

// ---------------------------------------------------------------------------------------------
// Registry

struct TheoremCheck {
    std::string id;
    std::string statement;
    std::function<CheckResult(const Specimen&)> run;
};

namespace detail {

/// All nonempty subsets of Idem(R) when there are at most 8 idempotents, otherwise Idem(R)
/// and each Idem(R) minus one element.
inline std::vector<Subset> rigidity_pools(const RingTable& r, const StructureCache& s) {
    const auto& idem = s.idempotents();
    std::vector<Subset> pools;
    if (idem.size() <= 8) {
        for (std::uint32_t mask = 1; mask < (1u << idem.size()); ++mask) {
            std::vector<ElementId> members;
            for (std::size_t i = 0; i < idem.size(); ++i)
                if (mask & (1u << i)) members.push_back(idem[i]);
            pools.emplace_back(r, std::move(members));
        }
        return pools;
    }
    pools.emplace_back(r, idem);
    for (std::size_t skip = 0; skip < idem.size(); ++skip) {
        std::vector<ElementId> members;
        for (std::size_t i = 0; i < idem.size(); ++i)
            if (i != skip) members.push_back(idem[i]);
        pools.emplace_back(r, std::move(members));
    }
    return pools;
}

inline CheckResult first_failure(const std::vector<std::pair<Json, CheckResult>>& runs) {
    for (const auto& [ctx, res] : runs) {
        if (res.outcome == Outcome::Fail) {
            Json w = ctx;
            w["detail"] = res.witness;
            return CheckResult::fail(std::move(w));
        }
    }
    return CheckResult::pass();
}

}  // namespace detail

inline const std::vector<TheoremCheck>& check_registry() {
    static const std::vector<TheoremCheck> registry = [] {
        std::vector<TheoremCheck> v;
        v.push_back({"J-subset-Nil", "A weak nil clean ring has its Jacobson radical inside its nilpotents.",
                     [](const Specimen& sp) { return check_J_subset_Nil(sp.table, sp.cache); }});
        v.push_back({"S-rigidity", "If R is S-weak* nil clean for S contained in Idem(R), then S = Idem(R).",
                     [](const Specimen& sp) {
                         for (const auto& pool : detail::rigidity_pools(sp.table, sp.cache)) {
                             auto res = check_S_rigidity(sp.table, sp.cache, pool);
                             if (res.outcome == Outcome::Fail) return res;
                         }
                         return CheckResult::pass();
                     }});
        v.push_back({"S-unique-maximal",
                     "A {0,1}-weak nil clean ring has exactly one maximal ideal, namely Nil(R) = J(R).",
                     [](const Specimen& sp) { return check_S_unique_maximal(sp.table, sp.cache); }});
        v.push_back({"annihilator-lemmas",
                     "For a weak* nil clean decomposition x = n +/- e, the annihilators of x sit inside those of e "
                     "and inside R(1-e), (1-e)R.",
                     [](const Specimen& sp) { return check_annihilator_lemmas(sp.table, sp.cache); }});
        v.push_back({"corner-theorem",
                     "An element of fRf is weak* nil clean in R exactly when it is weak* nil clean in fRf.",
                     [](const Specimen& sp) {
                         for (auto f : sp.cache.idempotents()) {
                             auto res = check_corner_theorem(sp.table, sp.cache, f);
                             if (res.outcome == Outcome::Fail) return res;
                         }
                         return CheckResult::pass();
                     }});
        v.push_back({"idealization", "R is weak nil clean if and only if its idealization R(M) is.",
                     [](const Specimen& sp) {
                         if (!sp.expr) return CheckResult::not_applicable("no construction expression");
                         const auto* node = std::get_if<IdealizeNode>(&sp.expr->node);
                         if (!node) return CheckResult::not_applicable("not an idealization");
                         const auto base = build(*node->base);
                         const auto m = node->module.kind == ModuleSpec::Kind::Self
                                            ? self_module(base)
                                            : cyclic_module(base, node->module.modulus);
                         return check_idealization(base, m);
                     }});
        v.push_back({"nilradical-quotient",
                     "For commutative R: weak nil clean R has weak nil clean R/Nil(R), and the converse holds when "
                     "idempotents lift modulo Nil(R).",
                     [](const Specimen& sp) { return check_nilradical_quotient(sp.table, sp.cache); }});
        v.push_back({"product-theorem",
                     "A finite product is weak nil clean iff every factor is and at most one factor is not nil "
                     "clean.",
                     [](const Specimen& sp) {
                         if (!sp.expr) return CheckResult::not_applicable("no construction expression");
                         const auto* node = std::get_if<ProdNode>(&sp.expr->node);
                         if (!node) return CheckResult::not_applicable("not a direct product");
                         std::vector<RingTable> factors;
                         for (const auto& f : node->factors) factors.push_back(build(*f));
                         return check_product_theorem(factors);
                     }});
        v.push_back({"quotient-preservation", "Every homomorphic image of a weak nil clean ring is weak nil clean.",
                     [](const Specimen& sp) {
                         if (!holds(sp.table, sp.cache, DecompKind::WeakNilClean))
                             return CheckResult::not_applicable("ring is not weak nil clean");
                         std::vector<std::pair<Json, CheckResult>> runs;
                         for (const auto& ideal : all_ideals(sp.table))
                             runs.emplace_back(Json::object(), check_quotient_preservation(sp.table, sp.cache, ideal));
                         return detail::first_failure(runs);
                     }});
        v.push_back({"skew-quotient",
                     "The truncated skew polynomial ring R[x; s]/(x^n) is weak nil clean iff R is.",
                     [](const Specimen& sp) {
                         if (!sp.expr) return CheckResult::not_applicable("no construction expression");
                         const auto* node = std::get_if<SkewNode>(&sp.expr->node);
                         if (!node) return CheckResult::not_applicable("not a skew polynomial quotient");
                         return check_skew_quotient(build(*node->base), sp.table);
                     }});
        v.push_back({"strongly-nilclean-equiv", "R is strongly nil clean iff R is weak* nil clean with 2 nilpotent.",
                     [](const Specimen& sp) { return check_strongly_nilclean_equiv(sp.table, sp.cache); }});
        v.push_back({"strongly-pi-regular", "A weak* nil clean ring with 2 nilpotent is strongly pi-regular.",
                     [](const Specimen& sp) { return check_strongly_pi_regular(sp.table, sp.cache); }});
        v.push_back({"weak-jclean-bundle",
                     "Weak J-clean facts: weak* J-clean elements are strongly clean, annihilator containment, "
                     "corner equivalence, and the boolean R/J(R) criteria for weak J-clean and J-clean.",
                     [](const Specimen& sp) { return check_weak_jclean_suite(sp.table, sp.cache); }});
        v.push_back({"weakstar-exchange", "A weak* nil clean ring is an exchange ring.",
                     [](const Specimen& sp) { return check_weakstar_exchange(sp.table, sp.cache); }});
        v.push_back({"zn-classification",
                     "Z(n) is weak nil clean but not nil clean exactly for n = 2^r 3^t with t >= 1.",
                     [](const Specimen& sp) {
                         if (!sp.expr) return CheckResult::not_applicable("no construction expression");
                         const auto* node = std::get_if<ZnNode>(&sp.expr->node);
                         if (!node || node->n < 2) return CheckResult::not_applicable("not Z(n) with n >= 2");
                         return check_zn_member(node->n, sp.table, sp.cache);
                     }});
        return v;
    }();
    return registry;
}

struct TraceEntry {
    std::string statement;
    std::string check_id;  // empty when out of scope
    std::string note;
};

/// Every stated result of the theory, mapped to the check that exercises it.
inline const std::vector<TraceEntry>& traceability() {
    static const std::vector<TraceEntry> entries = {
        {"Homomorphic images of weak nil clean rings are weak nil clean", "quotient-preservation", ""},
        {"Finite direct products: weak nil clean iff factors are, with at most one not nil clean", "product-theorem", ""},
        {"Weak nil clean rings satisfy J(R) in Nil(R)", "J-subset-Nil", ""},
        {"Commutative R and R/Nil(R) with idempotent lifting", "nilradical-quotient", ""},
        {"Idealization R(M) is weak nil clean iff R is", "idealization", ""},
        {"Z(3^k) is weak nil clean but not nil clean", "zn-classification", ""},
        {"Z(p^k) is weak nil clean but not nil clean iff p = 3", "zn-classification", ""},
        {"Z(n) is weak nil clean but not nil clean iff n = 2^r 3^t, t >= 1", "zn-classification", ""},
        {"R[x] over a commutative ring is never weak nil clean", "", "out of scope: infinite ring"},
        {"Truncated skew polynomial rings R[x; s]/(x^n) are weak nil clean iff R is", "skew-quotient", ""},
        {"Weak* decompositions: ann(x) contained in ann(e)", "annihilator-lemmas", ""},
        {"Weak* decompositions: ann_l(x) in R(1-e), ann_r(x) in (1-e)R", "annihilator-lemmas", ""},
        {"x in fRf is weak* nil clean in R iff in fRf", "corner-theorem", ""},
        {"Corner rings of weak* nil clean rings are weak* nil clean", "corner-theorem", ""},
        {"{0,1}-weak nil clean rings have exactly one maximal ideal", "S-unique-maximal", ""},
        {"S-weak* nil clean forces S = Idem(R)", "S-rigidity", ""},
        {"Weak* nil clean rings are exchange rings", "weakstar-exchange", ""},
        {"Endomorphism splitting M = A + B for a nilpotent-plus-idempotent endomorphism", "",
         "out of scope: module categories; exercised through strongly-nilclean-equiv"},
        {"Strongly nil clean iff weak* nil clean with 2 nilpotent", "strongly-nilclean-equiv", ""},
        {"Weak* nil clean with 2 nilpotent implies strongly pi-regular", "strongly-pi-regular", ""},
        {"Weak* J-clean elements are strongly clean", "weak-jclean-bundle", ""},
        {"Weak* J-clean decompositions: ann(a) contained in ann(e)", "weak-jclean-bundle", ""},
        {"a in fRf is weak* J-clean in R iff in fRf", "weak-jclean-bundle", ""},
        {"Corner rings of weak* J-clean rings are weak* J-clean", "weak-jclean-bundle", ""},
        {"R/J(R) boolean with weak idempotent lifting gives weak J-clean", "weak-jclean-bundle", ""},
        {"Weak* J-clean with R/J(R) boolean gives J-clean", "weak-jclean-bundle", ""},
    };
    return entries;
}

inline std::string traceability_markdown() {
    std::ostringstream os;
    os << "# Traceability\n\n"
       << "Generated by `wnc verify --list-checks`. Each stated result maps to one check id.\n\n"
       << "| Result | Check |\n|---|---|\n";
    for (const auto& e : traceability())
        os << "| " << e.statement << " | " << (e.check_id.empty() ? e.note : "`" + e.check_id + "`") << " |\n";
    os << "\n## Checks\n\n| Check | Statement |\n|---|---|\n";
    for (const auto& c : check_registry()) os << "| `" << c.id << "` | " << c.statement << " |\n";
    return os.str();
}

// ---------------------------------------------------------------------------------------------
// Corpus and suite

struct CorpusEntry {
    std::string text;
    /// Per-ring override of the element budget.
    std::optional<std::size_t> budget;
};

struct CorpusSpec {
    std::vector<CorpusEntry> entries;
};

/**
 * One ring expression per line; `#` starts a comment. A trailing `@budget=<n>` waives the
 * default size budget for that line.
 */
inline CorpusSpec parse_corpus(std::istream& in) {
    CorpusSpec spec;
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return std::string();
        const auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        CorpusEntry entry;
        if (const auto at = line.find('@'); at != std::string::npos) {
            const auto opt = trim(line.substr(at + 1));
            line = trim(line.substr(0, at));
            const std::string key = "budget=";
            if (opt.rfind(key, 0) != 0) throw syntax_error("unknown corpus option on line " + std::to_string(line_no), at);
            try {
                entry.budget = static_cast<std::size_t>(std::stoull(opt.substr(key.size())));
            } catch (const std::exception&) {
                throw syntax_error("bad budget on line " + std::to_string(line_no), at);
            }
        }
        entry.text = line;
        spec.entries.push_back(std::move(entry));
    }
    return spec;
}

inline CorpusSpec default_corpus() {
    CorpusSpec spec;
    auto add = [&](std::string t) { spec.entries.push_back({std::move(t), std::nullopt}); };
    for (int n = 2; n <= 36; ++n) add("Z(" + std::to_string(n) + ")");
    for (const char* t : {"M2(Z(2))", "M2(Z(3))", "T2(Z(2))", "T2(Z(3))", "eqdiag2(Z(2))", "eqdiag2(Z(6))",
                          "prod(Z(4),Z(9))", "prod(Z(9),Z(9))", "prod(Z(2),Z(3),Z(3))", "idealize(Z(6),self)",
                          "idealize(Z(5),self)", "idealize(Z(6),Z(3))"})
        add(t);
    for (const char* base : {"M2(Z(2))", "M2(Z(3))"}) {
        const auto r = build(base);
        const StructureCache s(r);
        for (auto f : s.idempotents()) add(std::string("corner(") + base + "," + std::to_string(f.index) + ")");
    }
    for (const char* t : {"quot(Z(36),[6])", "skew(Z(6),id,2)", "skew(prod(Z(3),Z(3)),swap(1,2),2)"}) add(t);
    return spec;
}

struct Cell {
    std::string ring;
    std::string check_id;
    Outcome outcome;
    Json witness;
};

struct SuiteReport {
    std::vector<Cell> cells;

    bool ok() const {
        return std::none_of(cells.begin(), cells.end(), [](const Cell& c) {
            return c.outcome == Outcome::Fail || c.outcome == Outcome::Error;
        });
    }

    std::size_t count(Outcome o) const {
        return static_cast<std::size_t>(
            std::count_if(cells.begin(), cells.end(), [o](const Cell& c) { return c.outcome == o; }));
    }
};

/// Empty selector means every registered check. Unknown ids raise usage_error.
inline std::vector<const TheoremCheck*> select_checks(const std::vector<std::string>& ids_wanted) {
    std::vector<const TheoremCheck*> out;
    for (const auto& c : check_registry())
        if (ids_wanted.empty() || std::find(ids_wanted.begin(), ids_wanted.end(), c.id) != ids_wanted.end())
            out.push_back(&c);
    for (const auto& id : ids_wanted)
        if (std::none_of(out.begin(), out.end(), [&](const TheoremCheck* c) { return c->id == id; }))
            throw usage_error("unknown check id '" + id + "'");
    return out;
}

namespace detail {

inline void run_checks(const Specimen& sp, const std::vector<const TheoremCheck*>& checks, SuiteReport& report) {
    for (const auto* c : checks) {
        try {
            auto res = c->run(sp);
            report.cells.push_back({sp.label(), c->id, res.outcome, std::move(res.witness)});
        } catch (const error& e) {
            report.cells.push_back({sp.label(), c->id, Outcome::Error, Json{{"message", e.what()}}});
        }
    }
}

inline void sort_cells(SuiteReport& report) {
    std::stable_sort(report.cells.begin(), report.cells.end(), [](const Cell& a, const Cell& b) {
        return std::tie(a.ring, a.check_id) < std::tie(b.ring, b.check_id);
    });
}

}  // namespace detail

/// Runs the selected checks over every corpus member; build failures become "build" error cells.
inline SuiteReport run_suite(const CorpusSpec& corpus, const std::vector<std::string>& check_ids = {},
                             const BuildOptions& opts = {}) {
    const auto checks = select_checks(check_ids);
    SuiteReport report;
    for (const auto& entry : corpus.entries) {
        std::optional<Specimen> sp;
        std::string label = entry.text;
        try {
            auto expr = parse_ring_expr(entry.text);
            label = to_string(*expr);
            auto local = opts;
            if (entry.budget) local.size_budget = *entry.budget;
            sp.emplace(build(*expr, local), expr);
        } catch (const error& e) {
            report.cells.push_back({label, "build", Outcome::Error, Json{{"message", e.what()}}});
            continue;
        }
        detail::run_checks(*sp, checks, report);
    }
    detail::sort_cells(report);
    return report;
}

/// Suite over tables supplied directly; each table is axiom-checked first.
inline SuiteReport run_suite(const std::vector<RingTable>& tables, const std::vector<std::string>& check_ids = {}) {
    const auto checks = select_checks(check_ids);
    SuiteReport report;
    for (const auto& t : tables) {
        const auto axioms = verify_ring_axioms(t);
        if (const auto* f = axioms.first_failure()) {
            report.cells.push_back(
                {t.label(), "build", Outcome::Error, Json{{"axiom", f->axiom}, {"witness", ids(f->witness)}}});
            continue;
        }
        detail::run_checks(Specimen(t), checks, report);
    }
    detail::sort_cells(report);
    return report;
}

}  // namespace wnc
