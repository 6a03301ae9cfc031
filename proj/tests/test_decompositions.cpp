#include <gtest/gtest.h>

#include <utility>
#include <vector>

#include "corpus_fixture.hpp"
#include "oracle.hpp"
#include "wnc/wnc.hpp"

using namespace wnc;
using testing_support::corpus;

TEST(Kinds, NamesRoundTrip) {
    for (auto k : kAllKinds) {
        const auto parsed = parse_kind(kind_name(k));
        ASSERT_TRUE(parsed);
        EXPECT_EQ(*parsed, k);
    }
    EXPECT_FALSE(parse_kind("sort-of-clean"));
    EXPECT_EQ(kind_name(DecompKind::WeakStarNilClean), "weak-star-nil-clean");
}

TEST(FindDecomp, Z6Examples) {
    const auto z6 = zn(6);
    const StructureCache s(z6);
    const auto five = find_decomp(z6, s, ElementId{5}, DecompKind::WeakNilClean);
    ASSERT_TRUE(five);
    EXPECT_EQ(*five, (DecompCert{DecompKind::WeakNilClean, ElementId{5}, ElementId{1}, ElementId{0}, Sign::Minus, true}));

    const auto two = find_decomp(z6, s, ElementId{2}, DecompKind::WeakNilClean);
    ASSERT_TRUE(two);
    EXPECT_EQ(two->idempotent, ElementId{4});
    EXPECT_EQ(two->companion, ElementId{0});
    EXPECT_EQ(two->sign, Sign::Minus);

    EXPECT_FALSE(find_decomp(z6, s, ElementId{2}, DecompKind::NilClean));
    EXPECT_FALSE(find_decomp(z6, s, ElementId{5}, DecompKind::NilClean));
}

TEST(FindDecomp, ZeroIsStronglyNilClean) {
    for (const auto& sp : corpus()) {
        const auto c = find_decomp(sp.table, sp.cache, sp.table.zero(), DecompKind::StronglyNilClean);
        ASSERT_TRUE(c) << sp.label();
        EXPECT_EQ(c->companion, sp.table.zero());
        EXPECT_EQ(c->idempotent, sp.table.zero());
        EXPECT_EQ(c->sign, Sign::Plus);
        EXPECT_TRUE(c->commutes);
    }
}

TEST(FindDecomp, WeakJCleanInZ4) {
    const auto z4 = zn(4);
    const StructureCache s(z4);
    const auto c = find_decomp(z4, s, ElementId{3}, DecompKind::WeakJClean);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->companion, ElementId{2});
    EXPECT_EQ(c->idempotent, ElementId{1});
    EXPECT_EQ(c->sign, Sign::Plus);
}

TEST(FindDecomp, AllDecompsAreCanonicallyOrdered) {
    const auto z12 = zn(12);
    const StructureCache s(z12);
    for (auto x : z12.elements()) {
        const auto all = all_decomps(z12, s, x, DecompKind::WeakNilClean);
        const auto first = find_decomp(z12, s, x, DecompKind::WeakNilClean);
        ASSERT_EQ(all.empty(), !first);
        if (first) {
            EXPECT_EQ(all.front(), *first);
        }
        for (std::size_t i = 1; i < all.size(); ++i)
            EXPECT_LE(std::pair(all[i - 1].idempotent, static_cast<int>(all[i - 1].sign)),
                      std::pair(all[i].idempotent, static_cast<int>(all[i].sign)));
    }
}

TEST(FindDecomp, RestrictedPoolValidation) {
    const auto z6 = zn(6);
    const StructureCache s(z6);
    EXPECT_THROW(find_decomp(z6, s, ElementId{1}, Notion(DecompKind::SWeakNilClean, Subset(z6, {ElementId{2}}))),
                 invalid_subset);
    EXPECT_THROW(find_decomp(z6, s, ElementId{1}, Notion(DecompKind::SWeakNilClean, Subset(z6, {}))),
                 invalid_subset);
    EXPECT_THROW(find_decomp(z6, s, ElementId{1}, DecompKind::SWeakNilClean), usage_error);
    EXPECT_THROW(find_decomp(z6, s, ElementId{1}, Notion(DecompKind::NilClean, Subset(z6, {ElementId{0}}))),
                 usage_error);
    EXPECT_THROW(find_decomp(z6, s, ElementId{6}, DecompKind::NilClean), usage_error);

    // {0,1} cannot reach 2 in Z(6): 2 needs the idempotent 4.
    const auto zero_one = zero_one_weak_nil_clean(z6);
    EXPECT_FALSE(find_decomp(z6, s, ElementId{2}, zero_one));
    EXPECT_TRUE(find_decomp(z6, s, ElementId{5}, zero_one));
}

TEST(Verdict, Examples) {
    const auto z6 = zn(6);
    const StructureCache s6(z6);
    const auto wnc6 = ring_verdict(z6, s6, DecompKind::WeakNilClean);
    EXPECT_TRUE(wnc6.holds);
    EXPECT_EQ(wnc6.certs.size(), 6u);
    const auto nc6 = ring_verdict(z6, s6, DecompKind::NilClean);
    EXPECT_FALSE(nc6.holds);
    EXPECT_EQ(nc6.witness_failure, ElementId{2});
    EXPECT_TRUE(nc6.certs.empty());

    const auto t2 = build("T2(Z(3))");
    const StructureCache st(t2);
    const auto v = ring_verdict(t2, st, DecompKind::WeakNilClean);
    EXPECT_FALSE(v.holds);
    ASSERT_TRUE(v.witness_failure);
    EXPECT_FALSE(oracle::decomposable(t2, *v.witness_failure, DecompKind::WeakNilClean));
    EXPECT_TRUE(holds(t2, st, DecompKind::Clean));
}

TEST(Verdict, EqualDiagonalOverZ6IsWeakStar) {
    // Scalar idempotents are central in eqdiag_k(R) for commutative R, so weak and weak* agree.
    const auto r = build("eqdiag2(Z(6))");
    const StructureCache s(r);
    EXPECT_TRUE(holds(r, s, DecompKind::WeakNilClean));
    EXPECT_TRUE(holds(r, s, DecompKind::WeakStarNilClean));
    EXPECT_FALSE(holds(r, s, DecompKind::NilClean));
}

TEST(Verdict, MatrixRingOverZ2IsNilClean) {
    const auto m = build("M2(Z(2))");
    const StructureCache s(m);
    EXPECT_TRUE(holds(m, s, DecompKind::NilClean));
    // Nil clean does not force the commuting form.
    const auto v = ring_verdict(m, s, DecompKind::WeakStarNilClean);
    EXPECT_FALSE(v.holds);
    ASSERT_TRUE(v.witness_failure);
    EXPECT_FALSE(oracle::decomposable(m, *v.witness_failure, DecompKind::WeakStarNilClean));
    EXPECT_FALSE(holds(m, s, DecompKind::StronglyNilClean));
}

TEST(Certificates, SoundAndCompleteAgainstOracle) {
    for (const auto& sp : corpus()) {
        const auto& r = sp.table;
        if (r.order() > 36) continue;
        const oracle::Classes k(r);
        for (auto kind : kAllKinds) {
            if (traits(kind).restricted) continue;
            for (auto x : r.elements()) {
                const auto c = find_decomp(r, sp.cache, x, kind);
                ASSERT_EQ(c.has_value(), oracle::decomposable(r, k, x, kind))
                    << sp.label() << " x=" << x.index << " " << kind_name(kind);
                if (c) {
                    EXPECT_TRUE(recheck(r, sp.cache, *c));
                }
            }
        }
    }
}

TEST(Certificates, RestrictedPoolsAgainstOracle) {
    for (const auto& sp : corpus()) {
        const auto& r = sp.table;
        if (r.order() > 36) continue;
        const oracle::Classes k(r);
        const auto& idem = sp.cache.idempotents();
        for (std::size_t skip = 0; skip <= idem.size(); ++skip) {
            std::vector<ElementId> pool;
            for (std::size_t i = 0; i < idem.size(); ++i)
                if (i != skip) pool.push_back(idem[i]);
            if (pool.empty()) continue;
            for (auto kind : {DecompKind::SWeakNilClean, DecompKind::SWeakStarNilClean}) {
                const Notion n(kind, Subset(r, pool));
                for (auto x : r.elements()) {
                    const auto c = find_decomp(r, sp.cache, x, n);
                    ASSERT_EQ(c.has_value(), oracle::decomposable(r, k, x, kind, &pool)) << sp.label();
                    if (c) {
                        EXPECT_TRUE(recheck(r, sp.cache, *c));
                        EXPECT_TRUE(std::find(pool.begin(), pool.end(), c->idempotent) != pool.end());
                    }
                }
            }
        }
    }
}

TEST(Certificates, TamperedCertificatesFailRecheck) {
    const auto z6 = zn(6);
    const StructureCache s(z6);
    const DecompCert good{DecompKind::WeakNilClean, ElementId{5}, ElementId{1}, ElementId{0}, Sign::Minus, true};
    ASSERT_TRUE(recheck(z6, s, good));
    auto bad = good;
    bad.sign = Sign::Plus;
    EXPECT_FALSE(recheck(z6, s, bad));
    bad = good;
    bad.kind = DecompKind::NilClean;
    EXPECT_FALSE(recheck(z6, s, bad));
    bad = good;
    bad.idempotent = ElementId{2};
    EXPECT_FALSE(recheck(z6, s, bad));
    bad = good;
    bad.companion = ElementId{9};
    EXPECT_FALSE(recheck(z6, s, bad));
}

TEST(Monotonicity, ElementwiseImplicationsOnCorpus) {
    using K = DecompKind;
    const std::vector<std::pair<K, K>> implications = {
        {K::StronglyNilClean, K::NilClean},     {K::NilClean, K::WeakNilClean},
        {K::StronglyNilClean, K::WeakStarNilClean}, {K::WeakStarNilClean, K::WeakNilClean},
        {K::StronglyNilClean, K::StronglyClean}, {K::StronglyClean, K::Clean},
        {K::Clean, K::WeaklyClean},             {K::StronglyJClean, K::JClean},
        {K::JClean, K::WeakJClean},             {K::StronglyJClean, K::WeakStarJClean},
        {K::WeakStarJClean, K::WeakJClean},
    };
    for (const auto& sp : corpus()) {
        if (sp.table.order() > 100) continue;
        for (auto x : sp.table.elements())
            for (const auto& [a, b] : implications)
                if (find_decomp(sp.table, sp.cache, x, a)) {
                    EXPECT_TRUE(find_decomp(sp.table, sp.cache, x, b))
                        << sp.label() << " x=" << x.index << " " << kind_name(a) << " => " << kind_name(b);
                }
    }
}

TEST(Monotonicity, FullPoolMatchesUnrestrictedKind) {
    for (const auto& sp : corpus()) {
        if (sp.table.order() > 100) continue;
        const Subset all(sp.table, sp.cache.idempotents());
        EXPECT_EQ(holds(sp.table, sp.cache, Notion(DecompKind::SWeakNilClean, all)),
                  holds(sp.table, sp.cache, DecompKind::WeakNilClean))
            << sp.label();
        EXPECT_EQ(holds(sp.table, sp.cache, Notion(DecompKind::SWeakStarNilClean, all)),
                  holds(sp.table, sp.cache, DecompKind::WeakStarNilClean))
            << sp.label();
    }
}

TEST(Exchange, Examples) {
    for (const char* text : {"Z(5)", "T2(Z(3))", "Z(6)", "M2(Z(2))"}) {
        const auto r = build(text);
        const StructureCache s(r);
        for (auto side : {Side::Right, Side::Left}) {
            const auto rep = exchange_report(r, s, side);
            EXPECT_TRUE(rep.holds) << text;
            for (auto x : r.elements()) {
                ASSERT_TRUE(rep.witness[x.index]) << text;
                const auto e = *rep.witness[x.index];
                EXPECT_TRUE(s.is_idempotent(e));
                const auto xs = side == Side::Right ? right_multiples(r, x) : left_multiples(r, x);
                const auto y = r.sub(r.one(), x);
                const auto ys = side == Side::Right ? right_multiples(r, y) : left_multiples(r, y);
                EXPECT_TRUE(xs.contains(e));
                EXPECT_TRUE(ys.contains(r.sub(r.one(), e)));
            }
        }
    }
}

TEST(PiRegular, Examples) {
    EXPECT_TRUE(is_strongly_pi_regular(zn(6)));
    EXPECT_TRUE(is_strongly_pi_regular(build("M2(Z(2))")));
    EXPECT_TRUE(is_strongly_pi_regular(zn(1)));
}

TEST(Lifting, Examples) {
    const auto z4 = zn(4);
    const StructureCache s4(z4);
    EXPECT_TRUE(lifts_idempotents_weakly(z4, s4, Subset(z4, {ElementId{0}, ElementId{2}})));

    const auto z9 = zn(9);
    const StructureCache s9(z9);
    const auto rep = lift_report(z9, s9, Subset(z9, s9.nilpotents()), LiftMode::Weak);
    EXPECT_TRUE(rep.holds);
    ASSERT_EQ(rep.lift.size(), 3u);
    EXPECT_EQ(rep.lift[0], ElementId{0});
    EXPECT_EQ(rep.lift[1], ElementId{1});
    EXPECT_FALSE(rep.lift[2]);

    const auto z6 = zn(6);
    const StructureCache s6(z6);
    EXPECT_TRUE(lifts_idempotents_weakly(z6, s6, Subset(z6, {ElementId{0}})));
    EXPECT_TRUE(lifts_idempotents(z6, s6, Subset(z6, {ElementId{0}})));
}

TEST(Lifting, OutcomeIsRepresentativeIndependent) {
    for (const auto& sp : corpus()) {
        if (sp.table.order() > 36) continue;
        for (const auto& ideal : all_ideals(sp.table))
            for (auto mode : {LiftMode::Classical, LiftMode::Weak}) {
                const auto rep = lift_report(sp.table, sp.cache, ideal, mode);
                EXPECT_TRUE(rep.representative_independent) << sp.label();
                // A finite ring lifts idempotents modulo every ideal: some power of a representative is idempotent.
                EXPECT_TRUE(rep.holds) << sp.label();
            }
    }
}

TEST(CountBound, Examples) {
    EXPECT_EQ(nil_clean_count_bound(5, 1), 4u);
    EXPECT_EQ(nil_clean_count_bound(3, 2), 12u);
    EXPECT_EQ(nil_clean_count_bound(7, 2), 28u);
    EXPECT_LT(nil_clean_count_bound(7, 2), 49u);
    EXPECT_THROW(nil_clean_count_bound(4, 1), usage_error);
    EXPECT_THROW(nil_clean_count_bound(5, 0), usage_error);
}

TEST(CountBound, BoundsTheReachableSetInPrimePowers) {
    for (std::uint64_t p : {2, 3, 5, 7}) {
        for (unsigned k = 1; k <= 3; ++k) {
            std::uint64_t order = 1;
            for (unsigned i = 0; i < k; ++i) order *= p;
            if (order > 400) continue;
            const auto r = zn(order);
            const StructureCache s(r);
            std::size_t reachable = 0;
            for (auto x : r.elements()) reachable += find_decomp(r, s, x, DecompKind::WeakNilClean).has_value();
            EXPECT_LE(reachable, nil_clean_count_bound(p, k)) << order;
        }
    }
}
