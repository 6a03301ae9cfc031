#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "corpus_fixture.hpp"
#include "wnc/wnc.hpp"

using namespace wnc;
using testing_support::corpus;

namespace {

Outcome outcome_of(const CheckResult& r) { return r.outcome; }

struct Built {
    RingTable table;
    StructureCache cache;
    explicit Built(const std::string& text) : table(build(text)), cache(table) {}
};

Subset ideal(const RingTable& r, std::initializer_list<std::uint32_t> gens) {
    std::vector<ElementId> g;
    for (auto x : gens) g.push_back(ElementId{x});
    return ideal_generated_by(r, g);
}

}  // namespace

TEST(Checks, JSubsetNil) {
    const Built z9("Z(9)"), z12("Z(12)"), t2("T2(Z(3))");
    EXPECT_EQ(outcome_of(check_J_subset_Nil(z9.table, z9.cache)), Outcome::Pass);
    EXPECT_EQ(outcome_of(check_J_subset_Nil(z12.table, z12.cache)), Outcome::Pass);
    EXPECT_EQ(outcome_of(check_J_subset_Nil(t2.table, t2.cache)), Outcome::NotApplicable);
}

TEST(Checks, QuotientPreservation) {
    const Built z12("Z(12)"), z6("Z(6)"), z36("Z(36)");
    EXPECT_EQ(outcome_of(check_quotient_preservation(z12.table, z12.cache, ideal(z12.table, {6}))), Outcome::Pass);
    EXPECT_EQ(outcome_of(check_quotient_preservation(z6.table, z6.cache, ideal(z6.table, {}))), Outcome::Pass);
    EXPECT_EQ(outcome_of(check_quotient_preservation(z36.table, z36.cache, ideal(z36.table, {4}))), Outcome::Pass);
}

TEST(Checks, ProductTheorem) {
    EXPECT_EQ(outcome_of(check_product_theorem({zn(4), zn(9)})), Outcome::Pass);
    EXPECT_EQ(outcome_of(check_product_theorem({zn(2), zn(4)})), Outcome::Pass);
    // Two factors that are not nil clean: the product must fail to be weak nil clean.
    EXPECT_EQ(outcome_of(check_product_theorem({zn(9), zn(9)})), Outcome::Pass);
    const auto p = product({zn(9), zn(9)});
    EXPECT_FALSE(holds(p, StructureCache(p), DecompKind::WeakNilClean));
}

TEST(Checks, NilradicalQuotient) {
    for (const char* t : {"Z(12)", "Z(5)", "Z(9)"}) {
        const Built b(t);
        EXPECT_EQ(outcome_of(check_nilradical_quotient(b.table, b.cache)), Outcome::Pass) << t;
    }
    const Built m("M2(Z(2))");
    EXPECT_EQ(outcome_of(check_nilradical_quotient(m.table, m.cache)), Outcome::NotApplicable);
}

TEST(Checks, Idealization) {
    const auto z6 = zn(6), z5 = zn(5);
    EXPECT_EQ(outcome_of(check_idealization(z6, self_module(z6))), Outcome::Pass);
    EXPECT_EQ(outcome_of(check_idealization(z5, self_module(z5))), Outcome::Pass);
    EXPECT_EQ(outcome_of(check_idealization(z6, cyclic_module(z6, 3))), Outcome::Pass);
    EXPECT_THROW(cyclic_module(z6, 4), invalid_module);
}

TEST(Checks, ZnClassificationSweep) {
    const auto c = check_zn_classification(60);
    EXPECT_TRUE(c.pass);
    EXPECT_TRUE(c.mismatches.empty());
    const std::vector<std::uint64_t> expected = {3, 6, 9, 12, 18, 24, 27, 36, 48, 54};
    EXPECT_EQ(c.weak_not_nil, expected);
}

TEST(Checks, TwoThreeForm) {
    EXPECT_TRUE(is_two_three_form(3));
    EXPECT_TRUE(is_two_three_form(96));
    EXPECT_FALSE(is_two_three_form(8));
    EXPECT_FALSE(is_two_three_form(15));
    EXPECT_FALSE(is_two_three_form(1));
}

TEST(Checks, AnnihilatorLemmas) {
    for (const char* t : {"Z(6)", "Z(9)", "M2(Z(2))"}) {
        const Built b(t);
        EXPECT_EQ(outcome_of(check_annihilator_lemmas(b.table, b.cache)), Outcome::Pass) << t;
    }
    const Built z9("Z(9)");
    const auto c = find_decomp(z9.table, z9.cache, ElementId{3}, DecompKind::WeakStarNilClean);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->idempotent, ElementId{0});
    EXPECT_TRUE(ann_left(z9.table, ElementId{3}).subset_of(ann_left(z9.table, ElementId{0})));
}

TEST(Checks, CornerTheorem) {
    const Built z6("Z(6)");
    EXPECT_EQ(outcome_of(check_corner_theorem(z6.table, z6.cache, z6.table.one())), Outcome::Pass);
    for (const char* t : {"M2(Z(2))", "M2(Z(3))"}) {
        const Built b(t);
        for (auto f : b.cache.idempotents())
            EXPECT_EQ(outcome_of(check_corner_theorem(b.table, b.cache, f)), Outcome::Pass) << t << " f=" << f.index;
    }
    const Built m("M2(Z(2))");
    EXPECT_THROW(check_corner_theorem(m.table, m.cache, ElementId{2}), invalid_idempotent);
}

TEST(Checks, UniqueMaximalIdeal) {
    const Built z9("Z(9)"), z4("Z(4)"), z6("Z(6)"), zero("corner(M2(Z(2)),0)");
    EXPECT_EQ(outcome_of(check_S_unique_maximal(z9.table, z9.cache)), Outcome::Pass);
    EXPECT_EQ(outcome_of(check_S_unique_maximal(z4.table, z4.cache)), Outcome::Pass);
    EXPECT_EQ(outcome_of(check_S_unique_maximal(z6.table, z6.cache)), Outcome::NotApplicable);
    EXPECT_EQ(outcome_of(check_S_unique_maximal(zero.table, zero.cache)), Outcome::NotApplicable);
}

TEST(Checks, Rigidity) {
    const Built z6("Z(6)"), z2("Z(2)");
    const Subset all(z6.table, z6.cache.idempotents());
    const Subset zero_one(z6.table, {ElementId{0}, ElementId{1}});
    EXPECT_EQ(outcome_of(check_S_rigidity(z6.table, z6.cache, all)), Outcome::Pass);
    EXPECT_EQ(outcome_of(check_S_rigidity(z6.table, z6.cache, zero_one)), Outcome::Pass);
    EXPECT_FALSE(holds(z6.table, z6.cache, Notion(DecompKind::SWeakStarNilClean, zero_one)));
    const Subset z2_all(z2.table, {ElementId{0}, ElementId{1}});
    EXPECT_EQ(outcome_of(check_S_rigidity(z2.table, z2.cache, z2_all)), Outcome::Pass);
    EXPECT_TRUE(holds(z2.table, z2.cache, Notion(DecompKind::SWeakStarNilClean, z2_all)));
}

TEST(Checks, WeakStarExchange) {
    for (const char* t : {"Z(6)", "Z(12)"}) {
        const Built b(t);
        EXPECT_EQ(outcome_of(check_weakstar_exchange(b.table, b.cache)), Outcome::Pass) << t;
    }
    const Built m("M2(Z(2))");
    EXPECT_NE(outcome_of(check_weakstar_exchange(m.table, m.cache)), Outcome::Fail);
}

TEST(Checks, WeakStarIdentityOnEveryCertificate) {
    for (const auto& sp : corpus()) {
        if (sp.table.order() > 100) continue;
        for (auto x : sp.table.elements())
            for (const auto& c : all_decomps(sp.table, sp.cache, x, DecompKind::WeakStarNilClean))
                ASSERT_TRUE(weakstar_identity_holds(sp.table, sp.cache, c)) << sp.label() << " x=" << x.index;
    }
}

TEST(Checks, StronglyNilCleanEquivalence) {
    for (const char* t : {"Z(4)", "Z(9)", "Z(2)"}) {
        const Built b(t);
        EXPECT_EQ(outcome_of(check_strongly_nilclean_equiv(b.table, b.cache)), Outcome::Pass) << t;
    }
    const Built z4("Z(4)"), z9("Z(9)");
    EXPECT_TRUE(holds(z4.table, z4.cache, DecompKind::StronglyNilClean));
    EXPECT_FALSE(holds(z9.table, z9.cache, DecompKind::StronglyNilClean));
}

TEST(Checks, StronglyPiRegular) {
    const Built z4("Z(4)"), z6("Z(6)");
    EXPECT_EQ(outcome_of(check_strongly_pi_regular(z4.table, z4.cache)), Outcome::Pass);
    EXPECT_EQ(outcome_of(check_strongly_pi_regular(z6.table, z6.cache)), Outcome::NotApplicable);
}

TEST(Checks, WeakJCleanBundle) {
    for (const char* t : {"Z(4)", "Z(8)"}) {
        const Built b(t);
        const auto res = check_weak_jclean_suite(b.table, b.cache);
        EXPECT_EQ(res.outcome, Outcome::Pass) << t;
        EXPECT_EQ(res.witness["parts"]["d"], "pass") << t;
    }
    const Built z6("Z(6)");
    const auto res = check_weak_jclean_suite(z6.table, z6.cache);
    EXPECT_EQ(res.outcome, Outcome::Pass);
    EXPECT_EQ(res.witness["parts"]["d"], "not-applicable");
    EXPECT_EQ(res.witness["parts"]["e"], "not-applicable");
}

TEST(Checks, SkewQuotient) {
    EXPECT_EQ(outcome_of(check_skew_quotient(zn(6), build("skew(Z(6),id,2)"))), Outcome::Pass);
    EXPECT_EQ(outcome_of(check_skew_quotient(zn(5), build("skew(Z(5),id,3)"))), Outcome::Pass);
    EXPECT_EQ(outcome_of(check_skew_quotient(product({zn(3), zn(3)}), build("skew(prod(Z(3),Z(3)),swap(1,2),2)"))),
              Outcome::Pass);
    // Mismatched pair: a weak nil clean base against a ring that is not.
    EXPECT_EQ(outcome_of(check_skew_quotient(zn(6), zn(5))), Outcome::Fail);
}

TEST(Suite, EmptyCorpus) {
    const auto report = run_suite(CorpusSpec{});
    EXPECT_TRUE(report.cells.empty());
    EXPECT_TRUE(report.ok());
}

TEST(Suite, BrokenEntriesBecomeBuildErrors) {
    std::istringstream in("Z(6)\nidealize(M2(Z(2)),self)\nZ(\n");
    const auto report = run_suite(parse_corpus(in), {"J-subset-Nil"});
    EXPECT_FALSE(report.ok());
    EXPECT_EQ(report.count(Outcome::Error), 2u);
    EXPECT_EQ(report.count(Outcome::Pass), 1u);
    for (const auto& c : report.cells) {
        if (c.outcome == Outcome::Error) {
            EXPECT_EQ(c.check_id, "build");
        }
    }
}

TEST(Suite, CorruptedTableSurfacesAsBuildError) {
    const auto z6 = zn(6);
    auto mul = z6.mul_table();
    mul[2 * 6 + 3] = 1;
    const RingTable bad(6, z6.add_table(), mul, z6.neg_table(), z6.zero(), z6.one(), "corrupt");
    const auto report = run_suite(std::vector<RingTable>{z6, bad});
    ASSERT_FALSE(report.ok());
    const auto it = std::find_if(report.cells.begin(), report.cells.end(),
                                 [](const Cell& c) { return c.ring == "corrupt"; });
    ASSERT_NE(it, report.cells.end());
    EXPECT_EQ(it->check_id, "build");
    EXPECT_EQ(it->outcome, Outcome::Error);
    EXPECT_TRUE(it->witness.contains("axiom"));
}

TEST(Suite, UnknownCheckIdIsUsageError) {
    EXPECT_THROW(run_suite(CorpusSpec{}, {"no-such-check"}), usage_error);
}

TEST(Suite, BudgetWaiver) {
    std::istringstream in("# comment\nZ(64) @budget=100\n  Z(64)  # too large without waiver\n");
    const auto spec = parse_corpus(in);
    ASSERT_EQ(spec.entries.size(), 2u);
    EXPECT_EQ(spec.entries[0].budget, 100u);
    const auto report = run_suite(spec, {"J-subset-Nil"}, BuildOptions{50, 256});
    EXPECT_EQ(report.count(Outcome::Error), 1u);
    std::istringstream bad("Z(4) @size=3\n");
    EXPECT_THROW(parse_corpus(bad), syntax_error);
}

TEST(Suite, DeterministicAndSorted) {
    std::istringstream a("Z(9)\nZ(6)\nT2(Z(2))\n");
    std::istringstream b("Z(9)\nZ(6)\nT2(Z(2))\n");
    const auto r1 = run_suite(parse_corpus(a));
    const auto r2 = run_suite(parse_corpus(b));
    ASSERT_EQ(r1.cells.size(), r2.cells.size());
    for (std::size_t i = 0; i < r1.cells.size(); ++i) {
        EXPECT_EQ(r1.cells[i].ring, r2.cells[i].ring);
        EXPECT_EQ(r1.cells[i].check_id, r2.cells[i].check_id);
        EXPECT_EQ(r1.cells[i].outcome, r2.cells[i].outcome);
        EXPECT_EQ(r1.cells[i].witness, r2.cells[i].witness);
        if (i) {
            EXPECT_LE(std::tie(r1.cells[i - 1].ring, r1.cells[i - 1].check_id),
                      std::tie(r1.cells[i].ring, r1.cells[i].check_id));
        }
    }
}

TEST(Suite, DefaultCorpusHasNoFailures) {
    const auto report = run_suite(default_corpus());
    for (const auto& c : report.cells)
        EXPECT_TRUE(c.outcome == Outcome::Pass || c.outcome == Outcome::NotApplicable)
            << c.ring << " " << c.check_id << " " << c.witness.dump();
    // Every check must be exercised positively somewhere.
    for (const auto& check : check_registry()) {
        const bool some_pass = std::any_of(report.cells.begin(), report.cells.end(), [&](const Cell& c) {
            return c.check_id == check.id && c.outcome == Outcome::Pass;
        });
        EXPECT_TRUE(some_pass) << check.id;
    }
}

TEST(Traceability, EveryCheckIsMappedAndEveryMappingResolves) {
    std::set<std::string> registered;
    for (const auto& c : check_registry()) registered.insert(c.id);
    std::set<std::string> mapped;
    for (const auto& e : traceability()) {
        if (e.check_id.empty()) {
            EXPECT_FALSE(e.note.empty()) << e.statement;
            continue;
        }
        EXPECT_TRUE(registered.count(e.check_id)) << e.check_id;
        mapped.insert(e.check_id);
    }
    EXPECT_EQ(mapped, registered);
}

TEST(Traceability, CommittedDocumentIsCurrent) {
    std::ifstream in(std::string(WNC_SOURCE_DIR) + "/docs/traceability.md");
    ASSERT_TRUE(in) << "docs/traceability.md is missing";
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), traceability_markdown()) << "regenerate with: wnc verify --list-checks > docs/traceability.md";
}
