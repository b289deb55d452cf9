#include "loop_corpus.hpp"

#include <paige/loop.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <thread>

using namespace paige;

namespace {

std::vector<Index> intersect_containing(const std::vector<corpus::Mask>& normals, corpus::Mask gens, std::size_t n) {
    corpus::Mask acc = (n == 32) ? ~corpus::Mask{0} : ((corpus::Mask{1} << n) - 1);
    for (auto m : normals)
        if ((m & gens) == gens) acc &= m;
    std::vector<Index> out;
    for (Index i = 0; i < n; ++i)
        if (acc >> i & 1) out.push_back(i);
    return out;
}

// Swaps an intercalate (rows a,b / columns c,d holding x y / y x) away from the
// identity row and column, which keeps the table Latin.
std::vector<std::vector<Index>> intercalate_swaps(const FiniteLoop& loop) {
    const std::size_t n = loop.size();
    std::vector<std::vector<Index>> out;
    const auto& t = loop.table();
    for (Index a = 0; a < n; ++a)
        for (Index b = a + 1; b < n; ++b)
            for (Index c = 0; c < n; ++c)
                for (Index d = c + 1; d < n; ++d) {
                    if (a == loop.identity() || b == loop.identity() || c == loop.identity() || d == loop.identity())
                        continue;
                    if (t[a * n + c] == t[b * n + d] && t[a * n + d] == t[b * n + c]) {
                        auto copy = t;
                        std::swap(copy[a * n + c], copy[a * n + d]);
                        std::swap(copy[b * n + c], copy[b * n + d]);
                        out.push_back(std::move(copy));
                    }
                }
    return out;
}

}  // namespace

TEST(FiniteLoopConstruction, CorpusIsLatin) {
    for (const auto& [name, loop] : corpus::small_loops()) {
        EXPECT_TRUE(is_latin_square(loop)) << name;
        for (Index i = 0; i < loop.size(); ++i) {
            EXPECT_EQ(loop.mul(loop.identity(), i), i);
            EXPECT_EQ(loop.mul(i, loop.inverse(i)), loop.identity()) << name;
        }
    }
}

TEST(FiniteLoopConstruction, RejectsBadTables) {
    // swap two off-diagonal entries in one row: rows stay permutations, columns break
    auto t = corpus::cyclic(5).table();
    std::swap(t[1 * 5 + 2], t[1 * 5 + 3]);
    EXPECT_THROW(FiniteLoop::from_table(5, 0, t), LoopError);
    EXPECT_THROW(FiniteLoop::from_table(2, 0, {0, 1, 1, 1}), LoopError);
    EXPECT_THROW(FiniteLoop::from_table(2, 1, {0, 1, 1, 0}), LoopError);  // 1 is not the identity
    EXPECT_THROW(FiniteLoop::from_table(2, 0, {0, 1, 1, 2}), LoopError);
    EXPECT_THROW(FiniteLoop::from_table(2, 0, {0, 1, 1}), LoopError);
    EXPECT_THROW(FiniteLoop::from_table(0, 0, {}), LoopError);
}

TEST(FiniteLoopConstruction, OracleBackedMatchesTable) {
    const std::size_t n = 12;
    const auto table_loop = corpus::direct_product(corpus::cyclic(2), corpus::symmetric3());
    FiniteLoop::OracleOptions with_div;
    with_div.left_divide = [&](Index a, Index b) { return table_loop.left_divide(a, b); };
    with_div.right_divide = [&](Index a, Index b) { return table_loop.right_divide(a, b); };
    const auto oracle = FiniteLoop::from_oracle(n, 0, [&](Index a, Index b) { return table_loop.mul(a, b); }, with_div);
    const auto scanning = FiniteLoop::from_oracle(n, 0, [&](Index a, Index b) { return table_loop.mul(a, b); });
    EXPECT_FALSE(oracle.is_table_backed());
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) {
            EXPECT_EQ(oracle.mul(a, b), table_loop.mul(a, b));
            EXPECT_EQ(scanning.left_divide(a, b), table_loop.left_divide(a, b));
            EXPECT_EQ(scanning.right_divide(a, b), table_loop.right_divide(a, b));
        }
    EXPECT_EQ(center(oracle).members(), center(table_loop).members());
    EXPECT_EQ(normal_closure(oracle, {3}).members(), normal_closure(table_loop, {3}).members());
}

TEST(FiniteLoopConstruction, OracleSpotCheckRejectsBrokenOracle) {
    EXPECT_THROW(FiniteLoop::from_oracle(5, 0, [](Index a, Index b) { return (a * b) % 5; }), LoopError);
    FiniteLoop::OracleOptions bad;
    bad.left_divide = [](Index, Index b) { return b; };
    EXPECT_THROW(FiniteLoop::from_oracle(7, 0, [](Index a, Index b) { return (a + b) % 7; }, bad), LoopError);
}

TEST(FiniteLoopConstruction, MemoIsSafeUnderConcurrentReads) {
    const std::size_t n = 97;
    const auto loop = FiniteLoop::from_oracle(n, 0, [n](Index a, Index b) { return static_cast<Index>((a + b) % n); });
    std::vector<std::thread> workers;
    std::vector<int> errors(4, 0);
    for (int w = 0; w < 4; ++w)
        workers.emplace_back([&, w] {
            for (Index a = 0; a < n; ++a)
                for (Index b = 0; b < n; ++b)
                    if (loop.mul(a, b) != (a + b) % n) ++errors[w];
        });
    for (auto& t : workers) t.join();
    for (int e : errors) EXPECT_EQ(e, 0);
}

TEST(LoopDivision, InvertMultiplication) {
    for (const auto& [name, loop] : corpus::small_loops())
        for (Index a = 0; a < loop.size(); ++a)
            for (Index b = 0; b < loop.size(); ++b) {
                ASSERT_EQ(loop.mul(a, loop.left_divide(a, b)), b) << name;
                ASSERT_EQ(loop.mul(loop.right_divide(a, b), a), b) << name;
            }
    const auto s3 = corpus::symmetric3();
    for (Index a = 0; a < 6; ++a)
        for (Index b = 0; b < 6; ++b) {
            EXPECT_EQ(s3.left_divide(0, b), b);
            EXPECT_EQ(s3.left_divide(a, b), s3.mul(s3.inverse(a), b));  // group: a^-1 b
        }
}

TEST(LoopAssociator, IdentityPositionsAndGroups) {
    for (const auto& [name, loop] : corpus::small_loops()) {
        const Index e = loop.identity();
        for (Index a = 0; a < loop.size(); ++a)
            for (Index b = 0; b < loop.size(); ++b) {
                EXPECT_EQ(loop_associator(loop, e, a, b), e);
                EXPECT_EQ(loop_associator(loop, a, e, b), e);
                EXPECT_EQ(loop_associator(loop, a, b, e), e);
                EXPECT_EQ(commutator(loop, a, a), e);
                EXPECT_EQ(commutator(loop, e, b), e);
            }
    }
    const auto d8 = corpus::dihedral8();
    for (Index a = 0; a < 8; ++a)
        for (Index b = 0; b < 8; ++b)
            for (Index c = 0; c < 8; ++c) EXPECT_EQ(loop_associator(d8, a, b, c), 0u);
    const auto c6 = corpus::cyclic(6);
    for (Index a = 0; a < 6; ++a)
        for (Index b = 0; b < 6; ++b) EXPECT_EQ(commutator(c6, a, b), 0u);
}

TEST(LoopAssociator, DefiningEquation) {
    const auto o16 = corpus::octonion16();
    bool found = false;
    for (Index a = 0; a < 16; ++a)
        for (Index b = 0; b < 16; ++b)
            for (Index c = 0; c < 16; ++c) {
                const Index u = loop_associator(o16, a, b, c);
                ASSERT_EQ(o16.mul(o16.mul(a, b), c), o16.mul(o16.mul(a, o16.mul(b, c)), u));
                found = found || u != o16.identity();
            }
    EXPECT_TRUE(found);
}

TEST(MoufangCheck, GroupsAndOctonionsPass) {
    for (const char* name : {"C4", "S3", "D8", "Q8", "C2xS3", "O16"}) {
        for (const auto& entry : corpus::small_loops()) {
            if (entry.name != name) continue;
            const auto report = check_moufang(entry.loop, Exhaustive{});
            EXPECT_TRUE(report.passed()) << name;
            ASSERT_EQ(report.checks.size(), 4u);
            const auto n = entry.loop.size();
            for (const auto& c : report.checks) EXPECT_EQ(c.tested, n * n * n);
            EXPECT_TRUE(inverse_antiautomorphism_check(entry.loop, Exhaustive{}).passed()) << name;
        }
    }
}

TEST(MoufangCheck, NonMoufangLoopFailsWithWitness) {
    const auto l5 = corpus::nonassociative5();
    const auto report = check_moufang(l5, Exhaustive{});
    EXPECT_FALSE(report.passed());
    for (const auto& c : report.checks) {
        if (c.passed()) continue;
        ASSERT_EQ(c.witness.size(), 3u);
    }
    const auto& first = report.checks[0];
    if (!first.passed()) {
        const Index x = first.witness[0], y = first.witness[1], z = first.witness[2];
        EXPECT_NE(l5.mul(x, l5.mul(y, l5.mul(x, z))), l5.mul(l5.mul(l5.mul(x, y), x), z));
    }
}

TEST(MoufangCheck, CorruptedTablesFail) {
    // An intercalate swap keeps the table Latin but breaks the Moufang law.
    bool moufang_failure = false, antiautomorphism_failure = false;
    for (auto& t : intercalate_swaps(corpus::dihedral8())) {
        const auto loop = FiniteLoop::from_table(8, 0, t);
        const auto m = check_moufang(loop, Exhaustive{});
        if (!m.passed()) {
            moufang_failure = true;
            for (const auto& c : m.checks)
                if (!c.passed()) {
                    EXPECT_EQ(c.witness.size(), 3u);
                }
        }
        const auto inv = inverse_antiautomorphism_check(loop, Exhaustive{});
        if (!inv.passed()) {
            antiautomorphism_failure = true;
            const Index x = inv.checks[0].witness[0], y = inv.checks[0].witness[1];
            EXPECT_NE(loop.inverse(loop.mul(x, y)), loop.mul(loop.inverse(y), loop.inverse(x)));
        }
    }
    EXPECT_TRUE(moufang_failure);
    EXPECT_TRUE(antiautomorphism_failure);
}

TEST(MoufangCheck, SampledModeIsSeeded) {
    const auto o16 = corpus::octonion16();
    const auto a = check_moufang(o16, Sampled{500, 3});
    EXPECT_FALSE(a.exhaustive);
    EXPECT_TRUE(a.passed());
    EXPECT_EQ(a.checks[0].tested, 500u);
    const auto l5 = corpus::nonassociative5();
    const auto b1 = check_moufang(l5, Sampled{200, 42});
    const auto b2 = check_moufang(l5, Sampled{200, 42});
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(b1.checks[i].failures, b2.checks[i].failures);
        EXPECT_EQ(b1.checks[i].witness, b2.checks[i].witness);
    }
}

TEST(Subloops, ClosureExamples) {
    const auto q8 = corpus::quaternion8();
    EXPECT_EQ(subloop_closure(q8, {0}).members(), (std::vector<Index>{0}));
    EXPECT_EQ(subloop_closure(q8, {1}).members(), (std::vector<Index>{0, 1}));  // {1, -1}
    EXPECT_EQ(subloop_closure(q8, {2}).size(), 4u);                             // <i>
    EXPECT_EQ(subloop_closure(q8, {2, 4}).size(), 8u);                          // <i, j>
    EXPECT_THROW(subloop_closure(q8, {}), LoopError);
    EXPECT_THROW(SubloopHandle::from_members(q8, {0, 2}), LoopError);
    EXPECT_THROW(SubloopHandle::from_members(q8, {1}), LoopError);
    EXPECT_EQ(SubloopHandle::from_members(q8, {1, 0}), subloop_closure(q8, {1}));
}

TEST(Subloops, ClosureMatchesBruteForce) {
    for (const auto& [name, loop] : corpus::small_loops()) {
        for (Index g = 0; g < loop.size(); ++g) {
            const auto mask = corpus::to_mask(subloop_closure(loop, {g}).members());
            EXPECT_TRUE(corpus::closed(loop, mask)) << name;
            // minimal: no closed proper subset of the mask contains g
            for (corpus::Mask sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask)
                if ((sub >> g & 1) && corpus::closed(loop, sub)) ADD_FAILURE() << name << " not minimal";
        }
    }
}

TEST(InnerMaps, FixIdentityAndTrivialOnCommutative) {
    for (const auto& [name, loop] : corpus::small_loops())
        for (Index x = 0; x < loop.size(); ++x)
            for (Index y = 0; y < loop.size(); ++y)
                for (auto kind : {InnerMap::Kind::T, InnerMap::Kind::L, InnerMap::Kind::R})
                    EXPECT_EQ(apply_inner_map(loop, {kind, x, y}, loop.identity()), loop.identity()) << name;
    const auto c6 = corpus::cyclic(6);
    for (Index x = 0; x < 6; ++x)
        for (Index u = 0; u < 6; ++u) EXPECT_EQ(apply_inner_map(c6, {InnerMap::Kind::T, x, 0}, u), u);
    // T(x) solves x*u = w*x
    const auto s3 = corpus::symmetric3();
    for (Index x = 0; x < 6; ++x)
        for (Index u = 0; u < 6; ++u) {
            const Index w = apply_inner_map(s3, {InnerMap::Kind::T, x, 0}, u);
            EXPECT_EQ(s3.mul(w, x), s3.mul(x, u));
        }
}

TEST(Normality, AgreesWithCosetDefinitionOnAllSubloops) {
    for (const auto& [name, loop] : corpus::small_loops()) {
        const std::size_t n = loop.size();
        for (corpus::Mask m = 0; m < (corpus::Mask{1} << n); ++m) {
            if (!corpus::closed(loop, m)) continue;
            std::vector<Index> members;
            for (Index i = 0; i < n; ++i)
                if (m >> i & 1) members.push_back(i);
            const auto sub = SubloopHandle::from_members(loop, members);
            EXPECT_EQ(is_normal(loop, sub), corpus::normal_by_cosets(loop, m)) << name << " mask " << m;
        }
    }
}

TEST(Normality, Examples) {
    const auto s3 = corpus::symmetric3();
    EXPECT_TRUE(is_normal(s3, subloop_closure(s3, {0})));
    EXPECT_TRUE(is_normal(s3, SubloopHandle::from_members(s3, {0, 1, 2, 3, 4, 5})));
    EXPECT_FALSE(is_normal(s3, subloop_closure(s3, {1})));  // a transposition
    EXPECT_TRUE(is_normal(s3, subloop_closure(s3, {3})));   // A3
    const auto q8 = corpus::quaternion8();
    EXPECT_TRUE(is_normal(q8, subloop_closure(q8, {1})));
    EXPECT_THROW(is_normal(corpus::cyclic(6), subloop_closure(s3, {0})), LoopError);
}

TEST(NormalClosure, EqualsIntersectionOfNormalSubloops) {
    for (const auto& [name, loop] : corpus::small_loops()) {
        const auto normals = corpus::all_normal_subloops(loop);
        const std::size_t n = loop.size();
        for (Index g = 0; g < n; ++g) {
            const auto closure = normal_closure(loop, {g});
            EXPECT_EQ(closure.members(), intersect_containing(normals, corpus::Mask{1} << g, n)) << name << " g=" << g;
            EXPECT_TRUE(is_normal(loop, closure)) << name;
            EXPECT_TRUE(closure.contains(g));
            EXPECT_EQ(normal_closure(loop, closure.members()).members(), closure.members());  // fixed point
        }
        for (Index g = 1; g < n; ++g) {
            const Index h = (g * 7 + 3) % n;
            const auto closure = normal_closure(loop, {g, h});
            const corpus::Mask gens = (corpus::Mask{1} << g) | (corpus::Mask{1} << h);
            EXPECT_EQ(closure.members(), intersect_containing(normals, gens, n)) << name;
        }
    }
}

TEST(Center, Examples) {
    EXPECT_EQ(center(corpus::cyclic(6)).size(), 6u);
    EXPECT_EQ(center(corpus::symmetric3()).members(), (std::vector<Index>{0}));
    EXPECT_EQ(center(corpus::quaternion8()).members(), (std::vector<Index>{0, 1}));
    EXPECT_EQ(center(corpus::octonion16()).members(), (std::vector<Index>{0, 1}));
    EXPECT_EQ(center(corpus::dihedral8()).size(), 2u);
    EXPECT_EQ(center(corpus::nonassociative5()).members(), (std::vector<Index>{0}));
    // sampled associator phase agrees on a loop whose commutant survivors are central
    EXPECT_EQ(center(corpus::octonion16(), Sampled{50, 1}).members(), (std::vector<Index>{0, 1}));
}

TEST(Center, MatchesDefinitionOnCorpus) {
    for (const auto& [name, loop] : corpus::small_loops()) {
        const std::size_t n = loop.size();
        std::vector<Index> expect;
        for (Index z = 0; z < n; ++z) {
            bool central = true;
            for (Index x = 0; x < n && central; ++x) {
                central = loop.mul(z, x) == loop.mul(x, z);
                for (Index y = 0; y < n && central; ++y)
                    central = loop_associator(loop, z, x, y) == loop.identity() &&
                              loop_associator(loop, x, z, y) == loop.identity() &&
                              loop_associator(loop, x, y, z) == loop.identity();
            }
            if (central) expect.push_back(z);
        }
        EXPECT_EQ(center(loop).members(), expect) << name;
    }
}

TEST(Quotient, Examples) {
    const auto q8 = corpus::quaternion8();
    const auto by_trivial = quotient(q8, subloop_closure(q8, {0}));
    EXPECT_EQ(by_trivial.loop.size(), 8u);
    EXPECT_EQ(by_trivial.loop.table(), q8.table());  // minimal representatives keep the labelling
    const auto by_whole = quotient(q8, subloop_closure(q8, {2, 4}));
    EXPECT_EQ(by_whole.loop.size(), 1u);
    const auto klein = quotient(q8, subloop_closure(q8, {1}));
    EXPECT_EQ(klein.loop.size(), 4u);
    for (Index a = 0; a < 4; ++a) EXPECT_EQ(klein.loop.mul(a, a), klein.loop.identity());
    EXPECT_EQ(klein.representatives, (std::vector<Index>{0, 2, 4, 6}));
    for (Index i = 0; i < 8; ++i) EXPECT_EQ(klein.coset_of[i], i / 2);

    const auto s3 = corpus::symmetric3();
    EXPECT_THROW(quotient(s3, subloop_closure(s3, {1})), LoopError);
    EXPECT_EQ(quotient(s3, subloop_closure(s3, {3})).loop.size(), 2u);
}

TEST(Quotient, OfMoufangIsMoufang) {
    const auto o16 = corpus::octonion16();
    const auto q = quotient(o16, center(o16));
    EXPECT_EQ(q.loop.size(), 8u);
    EXPECT_TRUE(check_moufang(q.loop, Exhaustive{}).passed());
    EXPECT_TRUE(is_latin_square(q.loop));
}

TEST(Quotient, OracleBackedParentWithSampledVerification) {
    const std::size_t n = 12;
    const auto base = corpus::direct_product(corpus::cyclic(2), corpus::symmetric3());
    const auto oracle = FiniteLoop::from_oracle(n, 0, [&](Index a, Index b) { return base.mul(a, b); });
    const auto sub = subloop_closure(oracle, {6});
    ASSERT_TRUE(is_normal(oracle, sub));
    const auto q = quotient(oracle, sub, {Sampled{500, 9}});
    EXPECT_EQ(q.loop.size(), n / sub.size());
    EXPECT_TRUE(is_latin_square(q.loop));
}

TEST(Simplicity, Examples) {
    const auto c4 = is_simple(corpus::cyclic(4));
    EXPECT_FALSE(c4.simple);
    ASSERT_TRUE(c4.witness);
    EXPECT_EQ(c4.witness->members(), (std::vector<Index>{0, 2}));
    EXPECT_TRUE(is_simple(corpus::cyclic(5)).simple);
    EXPECT_TRUE(is_simple(corpus::cyclic(2)).simple);
    const auto s3 = is_simple(corpus::symmetric3());
    EXPECT_FALSE(s3.simple);
    EXPECT_EQ(s3.witness->members(), (std::vector<Index>{0, 3, 4}));
    EXPECT_FALSE(is_simple(corpus::octonion16()).simple);
    EXPECT_THROW(is_simple(corpus::cyclic(1)), LoopError);

    const auto sampled = is_simple(corpus::cyclic(7), Sampled{3, 5});
    EXPECT_TRUE(sampled.simple);
    EXPECT_TRUE(sampled.sampled);
    EXPECT_EQ(sampled.generators_tested, 3u);
    EXPECT_FALSE(sampled.caveat.empty());
}

TEST(Simplicity, AgreesWithNormalSubloopEnumeration) {
    for (const auto& [name, loop] : corpus::small_loops()) {
        if (loop.size() < 2) continue;
        const auto normals = corpus::all_normal_subloops(loop);
        // simple iff the only normal subloops are {e} and the whole loop
        EXPECT_EQ(is_simple(loop).simple, normals.size() == 2) << name;
    }
}
