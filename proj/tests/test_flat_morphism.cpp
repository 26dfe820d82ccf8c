#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "flatgraph/transfer.hpp"
#include "support.hpp"

using namespace flatgraph;
using namespace flatgraph::fixtures;

namespace {

bool has_axiom(const std::vector<Violation>& vs, const std::string& axiom) {
    return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.axiom == axiom; });
}

// Cochain maps computed straight from the dart data, bypassing the H_1
// matrices. pull: c |-> (e |-> c(phi_E e)); push: c |-> (e' |-> sum n_e c(e)).
Matrix cochain_pull(const FiniteFlatMorphism& f, const Matrix& target_cochains) {
    Matrix out(f.source->edge_count(), target_cochains.cols());
    for (std::size_t j = 0; j < target_cochains.cols(); ++j) {
        const Chain1 c(*f.target, target_cochains.column(j));
        for (std::size_t e = 0; e < f.source->edge_count(); ++e)
            out(e, j) = c.coefficient(f.dart_map[Graph::dart(EdgeId(e)).index()]);
    }
    return out;
}

Matrix cochain_push(const FiniteFlatMorphism& f, const Matrix& source_cochains) {
    Matrix out(f.target->edge_count(), source_cochains.cols());
    for (std::size_t j = 0; j < source_cochains.cols(); ++j) {
        const Chain1 c(*f.source, source_cochains.column(j));
        Chain1 pushed(*f.target);
        for (std::size_t i = 0; i < f.source->dart_count(); ++i) {
            const DartId d(i);
            if (!Graph::is_forward(f.dart_map[i])) continue;  // count each target edge once, via its "+" dart
            pushed.add(f.dart_map[i], Rational(static_cast<std::int64_t>(f.dart_mult[i])) * c.coefficient(d));
        }
        for (std::size_t e = 0; e < f.target->edge_count(); ++e) out(e, j) = pushed.edge_coefficients()[e];
    }
    return out;
}

} // namespace

TEST(Validate, IdentityIsFlat) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 10; ++t) EXPECT_TRUE(validate(identity_morphism(random_graph(rng))).empty());
}

TEST(Validate, TwoGonOverLoop) {
    FiniteFlatMorphism f = cyclic_cover(1, 2);
    EXPECT_TRUE(validate(f).empty());
    f.dart_mult[0] = f.dart_mult[1] = 2;  // 1 + 2 != 2 over the loop
    const auto v = validate(f);
    EXPECT_TRUE(has_axiom(v, axiom::fiber_sum));
    EXPECT_TRUE(has_axiom(v, axiom::local_sum));
}

TEST(Validate, NamesEachAxiom) {
    const FiniteFlatMorphism good = cyclic_cover(3, 2);
    ASSERT_TRUE(validate(good).empty());

    FiniteFlatMorphism f = good;
    f.dart_map[1] = Graph::dart(EdgeId(1), false);  // twin of u.e0 now lands off e0
    EXPECT_TRUE(has_axiom(validate(f), axiom::twin_compatible));

    f = good;
    f.vertex_map[0] = VertexId(1);
    EXPECT_TRUE(has_axiom(validate(f), axiom::source_compatible));

    f = good;
    f.dart_mult[0] = 3;
    EXPECT_TRUE(has_axiom(validate(f), axiom::symmetric));

    f = good;
    f.vertex_mult[2] = 0;
    EXPECT_TRUE(has_axiom(validate(f), axiom::positive));

    f = good;
    f.vertex_mult.pop_back();
    EXPECT_TRUE(has_axiom(validate(f), axiom::maps_total));

    f = good;
    f.degree = 3;
    EXPECT_TRUE(has_axiom(validate(f), axiom::fiber_sum));
}

TEST(Validate, SurjectivityAxioms) {
    // Only part of a 2-sheet cover: the second sheet is missing.
    auto base = theta_graph();
    FiniteFlatMorphism f = identity_morphism(base);
    auto bigger = make_graph({"p", "q", "r"}, {{"x", "p", "q"}, {"y", "p", "q"}, {"z", "p", "q"}});
    f.target = bigger;
    EXPECT_TRUE(has_axiom(validate(f), axiom::vertex_surjective));

    // Vertex q sits over w but has no dart over the loop: s not surjective on the fiber.
    auto src = make_graph({"p", "q"}, {{"l", "p", "p"}});
    FiniteFlatMorphism g = make_morphism(src, loop_graph(), {VertexId(0), VertexId(0)}, {{EdgeId(0), false}}, {2, 1}, {2}, 2);
    EXPECT_TRUE(has_axiom(validate(g), axiom::s_surjective));

    // Dart over a target dart missing entirely.
    auto two_loops = make_graph({"v"}, {{"a", "v", "v"}, {"b", "v", "v"}});
    FiniteFlatMorphism h = make_morphism(loop_graph(), two_loops, {VertexId(0)}, {{EdgeId(0), false}}, {1}, {1}, 1);
    EXPECT_TRUE(has_axiom(validate(h), axiom::dart_surjective));
}

TEST(ImageCycle, Examples) {
    const auto id = identity_morphism(theta_graph());
    const Cycle r{{Graph::dart(EdgeId(0)), Graph::dart(EdgeId(1), false)}};
    EXPECT_EQ(image_cycle(id, r), r);

    const auto two_gon = cyclic_cover(1, 2);
    const DartId loop = Graph::dart(EdgeId(0));
    EXPECT_EQ(image_cycle(two_gon, polygon_cycle(2)), (Cycle{{loop, loop}}));

    const auto sheets = disjoint_cover(loop_graph(), 2);
    EXPECT_EQ(image_cycle(sheets, Cycle{{Graph::dart(EdgeId(1))}}), Cycle{{loop}});

    EXPECT_THROW(image_cycle(two_gon, Cycle{{Graph::dart(EdgeId(0))}}), std::invalid_argument);
}

TEST(DegreeOver, Examples) {
    const auto id = identity_morphism(polygon(4));
    EXPECT_EQ(degree_over(id, polygon_cycle(4), polygon_cycle(4)), 1u);
    EXPECT_EQ(degree_over(cyclic_cover(1, 2), polygon_cycle(2), polygon_cycle(1)), 2u);
    const auto six_over_three = cyclic_cover(3, 2);
    EXPECT_EQ(degree_over(six_over_three, polygon_cycle(6), polygon_cycle(3)), 2u);

    // Starting the lift elsewhere only rotates the image.
    Cycle rotated = polygon_cycle(6);
    std::rotate(rotated.darts.begin(), rotated.darts.begin() + 2, rotated.darts.end());
    EXPECT_EQ(degree_over(six_over_three, rotated, polygon_cycle(3)), 2u);

    const auto theta = identity_morphism(theta_graph());
    const Cycle xy{{Graph::dart(EdgeId(0)), Graph::dart(EdgeId(1), false)}};
    const Cycle xz{{Graph::dart(EdgeId(0)), Graph::dart(EdgeId(2), false)}};
    EXPECT_THROW(degree_over(theta, xy, xz), std::invalid_argument);
}

TEST(PullbackChain, Examples) {
    const auto id = identity_morphism(theta_graph());
    const Cycle xy{{Graph::dart(EdgeId(0)), Graph::dart(EdgeId(1), false)}};
    EXPECT_EQ(pullback_chain(id, xy), cycle_to_chain(*id.source, xy));

    const auto two_gon = cyclic_cover(1, 2);
    EXPECT_EQ(pullback_chain(two_gon, polygon_cycle(1)).edge_coefficients(), (Vector{Rational(1), Rational(1)}));

    const auto squaring = weighted_loop_cover(2);
    EXPECT_EQ(pullback_chain(squaring, polygon_cycle(1)).edge_coefficients(), Vector{Rational(2)});

    FiniteFlatMorphism broken = two_gon;
    broken.degree = 5;
    EXPECT_THROW(pullback_chain(broken, polygon_cycle(1)), ValidationError);
}

TEST(Transfer, Identity) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
        const auto f = identity_morphism(random_graph(rng, 8, 14));
        const std::size_t b = betti1(*f.source);
        EXPECT_EQ(pushforward_h1(f), Matrix::identity(b));
        EXPECT_EQ(pullback_h1(f), Matrix::identity(b));
        EXPECT_EQ(pushforward_h1cohom(f), Matrix::identity(b));
        EXPECT_EQ(pullback_h1cohom(f), Matrix::identity(b));
    }
}

TEST(Transfer, TwoGonOverLoop) {
    const auto f = cyclic_cover(1, 2);
    EXPECT_EQ(pushforward_h1(f), Matrix{{2}});
    EXPECT_EQ(pullback_h1(f), Matrix{{1}});
    EXPECT_EQ(pushforward_h1cohom(f), Matrix{{1}});
    EXPECT_EQ(pullback_h1cohom(f), Matrix{{2}});
}

TEST(Transfer, DisjointTwoLoopCover) {
    const auto f = disjoint_cover(loop_graph(), 2);
    EXPECT_EQ(pushforward_h1(f), (Matrix{{1, 1}}));
    EXPECT_EQ(pullback_h1(f), (Matrix{{1}, {1}}));
}

TEST(Transfer, RejectsInvalidMorphism) {
    FiniteFlatMorphism f = cyclic_cover(2, 2);
    f.degree = 1;
    EXPECT_THROW(pushforward_h1(f), ValidationError);
    EXPECT_THROW(pullback_h1cohom(f), ValidationError);
}

TEST(TransferProperties, RandomPermutationCovers) {
    std::mt19937_64 rng(31337);
    for (int t = 0; t < 40; ++t) {
        auto base = random_connected_graph(rng, 5, 5);
        const std::size_t k = 1 + rng() % 4;
        const auto f = permutation_cover(base, k, rng);
        ASSERT_TRUE(validate(f).empty());
        const MorphismBases b(f);
        const TransferMaps m = transfer_maps(f, b);
        const Rational n(static_cast<std::int64_t>(k));

        EXPECT_EQ(m.push_h1 * m.pull_h1, n * Matrix::identity(b.target_h1.dimension()));
        EXPECT_EQ(m.push_cohom * m.pull_cohom, n * Matrix::identity(b.target_h1.dimension()));

        // <phi_* x, xi> = <x, phi^* xi>, with phi^* xi computed on cochains.
        const Matrix pulled_pairings = b.source_h1.basis.transpose() * cochain_pull(f, b.target_cohom.representatives);
        EXPECT_EQ(m.push_h1.transpose() * b.target_gram, pulled_pairings);
        EXPECT_EQ(b.source_gram * m.pull_cohom, pulled_pairings);

        // <phi^* z, c> = <z, phi_* c>, with phi_* c computed on cochains.
        const Matrix pushed_pairings = b.target_h1.basis.transpose() * cochain_push(f, b.source_cohom.representatives);
        EXPECT_EQ(m.pull_h1.transpose() * b.source_gram, pushed_pairings);
        EXPECT_EQ(b.target_gram * m.push_cohom, pushed_pairings);
    }
}
