#pragma once

#include <stdexcept>
#include <vector>

#include "flatgraph/flat_morphism.hpp"
#include "flatgraph/homology.hpp"

namespace flatgraph {

/// Homology and cohomology bases of both ends of a morphism, plus the Gram
/// matrices of the pairing on each side.
struct MorphismBases {
    H1Basis source_h1;
    H1Basis target_h1;
    H1CohomClasses source_cohom;
    H1CohomClasses target_cohom;
    Matrix source_gram;
    Matrix target_gram;

    explicit MorphismBases(const FiniteFlatMorphism& f)
        : source_h1(h1_basis(*f.source)),
          target_h1(h1_basis(*f.target)),
          source_cohom(h1_cohom_classes(*f.source)),
          target_cohom(h1_cohom_classes(*f.target)),
          source_gram(gram_matrix(source_h1, source_cohom)),
          target_gram(gram_matrix(target_h1, target_cohom)) {}
};

namespace detail {
inline Vector coordinates_or_throw(const H1Basis& basis, const Chain1& z) {
    auto x = basis.coordinates(z);
    if (!x) throw std::logic_error("transfer: image chain is not a cycle");
    return *x;
}

inline Matrix inverse_or_throw(const Matrix& m) {
    auto inv = inverse(m);
    if (!inv) throw std::logic_error("transfer: Gram matrix is singular");
    return *inv;
}
} // namespace detail

/// phi_* : H_1(source) -> H_1(target).
inline Matrix pushforward_h1(const FiniteFlatMorphism& f, const MorphismBases& b) {
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < b.source_h1.dimension(); ++j)
        cols.push_back(detail::coordinates_or_throw(b.target_h1, pushforward_chain(f, b.source_h1.chain(j))));
    return Matrix::from_columns(b.target_h1.dimension(), cols);
}

/// phi^* : H_1(target) -> H_1(source).
inline Matrix pullback_h1(const FiniteFlatMorphism& f, const MorphismBases& b) {
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < b.target_h1.dimension(); ++j)
        cols.push_back(detail::coordinates_or_throw(b.source_h1, pullback_chain(f, b.target_h1.chain(j))));
    return Matrix::from_columns(b.source_h1.dimension(), cols);
}

// On H^1 the classes are coordinates against the cohomology representatives.
// A class y pairs with the homology basis as gram * y, so the dual of a map A
// on H_1 is gram_dst^-1 * A^T * gram_src.

/// phi_* : H^1(source) -> H^1(target), dual of phi^* on H_1.
inline Matrix pushforward_h1cohom(const FiniteFlatMorphism& f, const MorphismBases& b) {
    return detail::inverse_or_throw(b.target_gram) * pullback_h1(f, b).transpose() * b.source_gram;
}

/// phi^* : H^1(target) -> H^1(source), dual of phi_* on H_1.
inline Matrix pullback_h1cohom(const FiniteFlatMorphism& f, const MorphismBases& b) {
    return detail::inverse_or_throw(b.source_gram) * pushforward_h1(f, b).transpose() * b.target_gram;
}

/// All four transfer matrices of a validated morphism.
struct TransferMaps {
    Matrix push_h1;
    Matrix pull_h1;
    Matrix push_cohom;
    Matrix pull_cohom;
};

inline TransferMaps transfer_maps(const FiniteFlatMorphism& f, const MorphismBases& b) {
    require_valid(f);
    TransferMaps t{pushforward_h1(f, b), pullback_h1(f, b), {}, {}};
    t.push_cohom = detail::inverse_or_throw(b.target_gram) * t.pull_h1.transpose() * b.source_gram;
    t.pull_cohom = detail::inverse_or_throw(b.source_gram) * t.push_h1.transpose() * b.target_gram;
    return t;
}

inline Matrix pushforward_h1(const FiniteFlatMorphism& f) {
    require_valid(f);
    return pushforward_h1(f, MorphismBases(f));
}
inline Matrix pullback_h1(const FiniteFlatMorphism& f) {
    require_valid(f);
    return pullback_h1(f, MorphismBases(f));
}
inline Matrix pushforward_h1cohom(const FiniteFlatMorphism& f) {
    require_valid(f);
    return pushforward_h1cohom(f, MorphismBases(f));
}
inline Matrix pullback_h1cohom(const FiniteFlatMorphism& f) {
    require_valid(f);
    return pullback_h1cohom(f, MorphismBases(f));
}

} // namespace flatgraph
