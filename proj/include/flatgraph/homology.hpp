#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "flatgraph/graph.hpp"
#include "flatgraph/matrix.hpp"

namespace flatgraph {

/// Choice of one dart per edge; coordinates of E(G) are taken against it.
struct Orientation {
    std::vector<DartId> representative;  // indexed by edge

    /// Smallest dart id per edge, i.e. every "+" dart.
    static Orientation canonical(const Graph& g) {
        Orientation o;
        o.representative.reserve(g.edge_count());
        for (std::size_t e = 0; e < g.edge_count(); ++e) o.representative.push_back(Graph::dart(EdgeId(e)));
        return o;
    }

    bool belongs_to(const Graph& g) const {
        if (representative.size() != g.edge_count()) return false;
        for (std::size_t e = 0; e < representative.size(); ++e)
            if (!g.contains(representative[e]) || Graph::edge_of(representative[e]).index() != e) return false;
        return true;
    }
};

namespace detail {
inline void require_orientation(const Graph& g, const Orientation& o) {
    if (!o.belongs_to(g)) throw std::invalid_argument("orientation does not belong to graph");
}
} // namespace detail

/// d : E -> V, e |-> dst(e) - src(e). |V| x |E|, loops give zero columns.
inline Matrix boundary_matrix(const Graph& g, const Orientation& o) {
    detail::require_orientation(g, o);
    Matrix d(g.vertex_count(), g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const DartId r = o.representative[e];
        d(g.dst(r).index(), e) += 1;
        d(g.src(r).index(), e) -= 1;
    }
    return d;
}
inline Matrix boundary_matrix(const Graph& g) { return boundary_matrix(g, Orientation::canonical(g)); }

/// delta : V -> E, v |-> sum of darts ending at v. |E| x |V|.
/// Built by walking darts, independently of boundary_matrix.
inline Matrix coboundary_matrix(const Graph& g, const Orientation& o) {
    detail::require_orientation(g, o);
    Matrix delta(g.edge_count(), g.vertex_count());
    for (std::size_t i = 0; i < g.dart_count(); ++i) {
        const DartId d(i);
        const EdgeId e = Graph::edge_of(d);
        const Rational sign = d == o.representative[e.index()] ? 1 : -1;
        delta(e.index(), g.dst(d).index()) += sign;
    }
    return delta;
}
inline Matrix coboundary_matrix(const Graph& g) { return coboundary_matrix(g, Orientation::canonical(g)); }

/// |E| - |V| + number of connected components.
inline std::size_t betti1(const Graph& g) {
    return g.edge_count() + connected_components(g).count - g.vertex_count();
}

/// Sum over edges of x(r) y(r) at the representative dart r.
inline Rational pairing(const Chain1& x, const Chain1& y) {
    x.require_same(y);
    Rational sum = 0;
    const auto& a = x.edge_coefficients();
    const auto& b = y.edge_coefficients();
    for (std::size_t e = 0; e < a.size(); ++e) sum += a[e] * b[e];
    return sum;
}

/// Basis of H_1 = Ker(d); columns are cycles in canonical edge coordinates.
struct H1Basis {
    const Graph* graph = nullptr;
    Orientation orientation;
    Matrix basis;

    std::size_t dimension() const { return basis.cols(); }
    Chain1 chain(std::size_t j) const { return Chain1(*graph, basis.column(j)); }

    /// Coordinates of a chain lying in Ker(d); nullopt if it is not a cycle.
    std::optional<Vector> coordinates(const Chain1& z) const {
        if (&z.graph() != graph) throw std::invalid_argument("H1Basis: chain from another graph");
        return solve(basis, z.edge_coefficients());
    }
};

inline H1Basis h1_basis(const Graph& g) {
    H1Basis h{&g, Orientation::canonical(g), {}};
    h.basis = kernel_basis(boundary_matrix(g, h.orientation));
    return h;
}

/// Representatives of a basis of H^1 = Coker(delta): the standard basis
/// vectors that extend Im(delta) to all of E, taken greedily in edge order.
struct H1CohomClasses {
    const Graph* graph = nullptr;
    Orientation orientation;
    Matrix representatives;

    std::size_t dimension() const { return representatives.cols(); }
    Chain1 chain(std::size_t j) const { return Chain1(*graph, representatives.column(j)); }
};

inline H1CohomClasses h1_cohom_classes(const Graph& g) {
    H1CohomClasses h{&g, Orientation::canonical(g), {}};
    const Matrix delta = coboundary_matrix(g, h.orientation);
    const std::size_t ne = g.edge_count();
    const std::size_t nv = g.vertex_count();
    Matrix extended(ne, nv + ne);
    for (std::size_t r = 0; r < ne; ++r) {
        for (std::size_t c = 0; c < nv; ++c) extended(r, c) = delta(r, c);
        extended(r, nv + r) = 1;
    }
    std::vector<Vector> classes;
    for (std::size_t pivot : row_reduce(std::move(extended)).pivot_columns) {
        if (pivot < nv) continue;
        Vector v(ne);
        v[pivot - nv] = 1;
        classes.push_back(std::move(v));
    }
    h.representatives = Matrix::from_columns(ne, classes);
    return h;
}

/// gram(i, j) = <z_i, c_j> for homology basis z and cohomology representatives c.
inline Matrix gram_matrix(const H1Basis& z, const H1CohomClasses& c) {
    if (z.graph != c.graph) throw std::invalid_argument("gram_matrix: bases on different graphs");
    return z.basis.transpose() * c.representatives;
}

} // namespace flatgraph
