#pragma once

// Shared fixtures, generators and independent oracles for the test suites.
// Nothing here calls into the elimination code it is used to check.

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "flatgraph/flatgraph.hpp"

namespace flatgraph::fixtures {

using EdgeSpec = std::tuple<std::string, std::string, std::string>;  // id, src, dst

inline std::shared_ptr<Graph> make_graph(const std::vector<std::string>& vertices, const std::vector<EdgeSpec>& edges) {
    auto g = std::make_shared<Graph>();
    for (const auto& v : vertices) g->add_vertex(v);
    for (const auto& [id, s, t] : edges) g->add_edge(id, *g->find_vertex(s), *g->find_vertex(t));
    return g;
}

inline std::shared_ptr<Graph> loop_graph() { return make_graph({"v"}, {{"a", "v", "v"}}); }

inline std::shared_ptr<Graph> theta_graph() {
    return make_graph({"p", "q"}, {{"x", "p", "q"}, {"y", "p", "q"}, {"z", "p", "q"}});
}

/// Directed m-gon: vertices w0..w(m-1), edge ei: wi -> w(i+1 mod m). m = 1 is a loop.
inline std::shared_ptr<Graph> polygon(std::size_t m, const std::string& prefix = "") {
    auto g = std::make_shared<Graph>();
    for (std::size_t i = 0; i < m; ++i) g->add_vertex(prefix + "w" + std::to_string(i));
    for (std::size_t i = 0; i < m; ++i) g->add_edge(prefix + "e" + std::to_string(i), VertexId(i), VertexId((i + 1) % m));
    return g;
}

inline Cycle polygon_cycle(std::size_t m) {
    Cycle c;
    for (std::size_t i = 0; i < m; ++i) c.darts.push_back(Graph::dart(EdgeId(i)));
    return c;
}

inline FiniteFlatMorphism identity_morphism(std::shared_ptr<const Graph> g) {
    std::vector<VertexId> vmap;
    std::vector<EdgeImage> emap;
    for (std::size_t v = 0; v < g->vertex_count(); ++v) vmap.push_back(VertexId(v));
    for (std::size_t e = 0; e < g->edge_count(); ++e) emap.push_back({EdgeId(e), false});
    return make_morphism(g, g, vmap, emap, std::vector<std::uint64_t>(g->vertex_count(), 1),
                         std::vector<std::uint64_t>(g->edge_count(), 1), 1);
}

/// Connected (m*k)-gon wrapping k times around an m-gon, degree k.
inline FiniteFlatMorphism cyclic_cover(std::size_t m, std::size_t k) {
    auto src = polygon(m * k, "u");
    auto tgt = polygon(m);
    std::vector<VertexId> vmap;
    std::vector<EdgeImage> emap;
    for (std::size_t i = 0; i < m * k; ++i) {
        vmap.push_back(VertexId(i % m));
        emap.push_back({EdgeId(i % m), false});
    }
    return make_morphism(src, tgt, vmap, emap, std::vector<std::uint64_t>(m * k, 1),
                         std::vector<std::uint64_t>(m * k, 1), k);
}

/// k disjoint copies of `base` mapping sheetwise, degree k.
inline FiniteFlatMorphism disjoint_cover(const std::shared_ptr<const Graph>& base, std::size_t k) {
    auto src = std::make_shared<Graph>();
    std::vector<VertexId> vmap;
    std::vector<EdgeImage> emap;
    for (std::size_t s = 0; s < k; ++s) {
        const std::string sheet = "#" + std::to_string(s);
        for (std::size_t v = 0; v < base->vertex_count(); ++v) {
            src->add_vertex(base->vertex_name(VertexId(v)) + sheet);
            vmap.push_back(VertexId(v));
        }
        for (std::size_t e = 0; e < base->edge_count(); ++e) {
            const DartId d = Graph::dart(EdgeId(e));
            src->add_edge(base->edge_name(EdgeId(e)) + sheet, VertexId(s * base->vertex_count() + base->src(d).index()),
                          VertexId(s * base->vertex_count() + base->dst(d).index()));
            emap.push_back({EdgeId(e), false});
        }
    }
    return make_morphism(src, base, vmap, emap, std::vector<std::uint64_t>(src->vertex_count(), 1),
                         std::vector<std::uint64_t>(src->edge_count(), 1), k);
}

/// Target: one loop. Source: one loop with n_e = n_v = a, plus a b-gon with
/// all multiplicities 1. Degree a + b.
inline FiniteFlatMorphism weighted_loop_cover(std::uint64_t a, std::size_t b = 0) {
    auto src = std::make_shared<Graph>();
    src->add_vertex("o");
    src->add_edge("loop", VertexId(0), VertexId(0));
    for (std::size_t i = 0; i < b; ++i) src->add_vertex("r" + std::to_string(i));
    for (std::size_t i = 0; i < b; ++i) src->add_edge("r" + std::to_string(i), VertexId(1 + i), VertexId(1 + (i + 1) % b));
    std::vector<VertexId> vmap(src->vertex_count(), VertexId(0));
    std::vector<EdgeImage> emap(src->edge_count(), EdgeImage{EdgeId(0), false});
    std::vector<std::uint64_t> vmult(src->vertex_count(), 1), emult(src->edge_count(), 1);
    vmult[0] = a;
    emult[0] = a;
    return make_morphism(src, loop_graph(), vmap, emap, vmult, emult, a + b);
}

/// Random k-sheeted unramified cover of `base`: one permutation per edge,
/// (e, i) runs from (src e, i) to (dst e, sigma_e(i)). Flip chosen at random.
inline FiniteFlatMorphism permutation_cover(const std::shared_ptr<const Graph>& base, std::size_t k, std::mt19937_64& rng) {
    auto src = std::make_shared<Graph>();
    std::vector<VertexId> vmap;
    for (std::size_t v = 0; v < base->vertex_count(); ++v)
        for (std::size_t i = 0; i < k; ++i) {
            src->add_vertex(base->vertex_name(VertexId(v)) + "." + std::to_string(i));
            vmap.push_back(VertexId(v));
        }
    std::vector<EdgeImage> emap;
    for (std::size_t e = 0; e < base->edge_count(); ++e) {
        std::vector<std::size_t> sigma(k);
        std::iota(sigma.begin(), sigma.end(), 0);
        std::shuffle(sigma.begin(), sigma.end(), rng);
        const bool flip = rng() % 2 == 1;
        const DartId d = Graph::dart(EdgeId(e), !flip);  // the target dart our "+" dart lands on
        for (std::size_t i = 0; i < k; ++i)
            src->add_edge(base->edge_name(EdgeId(e)) + "." + std::to_string(i),
                          VertexId(base->src(d).index() * k + i), VertexId(base->dst(d).index() * k + sigma[i]));
        for (std::size_t i = 0; i < k; ++i) emap.push_back({EdgeId(e), flip});
    }
    return make_morphism(src, base, vmap, emap, std::vector<std::uint64_t>(src->vertex_count(), 1),
                         std::vector<std::uint64_t>(src->edge_count(), 1), k);
}

/// Random multigraph with loops and parallel edges.
inline std::shared_ptr<Graph> random_graph(std::mt19937_64& rng, std::size_t max_vertices = 12, std::size_t max_edges = 24) {
    auto g = std::make_shared<Graph>();
    const std::size_t nv = 1 + rng() % max_vertices;
    const std::size_t ne = rng() % (max_edges + 1);
    for (std::size_t v = 0; v < nv; ++v) g->add_vertex("v" + std::to_string(v));
    for (std::size_t e = 0; e < ne; ++e) {
        std::size_t a = rng() % nv;
        std::size_t b = rng() % nv;
        // Bias towards loops and parallel edges.
        const std::size_t roll = rng() % 10;
        if (roll == 0) b = a;
        if (roll == 1 && e > 0) {
            const DartId prev = Graph::dart(EdgeId(e - 1));
            a = g->src(prev).index();
            b = g->dst(prev).index();
        }
        g->add_edge("e" + std::to_string(e), VertexId(a), VertexId(b));
    }
    return g;
}

/// Connected random graph: a random spanning tree plus random extra edges.
inline std::shared_ptr<Graph> random_connected_graph(std::mt19937_64& rng, std::size_t max_vertices, std::size_t extra_edges) {
    auto g = std::make_shared<Graph>();
    const std::size_t nv = 1 + rng() % max_vertices;
    for (std::size_t v = 0; v < nv; ++v) g->add_vertex("v" + std::to_string(v));
    std::size_t e = 0;
    for (std::size_t v = 1; v < nv; ++v) g->add_edge("e" + std::to_string(e++), VertexId(rng() % v), VertexId(v));
    const std::size_t extra = rng() % (extra_edges + 1);
    for (std::size_t i = 0; i < extra; ++i) g->add_edge("e" + std::to_string(e++), VertexId(rng() % nv), VertexId(rng() % nv));
    return g;
}

// ---- independent oracles ----------------------------------------------------

inline bool is_zero_vector(const Vector& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

/// |E| - |V| + c with components from a union-find over the edge list.
inline std::size_t euler_betti1(const Graph& g) {
    std::vector<std::size_t> parent(g.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t components = g.vertex_count();
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const DartId d = Graph::dart(EdgeId(e));
        const std::size_t a = find(g.src(d).index()), b = find(g.dst(d).index());
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return g.edge_count() + components - g.vertex_count();
}

/// Rank of a small integer matrix by fraction-free (Bareiss) elimination.
inline std::size_t bareiss_rank(std::vector<std::vector<__int128>> a) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::size_t rank = 0;
    __int128 prev = 1;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t k = c + 1; k < cols; ++k) a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            a[r][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

/// Times each source dart is traversed across `lifts`.
inline std::vector<std::uint64_t> traversal_counts(const Graph& g, const std::vector<Cycle>& lifts) {
    std::vector<std::uint64_t> n(g.dart_count(), 0);
    for (const auto& r : lifts)
        for (DartId d : r.darts) ++n[d.index()];
    return n;
}

// ---- covering fixtures ------------------------------------------------------

/// One genus-0 component with a single end.
inline CoveringDescription single_component_covering() { return {{{"Y", 0}}, {}, {{"x", "Y"}}}; }

/// Components of genus 1 and 2 joined by two annuli, one end each.
inline CoveringDescription two_component_covering() {
    return {{{"Y1", 1}, {"Y2", 2}}, {{"A1", "Y1", "Y2"}, {"A2", "Y1", "Y2"}}, {{"x1", "Y1"}, {"x2", "Y2"}}};
}

/// One genus-0 component with a self-annulus and two ends.
inline CoveringDescription self_annulus_covering() { return {{{"Y", 0}}, {{"A", "Y", "Y"}}, {{"x1", "Y"}, {"x2", "Y"}}}; }

/// Degree-2 cyclic covering: two components in a 2-cycle of annuli, one end
/// each, over one component with a self-annulus and one end.
inline CoveringMorphism cyclic_covering_morphism() {
    CoveringMorphism f;
    f.target = {{{"Y", 1}}, {{"A", "Y", "Y"}}, {{"x", "Y"}}};
    f.source = {{{"Y1", 1}, {"Y2", 1}}, {{"A1", "Y1", "Y2"}, {"A2", "Y2", "Y1"}}, {{"x1", "Y1"}, {"x2", "Y2"}}};
    f.component_map = {{"Y1", {"Y", 1}}, {"Y2", {"Y", 1}}};
    f.annulus_map = {{"A1", {"A", 1, false}}, {"A2", {"A", 1, false}}};
    f.end_map = {{"x1", {"x", 1}}, {"x2", {"x", 1}}};
    f.degree = 2;
    return f;
}

inline CoveringMorphism identity_covering_morphism(const CoveringDescription& c) {
    CoveringMorphism f;
    f.source = f.target = c;
    for (const auto& k : c.components) f.component_map[k.id] = {k.id, 1};
    for (const auto& a : c.annuli) f.annulus_map[a.id] = {a.id, 1, false};
    for (const auto& e : c.ends) f.end_map[e.id] = {e.id, 1};
    f.degree = 1;
    return f;
}

/// Random valid covering: connected component graph, at least one end.
inline CoveringDescription random_covering(std::mt19937_64& rng) {
    CoveringDescription c;
    const std::size_t n = 1 + rng() % 6;
    for (std::size_t i = 0; i < n; ++i) c.components.push_back({"Y" + std::to_string(i), static_cast<std::uint32_t>(rng() % 4)});
    std::size_t a = 0;
    for (std::size_t i = 1; i < n; ++i)
        c.annuli.push_back({"A" + std::to_string(a++), "Y" + std::to_string(rng() % i), "Y" + std::to_string(i)});
    const std::size_t extra = rng() % 5;
    for (std::size_t i = 0; i < extra; ++i)
        c.annuli.push_back({"A" + std::to_string(a++), "Y" + std::to_string(rng() % n), "Y" + std::to_string(rng() % n)});
    const std::size_t ends = 1 + rng() % 4;
    for (std::size_t i = 0; i < ends; ++i) c.ends.push_back({"x" + std::to_string(i), "Y" + std::to_string(rng() % n)});
    return c;
}

/// Closed-form count from the covering itself: w0 = #annuli - #components + 1,
/// w2 = #annuli + #ends - #components (Gamma~ adds ends + 1 vertices and
/// 2 * ends edges, still connected).
struct CoveringCounts {
    std::size_t w0, w1, w2;
};
inline CoveringCounts covering_counts(const CoveringDescription& c) {
    std::size_t w1 = 0;
    for (const auto& k : c.components) w1 += 2 * k.genus;
    return {c.annuli.size() + 1 - c.components.size(), w1, c.annuli.size() + c.ends.size() - c.components.size()};
}

} // namespace flatgraph::fixtures
