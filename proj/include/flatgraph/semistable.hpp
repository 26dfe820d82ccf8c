#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "flatgraph/flat_morphism.hpp"
#include "flatgraph/homology.hpp"
#include "flatgraph/transfer.hpp"

namespace flatgraph {

// Combinatorial data of a semi-stable covering of a connected wide open
// curve, over the algebraic closure of the residue field: one component per
// basic wide open pair (with the genus of its normalized compactified
// reduction), one annulus per connected component of a pairwise
// intersection, and one end per boundary annulus towards the outside.

struct Component {
    std::string id;
    std::uint32_t genus = 0;
};

struct Annulus {
    std::string id;
    std::string a;  // component ids; a == b is a self-annulus (double point)
    std::string b;
};

struct End {
    std::string id;
    std::string component;
};

struct CoveringDescription {
    std::vector<Component> components;
    std::vector<Annulus> annuli;
    std::vector<End> ends;
};

namespace axiom {
inline constexpr const char* covering_ids = "covering ids not unique";
inline constexpr const char* covering_refs = "covering references unknown component";
inline constexpr const char* covering_empty = "covering has no components";
inline constexpr const char* covering_connected = "covering not connected";
inline constexpr const char* covering_ends = "covering has no ends";
inline constexpr const char* map_total = "covering map not total";
inline constexpr const char* annulus_incidence = "annulus map does not respect incidence";
inline constexpr const char* end_incidence = "end map does not respect incidence";
} // namespace axiom

/// Problems with a covering; `role` ("source", "target") prefixes the axiom.
inline std::vector<Violation> covering_defects(const CoveringDescription& c, const std::string& role = {}) {
    std::vector<Violation> out;
    auto report = [&](const char* ax, std::string detail) {
        out.push_back({role.empty() ? std::string(ax) : role + " " + ax, std::move(detail)});
    };

    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < c.components.size(); ++i)
        if (!index.emplace(c.components[i].id, i).second) report(axiom::covering_ids, "component " + c.components[i].id);
    std::set<std::string> seen;
    for (const auto& a : c.annuli)
        if (!seen.insert(a.id).second) report(axiom::covering_ids, "annulus " + a.id);
    seen.clear();
    for (const auto& e : c.ends)
        if (!seen.insert(e.id).second) report(axiom::covering_ids, "end " + e.id);
    for (const auto& a : c.annuli)
        for (const auto* endpoint : {&a.a, &a.b})
            if (!index.contains(*endpoint)) report(axiom::covering_refs, "annulus " + a.id + " -> " + *endpoint);
    for (const auto& e : c.ends)
        if (!index.contains(e.component)) report(axiom::covering_refs, "end " + e.id + " -> " + e.component);
    if (c.components.empty()) report(axiom::covering_empty, "no components");
    if (!out.empty()) return out;

    Graph g;
    for (const auto& comp : c.components) g.add_vertex(comp.id);
    for (const auto& a : c.annuli) g.add_edge(a.id, VertexId(index.at(a.a)), VertexId(index.at(a.b)));
    if (const auto k = connected_components(g).count; k != 1)
        report(axiom::covering_connected, std::to_string(k) + " connected pieces");
    if (c.ends.empty()) report(axiom::covering_ends, "a wide open curve needs at least one end");
    return out;
}

inline void require_valid(const CoveringDescription& c, const std::string& role = {}) {
    if (auto v = covering_defects(c, role); !v.empty()) throw ValidationError(std::move(v));
}

/// Gamma_W (components + annuli) inside Gamma_W' (one extra vertex and edge
/// per end) inside Gamma~_W (plus one star vertex joined to every end vertex).
/// Vertices: "c:<component>", "end:<end>", "star". Edges: "a:<annulus>"
/// (a -> b), "end:<end>" (component -> end vertex), "star:<end>" (end vertex
/// -> star). All three graphs number shared vertices and edges identically.
struct GraphTriple {
    std::shared_ptr<const Graph> gamma;
    std::shared_ptr<const Graph> gamma_prime;
    std::shared_ptr<const Graph> gamma_tilde;

    std::vector<VertexId> component_vertex;  // per component
    std::vector<EdgeId> annulus_edge;        // per annulus
    std::vector<VertexId> end_vertex;        // per end, in gamma_prime / gamma_tilde
    std::vector<EdgeId> end_edge;            // per end, in gamma_prime / gamma_tilde
    std::vector<EdgeId> star_edge;           // per end, in gamma_tilde
    VertexId star;

    // Inclusions gamma -> gamma_prime -> gamma_tilde.
    std::vector<VertexId> gamma_to_prime_vertex;
    std::vector<EdgeId> gamma_to_prime_edge;
    std::vector<VertexId> prime_to_tilde_vertex;
    std::vector<EdgeId> prime_to_tilde_edge;
};

inline GraphTriple build_graphs(const CoveringDescription& c) {
    require_valid(c);
    GraphTriple t;
    auto gamma = std::make_shared<Graph>();
    std::unordered_map<std::string, VertexId> comp;
    for (const auto& k : c.components) {
        comp.emplace(k.id, gamma->add_vertex("c:" + k.id));
        t.component_vertex.push_back(comp.at(k.id));
    }
    for (const auto& a : c.annuli) t.annulus_edge.push_back(gamma->add_edge("a:" + a.id, comp.at(a.a), comp.at(a.b)));

    auto prime = std::make_shared<Graph>(*gamma);
    for (const auto& e : c.ends) {
        t.end_vertex.push_back(prime->add_vertex("end:" + e.id));
        t.end_edge.push_back(prime->add_edge("end:" + e.id, comp.at(e.component), t.end_vertex.back()));
    }

    auto tilde = std::make_shared<Graph>(*prime);
    t.star = tilde->add_vertex("star");
    for (std::size_t i = 0; i < c.ends.size(); ++i)
        t.star_edge.push_back(tilde->add_edge("star:" + c.ends[i].id, t.end_vertex[i], t.star));

    for (std::size_t v = 0; v < gamma->vertex_count(); ++v) t.gamma_to_prime_vertex.push_back(VertexId(v));
    for (std::size_t e = 0; e < gamma->edge_count(); ++e) t.gamma_to_prime_edge.push_back(EdgeId(e));
    for (std::size_t v = 0; v < prime->vertex_count(); ++v) t.prime_to_tilde_vertex.push_back(VertexId(v));
    for (std::size_t e = 0; e < prime->edge_count(); ++e) t.prime_to_tilde_edge.push_back(EdgeId(e));

    t.gamma = std::move(gamma);
    t.gamma_prime = std::move(prime);
    t.gamma_tilde = std::move(tilde);
    return t;
}

/// Dimensions of the weight-graded pieces of H^1 of the wide open curve:
/// weight 0 is H^1(Gamma_W), weight 1 the sum of H^1 of the components
/// (2 * genus each), weight 2 is H_1(Gamma~_W) with a Tate twist (-1).
struct DimensionReport {
    std::size_t h0 = 0;
    std::size_t w0 = 0;
    std::size_t w1 = 0;
    std::size_t w2 = 0;
    std::size_t h1_special = 0;  // H^1 of the special fiber = w0 + w1
    std::size_t h1_total = 0;    // w0 + w1 + w2

    friend bool operator==(const DimensionReport&, const DimensionReport&) = default;
};

inline DimensionReport dimension_report(const CoveringDescription& c) {
    const GraphTriple t = build_graphs(c);
    DimensionReport r;
    r.h0 = connected_components(*t.gamma).count;
    r.w0 = h1_basis(*t.gamma).dimension();
    for (const auto& k : c.components) r.w1 += 2 * static_cast<std::size_t>(k.genus);
    r.w2 = h1_basis(*t.gamma_tilde).dimension();
    r.h1_special = r.w0 + r.w1;
    r.h1_total = r.w0 + r.w1 + r.w2;
    return r;
}

struct ComponentImage {
    std::string to;
    std::uint64_t mult = 1;
};

struct AnnulusImage {
    std::string to;
    std::uint64_t mult = 1;
    bool flip = false;  // a -> b lands on the target annulus read b -> a
};

/// Finite flat morphism of wide open curves compatible with the coverings,
/// recorded as its effect on components, annuli and ends.
struct CoveringMorphism {
    CoveringDescription source;
    CoveringDescription target;
    std::map<std::string, ComponentImage> component_map;
    std::map<std::string, AnnulusImage> annulus_map;
    std::map<std::string, ComponentImage> end_map;
    std::uint64_t degree = 0;
};

/// phi_f on Gamma_W and Gamma_W', and its extension phi~_f to Gamma~_W.
struct InducedMorphisms {
    GraphTriple source;
    GraphTriple target;
    FiniteFlatMorphism on_gamma;
    FiniteFlatMorphism on_prime;
    FiniteFlatMorphism on_tilde;
};

inline InducedMorphisms build_graph_morphism(const CoveringMorphism& f) {
    std::vector<Violation> bad = covering_defects(f.source, "source");
    for (auto& v : covering_defects(f.target, "target")) bad.push_back(std::move(v));
    if (!bad.empty()) throw ValidationError(std::move(bad));

    auto index_of = [](const auto& items) {
        std::unordered_map<std::string, std::size_t> m;
        for (std::size_t i = 0; i < items.size(); ++i) m.emplace(items[i].id, i);
        return m;
    };
    const auto tc = index_of(f.target.components);
    const auto ta = index_of(f.target.annuli);
    const auto te = index_of(f.target.ends);

    std::vector<std::size_t> comp_to(f.source.components.size()), ann_to(f.source.annuli.size()),
        end_to(f.source.ends.size());
    auto lookup = [&](const auto& map, const std::string& id, const auto& target_index, const char* kind) -> std::size_t {
        auto it = map.find(id);
        if (it == map.end()) {
            bad.push_back({axiom::map_total, std::string(kind) + " " + id + " has no image"});
            return 0;
        }
        auto jt = target_index.find(it->second.to);
        if (jt == target_index.end()) {
            bad.push_back({axiom::map_total, std::string(kind) + " " + id + " maps to unknown " + it->second.to});
            return 0;
        }
        return jt->second;
    };
    for (std::size_t i = 0; i < comp_to.size(); ++i)
        comp_to[i] = lookup(f.component_map, f.source.components[i].id, tc, "component");
    for (std::size_t i = 0; i < ann_to.size(); ++i) ann_to[i] = lookup(f.annulus_map, f.source.annuli[i].id, ta, "annulus");
    for (std::size_t i = 0; i < end_to.size(); ++i) end_to[i] = lookup(f.end_map, f.source.ends[i].id, te, "end");
    if (!bad.empty()) throw ValidationError(std::move(bad));

    const auto sc = index_of(f.source.components);
    for (std::size_t i = 0; i < ann_to.size(); ++i) {
        const Annulus& a = f.source.annuli[i];
        const Annulus& b = f.target.annuli[ann_to[i]];
        const bool flip = f.annulus_map.at(a.id).flip;
        const std::size_t ia = comp_to[sc.at(a.a)], ib = comp_to[sc.at(a.b)];
        const std::size_t ja = tc.at(flip ? b.b : b.a), jb = tc.at(flip ? b.a : b.b);
        if (ia != ja || ib != jb) bad.push_back({axiom::annulus_incidence, "annulus " + a.id + " -> " + b.id});
    }
    for (std::size_t i = 0; i < end_to.size(); ++i) {
        const End& e = f.source.ends[i];
        if (comp_to[sc.at(e.component)] != tc.at(f.target.ends[end_to[i]].component))
            bad.push_back({axiom::end_incidence, "end " + e.id + " -> " + f.target.ends[end_to[i]].id});
    }
    if (!bad.empty()) throw ValidationError(std::move(bad));

    InducedMorphisms out{build_graphs(f.source), build_graphs(f.target), {}, {}, {}};
    const GraphTriple& s = out.source;
    const GraphTriple& t = out.target;

    std::vector<VertexId> vmap;
    std::vector<std::uint64_t> vmult;
    std::vector<EdgeImage> emap;
    std::vector<std::uint64_t> emult;
    for (std::size_t i = 0; i < comp_to.size(); ++i) {
        vmap.push_back(t.component_vertex[comp_to[i]]);
        vmult.push_back(f.component_map.at(f.source.components[i].id).mult);
    }
    for (std::size_t i = 0; i < ann_to.size(); ++i) {
        const AnnulusImage& img = f.annulus_map.at(f.source.annuli[i].id);
        emap.push_back({t.annulus_edge[ann_to[i]], img.flip});
        emult.push_back(img.mult);
    }
    out.on_gamma = make_morphism(s.gamma, t.gamma, vmap, emap, vmult, emult, f.degree);

    for (std::size_t i = 0; i < end_to.size(); ++i) {
        const std::uint64_t mult = f.end_map.at(f.source.ends[i].id).mult;
        vmap.push_back(t.end_vertex[end_to[i]]);
        vmult.push_back(mult);
        emap.push_back({t.end_edge[end_to[i]], false});
        emult.push_back(mult);
    }
    out.on_prime = make_morphism(s.gamma_prime, t.gamma_prime, vmap, emap, vmult, emult, f.degree);

    // The star goes to the star with n_star = n; each star edge inherits the
    // multiplicity of its end.
    vmap.push_back(t.star);
    vmult.push_back(f.degree);
    for (std::size_t i = 0; i < end_to.size(); ++i) {
        emap.push_back({t.star_edge[end_to[i]], false});
        emult.push_back(f.end_map.at(f.source.ends[i].id).mult);
    }
    out.on_tilde = make_morphism(s.gamma_tilde, t.gamma_tilde, vmap, emap, vmult, emult, f.degree);

    auto collect = [&](const FiniteFlatMorphism& phi, const std::string& where) {
        for (auto& v : validate(phi)) bad.push_back({v.axiom, where + ": " + v.detail});
    };
    collect(out.on_prime, "Gamma_W'");
    collect(out.on_tilde, "Gamma~_W");
    collect(out.on_gamma, "Gamma_W");
    if (!bad.empty()) throw ValidationError(std::move(bad));
    return out;
}

struct NamedCheck {
    std::string name;
    bool passed = false;
};

/// Graph-level functoriality: weight-0 maps on H^1(Gamma_W) and weight-2
/// maps on H_1(Gamma~_W), both ways, with push o pull = n checked exactly.
struct FunctorialReport {
    std::uint64_t degree = 0;
    DimensionReport source_dims;
    DimensionReport target_dims;
    Matrix weight0_push;  // H^1(Gamma_W1) -> H^1(Gamma_W2)
    Matrix weight0_pull;
    Matrix weight2_push;  // H_1(Gamma~_W1) -> H_1(Gamma~_W2)
    Matrix weight2_pull;
    std::vector<NamedCheck> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

inline FunctorialReport functorial_report(const CoveringMorphism& f) {
    const InducedMorphisms induced = build_graph_morphism(f);
    FunctorialReport r;
    r.degree = f.degree;
    r.source_dims = dimension_report(f.source);
    r.target_dims = dimension_report(f.target);

    const MorphismBases b0(induced.on_gamma);
    const TransferMaps w0 = transfer_maps(induced.on_gamma, b0);
    r.weight0_push = w0.push_cohom;
    r.weight0_pull = w0.pull_cohom;

    const MorphismBases b2(induced.on_tilde);
    const TransferMaps w2 = transfer_maps(induced.on_tilde, b2);
    r.weight2_push = w2.push_h1;
    r.weight2_pull = w2.pull_h1;

    const Rational n(static_cast<std::int64_t>(f.degree));
    r.checks.push_back({"weight-0 push o pull = n", r.weight0_push * r.weight0_pull ==
                                                         n * Matrix::identity(b0.target_h1.dimension())});
    r.checks.push_back({"weight-2 push o pull = n", r.weight2_push * r.weight2_pull ==
                                                         n * Matrix::identity(b2.target_h1.dimension())});
    r.checks.push_back({"weight-0 dimensions", b0.source_h1.dimension() == r.source_dims.w0 &&
                                                   b0.target_h1.dimension() == r.target_dims.w0});
    r.checks.push_back({"weight-2 dimensions", b2.source_h1.dimension() == r.source_dims.w2 &&
                                                   b2.target_h1.dimension() == r.target_dims.w2});
    return r;
}

} // namespace flatgraph
