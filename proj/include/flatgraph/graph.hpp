#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "flatgraph/rational.hpp"

namespace flatgraph {

template <class Tag>
struct Id {
    std::uint32_t value = 0;

    constexpr Id() = default;
    constexpr explicit Id(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}
    constexpr std::size_t index() const { return value; }
    friend constexpr auto operator<=>(Id, Id) = default;
};

using VertexId = Id<struct VertexTag>;
using EdgeId = Id<struct EdgeTag>;
using DartId = Id<struct DartTag>;

/// Finite graph stored as darts (ordered edges). Edge k owns darts 2k ("+",
/// src -> dst as declared) and 2k+1 ("-", reversed); twin flips the low bit,
/// so the involution is fixed-point free by construction. Loops and parallel
/// edges are allowed.
class Graph {
public:
    VertexId add_vertex(std::string name) {
        if (vertex_index_.contains(name)) throw std::invalid_argument("Graph: duplicate vertex id '" + name + "'");
        VertexId v(vertex_names_.size());
        vertex_index_.emplace(name, v);
        vertex_names_.push_back(std::move(name));
        out_.emplace_back();
        return v;
    }

    EdgeId add_edge(std::string name, VertexId src, VertexId dst) {
        if (edge_index_.contains(name)) throw std::invalid_argument("Graph: duplicate edge id '" + name + "'");
        check(src);
        check(dst);
        EdgeId e(edge_names_.size());
        edge_index_.emplace(name, e);
        edge_names_.push_back(std::move(name));
        dart_src_.push_back(src);
        dart_src_.push_back(dst);
        out_[src.index()].push_back(DartId(2 * e.index()));
        out_[dst.index()].push_back(DartId(2 * e.index() + 1));
        return e;
    }

    std::size_t vertex_count() const { return vertex_names_.size(); }
    std::size_t edge_count() const { return edge_names_.size(); }
    std::size_t dart_count() const { return dart_src_.size(); }

    VertexId src(DartId d) const { return dart_src_.at(d.index()); }
    VertexId dst(DartId d) const { return src(twin(d)); }
    static DartId twin(DartId d) { return DartId(d.index() ^ 1U); }
    static EdgeId edge_of(DartId d) { return EdgeId(d.index() / 2); }
    /// The "+" dart of an edge, i.e. the canonical representative.
    static DartId dart(EdgeId e, bool forward = true) { return DartId(2 * e.index() + (forward ? 0 : 1)); }
    static bool is_forward(DartId d) { return d.index() % 2 == 0; }
    bool is_loop(EdgeId e) const { return src(dart(e)) == dst(dart(e)); }

    /// Darts leaving v, increasing id.
    const std::vector<DartId>& out_darts(VertexId v) const { return out_.at(v.index()); }

    const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v.index()); }
    const std::string& edge_name(EdgeId e) const { return edge_names_.at(e.index()); }
    std::string dart_name(DartId d) const { return edge_name(edge_of(d)) + (is_forward(d) ? "+" : "-"); }

    std::optional<VertexId> find_vertex(const std::string& name) const {
        auto it = vertex_index_.find(name);
        return it == vertex_index_.end() ? std::nullopt : std::optional(it->second);
    }
    std::optional<EdgeId> find_edge(const std::string& name) const {
        auto it = edge_index_.find(name);
        return it == edge_index_.end() ? std::nullopt : std::optional(it->second);
    }
    std::optional<DartId> find_dart(const std::string& name) const {
        if (name.empty()) return std::nullopt;
        const char sign = name.back();
        if (sign != '+' && sign != '-') return std::nullopt;
        auto e = find_edge(name.substr(0, name.size() - 1));
        if (!e) return std::nullopt;
        return dart(*e, sign == '+');
    }

    bool contains(VertexId v) const { return v.index() < vertex_count(); }
    bool contains(DartId d) const { return d.index() < dart_count(); }

private:
    void check(VertexId v) const {
        if (!contains(v)) throw std::out_of_range("Graph: unknown vertex");
    }

    std::vector<std::string> vertex_names_;
    std::vector<std::string> edge_names_;
    std::vector<VertexId> dart_src_;
    std::vector<std::vector<DartId>> out_;
    std::unordered_map<std::string, VertexId> vertex_index_;
    std::unordered_map<std::string, EdgeId> edge_index_;
};

/// Component label per vertex (labels 0..count-1 in order of first vertex).
struct Components {
    std::vector<std::size_t> label;
    std::size_t count = 0;
};

inline Components connected_components(const Graph& g) {
    Components c;
    constexpr auto unset = static_cast<std::size_t>(-1);
    c.label.assign(g.vertex_count(), unset);
    std::vector<VertexId> stack;
    for (std::size_t start = 0; start < g.vertex_count(); ++start) {
        if (c.label[start] != unset) continue;
        c.label[start] = c.count;
        stack.push_back(VertexId(start));
        while (!stack.empty()) {
            const VertexId v = stack.back();
            stack.pop_back();
            for (DartId d : g.out_darts(v)) {
                const VertexId w = g.dst(d);
                if (c.label[w.index()] == unset) {
                    c.label[w.index()] = c.count;
                    stack.push_back(w);
                }
            }
        }
        ++c.count;
    }
    return c;
}

/// Element of V(G): one coefficient per vertex.
class Chain0 {
public:
    explicit Chain0(const Graph& g) : graph_(&g), coeffs_(g.vertex_count()) {}

    const Graph& graph() const { return *graph_; }
    const Rational& operator[](VertexId v) const { return coeffs_.at(v.index()); }
    Rational& operator[](VertexId v) { return coeffs_.at(v.index()); }
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    friend bool operator==(const Chain0& a, const Chain0& b) { return a.graph_ == b.graph_ && a.coeffs_ == b.coeffs_; }

private:
    const Graph* graph_;
    std::vector<Rational> coeffs_;
};

/// Element of E(G) = span of darts modulo e = -twin(e). Stored as one
/// coefficient per edge against its "+" dart, so antisymmetry holds for every
/// value of this type. Holds a non-owning reference to its graph.
class Chain1 {
public:
    explicit Chain1(const Graph& g) : graph_(&g), coeffs_(g.edge_count()) {}
    Chain1(const Graph& g, std::vector<Rational> edge_coefficients) : graph_(&g), coeffs_(std::move(edge_coefficients)) {
        if (coeffs_.size() != g.edge_count()) throw std::invalid_argument("Chain1: coefficient count != edge count");
    }

    const Graph& graph() const { return *graph_; }

    Rational coefficient(DartId d) const {
        const Rational& c = coeffs_.at(Graph::edge_of(d).index());
        return Graph::is_forward(d) ? c : -c;
    }
    void add(DartId d, const Rational& amount) {
        Rational& c = coeffs_.at(Graph::edge_of(d).index());
        if (Graph::is_forward(d)) c += amount;
        else c -= amount;
    }

    /// Coefficients against the "+" dart of each edge.
    const std::vector<Rational>& edge_coefficients() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    Chain1& operator+=(const Chain1& o) {
        require_same(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    friend Chain1 operator+(Chain1 a, const Chain1& b) { return a += b; }

    friend bool operator==(const Chain1& a, const Chain1& b) { return a.graph_ == b.graph_ && a.coeffs_ == b.coeffs_; }

    void require_same(const Chain1& o) const {
        if (graph_ != o.graph_) throw std::invalid_argument("Chain1: chains live on different graphs");
    }

private:
    const Graph* graph_;
    std::vector<Rational> coeffs_;
};

/// Closed walk e1 ... em with dst(e_i) = src(e_{i+1}) and dst(em) = src(e1).
struct Cycle {
    std::vector<DartId> darts;

    friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// Empty string when `c` is a valid closed walk in `g`, otherwise the reason.
inline std::string cycle_defect(const Graph& g, const Cycle& c) {
    if (c.darts.empty()) return "cycle is empty";
    for (DartId d : c.darts)
        if (!g.contains(d)) return "cycle uses a dart outside the graph";
    for (std::size_t i = 0; i < c.darts.size(); ++i) {
        const DartId here = c.darts[i];
        const DartId next = c.darts[(i + 1) % c.darts.size()];
        if (g.dst(here) != g.src(next))
            return "walk breaks after dart " + g.dart_name(here) + (i + 1 == c.darts.size() ? " (not closed)" : "");
    }
    return {};
}

inline void require_cycle(const Graph& g, const Cycle& c) {
    if (auto why = cycle_defect(g, c); !why.empty()) throw std::invalid_argument("invalid cycle: " + why);
}

/// +1 per traversed dart, repeats accumulate.
inline Chain1 cycle_to_chain(const Graph& g, const Cycle& c) {
    require_cycle(g, c);
    Chain1 chain(g);
    for (DartId d : c.darts) chain.add(d, 1);
    return chain;
}

/// One cycle per non-tree edge of a BFS spanning forest (roots = lowest vertex
/// of each component, darts scanned in id order). Loops give one-dart cycles.
inline std::vector<Cycle> fundamental_cycles(const Graph& g) {
    constexpr auto none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> parent_dart(g.vertex_count(), none);  // dart entering v from its parent
    std::vector<std::size_t> depth(g.vertex_count(), none);
    std::vector<bool> tree_edge(g.edge_count(), false);
    for (std::size_t root = 0; root < g.vertex_count(); ++root) {
        if (depth[root] != none) continue;
        depth[root] = 0;
        std::vector<VertexId> queue{VertexId(root)};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const VertexId v = queue[head];
            for (DartId d : g.out_darts(v)) {
                const VertexId w = g.dst(d);
                if (depth[w.index()] != none) continue;
                depth[w.index()] = depth[v.index()] + 1;
                parent_dart[w.index()] = d.index();
                tree_edge[Graph::edge_of(d).index()] = true;
                queue.push_back(w);
            }
        }
    }

    // Tree path from a to b as darts: climb both to their common ancestor.
    auto tree_path = [&](VertexId a, VertexId b) {
        std::vector<DartId> up, down;
        while (a != b) {
            if (depth[a.index()] >= depth[b.index()]) {
                const DartId in(parent_dart[a.index()]);
                up.push_back(Graph::twin(in));
                a = g.src(in);
            } else {
                const DartId in(parent_dart[b.index()]);
                down.push_back(in);
                b = g.src(in);
            }
        }
        up.insert(up.end(), down.rbegin(), down.rend());
        return up;
    };

    std::vector<Cycle> cycles;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (tree_edge[e]) continue;
        const DartId d = Graph::dart(EdgeId(e));
        Cycle c{{d}};
        auto back = tree_path(g.dst(d), g.src(d));
        c.darts.insert(c.darts.end(), back.begin(), back.end());
        cycles.push_back(std::move(c));
    }
    return cycles;
}

} // namespace flatgraph
