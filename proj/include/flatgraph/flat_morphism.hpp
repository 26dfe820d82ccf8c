#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatgraph/graph.hpp"

namespace flatgraph {

/// Axiom names reported by validate().
namespace axiom {
inline constexpr const char* maps_total = "maps not total";
inline constexpr const char* vertex_surjective = "phi_V not surjective";
inline constexpr const char* dart_surjective = "phi_E not surjective";
inline constexpr const char* source_compatible = "phi_V o s = s o phi_E";
inline constexpr const char* target_compatible = "phi_V o t = t o phi_E";
inline constexpr const char* twin_compatible = "phi_E o twin = twin o phi_E";
inline constexpr const char* positive = "multiplicities positive";
inline constexpr const char* symmetric = "n_e = n_(twin e)";
inline constexpr const char* s_surjective = "s surjective on fibers";
inline constexpr const char* fiber_sum = "fiber sum over e' != n";
inline constexpr const char* local_sum = "local fiber sum != n_v";
inline constexpr const char* t_surjective = "t surjective on fibers";
} // namespace axiom

struct Violation {
    std::string axiom;
    std::string detail;

    std::string message() const { return axiom + ": " + detail; }
};

/// Raised when a mathematical axiom fails; carries every violation found.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<Violation> violations)
        : std::runtime_error(summarize(violations)), violations_(std::move(violations)) {}

    const std::vector<Violation>& violations() const { return violations_; }

private:
    static std::string summarize(const std::vector<Violation>& vs) {
        std::string s;
        for (const auto& v : vs) s += (s.empty() ? "" : "; ") + v.message();
        return s.empty() ? "validation failed" : s;
    }

    std::vector<Violation> violations_;
};

/// Finite flat morphism of degree n between dart graphs. Maps and
/// multiplicities are indexed by source vertex / source dart.
struct FiniteFlatMorphism {
    std::shared_ptr<const Graph> source;
    std::shared_ptr<const Graph> target;
    std::vector<VertexId> vertex_map;
    std::vector<DartId> dart_map;
    std::vector<std::uint64_t> vertex_mult;
    std::vector<std::uint64_t> dart_mult;
    std::uint64_t degree = 0;
};

struct EdgeImage {
    EdgeId to;
    bool flip = false;  // source "+" dart lands on the target "-" dart
};

/// Builds dart-level data from per-edge data; twin compatibility and
/// n_e = n_(twin e) hold by construction.
inline FiniteFlatMorphism make_morphism(std::shared_ptr<const Graph> source, std::shared_ptr<const Graph> target,
                                        std::vector<VertexId> vertex_map, const std::vector<EdgeImage>& edge_map,
                                        std::vector<std::uint64_t> vertex_mult,
                                        const std::vector<std::uint64_t>& edge_mult, std::uint64_t degree) {
    if (edge_map.size() != source->edge_count() || edge_mult.size() != source->edge_count())
        throw std::invalid_argument("make_morphism: edge data size != source edge count");
    FiniteFlatMorphism f{std::move(source), std::move(target), std::move(vertex_map), {}, std::move(vertex_mult), {}, degree};
    for (std::size_t e = 0; e < edge_map.size(); ++e) {
        const DartId plus = Graph::dart(edge_map[e].to, !edge_map[e].flip);
        f.dart_map.push_back(plus);
        f.dart_map.push_back(Graph::twin(plus));
        f.dart_mult.push_back(edge_mult[e]);
        f.dart_mult.push_back(edge_mult[e]);
    }
    return f;
}

inline std::vector<Violation> validate(const FiniteFlatMorphism& f) {
    std::vector<Violation> out;
    auto report = [&](const char* ax, std::string detail) { out.push_back({ax, std::move(detail)}); };

    if (!f.source || !f.target) {
        report(axiom::maps_total, "source or target graph missing");
        return out;
    }
    const Graph& g1 = *f.source;
    const Graph& g2 = *f.target;
    if (f.vertex_map.size() != g1.vertex_count() || f.vertex_mult.size() != g1.vertex_count() ||
        f.dart_map.size() != g1.dart_count() || f.dart_mult.size() != g1.dart_count()) {
        report(axiom::maps_total, "map or multiplicity table size differs from the source graph");
        return out;
    }
    for (std::size_t v = 0; v < g1.vertex_count(); ++v)
        if (!g2.contains(f.vertex_map[v])) report(axiom::maps_total, "vertex " + g1.vertex_name(VertexId(v)) + " maps outside target");
    for (std::size_t d = 0; d < g1.dart_count(); ++d)
        if (!g2.contains(f.dart_map[d])) report(axiom::maps_total, "dart " + g1.dart_name(DartId(d)) + " maps outside target");
    if (!out.empty()) return out;

    if (f.degree == 0) report(axiom::positive, "degree n must be positive");
    for (std::size_t v = 0; v < g1.vertex_count(); ++v)
        if (f.vertex_mult[v] == 0) report(axiom::positive, "n_v = 0 at vertex " + g1.vertex_name(VertexId(v)));
    for (std::size_t d = 0; d < g1.dart_count(); ++d)
        if (f.dart_mult[d] == 0) report(axiom::positive, "n_e = 0 at dart " + g1.dart_name(DartId(d)));

    std::vector<bool> hit_v(g2.vertex_count(), false), hit_d(g2.dart_count(), false);
    for (auto v : f.vertex_map) hit_v[v.index()] = true;
    for (auto d : f.dart_map) hit_d[d.index()] = true;
    for (std::size_t v = 0; v < g2.vertex_count(); ++v)
        if (!hit_v[v]) report(axiom::vertex_surjective, "no vertex over " + g2.vertex_name(VertexId(v)));
    for (std::size_t d = 0; d < g2.dart_count(); ++d)
        if (!hit_d[d]) report(axiom::dart_surjective, "no dart over " + g2.dart_name(DartId(d)));

    for (std::size_t i = 0; i < g1.dart_count(); ++i) {
        const DartId d(i);
        const DartId image = f.dart_map[i];
        if (f.vertex_map[g1.src(d).index()] != g2.src(image))
            report(axiom::source_compatible, "at dart " + g1.dart_name(d));
        if (f.vertex_map[g1.dst(d).index()] != g2.dst(image))
            report(axiom::target_compatible, "at dart " + g1.dart_name(d));
        if (f.dart_map[Graph::twin(d).index()] != Graph::twin(image))
            report(axiom::twin_compatible, "at dart " + g1.dart_name(d));
        if (f.dart_mult[i] != f.dart_mult[Graph::twin(d).index()])
            report(axiom::symmetric, "at edge " + g1.edge_name(Graph::edge_of(d)));
    }

    // Fiber conditions. fiber_at[e'][v] = sum of n_e over e above e' with s(e) = v.
    std::vector<std::map<std::size_t, std::uint64_t>> fiber_at(g2.dart_count());
    std::vector<std::map<std::size_t, std::uint64_t>> fiber_to(g2.dart_count());
    std::vector<std::uint64_t> fiber_total(g2.dart_count(), 0);
    for (std::size_t i = 0; i < g1.dart_count(); ++i) {
        const DartId d(i);
        const std::size_t image = f.dart_map[i].index();
        fiber_at[image][g1.src(d).index()] += f.dart_mult[i];
        fiber_to[image][g1.dst(d).index()] += 1;
        fiber_total[image] += f.dart_mult[i];
    }
    std::vector<std::vector<std::size_t>> vertex_fiber(g2.vertex_count());
    for (std::size_t v = 0; v < g1.vertex_count(); ++v) vertex_fiber[f.vertex_map[v].index()].push_back(v);

    const bool primary_ok = out.empty();
    for (std::size_t j = 0; j < g2.dart_count(); ++j) {
        const DartId target_dart(j);
        const std::string where = g2.dart_name(target_dart);
        if (fiber_total[j] != f.degree && hit_d[j])
            report(axiom::fiber_sum, "over " + where + ": " + std::to_string(fiber_total[j]) + " != " + std::to_string(f.degree));
        for (std::size_t v : vertex_fiber[g2.src(target_dart).index()]) {
            auto it = fiber_at[j].find(v);
            if (it == fiber_at[j].end()) {
                report(axiom::s_surjective, "vertex " + g1.vertex_name(VertexId(v)) + " has no dart over " + where);
                continue;
            }
            if (it->second != f.vertex_mult[v])
                report(axiom::local_sum, "at vertex " + g1.vertex_name(VertexId(v)) + " over " + where + ": " +
                                             std::to_string(it->second) + " != " + std::to_string(f.vertex_mult[v]));
        }
    }
    // Derived from s-surjectivity for twin(e') plus twin compatibility; only
    // checked once the primary axioms hold so it never hides the root cause.
    if (primary_ok && out.empty()) {
        for (std::size_t j = 0; j < g2.dart_count(); ++j)
            for (std::size_t v : vertex_fiber[g2.dst(DartId(j)).index()])
                if (!fiber_to[j].contains(v))
                    report(axiom::t_surjective, "vertex " + g1.vertex_name(VertexId(v)) + " is not the end of a dart over " +
                                                    g2.dart_name(DartId(j)));
    }
    return out;
}

inline void require_valid(const FiniteFlatMorphism& f) {
    if (auto v = validate(f); !v.empty()) throw ValidationError(std::move(v));
}

/// Termwise image phi_E(e1) ... phi_E(em).
inline Cycle image_cycle(const FiniteFlatMorphism& f, const Cycle& r) {
    require_cycle(*f.source, r);
    Cycle out;
    out.darts.reserve(r.darts.size());
    for (DartId d : r.darts) out.darts.push_back(f.dart_map.at(d.index()));
    return out;
}

/// Number of times r's image wraps r' as a closed walk (any rotation).
inline std::optional<std::size_t> wrap_count(const Cycle& image, const Cycle& base) {
    const std::size_t m = base.darts.size();
    if (m == 0 || image.darts.empty() || image.darts.size() % m != 0) return std::nullopt;
    for (std::size_t shift = 0; shift < m; ++shift) {
        bool match = true;
        for (std::size_t i = 0; i < image.darts.size() && match; ++i)
            match = image.darts[i] == base.darts[(i + shift) % m];
        if (match) return image.darts.size() / m;
    }
    return std::nullopt;
}

/// deg(R/R'): the image of r is r' traversed this many times.
inline std::size_t degree_over(const FiniteFlatMorphism& f, const Cycle& r, const Cycle& base) {
    require_cycle(*f.target, base);
    const auto k = wrap_count(image_cycle(f, r), base);
    if (!k) throw std::invalid_argument("degree_over: image is not a power of the base cycle");
    return *k;
}

/// Chain-level pushforward: each dart goes to its image, no weights.
inline Chain1 pushforward_chain(const FiniteFlatMorphism& f, const Chain1& z) {
    if (&z.graph() != f.source.get()) throw std::invalid_argument("pushforward_chain: chain not on the source graph");
    Chain1 out(*f.target);
    const auto& c = z.edge_coefficients();
    for (std::size_t e = 0; e < c.size(); ++e)
        if (!c[e].is_zero()) out.add(f.dart_map[Graph::dart(EdgeId(e)).index()], c[e]);
    return out;
}

/// Chain-level pullback: coefficient of source dart e is n_e times the
/// coefficient of phi_E(e). Linear; on a simple cycle r' it is the sum of
/// n_e e over the darts lying above r'.
inline Chain1 pullback_chain(const FiniteFlatMorphism& f, const Chain1& z) {
    if (&z.graph() != f.target.get()) throw std::invalid_argument("pullback_chain: chain not on the target graph");
    std::vector<Rational> coeffs(f.source->edge_count());
    for (std::size_t e = 0; e < coeffs.size(); ++e) {
        const DartId plus = Graph::dart(EdgeId(e));
        coeffs[e] = Rational(static_cast<std::int64_t>(f.dart_mult[plus.index()])) * z.coefficient(f.dart_map[plus.index()]);
    }
    return Chain1(*f.source, std::move(coeffs));
}

inline Chain1 pullback_chain(const FiniteFlatMorphism& f, const Cycle& base) {
    require_valid(f);
    return pullback_chain(f, cycle_to_chain(*f.target, base));
}

} // namespace flatgraph
