#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "flatgraph/flat_morphism.hpp"

namespace flatgraph {

/// How lift_cycles picks among admissible darts: smallest id first, or
/// uniformly from a seeded generator.
struct TieBreak {
    std::optional<std::uint64_t> seed;

    static TieBreak deterministic() { return {}; }
    static TieBreak seeded(std::uint64_t s) { return {s}; }
};

/// Decomposes the preimage of the closed walk `base` into closed walks R_i of
/// the source, each mapping onto `base` traversed deg(R_i / base) times.
/// Across all R_i every source dart e above position p of `base` is used
/// exactly n_e times, so the total degree is n.
///
/// Each position p of `base` carries its own budget n_e for every dart e
/// above base[p]. A lift starts at a source vertex over src(base[0]) with
/// budget left, follows darts with budget left position by position, and
/// closes on its first return to the start vertex at position 0. The flatness
/// axioms balance in- and out-budget at every (vertex, position), so the walk
/// cannot stall anywhere but at its start.
inline std::vector<Cycle> lift_cycles(const FiniteFlatMorphism& f, const Cycle& base,
                                      TieBreak tie_break = TieBreak::deterministic()) {
    require_valid(f);
    require_cycle(*f.target, base);
    const Graph& g = *f.source;
    const std::size_t m = base.darts.size();

    std::vector<std::vector<DartId>> fiber(m);  // source darts above base[p], increasing id
    for (std::size_t i = 0; i < g.dart_count(); ++i)
        for (std::size_t p = 0; p < m; ++p)
            if (f.dart_map[i] == base.darts[p]) fiber[p].push_back(DartId(i));

    std::vector<std::vector<std::uint64_t>> budget(m);
    for (std::size_t p = 0; p < m; ++p)
        for (DartId d : fiber[p]) budget[p].push_back(f.dart_mult[d.index()]);

    std::mt19937_64 rng(tie_break.seed.value_or(0));
    auto pick = [&](const std::vector<std::size_t>& options) {
        return tie_break.seed ? options[rng() % options.size()] : options.front();
    };

    std::vector<Cycle> lifts;
    std::uint64_t covered = 0;
    while (covered < f.degree) {
        std::vector<std::size_t> starts;  // fiber slots at position 0, one per distinct source vertex
        for (std::size_t k = 0; k < fiber[0].size(); ++k) {
            if (budget[0][k] == 0) continue;
            const bool seen = std::any_of(starts.begin(), starts.end(),
                                          [&](std::size_t s) { return g.src(fiber[0][s]) == g.src(fiber[0][k]); });
            if (!seen) starts.push_back(k);
        }
        if (starts.empty()) throw std::logic_error("lift_cycles: budget over the base cycle exhausted early");
        if (!tie_break.seed)
            std::sort(starts.begin(), starts.end(),
                      [&](std::size_t a, std::size_t b) { return g.src(fiber[0][a]) < g.src(fiber[0][b]); });
        const VertexId start = g.src(fiber[0][pick(starts)]);

        Cycle lift;
        VertexId here = start;
        std::size_t p = 0;
        do {
            std::vector<std::size_t> options;
            for (std::size_t k = 0; k < fiber[p].size(); ++k)
                if (budget[p][k] > 0 && g.src(fiber[p][k]) == here) options.push_back(k);
            if (options.empty()) throw std::logic_error("lift_cycles: walk stalled away from its start");
            const std::size_t k = pick(options);
            --budget[p][k];
            lift.darts.push_back(fiber[p][k]);
            here = g.dst(fiber[p][k]);
            p = (p + 1) % m;
        } while (p != 0 || here != start);

        covered += lift.darts.size() / m;
        lifts.push_back(std::move(lift));

        // Every position must have the same budget left: n minus the degree used so far.
        for (std::size_t q = 0; q < m; ++q) {
            std::uint64_t left = 0;
            for (auto b : budget[q]) left += b;
            if (left != f.degree - std::min(covered, f.degree))
                throw std::logic_error("lift_cycles: fiber budget no longer balanced after a lift");
        }
    }
    return lifts;
}

/// Sum of the chains of all lifts of `base`; equals pullback_chain(f, base).
inline Chain1 lifted_chain(const FiniteFlatMorphism& f, const std::vector<Cycle>& lifts) {
    Chain1 sum(*f.source);
    for (const auto& r : lifts) sum += cycle_to_chain(*f.source, r);
    return sum;
}

} // namespace flatgraph
