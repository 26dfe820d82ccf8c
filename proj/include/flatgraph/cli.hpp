#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "flatgraph/homology.hpp"
#include "flatgraph/json_io.hpp"
#include "flatgraph/lifting.hpp"
#include "flatgraph/semistable.hpp"
#include "flatgraph/transfer.hpp"

namespace flatgraph::cli {

using ordered_json = nlohmann::ordered_json;

enum ExitCode : int { ok = 0, validation_failed = 1, input_error = 2 };

struct Options {
    std::string format = "text";
    bool no_matrices = false;
    std::optional<std::uint64_t> seed;
    std::string cycle;
    std::string input;
};

namespace detail {

inline ordered_json matrix_json(const Matrix& m, const Options& opt, const std::vector<std::string>& row_labels = {}) {
    ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    if (!row_labels.empty()) j["row_labels"] = row_labels;
    if (!opt.no_matrices) {
        ordered_json entries = ordered_json::array();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            ordered_json row = ordered_json::array();
            for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
            entries.push_back(std::move(row));
        }
        j["entries"] = std::move(entries);
    }
    return j;
}

inline bool is_matrix(const ordered_json& j) { return j.is_object() && j.contains("rows") && j.contains("cols"); }

inline std::string scalar_text(const ordered_json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

inline void render_text(std::ostream& os, const std::string& key, const ordered_json& v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (is_matrix(v)) {
        os << pad << key << " (" << v["rows"].get<std::size_t>() << " x " << v["cols"].get<std::size_t>() << ")";
        if (!v.contains("entries")) {
            os << '\n';
            return;
        }
        os << ":\n";
        const auto& entries = v["entries"];
        std::size_t width = 1, label_width = 0;
        for (const auto& row : entries)
            for (const auto& x : row) width = std::max(width, x.get<std::string>().size());
        if (v.contains("row_labels"))
            for (const auto& l : v["row_labels"]) label_width = std::max(label_width, l.get<std::string>().size());
        for (std::size_t r = 0; r < entries.size(); ++r) {
            os << pad << "  ";
            if (label_width) {
                const std::string label = v["row_labels"][r].get<std::string>();
                os << label << std::string(label_width - label.size(), ' ') << " ";
            }
            os << '[';
            for (std::size_t c = 0; c < entries[r].size(); ++c) {
                const std::string x = entries[r][c].get<std::string>();
                os << (c ? " " : "") << std::string(width - x.size(), ' ') << x;
            }
            os << "]\n";
        }
    } else if (v.is_object()) {
        os << pad << key << ":\n";
        for (auto it = v.begin(); it != v.end(); ++it) render_text(os, it.key(), it.value(), indent + 2);
    } else if (v.is_array()) {
        const bool flat = std::all_of(v.begin(), v.end(), [](const auto& x) { return x.is_primitive(); });
        if (flat) {
            os << pad << key << ": [";
            for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar_text(v[i]);
            os << "]\n";
        } else {
            for (std::size_t i = 0; i < v.size(); ++i) render_text(os, key + "[" + std::to_string(i) + "]", v[i], indent);
        }
    } else {
        os << pad << key << " = " << scalar_text(v) << '\n';
    }
}

inline void emit(std::ostream& out, const ordered_json& report, const Options& opt) {
    if (opt.format == "json") {
        out << report.dump(2) << '\n';
        return;
    }
    for (auto it = report.begin(); it != report.end(); ++it) render_text(out, it.key(), it.value(), 0);
}

inline std::vector<std::string> edge_labels(const Graph& g) {
    std::vector<std::string> labels;
    for (std::size_t e = 0; e < g.edge_count(); ++e) labels.push_back(g.edge_name(EdgeId(e)));
    return labels;
}

inline std::vector<std::string> dart_names(const Graph& g, const Cycle& c) {
    std::vector<std::string> names;
    for (DartId d : c.darts) names.push_back(g.dart_name(d));
    return names;
}

inline ordered_json chain_json(const Chain1& z) {
    ordered_json j = ordered_json::object();
    const auto& c = z.edge_coefficients();
    for (std::size_t e = 0; e < c.size(); ++e)
        if (!c[e].is_zero()) j[z.graph().edge_name(EdgeId(e))] = c[e].to_string();
    return j;
}

inline ordered_json violations_json(const std::vector<Violation>& vs) {
    ordered_json j = ordered_json::array();
    for (const auto& v : vs) j.push_back(v.message());
    return j;
}

inline ordered_json dims_json(const DimensionReport& r) {
    return ordered_json{{"h0", r.h0}, {"w0", r.w0}, {"w1", r.w1}, {"w2", r.w2}, {"w2_twist", "(-1)"},
                        {"h1_special", r.h1_special}, {"h1_total", r.h1_total}};
}

inline std::filesystem::path base_dir(const std::string& input) {
    auto p = std::filesystem::path(input).parent_path();
    return p.empty() ? std::filesystem::path(".") : p;
}

inline FiniteFlatMorphism load_morphism(const std::string& input) {
    const json j = read_json_file(input);
    if (classify(j) != DocumentKind::morphism) throw InputError(input + ": expected a graph morphism document");
    return parse_morphism(j, base_dir(input));
}

inline Cycle parse_cycle(const Graph& g, const std::string& text) {
    Cycle c;
    std::stringstream ss(text);
    std::string name;
    while (std::getline(ss, name, ',')) {
        auto d = g.find_dart(name);
        if (!d) throw InputError("--cycle: unknown target dart '" + name + "' (use <edge>+ or <edge>-)");
        c.darts.push_back(*d);
    }
    if (auto why = cycle_defect(g, c); !why.empty()) throw InputError("--cycle: " + why);
    return c;
}

// Each command fills `report` and returns the exit code.

inline int cmd_validate(const Options& opt, ordered_json& report) {
    const json j = read_json_file(opt.input);
    std::vector<Violation> violations;
    switch (classify(j)) {
    case DocumentKind::graph: {
        const Graph g = parse_graph(j);
        report["kind"] = "graph";
        report["vertices"] = g.vertex_count();
        report["edges"] = g.edge_count();
        break;
    }
    case DocumentKind::morphism: {
        const FiniteFlatMorphism f = parse_morphism(j, base_dir(opt.input));
        report["kind"] = "morphism";
        report["degree"] = f.degree;
        violations = validate(f);
        break;
    }
    case DocumentKind::covering: {
        report["kind"] = "covering";
        violations = covering_defects(parse_covering(j));
        break;
    }
    case DocumentKind::covering_morphism: {
        report["kind"] = "covering_morphism";
        try {
            build_graph_morphism(parse_covering_morphism(j, base_dir(opt.input)));
        } catch (const ValidationError& e) {
            violations = e.violations();
        }
        break;
    }
    }
    if (!violations.empty()) throw ValidationError(std::move(violations));
    report["valid"] = true;
    return ok;
}

inline int cmd_homology(const Options& opt, ordered_json& report) {
    const json j = read_json_file(opt.input);
    if (classify(j) != DocumentKind::graph) throw InputError(opt.input + ": expected a graph document");
    const Graph g = parse_graph(j);
    const H1Basis h = h1_basis(g);
    const H1CohomClasses c = h1_cohom_classes(g);
    const auto labels = edge_labels(g);
    report["vertices"] = g.vertex_count();
    report["edges"] = g.edge_count();
    report["components"] = connected_components(g).count;
    report["betti1"] = h.dimension();
    report["h1_basis"] = matrix_json(h.basis, opt, labels);
    report["h1_cohom_representatives"] = matrix_json(c.representatives, opt, labels);
    report["gram"] = matrix_json(gram_matrix(h, c), opt);
    return ok;
}

inline int cmd_lift(const Options& opt, ordered_json& report) {
    const FiniteFlatMorphism f = load_morphism(opt.input);
    require_valid(f);
    const Graph& target = *f.target;
    std::vector<Cycle> bases;
    if (!opt.cycle.empty()) bases.push_back(parse_cycle(target, opt.cycle));
    else bases = fundamental_cycles(target);

    const TieBreak tb = opt.seed ? TieBreak::seeded(*opt.seed) : TieBreak::deterministic();
    report["degree"] = f.degree;
    report["tie_break"] = opt.seed ? "seeded " + std::to_string(*opt.seed) : std::string("deterministic");
    ordered_json all = ordered_json::array();
    for (const Cycle& base : bases) {
        ordered_json b;
        b["base_cycle"] = dart_names(target, base);
        const auto lifts = lift_cycles(f, base, tb);
        ordered_json lj = ordered_json::array();
        std::size_t total = 0;
        for (const Cycle& r : lifts) {
            const std::size_t deg = degree_over(f, r, base);
            total += deg;
            lj.push_back(ordered_json{{"degree", deg}, {"darts", dart_names(*f.source, r)}});
        }
        b["lifts"] = std::move(lj);
        b["total_degree"] = total;
        const Chain1 summed = lifted_chain(f, lifts);
        b["summed_chain"] = chain_json(summed);
        b["matches_pullback_chain"] = summed == pullback_chain(f, base);
        all.push_back(std::move(b));
    }
    report["base_cycles"] = std::move(all);
    return ok;
}

inline int cmd_transfer(const Options& opt, ordered_json& report, bool push) {
    const FiniteFlatMorphism f = load_morphism(opt.input);
    require_valid(f);
    const MorphismBases b(f);
    const TransferMaps t = transfer_maps(f, b);
    report["degree"] = f.degree;
    report["source_betti1"] = b.source_h1.dimension();
    report["target_betti1"] = b.target_h1.dimension();
    if (push) {
        report["pushforward_h1"] = matrix_json(t.push_h1, opt);
        report["pushforward_h1cohom"] = matrix_json(t.push_cohom, opt);
    } else {
        report["pullback_h1"] = matrix_json(t.pull_h1, opt);
        report["pullback_h1cohom"] = matrix_json(t.pull_cohom, opt);
    }
    return ok;
}

inline int cmd_dims(const Options& opt, ordered_json& report) {
    const json j = read_json_file(opt.input);
    if (classify(j) != DocumentKind::covering) throw InputError(opt.input + ": expected a covering document");
    const CoveringDescription c = parse_covering(j);
    const GraphTriple t = build_graphs(c);
    report["gamma"] = ordered_json{{"vertices", t.gamma->vertex_count()}, {"edges", t.gamma->edge_count()}};
    report["gamma_prime"] = ordered_json{{"vertices", t.gamma_prime->vertex_count()}, {"edges", t.gamma_prime->edge_count()}};
    report["gamma_tilde"] = ordered_json{{"vertices", t.gamma_tilde->vertex_count()}, {"edges", t.gamma_tilde->edge_count()}};
    const ordered_json dims = dims_json(dimension_report(c));
    for (auto it = dims.begin(); it != dims.end(); ++it) report[it.key()] = it.value();
    return ok;
}

inline int cmd_morphism_check(const Options& opt, ordered_json& report) {
    const json j = read_json_file(opt.input);
    const DocumentKind kind = classify(j);
    if (kind == DocumentKind::covering_morphism) {
        const InducedMorphisms induced = build_graph_morphism(parse_covering_morphism(j, base_dir(opt.input)));
        report["kind"] = "covering_morphism";
        report["degree"] = induced.on_prime.degree;
        report["valid"] = true;
        report["gamma_prime_morphism"] = "ok";
        report["gamma_tilde_morphism"] = "ok";
        report["gamma_restriction"] = "ok";
        return ok;
    }
    if (kind != DocumentKind::morphism) throw InputError(opt.input + ": expected a morphism document");
    const FiniteFlatMorphism f = parse_morphism(j, base_dir(opt.input));
    report["kind"] = "morphism";
    report["degree"] = f.degree;
    if (auto v = validate(f); !v.empty()) throw ValidationError(std::move(v));
    const MorphismBases b(f);
    const TransferMaps t = transfer_maps(f, b);
    const Rational n(static_cast<std::int64_t>(f.degree));
    report["valid"] = true;
    report["push_pull_is_n"] = t.push_h1 * t.pull_h1 == n * Matrix::identity(b.target_h1.dimension());
    report["adjoint_identity"] = t.push_h1.transpose() * b.target_gram == b.source_gram * t.pull_cohom;
    return ok;
}

inline int cmd_functorial(const Options& opt, ordered_json& report) {
    const json j = read_json_file(opt.input);
    if (classify(j) != DocumentKind::covering_morphism) throw InputError(opt.input + ": expected a covering morphism document");
    const FunctorialReport r = functorial_report(parse_covering_morphism(j, base_dir(opt.input)));
    report["degree"] = r.degree;
    report["source_dims"] = dims_json(r.source_dims);
    report["target_dims"] = dims_json(r.target_dims);
    report["weight0_push"] = matrix_json(r.weight0_push, opt);
    report["weight0_pull"] = matrix_json(r.weight0_pull, opt);
    report["weight2_push"] = matrix_json(r.weight2_push, opt);
    report["weight2_pull"] = matrix_json(r.weight2_pull, opt);
    ordered_json checks = ordered_json::object();
    for (const auto& c : r.checks) checks[c.name] = c.passed;
    report["checks"] = std::move(checks);
    return r.all_passed() ? ok : validation_failed;
}

} // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Homology, finite flat morphisms and dual graphs of semi-stable coverings"};
    app.name("flatgraph");
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, const char* what) {
        sub->add_option("input", opt.input, what)->required();
        sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_flag("--no-matrices", opt.no_matrices, "Report dimensions only");
        return sub;
    };
    add_common(app.add_subcommand("validate", "Check any input document against its axioms"), "JSON document");
    add_common(app.add_subcommand("homology", "H_1 / H^1 bases and the pairing of a graph"), "Graph JSON");
    auto* lift = add_common(app.add_subcommand("lift", "Lift target cycles through a finite flat morphism"), "Morphism JSON");
    lift->add_option("--seed", opt.seed, "Random tie-break seed");
    lift->add_option("--cycle", opt.cycle, "Comma-separated target darts, e.g. a+,b-");
    add_common(app.add_subcommand("push", "Pushforward matrices on H_1 and H^1"), "Morphism JSON");
    add_common(app.add_subcommand("pull", "Pullback matrices on H_1 and H^1"), "Morphism JSON");
    add_common(app.add_subcommand("dims", "Weight-graded dimensions of H^1 of a wide open curve"), "Covering JSON");
    add_common(app.add_subcommand("morphism-check", "Validate a graph or covering morphism"), "Morphism JSON");
    add_common(app.add_subcommand("functorial-check", "Graded push/pull for a covering morphism"), "Covering morphism JSON");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : input_error;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    ordered_json report;
    report["command"] = name;
    report["input"] = opt.input;
    int code = ok;
    try {
        if (name == "validate") code = detail::cmd_validate(opt, report);
        else if (name == "homology") code = detail::cmd_homology(opt, report);
        else if (name == "lift") code = detail::cmd_lift(opt, report);
        else if (name == "push") code = detail::cmd_transfer(opt, report, true);
        else if (name == "pull") code = detail::cmd_transfer(opt, report, false);
        else if (name == "dims") code = detail::cmd_dims(opt, report);
        else if (name == "morphism-check") code = detail::cmd_morphism_check(opt, report);
        else code = detail::cmd_functorial(opt, report);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const ValidationError& e) {
        report["valid"] = false;
        report["violations"] = detail::violations_json(e.violations());
        detail::emit(out, report, opt);
        for (const auto& v : e.violations()) err << "invalid: " << v.message() << '\n';
        return validation_failed;
    }
    detail::emit(out, report, opt);
    return code;
}

} // namespace flatgraph::cli
