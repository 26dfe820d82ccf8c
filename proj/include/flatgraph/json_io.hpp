#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "flatgraph/flat_morphism.hpp"
#include "flatgraph/semistable.hpp"

namespace flatgraph {

using json = nlohmann::json;

/// Unreadable file, malformed JSON, or a schema violation.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class DocumentKind { graph, morphism, covering, covering_morphism };

namespace detail {

inline const json& field(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) throw InputError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(where + ": missing field \"" + key + "\"");
    return *it;
}

inline std::string string_field(const json& j, const std::string& key, const std::string& where) {
    const json& v = field(j, key, where);
    if (!v.is_string()) throw InputError(where + ": field \"" + key + "\" must be a string");
    return v.get<std::string>();
}

inline std::uint64_t count_value(const json& v, const std::string& what) {
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
        throw InputError(what + " must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

inline std::uint64_t count_field(const json& j, const std::string& key, const std::string& where) {
    return count_value(field(j, key, where), where + ": field \"" + key + "\"");
}

inline const json& array_field(const json& j, const std::string& key, const std::string& where) {
    const json& v = field(j, key, where);
    if (!v.is_array()) throw InputError(where + ": field \"" + key + "\" must be an array");
    return v;
}

inline const json& object_field(const json& j, const std::string& key, const std::string& where) {
    const json& v = field(j, key, where);
    if (!v.is_object()) throw InputError(where + ": field \"" + key + "\" must be an object");
    return v;
}

} // namespace detail

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        // nlohmann reports "at line L, column C" inside what().
        throw InputError(path.string() + ": malformed JSON: " + e.what());
    }
}

inline DocumentKind classify(const json& j) {
    if (!j.is_object()) throw InputError("top-level JSON value must be an object");
    if (j.contains("component_map")) return DocumentKind::covering_morphism;
    if (j.contains("edge_map")) return DocumentKind::morphism;
    if (j.contains("components")) return DocumentKind::covering;
    if (j.contains("vertices")) return DocumentKind::graph;
    throw InputError("unrecognized document: expected a graph, morphism, covering or covering morphism");
}

inline Graph parse_graph(const json& j) {
    using namespace detail;
    Graph g;
    try {
        for (const json& v : array_field(j, "vertices", "graph")) {
            if (!v.is_string()) throw InputError("graph: \"vertices\" entries must be strings");
            g.add_vertex(v.get<std::string>());
        }
        for (const json& e : array_field(j, "edges", "graph")) {
            const std::string id = string_field(e, "id", "graph edge");
            const std::string where = "graph edge " + id;
            auto src = g.find_vertex(string_field(e, "src", where));
            auto dst = g.find_vertex(string_field(e, "dst", where));
            if (!src || !dst) throw InputError(where + ": \"src\"/\"dst\" names an unknown vertex");
            g.add_edge(id, *src, *dst);
        }
    } catch (const std::invalid_argument& e) {  // duplicate ids
        throw InputError(std::string("graph: ") + e.what());
    }
    return g;
}

inline json graph_to_json(const Graph& g) {
    json j{{"vertices", json::array()}, {"edges", json::array()}};
    for (std::size_t v = 0; v < g.vertex_count(); ++v) j["vertices"].push_back(g.vertex_name(VertexId(v)));
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const DartId d = Graph::dart(EdgeId(e));
        j["edges"].push_back({{"id", g.edge_name(EdgeId(e))},
                              {"src", g.vertex_name(g.src(d))},
                              {"dst", g.vertex_name(g.dst(d))}});
    }
    return j;
}

/// "source"/"target" may be inline objects or paths relative to `base_dir`.
inline json resolve_reference(const json& ref, const std::filesystem::path& base_dir, const std::string& where) {
    if (ref.is_object()) return ref;
    if (!ref.is_string()) throw InputError(where + " must be a file path or an inline object");
    return read_json_file(base_dir / ref.get<std::string>());
}

inline FiniteFlatMorphism parse_morphism(const json& j, const std::filesystem::path& base_dir = ".") {
    using namespace detail;
    auto source = std::make_shared<Graph>(parse_graph(resolve_reference(field(j, "source", "morphism"), base_dir, "morphism \"source\"")));
    auto target = std::make_shared<Graph>(parse_graph(resolve_reference(field(j, "target", "morphism"), base_dir, "morphism \"target\"")));
    const std::uint64_t degree = count_field(j, "degree", "morphism");

    const json& vm = object_field(j, "vertex_map", "morphism");
    const json& vmult = object_field(j, "vertex_mult", "morphism");
    const json& em = object_field(j, "edge_map", "morphism");
    const json& emult = object_field(j, "edge_mult", "morphism");

    std::vector<VertexId> vertex_map;
    std::vector<std::uint64_t> vertex_mult;
    for (std::size_t v = 0; v < source->vertex_count(); ++v) {
        const std::string& name = source->vertex_name(VertexId(v));
        const std::string where = "morphism vertex " + name;
        if (!vm.contains(name)) throw InputError("morphism: \"vertex_map\" missing vertex " + name);
        if (!vm.at(name).is_string()) throw InputError(where + ": \"vertex_map\" value must be a string");
        auto to = target->find_vertex(vm.at(name).get<std::string>());
        if (!to) throw InputError(where + ": \"vertex_map\" names unknown target vertex");
        vertex_map.push_back(*to);
        if (!vmult.contains(name)) throw InputError("morphism: \"vertex_mult\" missing vertex " + name);
        vertex_mult.push_back(count_value(vmult.at(name), where + ": \"vertex_mult\""));
    }
    std::vector<EdgeImage> edge_map;
    std::vector<std::uint64_t> edge_mult;
    for (std::size_t e = 0; e < source->edge_count(); ++e) {
        const std::string& name = source->edge_name(EdgeId(e));
        const std::string where = "morphism edge " + name;
        if (!em.contains(name)) throw InputError("morphism: \"edge_map\" missing edge " + name);
        const json& img = em.at(name);
        auto to = target->find_edge(string_field(img, "to", where));
        if (!to) throw InputError(where + ": \"to\" names unknown target edge");
        bool flip = false;
        if (img.contains("flip")) {
            if (!img.at("flip").is_boolean()) throw InputError(where + ": field \"flip\" must be a boolean");
            flip = img.at("flip").get<bool>();
        }
        edge_map.push_back({*to, flip});
        if (!emult.contains(name)) throw InputError("morphism: \"edge_mult\" missing edge " + name);
        edge_mult.push_back(count_value(emult.at(name), where + ": \"edge_mult\""));
    }
    for (auto it = vm.begin(); it != vm.end(); ++it)
        if (!source->find_vertex(it.key())) throw InputError("morphism: \"vertex_map\" names unknown source vertex " + it.key());
    for (auto it = em.begin(); it != em.end(); ++it)
        if (!source->find_edge(it.key())) throw InputError("morphism: \"edge_map\" names unknown source edge " + it.key());
    return make_morphism(std::move(source), std::move(target), std::move(vertex_map), edge_map, std::move(vertex_mult),
                         edge_mult, degree);
}

inline CoveringDescription parse_covering(const json& j) {
    using namespace detail;
    CoveringDescription c;
    for (const json& k : array_field(j, "components", "covering")) {
        const std::string id = string_field(k, "id", "covering component");
        const std::uint64_t genus = count_field(k, "genus", "covering component " + id);
        c.components.push_back({id, static_cast<std::uint32_t>(genus)});
    }
    for (const json& a : array_field(j, "annuli", "covering")) {
        const std::string id = string_field(a, "id", "covering annulus");
        c.annuli.push_back({id, string_field(a, "a", "covering annulus " + id), string_field(a, "b", "covering annulus " + id)});
    }
    for (const json& e : array_field(j, "ends", "covering")) {
        const std::string id = string_field(e, "id", "covering end");
        c.ends.push_back({id, string_field(e, "component", "covering end " + id)});
    }
    return c;
}

inline CoveringMorphism parse_covering_morphism(const json& j, const std::filesystem::path& base_dir = ".") {
    using namespace detail;
    CoveringMorphism f;
    f.source = parse_covering(resolve_reference(field(j, "source", "covering morphism"), base_dir, "covering morphism \"source\""));
    f.target = parse_covering(resolve_reference(field(j, "target", "covering morphism"), base_dir, "covering morphism \"target\""));
    f.degree = count_field(j, "degree", "covering morphism");
    auto images = [&](const char* key, auto&& add) {
        const json& m = object_field(j, key, "covering morphism");
        for (auto it = m.begin(); it != m.end(); ++it) {
            const std::string where = std::string("covering morphism ") + key + " " + it.key();
            add(it.key(), it.value(), where);
        }
    };
    images("component_map", [&](const std::string& id, const json& v, const std::string& where) {
        f.component_map[id] = {string_field(v, "to", where), count_field(v, "mult", where)};
    });
    images("annulus_map", [&](const std::string& id, const json& v, const std::string& where) {
        AnnulusImage img{string_field(v, "to", where), count_field(v, "mult", where), false};
        if (v.contains("flip")) {
            if (!v.at("flip").is_boolean()) throw InputError(where + ": field \"flip\" must be a boolean");
            img.flip = v.at("flip").get<bool>();
        }
        f.annulus_map[id] = img;
    });
    images("end_map", [&](const std::string& id, const json& v, const std::string& where) {
        f.end_map[id] = {string_field(v, "to", where), count_field(v, "mult", where)};
    });
    return f;
}

} // namespace flatgraph
