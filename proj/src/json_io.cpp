#include "schreierlab/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace schreierlab {

using nlohmann::json;

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json require(const json& j, const char* key) {
    if (!j.contains(key))
        throw error(errc::malformed_input, std::string("missing JSON key \"") + key + "\"");
    return j.at(key);
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw error(errc::malformed_input, std::string("bad JSON: ") + e.what());
    }
}

} // namespace

std::string graph_to_json(const LabeledGraph& g) {
    json j;
    j["degree_bound"] = g.degree_bound();
    j["vertices"] = g.vertices();
    j["edges"] = json::array();
    for (const auto& e : g.edges()) {
        json je;
        je["u"] = e.u;
        je["v"] = e.v;
        je["labels"] = g.edge_label_names(e);
        j["edges"].push_back(je);
    }
    j["loops"] = json::array();
    for (std::uint32_t i = 0; i < g.vertex_count(); ++i)
        for (LabelId l : g.loop_labels_at(i)) {
            json jl;
            jl["v"] = g.vertex_at(i);
            jl["labels"] = json::array({g.label_name(l)});
            j["loops"].push_back(jl);
        }
    return dump(j);
}

LabeledGraph graph_from_json(const std::string& text) {
    json j = parse(text);
    LabeledGraph g;
    g.set_degree_bound(require(j, "degree_bound").get<int>());
    for (const auto& v : require(j, "vertices")) g.add_vertex(v.get<VertexId>());
    for (const auto& je : require(j, "edges")) {
        VertexId u = require(je, "u").get<VertexId>();
        VertexId v = require(je, "v").get<VertexId>();
        auto labels = require(je, "labels");
        if (labels.empty())
            throw error(errc::malformed_input, "edge with empty label list");
        for (const auto& l : labels) g.add_edge(u, v, l.get<std::string>());
    }
    for (const auto& jl : require(j, "loops")) {
        VertexId v = require(jl, "v").get<VertexId>();
        for (const auto& l : require(jl, "labels")) g.add_loop(v, l.get<std::string>());
    }
    g.finalize();
    return g;
}

std::string graph_to_dot(const LabeledGraph& g) {
    std::string out = "graph {\n";
    for (VertexId v : g.vertices()) out += "  " + std::to_string(v) + ";\n";
    for (const auto& e : g.edges()) {
        std::string label;
        for (const auto& name : g.edge_label_names(e)) {
            if (!label.empty()) label += ",";
            label += name;
        }
        out += "  " + std::to_string(e.u) + " -- " + std::to_string(e.v) + " [label=\"" + label +
               "\"];\n";
    }
    for (std::uint32_t i = 0; i < g.vertex_count(); ++i)
        for (LabelId l : g.loop_labels_at(i))
            out += "  " + std::to_string(g.vertex_at(i)) + " -- " + std::to_string(g.vertex_at(i)) +
                   " [label=\"" + g.label_name(l) + "\"];\n";
    out += "}\n";
    return out;
}

std::string certificate_to_json(const PartitionCertificate& cert) {
    json j;
    j["mode"] = cert.mode == RemovalMode::Edge ? "edge" : "vertex";
    j["K"] = cert.K;
    j["epsilon"] = cert.epsilon.str();
    if (cert.mode == RemovalMode::Edge) {
        j["removed"] = json::array();
        for (auto [u, v] : cert.removed_edges) j["removed"].push_back(json::array({u, v}));
    } else {
        j["removed"] = cert.removed_vertices;
    }
    return dump(j);
}

PartitionCertificate certificate_from_json(const std::string& text) {
    json j = parse(text);
    PartitionCertificate cert;
    std::string mode = require(j, "mode").get<std::string>();
    if (mode == "edge")
        cert.mode = RemovalMode::Edge;
    else if (mode == "vertex")
        cert.mode = RemovalMode::Vertex;
    else
        throw error(errc::malformed_input, "certificate mode must be \"edge\" or \"vertex\"");
    cert.K = require(j, "K").get<std::int64_t>();
    cert.epsilon = Rational::parse(require(j, "epsilon").get<std::string>());
    for (const auto& r : require(j, "removed")) {
        if (cert.mode == RemovalMode::Edge) {
            if (!r.is_array() || r.size() != 2)
                throw error(errc::malformed_input, "removed edge must be a [u,v] pair");
            cert.removed_edges.push_back({r[0].get<VertexId>(), r[1].get<VertexId>()});
        } else {
            cert.removed_vertices.push_back(r.get<VertexId>());
        }
    }
    return cert;
}

std::string census_to_json(const BallCensus& census) {
    json j;
    j["radius"] = census.radius;
    j["total"] = census.total;
    j["classes"] = json::array();
    for (const auto& [code, count] : census.counts) {
        json jc;
        jc["code"] = code.hex();
        jc["count"] = count;
        j["classes"].push_back(jc);
    }
    return dump(j);
}

BallCensus census_from_json(const std::string& text) {
    json j = parse(text);
    BallCensus census;
    census.radius = require(j, "radius").get<int>();
    census.total = require(j, "total").get<std::int64_t>();
    std::int64_t sum = 0;
    for (const auto& jc : require(j, "classes")) {
        RootedBallCode code = RootedBallCode::from_hex(require(jc, "code").get<std::string>());
        std::int64_t count = require(jc, "count").get<std::int64_t>();
        census.counts[code] = count;
        sum += count;
        census.labeled = code.labeled();
    }
    if (sum != census.total)
        throw error(errc::malformed_input, "census counts do not sum to the total");
    return census;
}

std::string tower_manifest_json(const AmoebaTower& tower) {
    json j;
    j["basepoints"] = tower.basepoints;
    j["levels"] = json::array();
    char name[32];
    for (std::size_t i = 0; i < tower.levels.size(); ++i) {
        std::snprintf(name, sizeof name, "level_%03zu.json", i + 1);
        j["levels"].push_back(std::string(name));
    }
    j["coverings"] = json::array();
    for (const auto& cov : tower.coverings) {
        std::vector<std::pair<VertexId, VertexId>> pairs(cov.map.begin(), cov.map.end());
        std::sort(pairs.begin(), pairs.end());
        json jc = json::array();
        for (auto [src, dst] : pairs) jc.push_back(json::array({src, dst}));
        j["coverings"].push_back(jc);
    }
    j["schedule"] = json::array();
    for (auto [k, level] : tower.schedule) {
        json js;
        js["k"] = k;
        js["level"] = level;
        j["schedule"].push_back(js);
    }
    return dump(j);
}

void save_tower(const AmoebaTower& tower, const std::string& dir) {
    std::filesystem::create_directories(dir);
    char name[32];
    for (std::size_t i = 0; i < tower.levels.size(); ++i) {
        std::snprintf(name, sizeof name, "level_%03zu.json", i + 1);
        write_atomic(dir + "/" + name, graph_to_json(tower.levels[i].graph()));
    }
    write_atomic(dir + "/manifest.json", tower_manifest_json(tower));
}

AmoebaTower load_tower(const std::string& dir) {
    json j = parse(read_file(dir + "/manifest.json"));
    AmoebaTower tower;
    for (const auto& name : require(j, "levels")) {
        LabeledGraph g = graph_from_json(read_file(dir + "/" + name.get<std::string>()));
        tower.levels.push_back(Amoeba::from_graph(std::move(g)));
    }
    for (const auto& b : require(j, "basepoints")) tower.basepoints.push_back(b.get<VertexId>());
    for (const auto& jc : require(j, "coverings")) {
        Covering cov;
        for (const auto& pair : jc) cov.map[pair[0].get<VertexId>()] = pair[1].get<VertexId>();
        tower.coverings.push_back(std::move(cov));
    }
    for (const auto& js : require(j, "schedule"))
        tower.schedule.push_back({require(js, "k").get<int>(),
                                  require(js, "level").get<std::size_t>()});

    if (tower.basepoints.size() != tower.levels.size() ||
        tower.coverings.size() + 1 != tower.levels.size())
        throw error(errc::malformed_input, "tower manifest is inconsistent");
    for (std::size_t i = 0; i + 1 < tower.levels.size(); ++i) {
        auto rep = verify_covering(tower.levels[i + 1], tower.levels[i], tower.coverings[i]);
        if (!rep.ok)
            throw error(errc::malformed_input,
                        "tower covering " + std::to_string(i) + " invalid: " + rep.violation);
        if (tower.coverings[i].map.at(tower.basepoints[i + 1]) != tower.basepoints[i])
            throw error(errc::malformed_input, "basepoints are not covering-compatible");
    }
    for (std::size_t i = 0; i < tower.levels.size(); ++i)
        tower.radii.push_back(tree_radius(tower.levels[i], tower.basepoints[i]));
    for (auto [k, level] : tower.schedule) {
        if (level >= tower.levels.size() || tower.radii[level] < k)
            throw error(errc::malformed_input, "schedule entry not satisfied by its level");
    }
    return tower;
}

void write_atomic(const std::string& path, const std::string& bytes) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw error(errc::io, "cannot open " + tmp + " for writing");
        out.write(bytes.data(), (std::streamsize)bytes.size());
        if (!out) throw error(errc::io, "short write to " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw error(errc::io, "cannot rename " + tmp + " to " + path + ": " + ec.message());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::io, "cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return bytes;
}

} // namespace schreierlab
