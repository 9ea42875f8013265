#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cayspec/cayley.hpp"
#include "cayspec/generic_graph.hpp"

namespace cayspec {

// On-disk description of a graph.  Cayley graphs store moduli plus the
// full connection set (canonically sorted residue lists); generic graphs
// store a sorted edge list.  parse(serialize(d)) round-trips bit-exactly.
struct GraphDocument {
    enum class Kind { Cayley, Generic };

    int format_version = 1;
    Kind kind = Kind::Cayley;
    // Cayley
    std::vector<std::uint32_t> moduli;
    std::vector<std::vector<i64>> connection_set;
    // Generic
    u64 n = 0;
    std::vector<std::pair<u64, u64>> edges;

    static GraphDocument from_graph(const CayleyGraph& G) {
        GraphDocument d;
        d.kind = Kind::Cayley;
        d.moduli = G.group().moduli();
        for (const Element& e : G.connection_set().elements) {
            std::vector<i64> row(e.residues.begin(), e.residues.end());
            d.connection_set.push_back(std::move(row));
        }
        return d;
    }

    static GraphDocument from_graph(const GenericGraph& G) {
        GraphDocument d;
        d.kind = Kind::Generic;
        d.n = G.order();
        d.edges = G.edges();
        return d;
    }

    CayleyGraph to_cayley() const {
        if (kind != Kind::Cayley)
            throw std::invalid_argument("GraphDocument: not a cayley document");
        Group g(moduli);
        std::vector<Element> elems;
        elems.reserve(connection_set.size());
        for (const auto& row : connection_set) elems.push_back(g.element(row));
        return CayleyGraph(g, make_connection_set(g, std::move(elems)));
    }

    GenericGraph to_generic() const {
        if (kind != Kind::Generic)
            throw std::invalid_argument("GraphDocument: not a generic document");
        GenericGraph G(n);
        for (const auto& [u, v] : edges) G.add_edge(u, v);
        return G;
    }

    std::string serialize() const {
        nlohmann::json j;
        j["format_version"] = format_version;
        if (kind == Kind::Cayley) {
            j["kind"] = "cayley";
            j["moduli"] = moduli;
            j["connection_set"] = connection_set;
        } else {
            j["kind"] = "generic";
            j["n"] = n;
            auto arr = nlohmann::json::array();
            for (const auto& [u, v] : edges) arr.push_back({u, v});
            j["edges"] = arr;
        }
        return j.dump(2) + "\n";
    }

    static GraphDocument parse(const std::string& text) {
        nlohmann::json j = nlohmann::json::parse(text);
        GraphDocument d;
        d.format_version = j.at("format_version").get<int>();
        if (d.format_version != 1)
            throw std::invalid_argument("GraphDocument: unsupported format_version");
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "cayley") {
            d.kind = Kind::Cayley;
            d.moduli = j.at("moduli").get<std::vector<std::uint32_t>>();
            d.connection_set = j.at("connection_set").get<std::vector<std::vector<i64>>>();
        } else if (kind == "generic") {
            d.kind = Kind::Generic;
            d.n = j.at("n").get<u64>();
            for (const auto& e : j.at("edges")) {
                if (!e.is_array() || e.size() != 2)
                    throw std::invalid_argument("GraphDocument: malformed edge entry");
                d.edges.emplace_back(e[0].get<u64>(), e[1].get<u64>());
            }
        } else {
            throw std::invalid_argument("GraphDocument: unknown kind '" + kind + "'");
        }
        return d;
    }

    static GraphDocument load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open graph file: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse(buf.str());
    }

    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write graph file: " + path);
        out << serialize();
    }
};

}  // namespace cayspec
