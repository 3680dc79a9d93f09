#include "steiner/instance.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "steiner/rng.hpp"

namespace steiner {

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream iss(line);
    std::vector<std::string> out;
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

int parse_vertex(const std::string& tok, int vertices, int line_no) {
    try {
        const std::size_t pos_end = tok.find_first_not_of("0123456789");
        if (pos_end != std::string::npos) throw std::invalid_argument(tok);
        const long v = std::stol(tok);
        if (v < 1 || v > vertices) throw std::out_of_range(tok);
        return static_cast<int>(v - 1);
    } catch (const std::exception&) {
        throw ParseError("vertex '" + tok + "' out of range 1.." + std::to_string(vertices), line_no);
    }
}

}  // namespace

InstanceFile parse_stp(std::istream& in, const std::string& name) {
    InstanceFile inst;
    inst.name = name;

    std::string line;
    int line_no = 0;
    std::string section;
    bool saw_graph = false, saw_terminals = false;
    long declared_edges = -1, declared_terminals = -1;
    // sections may come in any order; terminal vertex ids are validated
    // once Nodes is known
    std::vector<std::pair<std::string, int>> terminal_tokens;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> tok = tokens(line);
        if (tok.empty()) continue;
        if (tok[0][0] == '#') continue;
        const std::string head = lower(tok[0]);

        if (section.empty()) {
            if (head == "section") {
                if (tok.size() < 2) throw ParseError("SECTION without a name", line_no);
                section = lower(tok[1]);
                if (section == "graph") {
                    if (saw_graph) throw ParseError("duplicate Graph section", line_no);
                    saw_graph = true;
                }
                if (section == "terminals") {
                    if (saw_terminals) throw ParseError("duplicate Terminals section", line_no);
                    saw_terminals = true;
                }
            } else if (head == "eof") {
                break;
            } else if (line.find("STP File") != std::string::npos || head == "33d32945") {
                continue;  // magic header
            } else {
                throw ParseError("unexpected token '" + tok[0] + "' outside any section", line_no);
            }
            continue;
        }

        if (head == "end") {
            section.clear();
            continue;
        }

        if (section == "graph") {
            if (head == "nodes") {
                if (tok.size() != 2) throw ParseError("malformed Nodes line", line_no);
                inst.vertices = std::stoi(tok[1]);
                if (inst.vertices <= 0) throw ParseError("Nodes must be positive", line_no);
            } else if (head == "edges") {
                if (tok.size() != 2) throw ParseError("malformed Edges line", line_no);
                declared_edges = std::stol(tok[1]);
            } else if (head == "e") {
                if (tok.size() != 4) throw ParseError("malformed E line (want E u v cost)", line_no);
                if (inst.vertices <= 0) throw ParseError("E line before Nodes", line_no);
                const int u = parse_vertex(tok[1], inst.vertices, line_no);
                const int v = parse_vertex(tok[2], inst.vertices, line_no);
                Rat cost;
                try {
                    cost = parse_rational(tok[3]);
                } catch (const Error& e) {
                    throw ParseError(e.what(), line_no);
                }
                if (cost < 0) throw ParseError("negative edge cost " + tok[3], line_no);
                if (u == v) throw ParseError("self-loop at vertex " + tok[1], line_no);
                inst.edges.emplace_back(u, v, std::move(cost));
            } else if (head == "a") {
                throw ParseError("directed arcs are not supported", line_no);
            } else {
                throw ParseError("unexpected token '" + tok[0] + "' in Graph section", line_no);
            }
        } else if (section == "terminals") {
            if (head == "terminals") {
                if (tok.size() != 2) throw ParseError("malformed Terminals line", line_no);
                declared_terminals = std::stol(tok[1]);
            } else if (head == "t") {
                if (tok.size() != 2) throw ParseError("malformed T line", line_no);
                terminal_tokens.emplace_back(tok[1], line_no);
            } else {
                throw ParseError("unexpected token '" + tok[0] + "' in Terminals section", line_no);
            }
        } else if (section == "comment") {
            if (head == "name" && tok.size() >= 2) {
                std::string n = line.substr(line.find(tok[1]));
                if (!n.empty() && n.front() == '"' && n.back() == '"' && n.size() >= 2)
                    n = n.substr(1, n.size() - 2);
                inst.name = n;
            } else if (head == "opt" && tok.size() == 2) {
                try {
                    inst.known_opt = parse_rational(tok[1]);
                } catch (const Error& e) {
                    throw ParseError(e.what(), line_no);
                }
            }
            // other comment lines are free-form
        }
        // unknown sections are skipped until END
    }

    if (!saw_graph) throw ParseError("missing Graph section", line_no);
    if (!saw_terminals) throw ParseError("missing Terminals section", line_no);
    for (const auto& [token, at_line] : terminal_tokens)
        inst.terminals.push_back(parse_vertex(token, inst.vertices, at_line));
    if (declared_edges >= 0 && declared_edges != static_cast<long>(inst.edges.size()))
        throw ParseError("Edges declares " + std::to_string(declared_edges) + " but " +
                             std::to_string(inst.edges.size()) + " E lines follow",
                         line_no);
    if (declared_terminals >= 0 && declared_terminals != static_cast<long>(inst.terminals.size()))
        throw ParseError("Terminals declares " + std::to_string(declared_terminals) + " but " +
                             std::to_string(inst.terminals.size()) + " T lines follow",
                         line_no);
    std::sort(inst.terminals.begin(), inst.terminals.end());
    inst.terminals.erase(std::unique(inst.terminals.begin(), inst.terminals.end()),
                         inst.terminals.end());
    return inst;
}

InstanceFile parse_instance_json(std::istream& in, const std::string& name) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
    }
    InstanceFile inst;
    inst.name = j.value("name", name);
    try {
        inst.vertices = j.at("vertices").get<int>();
        if (inst.vertices <= 0) throw ParseError("vertices must be positive", 0);
        std::set<long> seen_ids;
        for (const auto& e : j.at("edges")) {
            int u, v;
            std::string cost;
            if (e.is_array()) {
                u = e.at(0).get<int>();
                v = e.at(1).get<int>();
                cost = e.at(2).is_string() ? e.at(2).get<std::string>()
                                           : e.at(2).dump();
            } else {
                if (e.contains("id")) {
                    const long id = e.at("id").get<long>();
                    if (!seen_ids.insert(id).second)
                        throw ParseError("duplicate edge id " + std::to_string(id), 0);
                }
                u = e.at("u").get<int>();
                v = e.at("v").get<int>();
                cost = e.at("cost").is_string() ? e.at("cost").get<std::string>()
                                                : e.at("cost").dump();
            }
            if (u < 1 || u > inst.vertices || v < 1 || v > inst.vertices)
                throw ParseError("edge endpoint out of range", 0);
            if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u), 0);
            Rat c = parse_rational(cost);
            if (c < 0) throw ParseError("negative edge cost " + cost, 0);
            inst.edges.emplace_back(u - 1, v - 1, std::move(c));
        }
        for (const auto& t : j.at("terminals")) {
            const int v = t.get<int>();
            if (v < 1 || v > inst.vertices) throw ParseError("terminal out of range", 0);
            inst.terminals.push_back(v - 1);
        }
        if (j.contains("opt")) {
            inst.known_opt = parse_rational(j.at("opt").is_string() ? j.at("opt").get<std::string>()
                                                                    : j.at("opt").dump());
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid instance JSON: ") + e.what(), 0);
    }
    std::sort(inst.terminals.begin(), inst.terminals.end());
    inst.terminals.erase(std::unique(inst.terminals.begin(), inst.terminals.end()),
                         inst.terminals.end());
    return inst;
}

InstanceFile parse_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open instance file " + path.string());
    const std::string stem = path.stem().string();
    if (lower(path.extension().string()) == ".json") return parse_instance_json(in, stem);
    return parse_stp(in, stem);
}

std::string to_stp(const InstanceFile& instance) {
    std::ostringstream out;
    out << "33D32945 STP File, STP Format Version 1.0\n";
    out << "SECTION Comment\n";
    out << "Name \"" << instance.name << "\"\n";
    if (instance.known_opt) out << "Opt " << to_fraction_string(*instance.known_opt) << "\n";
    out << "END\n\n";
    out << "SECTION Graph\n";
    out << "Nodes " << instance.vertices << "\n";
    out << "Edges " << instance.edges.size() << "\n";
    for (const auto& [u, v, cost] : instance.edges)
        out << "E " << (u + 1) << " " << (v + 1) << " " << to_fraction_string(cost) << "\n";
    out << "END\n\n";
    out << "SECTION Terminals\n";
    out << "Terminals " << instance.terminals.size() << "\n";
    for (int t : instance.terminals) out << "T " << (t + 1) << "\n";
    out << "END\n\nEOF\n";
    return out.str();
}

std::string instance_to_json(const InstanceFile& instance) {
    nlohmann::ordered_json j;
    j["name"] = instance.name;
    j["vertices"] = instance.vertices;
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (std::size_t id = 0; id < instance.edges.size(); ++id) {
        const auto& [u, v, cost] = instance.edges[id];
        nlohmann::ordered_json e;
        e["id"] = id;
        e["u"] = u + 1;
        e["v"] = v + 1;
        e["cost"] = to_fraction_string(cost);
        edges.push_back(std::move(e));
    }
    j["edges"] = std::move(edges);
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (int t : instance.terminals) terms.push_back(t + 1);
    j["terminals"] = std::move(terms);
    if (instance.known_opt) j["opt"] = to_fraction_string(*instance.known_opt);
    return j.dump(2) + "\n";
}

Graph to_graph(const InstanceFile& instance) {
    if (instance.terminals.empty()) throw Error("instance has no terminals");
    Graph g(instance.vertices, instance.terminals);
    for (const auto& [u, v, cost] : instance.edges) g.add_edge(u, v, cost);
    return g;
}

namespace {

long rounded_isqrt(long d2) {
    long m = 0;
    while ((m + 1) * (m + 1) <= d2) ++m;
    return d2 <= m * m + m ? m : m + 1;  // nearest integer to sqrt(d2)
}

}  // namespace

InstanceFile generate_random(const GenParams& params) {
    if (params.vertices < 1) throw Error("generate_random: need at least one vertex");
    if (params.terminals < 1 || params.terminals > params.vertices)
        throw Error("generate_random: terminal count out of range");

    SplitMix64 rng(params.seed);
    InstanceFile inst;
    inst.vertices = params.vertices;
    const int n = params.vertices;

    // random terminal subset
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(order[i], order[static_cast<int>(rng.next_below(i + 1))]);
    inst.terminals.assign(order.begin(), order.begin() + params.terminals);
    std::sort(inst.terminals.begin(), inst.terminals.end());

    const char* model_tag = "euclidean";
    if (params.model == GenModel::Euclidean) {
        std::vector<std::pair<long, long>> pts;
        std::set<std::pair<long, long>> used;
        while (static_cast<int>(pts.size()) < n) {
            std::pair<long, long> p{static_cast<long>(rng.next_below(10000)),
                                    static_cast<long>(rng.next_below(10000))};
            if (used.insert(p).second) pts.push_back(p);
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const long dx = pts[i].first - pts[j].first;
                const long dy = pts[i].second - pts[j].second;
                inst.edges.emplace_back(i, j, Rat(rounded_isqrt(dx * dx + dy * dy)));
            }
    } else if (params.model == GenModel::RandomMetric) {
        model_tag = "random-metric";
        Graph raw(n, inst.terminals);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                raw.add_edge(i, j, Rat(1 + static_cast<long>(rng.next_below(1000))));
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i;
        const MetricClosure closed = metric_closure(raw, all);
        for (const Edge& e : closed.graph.edges) inst.edges.emplace_back(e.u, e.v, e.cost);
    } else {
        model_tag = "quasi-bipartite";
        std::vector<char> is_term(n, 0);
        for (int t : inst.terminals) is_term[t] = 1;
        // random attachment tree; Steiner vertices may only attach to
        // terminals, so seed the placement order with a terminal
        std::vector<int> placed{inst.terminals[static_cast<int>(
            rng.next_below(inst.terminals.size()))]};
        std::vector<int> placed_terminals = placed;
        std::vector<int> rest;
        for (int v : order)
            if (v != placed[0]) rest.push_back(v);
        std::set<std::pair<int, int>> present;
        auto add_edge = [&](int u, int v) {
            if (u > v) std::swap(u, v);
            if (!present.insert({u, v}).second) return;
            inst.edges.emplace_back(u, v, Rat(1 + static_cast<long>(rng.next_below(1000))));
        };
        for (int v : rest) {
            int anchor;
            if (is_term[v]) {
                anchor = placed[static_cast<int>(rng.next_below(placed.size()))];
            } else {
                anchor = placed_terminals[static_cast<int>(rng.next_below(placed_terminals.size()))];
            }
            add_edge(v, anchor);
            placed.push_back(v);
            if (is_term[v]) placed_terminals.push_back(v);
        }
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                if (!is_term[u] && !is_term[v]) continue;
                if (rng.next_below(10) < 3) add_edge(u, v);
            }
    }

    inst.name = params.name.empty()
                    ? std::string(model_tag) + "-n" + std::to_string(n) + "-t" +
                          std::to_string(params.terminals) + "-s" + std::to_string(params.seed)
                    : params.name;
    return inst;
}

}  // namespace steiner
