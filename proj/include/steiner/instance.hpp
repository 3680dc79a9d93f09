#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "steiner/graph.hpp"

namespace steiner {

class ParseError : public Error {
public:
    ParseError(const std::string& message, int line)
        : Error(message + " (line " + std::to_string(line) + ")"), line(line) {}
    int line;
};

// A Steiner tree instance as read from disk. Vertices are 0-based in
// memory; the STP and JSON forms on disk are 1-based.
struct InstanceFile {
    std::string name;
    int vertices = 0;
    std::vector<std::tuple<int, int, Rat>> edges;
    std::vector<int> terminals;  // ascending
    std::optional<Rat> known_opt;
};

InstanceFile parse_instance(const std::filesystem::path& path);
InstanceFile parse_stp(std::istream& in, const std::string& name);
InstanceFile parse_instance_json(std::istream& in, const std::string& name);

std::string to_stp(const InstanceFile& instance);
std::string instance_to_json(const InstanceFile& instance);

// Validated Graph (terminals nonempty, costs nonnegative, no self-loops).
Graph to_graph(const InstanceFile& instance);

enum class GenModel { Euclidean, RandomMetric, QuasiBipartite };

struct GenParams {
    int vertices = 0;
    int terminals = 0;
    GenModel model = GenModel::Euclidean;
    std::uint64_t seed = 0;
    std::string name;  // optional; derived from the parameters when empty
};

// Deterministic under the seed. Euclidean: grid points with rounded
// integer distances on a complete graph. RandomMetric: the metric closure
// of random integer costs. QuasiBipartite: random connected graph with no
// Steiner-Steiner edge.
InstanceFile generate_random(const GenParams& params);

}  // namespace steiner
