#ifndef MASKSPREAD_TESTS_FIXTURES_HPP
#define MASKSPREAD_TESTS_FIXTURES_HPP

#include <cstdint>
#include <vector>

#include "maskspread/netgen.hpp"

namespace fixtures {

// Hand-built network from an explicit edge list (multi-edges and self-loops
// allowed) and per-node types.
inline maskspread::ContactNetwork make_network(
    std::uint32_t n,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
    const std::vector<std::int32_t>& types) {
    maskspread::ContactNetwork net;
    net.n_nodes = n;
    net.edges = edges;
    net.node_type = types;
    net.degree.assign(n, 0);
    for (const auto& [u, v] : edges) {
        if (u == v) {
            net.degree[u] += 2;
            ++net.n_self_loops;
        } else {
            ++net.degree[u];
            ++net.degree[v];
        }
    }
    net.offset.assign(n + 1, 0);
    for (std::uint32_t i = 0; i < n; ++i)
        net.offset[i + 1] = net.offset[i] + net.degree[i];
    net.neighbor.resize(net.offset.back());
    std::vector<std::size_t> cursor(net.offset.begin(), net.offset.end() - 1);
    for (const auto& [u, v] : edges) {
        net.neighbor[cursor[u]++] = v;
        net.neighbor[cursor[v]++] = u;
    }
    return net;
}

}  // namespace fixtures

#endif
