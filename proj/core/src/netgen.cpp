#include "maskspread/netgen.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "maskspread/degree_model.hpp"

namespace maskspread {

ContactNetwork generate_network(const DegreeModel& model, std::uint32_t n_nodes,
                                Rng& degree_rng, Rng& matching_rng) {
    if (n_nodes < 2)
        throw std::invalid_argument("generate_network: need at least 2 nodes");

    ContactNetwork net;
    net.n_nodes = n_nodes;
    net.degree = model.sample_degrees(n_nodes, degree_rng);
    std::size_t total = 0;
    for (std::uint32_t v = 0; v < n_nodes; ++v) total += net.degree[v];
    if (total % 2 == 1) {
        std::uniform_int_distribution<std::uint32_t> pick(0, n_nodes - 1);
        ++net.degree[pick(matching_rng)];
        ++total;
    }

    std::vector<std::uint32_t> stubs;
    stubs.reserve(total);
    for (std::uint32_t v = 0; v < n_nodes; ++v)
        stubs.insert(stubs.end(), net.degree[v], v);
    std::shuffle(stubs.begin(), stubs.end(), matching_rng);

    net.edges.reserve(total / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        const std::uint32_t u = stubs[i], v = stubs[i + 1];
        net.edges.emplace_back(u, v);
        if (u == v) ++net.n_self_loops;
    }

    // CSR adjacency; also counts multi-edge copies beyond the first.
    net.offset.assign(n_nodes + 1, 0);
    for (std::uint32_t v = 0; v < n_nodes; ++v)
        net.offset[v + 1] = net.offset[v] + net.degree[v];
    net.neighbor.resize(total);
    std::vector<std::size_t> cursor(net.offset.begin(), net.offset.end() - 1);
    for (const auto& [u, v] : net.edges) {
        net.neighbor[cursor[u]++] = v;
        net.neighbor[cursor[v]++] = u;
    }

    // Multi-edge count: duplicate (u,v) pairs among sorted edge keys.
    {
        std::vector<std::uint64_t> keys;
        keys.reserve(net.edges.size());
        for (const auto& [u, v] : net.edges) {
            const std::uint64_t a = std::min(u, v), b = std::max(u, v);
            keys.push_back((a << 32) | b);
        }
        std::sort(keys.begin(), keys.end());
        for (std::size_t i = 1; i < keys.size(); ++i)
            if (keys[i] == keys[i - 1]) ++net.n_multi_edges;
    }

    net.node_type.assign(n_nodes, -1);
    return net;
}

void assign_types(ContactNetwork& network, const std::vector<double>& m, Rng& rng) {
    const std::size_t M = m.size();
    if (M == 0) throw std::invalid_argument("assign_types: empty prevalence vector");
    std::vector<double> cdf(M);
    double acc = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        acc += m[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    network.node_type.resize(network.n_nodes);
    for (std::uint32_t v = 0; v < network.n_nodes; ++v) {
        const double u = u01(rng);
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        network.node_type[v] =
            static_cast<std::int32_t>(std::min<std::size_t>(it - cdf.begin(), M - 1));
    }
}

void dump_network(const ContactNetwork& network, std::uint32_t num_types,
                  std::ostream& os) {
    os << network.n_nodes << ' ' << num_types << '\n';
    for (std::uint32_t v = 0; v < network.n_nodes; ++v) {
        const std::int32_t t = network.node_type.empty() ? -1 : network.node_type[v];
        os << v << ' ' << t << ' ' << network.degree[v] << '\n';
    }
    for (const auto& [u, v] : network.edges) os << u << ' ' << v << '\n';
}

ContactNetwork load_network(std::istream& is, std::uint32_t* num_types) {
    ContactNetwork net;
    std::uint32_t types = 0;
    if (!(is >> net.n_nodes >> types))
        throw std::runtime_error("load_network: malformed header");
    if (num_types) *num_types = types;

    net.degree.resize(net.n_nodes);
    net.node_type.resize(net.n_nodes);
    for (std::uint32_t i = 0; i < net.n_nodes; ++i) {
        std::uint32_t id;
        if (!(is >> id >> net.node_type[i] >> net.degree[i]) || id != i)
            throw std::runtime_error("load_network: malformed node line " + std::to_string(i));
    }
    std::uint32_t u, v;
    while (is >> u >> v) {
        if (u >= net.n_nodes || v >= net.n_nodes)
            throw std::runtime_error("load_network: edge endpoint out of range");
        net.edges.emplace_back(u, v);
        if (u == v) ++net.n_self_loops;
    }

    net.offset.assign(net.n_nodes + 1, 0);
    for (std::uint32_t i = 0; i < net.n_nodes; ++i)
        net.offset[i + 1] = net.offset[i] + net.degree[i];
    net.neighbor.resize(net.offset.back());
    std::vector<std::size_t> cursor(net.offset.begin(), net.offset.end() - 1);
    for (const auto& [a, b] : net.edges) {
        net.neighbor[cursor[a]++] = b;
        net.neighbor[cursor[b]++] = a;
    }
    for (std::uint32_t i = 0; i < net.n_nodes; ++i)
        if (cursor[i] != net.offset[i + 1])
            throw std::runtime_error("load_network: degree/edge mismatch at node " +
                                     std::to_string(i));
    return net;
}

}  // namespace maskspread
