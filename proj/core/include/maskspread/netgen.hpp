#ifndef MASKSPREAD_NETGEN_HPP
#define MASKSPREAD_NETGEN_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "maskspread/rng.hpp"

namespace maskspread {

/// A finite configuration-model graph with per-node mask-type labels.
/// Self-loops and multi-edges from the stub matching are kept, not erased;
/// self-loops are counted so simulation code can treat them as inert.
struct ContactNetwork {
    std::uint32_t n_nodes = 0;
    // Undirected edge list; a self-loop appears once as (u, u).
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    // CSR adjacency over edge endpoints: neighbors of u are
    // neighbor[offset[u] .. offset[u+1]). A self-loop contributes u twice
    // to its own list; multi-edges contribute one entry per copy.
    std::vector<std::size_t> offset;
    std::vector<std::uint32_t> neighbor;
    // Type index per node, in [0, M); -1 while unassigned.
    std::vector<std::int32_t> node_type;
    std::vector<std::uint32_t> degree;  // realized degrees (stub counts)

    std::size_t n_self_loops = 0;
    std::size_t n_multi_edges = 0;

    std::size_t num_edges() const { return edges.size(); }
    bool types_assigned() const { return !node_type.empty() && node_type[0] >= 0; }
};

class DegreeModel;

/// Draws degrees i.i.d. from the model (bumping one uniform node by +1 if
/// the stub total is odd) and matches stubs by a uniform shuffle.
/// Types are left unassigned.
ContactNetwork generate_network(const DegreeModel& model, std::uint32_t n_nodes,
                                Rng& degree_rng, Rng& matching_rng);

/// Assigns each node's type i.i.d. from the prevalence vector m.
void assign_types(ContactNetwork& network, const std::vector<double>& m, Rng& rng);

/// Text dump: "n_nodes M", one "node_id type degree" line per node, one
/// "u v" line per edge. Round-trips bit-exactly.
void dump_network(const ContactNetwork& network, std::uint32_t num_types,
                  std::ostream& os);
ContactNetwork load_network(std::istream& is, std::uint32_t* num_types = nullptr);

}  // namespace maskspread

#endif
