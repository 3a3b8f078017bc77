#include "osc/planarity.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace osc {

bool is_planar(int n, const std::vector<std::pair<int, int>>& edges) {
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                        boost::property<boost::vertex_index_t, int>,
                                        boost::property<boost::edge_index_t, int>>;
    Graph g(static_cast<std::size_t>(n));
    for (const auto& [a, b] : edges) boost::add_edge(static_cast<std::size_t>(a), static_cast<std::size_t>(b), g);
    return boost::boyer_myrvold_planarity_test(g);
}

bool is_planar(const IsingInstance& instance) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(instance.edge_count());
    for (const Edge& e : instance.edges()) edges.emplace_back(e.i, e.j);
    return is_planar(instance.size(), edges);
}

}  // namespace osc
