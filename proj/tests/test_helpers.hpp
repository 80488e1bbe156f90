#pragma once

#include "reconf/graph.hpp"

namespace reconf::testing {

// Small named graphs shared across the suites.

inline Graph triangle() { return Graph(3, {{0, 1}, {0, 2}, {1, 2}}); }

inline Graph path4() { return Graph(4, {{0, 1}, {1, 2}, {2, 3}}); }

inline Graph k4() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

// k4 minus the 2-3 edge: maximal cliques {0,1,2} and {0,1,3}
inline Graph diamond() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}); }

inline Graph cycle4() { return Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

inline Graph two_disjoint_edges() { return Graph(4, {{0, 1}, {2, 3}}); }

// center 0, leaves 1..3
inline Graph star4() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}}); }

// vertices 0..4 with maximal cliques {0,1,2}, {1,2,3}, {2,3,4}
inline Graph three_triangle_strip() {
    return Graph(5, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}});
}

}  // namespace reconf::testing
