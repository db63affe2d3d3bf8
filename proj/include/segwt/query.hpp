#pragma once

#include <cstddef>
#include <vector>

namespace segwt {

// Local variables of a traversal at one visited node with y-range [a, b].
//
//   l, r  binary tree: segments of the node whose left (resp. right) endpoint
//         is at or before the query line (access: before the segment's own
//         endpoints). Delta tree access: endpoints of the node at or before
//         x_l (resp. x_r).
//   i     endpoints of the node at or before the query line; l + r in the
//         binary tree.
//   jbar  crossing segments with y < a.
//   j     rank of the target among the node's crossing segments (select only).
struct QueryCursor {
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t l = 0;
    std::size_t r = 0;
    std::size_t i = 0;
    std::size_t jbar = 0;
    std::size_t j = 0;

    friend bool operator==(const QueryCursor&, const QueryCursor&) = default;
};

// Per-query diagnostics. Pass a fresh (or reset) instance to a query.
struct QueryStats {
    std::size_t node_visits = 0;
    std::size_t slab_ops = 0;
    bool record_trace = false;
    std::vector<QueryCursor> trace;  // in visiting order

    void reset() {
        node_visits = 0;
        slab_ops = 0;
        trace.clear();
    }
};

}  // namespace segwt
