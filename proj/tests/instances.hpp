#ifndef F2CS_TESTS_INSTANCES_HPP
#define F2CS_TESTS_INSTANCES_HPP

#include <set>
#include <string>
#include <vector>

#include "f2cs/bcsfr.hpp"
#include "f2cs/coding.hpp"

namespace f2cs::testing {

inline std::string data_path(const std::string& name) {
    return std::string(F2CS_DATA_DIR) + "/" + name;
}

// The 29-coefficient three-symbol multicast with a routing-only source,
// broadcast node t3 and routing node t4 (same wiring as the data file).
inline NetworkSpec routed_broadcast_network() {
    NetworkSpec spec;
    spec.omega = 3;
    auto add = [&spec](const char* id, NodeKind kind, NodeKind cls = NodeKind::general) {
        Node nd;
        nd.id = id;
        nd.kind = kind;
        nd.source_class = cls;
        spec.nodes.push_back(std::move(nd));
    };
    add("s", NodeKind::source, NodeKind::routing);
    add("t1", NodeKind::general);
    add("t2", NodeKind::general);
    add("t3", NodeKind::broadcast);
    add("t4", NodeKind::routing);
    add("u1", NodeKind::user);
    add("u2", NodeKind::user);
    auto e = [&spec](const char* a, const char* b) {
        spec.edges.emplace_back(spec.find_node(a), spec.find_node(b));
    };
    e("s", "t1");
    e("t1", "u1");
    e("t1", "t3");
    e("s", "t4");
    e("s", "t3");
    e("s", "t2");
    e("t2", "t3");
    e("t2", "u2");
    e("t3", "u1");
    e("t3", "t4");
    e("t3", "u2");
    e("t4", "u1");
    e("t4", "u2");
    spec.finalize();
    return spec;
}

inline NetworkSpec butterfly_network() {
    NetworkSpec spec;
    spec.omega = 2;
    auto add = [&spec](const char* id, NodeKind kind,
                       std::vector<std::vector<uint8_t>> matrix = {}) {
        Node nd;
        nd.id = id;
        nd.kind = kind;
        if (kind == NodeKind::source) {
            nd.source_class = NodeKind::constant;
        }
        nd.matrix = std::move(matrix);
        spec.nodes.push_back(std::move(nd));
    };
    add("s", NodeKind::source, {{1, 0}, {0, 1}});
    add("t1", NodeKind::constant, {{1, 1}});
    add("t2", NodeKind::constant, {{1, 1}});
    add("t3", NodeKind::constant, {{1}, {1}});
    add("t4", NodeKind::constant, {{1, 1}});
    add("u1", NodeKind::user);
    add("u2", NodeKind::user);
    auto e = [&spec](const char* a, const char* b) {
        spec.edges.emplace_back(spec.find_node(a), spec.find_node(b));
    };
    e("s", "t1");
    e("s", "t2");
    e("t1", "u1");
    e("t1", "t3");
    e("t2", "t3");
    e("t2", "u2");
    e("t3", "t4");
    e("t4", "u1");
    e("t4", "u2");
    spec.finalize();
    return spec;
}

// Five units, three-subset access, units 2 and 4 under repair.
inline LrcSpec lrc5_spec() {
    LrcSpec lrc;
    lrc.ell = 5;
    lrc.eta = 3;
    lrc.omega = 2;
    lrc.surviving = {1, 3, 5};
    lrc.source_matrix = {{1, 1, 1, 0, 0}, {0, 0, 1, 1, 1}};
    return lrc;
}

inline std::set<uint64_t> result_points(const FeasibleSetResult& r) {
    std::set<uint64_t> out;
    for (const CharSet& cs : r.charsets) {
        cs.for_each_zero(uint64_t(1) << 22, [&](const std::vector<uint8_t>& pt) {
            uint64_t w = 0;
            for (size_t i = 0; i < pt.size(); ++i)
                if (pt[i])
                    w |= uint64_t(1) << i;
            out.insert(w);
        });
    }
    return out;
}

} // namespace f2cs::testing

#endif
