#include "structlabel/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace structlabel {

void DepStructure::normalize() {
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
        if (a.dep != b.dep) return a.dep < b.dep;
        if (a.head != b.head) return a.head < b.head;
        return a.rel < b.rel;
    });
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
}

bool arcs_cross(const Arc& a, const Arc& b) {
    if (a.head == b.head || a.head == b.dep || a.dep == b.head || a.dep == b.dep) return false;
    const int al = a.left(), ar = a.right();
    const bool h_in = al < b.head && b.head < ar;
    const bool d_in = al < b.dep && b.dep < ar;
    return h_in != d_in;
}

Validity validate(const DepStructure& structure) {
    const int n = structure.size();
    Validity v;

    std::vector<int> in_degree(n + 1, 0);
    int root_arcs = 0;
    for (const Arc& a : structure.arcs) {
        if (a.dep >= 1 && a.dep <= n) ++in_degree[a.dep];
        if (a.head == 0) ++root_arcs;
    }
    v.single_headed = true;
    for (int i = 1; i <= n; ++i)
        if (in_degree[i] != 1) v.single_headed = false;
    v.rooted = root_arcs == 1;

    // Cycle detection over head->dep edges.
    std::vector<std::vector<int>> out(n + 1);
    for (const Arc& a : structure.arcs)
        if (a.head >= 0 && a.head <= n && a.dep >= 1 && a.dep <= n) out[a.head].push_back(a.dep);
    std::vector<int> state(n + 1, 0);  // 0 unseen, 1 on stack, 2 done
    v.acyclic = true;
    std::function<void(int)> dfs = [&](int u) {
        state[u] = 1;
        for (int w : out[u]) {
            if (state[w] == 1) v.acyclic = false;
            else if (state[w] == 0) dfs(w);
        }
        state[u] = 2;
    };
    for (int i = 0; i <= n; ++i)
        if (state[i] == 0) dfs(i);

    // Undirected connectivity over nodes {0..n}.
    std::vector<std::vector<int>> und(n + 1);
    for (const Arc& a : structure.arcs) {
        if (a.head >= 0 && a.head <= n && a.dep >= 1 && a.dep <= n) {
            und[a.head].push_back(a.dep);
            und[a.dep].push_back(a.head);
        }
    }
    std::vector<char> seen(n + 1, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : und[u])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    v.connected = std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    return v;
}

bool is_projective(const DepStructure& tree) {
    if (tree.kind != StructureKind::Tree)
        throw std::invalid_argument("is_projective: expected a tree, got a graph");
    const auto& arcs = tree.arcs;
    for (size_t i = 0; i < arcs.size(); ++i)
        for (size_t j = i + 1; j < arcs.size(); ++j)
            if (arcs_cross(arcs[i], arcs[j])) return false;
    return true;
}

namespace {

bool same_direction(const Arc& a, const Arc& b) { return a.rightward() == b.rightward(); }

bool fits_plane(const Arc& arc, const std::vector<Arc>& plane_arcs, PlaneConstraint constraint) {
    switch (constraint) {
        case PlaneConstraint::NonCrossing:
            for (const Arc& p : plane_arcs)
                if (arcs_cross(arc, p)) return false;
            return true;
        case PlaneConstraint::SameDirectionNonCrossing:
            for (const Arc& p : plane_arcs)
                if (same_direction(arc, p) && arcs_cross(arc, p)) return false;
            return true;
        case PlaneConstraint::FourKBit:
            for (const Arc& p : plane_arcs) {
                if (p.dep == arc.dep) return false;  // one incoming arc per node
                if (same_direction(arc, p) && arcs_cross(arc, p)) return false;
            }
            return true;
        case PlaneConstraint::SixKBit:
            for (const Arc& p : plane_arcs) {
                if (p.dep == arc.dep && same_direction(arc, p)) return false;
                if (same_direction(arc, p) && arcs_cross(arc, p)) return false;
            }
            return true;
    }
    return false;
}

}  // namespace

PlaneAssignment assign_planes(const DepStructure& structure, int k, PlaneConstraint constraint) {
    if (k < 1) throw std::invalid_argument("assign_planes: k must be >= 1");
    DepStructure sorted = structure;
    sorted.normalize();

    PlaneAssignment result;
    result.k = k;
    result.plane.assign(sorted.arcs.size(), 0);
    std::vector<std::vector<Arc>> planes(k);
    for (size_t i = 0; i < sorted.arcs.size(); ++i) {
        const Arc& arc = sorted.arcs[i];
        for (int p = 0; p < k; ++p) {
            if (fits_plane(arc, planes[p], constraint)) {
                planes[p].push_back(arc);
                result.plane[i] = p + 1;
                break;
            }
        }
        if (result.plane[i] == 0) result.dropped.push_back(arc);
    }
    return result;
}

int ConstTree::leaf_count() const {
    int count = 0;
    std::function<void(const ConstNode&)> walk = [&](const ConstNode& node) {
        if (node.is_leaf()) {
            ++count;
            return;
        }
        for (const auto& child : node.children) walk(child);
    };
    walk(root);
    return count;
}

std::vector<int> tree_leaves(const ConstTree& tree) {
    std::vector<int> leaves;
    std::function<void(const ConstNode&)> walk = [&](const ConstNode& node) {
        if (node.is_leaf()) {
            leaves.push_back(node.leaf);
            return;
        }
        for (const auto& child : node.children) walk(child);
    };
    walk(tree.root);
    return leaves;
}

bool leaves_cover(const ConstTree& tree, int n) {
    std::vector<int> leaves = tree_leaves(tree);
    if (static_cast<int>(leaves.size()) != n) return false;
    for (int i = 0; i < n; ++i)
        if (leaves[i] != i + 1) return false;
    return true;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("STRUCTLABEL_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) threads = cap;
    }
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    threads = std::min(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            for (int i = t; i < n; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace structlabel
