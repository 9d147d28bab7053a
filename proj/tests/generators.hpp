#pragma once

// Structure generators for property and round-trip tests.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "structlabel/core.hpp"

namespace generators {

inline structlabel::DepStructure tree_from_heads(const std::vector<int>& heads) {
    structlabel::DepStructure d;
    const int n = static_cast<int>(heads.size());
    for (int i = 1; i <= n; ++i) d.sentence.tokens.push_back({"w" + std::to_string(i), "", "", ""});
    for (int i = 1; i <= n; ++i)
        d.arcs.push_back({heads[i - 1], i, "r" + std::to_string((i + heads[i - 1]) % 3)});
    d.normalize();
    return d;
}

// All well-formed dependency trees over n tokens (head vectors with exactly
// one root, acyclic).
inline std::vector<structlabel::DepStructure> all_trees(int n) {
    std::vector<structlabel::DepStructure> out;
    std::vector<int> heads(n, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            structlabel::DepStructure d = tree_from_heads(heads);
            if (structlabel::validate(d).well_formed()) out.push_back(std::move(d));
            return;
        }
        for (int h = 0; h <= n; ++h) {
            if (h == i + 1) continue;
            heads[i] = h;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

inline std::vector<structlabel::DepStructure> filter_projective(
    const std::vector<structlabel::DepStructure>& trees) {
    std::vector<structlabel::DepStructure> out;
    for (const auto& t : trees)
        if (structlabel::is_projective(t)) out.push_back(t);
    return out;
}

inline bool at_most_k_planar(const structlabel::DepStructure& t, int k) {
    return structlabel::assign_planes(t, k, structlabel::PlaneConstraint::SameDirectionNonCrossing)
        .dropped.empty();
}

// Random graph over n tokens: each (h, d) pair independently an arc.
inline structlabel::DepStructure random_graph(int n, std::mt19937_64& rng, double p = 0.25) {
    structlabel::DepStructure d;
    d.kind = structlabel::StructureKind::Graph;
    for (int i = 1; i <= n; ++i) d.sentence.tokens.push_back({"w" + std::to_string(i), "", "", ""});
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int h = 0; h <= n; ++h)
        for (int dep = 1; dep <= n; ++dep)
            if (h != dep && u(rng) < p)
                d.arcs.push_back({h, dep, "r" + std::to_string((h + dep) % 3)});
    d.normalize();
    return d;
}

// Random constituency tree: random binary shape over n leaves, random labels,
// then random unary insertions above internal nodes.
inline structlabel::ConstNode random_const_shape(int lo, int hi, std::mt19937_64& rng,
                                                 const std::vector<std::string>& labels) {
    using structlabel::ConstNode;
    std::uniform_int_distribution<size_t> pick(0, labels.size() - 1);
    if (lo == hi) {
        ConstNode pre{labels[pick(rng)] + "t", 0, {ConstNode{"", lo, {}}}};
        return pre;
    }
    std::uniform_int_distribution<int> split(lo, hi - 1);
    const int mid = split(rng);
    ConstNode node{labels[pick(rng)], 0,
                   {random_const_shape(lo, mid, rng, labels),
                    random_const_shape(mid + 1, hi, rng, labels)}};
    std::uniform_int_distribution<int> unary(0, 3);
    if (unary(rng) == 0) node = ConstNode{labels[pick(rng)], 0, {node}};
    return node;
}

inline structlabel::ConstTree random_const_tree(int n, std::mt19937_64& rng) {
    static const std::vector<std::string> labels = {"S", "NP", "VP", "PP"};
    structlabel::ConstTree t;
    t.root = random_const_shape(1, n, rng, labels);
    return t;
}

// Every binary tree shape over n leaves with a fixed label cycle;
// preterminals wrap each leaf.  N-ary coverage comes from random trees.
inline void enumerate_const_shapes(int lo, int hi, int depth,
                                   const std::function<void(const structlabel::ConstNode&)>& emit) {
    using structlabel::ConstNode;
    static const std::vector<std::string> labels = {"S", "NP", "VP"};
    if (lo == hi) {
        emit(ConstNode{"T" + std::to_string(lo % 2), 0, {ConstNode{"", lo, {}}}});
        return;
    }
    for (int mid = lo; mid < hi; ++mid) {
        enumerate_const_shapes(lo, mid, depth + 1, [&](const ConstNode& left) {
            enumerate_const_shapes(mid + 1, hi, depth + 1, [&](const ConstNode& right) {
                emit(ConstNode{labels[depth % labels.size()], 0, {left, right}});
            });
        });
    }
}

inline std::vector<structlabel::ConstTree> all_const_trees(int n) {
    std::vector<structlabel::ConstTree> out;
    enumerate_const_shapes(1, n, 0, [&](const structlabel::ConstNode& root) {
        structlabel::ConstTree t;
        t.root = root;
        if (!t.root.children.empty() && t.root.label.empty()) return;
        out.push_back(std::move(t));
    });
    // Single-leaf shapes come out as bare preterminals; wrap them.
    for (auto& t : out)
        if (t.root.children.size() == 1 && t.root.children[0].is_leaf())
            t.root = structlabel::ConstNode{"S", 0, {t.root}};
    return out;
}

}  // namespace generators
