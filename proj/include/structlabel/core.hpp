#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace structlabel {

// ---------------------------------------------------------------------------
// Sentences and dependency structures.
//
// Token indices are 1-based; index 0 is the artificial root w0 and never
// appears in `tokens` (tokens[0] is w1).
// ---------------------------------------------------------------------------

struct Token {
    std::string form;
    std::string upos;   // empty when absent
    std::string xpos;   // empty when absent
    std::string feats;  // empty when absent
};

struct Sentence {
    std::string id;
    std::vector<Token> tokens;

    int size() const { return static_cast<int>(tokens.size()); }
};

struct Arc {
    int head = 0;  // in [0, n]
    int dep = 0;   // in [1, n]
    std::string rel;

    auto operator<=>(const Arc&) const = default;

    bool rightward() const { return head < dep; }
    int left() const { return head < dep ? head : dep; }
    int right() const { return head < dep ? dep : head; }
};

enum class StructureKind { Tree, Graph };

struct DepStructure {
    Sentence sentence;
    std::vector<Arc> arcs;  // canonical order: (dep, head, rel)
    StructureKind kind = StructureKind::Tree;

    int size() const { return sentence.size(); }
    // Sorts arcs into canonical order and removes exact duplicates.
    void normalize();
};

// Shared endpoints do not count as crossing.
bool arcs_cross(const Arc& a, const Arc& b);

struct Validity {
    bool single_headed = false;
    bool acyclic = false;
    bool connected = false;
    bool rooted = false;

    bool well_formed() const { return single_headed && acyclic && connected && rooted; }
};

Validity validate(const DepStructure& structure);

// Throws std::invalid_argument on kind=Graph input.
bool is_projective(const DepStructure& tree);

// ---------------------------------------------------------------------------
// Plane assignment.
// ---------------------------------------------------------------------------

enum class PlaneConstraint {
    SameDirectionNonCrossing,  // tree/graph bracketing planes
    NonCrossing,               // no crossings of any direction
    FourKBit,                  // same-direction non-crossing + one incoming arc per node
    SixKBit,                   // same-direction non-crossing + one incoming arc per direction
};

struct PlaneAssignment {
    // Parallel to the structure's (normalized) arc vector; plane ids are
    // 1-based, 0 marks a dropped arc.
    std::vector<int> plane;
    std::vector<Arc> dropped;
    int k = 1;
};

// Greedy assignment: arcs ordered by (dep, head), each placed in the
// lowest-numbered plane where `constraint` still holds.  Deterministic.
PlaneAssignment assign_planes(const DepStructure& structure, int k, PlaneConstraint constraint);

// ---------------------------------------------------------------------------
// Constituency trees.
// ---------------------------------------------------------------------------

struct ConstNode {
    std::string label;  // empty for leaves
    int leaf = 0;       // token index when > 0
    std::vector<ConstNode> children;

    bool is_leaf() const { return leaf > 0; }
    bool operator==(const ConstNode&) const = default;
};

struct ConstTree {
    ConstNode root;
    bool collapsed = false;

    int leaf_count() const;
};

// Leaves read left to right; returns token indices in order.
std::vector<int> tree_leaves(const ConstTree& tree);
// True iff leaves are exactly 1..n in order.
bool leaves_cover(const ConstTree& tree, int n);

struct LabelSequence {
    std::string scheme;
    std::vector<std::string> labels;
};

// Runs fn(i) for i in [0, n); honors STRUCTLABEL_THREADS (default: hardware
// concurrency).  fn must be safe to call concurrently for distinct i.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace structlabel
