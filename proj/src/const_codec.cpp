#include "structlabel/const_codec.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

namespace structlabel {

namespace {

std::vector<std::string> split_at(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

ConstNode collapse_node(const ConstNode& node) {
    if (node.is_leaf()) return node;
    ConstNode result = node;
    // Merge chains of single nonterminal children into one ':' joined label.
    while (result.children.size() == 1 && !result.children[0].is_leaf()) {
        ConstNode child = result.children[0];
        result.label += ":" + child.label;
        result.children = child.children;
    }
    for (auto& child : result.children) child = collapse_node(child);
    return result;
}

ConstNode expand_node(const ConstNode& node) {
    if (node.is_leaf()) return node;
    ConstNode result = node;
    for (auto& child : result.children) child = expand_node(child);
    std::vector<std::string> parts = split_at(result.label, ':');
    bool usable = parts.size() > 1 &&
                  std::all_of(parts.begin(), parts.end(), [](const std::string& p) { return !p.empty(); });
    if (!usable) return result;
    ConstNode chain;
    chain.label = parts.back();
    chain.children = result.children;
    for (int i = static_cast<int>(parts.size()) - 2; i >= 0; --i) {
        ConstNode wrap;
        wrap.label = parts[i];
        wrap.children.push_back(chain);
        chain = wrap;
    }
    return chain;
}

ConstNode binarize_children(const std::string& marker, const std::vector<ConstNode>& kids, size_t from);

ConstNode binarize_node(const ConstNode& node) {
    if (node.is_leaf()) return node;
    ConstNode result = node;
    for (auto& child : result.children) child = binarize_node(child);
    if (result.children.size() > 2) {
        ConstNode folded;
        folded.label = result.label;
        folded.children.push_back(result.children[0]);
        folded.children.push_back(binarize_children(result.label + "|", result.children, 1));
        return folded;
    }
    return result;
}

ConstNode binarize_children(const std::string& marker, const std::vector<ConstNode>& kids, size_t from) {
    ConstNode node;
    node.label = marker;
    if (kids.size() - from == 2) {
        node.children.push_back(kids[from]);
        node.children.push_back(kids[from + 1]);
    } else {
        node.children.push_back(kids[from]);
        node.children.push_back(binarize_children(marker, kids, from + 1));
    }
    return node;
}

ConstNode debinarize_node(const ConstNode& node) {
    if (node.is_leaf()) return node;
    ConstNode result;
    result.label = node.label;
    result.leaf = node.leaf;
    for (const auto& child : node.children) {
        ConstNode flat = debinarize_node(child);
        if (!flat.is_leaf() && !flat.label.empty() && flat.label.back() == '|') {
            for (auto& grand : flat.children) result.children.push_back(std::move(grand));
        } else {
            result.children.push_back(std::move(flat));
        }
    }
    return result;
}

bool is_preterminal(const ConstNode& node) {
    return !node.is_leaf() && node.children.size() == 1 && node.children[0].is_leaf();
}

// Root-to-parent constituent path per leaf (nodes with >= 2 children only).
void collect_paths(const ConstNode& node, std::vector<const ConstNode*>& prefix,
                   std::vector<std::vector<const ConstNode*>>& paths) {
    if (node.is_leaf()) {
        paths.push_back(prefix);
        return;
    }
    const bool constituent = node.children.size() >= 2;
    if (constituent) prefix.push_back(&node);
    for (const auto& child : node.children) collect_paths(child, prefix, paths);
    if (constituent) prefix.pop_back();
}

}  // namespace

ConstTree collapse_unary(const ConstTree& tree) {
    if (tree.collapsed) return tree;
    return ConstTree{collapse_node(tree.root), true};
}

ConstTree expand_unary(const ConstTree& tree) {
    return ConstTree{expand_node(tree.root), false};
}

ConstTree binarize(const ConstTree& tree) {
    ConstTree collapsed = collapse_unary(tree);
    return ConstTree{binarize_node(collapsed.root), true};
}

ConstTree debinarize(const ConstTree& tree) {
    return ConstTree{debinarize_node(tree.root), tree.collapsed};
}

std::vector<std::string> preterminal_labels(const ConstTree& collapsed) {
    std::vector<std::pair<int, std::string>> found;
    std::function<void(const ConstNode&)> walk = [&](const ConstNode& node) {
        if (node.is_leaf()) {
            found.emplace_back(node.leaf, "");
            return;
        }
        if (is_preterminal(node)) {
            found.emplace_back(node.children[0].leaf, node.label);
            return;
        }
        for (const auto& child : node.children) walk(child);
    };
    walk(collapsed.root);
    std::sort(found.begin(), found.end());
    std::vector<std::string> labels;
    labels.reserve(found.size());
    for (auto& [leaf, label] : found) labels.push_back(label);
    return labels;
}

Sentence sentence_for(const ConstTree& collapsed) {
    Sentence sent;
    sent.id = "t";
    std::vector<std::string> preterms = preterminal_labels(collapsed);
    for (size_t i = 0; i < preterms.size(); ++i)
        sent.tokens.push_back({"w" + std::to_string(i + 1), "", preterms[i], ""});
    return sent;
}

// ---------------------------------------------------------------------------
// Absolute / relative encodings
// ---------------------------------------------------------------------------

namespace {

// p_i (shared-constituent counts) and c_i (lowest shared label) per fencepost.
void fence_levels(const ConstTree& collapsed, std::vector<int>& depth, std::vector<std::string>& label) {
    std::vector<std::vector<const ConstNode*>> paths;
    std::vector<const ConstNode*> prefix;
    collect_paths(collapsed.root, prefix, paths);
    const size_t n = paths.size();
    depth.clear();
    label.clear();
    for (size_t i = 0; i + 1 < n; ++i) {
        size_t shared = 0;
        while (shared < paths[i].size() && shared < paths[i + 1].size() &&
               paths[i][shared] == paths[i + 1][shared])
            ++shared;
        depth.push_back(static_cast<int>(shared));
        label.push_back(shared > 0 ? paths[i][shared - 1]->label : std::string());
    }
}

}  // namespace

LabelSequence encode_absolute_const(const ConstTree& tree) {
    ConstTree collapsed = collapse_unary(tree);
    std::vector<int> depth;
    std::vector<std::string> label;
    fence_levels(collapsed, depth, label);
    LabelSequence seq;
    seq.scheme = "const-abs";
    for (size_t i = 0; i < depth.size(); ++i)
        seq.labels.push_back(std::to_string(depth[i]) + "@" + label[i]);
    return seq;
}

LabelSequence encode_relative_const(const ConstTree& tree) {
    LabelSequence abs = encode_absolute_const(tree);
    LabelSequence seq;
    seq.scheme = "const-rel";
    int prev = 0;
    for (size_t i = 0; i < abs.labels.size(); ++i) {
        auto at = abs.labels[i].find('@');
        int p = std::stoi(abs.labels[i].substr(0, at));
        int dp = i == 0 ? p : p - prev;
        seq.labels.push_back(std::to_string(dp) + "@" + abs.labels[i].substr(at + 1));
        prev = p;
    }
    return seq;
}

namespace {

// Arena-based bottom tree used while decoding.  Child handles: >= 0 arena
// index, < 0 leaf token -handle.
struct Arena {
    struct Node {
        std::string label;
        bool labeled = false;
        std::vector<int> children;
    };
    std::vector<Node> nodes;

    int fresh() {
        nodes.push_back({});
        return static_cast<int>(nodes.size()) - 1;
    }
};

int leaf_unit(Arena& arena, int token, const Sentence& sentence) {
    const std::string& preterm =
        token <= sentence.size() ? sentence.tokens[token - 1].xpos : std::string();
    if (preterm.empty()) return -token;
    int idx = arena.fresh();
    arena.nodes[idx].label = preterm;
    arena.nodes[idx].labeled = true;
    arena.nodes[idx].children.push_back(-token);
    return idx;
}

ConstNode materialize(const Arena& arena, int handle, int* repairs) {
    if (handle < 0) {
        ConstNode leaf;
        leaf.leaf = -handle;
        return leaf;
    }
    const Arena::Node& src = arena.nodes[handle];
    ConstNode node;
    node.label = src.label;
    if (!src.labeled) {
        node.label = "X";
        if (repairs) ++*repairs;
    }
    for (int child : src.children) node.children.push_back(materialize(arena, child, repairs));
    return node;
}

ConstDecodeResult decode_levels(const std::vector<int>& depth, const std::vector<std::string>& label,
                                const Sentence& sentence, int repairs) {
    const int n = sentence.size();
    Arena arena;
    std::vector<int> open;  // arena handles, outermost first
    int root = -1;          // handle of the outermost internal node

    auto attach = [&](int parent, int child) { arena.nodes[parent].children.push_back(child); };

    ConstDecodeResult result;
    if (n == 0) {
        result.repairs = repairs;
        return result;
    }
    if (n == 1) {
        // No fenceposts: the pre-terminal (or a stub) is the root.
        int leaf = leaf_unit(arena, 1, sentence);
        if (leaf < 0) {
            int idx = arena.fresh();
            arena.nodes[idx].children.push_back(leaf);
            ++repairs;
            leaf = idx;
        }
        result.tree.root = materialize(arena, leaf, &repairs);
        result.tree.collapsed = true;
        result.repairs = repairs;
        return result;
    }

    for (int i = 1; i <= n; ++i) {
        int target = i < n ? depth[i - 1] : 0;
        if (i < n && target < 1) {
            target = 1;
            ++repairs;
        }
        int leaf = leaf_unit(arena, i, sentence);
        int cur = static_cast<int>(open.size());
        if (target > cur) {
            for (int d = cur; d < target; ++d) {
                int idx = arena.fresh();
                if (open.empty()) {
                    if (root < 0) root = idx;
                } else {
                    attach(open.back(), idx);
                }
                open.push_back(idx);
            }
            attach(open.back(), leaf);
        } else {
            if (open.empty()) {
                int idx = arena.fresh();
                if (root < 0) root = idx;
                open.push_back(idx);
                ++repairs;
            }
            attach(open.back(), leaf);
            while (static_cast<int>(open.size()) > std::max(target, i < n ? 1 : 0)) open.pop_back();
        }
        if (i < n) {
            Arena::Node& lca = arena.nodes[open[target - 1]];
            if (!lca.labeled) {
                lca.label = label[i - 1];
                lca.labeled = true;
            } else if (lca.label != label[i - 1]) {
                ++repairs;  // conflicting assignment; keep the first
            }
        }
    }

    result.repairs = repairs;
    result.tree.root = materialize(arena, root, &result.repairs);
    result.tree.collapsed = true;
    return result;
}

}  // namespace

ConstDecodeResult decode_absolute_const(const LabelSequence& labels, const Sentence& sentence) {
    const int n = sentence.size();
    if (static_cast<int>(labels.labels.size()) != std::max(0, n - 1))
        throw std::invalid_argument("decode_absolute_const: expected " + std::to_string(n - 1) +
                                    " labels, got " + std::to_string(labels.labels.size()));
    std::vector<int> depth;
    std::vector<std::string> label;
    int repairs = 0;
    for (const std::string& raw : labels.labels) {
        auto at = raw.find('@');
        int p = 1;
        try {
            p = std::stoi(raw.substr(0, at));
        } catch (const std::exception&) {
            ++repairs;
        }
        depth.push_back(p);
        label.push_back(at == std::string::npos ? "X" : raw.substr(at + 1));
    }
    return decode_levels(depth, label, sentence, repairs);
}

ConstDecodeResult decode_relative_const(const LabelSequence& labels, const Sentence& sentence) {
    const int n = sentence.size();
    if (static_cast<int>(labels.labels.size()) != std::max(0, n - 1))
        throw std::invalid_argument("decode_relative_const: expected " + std::to_string(n - 1) +
                                    " labels, got " + std::to_string(labels.labels.size()));
    LabelSequence abs;
    abs.scheme = "const-abs";
    int level = 0;
    for (const std::string& raw : labels.labels) {
        auto at = raw.find('@');
        int dp = 0;
        try {
            dp = std::stoi(raw.substr(0, at));
        } catch (const std::exception&) {
        }
        level += dp;
        abs.labels.push_back(std::to_string(level) + "@" +
                             (at == std::string::npos ? std::string("X") : raw.substr(at + 1)));
    }
    return decode_absolute_const(abs, sentence);
}

// ---------------------------------------------------------------------------
// Tetratagging
// ---------------------------------------------------------------------------

namespace {

struct TetraEvents {
    std::vector<bool> leaf_is_left;
    std::vector<bool> fence_is_left;
    std::vector<std::string> fence_label;
};

bool is_leaf_unit(const ConstNode& node) { return node.is_leaf() || is_preterminal(node); }

void tetra_walk(const ConstNode& node, bool is_left, TetraEvents& ev) {
    if (is_leaf_unit(node)) {
        ev.leaf_is_left.push_back(is_left);
        return;
    }
    tetra_walk(node.children[0], true, ev);
    ev.fence_is_left.push_back(is_left);
    ev.fence_label.push_back(node.label);
    tetra_walk(node.children.size() > 1 ? node.children[1] : node.children[0], false, ev);
}

}  // namespace

LabelSequence encode_tetra(const ConstTree& tree) {
    ConstTree binary = binarize(tree);
    LabelSequence seq;
    seq.scheme = "tetra";
    if (is_leaf_unit(binary.root)) {
        seq.labels.push_back(std::string(kTagRight) + "@@");
        return seq;
    }
    TetraEvents ev;
    tetra_walk(binary.root, /*is_left=*/true, ev);  // the root acts as a left child
    const size_t n = ev.leaf_is_left.size();
    for (size_t i = 0; i < n; ++i) {
        std::string tag = ev.leaf_is_left[i] ? kTagLeft : kTagRight;
        if (i + 1 < n)
            seq.labels.push_back(tag + "@" + (ev.fence_is_left[i] ? kFenceLeft : kFenceRight) + "@" +
                                 ev.fence_label[i]);
        else
            seq.labels.push_back(tag + "@@");
    }
    return seq;
}

ConstDecodeResult decode_tetra(const LabelSequence& labels, const Sentence& sentence) {
    const int n = sentence.size();
    if (static_cast<int>(labels.labels.size()) != n)
        throw std::invalid_argument("decode_tetra: expected " + std::to_string(n) + " labels, got " +
                                    std::to_string(labels.labels.size()));
    ConstDecodeResult result;
    if (n == 0) return result;

    Arena arena;
    struct El {
        int handle;
        int slot;  // arena index owning the open right slot, -1 when complete
    };
    std::vector<El> stack;
    int repairs = 0;

    // Child handles are arena indices (>= 0) or leaf tokens (< 0); kNoChild
    // marks the underflow case where no left child exists.
    constexpr int kNoChild = std::numeric_limits<int>::min();
    auto push_internal = [&](const std::string& c, int left_child) {
        int idx = arena.fresh();
        arena.nodes[idx].label = c;
        arena.nodes[idx].labeled = true;
        if (left_child != kNoChild) arena.nodes[idx].children.push_back(left_child);
        return idx;
    };

    for (int i = 1; i <= n; ++i) {
        std::vector<std::string> parts = split_at(labels.labels[i - 1], '@');
        parts.resize(3);
        const std::string& tag = parts[0];
        const std::string& fence = parts[1];
        const std::string& cons = parts[2];

        int leaf = leaf_unit(arena, i, sentence);
        if (tag == kTagRight && !stack.empty() && stack.back().slot >= 0) {
            arena.nodes[stack.back().slot].children.push_back(leaf);
            stack.back().slot = -1;
        } else {
            if (tag == kTagRight && n > 1) ++repairs;  // underflow: fall back to a shift
            if (tag != kTagRight && tag != kTagLeft) ++repairs;
            stack.push_back({leaf, -1});
        }

        if (i == n) break;
        if (fence != kFenceLeft && fence != kFenceRight) {
            ++repairs;  // missing fence: skip, the leaf stays pending
            continue;
        }
        int left_child = kNoChild;
        if (!stack.empty()) {
            El top = stack.back();
            stack.pop_back();
            if (top.slot >= 0) ++repairs;  // incomplete element consumed as-is
            left_child = top.handle;
        } else {
            ++repairs;
        }
        int idx = push_internal(cons, left_child);
        if (fence == kFenceLeft) {
            stack.push_back({idx, idx});
        } else if (!stack.empty() && stack.back().slot >= 0) {
            arena.nodes[stack.back().slot].children.push_back(idx);
            stack.back().slot = idx;
        } else {
            ++repairs;  // nothing to graft into: keep as a standalone element
            stack.push_back({idx, idx});
        }
    }

    // Merge whatever remains into a single tree.
    El merged = stack.front();
    for (size_t i = 1; i < stack.size(); ++i) {
        if (merged.slot >= 0) {
            arena.nodes[merged.slot].children.push_back(stack[i].handle);
            merged.slot = stack[i].slot;
        } else {
            int idx = push_internal("X", merged.handle);
            arena.nodes[idx].children.push_back(stack[i].handle);
            merged = {idx, stack[i].slot};
            ++repairs;
        }
    }
    if (merged.slot >= 0 && n > 1) ++repairs;

    ConstNode root = materialize(arena, merged.handle, &repairs);
    // Splice internal nodes left with a single internal child (invalid input).
    std::function<ConstNode(const ConstNode&)> splice = [&](const ConstNode& node) {
        if (node.is_leaf()) return node;
        ConstNode out = node;
        for (auto& child : out.children) child = splice(child);
        if (out.children.size() == 1 && !out.children[0].is_leaf()) {
            ++repairs;
            return out.children[0];
        }
        return out;
    };
    root = splice(root);
    if (root.is_leaf()) {
        ConstNode wrap;
        wrap.label = "X";
        wrap.children.push_back(root);
        root = wrap;
        if (n > 1) ++repairs;
    }

    result.tree = debinarize(ConstTree{root, true});
    result.repairs = repairs;
    return result;
}

}  // namespace structlabel
