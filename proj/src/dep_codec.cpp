#include "structlabel/dep_codec.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "bracket_util.hpp"
#include "structlabel/const_codec.hpp"

namespace structlabel {

namespace {

constexpr const char* kMissingRel = "_";

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

// Two-component split at the first '@' only; rel strings keep further '@'s.
std::pair<std::string, std::string> split2(const std::string& s) {
    auto at = s.find('@');
    if (at == std::string::npos) return {s, kMissingRel};
    return {s.substr(0, at), s.substr(at + 1)};
}

// heads[i]/rels[i] views of a well-formed tree; first-wins on duplicates.
void head_view(const DepStructure& tree, std::vector<int>& heads, std::vector<std::string>& rels) {
    const int n = tree.size();
    heads.assign(n + 1, -1);
    rels.assign(n + 1, kMissingRel);
    for (const Arc& a : tree.arcs) {
        if (a.dep < 1 || a.dep > n || a.head < 0 || a.head > n) continue;
        if (heads[a.dep] != -1) continue;
        heads[a.dep] = a.head;
        rels[a.dep] = a.rel;
    }
}

std::string first_rel_component(const std::string& rel) {
    auto bar = rel.find('|');
    return bar == std::string::npos ? rel : rel.substr(0, bar);
}

bool dominated_by(const std::vector<int>& heads, int t, int h) {
    int steps = static_cast<int>(heads.size()) + 1;
    for (int j = t; j >= 1 && steps-- > 0; j = heads[j])
        if (j == h) return true;
    return h == 0;
}

DepStructure tree_from_views(const Sentence& sentence, const std::vector<int>& heads,
                             const std::vector<std::string>& rels) {
    DepStructure out;
    out.sentence = sentence;
    out.kind = StructureKind::Tree;
    for (int i = 1; i <= static_cast<int>(heads.size()) - 1; ++i)
        out.arcs.push_back({heads[i], i, rels[i]});
    out.normalize();
    return out;
}

}  // namespace

DepStructure finish_tree(const Sentence& sentence, std::vector<int> heads,
                         std::vector<std::string> rels, int& repairs) {
    const int n = sentence.size();
    heads.resize(n + 1, -1);
    rels.resize(n + 1, kMissingRel);

    int root = -1;
    for (int i = 1; i <= n; ++i) {
        if (heads[i] < 0 || heads[i] > n || heads[i] == i) {
            heads[i] = (root == -1) ? 0 : i - 1;
            ++repairs;
        }
        if (heads[i] == 0) {
            if (root == -1) {
                root = i;
            } else {
                heads[i] = i - 1;  // i >= 2 here: the first root precedes it
                ++repairs;
            }
        }
    }
    if (root == -1) {
        heads[1] = 0;
        root = 1;
        ++repairs;
    }

    // Re-hang the smallest node of each remaining cycle on the root token.
    std::vector<int> state(n + 1, 0);  // 0 unseen, 1 on path, 2 reaches w0
    state[0] = 2;
    for (int i = 1; i <= n; ++i) {
        if (state[i] != 0) continue;
        std::vector<int> path;
        int j = i;
        while (state[j] == 0) {
            state[j] = 1;
            path.push_back(j);
            j = heads[j];
        }
        if (state[j] == 1) {
            auto entry = std::find(path.begin(), path.end(), j);
            int c = *std::min_element(entry, path.end());
            heads[c] = root;
            ++repairs;
        }
        for (int node : path) state[node] = 2;
    }
    return tree_from_views(sentence, heads, rels);
}

// ---------------------------------------------------------------------------
// Absolute
// ---------------------------------------------------------------------------

DepEncodeResult encode_absolute_dep(const DepStructure& tree) {
    std::vector<int> heads;
    std::vector<std::string> rels;
    head_view(tree, heads, rels);
    DepEncodeResult out;
    out.labels.scheme = "dep-abs";
    for (int i = 1; i <= tree.size(); ++i)
        out.labels.labels.push_back(std::to_string(heads[i]) + "@" + rels[i]);
    return out;
}

DepDecodeResult decode_absolute_dep(const LabelSequence& labels, const Sentence& sentence) {
    const int n = sentence.size();
    std::vector<int> heads(n + 1, -1);
    std::vector<std::string> rels(n + 1, kMissingRel);
    DepDecodeResult out;
    for (int i = 1; i <= n && i <= static_cast<int>(labels.labels.size()); ++i) {
        auto [x, rel] = split2(labels.labels[i - 1]);
        rels[i] = rel;
        try {
            heads[i] = std::stoi(x);
        } catch (const std::exception&) {
            heads[i] = -1;
        }
    }
    out.structure = finish_tree(sentence, std::move(heads), std::move(rels), out.repairs);
    return out;
}

// ---------------------------------------------------------------------------
// Pseudo-projectivization (head variant)
// ---------------------------------------------------------------------------

PprojResult pseudo_projectivize(const DepStructure& tree) {
    const int n = tree.size();
    std::vector<int> heads;
    std::vector<std::string> rels;
    head_view(tree, heads, rels);

    PprojResult result;
    for (int round = 0; round < n * n + n + 1; ++round) {
        int best = -1, best_span = 0;
        for (int d = 1; d <= n; ++d) {
            const int h = heads[d];
            if (h <= 0) continue;
            const int lo = std::min(h, d), hi = std::max(h, d);
            bool offending = false;
            for (int t = lo + 1; t < hi && !offending; ++t)
                if (!dominated_by(heads, t, h)) offending = true;
            if (!offending) continue;
            const int span = hi - lo;
            if (best == -1 || span < best_span || (span == best_span && d < best)) {
                best = d;
                best_span = span;
            }
        }
        if (best == -1) break;
        const int h = heads[best];
        const int g = heads[h];
        if (g < 0 || g == best) break;  // malformed input; leave as-is
        if (rels[best].find('|') == std::string::npos)
            rels[best] += "|" + first_rel_component(rels[h]);
        heads[best] = g;
        ++result.lifts;
    }
    result.tree = tree_from_views(tree.sentence, heads, rels);
    return result;
}

DepStructure deprojectivize(const DepStructure& tree) {
    const int n = tree.size();
    std::vector<int> heads;
    std::vector<std::string> rels;
    head_view(tree, heads, rels);

    std::vector<int> depth(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        int d = 0, j = i, steps = n + 1;
        while (j >= 1 && steps-- > 0) {
            ++d;
            j = heads[j];
        }
        depth[i] = d;
    }
    std::vector<int> annotated;
    for (int i = 1; i <= n; ++i)
        if (rels[i].find('|') != std::string::npos) annotated.push_back(i);
    std::sort(annotated.begin(), annotated.end(),
              [&](int a, int b) { return depth[a] != depth[b] ? depth[a] < depth[b] : a < b; });

    for (int d : annotated) {
        const auto bar = rels[d].find('|');
        const std::string r1 = rels[d].substr(0, bar);
        const std::string r2 = rels[d].substr(bar + 1);
        const int g = heads[d];

        std::vector<std::vector<int>> kids(n + 1);
        for (int i = 1; i <= n; ++i)
            if (heads[i] >= 0 && heads[i] <= n && i != d) kids[heads[i]].push_back(i);
        std::deque<int> queue;
        if (g >= 0 && g <= n)
            for (int c : kids[g]) queue.push_back(c);
        int target = -1;
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            if (first_rel_component(rels[x]) == r2) {
                target = x;
                break;
            }
            for (int c : kids[x]) queue.push_back(c);
        }
        if (target != -1 && target != d) heads[d] = target;
        rels[d] = r1;
    }
    return tree_from_views(tree.sentence, heads, rels);
}

// ---------------------------------------------------------------------------
// Bracketing (2-planar)
// ---------------------------------------------------------------------------

namespace {

// Per-token bracket symbols from a plane assignment; dropped arcs excluded.
std::vector<std::vector<detail::BracketSym>> bracket_symbols(const DepStructure& normalized,
                                                             const PlaneAssignment& planes) {
    std::vector<std::vector<detail::BracketSym>> syms(normalized.size() + 1);
    for (size_t a = 0; a < normalized.arcs.size(); ++a) {
        const int p = planes.plane[a];
        if (p == 0) continue;
        const Arc& arc = normalized.arcs[a];
        if (arc.rightward()) {
            if (arc.head >= 1) syms[arc.head].push_back({'/', p, arc.dep});
            syms[arc.dep].push_back({'>', p, arc.head});
        } else {
            syms[arc.dep].push_back({'<', p, arc.head});
            syms[arc.head].push_back({'\\', p, arc.dep});
        }
    }
    return syms;
}

}  // namespace

DepEncodeResult encode_bracketing_dep(const DepStructure& tree) {
    DepStructure sorted = tree;
    sorted.normalize();
    PlaneAssignment planes = assign_planes(sorted, 2, PlaneConstraint::SameDirectionNonCrossing);

    std::vector<std::string> rels(sorted.size() + 1, kMissingRel);
    for (size_t a = 0; a < sorted.arcs.size(); ++a)
        if (planes.plane[a] != 0) rels[sorted.arcs[a].dep] = sorted.arcs[a].rel;

    auto syms = bracket_symbols(sorted, planes);
    DepEncodeResult out;
    out.labels.scheme = "dep-brk";
    out.dropped = planes.dropped;
    for (int i = 1; i <= sorted.size(); ++i)
        out.labels.labels.push_back(detail::render_brackets(syms[i]) + "@" + rels[i]);
    return out;
}

DepDecodeResult decode_bracketing_dep(const LabelSequence& labels, const Sentence& sentence) {
    const int n = sentence.size();
    const int kPlanes = 2;
    std::vector<std::vector<int>> right_open(kPlanes + 1), left_open(kPlanes + 1);
    std::vector<int> heads(n + 1, -1);
    std::vector<std::string> rels(n + 1, kMissingRel);
    DepDecodeResult out;

    auto take_head = [&](int dep, int head) {
        if (heads[dep] != -1) {
            ++out.discarded;
            return;
        }
        heads[dep] = head;
    };

    for (int i = 1; i <= n; ++i) {
        std::string sym;
        if (i <= static_cast<int>(labels.labels.size())) {
            auto [x, rel] = split2(labels.labels[i - 1]);
            sym = x;
            rels[i] = rel;
        }
        for (auto [c, plane] : detail::parse_brackets(sym, &out.discarded)) {
            if (plane > kPlanes) {
                ++out.discarded;
                continue;
            }
            switch (c) {
                case '/':
                    right_open[plane].push_back(i);
                    break;
                case '<':
                    left_open[plane].push_back(i);
                    break;
                case '>':
                    // Empty stack means a head at w0: arcs from the root are
                    // rendered with no opener (w0 carries no label).
                    if (right_open[plane].empty()) {
                        take_head(i, 0);
                    } else {
                        take_head(i, right_open[plane].back());
                        right_open[plane].pop_back();
                    }
                    break;
                case '\\':
                    if (left_open[plane].empty()) {
                        ++out.discarded;
                    } else {
                        take_head(left_open[plane].back(), i);
                        left_open[plane].pop_back();
                    }
                    break;
            }
        }
    }
    for (int p = 1; p <= kPlanes; ++p)
        out.discarded += static_cast<int>(right_open[p].size() + left_open[p].size());
    out.structure = finish_tree(sentence, std::move(heads), std::move(rels), out.repairs);
    return out;
}

// ---------------------------------------------------------------------------
// 4-bit
// ---------------------------------------------------------------------------

namespace {

struct DepSides {
    std::vector<std::vector<int>> deps;  // deps[h] ascending
    bool outermost(int h, int d) const {
        int farthest = d;
        for (int x : deps[h])
            if ((x < h) == (d < h) && std::abs(x - h) > std::abs(farthest - h)) farthest = x;
        return farthest == d;
    }
    bool has_left(int i) const {
        return !deps[i].empty() && deps[i].front() < i;
    }
    bool has_right(int i) const {
        return !deps[i].empty() && deps[i].back() > i;
    }
};

DepSides side_view(int n, const std::vector<int>& heads) {
    DepSides s;
    s.deps.assign(n + 1, {});
    for (int i = 1; i <= n; ++i)
        if (heads[i] >= 0 && heads[i] <= n) s.deps[heads[i]].push_back(i);
    return s;
}

struct Bits4Decoder {
    // right_heads holds tokens awaiting right dependents; left_pending holds
    // tokens awaiting a head on their right.
    std::vector<int> right_heads, left_pending;
    std::vector<int>* heads;
    const std::vector<std::string>* bits;  // per-token bit strings (4 or 6 wide views)
    int* discarded;

    bool bit(int token, int idx) const {
        const std::string& b = (*bits)[token];
        return idx < static_cast<int>(b.size()) && b[idx] == '1';
    }

    void attach_left_parent(int i, bool outermost) {
        (*heads)[i] = right_heads.empty() ? 0 : right_heads.back();
        if (outermost && !right_heads.empty()) right_heads.pop_back();
    }

    void pop_left_group(int i, int stop_bit) {
        if (left_pending.empty()) {
            ++*discarded;
            return;
        }
        while (!left_pending.empty()) {
            int d = left_pending.back();
            left_pending.pop_back();
            (*heads)[d] = i;
            if (bit(d, stop_bit)) return;  // outermost left dependent reached
        }
        ++*discarded;  // group had no outermost marker
    }
};

}  // namespace

DepEncodeResult encode_4bit(const DepStructure& tree) {
    DepEncodeResult out;
    out.labels.scheme = "dep-4b";

    DepStructure input = tree;
    if (!is_projective(input)) {
        PprojResult pp = pseudo_projectivize(input);
        input = pp.tree;
        out.lifts = pp.lifts;
    }

    const int n = input.size();
    std::vector<int> heads;
    std::vector<std::string> rels;
    head_view(input, heads, rels);
    DepSides sides = side_view(n, heads);

    for (int i = 1; i <= n; ++i) {
        const int h = heads[i];
        std::string b = "0000";
        if (h >= 0 && h < i) b[0] = '1';
        if (h >= 0 && sides.outermost(h, i)) b[1] = '1';
        if (sides.has_left(i)) b[2] = '1';
        if (sides.has_right(i)) b[3] = '1';
        out.labels.labels.push_back(b + "@" + rels[i]);
    }
    return out;
}

DepDecodeResult decode_4bit(const LabelSequence& labels, const Sentence& sentence) {
    const int n = sentence.size();
    std::vector<int> heads(n + 1, -1);
    std::vector<std::string> rels(n + 1, kMissingRel);
    std::vector<std::string> bits(n + 1);
    DepDecodeResult out;

    for (int i = 1; i <= n && i <= static_cast<int>(labels.labels.size()); ++i) {
        auto [x, rel] = split2(labels.labels[i - 1]);
        rels[i] = rel;
        for (char& c : x)
            if (c != '0' && c != '1') {
                c = '0';
                ++out.discarded;
            }
        bits[i] = x;
    }

    Bits4Decoder dec{{}, {}, &heads, &bits, &out.discarded};
    for (int i = 1; i <= n; ++i) {
        if (dec.bit(i, 0))
            dec.attach_left_parent(i, dec.bit(i, 1));
        if (dec.bit(i, 2)) dec.pop_left_group(i, 1);
        if (!dec.bit(i, 0)) dec.left_pending.push_back(i);
        if (dec.bit(i, 3)) dec.right_heads.push_back(i);
    }
    out.structure = finish_tree(sentence, std::move(heads), std::move(rels), out.repairs);
    out.structure = deprojectivize(out.structure);
    return out;
}

// ---------------------------------------------------------------------------
// 7-bit
// ---------------------------------------------------------------------------

DepEncodeResult encode_7bit(const DepStructure& tree) {
    DepStructure sorted = tree;
    sorted.normalize();
    const int n = sorted.size();
    PlaneAssignment planes = assign_planes(sorted, 2, PlaneConstraint::SameDirectionNonCrossing);

    std::vector<int> heads(n + 1, -1), head_plane(n + 1, 0);
    std::vector<std::string> rels(n + 1, kMissingRel);
    std::vector<DepSides> sides(3);
    for (int p = 1; p <= 2; ++p) sides[p].deps.assign(n + 1, {});
    for (size_t a = 0; a < sorted.arcs.size(); ++a) {
        const int p = planes.plane[a];
        if (p == 0) continue;
        const Arc& arc = sorted.arcs[a];
        heads[arc.dep] = arc.head;
        head_plane[arc.dep] = p;
        rels[arc.dep] = arc.rel;
        sides[p].deps[arc.head].push_back(arc.dep);
    }

    DepEncodeResult out;
    out.labels.scheme = "dep-7b";
    out.dropped = planes.dropped;
    for (int i = 1; i <= n; ++i) {
        std::string b = "0000000";
        const int h = heads[i], p = head_plane[i];
        if (h >= 0 && h < i) b[0] = '1';
        if (p == 2) b[1] = '1';
        // The outermost flag is dead at the last token: nothing after w_n can
        // ever pop it, so it is left unset there.
        if (h >= 0 && i < n && sides[p].outermost(h, i)) b[2] = '1';
        if (sides[1].has_left(i)) b[3] = '1';
        if (sides[1].has_right(i)) b[4] = '1';
        if (sides[2].has_left(i)) b[5] = '1';
        if (sides[2].has_right(i)) b[6] = '1';
        out.labels.labels.push_back(b + "@" + rels[i]);
    }
    return out;
}

DepDecodeResult decode_7bit(const LabelSequence& labels, const Sentence& sentence) {
    const int n = sentence.size();
    std::vector<int> heads(n + 1, -1);
    std::vector<std::string> rels(n + 1, kMissingRel);
    std::vector<std::string> bits(n + 1);
    DepDecodeResult out;

    for (int i = 1; i <= n && i <= static_cast<int>(labels.labels.size()); ++i) {
        auto [x, rel] = split2(labels.labels[i - 1]);
        rels[i] = rel;
        for (char& c : x)
            if (c != '0' && c != '1') {
                c = '0';
                ++out.discarded;
            }
        bits[i] = x;
    }

    Bits4Decoder plane1{{}, {}, &heads, &bits, &out.discarded};
    Bits4Decoder plane2{{}, {}, &heads, &bits, &out.discarded};
    for (int i = 1; i <= n; ++i) {
        Bits4Decoder& own = plane1.bit(i, 1) ? plane2 : plane1;
        if (plane1.bit(i, 0))
            own.attach_left_parent(i, plane1.bit(i, 2));
        if (plane1.bit(i, 3)) plane1.pop_left_group(i, 2);
        if (plane1.bit(i, 5)) plane2.pop_left_group(i, 2);
        if (!plane1.bit(i, 0)) own.left_pending.push_back(i);
        if (plane1.bit(i, 4)) plane1.right_heads.push_back(i);
        if (plane1.bit(i, 6)) plane2.right_heads.push_back(i);
    }
    out.structure = finish_tree(sentence, std::move(heads), std::move(rels), out.repairs);
    return out;
}

// ---------------------------------------------------------------------------
// Hexatagging
// ---------------------------------------------------------------------------

namespace {

// BHT: binary tree over the tokens where each internal node is labeled with
// the child its head comes from (L = left, R = right).
ConstNode build_bht(int i, const DepSides& sides) {
    ConstNode node;
    node.leaf = i;
    const auto& deps = sides.deps[i];
    const int first_right =
        static_cast<int>(std::upper_bound(deps.begin(), deps.end(), i) - deps.begin());
    for (int idx = first_right - 1; idx >= 0; --idx) {  // left deps, innermost first
        ConstNode parent;
        parent.label = "R";
        parent.children.push_back(build_bht(deps[idx], sides));
        parent.children.push_back(std::move(node));
        node = std::move(parent);
    }
    for (int idx = first_right; idx < static_cast<int>(deps.size()); ++idx) {
        const int d = deps[idx];
        ConstNode parent;
        parent.label = "L";
        parent.children.push_back(std::move(node));
        parent.children.push_back(build_bht(d, sides));
        node = std::move(parent);
    }
    return node;
}

int bht_head(const ConstNode& node, std::vector<Arc>& arcs, const std::vector<std::string>& rels) {
    if (node.is_leaf()) return node.leaf;
    if (node.children.empty()) return 1;
    int h = bht_head(node.children[0], arcs, rels);
    for (size_t c = 1; c < node.children.size(); ++c) {
        int hc = bht_head(node.children[c], arcs, rels);
        if (h == hc) continue;
        if (node.label == "R") {
            arcs.push_back({hc, h, rels[h]});
            h = hc;
        } else {
            arcs.push_back({h, hc, rels[hc]});
        }
    }
    return h;
}

}  // namespace

DepEncodeResult encode_hexa(const DepStructure& tree) {
    DepEncodeResult out;
    out.labels.scheme = "dep-hexa";

    DepStructure input = tree;
    if (!is_projective(input)) {
        PprojResult pp = pseudo_projectivize(input);
        input = pp.tree;
        out.lifts = pp.lifts;
    }

    const int n = input.size();
    std::vector<int> heads;
    std::vector<std::string> rels;
    head_view(input, heads, rels);
    DepSides sides = side_view(n, heads);

    int root = 1;
    for (int i = 1; i <= n; ++i)
        if (heads[i] == 0) root = i;

    ConstTree bht{build_bht(root, sides), true};
    LabelSequence tetra = encode_tetra(bht);

    for (int i = 1; i <= n; ++i) {
        std::vector<std::string> parts = split_at(tetra.labels[i - 1], '@');
        parts.resize(3);
        const std::string fence = i < n ? parts[1] + parts[2] : std::string("Ω");
        out.labels.labels.push_back(parts[0] + "@" + fence + "@" + rels[i]);
    }
    return out;
}

DepDecodeResult decode_hexa(const LabelSequence& labels, const Sentence& sentence) {
    const int n = sentence.size();
    DepDecodeResult out;

    LabelSequence tetra;
    tetra.scheme = "tetra";
    std::vector<std::string> rels(n + 1, kMissingRel);
    for (int i = 1; i <= n; ++i) {
        std::string tag = kTagRight, fence, cons;
        if (i <= static_cast<int>(labels.labels.size())) {
            std::vector<std::string> parts = split_at(labels.labels[i - 1], '@');
            parts.resize(3, kMissingRel);
            if (!parts[0].empty()) tag = parts[0];
            rels[i] = parts[2];
            const std::string& f = parts[1];
            for (const char* arrow : {kFenceLeft, kFenceRight}) {
                if (f.rfind(arrow, 0) == 0) {
                    fence = arrow;
                    cons = f.substr(std::string(arrow).size());
                }
            }
        }
        tetra.labels.push_back(i < n ? tag + "@" + fence + "@" + cons
                                     : std::string(kTagRight) + "@@");
    }

    Sentence bare;
    bare.id = sentence.id;
    for (const Token& t : sentence.tokens) bare.tokens.push_back({t.form, "", "", ""});
    ConstDecodeResult bht = decode_tetra(tetra, bare);
    out.repairs += bht.repairs;

    std::vector<Arc> arcs;
    int root = bht_head(bht.tree.root, arcs, rels);
    std::vector<int> heads(n + 1, -1);
    std::vector<std::string> arc_rels(n + 1, kMissingRel);
    if (root >= 1 && root <= n) {
        heads[root] = 0;
        arc_rels[root] = rels[root];
    }
    for (const Arc& a : arcs) {
        if (a.dep < 1 || a.dep > n || a.head < 1 || a.head > n || heads[a.dep] != -1) continue;
        heads[a.dep] = a.head;
        arc_rels[a.dep] = a.rel;
    }
    out.structure = finish_tree(sentence, std::move(heads), std::move(arc_rels), out.repairs);
    out.structure = deprojectivize(out.structure);
    return out;
}

}  // namespace structlabel
