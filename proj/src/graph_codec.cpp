#include "structlabel/graph_codec.hpp"

#include <algorithm>
#include <cstdlib>

#include "bracket_util.hpp"

namespace structlabel {

namespace {

struct PlacedArc {
    Arc arc;
    int plane;
};

std::pair<std::string, std::string> split2(const std::string& s) {
    auto at = s.find('@');
    if (at == std::string::npos) return {s, ""};
    return {s.substr(0, at), s.substr(at + 1)};
}

std::vector<std::string> split_plus(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == '+') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

// ρ per token: incoming relations ordered by (head, plane).
std::vector<std::string> rho_components(int n, std::vector<PlacedArc> placed) {
    std::stable_sort(placed.begin(), placed.end(), [](const PlacedArc& a, const PlacedArc& b) {
        if (a.arc.dep != b.arc.dep) return a.arc.dep < b.arc.dep;
        if (a.arc.head != b.arc.head) return a.arc.head < b.arc.head;
        return a.plane < b.plane;
    });
    std::vector<std::string> rho(n + 1);
    std::vector<bool> any(n + 1, false);
    for (const PlacedArc& p : placed) {
        if (p.arc.dep < 1 || p.arc.dep > n) continue;
        if (any[p.arc.dep]) rho[p.arc.dep] += "+";
        rho[p.arc.dep] += p.arc.rel;
        any[p.arc.dep] = true;
    }
    for (int i = 1; i <= n; ++i)
        if (!any[i]) rho[i] = "_";  // headless token
    return rho;
}

// Inverse of rho_components: hand the ρ parts back to the decoded arcs in
// the same (head, plane) order, then drop the artificial ones.
DepStructure assign_rho(const Sentence& sentence, std::vector<PlacedArc> placed,
                        const std::vector<std::string>& rho_raw) {
    const int n = sentence.size();
    std::stable_sort(placed.begin(), placed.end(), [](const PlacedArc& a, const PlacedArc& b) {
        if (a.arc.dep != b.arc.dep) return a.arc.dep < b.arc.dep;
        if (a.arc.head != b.arc.head) return a.arc.head < b.arc.head;
        return a.plane < b.plane;
    });
    std::vector<int> used(n + 1, 0);
    std::vector<std::vector<std::string>> parts(n + 1);
    for (int i = 1; i <= n; ++i) parts[i] = split_plus(rho_raw[i]);

    DepStructure out;
    out.sentence = sentence;
    out.kind = StructureKind::Graph;
    for (PlacedArc& p : placed) {
        const int d = p.arc.dep;
        if (d >= 1 && d <= n && used[d] < static_cast<int>(parts[d].size()))
            p.arc.rel = parts[d][used[d]++];
        else
            p.arc.rel = "_";
        if (p.arc.rel == kNullRel) continue;
        out.arcs.push_back(p.arc);
    }
    out.normalize();
    return out;
}

std::vector<PlacedArc> placed_arcs(const DepStructure& normalized, const PlaneAssignment& planes) {
    std::vector<PlacedArc> placed;
    for (size_t a = 0; a < normalized.arcs.size(); ++a)
        if (planes.plane[a] != 0) placed.push_back({normalized.arcs[a], planes.plane[a]});
    return placed;
}

}  // namespace

// ---------------------------------------------------------------------------
// Relative
// ---------------------------------------------------------------------------

GraphEncodeResult encode_relative_graph(const DepStructure& graph) {
    DepStructure sorted = graph;
    sorted.normalize();
    const int n = sorted.size();

    std::vector<PlacedArc> placed;
    for (const Arc& a : sorted.arcs) placed.push_back({a, 1});
    std::vector<std::string> rho = rho_components(n, placed);

    std::vector<std::vector<int>> offsets(n + 1);
    for (const Arc& a : sorted.arcs)
        if (a.dep >= 1 && a.dep <= n) offsets[a.dep].push_back(a.head - a.dep);
    GraphEncodeResult out;
    out.labels.scheme = "gr-rel";
    for (int i = 1; i <= n; ++i) {
        std::sort(offsets[i].begin(), offsets[i].end());
        std::string x = "-";
        if (!offsets[i].empty()) {
            x = "(";
            for (size_t j = 0; j < offsets[i].size(); ++j) {
                if (j) x += ",";
                x += std::to_string(offsets[i][j]);
            }
            x += ")";
        }
        out.labels.labels.push_back(x + "@" + rho[i]);
    }
    return out;
}

GraphDecodeResult decode_relative_graph(const LabelSequence& labels, const Sentence& sentence) {
    const int n = sentence.size();
    GraphDecodeResult out;
    std::vector<PlacedArc> placed;
    std::vector<std::string> rho(n + 1);
    for (int i = 1; i <= n && i <= static_cast<int>(labels.labels.size()); ++i) {
        auto [x, r] = split2(labels.labels[i - 1]);
        rho[i] = r;
        if (x.empty() || x == "-") continue;
        if (x.front() == '(') x.erase(x.begin());
        if (!x.empty() && x.back() == ')') x.pop_back();
        std::string cur;
        auto flush = [&]() {
            if (cur.empty()) return;
            char* end = nullptr;
            long off = std::strtol(cur.c_str(), &end, 10);
            int head = i + static_cast<int>(off);
            if (end == cur.c_str() || *end != '\0' || head < 0 || head > n || head == i)
                ++out.discarded;
            else
                placed.push_back({{head, i, ""}, 1});
            cur.clear();
        };
        for (char c : x) {
            if (c == ',')
                flush();
            else
                cur += c;
        }
        flush();
    }
    out.structure = assign_rho(sentence, std::move(placed), rho);
    return out;
}

// ---------------------------------------------------------------------------
// Bracketing (k planes)
// ---------------------------------------------------------------------------

GraphEncodeResult encode_bracketing_graph(const DepStructure& graph, int k) {
    DepStructure sorted = graph;
    sorted.normalize();
    const int n = sorted.size();
    PlaneAssignment planes = assign_planes(sorted, k, PlaneConstraint::NonCrossing);
    std::vector<PlacedArc> placed = placed_arcs(sorted, planes);

    std::vector<std::vector<detail::BracketSym>> syms(n + 1);
    for (const PlacedArc& p : placed) {
        const Arc& arc = p.arc;
        if (arc.rightward()) {
            if (arc.head >= 1) syms[arc.head].push_back({'/', p.plane, arc.dep});
            syms[arc.dep].push_back({'>', p.plane, arc.head});
        } else {
            syms[arc.dep].push_back({'<', p.plane, arc.head});
            syms[arc.head].push_back({'\\', p.plane, arc.dep});
        }
    }
    std::vector<std::string> rho = rho_components(n, placed);

    GraphEncodeResult out;
    out.labels.scheme = "gr-brk:" + std::to_string(k);
    out.dropped = planes.dropped;
    for (int i = 1; i <= n; ++i)
        out.labels.labels.push_back(detail::render_brackets(syms[i]) + "@" + rho[i]);
    return out;
}

GraphDecodeResult decode_bracketing_graph(const LabelSequence& labels, const Sentence& sentence,
                                          int k) {
    const int n = sentence.size();
    GraphDecodeResult out;
    std::vector<std::vector<int>> right_open(k + 1), left_open(k + 1);
    std::vector<PlacedArc> placed;
    std::vector<std::string> rho(n + 1);

    for (int i = 1; i <= n; ++i) {
        std::string sym;
        if (i <= static_cast<int>(labels.labels.size())) {
            auto [x, r] = split2(labels.labels[i - 1]);
            sym = x;
            rho[i] = r;
        }
        for (auto [c, plane] : detail::parse_brackets(sym, &out.discarded)) {
            if (plane > k) {
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
                    if (right_open[plane].empty()) {
                        placed.push_back({{0, i, ""}, plane});
                    } else {
                        placed.push_back({{right_open[plane].back(), i, ""}, plane});
                        right_open[plane].pop_back();
                    }
                    break;
                case '\\':
                    if (left_open[plane].empty()) {
                        ++out.discarded;
                    } else {
                        placed.push_back({{i, left_open[plane].back(), ""}, plane});
                        left_open[plane].pop_back();
                    }
                    break;
            }
        }
    }
    for (int p = 1; p <= k; ++p)
        out.discarded += static_cast<int>(right_open[p].size() + left_open[p].size());
    out.structure = assign_rho(sentence, std::move(placed), rho);
    return out;
}

// ---------------------------------------------------------------------------
// 4k-bit and 6k-bit
// ---------------------------------------------------------------------------

namespace {

struct PlaneSides {
    std::vector<std::vector<int>> deps;
    void add(const Arc& a) {
        if (a.head >= 0 && a.head < static_cast<int>(deps.size())) {
            deps[a.head].push_back(a.dep);
            std::sort(deps[a.head].begin(), deps[a.head].end());
        }
    }
    bool outermost(int h, int d) const {
        int farthest = d;
        for (int x : deps[h])
            if ((x < h) == (d < h) && std::abs(x - h) > std::abs(farthest - h)) farthest = x;
        return farthest == d;
    }
    bool has_left(int i) const { return !deps[i].empty() && deps[i].front() < i; }
    bool has_right(int i) const { return !deps[i].empty() && deps[i].back() > i; }
};

// Per-plane stack decoder shared by the bit schemes.  bits(i, b) reads the
// plane's group; emit receives (head, dep).
struct PlaneBitDecoder {
    std::vector<int> right_heads, left_pending;
    std::vector<PlacedArc>* placed;
    int plane;
    const std::vector<std::string>* groups;
    int* discarded;

    bool bit(int token, int idx) const {
        const std::string& b = (*groups)[token];
        return idx < static_cast<int>(b.size()) && b[idx] == '1';
    }

    void attach_left_parent(int i, bool pop) {
        int head = 0;
        if (!right_heads.empty()) {
            head = right_heads.back();
            if (pop) right_heads.pop_back();
        }
        placed->push_back({{head, i, ""}, plane});
    }

    void pop_left_group(int i, int stop_bit) {
        if (left_pending.empty()) {
            ++*discarded;
            return;
        }
        while (!left_pending.empty()) {
            int d = left_pending.back();
            left_pending.pop_back();
            placed->push_back({{i, d, ""}, plane});
            if (bit(d, stop_bit)) return;
        }
        ++*discarded;
    }

    void finish() { *discarded += static_cast<int>(left_pending.size()); }
};

std::vector<std::string> bit_groups(const LabelSequence& labels, int n, int width, int plane,
                                    std::vector<std::string>& rho, int* discarded) {
    std::vector<std::string> groups(n + 1);
    for (int i = 1; i <= n; ++i) {
        std::string x;
        if (i <= static_cast<int>(labels.labels.size())) {
            auto [bits, r] = split2(labels.labels[i - 1]);
            x = bits;
            rho[i] = r;
        }
        std::string g = (static_cast<int>(x.size()) >= width * plane)
                            ? x.substr(static_cast<size_t>(width) * (plane - 1), width)
                            : std::string();
        for (char& c : g)
            if (c != '0' && c != '1') {
                c = '0';
                ++*discarded;
            }
        groups[i] = g;
    }
    return groups;
}

}  // namespace

GraphEncodeResult encode_4k(const DepStructure& graph, int k) {
    DepStructure sorted = graph;
    sorted.normalize();
    const int n = sorted.size();
    PlaneAssignment planes = assign_planes(sorted, k, PlaneConstraint::FourKBit);
    std::vector<PlacedArc> placed = placed_arcs(sorted, planes);

    // Head completion: every node needs exactly one incoming arc per plane.
    std::vector<std::vector<bool>> has_head(k + 1, std::vector<bool>(n + 1, false));
    for (const PlacedArc& p : placed) has_head[p.plane][p.arc.dep] = true;
    for (int p = 1; p <= k; ++p)
        for (int i = 1; i <= n; ++i)
            if (!has_head[p][i]) placed.push_back({{i - 1, i, kNullRel}, p});

    std::vector<std::vector<int>> head_of(k + 1, std::vector<int>(n + 1, -1));
    std::vector<PlaneSides> sides(k + 1);
    for (int p = 1; p <= k; ++p) sides[p].deps.assign(n + 1, {});
    for (const PlacedArc& p : placed) {
        head_of[p.plane][p.arc.dep] = p.arc.head;
        sides[p.plane].add(p.arc);
    }
    std::vector<std::string> rho = rho_components(n, placed);

    GraphEncodeResult out;
    out.labels.scheme = "gr-4k:" + std::to_string(k);
    out.dropped = planes.dropped;
    for (int i = 1; i <= n; ++i) {
        std::string x;
        for (int p = 1; p <= k; ++p) {
            const int h = head_of[p][i];
            std::string b = "0000";
            if (h >= 0 && h < i) b[0] = '1';
            if (h >= 0 && sides[p].outermost(h, i)) b[1] = '1';
            if (sides[p].has_left(i)) b[2] = '1';
            if (sides[p].has_right(i)) b[3] = '1';
            x += b;
        }
        out.labels.labels.push_back(x + "@" + rho[i]);
    }
    return out;
}

GraphDecodeResult decode_4k(const LabelSequence& labels, const Sentence& sentence, int k) {
    const int n = sentence.size();
    GraphDecodeResult out;
    std::vector<PlacedArc> placed;
    std::vector<std::string> rho(n + 1);
    for (int p = 1; p <= k; ++p) {
        std::vector<std::string> groups = bit_groups(labels, n, 4, p, rho, &out.discarded);
        PlaneBitDecoder dec{{}, {}, &placed, p, &groups, &out.discarded};
        for (int i = 1; i <= n; ++i) {
            if (dec.bit(i, 0)) dec.attach_left_parent(i, dec.bit(i, 1));
            if (dec.bit(i, 2)) dec.pop_left_group(i, 1);
            if (!dec.bit(i, 0)) dec.left_pending.push_back(i);
            if (dec.bit(i, 3)) dec.right_heads.push_back(i);
        }
        dec.finish();
    }
    out.structure = assign_rho(sentence, std::move(placed), rho);
    return out;
}

GraphEncodeResult encode_6k(const DepStructure& graph, int k) {
    DepStructure sorted = graph;
    sorted.normalize();
    const int n = sorted.size();
    PlaneAssignment planes = assign_planes(sorted, k, PlaneConstraint::SixKBit);
    std::vector<PlacedArc> placed = placed_arcs(sorted, planes);

    std::vector<std::vector<int>> left_head(k + 1, std::vector<int>(n + 1, -1));
    std::vector<std::vector<int>> right_head(k + 1, std::vector<int>(n + 1, -1));
    std::vector<PlaneSides> sides(k + 1);
    for (int p = 1; p <= k; ++p) sides[p].deps.assign(n + 1, {});
    for (const PlacedArc& p : placed) {
        if (p.arc.head < p.arc.dep)
            left_head[p.plane][p.arc.dep] = p.arc.head;
        else
            right_head[p.plane][p.arc.dep] = p.arc.head;
        sides[p.plane].add(p.arc);
    }
    std::vector<std::string> rho = rho_components(n, placed);

    GraphEncodeResult out;
    out.labels.scheme = "gr-6k:" + std::to_string(k);
    out.dropped = planes.dropped;
    for (int i = 1; i <= n; ++i) {
        std::string x;
        for (int p = 1; p <= k; ++p) {
            std::string b = "000000";
            if (left_head[p][i] >= 0) b[0] = '1';
            if (right_head[p][i] >= 0) b[1] = '1';
            if (left_head[p][i] >= 0 && sides[p].outermost(left_head[p][i], i)) b[2] = '1';
            if (right_head[p][i] >= 0 && sides[p].outermost(right_head[p][i], i)) b[3] = '1';
            if (sides[p].has_left(i)) b[4] = '1';
            if (sides[p].has_right(i)) b[5] = '1';
            x += b;
        }
        out.labels.labels.push_back(x + "@" + rho[i]);
    }
    return out;
}

GraphDecodeResult decode_6k(const LabelSequence& labels, const Sentence& sentence, int k) {
    const int n = sentence.size();
    GraphDecodeResult out;
    std::vector<PlacedArc> placed;
    std::vector<std::string> rho(n + 1);
    for (int p = 1; p <= k; ++p) {
        std::vector<std::string> groups = bit_groups(labels, n, 6, p, rho, &out.discarded);
        PlaneBitDecoder dec{{}, {}, &placed, p, &groups, &out.discarded};
        for (int i = 1; i <= n; ++i) {
            if (dec.bit(i, 0)) dec.attach_left_parent(i, dec.bit(i, 2));
            if (dec.bit(i, 4)) dec.pop_left_group(i, 3);
            if (dec.bit(i, 1)) dec.left_pending.push_back(i);
            if (dec.bit(i, 5)) dec.right_heads.push_back(i);
        }
        dec.finish();
    }
    out.structure = assign_rho(sentence, std::move(placed), rho);
    return out;
}

}  // namespace structlabel
