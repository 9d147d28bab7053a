#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace structlabel::detail {

struct BracketSym {
    char base;    // one of \ > < /
    int plane;    // 1-based; rendered with plane-1 stars
    int partner;  // position of the other endpoint
};

inline bool is_closer(char c) { return c == '\\' || c == '>'; }

// Rendering convention: closers first, then openers, each group ordered by
// partner position descending (matches per-plane stack pop order).
inline std::string render_brackets(std::vector<BracketSym> syms) {
    std::stable_sort(syms.begin(), syms.end(), [](const BracketSym& a, const BracketSym& b) {
        const bool ca = is_closer(a.base), cb = is_closer(b.base);
        if (ca != cb) return ca;
        return a.partner > b.partner;
    });
    std::string out;
    for (const BracketSym& s : syms) {
        out += s.base;
        out.append(static_cast<size_t>(s.plane - 1), '*');
    }
    return out;
}

// Inverse of the rendering: base symbols with star-derived planes, in string
// order.  Unknown characters are skipped and counted.
inline std::vector<std::pair<char, int>> parse_brackets(const std::string& s, int* bad) {
    std::vector<std::pair<char, int>> out;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c != '\\' && c != '>' && c != '<' && c != '/') {
            if (bad) ++*bad;
            continue;
        }
        int plane = 1;
        while (i + 1 < s.size() && s[i + 1] == '*') {
            ++plane;
            ++i;
        }
        out.emplace_back(c, plane);
    }
    return out;
}

}  // namespace structlabel::detail
