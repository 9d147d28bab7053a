#pragma once

// Hand-checked example structures with frozen label rows.

#include <string>
#include <vector>

#include "structlabel/core.hpp"

namespace fixtures {

inline structlabel::DepStructure dep_from(const std::vector<std::string>& forms,
                                          const std::vector<std::tuple<int, int, std::string>>& arcs,
                                          structlabel::StructureKind kind) {
    structlabel::DepStructure d;
    d.kind = kind;
    for (const std::string& f : forms) d.sentence.tokens.push_back({f, "", "", ""});
    for (const auto& [h, dep, rel] : arcs) d.arcs.push_back({h, dep, rel});
    d.normalize();
    return d;
}

// "I had to go to the BBC for this report": projective tree.
inline structlabel::DepStructure projective_tree() {
    return dep_from({"I", "had", "to", "go", "to", "the", "BBC", "for", "this", "report"},
                    {{2, 1, "nsubj"},
                     {4, 3, "mark"},
                     {2, 4, "xcomp"},
                     {7, 5, "case"},
                     {7, 6, "det"},
                     {4, 7, "obl"},
                     {10, 8, "case"},
                     {10, 9, "det"},
                     {4, 10, "obl"},
                     {0, 2, "root"}},
                    structlabel::StructureKind::Tree);
}

inline const std::vector<std::string> kProjectiveBrackets = {
    "<", "\\>/", "<", "\\>//", "<", "<", "\\\\>", "<", "<", "\\\\>"};
inline const std::vector<std::string> kProjectiveBits4 = {
    "0100", "1111", "0100", "1111", "0100", "0000", "1010", "0100", "0000", "1110"};
inline const std::vector<std::string> kProjectiveRels = {
    "nsubj", "root", "mark", "xcomp", "case", "det", "obl", "case", "det", "obl"};

// "Any particular shop that you know of and their number": 2-planar tree,
// the arc 4->7 lives on the second plane.
inline structlabel::DepStructure two_planar_tree() {
    return dep_from({"Any", "particular", "shop", "that", "you", "know", "of", "and", "their",
                     "number"},
                    {{3, 1, "det"},
                     {3, 2, "amod"},
                     {6, 4, "obl"},
                     {6, 5, "nsubj"},
                     {3, 6, "acl:relcl"},
                     {4, 7, "case"},
                     {10, 9, "cc"},
                     {10, 8, "nmod:poss"},
                     {3, 10, "conj"},
                     {0, 3, "root"}},
                    structlabel::StructureKind::Tree);
}

inline const std::vector<std::string> kTwoPlanarBrackets = {
    "<", "<", "\\\\>//", "/*<", "<", "\\\\>", ">*", "<", "<", "\\\\>"};
inline const std::vector<std::string> kTwoPlanarBits7 = {
    "0010000", "0000000", "1011100", "0010001", "0000000",
    "1001000", "1110000", "0010000", "0000000", "1001000"};

// Five-node graph: w2 is headless, w4 has two heads.
inline structlabel::DepStructure small_graph() {
    return dep_from({"w1", "w2", "w3", "w4", "w5"},
                    {{0, 3, "a"}, {3, 1, "b"}, {1, 4, "c"}, {5, 4, "d"}, {2, 5, "e"}},
                    structlabel::StructureKind::Graph);
}

// x components only; the w1 relative row is not asserted (w1 does have a head
// at +2, the rendering conventions fix it as "(2)").
inline const std::vector<std::string> kGraphBrackets = {"/*<", "/**", "\\>", ">*<", "\\>**"};
inline const std::vector<std::string> kGraphRelativeTail = {"-", "(-3)", "(-3,1)", "(-3)"};  // w2..w5

// (S (NP (NN fruit) (NNS flies)) (VP (VBP like) (NP (DT a) (NN banana))))
inline structlabel::ConstTree small_const_tree() {
    using structlabel::ConstNode;
    ConstNode nn{"NN", 0, {ConstNode{"", 1, {}}}};
    ConstNode nns{"NNS", 0, {ConstNode{"", 2, {}}}};
    ConstNode vbp{"VBP", 0, {ConstNode{"", 3, {}}}};
    ConstNode dt{"DT", 0, {ConstNode{"", 4, {}}}};
    ConstNode nn2{"NN", 0, {ConstNode{"", 5, {}}}};
    ConstNode np1{"NP", 0, {nn, nns}};
    ConstNode np2{"NP", 0, {dt, nn2}};
    ConstNode vp{"VP", 0, {vbp, np2}};
    structlabel::ConstTree t;
    t.root = ConstNode{"S", 0, {np1, vp}};
    return t;
}

}  // namespace fixtures
