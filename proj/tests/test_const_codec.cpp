#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "structlabel/const_codec.hpp"

#include <random>

using namespace structlabel;

namespace {

ConstNode pre(const std::string& label, int leaf) {
    return ConstNode{label, 0, {ConstNode{"", leaf, {}}}};
}

}  // namespace

TEST_CASE("collapse and expand unary chains") {
    // (S (NP (NN a)) (VP (VB b)))  with chain S -> NP over one child
    ConstTree t;
    t.root = ConstNode{"S", 0, {ConstNode{"NP", 0, {pre("NN", 1)}}, ConstNode{"VP", 0, {pre("VB", 2)}}}};
    ConstTree c = collapse_unary(t);
    CHECK(c.collapsed);
    // NP has a single preterminal child: NP collapses into the preterminal.
    CHECK(c.root.children[0].label == "NP:NN");
    CHECK(c.root.children[1].label == "VP:VB");
    ConstTree back = expand_unary(c);
    CHECK(back.root == t.root);
}

TEST_CASE("binarize and debinarize a ternary node") {
    ConstTree t;
    t.root = ConstNode{"S", 0, {pre("A", 1), pre("B", 2), pre("C", 3)}};
    ConstTree b = binarize(t);
    REQUIRE(b.root.children.size() == 2);
    CHECK(b.root.children[1].label == "S|");
    ConstTree flat = debinarize(b);
    CHECK(flat.root == t.root);
}

TEST_CASE("preterminal labels read off the collapsed tree") {
    ConstTree c = collapse_unary(fixtures::small_const_tree());
    CHECK(preterminal_labels(c) ==
          std::vector<std::string>{"NN", "NNS", "VBP", "DT", "NN"});
    Sentence s = sentence_for(c);
    CHECK(s.tokens[2].xpos == "VBP");
}

TEST_CASE("absolute and relative labels on the example tree") {
    ConstTree t = fixtures::small_const_tree();
    CHECK(encode_absolute_const(t).labels ==
          std::vector<std::string>{"2@NP", "1@S", "2@VP", "3@NP"});
    CHECK(encode_relative_const(t).labels ==
          std::vector<std::string>{"2@NP", "-1@S", "1@VP", "1@NP"});
}

TEST_CASE("tetra labels on the example tree") {
    ConstTree t = fixtures::small_const_tree();
    CHECK(encode_tetra(t).labels ==
          std::vector<std::string>{std::string(kTagLeft) + "@" + kFenceLeft + "@NP",
                                   std::string(kTagRight) + "@" + kFenceLeft + "@S",
                                   std::string(kTagLeft) + "@" + kFenceRight + "@VP",
                                   std::string(kTagLeft) + "@" + kFenceRight + "@NP",
                                   std::string(kTagRight) + "@@"});
}

TEST_CASE("decoders recover the example tree exactly") {
    ConstTree t = fixtures::small_const_tree();
    ConstTree collapsed = collapse_unary(t);
    Sentence s = sentence_for(collapsed);

    for (auto decode : {decode_absolute_const, decode_relative_const}) {
        LabelSequence labels = decode == decode_absolute_const ? encode_absolute_const(t)
                                                              : encode_relative_const(t);
        ConstDecodeResult r = decode(labels, s);
        CHECK(r.repairs == 0);
        CHECK(expand_unary(r.tree).root == t.root);
    }
    ConstDecodeResult r = decode_tetra(encode_tetra(t), s);
    CHECK(r.repairs == 0);
    CHECK(expand_unary(r.tree).root == t.root);
}

TEST_CASE("round-trip over every binary shape up to 7 leaves") {
    for (int n = 1; n <= 7; ++n) {
        for (const ConstTree& t : generators::all_const_trees(n)) {
            ConstTree collapsed = collapse_unary(t);
            Sentence s = sentence_for(collapsed);
            {
                ConstDecodeResult r = decode_relative_const(encode_relative_const(t), s);
                REQUIRE(r.repairs == 0);
                REQUIRE(expand_unary(r.tree).root == expand_unary(collapsed).root);
            }
            {
                ConstDecodeResult r = decode_tetra(encode_tetra(t), s);
                REQUIRE(r.repairs == 0);
                REQUIRE(expand_unary(r.tree).root == expand_unary(collapsed).root);
            }
        }
    }
}

TEST_CASE("round-trip over random trees with unary chains") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 9);
        ConstTree t = generators::random_const_tree(n, rng);
        ConstTree collapsed = collapse_unary(t);
        Sentence s = sentence_for(collapsed);
        ConstTree normalized = expand_unary(collapsed);

        ConstDecodeResult abs = decode_absolute_const(encode_absolute_const(t), s);
        REQUIRE(abs.repairs == 0);
        REQUIRE(expand_unary(abs.tree).root == normalized.root);

        ConstDecodeResult rel = decode_relative_const(encode_relative_const(t), s);
        REQUIRE(rel.repairs == 0);
        REQUIRE(expand_unary(rel.tree).root == normalized.root);

        ConstDecodeResult tet = decode_tetra(encode_tetra(t), s);
        REQUIRE(tet.repairs == 0);
        REQUIRE(expand_unary(tet.tree).root == normalized.root);
    }
}

TEST_CASE("label count mismatches throw") {
    ConstTree t = fixtures::small_const_tree();
    Sentence s = sentence_for(collapse_unary(t));
    LabelSequence too_short = encode_tetra(t);
    too_short.labels.pop_back();
    CHECK_THROWS_AS(decode_tetra(too_short, s), std::invalid_argument);
    LabelSequence abs = encode_absolute_const(t);
    abs.labels.push_back("1@X");
    CHECK_THROWS_AS(decode_absolute_const(abs, s), std::invalid_argument);
}

TEST_CASE("garbage labels decode with repairs, never crash") {
    std::mt19937_64 rng(11);
    const std::vector<std::string> junk = {"",      "0@",    "-5@NP", "9@S", "x@y@z",
                                           "@@",    "↖@@",   "↗@⇗@Q", "3",   "@"};
    Sentence s;
    for (int i = 1; i <= 5; ++i) s.tokens.push_back({"w" + std::to_string(i), "", "T", ""});
    for (int trial = 0; trial < 500; ++trial) {
        LabelSequence rel, tet;
        for (int i = 0; i < 4; ++i) rel.labels.push_back(junk[rng() % junk.size()]);
        for (int i = 0; i < 5; ++i) tet.labels.push_back(junk[rng() % junk.size()]);
        ConstDecodeResult r1 = decode_relative_const(rel, s);
        CHECK(leaves_cover(r1.tree, 5));
        ConstDecodeResult r2 = decode_tetra(tet, s);
        CHECK(leaves_cover(r2.tree, 5));
    }
}
