#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "structlabel/const_codec.hpp"
#include "structlabel/registry.hpp"

#include <random>

using namespace structlabel;

namespace {

CorpusEntry dep_entry(const DepStructure& d) {
    CorpusEntry e;
    e.sentence = d.sentence;
    e.dep = d;
    return e;
}

CorpusEntry tree_entry(const ConstTree& t) {
    CorpusEntry e;
    e.tree = t;
    ConstTree collapsed = collapse_unary(t);
    e.sentence = sentence_for(collapsed);
    return e;
}

}  // namespace

TEST_CASE("every advertised scheme resolves") {
    for (const std::string& name : codec_names()) {
        std::string resolvable = name;
        if (auto colon = resolvable.find(":k"); colon != std::string::npos)
            resolvable = resolvable.substr(0, colon);
        Codec c = find_codec(resolvable);
        CHECK(!c.name.empty());
    }
    CHECK_THROWS_AS(find_codec("nope"), std::invalid_argument);
    CHECK_THROWS_AS(find_codec("gr-brk:x"), std::invalid_argument);
    CHECK_THROWS_AS(find_codec("gr-brk:0"), std::invalid_argument);
}

TEST_CASE("graph schemes default their plane count") {
    CHECK(find_codec("gr-brk").name == "gr-brk:3");
    CHECK(find_codec("gr-4k").name == "gr-4k:4");
    CHECK(find_codec("gr-6k").name == "gr-6k:4");
    CHECK(find_codec("gr-brk:2").name == "gr-brk:2");
}

TEST_CASE("family mismatches throw") {
    Codec dep = find_codec("dep-4b");
    Codec con = find_codec("tetra");
    CHECK_THROWS_AS(dep.encode(tree_entry(fixtures::small_const_tree())), std::invalid_argument);
    CHECK_THROWS_AS(con.encode(dep_entry(fixtures::projective_tree())), std::invalid_argument);
}

TEST_CASE("padded constituency schemes emit one label per token") {
    CorpusEntry e = tree_entry(fixtures::small_const_tree());
    for (const char* name : {"const-abs", "const-rel"}) {
        Codec c = find_codec(name);
        EncodeOutcome out = c.encode(e);
        REQUIRE(out.labels.labels.size() == 5);
        CHECK(out.labels.labels.back() == "-");
        Sentence s = codec_sentence(c, e);
        DecodeOutcome dec = c.decode(out.labels, s);
        REQUIRE(dec.tree);
        CHECK(expand_unary(*dec.tree).root == e.tree->root);
    }
}

TEST_CASE("codec_sentence carries collapsed preterminal chains") {
    // Unary chain VP -> VB above a preterminal must survive the round-trip.
    ConstNode vb = ConstNode{"VB", 0, {ConstNode{"", 2, {}}}};
    ConstTree t;
    t.root = ConstNode{"S", 0,
                       {ConstNode{"NN", 0, {ConstNode{"", 1, {}}}}, ConstNode{"VP", 0, {vb}}}};
    CorpusEntry e;
    e.tree = t;
    e.sentence.tokens = {{"dogs", "", "", ""}, {"bark", "", "", ""}};
    Codec c = find_codec("tetra");
    Sentence s = codec_sentence(c, e);
    CHECK(s.tokens[1].xpos == "VP:VB");
    DecodeOutcome dec = c.decode(c.encode(e).labels, s);
    REQUIRE(dec.tree);
    CHECK(expand_unary(*dec.tree).root == t.root);
}

TEST_CASE("registry round-trips across families") {
    std::mt19937_64 rng(61);
    auto trees = generators::all_trees(5);
    for (const char* name : {"dep-abs", "dep-brk", "dep-4b", "dep-7b", "dep-hexa"}) {
        Codec c = find_codec(name);
        int checked = 0;
        for (const DepStructure& t : trees) {
            const bool proj = is_projective(t);
            if ((name == std::string("dep-4b") || name == std::string("dep-hexa")) && !proj)
                continue;
            if ((name == std::string("dep-brk") || name == std::string("dep-7b")) &&
                !generators::at_most_k_planar(t, 2))
                continue;
            CorpusEntry e = dep_entry(t);
            EncodeOutcome enc = c.encode(e);
            REQUIRE(enc.dropped == 0);
            DecodeOutcome dec = c.decode(enc.labels, e.sentence);
            DepStructure expect = t;
            expect.normalize();
            REQUIRE(dec.dep->arcs == expect.arcs);
            ++checked;
        }
        CHECK(checked > 100);
    }
    for (const char* name : {"gr-rel", "gr-brk:3", "gr-4k:4", "gr-6k:4"}) {
        Codec c = find_codec(name);
        for (int trial = 0; trial < 200; ++trial) {
            DepStructure g = generators::random_graph(1 + static_cast<int>(rng() % 5), rng);
            CorpusEntry e = dep_entry(g);
            EncodeOutcome enc = c.encode(e);
            if (enc.dropped != 0) continue;
            DecodeOutcome dec = c.decode(enc.labels, e.sentence);
            DepStructure expect = g;
            expect.normalize();
            REQUIRE(dec.dep->arcs == expect.arcs);
        }
    }
}

TEST_CASE("wellformed ratio is 1.0 on gold encodings and drops under corruption") {
    std::mt19937_64 rng(67);
    auto trees = generators::all_trees(5);
    std::vector<DepStructure> projective;
    for (const auto& t : trees)
        if (is_projective(t)) projective.push_back(t);
    projective.resize(60);

    for (const char* name : {"dep-abs", "dep-brk", "dep-4b", "dep-7b", "dep-hexa"}) {
        Codec c = find_codec(name);
        std::vector<LabelSequence> labels;
        std::vector<Sentence> sentences;
        for (const DepStructure& t : projective) {
            CorpusEntry e = dep_entry(t);
            labels.push_back(c.encode(e).labels);
            sentences.push_back(e.sentence);
        }
        ScoreReport gold = wellformed_ratio(c, labels, sentences);
        CHECK(gold.wellformed->value() == doctest::Approx(1.0));

        // Corrupt one label per sentence.
        std::vector<LabelSequence> bad = labels;
        for (auto& seq : bad) seq.labels[rng() % seq.labels.size()] = "??@??";
        ScoreReport corrupted = wellformed_ratio(c, bad, sentences);
        CHECK(corrupted.wellformed->value() < gold.wellformed->value());
    }
}
