#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "structlabel/graph_codec.hpp"

#include <random>

using namespace structlabel;

namespace {

std::string x_of(const std::string& label) { return label.substr(0, label.find('@')); }

std::vector<std::string> x_row(const LabelSequence& seq) {
    std::vector<std::string> xs;
    for (const std::string& l : seq.labels) xs.push_back(x_of(l));
    return xs;
}

void check_roundtrip(const DepStructure& graph, const GraphEncodeResult& e,
                     GraphDecodeResult (*dec)(const LabelSequence&, const Sentence&, int), int k) {
    REQUIRE(e.dropped.empty());
    GraphDecodeResult d = dec(e.labels, graph.sentence, k);
    REQUIRE(d.discarded == 0);
    DepStructure expect = graph;
    expect.normalize();
    REQUIRE(d.structure.arcs == expect.arcs);
}

}  // namespace

TEST_CASE("relative rows match the graph example") {
    DepStructure g = fixtures::small_graph();
    LabelSequence seq = encode_relative_graph(g).labels;
    std::vector<std::string> xs = x_row(seq);
    REQUIRE(xs.size() == 5);
    CHECK(std::vector<std::string>(xs.begin() + 1, xs.end()) == fixtures::kGraphRelativeTail);
    CHECK(xs[0] == "(2)");  // w1's head sits two tokens to the right
}

TEST_CASE("bracketing rows match the graph example at k=3") {
    DepStructure g = fixtures::small_graph();
    GraphEncodeResult e = encode_bracketing_graph(g, 3);
    CHECK(x_row(e.labels) == fixtures::kGraphBrackets);
    check_roundtrip(g, e, decode_bracketing_graph, 3);
}

TEST_CASE("rho concatenates incoming relations in head order") {
    DepStructure g = fixtures::small_graph();
    LabelSequence seq = encode_relative_graph(g).labels;
    // w4 has heads w1 (rel c) and w5 (rel d): rho = "c+d".
    CHECK(seq.labels[3].substr(seq.labels[3].find('@') + 1) == "c+d");
    // headless w2 carries the placeholder relation.
    CHECK(seq.labels[1].substr(seq.labels[1].find('@') + 1) == "_");
}

TEST_CASE("relative round-trip on the example graph") {
    DepStructure g = fixtures::small_graph();
    GraphEncodeResult e = encode_relative_graph(g);
    REQUIRE(e.dropped.empty());
    GraphDecodeResult d = decode_relative_graph(e.labels, g.sentence);
    REQUIRE(d.discarded == 0);
    DepStructure expect = g;
    expect.normalize();
    CHECK(d.structure.arcs == expect.arcs);
}

TEST_CASE("4k artificial arcs never leak into decoder output") {
    DepStructure g = fixtures::small_graph();
    GraphEncodeResult e = encode_4k(g, 4);
    check_roundtrip(g, e, decode_4k, 4);
    GraphDecodeResult d = decode_4k(e.labels, g.sentence, 4);
    for (const Arc& a : d.structure.arcs) CHECK(a.rel != kNullRel);
}

TEST_CASE("6k round-trip on the example graph") {
    DepStructure g = fixtures::small_graph();
    check_roundtrip(g, encode_6k(g, 4), decode_6k, 4);
}

TEST_CASE("bit label widths are k groups") {
    DepStructure g = fixtures::small_graph();
    for (const std::string& x : x_row(encode_4k(g, 3).labels)) CHECK(x.size() == 12);
    for (const std::string& x : x_row(encode_6k(g, 2).labels)) CHECK(x.size() == 12);
}

TEST_CASE("random graph round-trips with zero dropped arcs") {
    std::mt19937_64 rng(5);
    int covered = 0;
    for (int trial = 0; trial < 4000; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        DepStructure g = generators::random_graph(n, rng);

        GraphEncodeResult rel = encode_relative_graph(g);
        REQUIRE(rel.dropped.empty());
        GraphDecodeResult drel = decode_relative_graph(rel.labels, g.sentence);
        DepStructure expect = g;
        expect.normalize();
        REQUIRE(drel.discarded == 0);
        REQUIRE(drel.structure.arcs == expect.arcs);

        GraphEncodeResult brk = encode_bracketing_graph(g, 3);
        if (brk.dropped.empty()) {
            check_roundtrip(g, brk, decode_bracketing_graph, 3);
            ++covered;
        }
        GraphEncodeResult b4 = encode_4k(g, 4);
        if (b4.dropped.empty()) check_roundtrip(g, b4, decode_4k, 4);
        GraphEncodeResult b6 = encode_6k(g, 4);
        if (b6.dropped.empty()) check_roundtrip(g, b6, decode_6k, 4);
    }
    CHECK(covered > 1000);  // the k=3 cap must not be degenerate on this corpus
}

TEST_CASE("arcs beyond k planes are dropped, not mangled") {
    DepStructure g = fixtures::small_graph();
    GraphEncodeResult e = encode_bracketing_graph(g, 2);
    REQUIRE(e.dropped.size() == 1);
    CHECK(e.dropped[0] == Arc{2, 5, "e"});
    GraphDecodeResult d = decode_bracketing_graph(e.labels, g.sentence, 2);
    CHECK(d.discarded == 0);
    DepStructure expect = g;
    expect.normalize();
    std::vector<Arc> kept;
    for (const Arc& a : expect.arcs)
        if (!(a == e.dropped[0])) kept.push_back(a);
    CHECK(d.structure.arcs == kept);
}

TEST_CASE("garbage labels decode without crashing") {
    std::mt19937_64 rng(31);
    const std::vector<std::string> junk = {"",       "-",        "(1,2)@x+y", "(9)@z", ">>@a",
                                           "/*<@b",  "0000@c",   "101010@d",  "(a)@e", "\\>**@f"};
    Sentence s;
    for (int i = 1; i <= 5; ++i) s.tokens.push_back({"w" + std::to_string(i), "", "", ""});
    for (int trial = 0; trial < 2000; ++trial) {
        LabelSequence seq;
        for (int i = 0; i < 5; ++i) seq.labels.push_back(junk[rng() % junk.size()]);
        for (const Arc& a : decode_relative_graph(seq, s).structure.arcs) {
            CHECK(a.head >= 0);
            CHECK(a.head <= 5);
            CHECK(a.dep >= 1);
            CHECK(a.dep <= 5);
        }
        decode_bracketing_graph(seq, s, 3);
        decode_4k(seq, s, 4);
        decode_6k(seq, s, 4);
    }
}
