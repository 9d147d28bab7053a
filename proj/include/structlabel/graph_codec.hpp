#pragma once

#include <string>
#include <vector>

#include "structlabel/core.hpp"

namespace structlabel {

// Relation given to the artificial head-completion arcs of the 4k-bit
// encoding; stripped from every decoder output.
inline constexpr const char* kNullRel = "<null>";

struct GraphEncodeResult {
    LabelSequence labels;
    std::vector<Arc> dropped;
};

struct GraphDecodeResult {
    DepStructure structure;
    int discarded = 0;
};

// Labels render as "x@ρ" with ρ the '+'-joined incoming relations ordered by
// head position (then plane).  Graphs carry no well-formedness constraints;
// decoders discard what they cannot place and never invent arcs.

// x = "(o1,o2,...)" sorted signed head offsets, "-" when headless.
GraphEncodeResult encode_relative_graph(const DepStructure& graph);
GraphDecodeResult decode_relative_graph(const LabelSequence& labels, const Sentence& sentence);

// x = bracket string; '*' count = plane - 1, k planes of mutually
// non-crossing arcs.
GraphEncodeResult encode_bracketing_graph(const DepStructure& graph, int k);
GraphDecodeResult decode_bracketing_graph(const LabelSequence& labels, const Sentence& sentence,
                                          int k);

// x = k concatenated 4-bit groups; planes demand one incoming arc per node,
// filled with <null>-labeled arcs from the previous token where needed.
GraphEncodeResult encode_4k(const DepStructure& graph, int k);
GraphDecodeResult decode_4k(const LabelSequence& labels, const Sentence& sentence, int k);

// x = k concatenated 6-bit groups; planes allow one incoming arc per
// direction per node, so no artificial arcs are required.
GraphEncodeResult encode_6k(const DepStructure& graph, int k);
GraphDecodeResult decode_6k(const LabelSequence& labels, const Sentence& sentence, int k);

}  // namespace structlabel
