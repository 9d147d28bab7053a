#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "structlabel/core.hpp"
#include "structlabel/metrics.hpp"
#include "structlabel/treebank_io.hpp"

namespace structlabel {

enum class CodecFamily { DepTree, Graph, Const };

struct EncodeOutcome {
    LabelSequence labels;
    int dropped = 0;
    int lifts = 0;
};

struct DecodeOutcome {
    std::optional<DepStructure> dep;
    std::optional<ConstTree> tree;  // collapsed form
    int repairs = 0;
    int discarded = 0;
};

struct Codec {
    std::string name;
    CodecFamily family = CodecFamily::DepTree;
    std::function<EncodeOutcome(const CorpusEntry&)> encode;
    std::function<DecodeOutcome(const LabelSequence&, const Sentence&)> decode;
};

// Scheme names: const-abs, const-rel, tetra, dep-abs, dep-brk, dep-4b,
// dep-7b, dep-hexa, gr-rel, gr-brk:k, gr-4k:k, gr-6k:k.  Graph schemes
// default to the experimental k (bracketing 3, bit encodings 4) when the
// ":k" suffix is omitted.  The n-1-label constituency schemes are padded to
// n with a trailing "-" so label files stay one row per token.
Codec find_codec(const std::string& scheme);
std::vector<std::string> codec_names();

// Sentence to decode against: for constituency schemes the xpos column must
// carry the collapsed preterminal chain of the gold tree.
Sentence codec_sentence(const Codec& codec, const CorpusEntry& entry);

// Fraction of sentences decoding with zero repairs and discards into a
// well-formed structure.
ScoreReport wellformed_ratio(const Codec& codec, const std::vector<LabelSequence>& labels,
                             const std::vector<Sentence>& sentences);

}  // namespace structlabel
