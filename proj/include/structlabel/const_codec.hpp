#pragma once

#include <string>
#include <vector>

#include "structlabel/core.hpp"

namespace structlabel {

// Tetratag / hexatag symbol renderings.
inline constexpr const char* kTagLeft = "↗";    // ↗  leaf is a left child
inline constexpr const char* kTagRight = "↖";   // ↖  leaf is a right child
inline constexpr const char* kFenceLeft = "⇗";  // ⇗  fencepost node is a left child
inline constexpr const char* kFenceRight = "⇖"; // ⇖  fencepost node is a right child

struct ConstDecodeResult {
    ConstTree tree;
    int repairs = 0;
};

// Unary chains X -> Y (single nonterminal child) become one node "X:Y",
// recursively; expand splits on ':' back into a chain.
ConstTree collapse_unary(const ConstTree& tree);
ConstTree expand_unary(const ConstTree& tree);

// Right-branching binarization with "<label>|" intermediate nodes.
ConstTree binarize(const ConstTree& tree);
ConstTree debinarize(const ConstTree& tree);

// Per-token pre-terminal label on a collapsed tree ("" when the leaf hangs
// directly off a constituent).  Decoders take these from Sentence::xpos.
std::vector<std::string> preterminal_labels(const ConstTree& collapsed);
// Sentence whose xpos column carries preterminal_labels (forms "w<i>" unless
// a sentence is supplied by the caller).
Sentence sentence_for(const ConstTree& collapsed);

// n-1 labels "p@c" / "dp@c"; encoders collapse internally, decoders return a
// collapsed tree.  Label count != n-1 throws std::invalid_argument.
LabelSequence encode_absolute_const(const ConstTree& tree);
LabelSequence encode_relative_const(const ConstTree& tree);
ConstDecodeResult decode_absolute_const(const LabelSequence& labels, const Sentence& sentence);
ConstDecodeResult decode_relative_const(const LabelSequence& labels, const Sentence& sentence);

// n labels "t@f@c" over the binarized tree; the last label is always "↖@@".
LabelSequence encode_tetra(const ConstTree& tree);
ConstDecodeResult decode_tetra(const LabelSequence& labels, const Sentence& sentence);

}  // namespace structlabel
