#pragma once

#include <string>
#include <vector>

#include "structlabel/core.hpp"

namespace structlabel {

struct DepEncodeResult {
    LabelSequence labels;
    std::vector<Arc> dropped;  // arcs no plane could take
    int lifts = 0;             // pseudo-projective head lifts applied
};

struct DepDecodeResult {
    DepStructure structure;
    int repairs = 0;    // headless/cyclic/multi-root fixes
    int discarded = 0;  // unmatched brackets, malformed symbols
};

// Labels render as "x@rel".  Decoders accept any label strings and always
// return a structure with validate().well_formed() == true.

// x = head index of each token.
DepEncodeResult encode_absolute_dep(const DepStructure& tree);
DepDecodeResult decode_absolute_dep(const LabelSequence& labels, const Sentence& sentence);

// x = bracket string over {\,>,<,/} plus '*'-starred plane-2 forms.  Arcs
// beyond two planes are dropped.
DepEncodeResult encode_bracketing_dep(const DepStructure& tree);
DepDecodeResult decode_bracketing_dep(const LabelSequence& labels, const Sentence& sentence);

// x = 4 bits: left parent, outermost dependent, has left deps, has right
// deps.  Non-projective input is pseudo-projectivized first (lifts counted);
// decode deprojectivizes when lift annotations are present.
DepEncodeResult encode_4bit(const DepStructure& tree);
DepDecodeResult decode_4bit(const LabelSequence& labels, const Sentence& sentence);

// x = 7 bits: head direction+plane (2), outermost flag, left/right deps per
// plane (4).  The outermost flag is suppressed at the last token; it is dead
// there (the last token never has a right head to pop).
DepEncodeResult encode_7bit(const DepStructure& tree);
DepDecodeResult decode_7bit(const LabelSequence& labels, const Sentence& sentence);

// Labels "h@f@rel": h in {↗,↖}, f = fence arrow + BHT constituent (R: head
// from the right child, L: from the left), "Ω" at the last token.
DepEncodeResult encode_hexa(const DepStructure& tree);
DepDecodeResult decode_hexa(const LabelSequence& labels, const Sentence& sentence);

struct PprojResult {
    DepStructure tree;
    int lifts = 0;
};

// Head-variant pseudo-projectivization: each offending arc is lifted to its
// head's head until the tree is projective; lifted arcs get rel "r1|r2" with
// r2 the original head's incoming relation.  deprojectivize reattaches each
// annotated dependent to the first r2-labeled node found breadth-first below
// the lifted head, and strips the annotations either way.
PprojResult pseudo_projectivize(const DepStructure& tree);
DepStructure deprojectivize(const DepStructure& tree);

// Shared decoder postprocessing.  heads/rels are 1-based (index 0 unused);
// heads[i] in [0,n]\{i} or -1 for missing.
// Missing heads attach to 0 (first) or the previous token, extra roots move
// to the previous token, cycles re-hang on the root token.
DepStructure finish_tree(const Sentence& sentence, std::vector<int> heads,
                         std::vector<std::string> rels, int& repairs);

}  // namespace structlabel
