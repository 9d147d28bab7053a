#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "structlabel/core.hpp"

namespace structlabel {

enum class SourceFormat { ConlluTree, ConlluEnhancedGraph, PtbBrackets, SdpGraph };

struct CorpusEntry {
    Sentence sentence;
    std::optional<DepStructure> dep;
    std::optional<ConstTree> tree;
};

struct CorpusDocument {
    std::vector<CorpusEntry> entries;
    SourceFormat source_format = SourceFormat::ConlluTree;
};

struct ParseError : std::runtime_error {
    int line;  // 1-based; 0 when unknown
    ParseError(const std::string& message, int line_number)
        : std::runtime_error(message + (line_number > 0 ? " (line " + std::to_string(line_number) + ")" : "")),
          line(line_number) {}
};

// CoNLL-U.  Multiword-token ranges ("3-4") and empty nodes ("5.1") are
// skipped.  With enhanced_graph the DEPS column populates a graph instead of
// HEAD/DEPREL populating a tree.
CorpusDocument read_conllu(std::istream& in, bool enhanced_graph = false);
void write_conllu(std::ostream& out, const CorpusDocument& doc);

// PTB-style bracketed trees, one tree per s-expression; leaves are
// (POS word) pairs.  Pre-terminal labels are mirrored into Token::xpos.
CorpusDocument read_brackets(std::istream& in);
void write_brackets(std::ostream& out, const CorpusDocument& doc);

// SDP-2015 columns: ID FORM LEMMA POS TOP PRED FRAME ARG*.  Top nodes become
// arcs from index 0 labeled "top".  LEMMA is stored in Token::xpos, POS in
// Token::upos, FRAME (opaque) in Token::feats.
CorpusDocument read_sdp(std::istream& in);
void write_sdp(std::ostream& out, const CorpusDocument& doc);

// Label TSV interchange: "# scheme=<name>" header, blank-line separated
// sentence blocks of "form<TAB>label" rows.
struct LabelFile {
    struct Row {
        std::string form;
        std::string label;
        bool operator==(const Row&) const = default;
    };
    std::string scheme;
    std::vector<std::vector<Row>> sentences;
};

LabelFile read_labels(std::istream& in);
void write_labels(std::ostream& out, const LabelFile& file);

// Pairs corpus tokens with rendered labels; label vectors must already be
// padded to token count.  Throws ParseError-style std::runtime_error naming
// the sentence on a length mismatch.
LabelFile make_label_file(const CorpusDocument& doc, const std::vector<LabelSequence>& labels);

}  // namespace structlabel
