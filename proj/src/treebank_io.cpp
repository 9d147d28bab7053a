#include "structlabel/treebank_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace structlabel {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

bool is_blank(const std::string& line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::string opt(const std::string& field) { return field == "_" ? std::string() : field; }
std::string und(const std::string& field) { return field.empty() ? "_" : field; }

int parse_int(const std::string& s, const char* what, int line_no) {
    try {
        size_t pos = 0;
        int value = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return value;
    } catch (const std::exception&) {
        throw ParseError(std::string("expected integer ") + what + ", got '" + s + "'", line_no);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// CoNLL-U
// ---------------------------------------------------------------------------

CorpusDocument read_conllu(std::istream& in, bool enhanced_graph) {
    CorpusDocument doc;
    doc.source_format = enhanced_graph ? SourceFormat::ConlluEnhancedGraph : SourceFormat::ConlluTree;

    Sentence sent;
    std::vector<Arc> arcs;
    std::string pending_id;
    int line_no = 0;

    auto flush = [&]() {
        if (sent.tokens.empty()) return;
        if (sent.id.empty()) sent.id = "s" + std::to_string(doc.entries.size() + 1);
        DepStructure dep;
        dep.sentence = sent;
        dep.arcs = arcs;
        dep.kind = enhanced_graph ? StructureKind::Graph : StructureKind::Tree;
        dep.normalize();
        doc.entries.push_back({sent, dep, std::nullopt});
        sent = Sentence{};
        arcs.clear();
    };

    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip_cr(raw);
        if (is_blank(line)) {
            flush();
            continue;
        }
        if (line[0] == '#') {
            auto eq = line.find('=');
            if (line.find("sent_id") != std::string::npos && eq != std::string::npos) {
                std::string id = line.substr(eq + 1);
                id.erase(0, id.find_first_not_of(" \t"));
                sent.id = id;
            }
            continue;
        }
        std::vector<std::string> cols = split(line, '\t');
        if (cols.size() != 10)
            throw ParseError("expected 10 tab-separated columns, got " + std::to_string(cols.size()), line_no);
        const std::string& id = cols[0];
        if (id.find('-') != std::string::npos || id.find('.') != std::string::npos)
            continue;  // multiword-token range or empty node
        int index = parse_int(id, "token id", line_no);
        if (index != static_cast<int>(sent.tokens.size()) + 1)
            throw ParseError("token ids must be consecutive from 1, got " + id, line_no);
        sent.tokens.push_back({cols[1], opt(cols[3]), opt(cols[4]), opt(cols[5])});

        if (enhanced_graph) {
            if (cols[8] != "_") {
                for (const std::string& pair : split(cols[8], '|')) {
                    auto colon = pair.find(':');
                    if (colon == std::string::npos)
                        throw ParseError("malformed DEPS entry '" + pair + "'", line_no);
                    std::string head_str = pair.substr(0, colon);
                    if (head_str.find('.') != std::string::npos) continue;  // empty-node head
                    int head = parse_int(head_str, "DEPS head", line_no);
                    arcs.push_back({head, index, pair.substr(colon + 1)});
                }
            }
        } else if (cols[6] != "_") {
            int head = parse_int(cols[6], "head", line_no);
            arcs.push_back({head, index, opt(cols[7])});
        }
    }
    flush();
    return doc;
}

void write_conllu(std::ostream& out, const CorpusDocument& doc) {
    const bool graph = doc.source_format == SourceFormat::ConlluEnhancedGraph;
    for (const CorpusEntry& entry : doc.entries) {
        out << "# sent_id = " << entry.sentence.id << "\n";
        const int n = entry.sentence.size();
        std::vector<std::string> head(n + 1, "_"), rel(n + 1, "_"), deps(n + 1, "_");
        if (entry.dep) {
            for (const Arc& a : entry.dep->arcs) {
                if (graph) {
                    std::string item = std::to_string(a.head) + ":" + a.rel;
                    deps[a.dep] = deps[a.dep] == "_" ? item : deps[a.dep] + "|" + item;
                } else {
                    head[a.dep] = std::to_string(a.head);
                    rel[a.dep] = und(a.rel);
                }
            }
        }
        for (int i = 1; i <= n; ++i) {
            const Token& t = entry.sentence.tokens[i - 1];
            out << i << '\t' << t.form << '\t' << "_" << '\t' << und(t.upos) << '\t' << und(t.xpos)
                << '\t' << und(t.feats) << '\t' << head[i] << '\t' << rel[i] << '\t' << deps[i]
                << '\t' << "_" << "\n";
        }
        out << "\n";
    }
}

// ---------------------------------------------------------------------------
// PTB brackets
// ---------------------------------------------------------------------------

namespace {

struct BracketParser {
    const std::string& text;
    size_t pos = 0;

    explicit BracketParser(const std::string& t) : text(t) {}

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool at_end() {
        skip_space();
        return pos >= text.size();
    }

    std::string atom() {
        size_t start = pos;
        while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
               !std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        return text.substr(start, pos - start);
    }

    // Parses one node; fills tokens and assigns leaf indices.
    ConstNode node(std::vector<Token>& tokens) {
        skip_space();
        if (pos >= text.size() || text[pos] != '(')
            throw ParseError("expected '(' at offset " + std::to_string(pos), 0);
        ++pos;
        skip_space();
        ConstNode result;
        if (pos < text.size() && text[pos] != '(' && text[pos] != ')') result.label = atom();
        while (true) {
            skip_space();
            if (pos >= text.size())
                throw ParseError("unbalanced parentheses at offset " + std::to_string(pos), 0);
            if (text[pos] == ')') {
                ++pos;
                break;
            }
            if (text[pos] == '(') {
                result.children.push_back(node(tokens));
            } else {
                std::string word = atom();
                ConstNode leaf;
                tokens.push_back({word, "", "", ""});
                leaf.leaf = static_cast<int>(tokens.size());
                result.children.push_back(leaf);
            }
        }
        if (result.children.empty())
            throw ParseError("empty constituent at offset " + std::to_string(pos), 0);
        return result;
    }
};

void mirror_preterminals(const ConstNode& node, std::vector<Token>& tokens) {
    if (node.children.size() == 1 && node.children[0].is_leaf() && !node.label.empty())
        tokens[node.children[0].leaf - 1].xpos = node.label;
    for (const auto& child : node.children) mirror_preterminals(child, tokens);
}

void write_node(std::ostream& out, const ConstNode& node, const Sentence& sent) {
    if (node.is_leaf()) {
        out << sent.tokens[node.leaf - 1].form;
        return;
    }
    out << '(' << node.label;
    for (const auto& child : node.children) {
        out << ' ';
        write_node(out, child, sent);
    }
    out << ')';
}

}  // namespace

CorpusDocument read_brackets(std::istream& in) {
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();

    CorpusDocument doc;
    doc.source_format = SourceFormat::PtbBrackets;
    BracketParser parser(text);
    while (!parser.at_end()) {
        std::vector<Token> tokens;
        ConstNode root = parser.node(tokens);
        // Unwrap a label-less outer shell "( (S ...) )".
        if (root.label.empty() && root.children.size() == 1 && !root.children[0].is_leaf())
            root = root.children[0];
        mirror_preterminals(root, tokens);
        Sentence sent;
        sent.id = "s" + std::to_string(doc.entries.size() + 1);
        sent.tokens = tokens;
        ConstTree tree{root, false};
        doc.entries.push_back({sent, std::nullopt, tree});
    }
    return doc;
}

void write_brackets(std::ostream& out, const CorpusDocument& doc) {
    for (const CorpusEntry& entry : doc.entries) {
        if (!entry.tree) continue;
        write_node(out, entry.tree->root, entry.sentence);
        out << "\n";
    }
}

// ---------------------------------------------------------------------------
// SDP 2015
// ---------------------------------------------------------------------------

CorpusDocument read_sdp(std::istream& in) {
    CorpusDocument doc;
    doc.source_format = SourceFormat::SdpGraph;

    std::vector<std::vector<std::string>> rows;
    int block_start_line = 0;
    int line_no = 0;

    auto flush = [&]() {
        if (rows.empty()) return;
        Sentence sent;
        sent.id = "s" + std::to_string(doc.entries.size() + 1);
        std::vector<int> predicates;
        for (size_t i = 0; i < rows.size(); ++i) {
            const auto& cols = rows[i];
            sent.tokens.push_back({cols[1], opt(cols[3]), opt(cols[2]),
                                   cols.size() > 6 ? opt(cols[6]) : std::string()});
            if (cols[5] == "+") predicates.push_back(static_cast<int>(i) + 1);
        }
        std::vector<Arc> arcs;
        for (size_t i = 0; i < rows.size(); ++i) {
            const auto& cols = rows[i];
            size_t arg_count = cols.size() > 7 ? cols.size() - 7 : 0;
            if (arg_count != predicates.size())
                throw ParseError("argument columns (" + std::to_string(arg_count) +
                                     ") do not match predicate count (" +
                                     std::to_string(predicates.size()) + ") in sentence " + sent.id,
                                 block_start_line + static_cast<int>(i));
            if (cols[4] == "+") arcs.push_back({0, static_cast<int>(i) + 1, "top"});
            for (size_t j = 0; j < arg_count; ++j)
                if (cols[7 + j] != "_")
                    arcs.push_back({predicates[j], static_cast<int>(i) + 1, cols[7 + j]});
        }
        DepStructure dep;
        dep.sentence = sent;
        dep.arcs = arcs;
        dep.kind = StructureKind::Graph;
        dep.normalize();
        doc.entries.push_back({sent, dep, std::nullopt});
        rows.clear();
    };

    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip_cr(raw);
        if (is_blank(line)) {
            flush();
            continue;
        }
        if (line[0] == '#') continue;
        std::vector<std::string> cols = split(line, '\t');
        if (cols.size() < 6)
            throw ParseError("expected at least 6 SDP columns, got " + std::to_string(cols.size()),
                             line_no);
        if (rows.empty()) block_start_line = line_no;
        rows.push_back(cols);
    }
    flush();
    return doc;
}

void write_sdp(std::ostream& out, const CorpusDocument& doc) {
    for (const CorpusEntry& entry : doc.entries) {
        const int n = entry.sentence.size();
        std::vector<char> is_top(n + 1, 0);
        std::vector<int> predicates;
        std::vector<std::vector<Arc>> incoming(n + 1);
        if (entry.dep) {
            std::vector<char> is_pred(n + 1, 0);
            for (const Arc& a : entry.dep->arcs) {
                if (a.head == 0)
                    is_top[a.dep] = 1;
                else {
                    is_pred[a.head] = 1;
                    incoming[a.dep].push_back(a);
                }
            }
            for (int i = 1; i <= n; ++i)
                if (is_pred[i]) predicates.push_back(i);
        }
        for (int i = 1; i <= n; ++i) {
            const Token& t = entry.sentence.tokens[i - 1];
            out << i << '\t' << t.form << '\t' << und(t.xpos) << '\t' << und(t.upos) << '\t'
                << (is_top[i] ? "+" : "-") << '\t'
                << (std::binary_search(predicates.begin(), predicates.end(), i) ? "+" : "-") << '\t'
                << und(t.feats);
            for (int p : predicates) {
                std::string rel = "_";
                for (const Arc& a : incoming[i])
                    if (a.head == p) rel = a.rel;
                out << '\t' << rel;
            }
            out << "\n";
        }
        out << "\n";
    }
}

// ---------------------------------------------------------------------------
// Label TSV
// ---------------------------------------------------------------------------

LabelFile read_labels(std::istream& in) {
    LabelFile file;
    bool have_header = false;
    std::vector<LabelFile::Row> block;
    int line_no = 0;

    auto flush = [&]() {
        if (!block.empty()) {
            file.sentences.push_back(block);
            block.clear();
        }
    };

    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip_cr(raw);
        if (is_blank(line)) {
            flush();
            continue;
        }
        if (line[0] == '#') {
            auto eq = line.find("scheme=");
            if (eq != std::string::npos) {
                file.scheme = line.substr(eq + 7);
                have_header = true;
            }
            continue;
        }
        std::vector<std::string> cols = split(line, '\t');
        if (cols.size() != 2)
            throw ParseError("expected form<TAB>label, got " + std::to_string(cols.size()) + " fields",
                             line_no);
        block.push_back({cols[0], cols[1]});
    }
    flush();
    if (!have_header) throw ParseError("missing '# scheme=' header", 1);
    return file;
}

void write_labels(std::ostream& out, const LabelFile& file) {
    out << "# scheme=" << file.scheme << "\n";
    for (const auto& sent : file.sentences) {
        for (const auto& row : sent) out << row.form << '\t' << row.label << "\n";
        out << "\n";
    }
}

LabelFile make_label_file(const CorpusDocument& doc, const std::vector<LabelSequence>& labels) {
    if (doc.entries.size() != labels.size())
        throw std::runtime_error("make_label_file: corpus has " + std::to_string(doc.entries.size()) +
                                 " sentences but " + std::to_string(labels.size()) +
                                 " label sequences were given");
    LabelFile file;
    if (!labels.empty()) file.scheme = labels.front().scheme;
    for (size_t i = 0; i < doc.entries.size(); ++i) {
        const Sentence& sent = doc.entries[i].sentence;
        if (sent.tokens.size() != labels[i].labels.size())
            throw std::runtime_error("label count mismatch in sentence " + sent.id);
        std::vector<LabelFile::Row> rows;
        for (size_t t = 0; t < sent.tokens.size(); ++t)
            rows.push_back({sent.tokens[t].form, labels[i].labels[t]});
        file.sentences.push_back(rows);
    }
    return file;
}

}  // namespace structlabel
