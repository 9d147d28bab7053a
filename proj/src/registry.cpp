#include "structlabel/registry.hpp"

#include <stdexcept>

#include "structlabel/const_codec.hpp"
#include "structlabel/dep_codec.hpp"
#include "structlabel/graph_codec.hpp"

namespace structlabel {

namespace {

const DepStructure& need_dep(const CorpusEntry& entry, const char* scheme) {
    if (!entry.dep)
        throw std::invalid_argument(std::string(scheme) + ": entry has no dependency structure");
    return *entry.dep;
}

const ConstTree& need_tree(const CorpusEntry& entry, const char* scheme) {
    if (!entry.tree)
        throw std::invalid_argument(std::string(scheme) + ": entry has no constituency tree");
    return *entry.tree;
}

EncodeOutcome from_dep(DepEncodeResult r) {
    return {std::move(r.labels), static_cast<int>(r.dropped.size()), r.lifts};
}

EncodeOutcome from_graph(GraphEncodeResult r) {
    return {std::move(r.labels), static_cast<int>(r.dropped.size()), 0};
}

DecodeOutcome from_dep(DepDecodeResult r) {
    DecodeOutcome out;
    out.dep = std::move(r.structure);
    out.repairs = r.repairs;
    out.discarded = r.discarded;
    return out;
}

DecodeOutcome from_graph(GraphDecodeResult r) {
    DecodeOutcome out;
    out.dep = std::move(r.structure);
    out.discarded = r.discarded;
    return out;
}

Codec dep_codec_named(const std::string& name, DepEncodeResult (*enc)(const DepStructure&),
                      DepDecodeResult (*dec)(const LabelSequence&, const Sentence&)) {
    Codec c;
    c.name = name;
    c.family = CodecFamily::DepTree;
    c.encode = [name, enc](const CorpusEntry& e) { return from_dep(enc(need_dep(e, name.c_str()))); };
    c.decode = [dec](const LabelSequence& l, const Sentence& s) { return from_dep(dec(l, s)); };
    return c;
}

Codec graph_codec_named(const std::string& base, int k,
                        GraphEncodeResult (*enc)(const DepStructure&, int),
                        GraphDecodeResult (*dec)(const LabelSequence&, const Sentence&, int)) {
    Codec c;
    c.name = base + ":" + std::to_string(k);
    c.family = CodecFamily::Graph;
    std::string name = c.name;
    c.encode = [name, k, enc](const CorpusEntry& e) {
        return from_graph(enc(need_dep(e, name.c_str()), k));
    };
    c.decode = [k, dec](const LabelSequence& l, const Sentence& s) {
        return from_graph(dec(l, s, k));
    };
    return c;
}

// The n-1 constituency schemes pad with a trailing "-" row.
Codec const_codec_named(const std::string& name, LabelSequence (*enc)(const ConstTree&),
                        ConstDecodeResult (*dec)(const LabelSequence&, const Sentence&),
                        bool padded) {
    Codec c;
    c.name = name;
    c.family = CodecFamily::Const;
    c.encode = [name, enc, padded](const CorpusEntry& e) {
        EncodeOutcome out;
        out.labels = enc(need_tree(e, name.c_str()));
        if (padded) out.labels.labels.push_back("-");
        return out;
    };
    c.decode = [dec, padded](const LabelSequence& l, const Sentence& s) {
        LabelSequence trimmed = l;
        if (padded && static_cast<int>(trimmed.labels.size()) == s.size() && s.size() > 0)
            trimmed.labels.pop_back();
        ConstDecodeResult r = dec(trimmed, s);
        DecodeOutcome out;
        out.tree = std::move(r.tree);
        out.repairs = r.repairs;
        return out;
    };
    return c;
}

}  // namespace

Codec find_codec(const std::string& scheme) {
    std::string base = scheme;
    int k = -1;
    if (auto colon = scheme.find(':'); colon != std::string::npos) {
        base = scheme.substr(0, colon);
        try {
            k = std::stoi(scheme.substr(colon + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("find_codec: bad plane count in '" + scheme + "'");
        }
        if (k < 1) throw std::invalid_argument("find_codec: plane count must be >= 1");
    }

    if (base == "dep-abs") return dep_codec_named(base, encode_absolute_dep, decode_absolute_dep);
    if (base == "dep-brk") return dep_codec_named(base, encode_bracketing_dep, decode_bracketing_dep);
    if (base == "dep-4b") return dep_codec_named(base, encode_4bit, decode_4bit);
    if (base == "dep-7b") return dep_codec_named(base, encode_7bit, decode_7bit);
    if (base == "dep-hexa") return dep_codec_named(base, encode_hexa, decode_hexa);
    if (base == "gr-rel") {
        Codec c;
        c.name = base;
        c.family = CodecFamily::Graph;
        c.encode = [](const CorpusEntry& e) {
            return from_graph(encode_relative_graph(need_dep(e, "gr-rel")));
        };
        c.decode = [](const LabelSequence& l, const Sentence& s) {
            return from_graph(decode_relative_graph(l, s));
        };
        return c;
    }
    if (base == "gr-brk")
        return graph_codec_named(base, k > 0 ? k : 3, encode_bracketing_graph,
                                 decode_bracketing_graph);
    if (base == "gr-4k") return graph_codec_named(base, k > 0 ? k : 4, encode_4k, decode_4k);
    if (base == "gr-6k") return graph_codec_named(base, k > 0 ? k : 4, encode_6k, decode_6k);
    if (base == "const-abs")
        return const_codec_named(base, encode_absolute_const, decode_absolute_const, true);
    if (base == "const-rel")
        return const_codec_named(base, encode_relative_const, decode_relative_const, true);
    if (base == "tetra") return const_codec_named(base, encode_tetra, decode_tetra, false);
    throw std::invalid_argument("find_codec: unknown scheme '" + scheme + "'");
}

std::vector<std::string> codec_names() {
    return {"const-abs", "const-rel", "tetra",  "dep-abs",  "dep-brk", "dep-4b",
            "dep-7b",    "dep-hexa",  "gr-rel", "gr-brk:k", "gr-4k:k", "gr-6k:k"};
}

Sentence codec_sentence(const Codec& codec, const CorpusEntry& entry) {
    Sentence s = entry.sentence;
    if (codec.family == CodecFamily::Const && entry.tree) {
        std::vector<std::string> pre = preterminal_labels(collapse_unary(*entry.tree));
        for (size_t i = 0; i < s.tokens.size() && i < pre.size(); ++i) s.tokens[i].xpos = pre[i];
    }
    return s;
}

ScoreReport wellformed_ratio(const Codec& codec, const std::vector<LabelSequence>& labels,
                             const std::vector<Sentence>& sentences) {
    if (labels.size() != sentences.size())
        throw std::invalid_argument("wellformed_ratio: corpus size mismatch");
    Fraction ratio;
    for (size_t i = 0; i < labels.size(); ++i) {
        ratio.den += 1;
        try {
            DecodeOutcome out = codec.decode(labels[i], sentences[i]);
            if (out.repairs != 0 || out.discarded != 0) continue;
            if (out.dep && codec.family == CodecFamily::DepTree &&
                !validate(*out.dep).well_formed())
                continue;
            if (out.tree && !leaves_cover(*out.tree, sentences[i].size())) continue;
            ratio.num += 1;
        } catch (const std::exception&) {
            // malformed label sequence: counted as not well-formed
        }
    }
    ScoreReport report;
    report.wellformed = ratio;
    return report;
}

}  // namespace structlabel
