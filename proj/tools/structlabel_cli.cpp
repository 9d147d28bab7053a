// Batch front end: encode/decode label files, score round trips, and run the
// numeric-kernel self checks.

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "structlabel/const_codec.hpp"
#include "structlabel/core.hpp"
#include "structlabel/label_kernels.hpp"
#include "structlabel/metrics.hpp"
#include "structlabel/registry.hpp"
#include "structlabel/treebank_io.hpp"

namespace sl = structlabel;

namespace {

sl::CorpusDocument read_corpus(const std::string& path, const std::string& format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    if (format == "conllu") return sl::read_conllu(in, false);
    if (format == "conllu-graph") return sl::read_conllu(in, true);
    if (format == "brackets") return sl::read_brackets(in);
    if (format == "sdp") return sl::read_sdp(in);
    throw std::runtime_error("unknown format '" + format + "'");
}

std::string apply_k(const std::string& scheme, int k) {
    if (k <= 0 || scheme.find(':') != std::string::npos) return scheme;
    return scheme + ":" + std::to_string(k);
}

struct EncodedCorpus {
    std::vector<sl::LabelSequence> labels;
    std::vector<sl::Sentence> sentences;  // decode-ready (const xpos fixed up)
    int dropped = 0, lifts = 0;
    std::set<std::string> label_set;
};

EncodedCorpus encode_corpus(const sl::Codec& codec, const sl::CorpusDocument& doc) {
    EncodedCorpus out;
    out.labels.resize(doc.entries.size());
    out.sentences.resize(doc.entries.size());
    std::vector<sl::EncodeOutcome> results(doc.entries.size());
    sl::parallel_for(static_cast<int>(doc.entries.size()), [&](int i) {
        results[i] = codec.encode(doc.entries[i]);
        out.sentences[i] = sl::codec_sentence(codec, doc.entries[i]);
    });
    for (size_t i = 0; i < results.size(); ++i) {
        out.labels[i] = std::move(results[i].labels);
        out.dropped += results[i].dropped;
        out.lifts += results[i].lifts;
        for (const std::string& l : out.labels[i].labels) out.label_set.insert(l);
    }
    return out;
}

int cmd_encode(const std::string& input, const std::string& format, const std::string& scheme,
               const std::string& out_path) {
    sl::CorpusDocument doc = read_corpus(input, format);
    sl::Codec codec = sl::find_codec(scheme);
    EncodedCorpus enc = encode_corpus(codec, doc);

    sl::LabelFile file = sl::make_label_file(doc, enc.labels);
    file.scheme = codec.name;
    std::ostream* out = &std::cout;
    std::ofstream fout;
    if (!out_path.empty()) {
        fout.open(out_path);
        if (!fout) throw std::runtime_error("cannot write " + out_path);
        out = &fout;
    }
    sl::write_labels(*out, file);

    std::ostream& summary = out_path.empty() ? std::cerr : std::cout;
    summary << "sentences=" << doc.entries.size() << "\n"
            << "label_set_size=" << enc.label_set.size() << "\n"
            << "dropped_arcs=" << enc.dropped << "\n"
            << "lifts=" << enc.lifts << "\n";
    return 0;
}

int cmd_decode(const std::string& input, const std::string& scheme_flag,
               const std::string& format, const std::string& out_path) {
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open " + input);
    sl::LabelFile file = sl::read_labels(in);
    sl::Codec codec = sl::find_codec(scheme_flag.empty() ? file.scheme : scheme_flag);

    sl::CorpusDocument doc;
    int repairs = 0, discarded = 0;
    for (size_t s = 0; s < file.sentences.size(); ++s) {
        sl::Sentence sent;
        sent.id = "s" + std::to_string(s + 1);
        sl::LabelSequence labels;
        labels.scheme = codec.name;
        for (const auto& row : file.sentences[s]) {
            sent.tokens.push_back({row.form, "", "", ""});
            labels.labels.push_back(row.label);
        }
        sl::DecodeOutcome out = codec.decode(labels, sent);
        repairs += out.repairs;
        discarded += out.discarded;
        sl::CorpusEntry entry;
        entry.sentence = sent;
        if (out.dep) entry.dep = std::move(out.dep);
        if (out.tree) entry.tree = sl::expand_unary(*out.tree);
        doc.entries.push_back(std::move(entry));
    }
    doc.source_format = codec.family == sl::CodecFamily::Const
                            ? sl::SourceFormat::PtbBrackets
                            : (codec.family == sl::CodecFamily::Graph
                                   ? sl::SourceFormat::ConlluEnhancedGraph
                                   : sl::SourceFormat::ConlluTree);

    std::ostream* out = &std::cout;
    std::ofstream fout;
    if (!out_path.empty()) {
        fout.open(out_path);
        if (!fout) throw std::runtime_error("cannot write " + out_path);
        out = &fout;
    }
    const std::string effective =
        format != "auto" ? format
                         : (codec.family == sl::CodecFamily::Const ? "brackets" : "conllu");
    if (effective == "brackets")
        sl::write_brackets(*out, doc);
    else if (effective == "conllu" || effective == "conllu-graph")
        sl::write_conllu(*out, doc);
    else
        throw std::runtime_error("unknown output format '" + effective + "'");
    std::ostream& summary = out_path.empty() ? std::cerr : std::cout;
    summary << "repairs=" << repairs << "\n"
            << "discarded=" << discarded << "\n";
    return 0;
}

int cmd_roundtrip(const std::string& input, const std::string& format, const std::string& scheme) {
    sl::CorpusDocument doc = read_corpus(input, format);
    sl::Codec codec = sl::find_codec(scheme);
    EncodedCorpus enc = encode_corpus(codec, doc);

    sl::ScoreReport report;
    double score = 1.0;
    if (codec.family == sl::CodecFamily::Const) {
        std::vector<sl::ConstTree> gold, pred;
        for (size_t i = 0; i < doc.entries.size(); ++i) {
            sl::DecodeOutcome out = codec.decode(enc.labels[i], enc.sentences[i]);
            gold.push_back(*doc.entries[i].tree);
            pred.push_back(*out.tree);
        }
        report = sl::const_f1(gold, pred);
        score = report.lf->value();
    } else {
        std::vector<sl::DepStructure> gold, pred;
        for (size_t i = 0; i < doc.entries.size(); ++i) {
            sl::DecodeOutcome out = codec.decode(enc.labels[i], enc.sentences[i]);
            gold.push_back(*doc.entries[i].dep);
            pred.push_back(*out.dep);
        }
        report = codec.family == sl::CodecFamily::Graph ? sl::graph_scores(gold, pred)
                                                        : sl::dep_scores(gold, pred);
        score = codec.family == sl::CodecFamily::Graph ? report.lf->value() : report.las->value();
    }
    sl::ScoreReport wf = sl::wellformed_ratio(codec, enc.labels, enc.sentences);
    report.wellformed = wf.wellformed;

    std::cout << report.to_text();
    std::cout << "dropped_arcs=" << enc.dropped << "\n"
              << "lifts=" << enc.lifts << "\n";
    if (enc.lifts > 0)
        std::cout << "lift_loss=" << 1.0 - score << "\n";

    // Lossless configurations must round-trip perfectly.
    const bool lossless = enc.dropped == 0 && enc.lifts == 0;
    return (lossless && score < 1.0) ? 1 : 0;
}

int cmd_eval(const std::string& gold_path, const std::string& pred_path, const std::string& format,
             const std::string& delete_labels, bool json) {
    sl::CorpusDocument gold = read_corpus(gold_path, format);
    sl::CorpusDocument pred = read_corpus(pred_path, format);
    sl::ScoreReport report;
    if (format == "brackets") {
        std::set<std::string> del = sl::kDefaultDeleteLabels;
        if (!delete_labels.empty()) {
            del.clear();
            std::stringstream ss(delete_labels);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) del.insert(item);
        }
        std::vector<sl::ConstTree> g, p;
        for (const auto& e : gold.entries) g.push_back(*e.tree);
        for (const auto& e : pred.entries) p.push_back(*e.tree);
        report = sl::const_f1(g, p, del);
    } else {
        std::vector<sl::DepStructure> g, p;
        for (const auto& e : gold.entries) g.push_back(*e.dep);
        for (const auto& e : pred.entries) p.push_back(*e.dep);
        report = (format == "conllu") ? sl::dep_scores(g, p) : sl::graph_scores(g, p);
    }
    std::cout << (json ? report.to_json() + "\n" : report.to_text());
    return 0;
}

struct SelfCheck {
    bool ok = true;
    void report(const std::string& name, bool pass, double residual) {
        std::cout << (pass ? "PASS " : "FAIL ") << name << " (residual=" << residual << ")\n";
        ok = ok && pass;
    }
};

int cmd_kernels_selfcheck(int T, int s, double beta_start, double beta_end, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::cout << "seed=" << seed << " T=" << T << " s=" << s << " backend="
              << (sl::active_backend() == sl::KernelBackend::Avx2 ? "avx2" : "scalar") << "\n";
    SelfCheck check;
    sl::NoiseSchedule sched = sl::build_schedule(T, beta_start, beta_end);

    double worst = -1.0;
    for (int t = 1; t <= T; ++t) worst = std::max(worst, sched.abar(t) - sched.abar(t - 1));
    check.report("alpha_bar_strictly_decreasing", worst < 0.0, worst);

    double direct = 1.0;
    for (int t = 1; t <= T; ++t) direct *= 1.0 - sched.beta[t - 1];
    check.report("alpha_bar_T_product", std::abs(direct - sched.abar(T)) < 1e-12,
                 std::abs(direct - sched.abar(T)));

    {
        const int t = std::max(1, T / 2), samples = 100000;
        const double ab = sched.abar(t);
        sl::BitSignal x0 = sl::tag2bit({3, 0, 2, 1}, 4);
        double mean0 = 0, var0 = 0;
        for (int i = 0; i < samples; ++i) {
            sl::BitSignal e(x0.n, x0.m);
            for (double& v : e.v) v = gauss(rng);
            sl::BitSignal xt = sl::forward_latent(x0, t, e, sched);
            const double centered = xt.at(0, 0) - std::sqrt(ab) * x0.at(0, 0);
            mean0 += centered;
            var0 += centered * centered;
        }
        mean0 /= samples;
        var0 = var0 / samples - mean0 * mean0;
        const double var_err = std::abs(var0 - (1.0 - ab)) / (1.0 - ab);
        const double mean_err = std::abs(mean0) / std::sqrt((1.0 - ab) / samples);
        check.report("forward_marginal_mean", mean_err < 4.0, mean_err);
        check.report("forward_marginal_variance", var_err < 0.02, var_err);
    }

    {
        sl::BitSignal x0 = sl::tag2bit({1, 2, 3}, 4);
        sl::BitSignal e(x0.n, x0.m), z(x0.n, x0.m);
        for (double& v : e.v) v = gauss(rng);
        sl::BitSignal xt = sl::forward_latent(x0, T, e, sched);
        sl::BitSignal back = sl::ddim_step(xt, T, 0, e, z, sched);
        double worst_entry = 0;
        for (size_t i = 0; i < back.v.size(); ++i)
            worst_entry = std::max(worst_entry, std::abs(back.v[i] - x0.v[i]));
        check.report("ddim_single_step_inverse", worst_entry < 1e-9, worst_entry);
    }

    {
        int bit_errors = 0, calls = 0;
        const int label_count = 13;
        std::uniform_int_distribution<int> pick(0, label_count - 1);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<int> ids(8);
            for (int& id : ids) id = pick(rng);
            sl::BitSignal x0 = sl::tag2bit(ids, label_count);
            sl::BitSignal e(x0.n, x0.m);
            for (double& v : e.v) v = gauss(rng);
            sl::BitSignal xT = sl::forward_latent(x0, T, e, sched);
            auto predict = [&](const sl::BitSignal& x, int t) {
                ++calls;
                sl::BitSignal eh(x.n, x.m);
                const double ab = sched.abar(t);
                for (size_t i = 0; i < x.v.size(); ++i)
                    eh.v[i] = (x.v[i] - std::sqrt(ab) * x0.v[i]) / std::sqrt(1.0 - ab);
                return eh;
            };
            sl::BitSignal xhat = sl::denoise_loop(predict, sched, s, xT, [] { return 0.0; });
            std::vector<int> decoded = sl::bit2tag(xhat, label_count, 0);
            for (size_t i = 0; i < ids.size(); ++i)
                if (decoded[i] != ids[i]) ++bit_errors;
        }
        check.report("oracle_denoise_bits", bit_errors == 0, bit_errors);
        const int expected = 50 * ((T + s - 1) / s);
        check.report("denoise_predict_calls", calls == expected,
                     std::abs(calls - expected));
    }

    {
        bool inverse_ok = true;
        for (int id = 0; id < 37; ++id) {
            sl::BitSignal sig = sl::tag2bit({id}, 37);
            if (sl::bit2tag(sig, 37, 0)[0] != id) inverse_ok = false;
        }
        check.report("tag2bit_inverse", inverse_ok, inverse_ok ? 0 : 1);
    }

    {
        double worst_sum = 0;
        bool argmax_ok = true;
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> row(6);
            double total = 0;
            for (double& p : row) {
                p = uniform(rng) + 1e-3;
                total += p;
            }
            for (double& p : row) p /= total;
            std::vector<double> zero(6, 0.0);
            std::vector<double> soft = sl::gumbel_softmax(row, 0.7, zero);
            double sum = 0;
            for (double p : soft) sum += p;
            worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
            auto arg = [](const std::vector<double>& v) {
                return std::max_element(v.begin(), v.end()) - v.begin();
            };
            if (arg(soft) != arg(row)) argmax_ok = false;
        }
        check.report("gumbel_rows_sum_to_one", worst_sum < 1e-9, worst_sum);
        check.report("gumbel_zero_noise_argmax", argmax_ok, argmax_ok ? 0 : 1);
    }

    {
        sl::AdversarialBatch batch;
        batch.gold = {0, 2, 1};
        batch.pred = {{0.7, 0.2, 0.1}, {0.1, 0.2, 0.7}, {0.5, 0.3, 0.2}};
        batch.d_real = {1.0, 1.0, 1.0};
        batch.d_fake = {0.4, 0.9, 0.3};
        batch.lambda = 0.0;
        sl::AdversarialLosses l = sl::adversarial_losses(batch);
        check.report("generator_loss_lambda0", std::abs(l.l_g - l.l_tag) < 1e-12,
                     std::abs(l.l_g - l.l_tag));
        check.report("disc_real_perfect", l.l_dp < 1e-10, l.l_dp);
    }

    {
        std::vector<double> x(1000), y(1000), out_simd(1000), out_scalar(1000);
        for (size_t i = 0; i < x.size(); ++i) {
            x[i] = gauss(rng);
            y[i] = gauss(rng);
        }
        sl::axpby(0.3, x.data(), -1.7, y.data(), out_simd.data(), x.size());
        const double red_simd = sl::sum_sq_diff(x.data(), y.data(), x.size());
        sl::force_scalar_backend(true);
        sl::axpby(0.3, x.data(), -1.7, y.data(), out_scalar.data(), x.size());
        const double red_scalar = sl::sum_sq_diff(x.data(), y.data(), x.size());
        sl::force_scalar_backend(false);
        double worst_entry = 0;
        for (size_t i = 0; i < x.size(); ++i)
            worst_entry = std::max(worst_entry, std::abs(out_simd[i] - out_scalar[i]));
        check.report("kernel_backend_elementwise", worst_entry == 0.0, worst_entry);
        check.report("kernel_backend_reduction", std::abs(red_simd - red_scalar) < 1e-12,
                     std::abs(red_simd - red_scalar));
    }

    return check.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"structlabel: linearization toolkit for trees and graphs"};
    app.require_subcommand(1);

    std::string input, gold_path, pred_path, out_path, scheme, format = "conllu",
                                                             delete_labels;
    int k = 0, T = 100, s = 10;
    double beta_start = 1e-4, beta_end = 0.02;
    uint64_t seed = 42;
    bool json = false;

    CLI::App* enc = app.add_subcommand("encode", "corpus -> label TSV");
    enc->add_option("input", input)->required();
    enc->add_option("--scheme", scheme)->required();
    enc->add_option("--format", format);
    enc->add_option("--k", k);
    enc->add_option("--out", out_path);

    CLI::App* dec = app.add_subcommand("decode", "label TSV -> corpus");
    std::string dec_format = "auto";
    dec->add_option("input", input)->required();
    dec->add_option("--scheme", scheme);
    dec->add_option("--format", dec_format);
    dec->add_option("--k", k);
    dec->add_option("--out", out_path);

    CLI::App* rt = app.add_subcommand("roundtrip", "encode, decode, score against gold");
    rt->add_option("input", input)->required();
    rt->add_option("--scheme", scheme)->required();
    rt->add_option("--format", format);
    rt->add_option("--k", k);

    CLI::App* ev = app.add_subcommand("eval", "score prediction file against gold");
    ev->add_option("gold", gold_path)->required();
    ev->add_option("pred", pred_path)->required();
    ev->add_option("--format", format);
    ev->add_option("--delete-labels", delete_labels);
    ev->add_flag("--json", json);

    CLI::App* kc = app.add_subcommand("kernels-selfcheck", "diffusion/adversarial invariants");
    kc->add_option("--T", T);
    kc->add_option("--s", s);
    kc->add_option("--beta-start", beta_start);
    kc->add_option("--beta-end", beta_end);
    kc->add_option("--seed", seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*enc) return cmd_encode(input, format, apply_k(scheme, k), out_path);
        if (*dec) return cmd_decode(input, apply_k(scheme, k), dec_format, out_path);
        if (*rt) return cmd_roundtrip(input, format, apply_k(scheme, k));
        if (*ev) return cmd_eval(gold_path, pred_path, format, delete_labels, json);
        if (*kc) return cmd_kernels_selfcheck(T, s, beta_start, beta_end, seed);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
