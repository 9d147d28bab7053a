#include "structlabel/metrics.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "structlabel/const_codec.hpp"

namespace structlabel {

namespace {

void append_metric(std::ostringstream& text, nlohmann::json& json, const char* key,
                   const std::optional<Fraction>& f) {
    if (!f) return;
    text << key << "=" << f->value() << "\n";
    json[key] = {{"value", f->value()}, {"num", f->num}, {"den", f->den}};
}

struct Span {
    int start, end;
    std::string label;
    auto operator<=>(const Span&) const = default;
};

std::string map_label(const std::string& label) { return label == "PRT" ? "ADVP" : label; }

// (start, end, label) for every non-preterminal internal node.
std::vector<Span> spans_of(const ConstTree& tree, const std::set<std::string>& delete_labels) {
    ConstTree expanded = tree.collapsed ? expand_unary(tree) : tree;
    std::vector<Span> spans;
    std::function<std::pair<int, int>(const ConstNode&)> walk =
        [&](const ConstNode& node) -> std::pair<int, int> {
        if (node.is_leaf()) return {node.leaf, node.leaf};
        int lo = 0, hi = 0;
        bool first = true;
        for (const auto& child : node.children) {
            auto [clo, chi] = walk(child);
            if (first) lo = clo;
            hi = chi;
            first = false;
        }
        const bool preterminal = node.children.size() == 1 && node.children[0].is_leaf();
        if (!preterminal && !delete_labels.count(node.label))
            spans.push_back({lo, hi, map_label(node.label)});
        return {lo, hi};
    };
    walk(expanded.root);
    return spans;
}

template <typename T>
double multiset_overlap(std::vector<T> a, std::vector<T> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<T> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    return static_cast<double>(common.size());
}

Fraction f1_fraction(double matched, double pred_total, double gold_total) {
    // F1 stored as a fraction with the micro-averaged denominator.  Two empty
    // sets agree exactly.
    if (pred_total + gold_total == 0) return {1.0, 1.0};
    return {2.0 * matched, pred_total + gold_total};
}

}  // namespace

const std::set<std::string> kDefaultDeleteLabels = {"TOP", "S1", "-NONE-", ",",
                                                    ":",   "``", "''",     "."};

std::string ScoreReport::to_text() const {
    std::ostringstream text;
    nlohmann::json ignored;
    append_metric(text, ignored, "accuracy", accuracy);
    append_metric(text, ignored, "uas", uas);
    append_metric(text, ignored, "las", las);
    append_metric(text, ignored, "uf", uf);
    append_metric(text, ignored, "lf", lf);
    append_metric(text, ignored, "um", um);
    append_metric(text, ignored, "lm", lm);
    append_metric(text, ignored, "wellformed", wellformed);
    return text.str();
}

std::string ScoreReport::to_json() const {
    std::ostringstream text;
    nlohmann::json json = nlohmann::json::object();
    append_metric(text, json, "accuracy", accuracy);
    append_metric(text, json, "uas", uas);
    append_metric(text, json, "las", las);
    append_metric(text, json, "uf", uf);
    append_metric(text, json, "lf", lf);
    append_metric(text, json, "um", um);
    append_metric(text, json, "lm", lm);
    append_metric(text, json, "wellformed", wellformed);
    return json.dump(2);
}

ScoreReport tagging_accuracy(const std::vector<std::vector<std::string>>& gold,
                             const std::vector<std::vector<std::string>>& pred) {
    if (gold.size() != pred.size())
        throw std::invalid_argument("tagging_accuracy: sentence count mismatch");
    Fraction acc;
    for (size_t s = 0; s < gold.size(); ++s) {
        if (gold[s].size() != pred[s].size())
            throw std::invalid_argument("tagging_accuracy: token count mismatch at sentence " +
                                        std::to_string(s));
        for (size_t i = 0; i < gold[s].size(); ++i) {
            acc.den += 1;
            if (gold[s][i] == pred[s][i]) acc.num += 1;
        }
    }
    ScoreReport report;
    report.accuracy = acc;
    return report;
}

ScoreReport dep_scores(const std::vector<DepStructure>& gold,
                       const std::vector<DepStructure>& pred) {
    if (gold.size() != pred.size()) throw std::invalid_argument("dep_scores: corpus size mismatch");
    Fraction uas, las, um, lm;
    for (size_t s = 0; s < gold.size(); ++s) {
        const int n = gold[s].size();
        if (n != pred[s].size())
            throw std::invalid_argument("dep_scores: token count mismatch at sentence " +
                                        (gold[s].sentence.id.empty() ? std::to_string(s)
                                                                     : gold[s].sentence.id));
        std::map<int, std::pair<int, std::string>> ghead, phead;
        for (const Arc& a : gold[s].arcs) ghead.emplace(a.dep, std::make_pair(a.head, a.rel));
        for (const Arc& a : pred[s].arcs) phead.emplace(a.dep, std::make_pair(a.head, a.rel));
        bool all_u = true, all_l = true;
        for (int i = 1; i <= n; ++i) {
            uas.den += 1;
            las.den += 1;
            auto g = ghead.find(i), p = phead.find(i);
            const bool head_ok =
                g != ghead.end() && p != phead.end() && g->second.first == p->second.first;
            const bool rel_ok = head_ok && g->second.second == p->second.second;
            if (head_ok) uas.num += 1;
            if (rel_ok) las.num += 1;
            all_u = all_u && head_ok;
            all_l = all_l && rel_ok;
        }
        um.den += 1;
        lm.den += 1;
        if (all_u) um.num += 1;
        if (all_l) lm.num += 1;
    }
    ScoreReport report;
    report.uas = uas;
    report.las = las;
    report.um = um;
    report.lm = lm;
    return report;
}

ScoreReport const_f1(const std::vector<ConstTree>& gold, const std::vector<ConstTree>& pred,
                     const std::set<std::string>& delete_labels) {
    if (gold.size() != pred.size()) throw std::invalid_argument("const_f1: corpus size mismatch");
    double lmatch = 0, umatch = 0, gtotal = 0, ptotal = 0;
    Fraction um, lm;
    for (size_t s = 0; s < gold.size(); ++s) {
        if (gold[s].leaf_count() != pred[s].leaf_count())
            throw std::invalid_argument("const_f1: leaf count mismatch at sentence " +
                                        std::to_string(s));
        std::vector<Span> gs = spans_of(gold[s], delete_labels);
        std::vector<Span> ps = spans_of(pred[s], delete_labels);
        std::vector<std::pair<int, int>> gu, pu;
        for (const Span& sp : gs) gu.emplace_back(sp.start, sp.end);
        for (const Span& sp : ps) pu.emplace_back(sp.start, sp.end);
        const double lm_here = multiset_overlap(gs, ps);
        const double um_here = multiset_overlap(gu, pu);
        lmatch += lm_here;
        umatch += um_here;
        gtotal += static_cast<double>(gs.size());
        ptotal += static_cast<double>(ps.size());
        um.den += 1;
        lm.den += 1;
        if (um_here == gs.size() && gs.size() == ps.size()) um.num += 1;
        if (lm_here == gs.size() && gs.size() == ps.size()) lm.num += 1;
    }
    ScoreReport report;
    report.lf = f1_fraction(lmatch, ptotal, gtotal);
    report.uf = f1_fraction(umatch, ptotal, gtotal);
    report.um = um;
    report.lm = lm;
    return report;
}

ScoreReport graph_scores(const std::vector<DepStructure>& gold,
                         const std::vector<DepStructure>& pred) {
    if (gold.size() != pred.size())
        throw std::invalid_argument("graph_scores: corpus size mismatch");
    double lmatch = 0, umatch = 0, gtotal = 0, ptotal = 0;
    Fraction um, lm;
    for (size_t s = 0; s < gold.size(); ++s) {
        if (gold[s].size() != pred[s].size())
            throw std::invalid_argument("graph_scores: token count mismatch at sentence " +
                                        std::to_string(s));
        std::vector<std::tuple<int, int, std::string>> gl, pl;
        std::vector<std::pair<int, int>> gu, pu;
        for (const Arc& a : gold[s].arcs) {
            gl.emplace_back(a.head, a.dep, a.rel);
            gu.emplace_back(a.head, a.dep);
        }
        for (const Arc& a : pred[s].arcs) {
            pl.emplace_back(a.head, a.dep, a.rel);
            pu.emplace_back(a.head, a.dep);
        }
        const double lm_here = multiset_overlap(gl, pl);
        const double um_here = multiset_overlap(gu, pu);
        lmatch += lm_here;
        umatch += um_here;
        gtotal += static_cast<double>(gl.size());
        ptotal += static_cast<double>(pl.size());
        um.den += 1;
        lm.den += 1;
        if (um_here == gu.size() && gu.size() == pu.size()) um.num += 1;
        if (lm_here == gl.size() && gl.size() == pl.size()) lm.num += 1;
    }
    ScoreReport report;
    report.lf = f1_fraction(lmatch, ptotal, gtotal);
    report.uf = f1_fraction(umatch, ptotal, gtotal);
    report.um = um;
    report.lm = lm;
    return report;
}

}  // namespace structlabel
