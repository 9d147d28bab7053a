#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "structlabel/const_codec.hpp"
#include "structlabel/metrics.hpp"

#include <functional>
#include <map>
#include <random>

using namespace structlabel;

namespace {

// Independent naive scorers used as oracles.

struct NaiveDep {
    double uas_n = 0, las_n = 0, den = 0;
};

NaiveDep naive_dep(const DepStructure& gold, const DepStructure& pred) {
    NaiveDep out;
    for (int i = 1; i <= gold.size(); ++i) {
        out.den += 1;
        for (const Arc& g : gold.arcs) {
            if (g.dep != i) continue;
            for (const Arc& p : pred.arcs) {
                if (p.dep != i) continue;
                if (p.head == g.head) {
                    out.uas_n += 1;
                    if (p.rel == g.rel) out.las_n += 1;
                }
            }
        }
    }
    return out;
}

std::multiset<std::tuple<int, int, std::string>> naive_spans(const ConstTree& tree,
                                                             const std::set<std::string>& del) {
    std::multiset<std::tuple<int, int, std::string>> out;
    ConstTree expanded = expand_unary(collapse_unary(tree));
    std::function<std::pair<int, int>(const ConstNode&)> walk = [&](const ConstNode& node) {
        if (node.is_leaf()) return std::pair{node.leaf, node.leaf};
        int lo = 1 << 30, hi = -1;
        for (const auto& c : node.children) {
            auto [a, b] = walk(c);
            lo = std::min(lo, a);
            hi = std::max(hi, b);
        }
        const bool preterm = node.children.size() == 1 && node.children[0].is_leaf();
        if (!preterm && !del.count(node.label))
            out.insert({lo, hi, node.label == "PRT" ? "ADVP" : node.label});
        return std::pair{lo, hi};
    };
    walk(expanded.root);
    return out;
}

template <typename T>
int overlap(const std::multiset<T>& a, const std::multiset<T>& b) {
    int total = 0;
    for (auto it = a.begin(); it != a.end();) {
        auto next = a.upper_bound(*it);
        total += std::min(a.count(*it), b.count(*it));
        it = next;
    }
    return static_cast<int>(total);
}

DepStructure perturb(const DepStructure& g, std::mt19937_64& rng) {
    DepStructure p = g;
    for (Arc& a : p.arcs) {
        if (rng() % 3 == 0) a.head = static_cast<int>(rng() % (g.size() + 1));
        if (rng() % 4 == 0) a.rel = "z";
    }
    p.normalize();
    return p;
}

}  // namespace

TEST_CASE("tagging accuracy") {
    ScoreReport r = tagging_accuracy({{"a", "b"}, {"c"}}, {{"a", "x"}, {"c"}});
    CHECK(r.accuracy->num == 2);
    CHECK(r.accuracy->den == 3);
    CHECK_THROWS_AS(tagging_accuracy({{"a"}}, {{"a", "b"}}), std::invalid_argument);
}

TEST_CASE("dep scores against the naive oracle on 500 random pairs") {
    std::mt19937_64 rng(41);
    auto trees = generators::all_trees(5);
    for (int trial = 0; trial < 500; ++trial) {
        const DepStructure& gold = trees[rng() % trees.size()];
        DepStructure pred = perturb(gold, rng);
        ScoreReport r = dep_scores({gold}, {pred});
        NaiveDep naive = naive_dep(gold, pred);
        CHECK(r.uas->num == naive.uas_n);
        CHECK(r.las->num == naive.las_n);
        CHECK(r.uas->den == naive.den);
    }
}

TEST_CASE("dep exact-match rates") {
    DepStructure t = fixtures::projective_tree();
    ScoreReport r = dep_scores({t, t}, {t, fixtures::two_planar_tree()});
    CHECK(r.um->value() == doctest::Approx(0.5));
    CHECK(r.lm->value() == doctest::Approx(0.5));
    CHECK(r.las->value() < 1.0);
}

TEST_CASE("const F1 self-score is exact on every tree") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 200; ++trial) {
        ConstTree t = generators::random_const_tree(1 + static_cast<int>(rng() % 8), rng);
        ScoreReport r = const_f1({t}, {t});
        CHECK(r.lf->value() == doctest::Approx(1.0));
        CHECK(r.uf->value() == doctest::Approx(1.0));
        CHECK(r.lm->value() == doctest::Approx(1.0));
    }
}

TEST_CASE("const F1 against the naive oracle on 500 random pairs") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        ConstTree gold = generators::random_const_tree(n, rng);
        ConstTree pred = generators::random_const_tree(n, rng);
        ScoreReport r = const_f1({gold}, {pred});
        auto gs = naive_spans(gold, kDefaultDeleteLabels);
        auto ps = naive_spans(pred, kDefaultDeleteLabels);
        CHECK(r.lf->num == 2.0 * overlap(gs, ps));
        CHECK(r.lf->den == static_cast<double>(gs.size() + ps.size()));
    }
}

TEST_CASE("delete labels and PRT mapping") {
    ConstNode leaf1 = ConstNode{"NN", 0, {ConstNode{"", 1, {}}}};
    ConstNode leaf2 = ConstNode{"NN", 0, {ConstNode{"", 2, {}}}};
    ConstTree gold;
    gold.root = ConstNode{"TOP", 0, {ConstNode{"PRT", 0, {leaf1, leaf2}}}};
    ConstTree pred;
    pred.root = ConstNode{"S1", 0, {ConstNode{"ADVP", 0, {leaf1, leaf2}}}};
    ScoreReport r = const_f1({gold}, {pred});
    // TOP/S1 are deleted; PRT == ADVP, so the single span matches.
    CHECK(r.lf->value() == doctest::Approx(1.0));
}

TEST_CASE("const F1 rejects leaf-count mismatches") {
    std::mt19937_64 rng(1);
    ConstTree a = generators::random_const_tree(3, rng);
    ConstTree b = generators::random_const_tree(4, rng);
    CHECK_THROWS_AS(const_f1({a}, {b}), std::invalid_argument);
}

TEST_CASE("graph scores against the naive oracle on 500 random pairs") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        DepStructure gold = generators::random_graph(n, rng);
        DepStructure pred = perturb(gold, rng);
        ScoreReport r = graph_scores({gold}, {pred});
        std::multiset<std::tuple<int, int, std::string>> gl, pl;
        for (const Arc& a : gold.arcs) gl.insert({a.head, a.dep, a.rel});
        for (const Arc& a : pred.arcs) pl.insert({a.head, a.dep, a.rel});
        if (gl.empty() && pl.empty()) {
            // Empty sets agree exactly; the fraction collapses to 1/1.
            CHECK(r.lf->value() == doctest::Approx(1.0));
        } else {
            CHECK(r.lf->num == 2.0 * overlap(gl, pl));
            CHECK(r.lf->den == static_cast<double>(gl.size() + pl.size()));
        }
    }
}

TEST_CASE("report rendering") {
    ScoreReport r;
    r.uas = Fraction{3, 4};
    std::string text = r.to_text();
    CHECK(text.find("uas=0.75") != std::string::npos);
    CHECK(text.find("lf") == std::string::npos);
    std::string json = r.to_json();
    CHECK(json.find("\"uas\"") != std::string::npos);
    CHECK(json.find("\"num\": 3.0") != std::string::npos);
}
