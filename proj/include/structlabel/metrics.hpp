#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "structlabel/core.hpp"

namespace structlabel {

struct Fraction {
    double num = 0, den = 0;
    double value() const { return den > 0 ? num / den : 0.0; }
};

struct ScoreReport {
    std::optional<Fraction> accuracy;
    std::optional<Fraction> uas, las, um, lm;
    std::optional<Fraction> uf, lf;
    std::optional<Fraction> wellformed;

    // "key=value" lines / JSON object, keys: accuracy uas las uf lf um lm
    // wellformed.  Absent metrics are omitted.
    std::string to_text() const;
    std::string to_json() const;
};

// Per-token exact-match fraction over parallel label lists.
ScoreReport tagging_accuracy(const std::vector<std::vector<std::string>>& gold,
                             const std::vector<std::vector<std::string>>& pred);

// UAS/LAS over tokens, UM/LM over sentences; root arcs count.
ScoreReport dep_scores(const std::vector<DepStructure>& gold,
                       const std::vector<DepStructure>& pred);

// EVALB-style labeled/unlabeled bracketing F1.  Spans are (start, end,
// label) over non-preterminal nodes; labels in delete_labels are skipped and
// PRT compares equal to ADVP.  Micro-averaged over the corpus.
extern const std::set<std::string> kDefaultDeleteLabels;
ScoreReport const_f1(const std::vector<ConstTree>& gold, const std::vector<ConstTree>& pred,
                     const std::set<std::string>& delete_labels = kDefaultDeleteLabels);

// Micro-averaged arc-set F1; UM/LM are exact arc-set matches.
ScoreReport graph_scores(const std::vector<DepStructure>& gold,
                         const std::vector<DepStructure>& pred);

}  // namespace structlabel
