#pragma once

#include <string>
#include <vector>

#include "analysis.hpp"
#include "config.hpp"
#include "grid.hpp"
#include "rng.hpp"
#include "wavelet.hpp"

namespace dyadic {

// One test function together with its coefficient field.  When the
// function was synthesized from prescribed coefficients, exact_coeffs
// is true and coeffs holds those prescriptions; otherwise coeffs holds
// the analyzed coefficients of the sampled function.
struct CorpusEntry {
    std::string family;
    std::string label;
    GridFunction f;
    CoefficientField coeffs;
    bool exact_coeffs = false;
};

// Coarsest level whose translates supported inside [lo, hi] exist for
// the given wavelet.  Level 0 uses the scaling function, finer levels
// the wavelet.
int coarsest_interior_level(const SampledWavelet& sw, std::int64_t lo,
                            std::int64_t hi);

// Translate range [nu_min, nu_max] at level j whose supports lie inside
// [lo, hi].  Throws when the range is empty.
std::pair<std::int64_t, std::int64_t> interior_translates(
    const SampledWavelet& sw, int j, std::int64_t lo, std::int64_t hi);

// Builds one instance of a family.  Streams are derived from rng and
// never shared across instances.
CorpusEntry make_corpus_entry(const FamilySpec& spec, int instance,
                              const ExperimentConfig& cfg,
                              const SampledWavelet& sw, const DyadicGrid& grid,
                              SplitMix64 rng);

// The full corpus in configuration order.
std::vector<CorpusEntry> make_corpus(const ExperimentConfig& cfg,
                                     const SampledWavelet& sw,
                                     const DyadicGrid& grid);

// Instances for the multiplier sign study: random multilevel fields
// matched to the study's smoothness index, drawn from a stream disjoint
// from the main corpus.
std::vector<CorpusEntry> make_sign_corpus(const ExperimentConfig& cfg,
                                          const SampledWavelet& sw,
                                          const DyadicGrid& grid);

// Builds the corpus and writes per-entry value files, coefficient
// files, and a manifest into dir. Returns the entry count.
int write_corpus(const ExperimentConfig& cfg, const std::string& dir);

}  // namespace dyadic
