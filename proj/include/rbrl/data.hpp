#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "rbrl/types.hpp"

namespace rbrl {

// SplitMix64: tiny, fully specified generator so shuffles reproduce
// bit-identically on every platform.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, bound); bound must be > 0. Modulo bias is negligible for
  // row counts and, more importantly, the draw is deterministic.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

// Derives an independent stream for (seed, salt) pairs.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

// In-place Fisher-Yates driven by SplitMix64.
void shuffle_indices(std::vector<Index>& idx, SplitMix64& rng);

enum class DataFormat { DenseCsv, SparseMll };

DataFormat parse_format(const std::string& name);

// dense-csv: header "#mll n=<n> m=<m> l=<l>", then per row m feature floats
// followed by l label tokens in {0,1,-1,+1}, comma separated. 0 is read as
// irrelevant, 1/+1 as relevant.
//
// sparse-mll: per row "<lbl,lbl,...>|<idx>:<val> ...". The label list holds
// the 1-based relevant label indices (may be empty), features are 1-based
// index:value pairs with absent features equal to 0. Width and label count
// are the maxima seen in the file.
Dataset load_dataset(const std::string& path, DataFormat format);
Dataset read_dataset(std::istream& in, DataFormat format,
                     const std::string& origin);

// Canonical dense-csv emission (labels -1/+1, shortest round-trip floats).
void write_dataset(const Dataset& ds, const std::string& path);
void write_dataset(const Dataset& ds, std::ostream& out);

struct SplitPlan {
  std::uint64_t seed = 0;
  double train_fraction = 0.6; // strictly in (0,1)
  int repeats = 10;
};

void validate_split_plan(const SplitPlan& plan);

// Deterministic row shuffle keyed by (seed, repeat_index); the first
// ceil(fraction * n) shuffled rows train, the rest test.
std::pair<Dataset, Dataset> split(const Dataset& ds, const SplitPlan& plan,
                                  int repeat_index);

// k near-equal folds; element f is (train, validation) with every row in
// exactly one validation fold.
std::vector<std::pair<Dataset, Dataset>> kfold(const Dataset& ds, int k,
                                               std::uint64_t seed);

Dataset take_rows(const Dataset& ds, const std::vector<Index>& rows);

} // namespace rbrl
