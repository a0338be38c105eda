#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "stick/common.hpp"

namespace stick {

struct LengthGrid {
    std::vector<double> values;  // strictly increasing, all > 0
    double midpoint = 0.0;

    void validate() const;
    // index of the grid value matching u on the 1e-9 lattice, or -1
    int index_of(double u) const;
};

LengthGrid make_range_grid(double lo, double hi, double step, double midpoint);

struct StickSet {
    std::vector<double> lengths;  // kept sorted ascending
    size_t n() const { return lengths.size(); }
};

enum class Prop { LONGER, SHORTER, TIE };

const char* prop_name(Prop p);

struct WorldPrior {
    LengthGrid grid;
    int n = 5;
    int64_t enumeration_cap = 10'000'000;  // ordered-tuple count |grid|^n

    void validate() const;
};

// One multiset world: (value index, count) pairs plus cached aggregates.
struct World {
    std::vector<std::pair<uint16_t, uint16_t>> items;
    double prob = 0.0;   // multinomial multiplicity / |grid|^n
    int64_t sum_key = 0; // lattice key of the length sum
    Prop prop = Prop::TIE;

    uint16_t count_of(uint16_t value_idx) const {
        for (const auto& [vi, c] : items)
            if (vi == value_idx) return c;
        return 0;
    }
};

struct WorldTable {
    WorldPrior prior;
    std::vector<World> worlds;  // lexicographic in nondecreasing value-index order
    int64_t target_key = 0;     // lattice key of n * midpoint

    StickSet materialize(const World& w) const;
};

std::shared_ptr<const WorldTable> build_world_table(const WorldPrior& prior);

// Spec surface: each distinct multiset once, with its multiplicity-weighted probability.
std::vector<std::pair<StickSet, double>> enumerate_worlds(const WorldPrior& prior);

Prop proposition_truth(const StickSet& w, const LengthGrid& grid);

struct PropPrior {
    double p_longer = 0.0, p_shorter = 0.0, p_tie = 0.0;
};

PropPrior proposition_prior(const WorldPrior& prior);
PropPrior proposition_prior(const WorldTable& table);

// pmf of the sum of k i.i.d. grid draws, on the 1e-9 lattice
std::map<int64_t, double> remaining_sum_pmf(const WorldPrior& prior, int k);

// P(sum of k i.i.d. draws < x), strict
double remaining_sum_cdf(const WorldPrior& prior, int k, double x);

}  // namespace stick
