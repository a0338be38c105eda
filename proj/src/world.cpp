#include "stick/world.hpp"

#include <algorithm>
#include <cmath>

namespace stick {

void LengthGrid::validate() const {
    if (values.empty()) throw ValidationError("grid has no values");
    for (size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i]))
            throw ValidationError("grid values must be finite and > 0");
        if (i > 0 && !(values[i] > values[i - 1]))
            throw ValidationError("grid values must be strictly increasing");
    }
    if (!std::isfinite(midpoint)) throw ValidationError("grid midpoint must be finite");
}

int LengthGrid::index_of(double u) const {
    const int64_t k = lattice_key(u);
    for (size_t i = 0; i < values.size(); ++i)
        if (lattice_key(values[i]) == k) return static_cast<int>(i);
    return -1;
}

LengthGrid make_range_grid(double lo, double hi, double step, double midpoint) {
    if (!(step > 0.0)) throw ValidationError("grid step must be > 0");
    LengthGrid g;
    g.midpoint = midpoint;
    const int64_t klo = lattice_key(lo), khi = lattice_key(hi), kst = lattice_key(step);
    if (kst <= 0) throw ValidationError("grid step too small");
    for (int64_t k = klo; k <= khi; k += kst) g.values.push_back(static_cast<double>(k) * 1e-9);
    g.validate();
    return g;
}

const char* prop_name(Prop p) {
    switch (p) {
        case Prop::LONGER: return "LONGER";
        case Prop::SHORTER: return "SHORTER";
        default: return "TIE";
    }
}

void WorldPrior::validate() const {
    grid.validate();
    if (n <= 0) throw ValidationError("world size n must be positive");
    const double tuples = std::pow(static_cast<double>(grid.values.size()), n);
    if (tuples > static_cast<double>(enumeration_cap))
        throw EnumerationTooLarge(
            "enumeration too large: |grid|^n = " + fmt_double(tuples) +
            " ordered tuples exceeds the cap " + std::to_string(enumeration_cap) +
            "; raise enumeration_cap to at least " + fmt_double(tuples));
}

StickSet WorldTable::materialize(const World& w) const {
    StickSet s;
    s.lengths.reserve(prior.n);
    for (const auto& [vi, c] : w.items)
        for (int k = 0; k < c; ++k) s.lengths.push_back(prior.grid.values[vi]);
    return s;
}

namespace {

// exact multinomial coefficient n! / prod(c_i!); bounded by |grid|^n <= cap
uint64_t multinomial(int n, const std::vector<std::pair<uint16_t, uint16_t>>& items) {
    uint64_t m = 1;
    int rem = n;
    for (const auto& [vi, c] : items) {
        (void)vi;
        // multiply C(rem, c)
        uint64_t num = 1, den = 1;
        for (int j = 0; j < c; ++j) {
            num *= static_cast<uint64_t>(rem - j);
            den *= static_cast<uint64_t>(j + 1);
        }
        m *= num / den;
        rem -= c;
    }
    return m;
}

}  // namespace

std::shared_ptr<const WorldTable> build_world_table(const WorldPrior& prior) {
    prior.validate();
    auto table = std::make_shared<WorldTable>();
    table->prior = prior;
    const auto& vals = prior.grid.values;
    const int G = static_cast<int>(vals.size());
    const int n = prior.n;
    table->target_key = static_cast<int64_t>(n) * lattice_key(prior.grid.midpoint);

    std::vector<int64_t> vkeys(G);
    for (int i = 0; i < G; ++i) vkeys[i] = lattice_key(vals[i]);

    const double total_tuples = std::pow(static_cast<double>(G), n);

    // enumerate nondecreasing index sequences: choose counts left-to-right
    // (equivalent to combinations with replacement, lexicographic)
    std::vector<std::pair<uint16_t, uint16_t>> items;
    std::function<void(int, int, int64_t)> rec = [&](int i, int left, int64_t sum_key) {
        if (i == G) {
            if (left == 0) {
                World w;
                w.items = items;
                w.prob = static_cast<double>(multinomial(n, items)) / total_tuples;
                w.sum_key = sum_key;
                w.prop = sum_key > table->target_key   ? Prop::LONGER
                         : sum_key < table->target_key ? Prop::SHORTER
                                                       : Prop::TIE;
                table->worlds.push_back(std::move(w));
            }
            return;
        }
        for (int c = 0; c <= left; ++c) {
            if (c > 0) items.emplace_back(static_cast<uint16_t>(i), static_cast<uint16_t>(c));
            rec(i + 1, left - c, sum_key + static_cast<int64_t>(c) * vkeys[i]);
            if (c > 0) items.pop_back();
        }
    };
    rec(0, n, 0);
    return table;
}

std::vector<std::pair<StickSet, double>> enumerate_worlds(const WorldPrior& prior) {
    auto table = build_world_table(prior);
    std::vector<std::pair<StickSet, double>> out;
    out.reserve(table->worlds.size());
    for (const auto& w : table->worlds) out.emplace_back(table->materialize(w), w.prob);
    return out;
}

Prop proposition_truth(const StickSet& w, const LengthGrid& grid) {
    grid.validate();
    if (w.lengths.empty()) throw ValidationError("empty stick set");
    int64_t sum_key = 0;
    for (double v : w.lengths) {
        if (grid.index_of(v) < 0)
            throw ValidationError("stick length " + fmt_double(v) + " not in grid");
        sum_key += lattice_key(v);
    }
    const int64_t target = static_cast<int64_t>(w.lengths.size()) * lattice_key(grid.midpoint);
    return sum_key > target ? Prop::LONGER : sum_key < target ? Prop::SHORTER : Prop::TIE;
}

PropPrior proposition_prior(const WorldTable& table) {
    PropPrior p;
    for (const auto& w : table.worlds) {
        if (w.prop == Prop::LONGER)
            p.p_longer += w.prob;
        else if (w.prop == Prop::SHORTER)
            p.p_shorter += w.prob;
        else
            p.p_tie += w.prob;
    }
    return p;
}

PropPrior proposition_prior(const WorldPrior& prior) {
    return proposition_prior(*build_world_table(prior));
}

std::map<int64_t, double> remaining_sum_pmf(const WorldPrior& prior, int k) {
    if (k < 0) throw ValidationError("k must be >= 0");
    prior.grid.validate();
    const auto& vals = prior.grid.values;
    const double p1 = 1.0 / static_cast<double>(vals.size());
    std::map<int64_t, double> pmf;
    pmf[0] = 1.0;
    for (int step = 0; step < k; ++step) {
        std::map<int64_t, double> next;
        for (const auto& [s, p] : pmf)
            for (double v : vals) next[s + lattice_key(v)] += p * p1;
        pmf = std::move(next);
    }
    return pmf;
}

double remaining_sum_cdf(const WorldPrior& prior, int k, double x) {
    const auto pmf = remaining_sum_pmf(prior, k);
    const int64_t kx = lattice_key(x);
    double acc = 0.0;
    for (const auto& [s, p] : pmf) {
        if (s >= kx) break;
        acc += p;
    }
    return acc;
}

}  // namespace stick
