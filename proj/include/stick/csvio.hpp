#pragma once

#include <string>
#include <vector>

#include "stick/config.hpp"
#include "stick/infer.hpp"
#include "stick/sim.hpp"

namespace stick {

struct Provenance {
    std::string version = kVersion;
    uint64_t seed = 0;
    std::string config_hash;
};

std::string provenance_lines(const Provenance& prov);

inline const char* kDataHeader =
    "participant_id,contestant_order,speaker_choice,evidence_1,response_1,evidence_2,response_2";

std::string data_csv(const std::vector<ResponseRecord>& records, const Provenance& prov);

struct IngestReport {
    std::vector<ResponseRecord> records;
    struct Reject {
        int line = 0;
        std::string reason;
    };
    std::vector<Reject> rejected;
};

IngestReport ingest(const std::string& path, const LengthGrid& grid,
                    const std::vector<double>& speaker_set = default_speaker_set());

std::string heatmap_csv(const HeatmapResult& heatmap, const Provenance& prov);
std::string heatmap_svg(const HeatmapResult& heatmap, const Provenance& prov);
std::string curves_csv(const CurvesResult& curves, const Provenance& prov);
std::string compare_csv(const std::vector<ComparisonRow>& rows, const Provenance& prov);

std::string fit_json(const FitResult& fit);
FitSummary read_fit_summary(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace stick
