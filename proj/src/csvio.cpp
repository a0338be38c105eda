#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "stick/csvio.hpp"

namespace stick {

std::string provenance_lines(const Provenance& prov) {
    std::string s;
    s += "# version=" + prov.version + "\n";
    s += "# seed=" + std::to_string(prov.seed) + "\n";
    s += "# config_hash=" + prov.config_hash + "\n";
    return s;
}

namespace {

void check_field(const std::string& s, const char* what) {
    if (s.find_first_of(",\r\n#\"") != std::string::npos)
        throw ValidationError(std::string(what) + " contains characters unsafe for csv: '" + s +
                              "'");
}

}  // namespace

std::string data_csv(const std::vector<ResponseRecord>& records, const Provenance& prov) {
    std::string s = provenance_lines(prov);
    s += kDataHeader;
    s += '\n';
    for (const ResponseRecord& r : records) {
        check_field(r.participant_id, "participant_id");
        s += r.participant_id;
        s += ',';
        s += order_name(r.contestant_order);
        s += ',';
        s += fmt_double(r.speaker_choice);
        s += ',';
        s += fmt_double(r.evidence_1);
        s += ',';
        s += fmt_double(r.response_1);
        s += ',';
        if (r.evidence_2) s += fmt_double(*r.evidence_2);
        s += ',';
        if (r.response_2) s += fmt_double(*r.response_2);
        s += '\n';
    }
    return s;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string rstrip_cr(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
    return s;
}

}  // namespace

IngestReport ingest(const std::string& path, const LengthGrid& grid,
                    const std::vector<double>& speaker_set) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open data file '" + path + "'");

    IngestReport report;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    std::set<std::string> seen_ids;
    const int64_t mid_key = lattice_key(grid.midpoint);

    while (std::getline(in, line)) {
        ++lineno;
        line = rstrip_cr(line);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line[0] == '#') continue;  // provenance lines
            if (line != kDataHeader)
                throw ValidationError("malformed header in '" + path + "': expected '" +
                                      kDataHeader + "', got '" + line + "'");
            header_seen = true;
            continue;
        }
        if (line[0] == '#') {
            report.rejected.push_back({lineno, "comment after header"});
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 7) {
            report.rejected.push_back(
                {lineno, "expected 7 fields, got " + std::to_string(fields.size())});
            continue;
        }
        try {
            ResponseRecord rec;
            rec.participant_id = fields[0];
            if (rec.participant_id.empty()) throw ValidationError("empty participant_id");
            if (fields[1] == "LONG_FIRST")
                rec.contestant_order = Order::LONG_FIRST;
            else if (fields[1] == "SHORT_FIRST")
                rec.contestant_order = Order::SHORT_FIRST;
            else
                throw ValidationError("contestant_order must be LONG_FIRST or SHORT_FIRST, got '" +
                                      fields[1] + "'");
            rec.speaker_choice = parse_double(fields[2], "speaker_choice");
            rec.evidence_1 = parse_double(fields[3], "evidence_1");
            rec.response_1 = parse_double(fields[4], "response_1");
            normalize_response(rec.response_1);  // range check
            if (fields[5].empty() != fields[6].empty())
                throw ValidationError("evidence_2 and response_2 must come together");
            if (!fields[5].empty()) {
                rec.evidence_2 = parse_double(fields[5], "evidence_2");
                rec.response_2 = parse_double(fields[6], "response_2");
                normalize_response(*rec.response_2);
            }
            auto check_evidence = [&](double v, const char* what) {
                if (grid.index_of(v) < 0)
                    throw ValidationError(std::string(what) + " " + fmt_double(v) +
                                          " is not on the length grid");
                const int64_t k = lattice_key(v);
                const bool supports = rec.contestant_order == Order::LONG_FIRST ? k > mid_key
                                                                                : k < mid_key;
                if (!supports)
                    throw ValidationError(std::string(what) + " " + fmt_double(v) +
                                          " does not support the claimed direction");
            };
            check_evidence(rec.evidence_1, "evidence_1");
            if (rec.evidence_2) check_evidence(*rec.evidence_2, "evidence_2");
            rec.speaker_group = classify_speaker_group(rec, grid, speaker_set);
            if (!seen_ids.insert(rec.participant_id).second)
                throw ValidationError("duplicate participant_id '" + rec.participant_id + "'");
            report.records.push_back(std::move(rec));
        } catch (const ValidationError& e) {
            report.rejected.push_back({lineno, e.what()});
        }
    }
    if (!header_seen)
        throw ValidationError("malformed header in '" + path + "': no header line found");
    return report;
}

std::string heatmap_csv(const HeatmapResult& heatmap, const Provenance& prov) {
    std::string s = provenance_lines(prov);
    s += "beta,evidence,effect,no_effect\n";
    for (size_t bi = 0; bi < heatmap.beta_values.size(); ++bi)
        for (size_t ui = 0; ui < heatmap.evidence_values.size(); ++ui) {
            s += fmt_double(heatmap.beta_values[bi]);
            s += ',';
            s += fmt_double(heatmap.evidence_values[ui]);
            s += ',';
            s += fmt_double(heatmap.effect[bi][ui]);
            s += ',';
            s += heatmap.no_effect(bi, ui) ? '1' : '0';
            s += '\n';
        }
    return s;
}

namespace {

std::string cell_color(double effect, double max_effect) {
    if (!(effect > 0.0)) return "#000000";  // no weak-evidence effect predicted
    const double t = max_effect > 0.0 ? effect / max_effect : 0.0;
    const int r = static_cast<int>(std::lround(40.0 + 215.0 * t));
    const int g = static_cast<int>(std::lround(60.0 + 180.0 * t));
    const int b = static_cast<int>(std::lround(140.0 - 100.0 * t));
    return "rgb(" + std::to_string(r) + "," + std::to_string(g) + "," + std::to_string(b) + ")";
}

}  // namespace

std::string heatmap_svg(const HeatmapResult& heatmap, const Provenance& prov) {
    const size_t rows = heatmap.beta_values.size();
    const size_t cols = heatmap.evidence_values.size();
    const int cell = 48, left = 72, top = 48, bottom = 40;
    const int width = left + int(cols) * cell + 16;
    const int height = top + int(rows) * cell + bottom;

    double max_effect = 0.0;
    for (const auto& row : heatmap.effect)
        for (double e : row) max_effect = std::max(max_effect, e);

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\">\n";
    s += "<!-- version=" + prov.version + " seed=" + std::to_string(prov.seed) +
         " config_hash=" + prov.config_hash + " -->\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    s += "<text x=\"" + std::to_string(left) +
         "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\">weak evidence effect "
         "(black = none predicted)</text>\n";
    for (size_t bi = 0; bi < rows; ++bi) {
        const int y = top + int(bi) * cell;
        s += "<text x=\"" + std::to_string(left - 8) + "\" y=\"" +
             std::to_string(y + cell / 2 + 5) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"13\">b=" +
             fmt_double(heatmap.beta_values[bi]) + "</text>\n";
        for (size_t ui = 0; ui < cols; ++ui) {
            const int x = left + int(ui) * cell;
            s += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
                 "\" width=\"" + std::to_string(cell) + "\" height=\"" + std::to_string(cell) +
                 "\" fill=\"" + cell_color(heatmap.effect[bi][ui], max_effect) +
                 "\" stroke=\"#ffffff\"/>\n";
        }
    }
    for (size_t ui = 0; ui < cols; ++ui) {
        const int x = left + int(ui) * cell;
        s += "<text x=\"" + std::to_string(x + cell / 2) + "\" y=\"" +
             std::to_string(top + int(rows) * cell + 24) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">u=" +
             fmt_double(heatmap.evidence_values[ui]) + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

std::string curves_csv(const CurvesResult& curves, const Provenance& prov) {
    std::string s = provenance_lines(prov);
    s += "# prior_split=" + fmt_double(curves.prior_split) + "\n";
    s += "evidence,j0,j1\n";
    for (size_t i = 0; i < curves.evidence_values.size(); ++i) {
        s += fmt_double(curves.evidence_values[i]);
        s += ',';
        s += fmt_double(curves.j0[i]);
        s += ',';
        s += fmt_double(curves.j1[i]);
        s += '\n';
    }
    return s;
}

std::string compare_csv(const std::vector<ComparisonRow>& rows, const Provenance& prov) {
    std::string s = provenance_lines(prov);
    s += "model,max_loglik,waic,waic_se,delta_waic,delta_se,psis_loo,psis_loo_se,"
         "indistinguishable\n";
    for (const ComparisonRow& r : rows) {
        s += r.model;
        s += ',';
        s += fmt_double(r.max_loglik);
        s += ',';
        s += fmt_double(r.waic);
        s += ',';
        s += fmt_double(r.waic_se);
        s += ',';
        s += fmt_double(r.delta_waic);
        s += ',';
        s += fmt_double(r.delta_se);
        s += ',';
        s += fmt_double(r.psis_loo);
        s += ',';
        s += fmt_double(r.psis_loo_se);
        s += ',';
        s += r.indistinguishable ? '1' : '0';
        s += '\n';
    }
    return s;
}

std::string fit_json(const FitResult& fit) {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["seed"] = fit.seed;
    j["config_hash"] = fit.config_hash;
    j["model"] = fit.spec.name();
    j["data_fingerprint"] = fit.data_fingerprint;
    std::vector<std::string> names;
    for (const ParamDef& d : fit.space.defs) names.push_back(d.name);
    j["params"] = names;
    j["map_params"] = fit.map_params;
    j["max_loglik"] = fit.max_loglik;

    const size_t S = fit.mcmc.samples.size();
    const size_t d = fit.space.size();
    std::vector<double> flat_samples;
    flat_samples.reserve(S * d);
    for (const auto& row : fit.mcmc.samples)
        flat_samples.insert(flat_samples.end(), row.begin(), row.end());
    j["samples"] = {{"dims", {S, d}}, {"values", flat_samples}};

    const size_t n = S > 0 ? fit.mcmc.loglik[0].size() : 0;
    std::vector<double> flat_ll;
    flat_ll.reserve(S * n);
    for (const auto& row : fit.mcmc.loglik) flat_ll.insert(flat_ll.end(), row.begin(), row.end());
    j["loglik"] = {{"dims", {S, n}}, {"values", flat_ll}};

    j["waic"] = {{"score", fit.waic.waic},
                 {"se", fit.waic.se},
                 {"p_waic", fit.waic.p_waic},
                 {"pointwise", fit.waic.pointwise}};
    j["psis_loo"] = {{"score", fit.psis.loo},
                     {"se", fit.psis.se},
                     {"p_loo", fit.psis.p_loo},
                     {"pointwise", fit.psis.pointwise},
                     {"pareto_k", fit.psis.pareto_k},
                     {"tis_fallback", fit.psis.tis_fallback}};
    std::vector<std::string> warnings = fit.mcmc.warnings;
    warnings.insert(warnings.end(), fit.psis.warnings.begin(), fit.psis.warnings.end());
    j["diagnostics"] = {{"chain_acceptance", fit.mcmc.chain_acceptance},
                        {"warnings", warnings}};
    return j.dump(2) + "\n";
}

FitSummary read_fit_summary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open fit file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ValidationError("cannot parse fit file '" + path + "': " + e.what());
    }
    FitSummary s;
    try {
        s.model = j.at("model").get<std::string>();
        s.max_loglik = j.at("max_loglik").get<double>();
        s.data_fingerprint = j.at("data_fingerprint").get<std::string>();
        s.waic = j.at("waic").at("score").get<double>();
        s.waic_se = j.at("waic").at("se").get<double>();
        s.waic_pointwise = j.at("waic").at("pointwise").get<std::vector<double>>();
        s.psis_loo = j.at("psis_loo").at("score").get<double>();
        s.psis_loo_se = j.at("psis_loo").at("se").get<double>();
        s.loo_pointwise = j.at("psis_loo").at("pointwise").get<std::vector<double>>();
    } catch (const std::exception& e) {
        throw ValidationError("fit file '" + path + "' is missing fields: " + e.what());
    }
    return s;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file '" + path + "'");
    out << content;
    if (!out) throw ValidationError("failed writing file '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace stick
