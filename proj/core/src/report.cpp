#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>

#include "kage/benchkit.hpp"
#include "kage/errors.hpp"

namespace kage {

namespace {

using nlohmann::json;

constexpr const char* kSchema = "kage-bench-report/1";

json to_json(const Stat& s) { return {{"mean", s.mean}, {"sem", s.sem}}; }

json to_json(const MetricRecord& m) {
    return {{"distance", to_json(m.distance)},
            {"progress", to_json(m.progress)},
            {"success_rate", to_json(m.success_rate)},
            {"return", to_json(m.ret)}};
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json to_json(const GapRecord& g) {
    return {{"d_dist_pct", opt(g.d_dist_pct)},
            {"d_prog_pct", opt(g.d_prog_pct)},
            {"d_sr_pct", opt(g.d_sr_pct)},
            {"d_ret_abs", g.d_ret_abs}};
}

Stat stat_from(const json& j) { return {j.at("mean").get<double>(), j.at("sem").get<double>()}; }

MetricRecord record_from(const json& j) {
    return {stat_from(j.at("distance")), stat_from(j.at("progress")), stat_from(j.at("success_rate")),
            stat_from(j.at("return"))};
}

std::optional<double> opt_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

GapRecord gaps_from(const json& j) {
    return {opt_from(j.at("d_dist_pct")), opt_from(j.at("d_prog_pct")), opt_from(j.at("d_sr_pct")),
            j.at("d_ret_abs").get<double>()};
}

std::string fmt(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, round_display(v, decimals));
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v, 1) : std::string("undef"); }

std::string pad(std::string s, std::size_t w) {
    if (s.size() < w) s.insert(0, w - s.size(), ' ');
    return s;
}

std::string pad_right(std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
}

std::string metric_cells(const MetricRecord& m) {
    return pad(fmt(m.distance.mean, 1), 8) + pad(fmt(m.progress.mean, 2), 7) +
           pad(fmt(m.success_rate.mean, 2), 6) + pad(fmt(m.ret.mean, 1), 9);
}

std::string gap_cells(const GapRecord& g) {
    return pad(fmt_opt(g.d_dist_pct), 8) + pad(fmt_opt(g.d_prog_pct), 8) + pad(fmt_opt(g.d_sr_pct), 8) +
           pad(fmt(g.d_ret_abs, 1), 9);
}

}  // namespace

std::string report_json(std::span<const PairResult> results) {
    json pairs = json::array();
    for (const auto& r : results)
        pairs.push_back({{"suite", r.suite},
                         {"id", r.id},
                         {"description", r.description},
                         {"train", to_json(r.train)},
                         {"eval", to_json(r.eval)},
                         {"gaps", to_json(r.gaps)}});
    json axes = json::array();
    for (const auto& a : axis_summary(results))
        axes.push_back({{"suite", a.suite},
                        {"train", to_json(a.train)},
                        {"eval", to_json(a.eval)},
                        {"gaps_from_means", to_json(a.gaps_from_means)},
                        {"mean_of_gaps", to_json(a.mean_of_gaps)}});
    const json doc{{"schema", kSchema}, {"pairs", pairs}, {"axes", axes}};
    return doc.dump(2) + "\n";
}

std::vector<PairResult> parse_report_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("report is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("schema", "") != kSchema)
        throw ParseError(std::string("report schema must be ") + kSchema);
    std::vector<PairResult> out;
    try {
        for (const auto& p : doc.at("pairs")) {
            PairResult r;
            r.suite = p.at("suite").get<std::string>();
            r.id = p.at("id").get<int>();
            r.description = p.at("description").get<std::string>();
            r.train = record_from(p.at("train"));
            r.eval = record_from(p.at("eval"));
            r.gaps = gaps_from(p.at("gaps"));
            out.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    }
    return out;
}

std::string report_table(std::span<const PairResult> results) {
    std::string out;
    const std::string head = pad_right("pair", 15) + pad_right("description", 60);
    const std::string metrics = pad("Dist", 8) + pad("Prog", 7) + pad("SR", 6) + pad("Ret", 9);
    out += head + " | train" + std::string(25, ' ') + "| eval" + std::string(26, ' ') + "| gap\n";
    out += std::string(head.size(), ' ') + " |" + metrics + " |" + metrics + " |" + pad("dDist%", 8) +
           pad("dProg%", 8) + pad("dSR%", 8) + pad("dRet", 9) + "\n";
    for (const auto& r : results)
        out += pad_right(r.key(), 15) + pad_right(r.description, 60) + " |" + metric_cells(r.train) + " |" +
               metric_cells(r.eval) + " |" + gap_cells(r.gaps) + "\n";
    const auto axes = axis_summary(results);
    if (!axes.empty()) {
        out += "\naxis averages (gaps from averaged means)\n";
        for (const auto& a : axes)
            out += pad_right(a.suite, 75) + " |" + metric_cells(a.train) + " |" + metric_cells(a.eval) + " |" +
                   gap_cells(a.gaps_from_means) + "\n";
    }
    return out;
}

void write_report(const std::string& path, std::span<const PairResult> results) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write report '" + path + "'");
    out << report_json(results);
    if (!out) throw IoError("short write to '" + path + "'");
}

}  // namespace kage
