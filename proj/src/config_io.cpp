#include "lmm/config_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lmm/errors.hpp"

namespace lmm {

namespace {

using nlohmann::json;

std::vector<double> number_array(const json& j, const std::string& field) {
    if (!j.is_array())
        throw ConfigError(field + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number())
            throw ConfigError(field + "[" + std::to_string(i) + "]: expected a number");
        out.push_back(j[i].get<double>());
    }
    return out;
}

TenorStructure parse_tenor(const json& j) {
    if (!j.contains("tenor") || !j["tenor"].is_object())
        throw ConfigError("tenor: missing section");
    const json& t = j["tenor"];
    if (!t.contains("dates"))
        throw ConfigError("tenor.dates: missing");
    std::vector<double> taus;
    if (t.contains("year_fractions"))
        taus = number_array(t["year_fractions"], "tenor.year_fractions");
    return TenorStructure(number_array(t["dates"], "tenor.dates"), std::move(taus));
}

VolTermStructure parse_vols(const json& j) {
    if (!j.contains("vols") || !j["vols"].is_array())
        throw ConfigError("vols: missing array section");
    std::vector<PiecewiseConstantVol> vols;
    for (std::size_t n = 0; n < j["vols"].size(); ++n) {
        const json& v = j["vols"][n];
        const std::string field = "vols[" + std::to_string(n) + "]";
        if (!v.is_object() || !v.contains("levels"))
            throw ConfigError(field + ".levels: missing");
        std::vector<double> breakpoints;
        if (v.contains("breakpoints"))
            breakpoints = number_array(v["breakpoints"], field + ".breakpoints");
        try {
            vols.emplace_back(number_array(v["levels"], field + ".levels"),
                              std::move(breakpoints));
        } catch (const ConfigError& e) {
            throw ConfigError(field + ": " + e.what());
        }
    }
    return VolTermStructure(std::move(vols));
}

CorrelationMatrix parse_correlation(const json& j, const TenorStructure& tenor) {
    if (!j.contains("correlation") || !j["correlation"].is_object())
        throw ConfigError("correlation: missing section");
    const json& c = j["correlation"];
    if (c.contains("beta") && c.contains("matrix"))
        throw ConfigError("correlation: give either beta or matrix, not both");
    if (c.contains("beta")) {
        if (!c["beta"].is_number())
            throw ConfigError("correlation.beta: expected a number");
        return CorrelationMatrix::exponential(tenor, c["beta"].get<double>());
    }
    if (!c.contains("matrix"))
        throw ConfigError("correlation: needs beta or matrix");
    const json& rows = c["matrix"];
    if (!rows.is_array() || rows.empty())
        throw ConfigError("correlation.matrix: expected an array of rows");
    const std::size_t m = rows.size();
    std::vector<double> a;
    a.reserve(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::vector<double> row =
            number_array(rows[i], "correlation.matrix[" + std::to_string(i) + "]");
        if (row.size() != m)
            throw ConfigError("correlation.matrix[" + std::to_string(i) +
                              "]: expected " + std::to_string(m) + " entries");
        a.insert(a.end(), row.begin(), row.end());
    }
    return CorrelationMatrix(static_cast<int>(m), std::move(a));
}

} // namespace

ModelConfig parse_config(const std::string& json_text, const std::string& origin) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(origin + ": JSON parse error: " + e.what());
    }
    if (!j.is_object())
        throw ConfigError(origin + ": top level must be an object");

    TenorStructure tenor = parse_tenor(j);
    VolTermStructure vols = parse_vols(j);
    CorrelationMatrix corr = parse_correlation(j, tenor);
    if (!j.contains("curve"))
        throw ConfigError("curve: missing");
    InitialCurve curve(number_array(j["curve"], "curve"));
    return {std::move(tenor), std::move(vols), std::move(corr), std::move(curve)};
}

ModelConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path + ": cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

} // namespace lmm
