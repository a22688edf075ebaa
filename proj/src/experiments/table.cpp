#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wpcn/error.hpp"
#include "wpcn/experiments.hpp"

namespace wpcn::experiments {
namespace {

using nlohmann::json;

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw DomainError("CSV: cannot parse number '" + text + "'");
    }
    return v;
}

unsigned parse_unsigned(const std::string& text) {
    unsigned v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw DomainError("CSV: cannot parse integer '" + text + "'");
    }
    return v;
}

}  // namespace

const char* const kCsvHeader =
    "scheme,k,j,M,pt_dbm,t1,q_db,sigma_n_dbm,sigma_e2,model,method,x_threshold,outage,stderr";

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.scheme << ',' << r.k << ',' << (r.j ? std::to_string(*r.j) : "") << ',' << r.m << ','
            << format_double(r.pt_dbm) << ',' << format_double(r.t1) << ',' << format_double(r.q_db) << ','
            << format_double(r.sigma_n_dbm) << ',' << format_double(r.sigma_e2) << ',' << to_string(r.model) << ','
            << to_string(r.method) << ',' << format_double(r.x_threshold) << ',' << format_double(r.outage) << ','
            << (r.std_error ? format_double(*r.std_error) : "") << '\n';
    }
}

std::vector<ResultRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw DomainError("CSV: missing or unexpected header");
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 14) throw DomainError("CSV: expected 14 fields, got " + std::to_string(f.size()));
        ResultRow r;
        r.scheme = f[0];
        r.k = parse_unsigned(f[1]);
        if (!f[2].empty()) r.j = parse_unsigned(f[2]);
        r.m = parse_unsigned(f[3]);
        r.pt_dbm = parse_double(f[4]);
        r.t1 = parse_double(f[5]);
        r.q_db = parse_double(f[6]);
        r.sigma_n_dbm = parse_double(f[7]);
        r.sigma_e2 = parse_double(f[8]);
        r.model = parse_eh_model(f[9]);
        r.method = parse_method(f[10]);
        r.x_threshold = parse_double(f[11]);
        r.outage = parse_double(f[12]);
        if (!f[13].empty()) r.std_error = parse_double(f[13]);
        rows.push_back(std::move(r));
    }
    return rows;
}

json rows_to_json(const std::vector<ResultRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        json row = {{"scheme", r.scheme},
                    {"k", r.k},
                    {"M", r.m},
                    {"pt_dbm", r.pt_dbm},
                    {"t1", r.t1},
                    {"q_db", r.q_db},
                    {"sigma_n_dbm", r.sigma_n_dbm},
                    {"sigma_e2", r.sigma_e2},
                    {"model", to_string(r.model)},
                    {"method", to_string(r.method)},
                    {"x_threshold", r.x_threshold}};
        row["j"] = r.j ? json(*r.j) : json(nullptr);
        // JSON has no NaN; failed evaluations become null with the error text.
        row["outage"] = std::isnan(r.outage) ? json(nullptr) : json(r.outage);
        row["stderr"] = r.std_error ? json(*r.std_error) : json(nullptr);
        if (!r.error.empty()) row["error"] = r.error;
        out.push_back(std::move(row));
    }
    return out;
}

void write_result(const SweepResult& result, const std::string& path, const std::string& format) {
    if (format == "csv") {
        std::ofstream out(path);
        if (!out) throw DomainError("cannot write '" + path + "'");
        write_csv(out, result.rows);
        std::ofstream meta(path + ".meta.json");
        if (!meta) throw DomainError("cannot write '" + path + ".meta.json'");
        meta << result.metadata.dump(2) << '\n';
    } else if (format == "json") {
        std::ofstream out(path);
        if (!out) throw DomainError("cannot write '" + path + "'");
        json doc = {{"metadata", result.metadata}, {"rows", rows_to_json(result.rows)}};
        out << doc.dump(2) << '\n';
    } else {
        throw DomainError("unknown output format '" + format + "' (expected csv or json)");
    }
}

}  // namespace wpcn::experiments
