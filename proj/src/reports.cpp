#include "haar/reports.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace haar {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text, size_t fields,
                                                const char* who) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        while (cells.size() < fields) cells.emplace_back();   // trailing empties
        if (cells.size() != fields)
            throw std::invalid_argument(std::string(who) + ": wrong column count");
        rows.push_back(std::move(cells));
    }
    return rows;
}

double to_double(const std::string& s) { return s.empty() ? 0.0 : std::stod(s); }
long to_long(const std::string& s) { return s.empty() ? 0 : std::stol(s); }

}  // namespace

// ---- json ----

nlohmann::json to_json(const std::vector<WgRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows)
        out.push_back({{"n", r.n},
                       {"p", r.p},
                       {"cycle_type", r.cycle_type},
                       {"exact", r.exact},
                       {"asymptotic", r.asymptotic},
                       {"ratio", r.ratio}});
    return out;
}

std::vector<WgRow> wg_rows_from_json(const nlohmann::json& j) {
    std::vector<WgRow> rows;
    for (const auto& e : j)
        rows.push_back({e.at("n").get<long>(), e.at("p").get<int>(),
                        e.at("cycle_type").get<std::string>(), e.at("exact").get<std::string>(),
                        e.at("asymptotic").get<std::string>(), e.at("ratio").get<std::string>()});
    return rows;
}

nlohmann::json to_json(const std::vector<MomentRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json e{{"model", r.model}, {"n", r.n}, {"k", r.k},
                         {"t", r.t},         {"p", r.p}, {"exact", r.exact},
                         {"limit", r.limit}};
        if (r.mc_samples > 0)
            e["mc"] = {{"mean", r.mc_mean},
                       {"stderr", r.mc_stderr},
                       {"samples", r.mc_samples},
                       {"seed", r.seed}};
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<MomentRow> moment_rows_from_json(const nlohmann::json& j) {
    std::vector<MomentRow> rows;
    for (const auto& e : j) {
        MomentRow r;
        r.model = e.at("model").get<std::string>();
        r.n = e.at("n").get<long>();
        r.k = e.at("k").get<long>();
        r.t = e.at("t").get<std::string>();
        r.p = e.at("p").get<int>();
        r.exact = e.at("exact").get<std::string>();
        r.limit = e.at("limit").get<std::string>();
        if (e.contains("mc")) {
            r.mc_mean = e["mc"].at("mean").get<double>();
            r.mc_stderr = e["mc"].at("stderr").get<double>();
            r.mc_samples = e["mc"].at("samples").get<long>();
            r.seed = e["mc"].at("seed").get<std::uint64_t>();
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

nlohmann::json to_json(const std::vector<SpectrumRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json e{{"model", r.model},         {"n", r.n},
                         {"k", r.k},                 {"t", r.t},
                         {"rank", r.rank},           {"eig_mean", r.eig_mean},
                         {"eig_spread", r.eig_spread}, {"predicted", r.predicted},
                         {"samples", r.samples},     {"seed", r.seed}};
        if (r.hayden_total >= 0) {
            e["hayden_pass"] = r.hayden_pass;
            e["hayden_total"] = r.hayden_total;
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<SpectrumRow> spectrum_rows_from_json(const nlohmann::json& j) {
    std::vector<SpectrumRow> rows;
    for (const auto& e : j) {
        SpectrumRow r;
        r.model = e.at("model").get<std::string>();
        r.n = e.at("n").get<long>();
        r.k = e.at("k").get<long>();
        r.t = e.at("t").get<std::string>();
        r.rank = e.at("rank").get<int>();
        r.eig_mean = e.at("eig_mean").get<double>();
        r.eig_spread = e.at("eig_spread").get<double>();
        r.predicted = e.at("predicted").get<std::string>();
        r.samples = e.at("samples").get<long>();
        r.seed = e.at("seed").get<std::uint64_t>();
        if (e.contains("hayden_total")) {
            r.hayden_pass = e.at("hayden_pass").get<long>();
            r.hayden_total = e.at("hayden_total").get<long>();
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

nlohmann::json to_json(const std::vector<CheckRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows)
        out.push_back({{"quantity", r.quantity},
                       {"exact", r.exact},
                       {"mc_mean", r.mc_mean},
                       {"mc_stderr", r.mc_stderr},
                       {"mc_samples", r.mc_samples},
                       {"sigmas", r.sigmas},
                       {"pass", r.pass}});
    return out;
}

std::vector<CheckRow> check_rows_from_json(const nlohmann::json& j) {
    std::vector<CheckRow> rows;
    for (const auto& e : j)
        rows.push_back({e.at("quantity").get<std::string>(), e.at("exact").get<std::string>(),
                        e.at("mc_mean").get<double>(), e.at("mc_stderr").get<double>(),
                        e.at("mc_samples").get<long>(), e.at("sigmas").get<double>(),
                        e.at("pass").get<bool>()});
    return rows;
}

// ---- csv ----

std::string to_csv(const std::vector<WgRow>& rows) {
    std::string out = "n,p,cycle_type,exact,asymptotic,ratio\n";
    for (const auto& r : rows)
        out += std::to_string(r.n) + "," + std::to_string(r.p) + "," + r.cycle_type + "," +
               r.exact + "," + r.asymptotic + "," + r.ratio + "\n";
    return out;
}

std::vector<WgRow> wg_rows_from_csv(const std::string& text) {
    std::vector<WgRow> rows;
    for (const auto& c : parse_csv(text, 6, "wg csv"))
        rows.push_back({to_long(c[0]), static_cast<int>(to_long(c[1])), c[2], c[3], c[4], c[5]});
    return rows;
}

std::string to_csv(const std::vector<MomentRow>& rows) {
    std::string out = "model,n,k,t,p,exact,limit,mc_mean,mc_stderr,mc_samples,seed\n";
    for (const auto& r : rows) {
        out += r.model + "," + std::to_string(r.n) + "," + std::to_string(r.k) + "," + r.t + "," +
               std::to_string(r.p) + "," + r.exact + "," + r.limit + ",";
        if (r.mc_samples > 0)
            out += fmt_double(r.mc_mean) + "," + fmt_double(r.mc_stderr) + "," +
                   std::to_string(r.mc_samples) + "," + std::to_string(r.seed);
        else
            out += ",,0,0";
        out += "\n";
    }
    return out;
}

std::vector<MomentRow> moment_rows_from_csv(const std::string& text) {
    std::vector<MomentRow> rows;
    for (const auto& c : parse_csv(text, 11, "moment csv")) {
        MomentRow r;
        r.model = c[0];
        r.n = to_long(c[1]);
        r.k = to_long(c[2]);
        r.t = c[3];
        r.p = static_cast<int>(to_long(c[4]));
        r.exact = c[5];
        r.limit = c[6];
        r.mc_samples = to_long(c[9]);
        if (r.mc_samples > 0) {
            r.mc_mean = to_double(c[7]);
            r.mc_stderr = to_double(c[8]);
            r.seed = std::stoull(c[10]);
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string to_csv(const std::vector<SpectrumRow>& rows) {
    std::string out =
        "model,n,k,t,rank,eig_mean,eig_spread,predicted,hayden_pass,hayden_total,samples,seed\n";
    for (const auto& r : rows) {
        out += r.model + "," + std::to_string(r.n) + "," + std::to_string(r.k) + "," + r.t + "," +
               std::to_string(r.rank) + "," + fmt_double(r.eig_mean) + "," +
               fmt_double(r.eig_spread) + "," + r.predicted + ",";
        if (r.hayden_total >= 0)
            out += std::to_string(r.hayden_pass) + "," + std::to_string(r.hayden_total);
        else
            out += "-1,-1";
        out += "," + std::to_string(r.samples) + "," + std::to_string(r.seed) + "\n";
    }
    return out;
}

std::vector<SpectrumRow> spectrum_rows_from_csv(const std::string& text) {
    std::vector<SpectrumRow> rows;
    for (const auto& c : parse_csv(text, 12, "spectrum csv")) {
        SpectrumRow r;
        r.model = c[0];
        r.n = to_long(c[1]);
        r.k = to_long(c[2]);
        r.t = c[3];
        r.rank = static_cast<int>(to_long(c[4]));
        r.eig_mean = to_double(c[5]);
        r.eig_spread = to_double(c[6]);
        r.predicted = c[7];
        r.hayden_pass = to_long(c[8]);
        r.hayden_total = to_long(c[9]);
        r.samples = to_long(c[10]);
        r.seed = std::stoull(c[11]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string to_csv(const std::vector<CheckRow>& rows) {
    std::string out = "quantity,exact,mc_mean,mc_stderr,mc_samples,sigmas,pass\n";
    for (const auto& r : rows)
        out += r.quantity + "," + r.exact + "," + fmt_double(r.mc_mean) + "," +
               fmt_double(r.mc_stderr) + "," + std::to_string(r.mc_samples) + "," +
               fmt_double(r.sigmas) + "," + (r.pass ? "1" : "0") + "\n";
    return out;
}

std::vector<CheckRow> check_rows_from_csv(const std::string& text) {
    std::vector<CheckRow> rows;
    for (const auto& c : parse_csv(text, 7, "check csv"))
        rows.push_back({c[0], c[1], to_double(c[2]), to_double(c[3]), to_long(c[4]),
                        to_double(c[5]), c[6] == "1"});
    return rows;
}

}  // namespace haar
