// Command-line front end: exact Weingarten tables, channel moment
// comparisons, spectrum scans, diagram evaluation, and sampled-vs-exact
// checks. Emits json or csv; exact quantities always serialize as "num/den".
//
// Exit codes: 0 success, 2 usage error, 3 infeasible budget, 4 numeric
// validation failure (including a failed mc-check).

#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "haar/channel_diagrams.hpp"
#include "haar/channels.hpp"
#include "haar/diagram.hpp"
#include "haar/errors.hpp"
#include "haar/montecarlo.hpp"
#include "haar/reports.hpp"
#include "haar/weingarten.hpp"

using namespace haar;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 42;
    int shards = 1;
    std::string format = "json";
    std::string out;
};

void emit(const GlobalOpts& g, const nlohmann::json& j, const std::string& csv) {
    std::string text = g.format == "csv" ? csv : j.dump(2) + "\n";
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out);
    if (!f) throw std::invalid_argument("cannot open output file: " + g.out);
    f << text;
}

std::string cycle_type_str(const CycleType& t) {
    std::string s;
    for (size_t i = 0; i < t.parts.size(); ++i) {
        if (i) s += "+";
        s += std::to_string(t.parts[i]);
    }
    return s;
}

// ---- wg-table ----

int cmd_wg_table(const GlobalOpts& g, int p, const std::vector<long>& n_list) {
    std::vector<WgRow> rows;
    for (long n : n_list) {
        const WgTable& tbl = weingarten_table(n, p);
        for (size_t i = 0; i < tbl.types.size(); ++i) {
            WgRow r;
            r.n = n;
            r.p = p;
            r.cycle_type = cycle_type_str(tbl.types[i]);
            Rational exact = tbl.at_class(static_cast<int>(i));
            Rational asym = weingarten_asymptotic(n, tbl.types[i]);
            r.exact = rat_str(exact);
            r.asymptotic = rat_str(asym);
            if (exact != 0) r.ratio = rat_str(asym / exact);
            rows.push_back(std::move(r));
        }
    }
    emit(g, to_json(rows), to_csv(rows));
    return 0;
}

// ---- moments ----

Rational moment_limit(const ChannelModel& m, int p, const Rational& t) {
    switch (m.kind) {
        case ModelKind::rotated: return rat_pow(m.k, 1 - p);          // n large, rank-one input
        case ModelKind::independent: return rat_pow(m.n, 2 - 2 * p);  // k large
        case ModelKind::conjugate: return geodesic_limit_conjugate(m.k, p);  // n large
        case ModelKind::generalized: {
            // n large: power sum of the predicted spectrum
            Rational rest = (Rational(1) - t) / Rational(m.k * m.k);
            return rat_pow(t + rest, p) + Rational(m.k * m.k - 1) * rat_pow(rest, p);
        }
    }
    throw std::invalid_argument("unknown model kind");
}

bool exact_moment_available(ModelKind kind, int p) {
    switch (kind) {
        case ModelKind::rotated: return p <= 8;
        case ModelKind::independent: return p <= 6;
        case ModelKind::conjugate: return p <= 3;
        case ModelKind::generalized: return false;
    }
    return false;
}

Rational exact_moment(const ChannelModel& m, int p) {
    switch (m.kind) {
        case ModelKind::rotated: return exact_moment_rotated_rank_one(m.n, m.k, p);
        case ModelKind::independent: return exact_moment_independent(m.n, m.k, p);
        case ModelKind::conjugate: return exact_moment_conjugate(m.n, m.k, p);
        default: throw BudgetError("no exact kernel for this model");
    }
}

int cmd_moments(const GlobalOpts& g, const std::string& model_name, long n, long k,
                const std::string& t_str, int p_max, long samples) {
    ChannelModel m;
    m.kind = model_kind_parse(model_name);
    m.n = n;
    m.k = k;
    Rational t = rat_parse(t_str);
    m.t = rat_double(t);
    validate_model(m);
    if (p_max < 1) throw std::invalid_argument("moments: p-max must be >= 1");

    std::vector<MomentRow> rows;
    for (int p = 1; p <= p_max; ++p) {
        MomentRow r;
        r.model = model_kind_name(m.kind);
        r.n = n;
        r.k = k;
        if (m.kind == ModelKind::generalized) r.t = rat_str(t);
        r.p = p;
        if (exact_moment_available(m.kind, p)) r.exact = rat_str(exact_moment(m, p));
        r.limit = rat_str(moment_limit(m, p, t));
        if (samples > 0) {
            McEstimate e = mc_channel_moment(m, p, samples, RngConfig{g.seed, 0});
            r.mc_mean = e.mean;
            r.mc_stderr = e.std_error;
            r.mc_samples = e.samples;
            r.seed = g.seed;
        }
        rows.push_back(std::move(r));
    }
    emit(g, to_json(rows), to_csv(rows));
    return 0;
}

// ---- spectrum-scan ----

int cmd_spectrum_scan(const GlobalOpts& g, const std::string& model_name, long k,
                      const std::string& t_str, const std::vector<long>& n_list, long samples) {
    if (n_list.empty()) throw std::invalid_argument("spectrum-scan: empty n-list");
    for (size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("spectrum-scan: n-list must increase");

    ChannelModel base;
    base.kind = model_kind_parse(model_name);
    base.k = k;
    Rational t = rat_parse(t_str);
    base.t = rat_double(t);

    std::vector<SpectrumRow> rows;
    for (long n : n_list) {
        ChannelModel m = base;
        m.n = n;
        validate_model(m);
        SpectrumStats st = mc_spectrum(m, samples, RngConfig{g.seed, 0});

        std::vector<Rational> predicted;
        bool has_predicted = true;
        try {
            predicted = limit_spectrum(m.kind, n, k, t, Regime::n_large);
        } catch (const std::invalid_argument&) {
            has_predicted = false;
        }

        long hayden_pass = -1, hayden_total = -1;
        if (m.kind == ModelKind::generalized) {
            // same streams as mc_spectrum, so the bound is checked on the
            // very samples that built the statistics
            long rank = generalized_rank(n, k, m.t);
            std::vector<long> cols(static_cast<size_t>(rank));
            for (long c = 0; c < rank; ++c) cols[static_cast<size_t>(c)] = c;
            hayden_pass = 0;
            hayden_total = samples;
            for (long i = 0; i < samples; ++i) {
                auto rng = Xoshiro256::for_stream(g.seed, static_cast<std::uint64_t>(i));
                Eigen::MatrixXcd u = sample_haar(static_cast<int>(n * k), rng);
                if (pair_bell_overlap(u, u.conjugate(), n, k, cols) >= m.t - 1e-10) ++hayden_pass;
            }
        }

        for (size_t r = 0; r < st.mean.size(); ++r) {
            SpectrumRow row;
            row.model = model_kind_name(m.kind);
            row.n = n;
            row.k = k;
            if (m.kind == ModelKind::generalized) row.t = rat_str(t);
            row.rank = static_cast<int>(r);
            row.eig_mean = st.mean[r];
            row.eig_spread = st.spread[r];
            if (has_predicted && r < predicted.size()) row.predicted = rat_str(predicted[r]);
            row.hayden_pass = hayden_pass;
            row.hayden_total = hayden_total;
            row.samples = samples;
            row.seed = g.seed;
            rows.push_back(std::move(row));
        }
    }
    emit(g, to_json(rows), to_csv(rows));
    return 0;
}

// ---- diagram-eval ----

RatMatrix rat_matrix_from_json(const nlohmann::json& j) {
    int rows = static_cast<int>(j.size());
    if (rows == 0) throw std::invalid_argument("bindings: empty matrix");
    int cols = static_cast<int>(j.at(0).size());
    RatMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(j.at(r).size()) != cols)
            throw std::invalid_argument("bindings: ragged matrix");
        for (int c = 0; c < cols; ++c) {
            const auto& cell = j.at(r).at(c);
            m(r, c) = cell.is_string() ? rat_parse(cell.get<std::string>())
                                       : rat_parse(cell.dump());
        }
    }
    return m;
}

nlohmann::json weight_to_json(const SymbolicWeight& w) {
    nlohmann::json jw;
    jw["coeff"] = rat_str(w.coeff);
    jw["dim_exponents"] = w.dim_exponents;
    nlohmann::json words = nlohmann::json::array();
    for (const auto& word : w.trace_words) {
        nlohmann::json jword = nlohmann::json::array();
        for (const auto& f : word)
            jword.push_back({{"label", f.label}, {"transposed", f.transposed}});
        words.push_back(std::move(jword));
    }
    jw["trace_words"] = std::move(words);
    nlohmann::json wgs = nlohmann::json::array();
    for (const auto& f : w.wg)
        wgs.push_back(
            {{"dim_exponents", f.dim_exponents}, {"cycle_type", cycle_type_str(f.arg)}});
    jw["wg"] = std::move(wgs);
    return jw;
}

int cmd_diagram_eval(const GlobalOpts& g, const std::string& file, const std::string& mode,
                     const std::string& bindings_file) {
    if (g.format == "csv")
        throw std::invalid_argument("diagram-eval emits json; drop --format csv");

    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open diagram file: " + file);
    nlohmann::json jd;
    try {
        jd = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("diagram file does not parse: ") + e.what());
    }
    Diagram d = diagram_from_json(jd);
    validate_or_throw(d);

    std::map<std::string, RatMatrix> bindings;
    if (!bindings_file.empty()) {
        std::ifstream bf(bindings_file);
        if (!bf) throw std::invalid_argument("cannot open bindings file: " + bindings_file);
        nlohmann::json jb;
        try {
            jb = nlohmann::json::parse(bf);
        } catch (const nlohmann::json::parse_error& e) {
            throw ValidationError(std::string("bindings file does not parse: ") + e.what());
        }
        for (const auto& [label, jm] : jb.items()) bindings[label] = rat_matrix_from_json(jm);
    }

    nlohmann::json out;
    out["mode"] = mode;
    if (mode == "contract") {
        for (const Box& b : d.boxes)
            if (b.is_haar)
                throw ValidationError("contract mode needs an all-constant diagram; group '" +
                                      b.group + "' still has Haar boxes");
        Tensor t = contract(d);
        out["dims"] = t.dims;
        nlohmann::json entries = nlohmann::json::array();
        for (const cdouble& z : t.data) entries.push_back({z.real(), z.imag()});
        out["entries"] = std::move(entries);
        if (t.rank() == 0) out["scalar"] = {t.scalar().real(), t.scalar().imag()};
    } else if (mode == "expect-symbolic" || mode == "expect-numeric") {
        std::vector<std::string> groups;
        for (const Box& b : d.boxes)
            if (b.is_haar && std::find(groups.begin(), groups.end(), b.group) == groups.end())
                groups.push_back(b.group);
        std::vector<SymbolicWeight> terms = symbolic_moment(d, groups);
        if (terms.empty()) {
            out["value"] = "0/1";
            out["note"] =
                "a group pairs unequal counts of plain and conjugated boxes, so the mean is 0";
        } else if (mode == "expect-symbolic") {
            nlohmann::json jt = nlohmann::json::array();
            for (const auto& w : terms) jt.push_back(weight_to_json(w));
            out["terms"] = std::move(jt);
            out["term_count"] = terms.size();
        } else {
            std::map<std::string, long> dims;
            for (const Space& s : d.spaces) dims[s.id] = s.dim;
            out["value"] = rat_str(evaluate_sum(terms, dims, bindings));
        }
    } else {
        throw std::invalid_argument("unknown mode: " + mode);
    }
    emit(g, out, "");
    return 0;
}

// ---- mc-check ----

int cmd_mc_check(const GlobalOpts& g, const std::string& model_name, long n, long k,
                 const std::string& t_str, int p_max, long samples) {
    ChannelModel m;
    m.kind = model_kind_parse(model_name);
    m.n = n;
    m.k = k;
    m.t = rat_double(rat_parse(t_str));
    validate_model(m);

    std::vector<CheckRow> rows;
    bool all_pass = true;
    for (int p = 1; p <= p_max; ++p) {
        if (!exact_moment_available(m.kind, p)) continue;
        Rational exact = exact_moment(m, p);
        McEstimate e = mc_channel_moment(m, p, samples, RngConfig{g.seed, 0});
        CheckRow r;
        r.quantity = model_kind_name(m.kind) + " n=" + std::to_string(n) +
                     " k=" + std::to_string(k) + " p=" + std::to_string(p);
        r.exact = rat_str(exact);
        r.mc_mean = e.mean;
        r.mc_stderr = e.std_error;
        r.mc_samples = e.samples;
        double diff = std::abs(e.mean - rat_double(exact));
        if (e.std_error > 1e-12) {
            r.sigmas = diff / e.std_error;
            r.pass = r.sigmas <= 4.0;
        } else {
            // spread at rounding-noise scale: the quantity is deterministic
            r.sigmas = 0.0;
            r.pass = diff < 1e-10;
        }
        all_pass = all_pass && r.pass;
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw std::invalid_argument("mc-check: no exact kernel below p-max");
    emit(g, to_json(rows), to_csv(rows));
    if (!all_pass) {
        std::cerr << "mc-check: a sampled estimate sits more than 4 standard errors from its "
                     "exact value\n";
        return 4;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and sampled Haar-unitary moment tables, random quantum channel "
                 "moments and spectra, and diagram evaluation"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "base RNG seed")->capture_default_str();
    app.add_option("--shards", g.shards, "worker threads for sampled runs (results do not depend on it)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", g.out, "output file (default stdout)");

    // wg-table
    auto* wg = app.add_subcommand("wg-table", "exact and asymptotic Weingarten values by cycle type");
    int wg_p = 3;
    std::vector<long> wg_n;
    wg->add_option("-p,--order", wg_p, "moment order (exact tables up to 8)")
        ->capture_default_str();
    wg->add_option("-n,--n-list", wg_n, "dimensions to tabulate")->required()->delimiter(',');

    // moments
    auto* mo = app.add_subcommand("moments", "exact, limiting, and sampled channel moments");
    std::string mo_model = "conjugate-product";
    long mo_n = 8, mo_k = 2, mo_samples = 0;
    std::string mo_t = "1/2";
    int mo_pmax = 3;
    mo->add_option("--model", mo_model,
                   "rotated | independent-product | conjugate-product | generalized-t")
        ->capture_default_str();
    mo->add_option("-n", mo_n, "output dimension")->capture_default_str();
    mo->add_option("-k", mo_k, "environment dimension")->capture_default_str();
    mo->add_option("-t", mo_t, "input-rank fraction, generalized model only")
        ->capture_default_str();
    mo->add_option("-p,--p-max", mo_pmax, "largest moment order")->capture_default_str();
    mo->add_option("--samples", mo_samples, "samples for the sampled column (0 = skip)")
        ->capture_default_str();

    // spectrum-scan
    auto* sc = app.add_subcommand("spectrum-scan",
                                  "ordered eigenvalue means across an n grid, with predictions");
    std::string sc_model = "conjugate-product", sc_t = "1/2";
    long sc_k = 2, sc_samples = 200;
    std::vector<long> sc_n;
    sc->add_option("--model", sc_model, "channel model")->capture_default_str();
    sc->add_option("-k", sc_k, "environment dimension")->capture_default_str();
    sc->add_option("-t", sc_t, "input-rank fraction, generalized model only")
        ->capture_default_str();
    sc->add_option("-n,--n-list", sc_n, "dimensions to scan")->required()->delimiter(',');
    sc->add_option("--samples", sc_samples, "samples per grid point")->capture_default_str();

    // diagram-eval
    auto* de = app.add_subcommand("diagram-eval", "contract or expand a diagram file");
    std::string de_file, de_mode = "expect-numeric", de_bindings;
    de->add_option("--file", de_file, "diagram json file")->required();
    de->add_option("--mode", de_mode, "contract | expect-symbolic | expect-numeric")
        ->check(CLI::IsMember({"contract", "expect-symbolic", "expect-numeric"}))
        ->capture_default_str();
    de->add_option("--bindings", de_bindings,
                   "json file of label -> rational matrix for abstract boxes");

    // mc-check
    auto* mc = app.add_subcommand("mc-check", "sampled moments against exact kernels, 4-sigma gate");
    std::string mc_model = "conjugate-product", mc_t = "1/2";
    long mc_n = 4, mc_k = 2, mc_samples = 2000;
    int mc_pmax = 2;
    mc->add_option("--model", mc_model, "channel model")->capture_default_str();
    mc->add_option("-n", mc_n, "output dimension")->capture_default_str();
    mc->add_option("-k", mc_k, "environment dimension")->capture_default_str();
    mc->add_option("-t", mc_t, "input-rank fraction, generalized model only")
        ->capture_default_str();
    mc->add_option("-p,--p-max", mc_pmax, "largest moment order")->capture_default_str();
    mc->add_option("--samples", mc_samples, "samples per moment")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

#ifdef _OPENMP
    if (g.shards > 0) omp_set_num_threads(g.shards);
#endif

    try {
        if (wg->parsed()) return cmd_wg_table(g, wg_p, wg_n);
        if (mo->parsed()) return cmd_moments(g, mo_model, mo_n, mo_k, mo_t, mo_pmax, mo_samples);
        if (sc->parsed()) return cmd_spectrum_scan(g, sc_model, sc_k, sc_t, sc_n, sc_samples);
        if (de->parsed()) return cmd_diagram_eval(g, de_file, de_mode, de_bindings);
        if (mc->parsed()) return cmd_mc_check(g, mc_model, mc_n, mc_k, mc_t, mc_pmax, mc_samples);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "validation: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
