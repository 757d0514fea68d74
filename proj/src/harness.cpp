#include "macrolab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "macrolab/geometric.hpp"
#include "macrolab/macroscopicity.hpp"

namespace macrolab {

const char* const kCsvHeader =
    "ensemble,n,k,sample,seed,m_tilde_lower,m_tilde_upper,m_tilde,m_norm,n_m_norm,e_g,opt_converged,eg_converged";
const char* const kSummaryHeader =
    "ensemble,n,k,count,mean_m_norm,std_m_norm,mean_e_g,std_e_g,mean_bracket_width,mean_lambda1";
const char* const kBoundsHeader = "mode,n,eta,e_g,m_tilde,m_norm";

namespace {

using Json = nlohmann::json;

constexpr int kMaxSymmetricN = 1000;

struct ExperimentInfo {
    Experiment experiment;
    const char* name;
};

constexpr ExperimentInfo kExperiments[] = {
    {Experiment::NamedState, "named-state"},      {Experiment::XiScan, "xi-scan"},
    {Experiment::EtaBounds, "eta-bounds"},        {Experiment::PhysicalScan, "physical-scan"},
    {Experiment::ChainScan, "chain-scan"},        {Experiment::HaarScan, "haar-scan"},
    {Experiment::SymmetricScan, "symmetric-scan"},
};

bool is_dense(Experiment e) {
    return e == Experiment::PhysicalScan || e == Experiment::ChainScan || e == Experiment::HaarScan;
}

bool is_symmetric_kind(const std::string& kind) {
    return kind == "ghz" || kind == "w" || kind == "dicke" || kind == "xi";
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t sample_seed(std::uint64_t seed, const std::string& ensemble, int n, long long k, int sample) {
    const std::uint64_t cell = RngStream::derive(fnv1a(ensemble), static_cast<std::uint64_t>(n),
                                                 static_cast<std::uint64_t>(k));
    return RngStream::derive(seed, cell, static_cast<std::uint64_t>(sample));
}

void finish_row(SampleRow& row) {
    row.m_norm = normalize(std::max(row.m_tilde, static_cast<double>(row.n)), row.n);
    row.n_m_norm = row.n * row.m_norm;
}

SampleRow evaluate_dense(const PureState& state, SampleRow row, const ExperimentConfig& config) {
    const Vcm vcm = build_vcm(state);
    MacroResult macro = [&] {
        if (row.n > config.exact_max_n) return macroscopicity_bracket(state, vcm);
        MacroOptions options;
        options.restarts = config.restarts;
        options.tol = config.tol;
        options.seed = RngStream::derive(row.seed, 1);
        return macroscopicity_exact(state, vcm, options);
    }();
    row.m_tilde_lower = macro.lower_bound;
    row.m_tilde_upper = macro.upper_bound;
    row.m_tilde = macro.m_tilde;
    row.opt_converged = macro.stats.converged;
    if (config.compute_e_g) {
        GeomOptions options;
        options.seed = RngStream::derive(row.seed, 2);
        const GeomResult geom = geometric_entanglement(state, options);
        row.e_g = geom.e_g;
        row.eg_converged = geom.converged;
    } else {
        row.e_g = std::nan("");
    }
    finish_row(row);
    return row;
}

SampleRow evaluate_symmetric(const SymmetricState& state, SampleRow row, const ExperimentConfig& config) {
    const MacroResult macro = macroscopicity_symmetric(state);
    row.m_tilde_lower = macro.lower_bound;
    row.m_tilde_upper = macro.upper_bound;
    row.m_tilde = macro.m_tilde;
    row.opt_converged = true;
    if (config.compute_e_g) {
        SymmetricGeomOptions options;
        options.seed = RngStream::derive(row.seed, 2);
        const GeomResult geom = geometric_entanglement_symmetric(state, options);
        row.e_g = geom.e_g;
        row.eg_converged = geom.converged;
    } else {
        row.e_g = std::nan("");
    }
    finish_row(row);
    return row;
}

SymmetricState named_symmetric(int n, const NamedStateSpec& spec) {
    if (spec.kind == "ghz") return ghz(n);
    if (spec.kind == "w") return dicke(n, 1);
    if (spec.kind == "dicke") return dicke(n, spec.k);
    return xi_state(n, spec.theta, spec.epsilon);
}

PureState named_dense(int n, const NamedStateSpec& spec) {
    if (spec.kind == "bell-product") return bell_product(n);
    if (spec.kind == "ghz-ones") return ghz_ones(n, spec.k);
    if (spec.kind == "phi-c") return phi_c(n);
    if (spec.kind == "product") return PureState::zeros(n);
    throw ConfigError("state.kind", "unknown state kind '" + spec.kind + "'");
}

struct Task {
    SampleRow row;
    std::function<SampleRow(const SampleRow&)> compute;
};

void run_tasks(std::vector<Task>& tasks, std::vector<SampleRow>& rows, int threads) {
    rows.resize(tasks.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                rows[i] = tasks[i].compute(tasks[i].row);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(tasks.size());
            }
        }
    };
    int count = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    count = std::clamp(count, 1, static_cast<int>(std::max<std::size_t>(1, tasks.size())));
    if (count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < count; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
}

template <typename T>
T get_field(const Json& j, const char* key, const std::string& field) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(field, e.what());
    }
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& prefix) {
    if (!j.is_object()) throw ConfigError(prefix.empty() ? "config" : prefix, "expected an object");
    for (const auto& item : j.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return item.key() == a; });
        if (!known) throw ConfigError(prefix + item.key(), "unknown field");
    }
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace

const char* experiment_name(Experiment e) {
    for (const auto& info : kExperiments) {
        if (info.experiment == e) return info.name;
    }
    return "unknown";
}

Experiment parse_experiment(const std::string& name) {
    for (const auto& info : kExperiments) {
        if (name == info.name) return info.experiment;
    }
    throw ConfigError("experiment", "unknown experiment '" + name + "'");
}

ConfigError::ConfigError(const std::string& field, const std::string& message)
    : std::invalid_argument(field + ": " + message), field_(field) {}

long long evaluate_k(const std::string& expr, int n) {
    std::string e;
    for (char c : expr) {
        if (c != ' ') e += c;
    }
    auto parse_int = [&](const std::string& s, long long& value) {
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        return ec == std::errc() && ptr == s.data() + s.size();
    };
    long long value = 0;
    if (e == "n" || e == "N") return n;
    if (e == "n-1" || e == "N-1") return n - 1;
    if (e.size() > 2 && (e[0] == 'n' || e[0] == 'N') && e[1] == '^') {
        long long p = 0;
        if (!parse_int(e.substr(2), p) || p < 0 || p > 8) throw ConfigError("k_values", "bad exponent in '" + expr + "'");
        long long k = 1;
        for (long long i = 0; i < p; ++i) k *= n;
        return k;
    }
    if (parse_int(e, value) && value >= 0) return value;
    throw ConfigError("k_values", "cannot evaluate '" + expr + "'");
}

void ExperimentConfig::validate() const {
    if (samples < 1) throw ConfigError("samples", "must be at least 1");
    if (n_values.empty()) throw ConfigError("n_values", "must not be empty");
    if (restarts < -1) throw ConfigError("optimizer.restarts", "must be -1 (default) or non-negative");
    if (!(tol > 0.0)) throw ConfigError("optimizer.tol", "must be positive");
    if (format != "csv" && format != "json") throw ConfigError("output.format", "must be csv or json");
    if (grid < 2) throw ConfigError("grid", "must be at least 2");
    if (threads < 0) throw ConfigError("threads", "must be non-negative");
    for (int n : n_values) {
        if (n < 2) throw ConfigError("n_values", "every n must be at least 2");
        if (is_dense(experiment)) require_dense(n, experiment_name(experiment));
        if (!is_dense(experiment) && n > kMaxSymmetricN) {
            throw ResourceLimit(std::string(experiment_name(experiment)) + " supports n <= 1000", n, kMaxSymmetricN);
        }
    }
    if (experiment == Experiment::PhysicalScan || experiment == Experiment::ChainScan) {
        if (k_values.empty()) throw ConfigError("k_values", "required for " + std::string(experiment_name(experiment)));
        for (int n : n_values) {
            for (const auto& expr : k_values) {
                const long long k = evaluate_k(expr, n);
                if (experiment == Experiment::ChainScan && k > n - 1) {
                    throw ConfigError("k_values", "chain length exceeds n-1 for n=" + std::to_string(n));
                }
            }
        }
    }
    if (experiment == Experiment::NamedState) {
        if (is_symmetric_kind(state.kind)) {
            for (int n : n_values) {
                if (state.kind == "dicke" && (state.k < 0 || state.k > n)) throw ConfigError("state.k", "out of range");
            }
        } else if (state.kind == "bell-product" || state.kind == "ghz-ones" || state.kind == "phi-c" ||
                   state.kind == "product") {
            for (int n : n_values) {
                const int total = state.kind == "ghz-ones" ? n + state.k : n;
                require_dense(total, state.kind.c_str());
            }
        } else {
            throw ConfigError("state.kind", "unknown state kind '" + state.kind + "'");
        }
    }
}

ExperimentConfig parse_config(const std::string& json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
    check_keys(j,
               {"schema_version", "experiment", "n_values", "k_values", "samples", "seed", "optimizer", "output",
                "exact_max_n", "compute_e_g", "pair_selection", "threads", "grid", "state"},
               "");
    if (!j.contains("schema_version")) throw ConfigError("schema_version", "missing");
    if (get_field<int>(j, "schema_version", "schema_version") != ExperimentConfig::kSchemaVersion) {
        throw ConfigError("schema_version", "unsupported version");
    }
    ExperimentConfig c;
    if (!j.contains("experiment")) throw ConfigError("experiment", "missing");
    c.experiment = parse_experiment(get_field<std::string>(j, "experiment", "experiment"));
    if (j.contains("n_values")) c.n_values = get_field<std::vector<int>>(j, "n_values", "n_values");
    if (j.contains("k_values")) {
        const Json& ks = j.at("k_values");
        if (!ks.is_array()) throw ConfigError("k_values", "expected an array");
        for (const auto& k : ks) {
            if (k.is_number_integer()) c.k_values.push_back(std::to_string(k.get<long long>()));
            else if (k.is_string()) c.k_values.push_back(k.get<std::string>());
            else throw ConfigError("k_values", "entries must be integers or strings");
        }
    }
    if (j.contains("samples")) c.samples = get_field<int>(j, "samples", "samples");
    if (j.contains("seed")) c.seed = get_field<std::uint64_t>(j, "seed", "seed");
    if (j.contains("optimizer")) {
        const Json& o = j.at("optimizer");
        check_keys(o, {"restarts", "tol"}, "optimizer.");
        if (o.contains("restarts")) c.restarts = get_field<int>(o, "restarts", "optimizer.restarts");
        if (o.contains("tol")) c.tol = get_field<double>(o, "tol", "optimizer.tol");
    }
    if (j.contains("output")) {
        const Json& o = j.at("output");
        check_keys(o, {"path", "format"}, "output.");
        if (o.contains("path")) c.output_path = get_field<std::string>(o, "path", "output.path");
        if (o.contains("format")) c.format = get_field<std::string>(o, "format", "output.format");
    }
    if (j.contains("exact_max_n")) c.exact_max_n = get_field<int>(j, "exact_max_n", "exact_max_n");
    if (j.contains("compute_e_g")) c.compute_e_g = get_field<bool>(j, "compute_e_g", "compute_e_g");
    if (j.contains("pair_selection")) {
        const auto sel = get_field<std::string>(j, "pair_selection", "pair_selection");
        if (sel == "adjacent") c.pair_selection = PairSelection::Adjacent;
        else if (sel == "any") c.pair_selection = PairSelection::AnyPair;
        else throw ConfigError("pair_selection", "must be adjacent or any");
    }
    if (j.contains("threads")) c.threads = get_field<int>(j, "threads", "threads");
    if (j.contains("grid")) c.grid = get_field<int>(j, "grid", "grid");
    if (j.contains("state")) {
        const Json& s = j.at("state");
        check_keys(s, {"kind", "k", "theta", "epsilon"}, "state.");
        if (s.contains("kind")) c.state.kind = get_field<std::string>(s, "kind", "state.kind");
        if (s.contains("k")) c.state.k = get_field<int>(s, "k", "state.k");
        if (s.contains("theta")) c.state.theta = get_field<double>(s, "theta", "state.theta");
        if (s.contains("epsilon")) c.state.epsilon = get_field<double>(s, "epsilon", "state.epsilon");
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

SampleRow evaluate_named_state(int n, const NamedStateSpec& spec, const ExperimentConfig& config) {
    SampleRow row{.ensemble = spec.kind, .n = n, .k = spec.k, .sample = 0, .seed = config.seed};
    if (is_symmetric_kind(spec.kind)) return evaluate_symmetric(named_symmetric(n, spec), row, config);
    const PureState state = named_dense(n, spec);
    row.n = state.n_qubits();
    return evaluate_dense(state, row, config);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    std::vector<Task> tasks;
    auto add = [&](const std::string& ensemble, int n, long long k, int sample,
                   std::function<SampleRow(const SampleRow&)> compute) {
        SampleRow row{.ensemble = ensemble, .n = n, .k = k, .sample = sample, .seed = sample_seed(config.seed, ensemble, n, k, sample)};
        tasks.push_back({std::move(row), std::move(compute)});
    };

    for (int n : config.n_values) {
        switch (config.experiment) {
            case Experiment::NamedState:
                add(config.state.kind, n, config.state.k, 0,
                    [&config, n](const SampleRow&) { return evaluate_named_state(n, config.state, config); });
                break;
            case Experiment::XiScan:
                for (int i = 0; i < config.grid; ++i) {
                    const double t = static_cast<double>(i) / (config.grid - 1);
                    add("xi-eps-line", n, i, 0, [&config, n, t](const SampleRow& r) {
                        return evaluate_symmetric(xi_state(n, t * std::numbers::pi / 4.0, std::numbers::pi / 2.0), r, config);
                    });
                    add("xi-theta-line", n, i, 0, [&config, n, t](const SampleRow& r) {
                        return evaluate_symmetric(xi_state(n, std::numbers::pi / 4.0, t * std::numbers::pi), r, config);
                    });
                }
                break;
            case Experiment::EtaBounds:
                for (BoundMode mode : {BoundMode::General, BoundMode::Symmetric}) {
                    const std::vector<double> etas = eta_grid(n, mode, config.grid);
                    for (int i = 0; i < config.grid; ++i) {
                        const double eta = etas[i];
                        add(std::string("eta-") + bound_mode_name(mode), n, i, 0, [n, eta, mode](const SampleRow& r) {
                            SampleRow row = r;
                            const EtaMaxBound b = eta_max_bound(n, eta, mode);
                            row.m_tilde_lower = row.m_tilde_upper = row.m_tilde = b.m_tilde;
                            row.e_g = -std::log2(eta);
                            row.opt_converged = row.eg_converged = true;
                            finish_row(row);
                            return row;
                        });
                    }
                }
                break;
            case Experiment::PhysicalScan:
            case Experiment::ChainScan: {
                const bool chain = config.experiment == Experiment::ChainScan;
                for (const auto& expr : config.k_values) {
                    const long long k = evaluate_k(expr, n);
                    for (int s = 0; s < config.samples; ++s) {
                        add(chain ? "chain" : "physical", n, k, s, [&config, n, k, chain](const SampleRow& r) {
                            RngStream rng(r.seed);
                            const PureState state = chain ? random_linear_chain(n, static_cast<int>(k), rng)
                                                          : random_physical_state(n, k, rng, config.pair_selection);
                            return evaluate_dense(state, r, config);
                        });
                    }
                }
                break;
            }
            case Experiment::HaarScan:
                for (int s = 0; s < config.samples; ++s) {
                    add("haar", n, 0, s, [&config, n](const SampleRow& r) {
                        RngStream rng(r.seed);
                        return evaluate_dense(haar_random_state(n, rng), r, config);
                    });
                }
                break;
            case Experiment::SymmetricScan:
                for (int s = 0; s < config.samples; ++s) {
                    add("symmetric", n, 0, s, [&config, n](const SampleRow& r) {
                        RngStream rng(r.seed);
                        return evaluate_symmetric(random_symmetric_state(n, rng), r, config);
                    });
                }
                break;
        }
    }

    ExperimentResult result;
    run_tasks(tasks, result.rows, config.threads);
    std::stable_sort(result.rows.begin(), result.rows.end(), [](const SampleRow& a, const SampleRow& b) {
        return std::tie(a.n, a.k, a.sample, a.ensemble) < std::tie(b.n, b.k, b.sample, b.ensemble);
    });
    result.summary = summarize(result.rows);
    return result;
}

std::vector<StatRecord> summarize(const std::vector<SampleRow>& rows) {
    using Key = std::tuple<std::string, int, long long>;
    std::vector<Key> order;
    std::map<Key, std::vector<const SampleRow*>> cells;
    for (const auto& row : rows) {
        Key key{row.ensemble, row.n, row.k};
        auto [it, inserted] = cells.try_emplace(key);
        if (inserted) order.push_back(key);
        it->second.push_back(&row);
    }
    std::vector<StatRecord> out;
    for (const auto& key : order) {
        const auto& members = cells.at(key);
        std::vector<double> m, e, width, lambda;
        for (const SampleRow* r : members) {
            m.push_back(r->m_norm);
            e.push_back(r->e_g);
            width.push_back(r->m_tilde_upper - r->m_tilde_lower);
            lambda.push_back(r->m_tilde_upper / r->n);
        }
        StatRecord rec;
        rec.ensemble = std::get<0>(key);
        rec.n = std::get<1>(key);
        rec.k = std::get<2>(key);
        rec.count = static_cast<int>(members.size());
        rec.mean_m_norm = mean_of(m);
        rec.std_m_norm = std_of(m, rec.mean_m_norm);
        rec.mean_e_g = mean_of(e);
        rec.std_e_g = std_of(e, rec.mean_e_g);
        rec.mean_bracket_width = mean_of(width);
        rec.mean_lambda1 = mean_of(lambda);
        out.push_back(std::move(rec));
    }
    return out;
}

void write_csv(std::ostream& out, const std::vector<SampleRow>& rows) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.ensemble << ',' << r.n << ',' << r.k << ',' << r.sample << ',' << r.seed << ','
            << format_double(r.m_tilde_lower) << ',' << format_double(r.m_tilde_upper) << ','
            << format_double(r.m_tilde) << ',' << format_double(r.m_norm) << ',' << format_double(r.n_m_norm) << ','
            << format_double(r.e_g) << ',' << (r.opt_converged ? 1 : 0) << ',' << (r.eg_converged ? 1 : 0) << '\n';
    }
}

void write_json(std::ostream& out, const std::vector<SampleRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["ensemble"] = r.ensemble;
        o["n"] = r.n;
        o["k"] = r.k;
        o["sample"] = r.sample;
        o["seed"] = r.seed;
        o["m_tilde_lower"] = r.m_tilde_lower;
        o["m_tilde_upper"] = r.m_tilde_upper;
        o["m_tilde"] = r.m_tilde;
        o["m_norm"] = r.m_norm;
        o["n_m_norm"] = r.n_m_norm;
        o["e_g"] = r.e_g;
        o["opt_converged"] = r.opt_converged;
        o["eg_converged"] = r.eg_converged;
        arr.push_back(std::move(o));
    }
    out << arr.dump(1) << '\n';
}

void write_summary_csv(std::ostream& out, const std::vector<StatRecord>& records) {
    out << kSummaryHeader << '\n';
    for (const auto& r : records) {
        out << r.ensemble << ',' << r.n << ',' << r.k << ',' << r.count << ',' << format_double(r.mean_m_norm) << ','
            << format_double(r.std_m_norm) << ',' << format_double(r.mean_e_g) << ',' << format_double(r.std_e_g)
            << ',' << format_double(r.mean_bracket_width) << ',' << format_double(r.mean_lambda1) << '\n';
    }
}

std::vector<SampleRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error("read_csv: unexpected header");
    std::vector<SampleRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (f.size() != 13) throw std::runtime_error("read_csv: wrong column count on line " + std::to_string(line_no));
        try {
            SampleRow r;
            r.ensemble = f[0];
            r.n = std::stoi(f[1]);
            r.k = std::stoll(f[2]);
            r.sample = std::stoi(f[3]);
            r.seed = std::stoull(f[4]);
            r.m_tilde_lower = std::strtod(f[5].c_str(), nullptr);
            r.m_tilde_upper = std::strtod(f[6].c_str(), nullptr);
            r.m_tilde = std::strtod(f[7].c_str(), nullptr);
            r.m_norm = std::strtod(f[8].c_str(), nullptr);
            r.n_m_norm = std::strtod(f[9].c_str(), nullptr);
            r.e_g = std::strtod(f[10].c_str(), nullptr);
            r.opt_converged = f[11] == "1";
            r.eg_converged = f[12] == "1";
            rows.push_back(std::move(r));
        } catch (const std::logic_error&) {
            throw std::runtime_error("read_csv: malformed number on line " + std::to_string(line_no));
        }
    }
    return rows;
}

std::vector<BoundsRow> bounds_curves(const std::vector<int>& n_values, const std::vector<BoundMode>& modes,
                                     int grid_size) {
    std::vector<BoundsRow> rows;
    for (BoundMode mode : modes) {
        for (int n : n_values) {
            for (double eta : eta_grid(n, mode, grid_size)) {
                const EtaMaxBound b = eta_max_bound(n, eta, mode);
                rows.push_back({mode, n, eta, -std::log2(eta), b.m_tilde, b.m_norm});
            }
        }
    }
    return rows;
}

void write_bounds_csv(std::ostream& out, const std::vector<BoundsRow>& rows) {
    out << kBoundsHeader << '\n';
    for (const auto& r : rows) {
        out << bound_mode_name(r.mode) << ',' << r.n << ',' << format_double(r.eta) << ',' << format_double(r.e_g)
            << ',' << format_double(r.m_tilde) << ',' << format_double(r.m_norm) << '\n';
    }
}

void write_bounds_json(std::ostream& out, const std::vector<BoundsRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["mode"] = bound_mode_name(r.mode);
        o["n"] = r.n;
        o["eta"] = r.eta;
        o["e_g"] = r.e_g;
        o["m_tilde"] = r.m_tilde;
        o["m_norm"] = r.m_norm;
        arr.push_back(std::move(o));
    }
    out << arr.dump(1) << '\n';
}

void emit(const std::vector<SampleRow>& rows, const std::string& format, const std::string& path) {
    std::ostringstream text;
    if (format == "csv") write_csv(text, rows);
    else if (format == "json") write_json(text, rows);
    else throw std::invalid_argument("unknown output format '" + format + "'");
    write_text(path, text.str());
}

}  // namespace macrolab
