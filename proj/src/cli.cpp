#include "srr/cli.hpp"

#include "srr/errors.hpp"
#include "srr/geometry.hpp"
#include "srr/io.hpp"
#include "srr/simq.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace srr::cli {

namespace {

using io::json;

json with_schema(const std::string& command, json payload) {
    json out;
    out["schema"] = io::kSchemaVersion;
    out["command"] = command;
    out["result"] = std::move(payload);
    return out;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw ValidationError("cannot write '" + out_path + "'");
    f << text;
}

void emit_json(const std::string& out_path, const json& j) { emit(out_path, j.dump(2)); }

// Inline JSON (starts with '[' or '{') or a file path. Files produced by
// this toolkit carry a schema wrapper, which is peeled off transparently so
// every emitted document re-parses as an input.
json json_arg(const std::string& arg) {
    std::string trimmed = arg;
    auto pos = trimmed.find_first_not_of(" \t");
    json j;
    if (pos != std::string::npos && (trimmed[pos] == '[' || trimmed[pos] == '{')) {
        try {
            j = json::parse(trimmed);
        } catch (const json::parse_error& e) {
            throw JsonError(std::string("malformed json: ") + e.what());
        }
    } else {
        j = io::load_json_file(arg);
    }
    if (j.is_object() && j.contains("schema") && j.contains("result")) return j["result"];
    return j;
}

StorageScheme load_scheme(const std::string& path) {
    return io::scheme_from_json(json_arg(path));
}

std::string csv_number(const Rat& r) {
    std::ostringstream os;
    os << std::setprecision(12) << rat_to_double(r);
    return os.str();
}

std::string vertices_csv(const RegionPolytope& poly, int dim) {
    std::ostringstream os;
    for (int c = 0; c < dim; ++c) os << (c ? "," : "") << "lambda_" << (c + 1);
    os << "\n";
    for (const auto& v : poly.vertices) {
        for (int c = 0; c < dim; ++c) os << (c ? "," : "") << csv_number(v[c]);
        os << "\n";
    }
    return os.str();
}

uint64_t seed_with_env(uint64_t flag_seed, bool seed_given) {
    if (seed_given) return flag_seed;
    if (const char* env = std::getenv("SRR_SEED")) return std::strtoull(env, nullptr, 10);
    return flag_seed;
}

std::vector<int> parse_dims(const std::string& s, int k) {
    std::vector<int> dims;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int d = std::stoi(item);
        if (d < 1 || d > k) throw ValidationError("slice coordinate out of range");
        dims.push_back(d - 1);
    }
    return dims;
}

// ---- subcommand bodies ----

int cmd_construct(const std::string& type, int k, int n, const std::string& field_json,
                  bool systematic, const std::string& mu_str,
                  const std::string& replicas_str, const std::string& profile_path,
                  const std::string& columns_json, const std::string& out) {
    Rat mu = rat_from_string(mu_str);
    FieldSpec field;
    if (!field_json.empty()) field = io::field_from_json(json_arg(field_json));
    StorageScheme scheme;
    if (type == "replication") {
        std::vector<int> replicas;
        std::stringstream ss(replicas_str);
        std::string item;
        while (std::getline(ss, item, ',')) replicas.push_back(std::stoi(item));
        scheme = make_replication(k, replicas, mu);
    } else if (type == "mds") {
        if (field_json.empty()) throw ValidationError("mds needs --field");
        scheme = make_mds(n, k, field, systematic, mu);
    } else if (type == "simplex") {
        scheme = make_simplex(k, mu);
    } else if (type == "rm1") {
        scheme = make_rm1(k, systematic, mu);
    } else if (type == "lrc") {
        if (field_json.empty() || profile_path.empty())
            throw ValidationError("lrc needs --field and --profile");
        scheme = make_lrc(io::lrc_profile_from_json(json_arg(profile_path)), field, mu);
    } else if (type == "explicit") {
        if (field_json.empty() || columns_json.empty())
            throw ValidationError("explicit needs --field and --columns");
        auto cols = json_arg(columns_json).get<std::vector<std::vector<uint32_t>>>();
        scheme = make_explicit(field, k, cols, mu);
    } else {
        throw ValidationError("unknown construction type '" + type + "'");
    }
    emit_json(out, with_schema("construct", io::scheme_to_json(scheme)));
    return kOk;
}

RecoveryCatalog catalog_for(const StorageScheme& scheme, int max_size = 0,
                            long long budget = 2'000'000) {
    EnumerationOptions opts;
    opts.max_size = max_size;
    opts.budget = budget;
    return enumerate_recovery_sets(std::make_shared<StorageScheme>(scheme), opts);
}

int cmd_recovery(const std::string& scheme_path, int max_size, long long budget,
                 const std::string& out) {
    auto scheme = load_scheme(scheme_path);
    auto cat = catalog_for(scheme, max_size, budget);
    emit_json(out, with_schema("recovery", io::catalog_to_json(cat)));
    return kOk;
}

int cmd_region(const std::string& scheme_path, const std::string& dims_str,
               const std::string& format, const std::string& out) {
    auto scheme = load_scheme(scheme_path);
    auto cat = catalog_for(scheme);
    RegionPolytope poly;
    int dim;
    if (dims_str.empty()) {
        poly = polytope(cat);
        dim = scheme.k;
    } else {
        auto dims = parse_dims(dims_str, scheme.k);
        poly = polytope_slice(cat, dims);
        dim = int(dims.size());
    }
    if (format == "csv")
        emit(out, vertices_csv(poly, dim));
    else
        emit_json(out, with_schema("region", io::polytope_to_json(poly)));
    return kOk;
}

int cmd_check(const std::string& scheme_path, const std::string& demand_arg, bool witness,
              const std::string& out) {
    auto scheme = load_scheme(scheme_path);
    auto cat = catalog_for(scheme);
    DemandVector demand{io::demand_from_json(json_arg(demand_arg))};
    auto res = is_achievable(cat, demand);
    json payload;
    payload["achievable"] = res.achievable;
    payload["demand"] = io::demand_to_json(demand.lambda);
    if (res.achievable && witness)
        payload["allocation"] = io::allocation_to_json(*res.allocation);
    if (!res.achievable && res.cut) {
        json a = json::array();
        for (const auto& c : res.cut->a) a.push_back(io::rat_json(c));
        payload["violated_bound"] = json{{"a", a}, {"b", io::rat_json(res.cut->b)}};
    }
    emit_json(out, with_schema("check", payload));
    return res.achievable ? kOk : kNegative;
}

// k = 2: the other coordinate runs from 0 to its axis maximum. Larger k: the
// --fixed vector is scaled from 0 to 1 (its own values must be feasible).
// Each row reports the largest feasible free coordinate.
int cmd_sweep(const std::string& scheme_path, int free_index_1based,
              const std::string& fixed_arg, int steps, const std::string& format,
              const std::string& out) {
    auto scheme = load_scheme(scheme_path);
    auto cat = catalog_for(scheme);
    const int free_index = free_index_1based - 1;
    if (free_index < 0 || free_index >= scheme.k)
        throw ValidationError("free index out of range");
    if (steps < 1) throw ValidationError("steps must be >= 1");
    if (scheme.k != 2 && fixed_arg.empty())
        throw ValidationError("sweep needs --fixed when k != 2");

    std::vector<Rat> base(scheme.k, Rat(0));
    Rat top = 1;  // sweep parameter runs over [0, top]
    if (scheme.k == 2) {
        int other = 1 - free_index;
        std::vector<Rat> axis(scheme.k, Rat(0));
        axis[other] = 1;
        base[other] = 1;
        top = support(cat, axis);
    } else {
        auto fixed = io::demand_from_json(json_arg(fixed_arg));
        if (int(fixed.size()) != scheme.k)
            throw ValidationError("fixed vector dimension mismatch");
        base = fixed;
        base[free_index] = 0;
    }
    std::ostringstream csv;
    csv << "scale,max_free\n";
    json rows = json::array();
    for (int t = 0; t <= steps; ++t) {
        Rat scale = top * Rat(t, steps);
        std::vector<std::optional<Rat>> fixed(scheme.k);
        for (int i = 0; i < scheme.k; ++i)
            if (i != free_index) fixed[i] = base[i] * scale;
        Rat max_free = max_along(cat, fixed, free_index);
        csv << csv_number(scale) << "," << csv_number(max_free) << "\n";
        json row;
        row["fixed"] = json::array();
        for (int i = 0; i < scheme.k; ++i)
            if (i != free_index) row["fixed"].push_back(io::rat_json(*fixed[i]));
        row["max_free"] = io::rat_json(max_free);
        rows.push_back(row);
    }
    if (format == "csv")
        emit(out, csv.str());
    else
        emit_json(out, with_schema("sweep", json{{"free_index", free_index_1based},
                                                 {"rows", rows}}));
    return kOk;
}

int cmd_bounds(const std::string& scheme_path, bool counting, const std::string& dims_str,
               const std::string& format, const std::string& out) {
    auto scheme = load_scheme(scheme_path);
    RegionPolytope poly;
    int dim = scheme.k;
    if (dims_str.empty()) {
        poly = outer_polytope(scheme, counting);
    } else {
        auto dims = parse_dims(dims_str, scheme.k);
        poly = outer_polytope_slice(scheme, counting, dims);
        dim = int(dims.size());
    }
    if (format == "csv")
        emit(out, vertices_csv(poly, dim));
    else
        emit_json(out, with_schema("bounds", io::polytope_to_json(poly)));
    return kOk;
}

int cmd_waterfill(const std::string& scheme_path, const std::string& demand_arg,
                  const std::string& lrc_profile_path, const std::string& out) {
    auto scheme = load_scheme(scheme_path);
    auto lambda = io::demand_from_json(json_arg(demand_arg));
    WaterfillResult result;
    if (!lrc_profile_path.empty()) {
        auto profile = io::lrc_profile_from_json(json_arg(lrc_profile_path));
        result = lrc_waterfill(scheme, profile, lambda);
    } else {
        if (!is_systematic_mds(scheme))
            throw ValidationError(
                "waterfill without --lrc expects a systematic mds scheme");
        result = mds_waterfill(scheme.n, scheme.k, scheme.mu, lambda);
    }
    emit_json(out, with_schema("waterfill", io::waterfill_to_json(result)));
    return kOk;
}

int cmd_graph(const std::string& scheme_path, const std::string& mode_str, bool stats,
              const std::string& out) {
    auto scheme = load_scheme(scheme_path);
    auto cat = catalog_for(scheme);
    RecoveryHypergraph::Mode mode = mode_str == "full"
                                        ? RecoveryHypergraph::Mode::Full
                                        : RecoveryHypergraph::Mode::PairsOnly;
    if (mode_str != "full" && mode_str != "pairs")
        throw ValidationError("graph mode must be pairs or full");
    auto g = build_graph(scheme, cat, mode);
    json payload = io::graph_to_json(g);
    if (stats) {
        json st;
        st["fractional_matching"] = io::rat_json(fractional_matching_number(g));
        bool exact_ok = g.num_vertices <= 24;
        if (exact_ok) {
            st["matching"] = matching_number(g);
            st["vertex_cover"] = vertex_cover_number(g);
        }
        if (mode == RecoveryHypergraph::Mode::PairsOnly)
            st["bipartite"] = is_bipartite(g);
        payload["stats"] = st;
    }
    emit_json(out, with_schema("graph", payload));
    return kOk;
}

int cmd_batch(const std::string& scheme_path, long long t, bool pir, long long mu,
              long long budget, const std::string& out) {
    auto scheme = load_scheme(scheme_path);
    auto cat = catalog_for(scheme);
    bool ok = pir ? is_pir_code(cat, mu, t, budget) : is_batch_code(cat, mu, t, budget);
    json payload{{"t", t}, {"mu", mu}, {"kind", pir ? "pir" : "batch"}, {"holds", ok}};
    emit_json(out, with_schema("batch", payload));
    return ok ? kOk : kNegative;
}

int cmd_coverage(const std::string& scheme_path, const std::string& dist_path,
                 long long samples, uint64_t seed, const std::string& out) {
    auto scheme = load_scheme(scheme_path);
    auto cat = catalog_for(scheme);
    auto dist = io::distribution_from_json(json_arg(dist_path));
    auto res = coverage(cat, dist, samples, seed);
    json payload{{"estimate", res.estimate},
                 {"ci_half_width", res.ci_half_width},
                 {"exact", res.exact},
                 {"samples", res.samples},
                 {"seed", seed}};
    emit_json(out, with_schema("coverage", payload));
    return kOk;
}

int cmd_cost(const std::string& scheme_path, const std::string& demand_arg,
             const std::string& alloc_path, const std::string& out) {
    auto scheme = load_scheme(scheme_path);
    auto cat = catalog_for(scheme);
    DemandVector demand{io::demand_from_json(json_arg(demand_arg))};
    json payload;
    payload["demand"] = io::demand_to_json(demand.lambda);
    if (!alloc_path.empty()) {
        auto alloc = io::allocation_from_json(json_arg(alloc_path));
        if (!allocation_is_valid(cat, demand, alloc))
            throw ValidationError("allocation is not valid for this demand");
        payload["cost"] = io::rat_json(cost_of(cat, alloc));
        payload["kind"] = "given-allocation";
    } else {
        auto [alloc, cost] = min_cost_allocation(cat, demand);
        payload["cost"] = io::rat_json(cost);
        payload["allocation"] = io::allocation_to_json(alloc);
        payload["kind"] = "minimum";
    }
    emit_json(out, with_schema("cost", payload));
    return kOk;
}

int cmd_simulate(const std::string& scheme_path, const std::string& demand_arg,
                 const std::string& alloc_path, double horizon, uint64_t seed,
                 double warmup, const std::string& queue_csv, const std::string& out) {
    auto scheme = load_scheme(scheme_path);
    SimConfig config;
    config.catalog = std::make_shared<RecoveryCatalog>(catalog_for(scheme));
    config.lambda = io::demand_from_json(json_arg(demand_arg));
    config.allocation = io::allocation_from_json(json_arg(alloc_path));
    config.horizon = horizon;
    config.warmup_fraction = warmup;
    config.seed = seed;
    auto report = simulate(config);
    if (!queue_csv.empty()) {
        std::ostringstream os;
        os << "time";
        for (int s = 0; s < config.catalog->n(); ++s) os << ",server_" << (s + 1);
        os << "\n";
        for (const auto& sample : report.samples) {
            os << sample.time;
            for (int q : sample.queue_lengths) os << "," << q;
            os << "\n";
        }
        emit(queue_csv, os.str());
    }
    emit_json(out, with_schema("simulate", io::sim_report_to_json(report)));
    return kOk;
}

// ---- reproduce ----

struct NamedScheme {
    std::string name;
    StorageScheme scheme;
};

int cmd_reproduce(const std::string& id, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    json manifest;
    manifest["schema"] = io::kSchemaVersion;
    manifest["id"] = id;
    json files = json::array();
    auto write_file = [&](const std::string& name, const std::string& text,
                          const std::string& call) {
        fs::path p = fs::path(out_dir) / name;
        std::ofstream f(p);
        if (!f) throw ValidationError("cannot write '" + p.string() + "'");
        f << text;
        files.push_back(json{{"file", name}, {"call", call}});
    };

    if (id == "fig1" || id == "fig3") {
        std::vector<NamedScheme> schemes;
        if (id == "fig1") {
            schemes.push_back({"replication", make_replication(2, {2, 2}, 1)});
            schemes.push_back({"mds", make_mds(4, 2, FieldSpec{3, 1, {}}, true, 1)});
            schemes.push_back({"hybrid", make_explicit(FieldSpec{2, 1, {}}, 2,
                                                       {{1, 0}, {1, 0}, {0, 1}, {1, 1}}, 1)});
        } else {
            FieldSpec gf11{11, 1, {}};
            auto f11 = Field::make(gf11);
            uint32_t alpha = f11->primitive_element();
            schemes.push_back({"replication44", make_replication(2, {4, 4}, 1)});
            schemes.push_back({"mds82-nonsystematic", make_mds(8, 2, gf11, false, 1)});
            schemes.push_back({"mds82-systematic", make_mds(8, 2, gf11, true, 1)});
            schemes.push_back(
                {"hybrid332",
                 make_explicit(gf11, 2,
                               {{1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}, {0, 1}, {1, 1},
                                {1, alpha}},
                               1)});
        }
        json areas;
        for (const auto& [name, scheme] : schemes) {
            auto cat = catalog_for(scheme);
            auto poly = polytope(cat);
            write_file(id + "_" + name + "_vertices.csv", vertices_csv(poly, 2),
                       "region --scheme " + name + ".json --format csv");
            areas[name] = io::rat_json(polygon_area(poly.vertices));
        }
        manifest["areas"] = areas;
    } else if (id == "fig10-slice") {
        auto scheme = make_rm1(4, false, 1);
        auto cat = catalog_for(scheme);
        auto poly = polytope_slice(cat, {0, 3});
        write_file("fig10_slice_vertices.csv", vertices_csv(poly, 2),
                   "region --scheme rm1-k4.json --dims 1,4 --format csv");
    } else if (id == "fig12") {
        auto scheme = make_simplex(3, 1);
        auto cat = catalog_for(scheme, /*max_size=*/2);
        std::vector<Rat> lambda{1, 3, 0};
        // Even split over each object's disjoint sets serves any demand with
        // sum within the region; here 1/4 per a-set and 3/4 per b-set.
        Allocation fractional;
        fractional.weights.resize(3);
        for (int i = 0; i < 3; ++i)
            fractional.weights[i].assign(cat.count(i), lambda[i] / cat.count(i));
        if (!allocation_is_valid(cat, DemandVector{lambda}, fractional))
            throw Error("fractional split is unexpectedly invalid");
        write_file("fig12_fractional.json",
                   with_schema("fractional-split", io::allocation_to_json(fractional))
                       .dump(2),
                   "internal: even split over disjoint recovery sets");
        auto integral = integral_achievable(cat, 1, {1, 3, 0});
        if (!integral.achievable) throw Error("integral split unexpectedly missing");
        json edges = json::array();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < cat.count(i); ++j)
                if (integral.allocation->weights[i][j] > 0) {
                    json servers = json::array();
                    for (int s : cat.sets[i][j].servers) servers.push_back(s + 1);
                    edges.push_back(json{{"object", i + 1},
                                         {"servers", servers},
                                         {"units",
                                          io::rat_json(integral.allocation->weights[i][j])}});
                }
        write_file("fig12_integral.json",
                   with_schema("integral-split", json{{"edges", edges}}).dump(2),
                   "batch --scheme simplex3.json --t 4");
    } else {
        throw ValidationError("unknown reproduce id '" + id + "'");
    }
    manifest["files"] = files;
    io::save_json_file((fs::path(out_dir) / "manifest.json").string(), manifest);
    std::cout << "wrote " << files.size() + 1 << " files to " << out_dir << "\n";
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"service rate region toolkit"};
    app.require_subcommand(1);

    // construct
    std::string type, field_json, mu_str = "1", replicas_str, profile_path, columns_json;
    std::string out, scheme_path, demand_arg, dims_str, format = "json";
    int k = 0, n = 0, max_size = 0, steps = 16, free_index = 1;
    long long budget = 2'000'000, t = 1, mu_int = 1, node_budget = 10'000'000;
    long long samples = 100000;
    bool systematic = false, witness = false, counting = false, stats = false, pir = false;
    uint64_t seed = 1;
    bool seed_given = false;
    double horizon = 1e5, warmup = 0.2;
    std::string alloc_path, dist_path, queue_csv, fig_id, out_dir = ".";
    std::string lrc_profile_path, fixed_arg, mode_str = "pairs";

    auto* c_construct = app.add_subcommand("construct", "build a storage scheme");
    c_construct->add_option("--type", type)->required();
    c_construct->add_option("--k", k);
    c_construct->add_option("--n", n);
    c_construct->add_option("--field", field_json);
    c_construct->add_flag("--systematic", systematic);
    c_construct->add_option("--mu", mu_str);
    c_construct->add_option("--replicas", replicas_str);
    c_construct->add_option("--profile", profile_path);
    c_construct->add_option("--columns", columns_json);
    c_construct->add_option("--out", out);

    auto* c_recovery = app.add_subcommand("recovery", "enumerate recovery sets");
    c_recovery->add_option("--scheme", scheme_path)->required();
    c_recovery->add_option("--max-size", max_size);
    c_recovery->add_option("--budget", budget);
    c_recovery->add_option("--out", out);

    auto* c_region = app.add_subcommand("region", "exact service rate region");
    c_region->add_option("--scheme", scheme_path)->required();
    c_region->add_option("--dims", dims_str);
    c_region->add_option("--format", format);
    c_region->add_option("--out", out);

    auto* c_check = app.add_subcommand("check", "is a demand vector achievable");
    c_check->add_option("--scheme", scheme_path)->required();
    c_check->add_option("--demand", demand_arg)->required();
    c_check->add_flag("--witness", witness);
    c_check->add_option("--out", out);

    auto* c_sweep = app.add_subcommand("sweep", "boundary sweep along one coordinate");
    c_sweep->add_option("--scheme", scheme_path)->required();
    c_sweep->add_option("--free-index", free_index);
    c_sweep->add_option("--fixed", fixed_arg);
    c_sweep->add_option("--steps", steps);
    c_sweep->add_option("--format", format);
    c_sweep->add_option("--out", out);

    auto* c_bounds = app.add_subcommand("bounds", "geometric outer bounds");
    c_bounds->add_option("--scheme", scheme_path)->required();
    c_bounds->add_flag("--counting", counting);
    c_bounds->add_option("--dims", dims_str);
    c_bounds->add_option("--format", format);
    c_bounds->add_option("--out", out);

    auto* c_waterfill = app.add_subcommand("waterfill", "waterfilling allocation");
    c_waterfill->add_option("--scheme", scheme_path)->required();
    c_waterfill->add_option("--demand", demand_arg)->required();
    c_waterfill->add_option("--lrc", lrc_profile_path);
    c_waterfill->add_option("--out", out);

    auto* c_graph = app.add_subcommand("graph", "recovery (hyper)graph");
    c_graph->add_option("--scheme", scheme_path)->required();
    c_graph->add_option("--mode", mode_str);
    c_graph->add_flag("--stats", stats);
    c_graph->add_option("--out", out);

    auto* c_batch = app.add_subcommand("batch", "batch/pir property check");
    c_batch->add_option("--scheme", scheme_path)->required();
    c_batch->add_option("--t", t)->required();
    c_batch->add_flag("--pir", pir);
    c_batch->add_option("--mu", mu_int);
    c_batch->add_option("--budget", node_budget);
    c_batch->add_option("--out", out);

    auto* c_coverage = app.add_subcommand("coverage", "covered demand mass");
    c_coverage->add_option("--scheme", scheme_path)->required();
    c_coverage->add_option("--dist", dist_path)->required();
    c_coverage->add_option("--samples", samples);
    c_coverage->add_option("--seed", seed)->each([&](const std::string&) {
        seed_given = true;
    });
    c_coverage->add_option("--out", out);

    auto* c_cost = app.add_subcommand("cost", "normalized service cost");
    c_cost->add_option("--scheme", scheme_path)->required();
    c_cost->add_option("--demand", demand_arg)->required();
    c_cost->add_option("--alloc", alloc_path);
    c_cost->add_option("--out", out);

    auto* c_sim = app.add_subcommand("simulate", "queueing validation run");
    c_sim->add_option("--scheme", scheme_path)->required();
    c_sim->add_option("--demand", demand_arg)->required();
    c_sim->add_option("--alloc", alloc_path)->required();
    c_sim->add_option("--horizon", horizon);
    c_sim->add_option("--warmup", warmup);
    c_sim->add_option("--seed", seed)->each([&](const std::string&) { seed_given = true; });
    c_sim->add_option("--queue-csv", queue_csv);
    c_sim->add_option("--out", out);

    auto* c_repro = app.add_subcommand("reproduce", "rebuild a bundled example study");
    c_repro->add_option("--id", fig_id)->required();
    c_repro->add_option("--out-dir", out_dir);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (!args.empty()) {
            bool known = false;
            for (const auto* sub : app.get_subcommands({}))
                if (sub->get_name() == args[0]) known = true;
            if (!known && args[0].rfind("-", 0) != 0) {
                std::cerr << "unknown subcommand '" << args[0] << "'\n";
                return kUnknownCommand;
            }
        }
        int code = app.exit(e);
        return code == 0 ? kOk : kValidationError;
    }

    try {
        if (*c_construct)
            return cmd_construct(type, k, n, field_json, systematic, mu_str, replicas_str,
                                 profile_path, columns_json, out);
        if (*c_recovery) return cmd_recovery(scheme_path, max_size, budget, out);
        if (*c_region) return cmd_region(scheme_path, dims_str, format, out);
        if (*c_check) return cmd_check(scheme_path, demand_arg, witness, out);
        if (*c_sweep) return cmd_sweep(scheme_path, free_index, fixed_arg, steps, format, out);
        if (*c_bounds) return cmd_bounds(scheme_path, counting, dims_str, format, out);
        if (*c_waterfill) return cmd_waterfill(scheme_path, demand_arg, lrc_profile_path, out);
        if (*c_graph) return cmd_graph(scheme_path, mode_str, stats, out);
        if (*c_batch) return cmd_batch(scheme_path, t, pir, mu_int, node_budget, out);
        if (*c_coverage)
            return cmd_coverage(scheme_path, dist_path, samples,
                                seed_with_env(seed, seed_given), out);
        if (*c_cost) return cmd_cost(scheme_path, demand_arg, alloc_path, out);
        if (*c_sim)
            return cmd_simulate(scheme_path, demand_arg, alloc_path, horizon,
                                seed_with_env(seed, seed_given), warmup, queue_csv, out);
        if (*c_repro) return cmd_reproduce(fig_id, out_dir);
    } catch (const JsonError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformedJson;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidationError;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidationError;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kValidationError;
    } catch (const json::exception& e) {
        std::cerr << "error: unexpected input shape: " << e.what() << "\n";
        return kValidationError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidationError;
    }
    return kValidationError;
}

}  // namespace srr::cli
