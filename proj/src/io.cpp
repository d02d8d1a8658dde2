#include "srr/io.hpp"

#include "srr/errors.hpp"

#include <fstream>

namespace srr::io {

json rat_json(const Rat& r) { return rat_to_string(r); }

Rat rat_parse(const json& j) {
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
    if (j.is_number_unsigned()) return Rat(Int(j.get<unsigned long long>()));
    if (j.is_number_float()) return rat_from_double(j.get<double>());
    throw ValidationError("expected a rational (string or number)");
}

json field_to_json(const FieldSpec& f) {
    json j;
    j["p"] = f.p;
    j["m"] = f.m;
    if (f.m > 1) j["modulus"] = f.modulus;
    return j;
}

FieldSpec field_from_json(const json& j) {
    FieldSpec f;
    f.p = j.at("p").get<uint32_t>();
    f.m = j.value("m", 1u);
    if (j.contains("modulus")) f.modulus = j.at("modulus").get<std::vector<uint32_t>>();
    return f;
}

json scheme_to_json(const StorageScheme& s) {
    json j;
    j["field"] = field_to_json(s.field->spec());
    j["k"] = s.k;
    j["n"] = s.n;
    j["mu"] = rat_json(s.mu);
    j["columns"] = s.columns;
    return j;
}

StorageScheme scheme_from_json(const json& j) {
    StorageScheme s;
    s.field = Field::make(field_from_json(j.at("field")));
    s.k = j.at("k").get<int>();
    s.columns = j.at("columns").get<std::vector<std::vector<uint32_t>>>();
    s.n = j.contains("n") ? j.at("n").get<int>() : int(s.columns.size());
    s.mu = j.contains("mu") ? rat_parse(j.at("mu")) : Rat(1);
    s.validate();
    return s;
}

json lrc_profile_to_json(const LrcProfile& p) {
    json groups = json::array();
    for (const auto& g : p.groups) {
        json jg;
        json objects = json::array();
        for (int o : g.objects) objects.push_back(o + 1);
        jg["objects"] = objects;
        jg["parities"] = g.parities;
        groups.push_back(jg);
    }
    return json{{"k", p.k}, {"ell", p.ell}, {"r", p.r}, {"p", p.global_parities},
                {"groups", groups}};
}

LrcProfile lrc_profile_from_json(const json& j) {
    LrcProfile p;
    p.k = j.at("k").get<int>();
    p.ell = j.at("ell").get<int>();
    p.r = j.at("r").get<int>();
    p.global_parities = j.value("p", 0);
    for (const auto& jg : j.at("groups")) {
        LrcGroup g;
        for (int o : jg.at("objects").get<std::vector<int>>()) g.objects.push_back(o - 1);
        g.parities = jg.at("parities").get<std::vector<std::vector<uint32_t>>>();
        p.groups.push_back(std::move(g));
    }
    return p;
}

json catalog_to_json(const RecoveryCatalog& cat) {
    json objects = json::array();
    for (int i = 0; i < cat.k(); ++i) {
        json sets = json::array();
        for (const auto& rs : cat.sets[i]) {
            json servers = json::array();
            for (int s : rs.servers) servers.push_back(s + 1);
            sets.push_back(servers);
        }
        objects.push_back(json{{"object", i + 1}, {"count", cat.count(i)}, {"sets", sets}});
    }
    return json{{"k", cat.k()}, {"n", cat.n()}, {"objects", objects}};
}

json demand_to_json(const std::vector<Rat>& lambda) {
    json j = json::array();
    for (const auto& l : lambda) j.push_back(rat_json(l));
    return j;
}

std::vector<Rat> demand_from_json(const json& j) {
    if (!j.is_array()) throw ValidationError("demand must be an array of rationals");
    std::vector<Rat> out;
    for (const auto& v : j) out.push_back(rat_parse(v));
    return out;
}

json allocation_to_json(const Allocation& a) {
    json weights = json::array();
    for (const auto& row : a.weights) {
        json jr = json::array();
        for (const auto& w : row) jr.push_back(rat_json(w));
        weights.push_back(jr);
    }
    return json{{"weights", weights}};
}

Allocation allocation_from_json(const json& j) {
    Allocation a;
    // Accept a bare weight matrix, {"weights": ...}, or any document that
    // nests an allocation (e.g. an achievability check with a witness).
    const json* src = &j;
    if (src->is_object() && src->contains("allocation")) src = &src->at("allocation");
    const json& weights = src->is_object() ? src->at("weights") : *src;
    for (const auto& row : weights) {
        std::vector<Rat> r;
        for (const auto& w : row) r.push_back(rat_parse(w));
        a.weights.push_back(std::move(r));
    }
    return a;
}

json polytope_to_json(const RegionPolytope& p) {
    json hs = json::array();
    for (const auto& h : p.halfspaces) {
        json a = json::array();
        for (const auto& c : h.a) a.push_back(rat_json(c));
        hs.push_back(json{{"a", a}, {"b", rat_json(h.b)}});
    }
    json vs = json::array();
    for (const auto& v : p.vertices) {
        json jv = json::array();
        for (const auto& c : v) jv.push_back(rat_json(c));
        vs.push_back(jv);
    }
    return json{{"halfspaces", hs}, {"vertices", vs}, {"exact", p.exact}};
}

RegionPolytope polytope_from_json(const json& j) {
    RegionPolytope p;
    for (const auto& jh : j.at("halfspaces")) {
        HalfSpace h;
        for (const auto& c : jh.at("a")) h.a.push_back(rat_parse(c));
        h.b = rat_parse(jh.at("b"));
        p.halfspaces.push_back(std::move(h));
    }
    if (j.contains("vertices"))
        for (const auto& jv : j.at("vertices")) {
            std::vector<Rat> v;
            for (const auto& c : jv) v.push_back(rat_parse(c));
            p.vertices.push_back(std::move(v));
        }
    p.exact = j.value("exact", false);
    return p;
}

json waterfill_to_json(const WaterfillResult& r) {
    json loads = json::array();
    for (const auto& g : r.loads.gamma) loads.push_back(rat_json(g));
    json events = json::array();
    for (const auto& e : r.log) {
        json servers = json::array();
        for (int s : e.servers) servers.push_back(s + 1);
        events.push_back(json{{"amount", rat_json(e.amount)}, {"servers", servers}});
    }
    return json{{"loads", loads},
                {"residual", rat_json(r.residual)},
                {"feasible", r.feasible},
                {"events", events}};
}

json graph_to_json(const RecoveryHypergraph& g) {
    json edges = json::array();
    for (const auto& e : g.edges) {
        json vs = json::array();
        for (int v : e.vertices) vs.push_back(v + 1);
        edges.push_back(json{{"vertices", vs}, {"label", e.label + 1}});
    }
    json owners = json::array();
    for (int c : g.dummy_owner) owners.push_back(c + 1);
    return json{{"mode", g.mode == RecoveryHypergraph::Mode::PairsOnly ? "pairs" : "full"},
                {"servers", g.num_servers},
                {"vertices", g.num_vertices},
                {"k", g.k},
                {"mu", rat_json(g.mu)},
                {"edges", edges},
                {"dummy_owners", owners}};
}

json distribution_to_json(const DemandDistribution& d) {
    switch (d.kind) {
        case DemandDistribution::Kind::Box: {
            json bounds = json::array();
            for (const auto& b : d.box_bounds) bounds.push_back(rat_json(b));
            return json{{"type", "box"}, {"bounds", bounds}};
        }
        case DemandDistribution::Kind::TruncatedExponential:
            return json{{"type", "truncated-exponential"},
                        {"rates", d.exp_rates},
                        {"bounds", d.exp_bounds}};
        case DemandDistribution::Kind::Grid: {
            json points = json::array();
            for (const auto& p : d.grid) {
                json lambda = json::array();
                for (const auto& l : p.lambda) lambda.push_back(rat_json(l));
                points.push_back(json{{"lambda", lambda}, {"p", p.probability}});
            }
            return json{{"type", "grid"}, {"points", points}};
        }
    }
    throw Error("unreachable distribution kind");
}

DemandDistribution distribution_from_json(const json& j) {
    DemandDistribution d;
    const std::string type = j.at("type").get<std::string>();
    if (type == "box") {
        d.kind = DemandDistribution::Kind::Box;
        for (const auto& b : j.at("bounds")) d.box_bounds.push_back(rat_parse(b));
    } else if (type == "truncated-exponential") {
        d.kind = DemandDistribution::Kind::TruncatedExponential;
        d.exp_rates = j.at("rates").get<std::vector<double>>();
        d.exp_bounds = j.at("bounds").get<std::vector<double>>();
    } else if (type == "grid") {
        d.kind = DemandDistribution::Kind::Grid;
        for (const auto& jp : j.at("points")) {
            DemandDistribution::GridPoint p;
            for (const auto& l : jp.at("lambda")) p.lambda.push_back(rat_parse(l));
            p.probability = jp.at("p").get<double>();
            d.grid.push_back(std::move(p));
        }
    } else if (type == "anticorrelated-grid") {
        d = anticorrelated_grid(j.value("span", 4.0), j.value("steps", 9),
                                j.value("hot", 3.0), j.value("cold", 0.5),
                                j.value("sigma", 0.8));
    } else {
        throw ValidationError("unsupported distribution type '" + type + "'");
    }
    return d;
}

json sim_report_to_json(const SimReport& r) {
    json servers = json::array();
    for (const auto& s : r.servers)
        servers.push_back(json{{"arrival_rate", s.subtask_arrival_rate},
                               {"utilization", s.utilization},
                               {"mean_queue_length", s.mean_queue_length},
                               {"drift_slope", s.drift_slope},
                               {"stable", s.stable}});
    return json{{"servers", servers},
                {"mean_response_time", r.mean_response_time},
                {"completed_requests", r.completed_requests},
                {"total_events", r.total_events}};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw JsonError(std::string("malformed json: ") + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

}  // namespace srr::io
