#include "opchaos/report.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace opchaos {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError(path + ": " + msg);
}

void check_keys(const json& j, const std::string& path,
                const std::set<std::string>& allowed) {
    if (!j.is_object()) fail(path, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) fail(path + "/" + it.key(), "unknown key");
}

const json& need(const json& j, const std::string& path, const std::string& key) {
    auto it = j.find(key);
    if (it == j.end()) fail(path + "/" + key, "missing required key");
    return *it;
}

double need_number(const json& j, const std::string& path, const std::string& key) {
    const json& v = need(j, path, key);
    if (!v.is_number()) fail(path + "/" + key, "expected a number");
    return v.get<double>();
}

index_t need_integer(const json& j, const std::string& path, const std::string& key) {
    const json& v = need(j, path, key);
    if (!v.is_number_integer()) fail(path + "/" + key, "expected an integer");
    return v.get<index_t>();
}

std::string need_string(const json& j, const std::string& path,
                        const std::string& key) {
    const json& v = need(j, path, key);
    if (!v.is_string()) fail(path + "/" + key, "expected a string");
    return v.get<std::string>();
}

std::vector<double> number_array(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) fail(path, "expected a nonempty array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) fail(path, "expected a nonempty array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

std::vector<index_t> integer_array(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array of integers");
    std::vector<index_t> out;
    for (const auto& x : v) {
        if (!x.is_number_integer()) fail(path, "expected an array of integers");
        out.push_back(x.get<index_t>());
    }
    return out;
}

Frontier parse_frontier(const json& j, const std::string& path) {
    const std::string s = j.get<std::string>();
    if (s == "zero") return Frontier::Zero;
    if (s == "hold") return Frontier::Hold;
    if (s == "error") return Frontier::Error;
    fail(path, "frontier must be one of zero|hold|error");
}

HalfGen parse_half_gen(const json& j, const std::string& path) {
    const std::string fam = need_string(j, path, "family");
    if (fam == "Constant" || fam == "Geometric") {
        check_keys(j, path, {"family", "value"});
        return Constant{need_number(j, path, "value")};
    }
    if (fam == "Periodic") {
        check_keys(j, path, {"family", "block"});
        return Periodic{number_array(need(j, path, "block"), path + "/block")};
    }
    fail(path + "/family", "bilateral halves support Constant and Periodic only");
}

} // namespace

WeightSpec parse_weight_spec(const json& j, const std::string& path) {
    check_keys(j, path, {"domain", "generator"});
    const std::string dom = need_string(j, path, "domain");
    Domain domain;
    if (dom == "unilateral")
        domain = Domain::UnilateralN;
    else if (dom == "bilateral")
        domain = Domain::BilateralZ;
    else
        fail(path + "/domain", "domain must be unilateral or bilateral");

    const json& g = need(j, path, "generator");
    const std::string gpath = path + "/generator";
    const std::string fam = need_string(g, gpath, "family");

    try {
        if (fam == "Constant" || fam == "Geometric") {
            check_keys(g, gpath, {"family", "value"});
            return WeightSpec(domain, Constant{need_number(g, gpath, "value")});
        }
        if (fam == "RatioPower") {
            check_keys(g, gpath, {"family", "q"});
            return WeightSpec(domain, RatioPower{need_number(g, gpath, "q")});
        }
        if (fam == "Periodic") {
            check_keys(g, gpath, {"family", "block"});
            return WeightSpec(
                domain, Periodic{number_array(need(g, gpath, "block"), gpath + "/block")});
        }
        if (fam == "Table") {
            check_keys(g, gpath, {"family", "values", "origin", "frontier"});
            Table t;
            t.values = number_array(need(g, gpath, "values"), gpath + "/values");
            t.origin = g.contains("origin") ? need_integer(g, gpath, "origin") : 1;
            t.frontier = g.contains("frontier")
                             ? parse_frontier(g["frontier"], gpath + "/frontier")
                             : Frontier::Error;
            return WeightSpec(domain, std::move(t));
        }
        if (fam == "BlockEuler") {
            check_keys(g, gpath, {"family"});
            return WeightSpec(domain, BlockEuler{});
        }
        if (fam == "PiecewiseBilateral") {
            check_keys(g, gpath, {"family", "neg", "pos"});
            return WeightSpec(domain,
                              PiecewiseBilateral{
                                  parse_half_gen(need(g, gpath, "neg"), gpath + "/neg"),
                                  parse_half_gen(need(g, gpath, "pos"), gpath + "/pos")});
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        fail(gpath, e.what()); // domain/value validation from the WeightSpec ctor
    }
    fail(gpath + "/family", "unknown weight family: " + fam);
}

Space parse_space(const json& j, const std::string& path) {
    const std::string kind = need_string(j, path, "kind");
    if (kind == "sup") {
        check_keys(j, path, {"kind"});
        return Space::sup();
    }
    if (kind == "lp") {
        check_keys(j, path, {"kind", "p"});
        const double p = need_number(j, path, "p");
        if (p < 1.0) fail(path + "/p", "lp requires p >= 1");
        return Space::lp(p);
    }
    fail(path + "/kind", "space kind must be lp or sup");
}

IndexSet parse_index_set(const json& j, const std::string& path) {
    const std::string kind = need_string(j, path, "kind");
    if (kind == "all") {
        check_keys(j, path, {"kind"});
        return IndexSet::all();
    }
    if (kind == "explicit") {
        check_keys(j, path, {"kind", "members", "horizon"});
        auto members = integer_array(need(j, path, "members"), path + "/members");
        return IndexSet::from_indices(members, need_integer(j, path, "horizon"));
    }
    if (kind == "eventually-periodic") {
        check_keys(j, path, {"kind", "preperiod", "period"});
        EventuallyPeriodic ep;
        for (index_t b : integer_array(need(j, path, "period"), path + "/period"))
            ep.period.push_back(b != 0);
        if (j.contains("preperiod"))
            for (index_t b :
                 integer_array(j["preperiod"], path + "/preperiod"))
                ep.preperiod.push_back(b != 0);
        if (ep.period.empty()) fail(path + "/period", "period must be nonempty");
        return IndexSet(std::move(ep));
    }
    fail(path + "/kind", "unknown index-set kind: " + kind);
}

AtomicSystem parse_system_config(const json& cfg, const std::string& path) {
    if (!cfg.is_object()) fail(path, "expected an object");
    const std::string kind =
        cfg.contains("kind") ? cfg["kind"].get<std::string>() : "shift";

    if (kind == "shift") {
        check_keys(cfg, path, {"kind", "domain", "generator", "space", "mass"});
        json specpart;
        specpart["domain"] = need(cfg, path, "domain");
        specpart["generator"] = need(cfg, path, "generator");
        WeightSpec spec = parse_weight_spec(specpart, path);
        Space space = parse_space(need(cfg, path, "space"), path + "/space");
        std::optional<double> mass;
        if (cfg.contains("mass")) mass = need_number(cfg, path, "mass");
        try {
            return build_shift_system(std::move(spec), space, mass);
        } catch (const Error& e) {
            fail(path, e.what());
        }
    }
    if (kind == "translation") {
        // step weights constant on unit cells; reduces to a shift system
        check_keys(cfg, path,
                   {"kind", "domain", "cell_weights", "origin_cell", "space",
                    "frontier", "refine"});
        const std::string dom = need_string(cfg, path, "domain");
        Domain domain;
        if (dom == "unilateral")
            domain = Domain::UnilateralN;
        else if (dom == "bilateral")
            domain = Domain::BilateralZ;
        else
            fail(path + "/domain", "domain must be unilateral or bilateral");
        auto weights =
            number_array(need(cfg, path, "cell_weights"), path + "/cell_weights");
        Space space = parse_space(need(cfg, path, "space"), path + "/space");
        Frontier fr = cfg.contains("frontier")
                          ? parse_frontier(cfg["frontier"], path + "/frontier")
                          : Frontier::Hold;
        index_t refine = cfg.contains("refine") ? need_integer(cfg, path, "refine") : 1;
        try {
            return reduce_translation(weights, need_integer(cfg, path, "origin_cell"),
                                      domain, space, fr, refine);
        } catch (const Error& e) {
            fail(path, e.what());
        }
    }
    if (kind == "explicit") {
        check_keys(cfg, path, {"kind", "atoms", "map", "weights", "masses", "space"});
        ExplicitStructure ex;
        ex.atoms = integer_array(need(cfg, path, "atoms"), path + "/atoms");
        const json& m = need(cfg, path, "map");
        if (!m.is_object()) fail(path + "/map", "expected an object");
        for (auto it = m.begin(); it != m.end(); ++it) {
            if (!it.value().is_number_integer())
                fail(path + "/map/" + it.key(), "expected an integer");
            ex.map[std::stoll(it.key())] = it.value().get<index_t>();
        }
        const json& w = need(cfg, path, "weights");
        if (!w.is_object()) fail(path + "/weights", "expected an object");
        for (auto it = w.begin(); it != w.end(); ++it) {
            if (!it.value().is_number())
                fail(path + "/weights/" + it.key(), "expected a number");
            ex.weight[std::stoll(it.key())] = it.value().get<double>();
        }
        if (cfg.contains("masses")) {
            const json& ms = cfg["masses"];
            if (!ms.is_object()) fail(path + "/masses", "expected an object");
            for (auto it = ms.begin(); it != ms.end(); ++it)
                ex.mass[std::stoll(it.key())] = it.value().get<double>();
        }
        Space space = parse_space(need(cfg, path, "space"), path + "/space");
        try {
            return AtomicSystem(std::move(ex), space);
        } catch (const Error& e) {
            fail(path, e.what());
        }
    }
    fail(path + "/kind", "unknown system kind: " + kind);
}

DCCertificate parse_certificate(const json& j, const AtomicSystem& system) {
    const std::string path = "/certificate";
    if (j.contains("builtin")) {
        check_keys(j, path, {"builtin", "ks"});
        if (j["builtin"].get<std::string>() != "tower")
            fail(path + "/builtin", "unknown builtin certificate");
        return tower_certificate(integer_array(need(j, path, "ks"), path + "/ks"));
    }
    check_keys(j, path, {"epsilon", "D", "vanishing_family", "schedule"});
    DCCertificate cert;
    cert.epsilon = need_number(j, path, "epsilon");
    if (j.contains("D")) cert.D = parse_index_set(j["D"], path + "/D");
    if (j.contains("vanishing_family")) {
        const json& vf = j["vanishing_family"];
        if (!vf.is_array()) fail(path + "/vanishing_family", "expected an array");
        for (const auto& s : vf)
            cert.vanishing_family.push_back(
                integer_array(s, path + "/vanishing_family"));
    }
    const json& sched = need(j, path, "schedule");
    if (!sched.is_array() || sched.empty())
        fail(path + "/schedule", "expected a nonempty array");
    for (size_t i = 0; i < sched.size(); ++i) {
        const std::string sp = path + "/schedule/" + std::to_string(i);
        check_keys(sched[i], sp, {"k", "N_k", "atoms", "coefficients"});
        DCSchedule s;
        s.k = need_integer(sched[i], sp, "k");
        s.N_k = need_integer(sched[i], sp, "N_k");
        s.atoms = integer_array(need(sched[i], sp, "atoms"), sp + "/atoms");
        s.coefficients =
            number_array(need(sched[i], sp, "coefficients"), sp + "/coefficients");
        cert.schedule.push_back(std::move(s));
    }
    (void)system;
    return cert;
}

json load_json_file(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("/: cannot open file " + file);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("/: " + std::string(e.what()));
    }
}

json verdict_to_json(const Verdict& v) {
    json out;
    out["property"] = to_string(v.property);
    out["status"] = to_string(v.status);
    out["holds"] = v.holds;
    out["horizon"] = v.horizon;
    out["theorem_tag"] = v.theorem_tag;
    out["witnesses"] = v.witnesses;
    out["certificate"] = v.certificate;
    return out;
}

namespace {

void dump_rec(const json& j, std::string& out, int indent, int depth) {
    auto pad = [&](int d) {
        if (indent > 0) {
            out += '\n';
            out.append(static_cast<size_t>(indent * d), ' ');
        }
    };
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ',';
            first = false;
            pad(depth + 1);
            out += json(it.key()).dump();
            out += indent > 0 ? ": " : ":";
            dump_rec(it.value(), out, indent, depth + 1);
        }
        pad(depth);
        out += '}';
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += '[';
        bool first = true;
        for (const auto& x : j) {
            if (!first) out += ',';
            first = false;
            pad(depth + 1);
            dump_rec(x, out, indent, depth + 1);
        }
        pad(depth);
        out += ']';
        return;
    }
    case json::value_t::number_float: {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
        out += buf;
        return;
    }
    default:
        out += j.dump();
    }
}

} // namespace

std::string dump_report(const json& report, int indent) {
    std::string out;
    dump_rec(report, out, indent, 0);
    out += '\n';
    return out;
}

void write_text_file(const std::string& file, const std::string& content) {
    std::ofstream out(file);
    if (!out) throw Error("cannot write file " + file);
    out << content;
    if (!out) throw Error("write failed for " + file);
}

void write_csv(const std::string& file, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ostringstream ss;
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) ss << ',';
        ss << header[i];
    }
    ss << '\n';
    char buf[40];
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) ss << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
            ss << buf;
        }
        ss << '\n';
    }
    write_text_file(file, ss.str());
}

} // namespace opchaos
