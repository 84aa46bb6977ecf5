#include "kdeplan/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

namespace kdeplan {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---- CSV ----------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    for (;;) {
        const auto comma = line.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(trim(line.substr(pos)));
            return out;
        }
        out.push_back(trim(line.substr(pos, comma - pos)));
        pos = comma + 1;
    }
}

double parse_double(const std::string& s, const std::string& context) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || (end && *end != '\0'))
        throw ScenarioError("cannot parse number '" + s + "' in " + context);
    if (!std::isfinite(v)) throw ScenarioError("non-finite value in " + context);
    return v;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    return out;
}

}  // namespace

PointSet load_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open data file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ScenarioError("data file '" + path + "' is empty");
    const std::string header = trim(line);
    int dim = 0;
    if (header == "x,y") dim = 2;
    else if (header == "x,y,z") dim = 3;
    else if (header == "x") dim = 1;
    else throw ScenarioError("data file header must be 'x,y' or 'x,y,z', got '" + header + "'");

    std::vector<Point> pts;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != static_cast<std::size_t>(dim))
            throw ScenarioError("data file row " + std::to_string(row) +
                                " has wrong column count");
        Point p;
        p.dim = dim;
        for (int k = 0; k < dim; ++k)
            p.c[k] = parse_double(cells[k], "data row " + std::to_string(row));
        pts.push_back(p);
    }
    if (pts.empty()) throw ScenarioError("data file '" + path + "' contains no rows");
    try {
        return make_point_set(dim, std::move(pts));
    } catch (const ContractViolation& e) {
        throw ScenarioError(std::string("invalid data file: ") + e.what());
    }
}

void write_points_csv(const std::string& path, const PointSet& ps) {
    auto out = open_out(path);
    out << (ps.dim == 1 ? "x" : ps.dim == 2 ? "x,y" : "x,y,z") << "\n";
    for (const Point& p : ps.points) {
        for (int k = 0; k < ps.dim; ++k) out << (k ? "," : "") << format_double(p[k]);
        out << "\n";
    }
}

// ---- scenario JSON --------------------------------------------------------

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key))
            throw ScenarioError("unknown field '" + key + "' in " + where);
}

double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ScenarioError(where + " must be a number");
    return v.get<double>();
}

Point parse_point(const json& v, int dim, const std::string& where) {
    if (!v.is_array() || v.size() != static_cast<std::size_t>(dim))
        throw ScenarioError(where + " must be an array of " + std::to_string(dim) + " numbers");
    Point p;
    p.dim = dim;
    for (int k = 0; k < dim; ++k) p.c[k] = as_number(v[k], where);
    return p;
}

std::vector<Point> parse_ring(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() < 3)
        throw ScenarioError(where + " must be an array of at least 3 vertices");
    std::vector<Point> ring;
    for (const auto& vert : v) ring.push_back(parse_point(vert, 2, where + " vertex"));
    return ring;
}

Box parse_box3(const json& v, const std::string& where) {
    if (!v.is_object()) throw ScenarioError(where + " must be an object with min/max");
    reject_unknown(v, {"min", "max"}, where);
    if (!v.contains("min") || !v.contains("max"))
        throw ScenarioError(where + " must carry min and max");
    try {
        return make_box(parse_point(v["min"], 3, where + ".min"),
                        parse_point(v["max"], 3, where + ".max"));
    } catch (const ContractViolation& e) {
        throw ScenarioError(where + ": " + e.what());
    }
}

json point_to_json(const Point& p) {
    json a = json::array();
    for (int k = 0; k < p.dim; ++k) a.push_back(p[k]);
    return a;
}

json ring_to_json(const std::vector<Point>& ring) {
    json a = json::array();
    for (const auto& p : ring) a.push_back(point_to_json(p));
    return a;
}

KernelKind parse_kernel_kind(const std::string& s) {
    if (s == "box") return KernelKind::box;
    if (s == "epanechnikov") return KernelKind::epanechnikov;
    if (s == "gaussian") return KernelKind::gaussian;
    throw ScenarioError("unknown kernel '" + s + "'");
}

const char* kernel_name(KernelKind k) {
    switch (k) {
        case KernelKind::box: return "box";
        case KernelKind::epanechnikov: return "epanechnikov";
        case KernelKind::gaussian: return "gaussian";
    }
    return "?";
}

}  // namespace

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ScenarioError("scenario root must be a JSON object");

    reject_unknown(doc,
                   {"unit", "dimension", "boundary", "obstacles", "safety_distance",
                    "data_file", "kernel", "H", "start", "goal", "planner", "radius_choice",
                    "q", "truncation", "rho_mc_budget"},
                   "scenario");
    for (const char* required :
         {"unit", "dimension", "boundary", "data_file", "kernel", "H", "start", "goal"})
        if (!doc.contains(required))
            throw ScenarioError(std::string("scenario is missing required field '") + required +
                                "'");

    if (!doc["unit"].is_string()) throw ScenarioError("unit must be a string");
    if (!doc["dimension"].is_number_integer())
        throw ScenarioError("dimension must be an integer");
    const int dim = doc["dimension"].get<int>();
    if (dim != 2 && dim != 3) throw ScenarioError("dimension must be 2 or 3");

    Workspace raw;
    try {
        if (dim == 2) {
            std::vector<std::vector<Point>> holes;
            if (doc.contains("obstacles")) {
                if (!doc["obstacles"].is_array())
                    throw ScenarioError("obstacles must be an array");
                for (const auto& ob : doc["obstacles"])
                    holes.push_back(parse_ring(ob, "obstacle"));
            }
            raw = make_workspace(make_region2d(parse_ring(doc["boundary"], "boundary"),
                                               std::move(holes)),
                                 Epoch::free0);
        } else {
            std::vector<Box> obstacles;
            if (doc.contains("obstacles")) {
                if (!doc["obstacles"].is_array())
                    throw ScenarioError("obstacles must be an array");
                for (const auto& ob : doc["obstacles"])
                    obstacles.push_back(parse_box3(ob, "obstacle"));
            }
            raw = make_workspace(
                make_region3d(parse_box3(doc["boundary"], "boundary"), std::move(obstacles)),
                Epoch::free0);
        }
    } catch (const ContractViolation& e) {
        throw ScenarioError(std::string("invalid scenario geometry: ") + e.what());
    }

    const json& hj = doc["H"];
    if (!hj.is_array() || hj.size() != static_cast<std::size_t>(dim))
        throw ScenarioError("H must be an array of " + std::to_string(dim) + " rows");
    std::vector<double> h;
    for (const auto& rowj : hj) {
        if (!rowj.is_array() || rowj.size() != static_cast<std::size_t>(dim))
            throw ScenarioError("each H row must hold " + std::to_string(dim) + " numbers");
        for (const auto& v : rowj) h.push_back(as_number(v, "H entry"));
    }

    if (!doc["data_file"].is_string()) throw ScenarioError("data_file must be a string");
    const std::string data_file = doc["data_file"].get<std::string>();
    namespace fs = std::filesystem;
    fs::path data_path(data_file);
    if (data_path.is_relative()) data_path = fs::path(path).parent_path() / data_path;
    auto data = std::make_shared<PointSet>(load_points_csv(data_path.string()));
    if (data->dim != dim) throw ScenarioError("data file dimension does not match scenario");

    double safety = 0.0;
    if (doc.contains("safety_distance"))
        safety = as_number(doc["safety_distance"], "safety_distance");

    Scenario s;
    try {
        s = make_scenario(std::move(raw), safety, std::move(data),
                          parse_kernel_kind(doc["kernel"].get<std::string>()), std::move(h),
                          parse_point(doc["start"], dim, "start"),
                          parse_point(doc["goal"], dim, "goal"));
    } catch (const ContractViolation& e) {
        throw ScenarioError(std::string("invalid scenario: ") + e.what());
    }
    s.unit = doc["unit"].get<std::string>();

    if (doc.contains("radius_choice")) {
        const std::string rc = doc["radius_choice"].get<std::string>();
        if (rc == "tight") s.radius_choice = RadiusChoice::tight;
        else if (rc == "paper") s.radius_choice = RadiusChoice::paper;
        else throw ScenarioError("radius_choice must be 'tight' or 'paper'");
    }
    if (doc.contains("q")) {
        const json& qj = doc["q"];
        if (qj.is_string() && qj.get<std::string>() == "inf") s.q = NormOrder::linf;
        else if (qj.is_number_integer() && qj.get<int>() == 1) s.q = NormOrder::l1;
        else if (qj.is_number_integer() && qj.get<int>() == 2) s.q = NormOrder::l2;
        else throw ScenarioError("q must be 1, 2 or \"inf\"");
    }
    if (doc.contains("truncation")) {
        const std::string tm = doc["truncation"].get<std::string>();
        if (tm == "renormalize") s.truncation = TruncationMode::renormalize;
        else if (tm == "refit") s.truncation = TruncationMode::refit;
        else throw ScenarioError("truncation must be 'renormalize' or 'refit'");
    }
    if (doc.contains("rho_mc_budget")) {
        if (!doc["rho_mc_budget"].is_number_integer())
            throw ScenarioError("rho_mc_budget must be an integer");
        const auto budget = doc["rho_mc_budget"].get<std::int64_t>();
        if (budget < 10000) throw ScenarioError("rho_mc_budget must be at least 10000");
        s.rho_mc_budget = static_cast<std::size_t>(budget);
    }
    if (doc.contains("planner")) {
        const json& pj = doc["planner"];
        if (!pj.is_object()) throw ScenarioError("planner must be an object");
        reject_unknown(pj, {"eta", "gamma", "goal_tolerance", "goal_bias"}, "planner");
        if (pj.contains("eta")) s.planner.eta = as_number(pj["eta"], "planner.eta");
        if (pj.contains("gamma")) s.planner.gamma = as_number(pj["gamma"], "planner.gamma");
        if (pj.contains("goal_tolerance"))
            s.planner.goal_tolerance = as_number(pj["goal_tolerance"], "planner.goal_tolerance");
        if (pj.contains("goal_bias"))
            s.planner.goal_bias = as_number(pj["goal_bias"], "planner.goal_bias");
    }
    return s;
}

void write_scenario(const Scenario& s, const std::string& path, const std::string& data_file) {
    json doc;
    doc["unit"] = s.unit;
    doc["dimension"] = s.dimension;
    if (s.dimension == 2) {
        const Region2D& r = s.workspace_raw.parts.front();
        doc["boundary"] = ring_to_json(r.outer);
        json obs = json::array();
        for (const auto& h : r.holes) obs.push_back(ring_to_json(h));
        doc["obstacles"] = obs;
    } else {
        const Region3D& r = s.workspace_raw.region3;
        doc["boundary"] = {{"min", point_to_json(r.bounds.lo)},
                           {"max", point_to_json(r.bounds.hi)}};
        json obs = json::array();
        for (const auto& b : r.obstacles)
            obs.push_back({{"min", point_to_json(b.lo)}, {"max", point_to_json(b.hi)}});
        doc["obstacles"] = obs;
    }
    doc["safety_distance"] = s.safety_distance;
    doc["data_file"] = data_file;
    doc["kernel"] = kernel_name(s.kernel);
    json hj = json::array();
    for (int i = 0; i < s.dimension; ++i) {
        json row = json::array();
        for (int j = 0; j < s.dimension; ++j) row.push_back(s.h[i * s.dimension + j]);
        hj.push_back(row);
    }
    doc["H"] = hj;
    doc["start"] = point_to_json(s.start);
    doc["goal"] = point_to_json(s.goal);
    doc["radius_choice"] = s.radius_choice == RadiusChoice::tight ? "tight" : "paper";
    doc["q"] = s.q == NormOrder::linf ? json("inf") : json(s.q == NormOrder::l1 ? 1 : 2);
    doc["truncation"] =
        s.truncation == TruncationMode::renormalize ? "renormalize" : "refit";
    doc["rho_mc_budget"] = s.rho_mc_budget;
    json pj;
    pj["eta"] = s.planner.eta;
    pj["gamma"] = s.planner.gamma;
    pj["goal_tolerance"] = s.planner.goal_tolerance;
    pj["goal_bias"] = s.planner.goal_bias;
    doc["planner"] = pj;

    auto out = open_out(path);
    out << doc.dump(2) << "\n";
}

namespace {

bool points_equal(const std::vector<Point>& a, const std::vector<Point>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

bool workspace_equal(const Workspace& a, const Workspace& b) {
    if (a.dimension != b.dimension || a.epoch != b.epoch) return false;
    if (a.dimension == 2) {
        if (a.parts.size() != b.parts.size()) return false;
        for (std::size_t i = 0; i < a.parts.size(); ++i) {
            if (!points_equal(a.parts[i].outer, b.parts[i].outer)) return false;
            if (a.parts[i].holes.size() != b.parts[i].holes.size()) return false;
            for (std::size_t j = 0; j < a.parts[i].holes.size(); ++j)
                if (!points_equal(a.parts[i].holes[j], b.parts[i].holes[j])) return false;
        }
        return true;
    }
    if (!(a.region3.bounds.lo == b.region3.bounds.lo) ||
        !(a.region3.bounds.hi == b.region3.bounds.hi))
        return false;
    if (a.region3.obstacles.size() != b.region3.obstacles.size()) return false;
    for (std::size_t i = 0; i < a.region3.obstacles.size(); ++i)
        if (!(a.region3.obstacles[i].lo == b.region3.obstacles[i].lo) ||
            !(a.region3.obstacles[i].hi == b.region3.obstacles[i].hi))
            return false;
    return true;
}

}  // namespace

bool scenario_equal(const Scenario& a, const Scenario& b) {
    return a.dimension == b.dimension && a.unit == b.unit &&
           workspace_equal(a.workspace_raw, b.workspace_raw) &&
           a.safety_distance == b.safety_distance && a.data->dim == b.data->dim &&
           points_equal(a.data->points, b.data->points) && a.kernel == b.kernel &&
           a.h == b.h && a.start == b.start && a.goal == b.goal &&
           a.radius_choice == b.radius_choice && a.q == b.q && a.truncation == b.truncation &&
           a.planner.eta == b.planner.eta && a.planner.gamma == b.planner.gamma &&
           a.planner.goal_tolerance == b.planner.goal_tolerance &&
           a.planner.goal_bias == b.planner.goal_bias && a.rho_mc_budget == b.rho_mc_budget;
}

// ---- result writers ---------------------------------------------------------

void write_samples_csv(const std::string& path, const SampleBatch& batch) {
    auto out = open_out(path);
    const int dim = batch.points.empty() ? 2 : batch.points.front().dim;
    out << (dim == 1 ? "x" : dim == 2 ? "x,y" : "x,y,z") << "\n";
    for (const Point& p : batch.points) {
        for (int k = 0; k < dim; ++k) out << (k ? "," : "") << format_double(p[k]);
        out << "\n";
    }
}

void write_sample_meta_json(const std::string& path, const SampleBatch& batch,
                            std::uint64_t seed) {
    json doc;
    doc["mode"] = to_string(batch.mode);
    doc["points"] = batch.points.size();
    doc["attempts"] = batch.attempts;
    doc["seed"] = seed;
    auto out = open_out(path);
    out << doc.dump(2) << "\n";
}

void write_trials_csv(const std::string& path, const std::vector<TrialRecord>& records,
                      bool include_time) {
    auto out = open_out(path);
    out << "trial_id,arm,samples,feasible,nodes,cost"
        << (include_time ? ",time_ms" : "") << ",seed\n";
    for (const auto& r : records) {
        out << r.trial_id << "," << r.arm << "," << r.samples << "," << r.feasible << ","
            << r.nodes << "," << format_double(r.cost);
        if (include_time) out << "," << format_double(r.time_ms);
        out << "," << r.seed << "\n";
    }
}

void write_summary_json(const std::string& path, const std::vector<StatRow>& rows,
                        const std::vector<TrialRecord>& records) {
    std::size_t failures = 0;
    for (const auto& r : records)
        if (!r.ok) ++failures;
    json doc;
    doc["trials"] = records.size() / 2;
    doc["failures"] = failures;
    json rj = json::array();
    for (const auto& row : rows) {
        json r;
        r["metric"] = row.metric;
        r["B"] = {{"mean", row.b_mean}, {"median", row.b_median}, {"std", row.b_std}};
        r["R"] = {{"mean", row.r_mean}, {"median", row.r_median}, {"std", row.r_std}};
        r["delta_pct"] = {{"mean", row.delta_mean_pct},
                          {"median", row.delta_median_pct},
                          {"std", row.delta_std_pct}};
        rj.push_back(r);
    }
    doc["rows"] = rj;
    auto out = open_out(path);
    out << doc.dump(2) << "\n";
}

void write_workspace_json(const std::string& path, const Workspace& w) {
    json doc;
    doc["dimension"] = w.dimension;
    doc["epoch"] = w.epoch == Epoch::free0 ? "free0" : w.epoch == Epoch::free1 ? "free1"
                                                                               : "free2";
    if (w.dimension == 2) {
        json parts = json::array();
        for (const auto& part : w.parts) {
            json pj;
            pj["outer"] = ring_to_json(part.outer);
            json holes = json::array();
            for (const auto& h : part.holes) holes.push_back(ring_to_json(h));
            pj["holes"] = holes;
            parts.push_back(pj);
        }
        doc["parts"] = parts;
    } else {
        doc["bounds"] = {{"min", point_to_json(w.region3.bounds.lo)},
                         {"max", point_to_json(w.region3.bounds.hi)}};
        json obs = json::array();
        for (const auto& b : w.region3.obstacles)
            obs.push_back({{"min", point_to_json(b.lo)}, {"max", point_to_json(b.hi)}});
        doc["obstacles"] = obs;
    }
    auto out = open_out(path);
    out << doc.dump(2) << "\n";
}

void write_prepare_report_json(const std::string& path, const PreparedSampler& p) {
    json doc;
    doc["rho_radius"] = p.rho_radius;
    doc["normalization"] = p.model.normalization();
    doc["normalization_std_error"] = p.model.normalization_std_error();
    doc["surviving_count"] = p.xbar->size();
    doc["dropped_count"] = p.dropped_count;
    auto out = open_out(path);
    out << doc.dump(2) << "\n";
}

void write_path_csv(const std::string& path, const std::vector<Point>& pts) {
    auto out = open_out(path);
    const int dim = pts.empty() ? 2 : pts.front().dim;
    out << (dim == 2 ? "x,y" : "x,y,z") << "\n";
    for (const Point& p : pts) {
        for (int k = 0; k < dim; ++k) out << (k ? "," : "") << format_double(p[k]);
        out << "\n";
    }
}

void write_plan_result_json(const std::string& path, const PlanResult& result) {
    json doc;
    doc["found"] = result.path.has_value();
    doc["cost"] = result.path ? json(result.cost) : json(nullptr);
    doc["samples_drawn"] = result.samples_drawn;
    doc["feasible_samples"] = result.feasible_samples;
    doc["nodes"] = result.nodes;
    doc["wall_seconds"] = result.wall_seconds;
    doc["seed"] = result.seed;
    auto out = open_out(path);
    out << doc.dump(2) << "\n";
}

}  // namespace kdeplan
