#include "trigather/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace trigather {

namespace {

using nlohmann::json;

json coord_to_json(Coord c) { return json::array({c.x, c.y}); }

Coord coord_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
        !j[1].is_number_integer())
        throw std::invalid_argument("malformed coordinate pair: " + j.dump());
    const Coord c{j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
    if (!valid_vertex(c))
        throw std::invalid_argument("odd-parity vertex " + to_string(c));
    return c;
}

json state_to_json(const GlobalState& state) {
    json coords = json::array();
    for (const Coord c : state.positions()) coords.push_back(coord_to_json(c));
    return json{{"coords", std::move(coords)}};
}

GlobalState state_from_json(const json& j) {
    if (!j.is_object() || !j.contains("coords") || !j["coords"].is_array())
        throw std::invalid_argument("malformed state: missing coords array");
    std::vector<Coord> robots;
    robots.reserve(j["coords"].size());
    for (const auto& pair : j["coords"]) robots.push_back(coord_from_json(pair));
    if (robots.empty()) throw std::invalid_argument("empty swarm");
    return GlobalState(std::move(robots));
}

json view_to_json(const View& v) {
    return json{{"at1", v.down},    {"at2l", v.down_left}, {"at2r", v.down_right},
                {"at3l", v.up_left}, {"at3r", v.up_right},  {"at4", v.up}};
}

View view_from_json(const json& j) {
    View v;
    v.down = j.at("at1").get<bool>();
    v.down_left = j.at("at2l").get<bool>();
    v.down_right = j.at("at2r").get<bool>();
    v.up_left = j.at("at3l").get<bool>();
    v.up_right = j.at("at3r").get<bool>();
    v.up = j.at("at4").get<bool>();
    return v;
}

json config_to_json(const RunConfig& cfg) {
    json j{{"algorithm", to_string(cfg.algorithm)},
           {"scheduler", to_string(cfg.scheduler)},
           {"seed", cfg.seed},
           {"refreshPolicy", to_string(cfg.refresh_policy)},
           {"maxSteps", cfg.max_steps},
           {"distributedSelectProb", cfg.distributed_select_prob}};
    if (cfg.max_staleness == kUnboundedStaleness)
        j["maxStaleness"] = "inf";
    else
        j["maxStaleness"] = cfg.max_staleness;
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig cfg;
    const auto alg = j.at("algorithm").get<std::string>();
    if (alg == "gsgs")
        cfg.algorithm = Algorithm::Gsgs;
    else if (alg == "revised")
        cfg.algorithm = Algorithm::Revised;
    else
        throw std::invalid_argument("unknown algorithm: " + alg);

    const auto sched = j.at("scheduler").get<std::string>();
    if (sched == "synchronous")
        cfg.scheduler = Scheduler::Synchronous;
    else if (sched == "central")
        cfg.scheduler = Scheduler::Central;
    else if (sched == "distributed")
        cfg.scheduler = Scheduler::Distributed;
    else if (sched == "async-stale")
        cfg.scheduler = Scheduler::AsyncStale;
    else
        throw std::invalid_argument("unknown scheduler: " + sched);

    cfg.seed = j.at("seed").get<std::uint64_t>();
    const auto refresh = j.at("refreshPolicy").get<std::string>();
    if (refresh == "on-move")
        cfg.refresh_policy = RefreshPolicy::OnMove;
    else if (refresh == "on-evaluate")
        cfg.refresh_policy = RefreshPolicy::OnEvaluate;
    else
        throw std::invalid_argument("unknown refresh policy: " + refresh);
    cfg.max_steps = j.at("maxSteps").get<std::uint64_t>();
    cfg.distributed_select_prob = j.at("distributedSelectProb").get<double>();
    const auto& stale = j.at("maxStaleness");
    if (stale.is_string()) {
        if (stale.get<std::string>() != "inf")
            throw std::invalid_argument("unknown staleness: " + stale.dump());
        cfg.max_staleness = kUnboundedStaleness;
    } else {
        cfg.max_staleness = stale.get<std::uint64_t>();
    }
    return cfg;
}

json event_to_json(const TraceEvent& ev) {
    json j{{"t", ev.t},
           {"robotId", ev.robot_id},
           {"viewUsed", view_to_json(ev.view_used)},
           {"viewTimes", ev.view_times},
           {"classification", to_string(ev.classification)},
           {"from", coord_to_json(ev.from)},
           {"roundIndex", ev.round_index}};
    j["to"] = ev.to ? coord_to_json(*ev.to) : json(nullptr);
    return j;
}

TraceEvent event_from_json(const json& j) {
    TraceEvent ev;
    ev.t = j.at("t").get<std::uint64_t>();
    ev.robot_id = j.at("robotId").get<std::uint32_t>();
    ev.view_used = view_from_json(j.at("viewUsed"));
    const auto& times = j.at("viewTimes");
    if (!times.is_array() || times.size() != 6)
        throw std::invalid_argument("malformed viewTimes");
    for (std::size_t i = 0; i < 6; ++i) ev.view_times[i] = times[i].get<std::uint64_t>();
    const auto cls = classification_from_string(j.at("classification").get<std::string>());
    if (!cls)
        throw std::invalid_argument("unknown classification: " +
                                    j.at("classification").get<std::string>());
    ev.classification = *cls;
    ev.from = coord_from_json(j.at("from"));
    if (!j.at("to").is_null()) ev.to = coord_from_json(j.at("to"));
    ev.round_index = j.at("roundIndex").get<std::uint64_t>();
    return ev;
}

Outcome outcome_from_string(const std::string& name) {
    if (name == "gathered") return Outcome::Gathered;
    if (name == "step-cap") return Outcome::StepCap;
    if (name == "stuck") return Outcome::Stuck;
    throw std::invalid_argument("unknown outcome: " + name);
}

} // namespace

GlobalState parse_state(const std::string& document) {
    json j;
    try {
        j = json::parse(document);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("state document is not valid JSON: ") +
                                    e.what());
    }
    if (!j.is_object() || !j.contains("format") || j["format"] != kStateFormat)
        throw std::invalid_argument("unrecognized state format (want " +
                                    std::string(kStateFormat) + ")");
    return state_from_json(j);
}

std::string serialize_state(const GlobalState& state) {
    json j = state_to_json(state);
    j["format"] = kStateFormat;
    return j.dump() + "\n";
}

GlobalState read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open state file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_state(buffer.str());
}

void write_state_file(const std::string& path, const GlobalState& state) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write state file: " + path);
    out << serialize_state(state);
}

void write_trace(std::ostream& out, const Trace& trace) {
    json header{{"format", kTraceFormat},
                {"config", config_to_json(trace.config)},
                {"initialState", state_to_json(trace.initial_state)}};
    out << header.dump() << "\n";
    for (const TraceEvent& ev : trace.events) out << event_to_json(ev).dump() << "\n";
    json footer{{"finalState", state_to_json(trace.final_state)},
                {"rounds", trace.rounds},
                {"outcome", to_string(trace.outcome)}};
    out << footer.dump() << "\n";
}

std::string serialize_trace(const Trace& trace) {
    std::ostringstream out;
    write_trace(out, trace);
    return out.str();
}

Trace parse_trace(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("empty trace document");
    json header = json::parse(line);
    if (!header.is_object() || !header.contains("format") || header["format"] != kTraceFormat)
        throw std::invalid_argument("unrecognized trace format (want " +
                                    std::string(kTraceFormat) + ")");
    Trace trace;
    trace.config = config_from_json(header.at("config"));
    trace.initial_state = state_from_json(header.at("initialState"));

    bool have_footer = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        if (j.contains("finalState")) {
            trace.final_state = state_from_json(j.at("finalState"));
            trace.rounds = j.at("rounds").get<std::uint64_t>();
            trace.outcome = outcome_from_string(j.at("outcome").get<std::string>());
            have_footer = true;
            break;
        }
        trace.events.push_back(event_from_json(j));
    }
    if (!have_footer) throw std::invalid_argument("trace document has no footer line");
    return trace;
}

Trace read_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file: " + path);
    return parse_trace(in);
}

void write_trace_file(const std::string& path, const Trace& trace) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trace file: " + path);
    write_trace(out, trace);
}

} // namespace trigather
