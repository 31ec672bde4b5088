#include "netevo/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace netevo {

namespace fs = std::filesystem;
using nlohmann::json;

SimConfig parse_config(const json& doc)
{
    if (!doc.is_object())
        throw ConfigError("config root must be a JSON object");
    auto require = [&](const char* key) -> const json& {
        auto it = doc.find(key);
        if (it == doc.end())
            throw ConfigError(std::string("missing config key: ") + key);
        return *it;
    };

    SimConfig cfg;
    // type distribution: consecutive p_1..p_K keys
    for (int k = 1;; ++k) {
        auto it = doc.find("p_" + std::to_string(k));
        if (it == doc.end())
            break;
        cfg.params.type_probs.push_back(it->get<double>());
    }
    if (cfg.params.type_probs.empty())
        throw ConfigError("missing config key: p_1 (type distribution)");
    cfg.params.num_types = static_cast<int>(cfg.params.type_probs.size());

    cfg.params.alpha_max = require("alpha_max").get<double>();
    cfg.params.alpha_decay = require("alpha_decay").get<double>();
    cfg.params.benefit_scale = require("benefit_scale").get<double>();
    cfg.params.link_cost = require("link_cost").get<double>();
    cfg.params.gamma = require("gamma").get<double>();
    cfg.horizon = require("horizon").get<int>();
    cfg.seed = require("seed").get<std::uint64_t>();
    if (doc.contains("warmup"))
        cfg.warmup = doc["warmup"].get<int>();
    if (doc.contains("replications"))
        cfg.replications = doc["replications"].get<int>();
    for (int k = 1; k <= cfg.params.num_types; ++k) {
        const std::string key = "c_" + std::to_string(k);
        if (!doc.contains(key)) {
            if (k > 1 && !cfg.params.link_cost_by_type.empty())
                throw ConfigError("per-type costs must cover every type; missing " + key);
            break;
        }
        cfg.params.link_cost_by_type.push_back(doc[key].get<double>());
    }
    if (doc.contains("tracked_births"))
        cfg.tracked_births = doc["tracked_births"].get<std::vector<int>>();
    if (doc.contains("track_all"))
        cfg.track_all = doc["track_all"].get<bool>();
    if (doc.contains("log_meetings"))
        cfg.log_meetings = doc["log_meetings"].get<bool>();
    if (doc.contains("log_edges"))
        cfg.log_edges = doc["log_edges"].get<bool>();

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
    return cfg;
}

SimConfig load_config(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file: " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_config(doc);
}

json config_to_json(const SimConfig& config)
{
    json doc;
    for (int k = 1; k <= config.params.num_types; ++k)
        doc["p_" + std::to_string(k)] =
            config.params.type_probs[static_cast<std::size_t>(k - 1)];
    doc["alpha_max"] = config.params.alpha_max;
    doc["alpha_decay"] = config.params.alpha_decay;
    doc["benefit_scale"] = config.params.benefit_scale;
    doc["link_cost"] = config.params.link_cost;
    for (std::size_t k = 0; k < config.params.link_cost_by_type.size(); ++k)
        doc["c_" + std::to_string(k + 1)] = config.params.link_cost_by_type[k];
    doc["gamma"] = config.params.gamma;
    doc["horizon"] = config.horizon;
    doc["warmup"] = config.warmup;
    doc["seed"] = config.seed;
    doc["replications"] = config.replications;
    if (!config.tracked_births.empty())
        doc["tracked_births"] = config.tracked_births;
    if (config.track_all)
        doc["track_all"] = true;
    doc["log_meetings"] = config.log_meetings;
    doc["log_edges"] = config.log_edges;
    return doc;
}

std::string config_hash(const SimConfig& config)
{
    const std::string canon = config_to_json(config).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_double(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

namespace {

std::ofstream open_out(const fs::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write file: " + path.string());
    return out;
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

void write_agents_csv(const fs::path& path, const EnsembleResult& ensemble)
{
    auto out = open_out(path);
    out << "replication,id,type,birth,lft,final_indegree,final_outdegree,censored\n";
    for (std::size_t r = 0; r < ensemble.replications.size(); ++r) {
        const auto& rep = ensemble.replications[r];
        std::vector<int> indeg(rep.records.size() + 1, 0);
        for (const auto& e : rep.edges)
            ++indeg[static_cast<std::size_t>(e.target)];
        for (const auto& rec : rep.records) {
            const auto lft = finalize_lft(rec);
            out << r << ',' << rec.id << ',' << rec.type << ',' << rec.birth << ',';
            if (lft)
                out << *lft;
            out << ',' << indeg[static_cast<std::size_t>(rec.id)] << ','
                << rec.links_formed << ',' << (rec.active ? 1 : 0) << '\n';
        }
    }
}

void write_edges_csv(const fs::path& path, const EnsembleResult& ensemble)
{
    auto out = open_out(path);
    out << "replication,source,target,step_formed\n";
    for (std::size_t r = 0; r < ensemble.replications.size(); ++r)
        for (const auto& e : ensemble.replications[r].edges)
            out << r << ',' << e.source << ',' << e.target << ',' << e.step << '\n';
}

void write_meetings_csv(const fs::path& path, const EnsembleResult& ensemble)
{
    auto out = open_out(path);
    out << "replication,step,seeker,met,pool,met_indegree,met_type,linked\n";
    for (std::size_t r = 0; r < ensemble.replications.size(); ++r)
        for (const auto& ev : ensemble.replications[r].meetings)
            out << r << ',' << ev.step << ',' << ev.seeker << ',' << ev.met << ','
                << (ev.pool == MeetingPool::FriendsOfFriends ? "fof" : "strangers")
                << ',' << ev.met_indegree << ',' << ev.met_type << ','
                << (ev.linked ? 1 : 0) << '\n';
}

void write_trajectories_csv(const fs::path& path, const EnsembleResult& ensemble)
{
    auto out = open_out(path);
    out << "replication,agent,step,indegree\n";
    for (std::size_t r = 0; r < ensemble.replications.size(); ++r)
        for (const auto& [agent, traj] : ensemble.replications[r].trajectories)
            for (std::size_t i = 0; i < traj.size(); ++i)
                out << r << ',' << agent << ',' << (agent + static_cast<int>(i)) << ','
                    << traj[i] << '\n';
}

void write_manifest(const fs::path& path, const EnsembleResult& ensemble,
                    const std::vector<std::string>& outputs, double duration_ms)
{
    json doc;
    doc["artifact_version"] = "1.0.0";
    doc["config"] = config_to_json(ensemble.config);
    doc["config_hash"] = config_hash(ensemble.config);
    doc["stream_seeds"] = ensemble.stream_seeds;
    doc["outputs"] = outputs;
    doc["duration_ms"] = duration_ms;
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

void write_run(const fs::path& dir, const EnsembleResult& ensemble, double duration_ms)
{
    fs::create_directories(dir);
    write_agents_csv(dir / "agents.csv", ensemble);
    write_edges_csv(dir / "edges.csv", ensemble);
    write_meetings_csv(dir / "meetings.csv", ensemble);
    write_trajectories_csv(dir / "trajectories.csv", ensemble);
    write_manifest(dir / "manifest.json", ensemble,
                   {"agents.csv", "edges.csv", "meetings.csv", "trajectories.csv"},
                   duration_ms);
}

EnsembleResult read_run(const fs::path& dir)
{
    std::ifstream mf(dir / "manifest.json");
    if (!mf)
        throw IoError("missing manifest.json in " + dir.string());
    json manifest;
    mf >> manifest;

    EnsembleResult ensemble;
    ensemble.config = parse_config(manifest.at("config"));
    ensemble.stream_seeds = manifest.at("stream_seeds").get<std::vector<std::uint64_t>>();
    ensemble.replications.resize(static_cast<std::size_t>(ensemble.config.replications));

    auto open_in = [&](const char* name) {
        std::ifstream in(dir / name);
        if (!in)
            throw IoError(std::string("missing ") + name + " in " + dir.string());
        std::string header;
        std::getline(in, header);
        return in;
    };

    {
        auto in = open_in("agents.csv");
        std::string line;
        while (std::getline(in, line)) {
            const auto f = split_csv(line);
            const std::size_t r = std::stoul(f[0]);
            AgentRecord rec;
            rec.id = std::stoi(f[1]);
            rec.type = std::stoi(f[2]);
            rec.birth = std::stoi(f[3]);
            if (!f[4].empty())
                rec.last_link_step = rec.birth + std::stoi(f[4]) - 1;
            rec.links_formed = std::stoi(f[6]);
            rec.active = f[7] == "1";
            ensemble.replications.at(r).records.push_back(rec);
        }
    }
    {
        auto in = open_in("edges.csv");
        std::string line;
        while (std::getline(in, line)) {
            const auto f = split_csv(line);
            ensemble.replications.at(std::stoul(f[0]))
                .edges.push_back({std::stoi(f[1]), std::stoi(f[2]), std::stoi(f[3])});
        }
    }
    {
        auto in = open_in("meetings.csv");
        std::string line;
        while (std::getline(in, line)) {
            const auto f = split_csv(line);
            MeetingEvent ev;
            ev.step = std::stoi(f[1]);
            ev.seeker = std::stoi(f[2]);
            ev.met = std::stoi(f[3]);
            ev.pool = f[4] == "fof" ? MeetingPool::FriendsOfFriends : MeetingPool::Strangers;
            ev.met_indegree = std::stoi(f[5]);
            ev.met_type = std::stoi(f[6]);
            ev.linked = f[7] == "1";
            ensemble.replications.at(std::stoul(f[0])).meetings.push_back(ev);
        }
    }
    {
        auto in = open_in("trajectories.csv");
        std::string line;
        while (std::getline(in, line)) {
            const auto f = split_csv(line);
            auto& traj =
                ensemble.replications.at(std::stoul(f[0])).trajectories[std::stoi(f[1])];
            traj.push_back(std::stoi(f[3]));
        }
    }
    return ensemble;
}

} // namespace netevo
