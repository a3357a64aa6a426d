#include "trih/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace trih {

using json = nlohmann::ordered_json;

FanCycleFile parse_fan_cycle(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("top level must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::string k = it.key();
        if (k != "rank" && k != "rays" && k != "cones" && k != "weights")
            throw ParseError("unknown key: " + k);
    }
    for (const char* k : {"rank", "rays", "cones", "weights"})
        if (!j.contains(k)) throw ParseError(std::string("missing key: ") + k);

    FanCycleFile f;
    if (!j["rank"].is_number_integer() || j["rank"].get<long long>() < 0)
        throw ParseError("rank must be a nonnegative integer");
    f.rank = (int)j["rank"].get<long long>();

    if (!j["rays"].is_array()) throw ParseError("rays must be an array");
    for (const auto& r : j["rays"]) {
        if (!r.is_array()) throw ParseError("each ray must be an array");
        IVec v;
        for (const auto& e : r) {
            if (!e.is_number_integer()) throw ParseError("ray entries must be integers");
            v.push_back(Integer(e.get<long long>()));
        }
        if ((int)v.size() != f.rank) throw ParseError("ray length must equal rank");
        f.rays.push_back(std::move(v));
    }

    if (!j["cones"].is_array()) throw ParseError("cones must be an array");
    for (const auto& c : j["cones"]) {
        if (!c.is_array()) throw ParseError("each cone must be an array of ray indices");
        ConeKey key;
        for (const auto& e : c) {
            if (!e.is_number_integer()) throw ParseError("cone entries must be integers");
            long long i = e.get<long long>();
            if (i < 0 || i >= (long long)f.rays.size())
                throw ParseError("cone ray index out of range");
            key.push_back((int)i);
        }
        f.cones.push_back(std::move(key));
    }

    if (!j["weights"].is_object()) throw ParseError("weights must be an object");
    f.weights.assign(f.cones.size(), Integer(0));
    std::vector<bool> seen(f.cones.size(), false);
    for (auto it = j["weights"].begin(); it != j["weights"].end(); ++it) {
        size_t pos = 0;
        long long idx;
        try {
            idx = std::stoll(it.key(), &pos);
        } catch (...) {
            throw ParseError("weight key must be a maximal-cone index: " + it.key());
        }
        if (pos != it.key().size() || idx < 0 || idx >= (long long)f.cones.size())
            throw ParseError("weight key out of range: " + it.key());
        if (!it.value().is_number_integer() || it.value().get<long long>() < 1)
            throw ParseError("weights must be positive integers");
        if (seen[idx]) throw ParseError("duplicate weight key: " + it.key());
        seen[idx] = true;
        f.weights[idx] = Integer(it.value().get<long long>());
    }
    for (size_t i = 0; i < f.cones.size(); ++i)
        if (!seen[i]) throw ParseError("missing weight for cone " + std::to_string(i));
    return f;
}

FanCycleFile load_fan_cycle(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_fan_cycle(ss.str());
}

std::string serialize_fan_cycle(const FanCycleFile& f) {
    json j;
    j["rank"] = f.rank;
    j["rays"] = json::array();
    for (const IVec& r : f.rays) {
        json row = json::array();
        for (const Integer& e : r) row.push_back((long long)e);
        j["rays"].push_back(row);
    }
    j["cones"] = json::array();
    for (const ConeKey& c : f.cones) j["cones"].push_back(c);
    j["weights"] = json::object();
    for (size_t i = 0; i < f.cones.size(); ++i)
        j["weights"][std::to_string(i)] = (long long)f.weights[i];
    return j.dump(2) + "\n";
}

TropicalFanCycle to_cycle(const FanCycleFile& f) {
    Fan fan = build_fan(f.rank, f.rays, f.cones);
    std::map<int, Integer> w;
    for (size_t i = 0; i < f.cones.size(); ++i) {
        ConeKey key = f.cones[i];
        std::sort(key.begin(), key.end());
        w[fan.cone_index(key)] = f.weights[i];
    }
    return make_cycle(std::move(fan), std::move(w));
}

std::string fnv1a_digest(const std::string& bytes) {
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex;
    for (int i = 15; i >= 0; --i) os << "0123456789abcdef"[(h >> (4 * i)) & 0xf];
    return os.str();
}


}  // namespace trih
