#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "swarm/csv.hpp"
#include "swarm/io.hpp"

namespace swarm {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a 64-bit content hash, used to chain manifests to their inputs.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return hash_hex(fnv1a64(ss.str()));
}

struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;   // path, hash
    std::vector<std::pair<std::string, std::string>> outputs;  // path, hash
    std::vector<std::uint64_t> seeds;
    nlohmann::json extra = nlohmann::json::object();

    nlohmann::json to_json() const {
        nlohmann::json in = nlohmann::json::array();
        for (const auto& [path, hash] : inputs) in.push_back({{"path", path}, {"hash", hash}});
        nlohmann::json out = nlohmann::json::array();
        for (const auto& [path, hash] : outputs) out.push_back({{"path", path}, {"hash", hash}});
        nlohmann::json j{{"tool_version", kToolVersion},
                         {"command", command},
                         {"inputs", in},
                         {"outputs", out},
                         {"seeds", seeds}};
        for (const auto& [key, value] : extra.items()) j[key] = value;
        return j;
    }

    void write(const std::string& path) const { write_file_atomic(path, to_json().dump(2) + "\n"); }
};

// Writes a data artifact and registers it in the manifest.
inline void write_artifact(RunManifest& manifest, const std::string& path,
                           const std::string& content) {
    write_file_atomic(path, content);
    manifest.outputs.emplace_back(path, hash_hex(fnv1a64(content)));
}

}  // namespace swarm
