#pragma once

#include "rwb/rational.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rwb {

using Json = nlohmann::json;

struct Check {
    std::string name;
    bool pass = false;
    double lhs = 0, rhs = 0, tol = 0;
};

// structured result record shared by every CLI command
struct Report {
    std::string op;
    Json inputs = Json::object();
    Json outputs = Json::object();
    std::vector<Check> checks;
    uint64_t seed = 0;
    std::string schema_version = "1";
    std::optional<std::string> timestamp;  // excluded from comparison mode

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    Json to_json() const {
        Json j;
        j["schema_version"] = schema_version;
        j["op"] = op;
        j["inputs"] = inputs;
        j["outputs"] = outputs;
        j["seed"] = seed;
        Json cs = Json::array();
        for (const auto& c : checks)
            cs.push_back({{"name", c.name}, {"pass", c.pass}, {"lhs", c.lhs}, {"rhs", c.rhs},
                          {"tol", c.tol}});
        j["checks"] = cs;
        if (timestamp) j["timestamp"] = *timestamp;
        return j;
    }

    std::string to_csv() const {
        std::ostringstream os;
        os << "check,pass,lhs,rhs,tol\n";
        for (const auto& c : checks)
            os << c.name << "," << (c.pass ? 1 : 0) << "," << c.lhs << "," << c.rhs << ","
               << c.tol << "\n";
        return os.str();
    }

    std::string to_text() const {
        std::ostringstream os;
        os << "op: " << op << "\n";
        os << "outputs: " << outputs.dump() << "\n";
        for (const auto& c : checks)
            os << (c.pass ? "[pass] " : "[FAIL] ") << c.name << " lhs=" << c.lhs
               << " rhs=" << c.rhs << " tol=" << c.tol << "\n";
        return os.str();
    }
};

// write-then-rename so readers never observe a torn report
inline void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move report into place at " + path);
}

}  // namespace rwb
